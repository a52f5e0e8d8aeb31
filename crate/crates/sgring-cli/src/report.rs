//! Serializable reports and their text rendering.
//!
//! JSON output is deterministic: objects are emitted with sorted keys and
//! every vector list is sorted upstream. Timing is opt-in so that default
//! output is byte-for-byte reproducible.

use serde::{Deserialize, Serialize};
use sgring_core::cyclic::CrossValidation;
use sgring_core::lattice::IntVector;
use sgring_core::pipeline::{Analysis, VerificationCheck};
use sgring_core::series::HilbertSeries;

use crate::error::CliError;
use crate::input::{InputDocument, SCHEMA};

fn vec_of(v: &IntVector) -> Vec<i64> {
    v.entries().to_vec()
}

fn vecs_of(vs: &[IntVector]) -> Vec<Vec<i64>> {
    vs.iter().map(vec_of).collect()
}

fn matrix_rows(m: &sgring_core::IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalReport {
    pub order: i64,
    /// Rows of the source-to-orthogonal transform.
    pub transform: Vec<Vec<i64>>,
    pub generators: Vec<Vec<i64>>,
    pub source_extreme_rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extreme_hint_consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AperyReport {
    pub size: usize,
    pub elements: Vec<Vec<i64>>,
    pub socle: Vec<Vec<i64>>,
    pub socle_source: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohen_macaulay: Option<(Vec<i64>, Vec<i64>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slim: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub simplicial: bool,
    pub cohen_macaulay: bool,
    pub normal: bool,
    pub slim: bool,
    #[serde(rename = "type")]
    pub semigroup_type: usize,
    pub index: i64,
    /// Absent when the ring is not Cohen-Macaulay.
    pub almost_gorenstein: Option<bool>,
    /// Largest socle degree minus the extreme-set degree, per grading.
    pub a_invariant_orthogonal: i64,
    pub a_invariant_source: i64,
    pub witnesses: WitnessSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    /// `(exponent, coefficient)` pairs of the numerator, ascending.
    pub numerator: Vec<(i64, i64)>,
    /// Exponents `a` of the denominator factors `(1 - t^a)`.
    pub denominator_exponents: Vec<i64>,
}

impl SeriesReport {
    fn from_series(series: &HilbertSeries) -> Self {
        SeriesReport {
            numerator: series.numerator.terms().collect(),
            denominator_exponents: series.denominator.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SocleGeneratorReport {
    pub socle: Vec<i64>,
    pub socle_source: Vec<i64>,
    pub generator: Vec<i64>,
    pub generator_source: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub socle_generators: Vec<SocleGeneratorReport>,
    pub minimal_generators: Vec<Vec<i64>>,
    pub minimal_generators_source: Vec<Vec<i64>>,
    pub canonical_series: SeriesReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub socle: Vec<i64>,
    pub partner: Vec<i64>,
    pub extreme: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AGWitnessReport {
    pub socle: Vec<i64>,
    pub socle_source: Vec<i64>,
    pub ulrich: Vec<i64>,
    pub ulrich_source: Vec<i64>,
    pub degree_orthogonal: i64,
    pub degree_source: i64,
    pub certificates: Vec<CertificateReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub socle: Vec<i64>,
    pub socle_source: Vec<i64>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AGSection {
    pub is_ag: bool,
    #[serde(rename = "type")]
    pub semigroup_type: usize,
    pub witnesses: Vec<AGWitnessReport>,
    pub quotient_multiplicities: Vec<MultiplicityReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn from_check(check: &VerificationCheck) -> Self {
        CheckReport {
            name: check.name.clone(),
            passed: check.passed,
            detail: check.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub kind: String,
    pub input: InputDocument,
    pub orthogonal: OrthogonalReport,
    pub apery: AperyReport,
    pub verdicts: Verdicts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_numerator: Option<SeriesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<CanonicalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub almost_gorenstein: Option<AGSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CheckReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub limits_hit: Vec<String>,
}

pub fn build_analysis(doc: &InputDocument, analysis: &Analysis) -> Result<AnalysisReport, CliError> {
    let op = &analysis.orthogonal;
    let source_rays = op.source_extreme_set();

    let extreme_hint_consistent = match &doc.extreme_hint {
        None => None,
        Some(hint) => {
            let hinted: std::collections::BTreeSet<IntVector> = hint
                .iter()
                .map(|&i| IntVector::new(doc.generators[i].clone()).primitive())
                .collect();
            let actual: std::collections::BTreeSet<IntVector> =
                source_rays.iter().map(|r| r.primitive()).collect();
            Some(hinted == actual)
        }
    };

    let socle_source = analysis.socle_source()?;
    let apery = AperyReport {
        size: analysis.apery.len(),
        elements: vecs_of(&analysis.apery.elements),
        socle: vecs_of(&analysis.apery.socle),
        socle_source: vecs_of(&socle_source),
    };

    let max_socle_degree = analysis
        .apery
        .socle
        .iter()
        .map(IntVector::degree)
        .max()
        .unwrap_or(0);
    let a_invariant_orthogonal = max_socle_degree - op.order() * op.dim() as i64;

    let verdicts = Verdicts {
        simplicial: true,
        cohen_macaulay: analysis.structure.is_cohen_macaulay,
        normal: analysis.structure.is_normal,
        slim: analysis.structure.is_slim,
        semigroup_type: analysis.structure.semigroup_type,
        index: analysis.structure.index,
        almost_gorenstein: analysis.canonical.as_ref().map(|c| c.ag.is_ag),
        a_invariant_orthogonal,
        a_invariant_source: analysis.a_invariant_source()?,
        witnesses: WitnessSet {
            cohen_macaulay: analysis
                .structure
                .cohen_macaulay_witness
                .as_ref()
                .map(|(a, b)| (vec_of(a), vec_of(b))),
            normal: analysis.structure.normality_witness.as_ref().map(vec_of),
            slim: analysis.structure.slim_witness.as_ref().map(vec_of),
        },
    };

    let mut hilbert_numerator = None;
    let mut canonical = None;
    let mut almost_gorenstein = None;
    if let Some(ca) = &analysis.canonical {
        hilbert_numerator = Some(SeriesReport::from_series(&ca.hilbert));
        let mut socle_generators = Vec::new();
        for (w, g) in &ca.data.socle_generators {
            socle_generators.push(SocleGeneratorReport {
                socle: vec_of(w),
                socle_source: vec_of(&op.to_source(w)?),
                generator: vec_of(g),
                generator_source: vec_of(&op.to_source(g)?),
            });
        }
        let mut minimal_source: Vec<Vec<i64>> = Vec::new();
        for g in &ca.data.minimal_generators {
            minimal_source.push(vec_of(&op.to_source(g)?));
        }
        minimal_source.sort();
        canonical = Some(CanonicalReport {
            socle_generators,
            minimal_generators: vecs_of(&ca.data.minimal_generators),
            minimal_generators_source: minimal_source,
            canonical_series: SeriesReport::from_series(&ca.canonical_series),
        });

        let mut witnesses = Vec::new();
        for w in &ca.ag.witnesses {
            let ulrich_source = op.to_source(&w.ulrich)?;
            witnesses.push(AGWitnessReport {
                socle: vec_of(&w.socle_element),
                socle_source: vec_of(&op.to_source(&w.socle_element)?),
                ulrich: vec_of(&w.ulrich),
                ulrich_source: vec_of(&ulrich_source),
                degree_orthogonal: w.ulrich.degree(),
                degree_source: ulrich_source.degree(),
                certificates: w
                    .certificates
                    .iter()
                    .map(|c| CertificateReport {
                        socle: vec_of(&c.socle_element),
                        partner: vec_of(&c.partner),
                        extreme: vec_of(&c.extreme),
                    })
                    .collect(),
            });
        }
        let mut quotient_multiplicities = Vec::new();
        for (w, value) in &ca.ag.quotient_multiplicities {
            quotient_multiplicities.push(MultiplicityReport {
                socle: vec_of(w),
                socle_source: vec_of(&op.to_source(w)?),
                value: *value,
            });
        }
        almost_gorenstein = Some(AGSection {
            is_ag: ca.ag.is_ag,
            semigroup_type: ca.ag.semigroup_type,
            witnesses,
            quotient_multiplicities,
        });
    }

    Ok(AnalysisReport {
        schema: SCHEMA.to_string(),
        kind: "analysis".to_string(),
        input: doc.clone(),
        orthogonal: OrthogonalReport {
            order: op.order(),
            transform: matrix_rows(op.transform()),
            generators: op.base().generators().iter().map(vec_of).collect(),
            source_extreme_rays: vecs_of(&source_rays),
            extreme_hint_consistent,
        },
        apery,
        verdicts,
        hilbert_numerator,
        canonical,
        almost_gorenstein,
        verification: None,
        timing_ms: None,
        limits_hit: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub criterion: bool,
    pub shape: bool,
    pub pipeline: bool,
    #[serde(rename = "type")]
    pub semigroup_type: usize,
    pub cohen_macaulay: bool,
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicReport {
    pub schema: String,
    pub kind: String,
    pub n: i64,
    pub m1: i64,
    pub m2: i64,
    pub c: i64,
    pub hj_expansion: Vec<i64>,
    pub almost_gorenstein: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ulrich: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<CrossValidationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn build_cyclic(
    n: i64,
    m1: i64,
    verified: Option<&CrossValidation>,
) -> Result<CyclicReport, CliError> {
    let spec = sgring_core::cyclic::CyclicInvariants::new(n, m1)?;
    let expansion = sgring_core::cyclic::hj_expansion(n, m1)?;
    let ag = spec.is_ag();
    let ulrich = if ag && m1 > 1 {
        Some(vec_of(&sgring_core::cyclic::ulrich_element_cyclic(n, m1)?))
    } else {
        None
    };
    Ok(CyclicReport {
        schema: SCHEMA.to_string(),
        kind: "cyclic".to_string(),
        n,
        m1,
        m2: spec.m2,
        c: spec.c,
        hj_expansion: expansion.coefficients.clone(),
        almost_gorenstein: ag,
        p: spec.pq.map(|(p, _)| p),
        q: spec.pq.map(|(_, q)| q),
        ulrich,
        cross_validation: verified.map(|cv| CrossValidationReport {
            criterion: cv.criterion_ag,
            shape: cv.shape_ag,
            pipeline: cv.pipeline_ag,
            semigroup_type: cv.semigroup_type,
            cohen_macaulay: true,
            normal: true,
        }),
        timing_ms: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorItem {
    pub kind: String,
    pub source: String,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchItem {
    Analysis(Box<AnalysisReport>),
    Cyclic(CyclicReport),
    Error(ErrorItem),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub items: usize,
    pub ag: usize,
    pub not_ag: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub schema: String,
    pub kind: String,
    pub items: Vec<BatchItem>,
    pub summary: BatchSummary,
}

pub fn build_batch(items: Vec<BatchItem>) -> BatchReport {
    let mut ag = 0;
    let mut not_ag = 0;
    let mut errors = 0;
    for item in &items {
        match item {
            BatchItem::Analysis(a) => match a.verdicts.almost_gorenstein {
                Some(true) => ag += 1,
                _ => not_ag += 1,
            },
            BatchItem::Cyclic(c) => {
                if c.almost_gorenstein {
                    ag += 1;
                } else {
                    not_ag += 1;
                }
            }
            BatchItem::Error(_) => errors += 1,
        }
    }
    BatchReport {
        schema: SCHEMA.to_string(),
        kind: "batch".to_string(),
        summary: BatchSummary { items: items.len(), ag, not_ag, errors },
        items,
    }
}

fn fmt_vec(v: &[i64]) -> String {
    let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(","))
}

fn fmt_vecs(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(" ")
}

fn fmt_series(s: &SeriesReport) -> String {
    let terms: Vec<String> = s
        .numerator
        .iter()
        .map(|&(e, c)| match (e, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c} t"),
            (e, 1) => format!("t^{e}"),
            (e, c) => format!("{c} t^{e}"),
        })
        .collect();
    let numerator = if terms.len() > 1 {
        format!("({})", terms.join(" + "))
    } else {
        terms.join("")
    };
    let mut denom = String::new();
    let mut i = 0;
    while i < s.denominator_exponents.len() {
        let a = s.denominator_exponents[i];
        let run = s.denominator_exponents[i..].iter().take_while(|&&b| b == a).count();
        denom.push_str(&format!("(1-t^{a})"));
        if run > 1 {
            denom.push_str(&format!("^{run}"));
        }
        i += run;
    }
    format!("{numerator} / {denom}")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!(
        "input: dim {}, {} generators: {}",
        r.input.dim,
        r.input.generators.len(),
        fmt_vecs(&r.input.generators)
    ));
    push(&mut out, format!(
        "orthogonal form: order {}, generators: {}",
        r.orthogonal.order,
        fmt_vecs(&r.orthogonal.generators)
    ));
    push(&mut out, format!(
        "  transform rows: {}  source extreme rays: {}",
        fmt_vecs(&r.orthogonal.transform),
        fmt_vecs(&r.orthogonal.source_extreme_rays)
    ));
    push(&mut out, format!(
        "Apery set ({}): {}",
        r.apery.size,
        fmt_vecs(&r.apery.elements)
    ));
    push(&mut out, format!(
        "socle ({}): {}  [source: {}]",
        r.apery.socle.len(),
        fmt_vecs(&r.apery.socle),
        fmt_vecs(&r.apery.socle_source)
    ));
    push(&mut out, "verdicts:".to_string());
    push(&mut out, "  simplicial:        yes".to_string());
    push(&mut out, format!(
        "  Cohen-Macaulay:    {}{}",
        yes_no(r.verdicts.cohen_macaulay),
        r.verdicts
            .witnesses
            .cohen_macaulay
            .as_ref()
            .map(|(a, b)| format!("  (cosets collide at {} and {})", fmt_vec(a), fmt_vec(b)))
            .unwrap_or_default()
    ));
    push(&mut out, format!(
        "  normal:            {}{}",
        yes_no(r.verdicts.normal),
        r.verdicts
            .witnesses
            .normal
            .as_ref()
            .map(|w| format!("  (witness {})", fmt_vec(w)))
            .unwrap_or_default()
    ));
    push(&mut out, format!(
        "  slim:              {}{}",
        yes_no(r.verdicts.slim),
        r.verdicts
            .witnesses
            .slim
            .as_ref()
            .map(|w| format!("  (witness {})", fmt_vec(w)))
            .unwrap_or_default()
    ));
    push(&mut out, format!("  type:              {}", r.verdicts.semigroup_type));
    push(&mut out, format!("  index:             {}", r.verdicts.index));
    push(&mut out, format!(
        "  a-invariant:       {} (orthogonal) / {} (source)",
        r.verdicts.a_invariant_orthogonal, r.verdicts.a_invariant_source
    ));
    push(&mut out, format!(
        "  almost Gorenstein: {}",
        r.verdicts
            .almost_gorenstein
            .map(yes_no)
            .unwrap_or("n/a (not Cohen-Macaulay)")
    ));
    if let Some(h) = &r.hilbert_numerator {
        push(&mut out, format!("Hilbert series: {}", fmt_series(h)));
    }
    if let Some(c) = &r.canonical {
        push(&mut out, "canonical module:".to_string());
        for g in &c.socle_generators {
            push(&mut out, format!(
                "  {} -> {}  [source {} -> {}]",
                fmt_vec(&g.socle),
                fmt_vec(&g.generator),
                fmt_vec(&g.socle_source),
                fmt_vec(&g.generator_source)
            ));
        }
        push(&mut out, format!(
            "  minimal generators: {}  [source: {}]",
            fmt_vecs(&c.minimal_generators),
            fmt_vecs(&c.minimal_generators_source)
        ));
    }
    if let Some(ag) = &r.almost_gorenstein {
        push(&mut out, format!("almost Gorenstein report: {}", yes_no(ag.is_ag)));
        for w in &ag.witnesses {
            push(&mut out, format!(
                "  witness socle {} [source {}], Ulrich {} [source {}], degree {} (orthogonal) / {} (source)",
                fmt_vec(&w.socle),
                fmt_vec(&w.socle_source),
                fmt_vec(&w.ulrich),
                fmt_vec(&w.ulrich_source),
                w.degree_orthogonal,
                w.degree_source
            ));
            for c in &w.certificates {
                push(&mut out, format!(
                    "    certificate: {} + {} = socle + {}",
                    fmt_vec(&c.socle),
                    fmt_vec(&c.partner),
                    fmt_vec(&c.extreme)
                ));
            }
        }
        let mults: Vec<String> = ag
            .quotient_multiplicities
            .iter()
            .map(|m| format!("{} -> {}", fmt_vec(&m.socle), m.value))
            .collect();
        push(&mut out, format!("  quotient multiplicities: {}", mults.join(", ")));
    }
    if let Some(checks) = &r.verification {
        push(&mut out, "verification:".to_string());
        for c in checks {
            push(&mut out, format!(
                "  {}: {} ({})",
                c.name,
                if c.passed { "ok" } else { "FAILED" },
                c.detail
            ));
        }
    }
    if !r.limits_hit.is_empty() {
        push(&mut out, format!("limits hit: {}", r.limits_hit.join("; ")));
    }
    if let Some(ms) = r.timing_ms {
        push(&mut out, format!("elapsed: {ms} ms"));
    }
    out
}

pub fn render_cyclic_text(r: &CyclicReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "cyclic quotient (n, m1) = ({}, {}): m2 = {}, c = {}\n",
        r.n, r.m1, r.m2, r.c
    ));
    let coeffs: Vec<String> = r.hj_expansion.iter().map(|a| a.to_string()).collect();
    out.push_str(&format!("HJ expansion of n/m1: [[{}]]\n", coeffs.join(", ")));
    out.push_str(&format!("almost Gorenstein: {}\n", yes_no(r.almost_gorenstein)));
    if let (Some(p), Some(q)) = (r.p, r.q) {
        out.push_str(&format!("(p, q) = ({p}, {q})\n"));
    }
    if let Some(u) = &r.ulrich {
        out.push_str(&format!("Ulrich element: {}\n", fmt_vec(u)));
    }
    if let Some(cv) = &r.cross_validation {
        out.push_str(&format!(
            "cross-validation: criterion {} / shape {} / pipeline {} (type {}, CM {}, normal {})\n",
            yes_no(cv.criterion),
            yes_no(cv.shape),
            yes_no(cv.pipeline),
            cv.semigroup_type,
            yes_no(cv.cohen_macaulay),
            yes_no(cv.normal)
        ));
    }
    if let Some(ms) = r.timing_ms {
        out.push_str(&format!("elapsed: {ms} ms\n"));
    }
    out
}

pub fn render_batch_text(r: &BatchReport) -> String {
    let mut out = String::new();
    for item in &r.items {
        match item {
            BatchItem::Analysis(a) => {
                out.push_str(&format!(
                    "analysis dim {} ({} generators): CM {}, normal {}, slim {}, type {}, AG {}\n",
                    a.input.dim,
                    a.input.generators.len(),
                    yes_no(a.verdicts.cohen_macaulay),
                    yes_no(a.verdicts.normal),
                    yes_no(a.verdicts.slim),
                    a.verdicts.semigroup_type,
                    a.verdicts
                        .almost_gorenstein
                        .map(yes_no)
                        .unwrap_or("n/a")
                ));
            }
            BatchItem::Cyclic(c) => {
                out.push_str(&format!(
                    "cyclic ({}, {}): AG {}, HJ [[{}]]\n",
                    c.n,
                    c.m1,
                    yes_no(c.almost_gorenstein),
                    c.hj_expansion
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            BatchItem::Error(e) => {
                out.push_str(&format!("error [{}]: {}\n", e.source, e.message));
            }
        }
    }
    out.push_str(&format!(
        "summary: {} items, {} AG, {} not AG, {} errors\n",
        r.summary.items, r.summary.ag, r.summary.not_ag, r.summary.errors
    ));
    out
}

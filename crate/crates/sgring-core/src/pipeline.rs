//! End-to-end analysis of a presentation: orthogonalize, compute the Apéry
//! data and structure verdicts, and (in the Cohen-Macaulay case) the
//! canonical-module data, AG report and Hilbert series.

use crate::apery::{apery_set, structure_report, AperyData, StructureReport};
use crate::canonical::{
    ag_check, canonical_generators, canonical_series, hilbert_numerator, quotient_series,
    AGReport, CanonicalData,
};
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::limits::Limits;
use crate::semigroup::{enumerate_up_to_degree, orthogonalize, MembershipOracle, OrthogonalPresentation, Presentation};
use crate::series::HilbertSeries;

/// Canonical-module layer of an analysis; present exactly when the
/// semigroup ring is Cohen-Macaulay.
#[derive(Clone, Debug)]
pub struct CanonicalAnalysis {
    pub data: CanonicalData,
    pub ag: AGReport,
    pub hilbert: HilbertSeries,
    pub canonical_series: HilbertSeries,
}

/// Full analysis of one presentation.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub source: Presentation,
    pub orthogonal: OrthogonalPresentation,
    pub apery: AperyData,
    pub structure: StructureReport,
    pub canonical: Option<CanonicalAnalysis>,
}

impl Analysis {
    /// Socle in source coordinates, sorted.
    pub fn socle_source(&self) -> Result<Vec<IntVector>> {
        let mut out = Vec::with_capacity(self.apery.socle.len());
        for w in &self.apery.socle {
            out.push(self.orthogonal.to_source(w)?);
        }
        out.sort();
        Ok(out)
    }

    /// The a-invariant in the source grading: largest source socle degree
    /// minus the total degree of the source extreme set.
    pub fn a_invariant_source(&self) -> Result<i64> {
        let max_socle = self
            .socle_source()?
            .iter()
            .map(IntVector::degree)
            .max()
            .ok_or_else(|| Error::internal("empty socle"))?;
        let extreme_total: i64 = self
            .orthogonal
            .source_extreme_set()
            .iter()
            .map(IntVector::degree)
            .sum();
        Ok(max_socle - extreme_total)
    }
}

/// Runs the whole pipeline. Fails with a typed error when the presentation
/// is not simplicial of full rank or a resource limit trips; a non-CM
/// verdict is data, not an error.
pub fn analyze(p: &Presentation, limits: &Limits) -> Result<Analysis> {
    let source_oracle = MembershipOracle::new(p, limits);
    let orthogonal = orthogonalize(p, &source_oracle, limits)?;
    let oracle = orthogonal.oracle(limits);
    let apery = apery_set(&orthogonal, &oracle, limits)?;
    let structure = structure_report(&orthogonal, &oracle, &apery, limits)?;
    let canonical = if structure.is_cohen_macaulay {
        Some(CanonicalAnalysis {
            data: canonical_generators(&orthogonal, &apery, &oracle)?,
            ag: ag_check(&orthogonal, &apery, &oracle)?,
            hilbert: hilbert_numerator(&orthogonal, &apery)?,
            canonical_series: canonical_series(&orthogonal, &apery)?,
        })
    } else {
        None
    };
    Ok(Analysis { source: p.clone(), orthogonal, apery, structure, canonical })
}

/// Outcome of one inline verification check.
#[derive(Clone, Debug)]
pub struct VerificationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Re-derives the analysis through independent routes: the Apéry closure
/// property, coset coverage, the Cohen-Macaulay count agreement, the
/// canonical-series / enumeration duality, and the multiplicity /
/// series agreement. `depth` bounds the series comparison; the default is
/// `3 m d`.
pub fn verification_checks(
    analysis: &Analysis,
    limits: &Limits,
    depth: Option<i64>,
) -> Result<Vec<VerificationCheck>> {
    let op = &analysis.orthogonal;
    let a = &analysis.apery;
    let oracle = op.oracle(limits);
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(VerificationCheck { name: name.to_string(), passed, detail });
    };

    let mut closure_ok = true;
    for u in &a.elements {
        if u.is_zero() {
            continue;
        }
        let split = op
            .base()
            .generators()
            .iter()
            .any(|g| u.dominates(g) && a.contains(&u.checked_sub(g).unwrap()));
        if !split {
            closure_ok = false;
            break;
        }
    }
    push("apery-closure", closure_ok, format!("{} elements", a.len()));

    let coverage = a.by_coset.len() as i64 == a.quotient.index();
    push(
        "coset-coverage",
        coverage,
        format!("{} cosets, index {}", a.by_coset.len(), a.quotient.index()),
    );

    let unique = a.by_coset.values().all(|m| m.len() == 1);
    let count = a.len() as i64 == a.quotient.index();
    let three_way = unique == count && analysis.structure.is_cohen_macaulay == unique;
    push(
        "cohen-macaulay-three-way",
        three_way,
        format!("unique={unique} count={count}"),
    );

    if let Some(canonical) = &analysis.canonical {
        let hi = depth.unwrap_or(3 * op.order() * op.dim() as i64);
        let lo = canonical
            .canonical_series
            .numerator
            .min_exponent()
            .unwrap_or(0)
            .min(0);
        let coeffs = canonical.canonical_series.coefficients(lo, hi)?;
        let sum = op.extreme_set_sum();
        let mut points = std::collections::BTreeSet::new();
        for w in &a.socle {
            let base = sum.checked_sub(w)?;
            for h in enumerate_up_to_degree(&oracle, hi - base.degree(), limits)? {
                points.insert(base.checked_add(&h)?);
            }
        }
        let mut counts = vec![0i64; (hi - lo + 1) as usize];
        for p in points {
            let d = p.degree();
            if d >= lo && d <= hi {
                counts[(d - lo) as usize] += 1;
            }
        }
        push(
            "canonical-series-duality",
            coeffs == counts,
            format!("window {lo}..={hi}"),
        );

        let mut series_ok = true;
        for (w, qm) in &canonical.ag.quotient_multiplicities {
            let series = quotient_series(op, a, w)?;
            if series.normalized_value_at_one()? != *qm {
                series_ok = false;
                break;
            }
        }
        push(
            "multiplicity-series-agreement",
            series_ok,
            format!("{} socle elements", a.socle.len()),
        );
    }

    Ok(checks)
}

/// Presentations used across the test and benchmark suites.
pub mod fixtures {
    use super::Presentation;
    use crate::lattice::IntVector;

    fn p(dim: usize, gens: &[&[i64]]) -> Presentation {
        Presentation::new(dim, gens.iter().map(|g| IntVector::new(g.to_vec())).collect())
            .expect("fixture")
    }

    /// Rank 3, order 2, Gorenstein but not normal.
    pub fn order2_rank3() -> Presentation {
        p(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 0], &[1, 0, 1]])
    }

    /// Rank 3 with a large orthogonalization order (91).
    pub fn big_transform_rank3() -> Presentation {
        p(3, &[&[5, 3, 1], &[1, 5, 2], &[8, 3, 5], &[2, 1, 1], &[2, 2, 1]])
    }

    /// Rank 2 fixture whose source and orthogonal gradings disagree.
    pub fn mixed_grading_plane() -> Presentation {
        p(2, &[&[1, 0], &[3, 3], &[3, 1], &[3, 2]])
    }

    /// Orthogonal rank-3 presentation with a degree-3 boundary element.
    pub fn non_slim_rank3() -> Presentation {
        p(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[1, 3, 0], &[2, 1, 0]])
    }

    /// Normal, slim, AG fixture of rank 3 and order 5.
    pub fn normal_order5_rank3() -> Presentation {
        p(3, &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5], &[2, 1, 1], &[1, 3, 3]])
    }

    /// Normal rank-2 fixture with slanted extreme rays.
    pub fn slanted_normal_plane() -> Presentation {
        p(2, &[&[11, 13], &[5, 6], &[4, 5], &[3, 4]])
    }

    /// Cohen-Macaulay fixture of type 3 and order 8.
    pub fn type3_order8() -> Presentation {
        p(2, &[&[8, 0], &[0, 8], &[9, 7], &[22, 18], &[31, 17]])
    }

    /// Degree-7 curve whose first projection is pseudo-symmetric.
    pub fn pseudo_symmetric_curve() -> Presentation {
        p(2, &[&[0, 7], &[4, 3], &[5, 2], &[7, 0]])
    }

    /// Degree-7 curve with both projections symmetric.
    pub fn symmetric_projections_curve() -> Presentation {
        p(2, &[&[0, 7], &[1, 6], &[3, 4], &[7, 0]])
    }

    /// Normal type-2 fixture that is not AG.
    pub fn normal_type2_not_ag() -> Presentation {
        p(2, &[&[0, 8], &[1, 3], &[3, 1], &[8, 0]])
    }

    /// Non-Cohen-Macaulay fixture: five Apéry elements over index four.
    pub fn non_cm_order4() -> Presentation {
        p(2, &[&[4, 0], &[0, 4], &[1, 3], &[3, 1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::*;

    #[test]
    fn analyze_produces_the_full_report() {
        let analysis = analyze(&order2_rank3(), &Limits::default()).unwrap();
        assert!(analysis.structure.is_cohen_macaulay);
        assert!(!analysis.structure.is_normal);
        assert_eq!(analysis.structure.semigroup_type, 1);
        let canonical = analysis.canonical.as_ref().unwrap();
        assert!(canonical.ag.is_ag);
        assert_eq!(canonical.data.a_invariant, -2);
    }

    #[test]
    fn analyze_skips_canonical_layer_when_not_cm() {
        let analysis = analyze(&non_cm_order4(), &Limits::default()).unwrap();
        assert!(!analysis.structure.is_cohen_macaulay);
        assert!(analysis.canonical.is_none());
        assert!(analysis.structure.cohen_macaulay_witness.is_some());
    }

    #[test]
    fn source_grading_data() {
        let analysis = analyze(&mixed_grading_plane(), &Limits::default()).unwrap();
        assert_eq!(analysis.a_invariant_source().unwrap(), -2);
        let socle = analysis.socle_source().unwrap();
        assert_eq!(socle.len(), 2);
    }

    #[test]
    fn verification_checks_pass_on_fixtures() {
        for p in [order2_rank3(), mixed_grading_plane(), type3_order8(), non_cm_order4()] {
            let analysis = analyze(&p, &Limits::default()).unwrap();
            for check in
                verification_checks(&analysis, &Limits::default(), None).unwrap()
            {
                assert!(check.passed, "{} failed: {}", check.name, check.detail);
            }
        }
    }
}

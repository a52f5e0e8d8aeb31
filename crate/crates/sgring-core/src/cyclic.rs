//! Two-dimensional cyclic-quotient semigroups.
//!
//! For coprime `n > m1 > 0` the semigroup collects the points `(u1, u2)` of
//! `N^2` with `u1 + m1 u2 = 0 (mod n)`. With `m2` the inverse of `m1`
//! modulo `n` and `c = (m1 m2 - 1)/n`, the semigroup is AG exactly when
//! `m1 = m2 = 1 (mod c)` (with `c = 0` read as `m1 = 1`), equivalently
//! when the Hirzebruch-Jung continued fraction of `n/m1` has no interior
//! coefficient above 2. `cross_validate` replays all three routes against
//! the general pipeline.

use num_integer::Integer;

use crate::canonical::ag_check;
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVector};
use crate::limits::Limits;
use crate::pipeline::analyze;
use crate::semigroup::Presentation;

/// Numeric invariants of the pair `(n, m1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicInvariants {
    pub n: i64,
    pub m1: i64,
    /// Inverse of `m1` modulo `n`, normalized to `0 < m2 < n` (`m2 = 1`
    /// when `m1 = 1`).
    pub m2: i64,
    /// `(m1 m2 - 1) / n`.
    pub c: i64,
    /// `(p, q)` with `m1 = p c + 1`, `m2 = q c + 1` when the AG criterion
    /// holds with `c > 0`.
    pub pq: Option<(i64, i64)>,
}

impl CyclicInvariants {
    pub fn new(n: i64, m1: i64) -> Result<Self> {
        let (m2, c) = inverse_and_c(n, m1)?;
        let pq = if c > 0 && (m1 - 1) % c == 0 && (m2 - 1) % c == 0 {
            let p = (m1 - 1) / c;
            let q = (m2 - 1) / c;
            if n != p * q * c + p + q {
                return Err(Error::internal(format!(
                    "cyclic invariants disagree: n = {n} but p q c + p + q = {}",
                    p * q * c + p + q
                )));
            }
            Some((p, q))
        } else {
            None
        };
        Ok(CyclicInvariants { n, m1, m2, c, pq })
    }

    /// AG criterion: `c = 0` (so `m1 = 1`) or both congruences hold.
    pub fn is_ag(&self) -> bool {
        self.c == 0 || self.pq.is_some()
    }
}

fn validate_pair(n: i64, m1: i64) -> Result<()> {
    if n <= 0 || m1 <= 0 || m1 >= n {
        return Err(Error::InvalidCyclic { n, m1, reason: "need 0 < m1 < n" });
    }
    if n.gcd(&m1) != 1 {
        return Err(Error::NotCoprime { n, m: m1 });
    }
    Ok(())
}

/// The inverse of `m1` modulo `n` in `(0, n)` and the integer
/// `c = (m1 m2 - 1)/n`.
pub fn inverse_and_c(n: i64, m1: i64) -> Result<(i64, i64)> {
    validate_pair(n, m1)?;
    let gcd = m1.extended_gcd(&n);
    debug_assert_eq!(gcd.gcd, 1);
    let m2 = gcd.x.rem_euclid(n);
    let c = (m1.checked_mul(m2).ok_or(Error::overflow("cyclic invariant"))? - 1) / n;
    Ok((m2, c))
}

/// Hirzebruch-Jung (minus) continued fraction, all coefficients at
/// least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJExpansion {
    pub coefficients: Vec<i64>,
}

impl HJExpansion {
    /// Re-evaluates `a_1 - 1/(a_2 - 1/(...))` as an exact reduced
    /// fraction.
    pub fn evaluate(&self) -> (i64, i64) {
        let mut num = *self.coefficients.last().expect("nonempty expansion");
        let mut den = 1i64;
        for &a in self.coefficients.iter().rev().skip(1) {
            let next_num = a
                .checked_mul(num)
                .and_then(|x| x.checked_sub(den))
                .expect("continued fraction overflow");
            den = num;
            num = next_num;
        }
        let g = num.gcd(&den);
        (num / g, den / g)
    }

    /// True when every interior coefficient equals 2; with the outer
    /// coefficients `q+1` and `p+1` this is the AG shape.
    pub fn is_ag_shape(&self) -> bool {
        let k = self.coefficients.len();
        k <= 2 || self.coefficients[1..k - 1].iter().all(|&a| a == 2)
    }
}

/// Expansion of `n/m`: take the ceiling, recurse on the remainder.
pub fn hj_expansion(n: i64, m: i64) -> Result<HJExpansion> {
    validate_pair(n, m)?;
    let mut coefficients = Vec::new();
    let (mut num, mut den) = (n, m);
    loop {
        let a = (num + den - 1) / den;
        coefficients.push(a);
        let r = a * den - num;
        if r == 0 {
            break;
        }
        num = den;
        den = r;
    }
    debug_assert!(coefficients.iter().all(|&a| a >= 2));
    Ok(HJExpansion { coefficients })
}

/// The Hilbert basis of the congruence semigroup, as a presentation.
/// Every irreducible element has both coordinates at most `n`, because an
/// element with a larger coordinate splits off `(n,0)` or `(0,n)` while
/// staying in the congruence lattice; so the box `[0,n]^2` suffices.
pub fn cyclic_presentation(n: i64, m1: i64) -> Result<Presentation> {
    validate_pair(n, m1)?;
    if n > 9999 {
        return Err(Error::InvalidCyclic { n, m1, reason: "box scan capped at n <= 9999" });
    }
    let mut congruent = Vec::new();
    for u1 in 0..=n {
        for u2 in 0..=n {
            if (u1 == 0 && u2 == 0) || (u1 + m1 * u2) % n != 0 {
                continue;
            }
            congruent.push(IntVector::new(vec![u1, u2]));
        }
    }
    let mut basis: Vec<IntVector> = congruent
        .iter()
        .filter(|v| {
            !congruent
                .iter()
                .any(|w| w != *v && v.dominates(w))
        })
        .cloned()
        .collect();
    basis.sort();
    Presentation::new(2, basis)
}

/// AG verdict for `(n, m1)` with the certificate pair `(p, q)` when the
/// criterion holds with `c > 0`.
pub fn is_ag_cyclic(n: i64, m1: i64) -> Result<(bool, Option<(i64, i64)>)> {
    let spec = CyclicInvariants::new(n, m1)?;
    Ok((spec.is_ag(), spec.pq))
}

/// The Ulrich element `(p, q)`, verified to be the unique interior element
/// of least degree. Requires the AG criterion and `m1 > 1`.
pub fn ulrich_element_cyclic(n: i64, m1: i64) -> Result<IntVector> {
    let spec = CyclicInvariants::new(n, m1)?;
    if !spec.is_ag() {
        return Err(Error::UlrichUnavailable {
            reason: format!("({n}, {m1}) does not satisfy the AG criterion"),
        });
    }
    if spec.m1 == 1 {
        return Err(Error::UlrichUnavailable {
            reason: "no unique minimal interior element when m1 = 1".to_string(),
        });
    }
    let (p, q) = spec.pq.expect("AG with m1 > 1 forces c > 0");
    let v = IntVector::new(vec![p, q]);
    let degree = p + q;
    // the interior congruence points of degree up to deg(v) must be {v}
    for u1 in 1..=degree {
        for u2 in 1..=(degree - u1).max(0) {
            if (u1 + m1 * u2) % n != 0 {
                continue;
            }
            let candidate = IntVector::new(vec![u1, u2]);
            if u1 + u2 < degree || (u1 + u2 == degree && candidate != v) {
                return Err(Error::internal(format!(
                    "interior element {candidate} undercuts the Ulrich candidate {v}"
                )));
            }
        }
    }
    Ok(v)
}

/// Agreement record for the three equivalent AG characterizations.
#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub n: i64,
    pub m1: i64,
    pub spec: CyclicInvariants,
    pub expansion: HJExpansion,
    pub criterion_ag: bool,
    pub shape_ag: bool,
    pub pipeline_ag: bool,
    pub semigroup_type: usize,
    /// The pipeline's Ulrich element when AG with `m1 > 1`.
    pub ulrich: Option<IntVector>,
}

/// Builds the congruence semigroup, runs the general pipeline, and checks
/// that the numeric criterion, the continued-fraction shape and the
/// pipeline verdict agree (including the Ulrich element when applicable).
/// Any disagreement is an error carrying the details.
pub fn cross_validate(n: i64, m1: i64, limits: &Limits) -> Result<CrossValidation> {
    let spec = CyclicInvariants::new(n, m1)?;
    let expansion = hj_expansion(n, m1)?;
    let criterion_ag = spec.is_ag();
    let shape_ag = expansion.is_ag_shape();

    let presentation = cyclic_presentation(n, m1)?;
    let analysis = analyze(&presentation, limits)?;
    let mismatch = |detail: String| Error::CrossValidationMismatch { n, m1, detail };

    if analysis.orthogonal.order() != n
        || analysis.orthogonal.transform() != &IntMatrix::identity(2)
    {
        return Err(mismatch(format!(
            "expected an orthogonal presentation of order {n} with identity transform, got order {}",
            analysis.orthogonal.order()
        )));
    }
    if !analysis.structure.is_cohen_macaulay {
        return Err(mismatch("congruence semigroup must be Cohen-Macaulay".to_string()));
    }
    if !analysis.structure.is_normal {
        return Err(mismatch("congruence semigroup must be normal".to_string()));
    }
    let canonical = analysis.canonical.as_ref().expect("CM analysis");
    let pipeline_ag = canonical.ag.is_ag;

    if pipeline_ag != criterion_ag || shape_ag != criterion_ag {
        return Err(mismatch(format!(
            "verdicts disagree: criterion {criterion_ag}, shape {shape_ag}, pipeline {pipeline_ag} (expansion {:?})",
            expansion.coefficients
        )));
    }

    let mut ulrich = None;
    if criterion_ag && m1 > 1 {
        let expected = ulrich_element_cyclic(n, m1)?;
        let witnesses = &canonical.ag.witnesses;
        if witnesses.len() != 1 {
            return Err(mismatch(format!(
                "expected a unique AG witness, got {}",
                witnesses.len()
            )));
        }
        if witnesses[0].ulrich != expected {
            return Err(mismatch(format!(
                "pipeline Ulrich element {} differs from (p, q) = {expected}",
                witnesses[0].ulrich
            )));
        }
        ulrich = Some(expected);
    }

    // replayed through the AG checker to keep the reports in lockstep
    let oracle = analysis.orthogonal.oracle(limits);
    let replay = ag_check(&analysis.orthogonal, &analysis.apery, &oracle)?;
    if replay.is_ag != pipeline_ag {
        return Err(mismatch("AG verdict is not reproducible".to_string()));
    }

    Ok(CrossValidation {
        n,
        m1,
        spec,
        expansion,
        criterion_ag,
        shape_ag,
        pipeline_ag,
        semigroup_type: analysis.structure.semigroup_type,
        ulrich,
    })
}

//! Canonical-module combinatorics over a Cohen-Macaulay orthogonal
//! presentation.
//!
//! The graded canonical module is generated by the translates
//! `v_w = -w + Σ_{b in E} b` of the socle elements. For each socle element
//! `w` and Apéry element `h` there is a unique partner `h'` in the Apéry
//! set and `u` in `N E` with `h + h' = w + u`; writing `deg u = m c_{w,h}`
//! the sum of the `c_{w,h}` over the non-divisors of `w` is the
//! multiplicity of the canonical quotient at `v_w`. An Ulrich element is a
//! `v_w` whose multiplicity is `type - 1`, and a semigroup admitting one is
//! almost Gorenstein (AG). Everything here assumes the Cohen-Macaulay
//! property and reports a typed error with a coset witness otherwise.

use num_integer::Integer;

use crate::apery::{cohen_macaulay_witness, is_cohen_macaulay, pseudo_frobenius, AperyData};
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::limits::Limits;
use crate::semigroup::{MembershipOracle, OrthogonalPresentation, Presentation};
use crate::series::{HilbertSeries, LaurentPoly};

fn require_cohen_macaulay(a: &AperyData) -> Result<()> {
    if is_cohen_macaulay(a) {
        return Ok(());
    }
    let (first, second) = cohen_macaulay_witness(a)
        .ok_or_else(|| Error::internal("non-CM data without a coset collision"))?;
    Err(Error::NotCohenMacaulay { first, second })
}

fn require_socle(a: &AperyData, w: &IntVector) -> Result<()> {
    if a.socle.contains(w) {
        Ok(())
    } else {
        Err(Error::InvalidGenerator { vector: w.clone(), reason: "not a socle element" })
    }
}

/// The unique Apéry element `v` with `h + v` in `ZE`.
pub fn h_vee(a: &AperyData, h: &IntVector) -> Result<IntVector> {
    require_cohen_macaulay(a)?;
    let neg = IntVector::zeros(h.dim()).checked_sub(h)?;
    let members = a.coset_members(&neg)?;
    match members.as_slice() {
        [unique] => Ok((*unique).clone()),
        _ => Err(Error::internal(format!("coset of -{h} holds {} Apéry elements", members.len()))),
    }
}

/// Generators of the canonical module derived from the socle.
#[derive(Clone, Debug)]
pub struct CanonicalData {
    /// `w -> v_w = -w + Σ b`, sorted by `w`.
    pub socle_generators: Vec<(IntVector, IntVector)>,
    /// The divisibility-minimal generators among the `v_w`.
    pub minimal_generators: Vec<IntVector>,
    /// Largest socle degree minus the degree of the extreme set.
    pub a_invariant: i64,
}

pub fn canonical_generators(
    op: &OrthogonalPresentation,
    a: &AperyData,
    oracle: &MembershipOracle,
) -> Result<CanonicalData> {
    require_cohen_macaulay(a)?;
    let sum = op.extreme_set_sum();
    let mut socle_generators = Vec::with_capacity(a.socle.len());
    for w in &a.socle {
        socle_generators.push((w.clone(), sum.checked_sub(w)?));
    }
    let mut minimal_generators = Vec::new();
    'candidates: for (_, v) in &socle_generators {
        for (_, other) in &socle_generators {
            if other != v && oracle.contains(&v.checked_sub(other)?)? {
                continue 'candidates;
            }
        }
        minimal_generators.push(v.clone());
    }
    minimal_generators.sort();
    let max_socle_degree = a
        .socle
        .iter()
        .map(IntVector::degree)
        .max()
        .ok_or_else(|| Error::internal("empty socle"))?;
    let a_invariant = max_socle_degree - op.order() * op.dim() as i64;
    Ok(CanonicalData { socle_generators, minimal_generators, a_invariant })
}

/// One row of a `c`-table: `apery + partner = socle_element + scaled` with
/// `scaled` in `N E` and `deg scaled = m * coefficient`.
#[derive(Clone, Debug)]
pub struct CTableRow {
    pub apery: IntVector,
    pub partner: IntVector,
    pub scaled: IntVector,
    pub coefficient: i64,
}

/// All rows for one socle element.
#[derive(Clone, Debug)]
pub struct CTable {
    pub socle_element: IntVector,
    pub rows: Vec<CTableRow>,
}

pub fn c_table(op: &OrthogonalPresentation, a: &AperyData, w: &IntVector) -> Result<CTable> {
    require_cohen_macaulay(a)?;
    require_socle(a, w)?;
    let m = op.order();
    let mut rows = Vec::with_capacity(a.elements.len());
    for h in &a.elements {
        let target = w.checked_sub(h)?;
        let members = a.coset_members(&target)?;
        let partner = match members.as_slice() {
            [unique] => (*unique).clone(),
            _ => {
                return Err(Error::internal(format!(
                    "coset of {w} - {h} holds {} Apéry elements",
                    members.len()
                )))
            }
        };
        let scaled = h.checked_add(&partner)?.checked_sub(w)?;
        if !scaled.is_nonnegative() || scaled.entries().iter().any(|&x| x % m != 0) {
            return Err(Error::internal(format!(
                "difference {scaled} for {h} is outside N E; Cohen-Macaulay precondition broken"
            )));
        }
        rows.push(CTableRow {
            apery: h.clone(),
            partner,
            coefficient: scaled.degree() / m,
            scaled,
        });
    }
    Ok(CTable { socle_element: w.clone(), rows })
}

/// Multiplicity of the canonical quotient at `v_w`: the sum of the
/// `c`-coefficients over the Apéry elements that do not divide `w`.
pub fn quotient_multiplicity(
    op: &OrthogonalPresentation,
    a: &AperyData,
    oracle: &MembershipOracle,
    w: &IntVector,
) -> Result<i64> {
    let table = c_table(op, a, w)?;
    let mut total = 0i64;
    for row in &table.rows {
        let divides = oracle.contains(&w.checked_sub(&row.apery)?)?;
        if !divides {
            total = total
                .checked_add(row.coefficient)
                .ok_or(Error::overflow("quotient multiplicity"))?;
        }
    }
    Ok(total)
}

/// Certificate for one socle element of an AG witness: for each other
/// socle element `h`, the pair `(h', b)` with `h + h' = w + b`.
#[derive(Clone, Debug)]
pub struct AGCertificate {
    pub socle_element: IntVector,
    pub partner: IntVector,
    pub extreme: IntVector,
}

/// A socle element satisfying the AG criterion, with its Ulrich element in
/// orthogonal coordinates.
#[derive(Clone, Debug)]
pub struct AGWitness {
    pub socle_element: IntVector,
    pub ulrich: IntVector,
    pub certificates: Vec<AGCertificate>,
}

/// Result of the AG test over every socle element.
#[derive(Clone, Debug)]
pub struct AGReport {
    pub is_ag: bool,
    pub witnesses: Vec<AGWitness>,
    /// `w -> mult(K/t^{v_w})` for every socle element, sorted by `w`.
    pub quotient_multiplicities: Vec<(IntVector, i64)>,
    pub semigroup_type: usize,
}

/// Tests the AG criterion: some socle element `w` has (1) the non-divisors
/// of `w` in the Apéry set exactly the other socle elements, and (2) each
/// other socle element `h` paired by some `h'` in the socle and `b` in `E`
/// with `h + h' = w + b`. Every satisfying `w` is reported with
/// certificates. The verdict is cross-checked against the multiplicity
/// route internally.
pub fn ag_check(
    op: &OrthogonalPresentation,
    a: &AperyData,
    oracle: &MembershipOracle,
) -> Result<AGReport> {
    require_cohen_macaulay(a)?;
    let extreme = op.extreme_set();
    let sum = op.extreme_set_sum();
    let semigroup_type = a.semigroup_type();
    let mut witnesses = Vec::new();
    let mut quotient_multiplicities = Vec::with_capacity(a.socle.len());

    for w in &a.socle {
        quotient_multiplicities.push((w.clone(), quotient_multiplicity(op, a, oracle, w)?));

        let mut condition_one = true;
        for h in &a.elements {
            let in_other_socle = h != w && a.socle.contains(h);
            let divides = oracle.contains(&w.checked_sub(h)?)?;
            if in_other_socle != !divides {
                condition_one = false;
                break;
            }
        }
        if !condition_one {
            continue;
        }

        let mut certificates = Vec::new();
        let mut condition_two = true;
        'others: for h in &a.socle {
            if h == w {
                continue;
            }
            for partner in &a.socle {
                for b in &extreme {
                    if h.checked_add(partner)? == w.checked_add(b)? {
                        certificates.push(AGCertificate {
                            socle_element: h.clone(),
                            partner: partner.clone(),
                            extreme: b.clone(),
                        });
                        continue 'others;
                    }
                }
            }
            condition_two = false;
            break;
        }
        if condition_two {
            witnesses.push(AGWitness {
                socle_element: w.clone(),
                ulrich: sum.checked_sub(w)?,
                certificates,
            });
        }
    }

    let is_ag = !witnesses.is_empty();
    let min_multiplicity = quotient_multiplicities
        .iter()
        .map(|(_, q)| *q)
        .min()
        .ok_or_else(|| Error::internal("empty socle"))?;
    if is_ag != (min_multiplicity == semigroup_type as i64 - 1) {
        return Err(Error::internal(format!(
            "AG criterion and multiplicity route disagree: witnesses {}, minimal multiplicity {min_multiplicity}, type {semigroup_type}"
        , witnesses.len())));
    }
    let max_socle_degree = a.socle.iter().map(IntVector::degree).max().unwrap_or(0);
    for witness in &witnesses {
        if witness.socle_element.degree() != max_socle_degree {
            return Err(Error::internal(format!(
                "AG witness {} does not have maximal socle degree",
                witness.socle_element
            )));
        }
    }
    Ok(AGReport { is_ag, witnesses, quotient_multiplicities, semigroup_type })
}

/// Hilbert series of the semigroup ring: Apéry degrees over
/// `(1 - t^m)^d`. The formula characterizes the Cohen-Macaulay case.
pub fn hilbert_numerator(op: &OrthogonalPresentation, a: &AperyData) -> Result<HilbertSeries> {
    require_cohen_macaulay(a)?;
    let numerator = LaurentPoly::from_exponents(a.elements.iter().map(IntVector::degree))?;
    Ok(HilbertSeries::new(numerator, vec![op.order(); op.dim()]))
}

/// Hilbert series of the canonical module, `(-1)^d P(1/t)` rewritten over
/// `(1 - t^m)^d`: exponents `d m - deg h`.
pub fn canonical_series(op: &OrthogonalPresentation, a: &AperyData) -> Result<HilbertSeries> {
    require_cohen_macaulay(a)?;
    let shift = op.order() * op.dim() as i64;
    let numerator =
        LaurentPoly::from_exponents(a.elements.iter().map(|h| shift - h.degree()))?;
    Ok(HilbertSeries::new(numerator, vec![op.order(); op.dim()]))
}

/// Series of the canonical quotient at `v_w`: the exact difference
/// `P_K - t^{deg v_w} P_R` over the shared denominator.
pub fn quotient_series(
    op: &OrthogonalPresentation,
    a: &AperyData,
    w: &IntVector,
) -> Result<HilbertSeries> {
    require_socle(a, w)?;
    let canonical = canonical_series(op, a)?;
    let ring = hilbert_numerator(op, a)?;
    let shift = op.order() * op.dim() as i64 - w.degree();
    let numerator = canonical.numerator.checked_sub(&ring.numerator.shifted(shift)?)?;
    Ok(HilbertSeries::new(numerator, vec![op.order(); op.dim()]))
}

/// Almost-symmetry of a rank-1 semigroup, read off the pseudo-Frobenius
/// numbers: with `f_1 < ... < f_r`, requires `f_i + f_{r-i} = f_r` for
/// all `i`. Agrees with the AG criterion in rank 1.
pub fn is_almost_symmetric(a: &AperyData) -> Result<bool> {
    let pf = pseudo_frobenius(a)?;
    let r = pf.len();
    Ok((0..r.saturating_sub(1)).all(|j| pf[j] + pf[r - 2 - j] == pf[r - 1]))
}

/// The numerical semigroup of the `coord`-th entries of the semigroup
/// elements, normalized by the gcd of the projected generators.
pub fn project_coordinate(op: &OrthogonalPresentation, coord: usize) -> Result<Presentation> {
    let values: Vec<i64> = op
        .base()
        .generators()
        .iter()
        .map(|g| g.entry(coord))
        .filter(|&x| x > 0)
        .collect();
    if values.is_empty() {
        return Err(Error::ZeroProjection { coord });
    }
    let g = values.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Presentation::numerical(&values.iter().map(|&x| x / g).collect::<Vec<_>>())
}

/// Convenience wrapper: analyzes a rank-1 presentation far enough to run
/// the symmetry and AG tests.
pub fn analyze_numerical(
    p: &Presentation,
    limits: &Limits,
) -> Result<(OrthogonalPresentation, MembershipOracle, AperyData)> {
    let source_oracle = MembershipOracle::new(p, limits);
    let op = crate::semigroup::orthogonalize(p, &source_oracle, limits)?;
    let oracle = op.oracle(limits);
    let a = crate::apery::apery_set(&op, &oracle, limits)?;
    Ok((op, oracle, a))
}

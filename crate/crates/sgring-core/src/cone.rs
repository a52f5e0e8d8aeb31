//! Exact rational cone membership.
//!
//! Decides whether a target vector is a nonnegative rational combination of
//! a generating set. The primary decision procedure is Fourier-Motzkin
//! elimination over arbitrary-precision integers; queries whose constraint
//! systems grow past a row cap are rerouted to a phase-I simplex over
//! arbitrary-precision rationals. Both routes are exact.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntVector;

/// `Σ coeffs[i] * λ_i <= bound` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
struct FmRow {
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

impl FmRow {
    /// Divides through by the gcd of every entry. Positive scaling keeps
    /// the rational halfspace unchanged.
    fn normalized(mut self) -> FmRow {
        let mut g = self.bound.abs();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g > BigInt::one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.bound /= &g;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

enum FmOutcome {
    Decided(bool),
    RowCapExceeded,
}

fn fourier_motzkin(mut rows: Vec<FmRow>, nvars: usize, row_cap: usize) -> FmOutcome {
    let mut remaining: Vec<usize> = (0..nvars).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest combined rows
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(idx, &var)| {
                let pos = rows.iter().filter(|r| r.coeffs[var].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[var].is_negative()).count();
                (idx, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .expect("nonempty");
        let var = remaining.swap_remove(pick);

        let mut kept = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for row in rows {
            if row.coeffs[var].is_positive() {
                pos.push(row);
            } else if row.coeffs[var].is_negative() {
                neg.push(row);
            } else {
                kept.push(row);
            }
        }
        let mut seen: HashSet<FmRow> = kept.iter().cloned().collect();
        for p in &pos {
            for n in &neg {
                let a = &p.coeffs[var];
                let b = -&n.coeffs[var];
                let mut coeffs = Vec::with_capacity(nvars);
                for i in 0..nvars {
                    coeffs.push(&b * &p.coeffs[i] + a * &n.coeffs[i]);
                }
                let bound = &b * &p.bound + a * &n.bound;
                let row = FmRow { coeffs, bound }.normalized();
                if row.is_constant() {
                    if row.bound.is_negative() {
                        return FmOutcome::Decided(false);
                    }
                    continue;
                }
                if seen.insert(row.clone()) {
                    kept.push(row);
                }
            }
        }
        if kept.len() > row_cap {
            return FmOutcome::RowCapExceeded;
        }
        rows = kept;
    }
    FmOutcome::Decided(rows.iter().all(|r| !r.bound.is_negative()))
}

fn membership_rows(generators: &[IntVector], target: &IntVector) -> Vec<FmRow> {
    let dim = target.dim();
    let k = generators.len();
    let mut rows = Vec::with_capacity(2 * dim + k);
    for j in 0..dim {
        let coeffs: Vec<BigInt> = generators.iter().map(|g| BigInt::from(g.entry(j))).collect();
        let bound = BigInt::from(target.entry(j));
        rows.push(FmRow { coeffs: coeffs.clone(), bound: bound.clone() }.normalized());
        rows.push(
            FmRow {
                coeffs: coeffs.into_iter().map(|c| -c).collect(),
                bound: -bound,
            }
            .normalized(),
        );
    }
    for i in 0..k {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs[i] = -BigInt::one();
        rows.push(FmRow { coeffs, bound: BigInt::zero() });
    }
    rows
}

/// Phase-I simplex for `Σ λ_i g_i = t, λ >= 0` over exact rationals.
/// Bland's rule guarantees termination.
fn simplex_feasible(generators: &[IntVector], target: &IntVector) -> bool {
    let dim = target.dim();
    let k = generators.len();
    let cols = k + dim;
    let rat = |x: i64| BigRational::from(BigInt::from(x));

    // tableau rows: constraints with rhs flipped nonnegative
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(dim);
    for j in 0..dim {
        let flip = target.entry(j) < 0;
        let mut row: Vec<BigRational> = (0..cols).map(|_| BigRational::zero()).collect();
        for (i, g) in generators.iter().enumerate() {
            row[i] = rat(if flip { -g.entry(j) } else { g.entry(j) });
        }
        row[k + j] = BigRational::one();
        tab.push(row);
        rhs.push(rat(target.entry(j).abs()));
    }
    let mut basis: Vec<usize> = (0..dim).map(|j| k + j).collect();

    // reduced costs for minimizing the artificial sum
    let mut reduced: Vec<BigRational> = (0..cols)
        .map(|j| {
            let cost = if j >= k { BigRational::one() } else { BigRational::zero() };
            let mut acc = cost;
            for row in tab.iter() {
                acc -= &row[j];
            }
            acc
        })
        .collect();
    let mut objective: BigRational = rhs.iter().fold(BigRational::zero(), |a, b| a + b);

    loop {
        let Some(enter) = (0..cols).find(|&j| reduced[j].is_negative()) else {
            return objective.is_zero();
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..dim {
            if tab[r][enter].is_positive() {
                let ratio = &rhs[r] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            // the phase-I objective is bounded below by zero
            unreachable!("unbounded phase-I simplex");
        };
        let pivot = tab[lr][enter].clone();
        for x in tab[lr].iter_mut() {
            *x /= &pivot;
        }
        rhs[lr] /= &pivot;
        let pivot_row = tab[lr].clone();
        for r in 0..dim {
            if r != lr && !tab[r][enter].is_zero() {
                let factor = tab[r][enter].clone();
                for (x, p) in tab[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
                let delta = &factor * &rhs[lr];
                rhs[r] -= delta;
            }
        }
        if !reduced[enter].is_zero() {
            let factor = reduced[enter].clone();
            for (x, p) in reduced.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
            // entering at value rhs[lr] changes the objective by the
            // reduced cost times that value
            let delta = &factor * &rhs[lr];
            objective += delta;
        }
        basis[lr] = enter;
    }
}

/// True when `target` is a nonnegative rational combination of `generators`.
pub(crate) fn cone_contains(
    generators: &[IntVector],
    target: &IntVector,
    fm_row_cap: usize,
) -> Result<bool> {
    for g in generators {
        if g.dim() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), actual: g.dim() });
        }
    }
    if target.is_zero() {
        return Ok(true);
    }
    if generators.is_empty() {
        return Ok(false);
    }
    let rows = membership_rows(generators, target);
    match fourier_motzkin(rows, generators.len(), fm_row_cap) {
        FmOutcome::Decided(answer) => Ok(answer),
        FmOutcome::RowCapExceeded => Ok(simplex_feasible(generators, target)),
    }
}

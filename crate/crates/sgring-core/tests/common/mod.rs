//! Shared helpers for the integration suites: seeded random presentations
//! and enumeration oracles kept independent of the library's series and
//! Apéry code paths.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sgring_core::lattice::IntVector;
use sgring_core::pipeline::{analyze, Analysis};
use sgring_core::semigroup::{MembershipOracle, Presentation};
use sgring_core::Limits;

pub fn limits() -> Limits {
    Limits::default()
}

/// Closure of the generators up to a degree bound, by plain worklist.
pub fn elements_up_to_degree(gens: &[IntVector], dim: usize, hi: i64) -> BTreeSet<IntVector> {
    let mut seen = BTreeSet::new();
    if hi < 0 {
        return seen;
    }
    let zero = IntVector::zeros(dim);
    let mut queue = vec![zero.clone()];
    seen.insert(zero);
    while let Some(u) = queue.pop() {
        for g in gens {
            let w = u.checked_add(g).unwrap();
            if w.degree() <= hi && seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    seen
}

/// Per-degree counts of the canonical translates `(Σb - w) + H` over the
/// window `[lo, hi]`, derived purely by enumeration.
pub fn canonical_degree_counts(analysis: &Analysis, lo: i64, hi: i64) -> Vec<i64> {
    let op = &analysis.orthogonal;
    let dim = op.dim();
    let sum = op.extreme_set_sum();
    let gens = op.base().generators();
    let mut points: BTreeSet<IntVector> = BTreeSet::new();
    for w in &analysis.apery.socle {
        let base = sum.checked_sub(w).unwrap();
        for h in elements_up_to_degree(gens, dim, hi - base.degree()) {
            points.insert(base.checked_add(&h).unwrap());
        }
    }
    let mut counts = vec![0i64; (hi - lo + 1) as usize];
    for p in points {
        let d = p.degree();
        if (lo..=hi).contains(&d) {
            counts[(d - lo) as usize] += 1;
        }
    }
    counts
}

/// Seeded sample of simplicial full-rank presentations with `d <= 3`,
/// entries in `[0, 6]`, and orthogonalization order at most 60 so every
/// membership box stays inside the default budget.
pub fn random_presentations(seed: u64, count: usize) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let limits = limits();
    while out.len() < count {
        let dim = rng.random_range(1..=3usize);
        let gen_count = rng.random_range(dim.max(2)..=dim + 3);
        let mut gens = Vec::new();
        for _ in 0..gen_count {
            let entries: Vec<i64> = (0..dim).map(|_| rng.random_range(0..=6)).collect();
            let v = IntVector::new(entries);
            if !v.is_zero() {
                gens.push(v);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let Ok(p) = Presentation::new(dim, gens) else { continue };
        let oracle = MembershipOracle::new(&p, &limits);
        let Ok(op) = sgring_core::semigroup::orthogonalize(&p, &oracle, &limits) else {
            continue;
        };
        if op.order() > 60 {
            continue;
        }
        out.push(p);
    }
    out
}

/// Seeded random numerical semigroup with multiplicity at most `max_mult`.
pub fn random_numerical(rng: &mut ChaCha8Rng, max_mult: i64) -> Presentation {
    let mult = rng.random_range(2..=max_mult);
    let extra = rng.random_range(1..=3usize);
    let mut gens = vec![mult];
    for _ in 0..extra {
        gens.push(rng.random_range(mult + 1..=3 * mult));
    }
    let gcd = gens.iter().fold(0i64, |a, &b| num_gcd(a, b));
    if gcd > 1 {
        gens.push(mult + 1);
    }
    Presentation::numerical(&gens).unwrap()
}

pub fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

pub fn analyzed(p: &Presentation) -> Analysis {
    analyze(p, &limits()).unwrap_or_else(|e| panic!("analysis of {p:?} failed: {e}"))
}

//! Affine semigroup presentations and their structural geometry.
//!
//! A presentation is a finite list of nonzero generators in `N^d`. This
//! module provides the membership oracle (memoized dynamic program over the
//! coordinate box), extreme-ray detection through exact cone membership,
//! the simpliciality test, and the transformation of a simplicial
//! presentation into an orthogonal one whose extreme set is `{m e_i}` with
//! each `m e_i` minimal on its axis.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::cone::cone_contains;
use crate::error::{Error, Result};
use crate::lattice::{lattice_rank, IntMatrix, IntVector};
use crate::limits::Limits;

/// A finite generating set in `N^d`. Generators are deduplicated but keep
/// their input order; that order fixes every downstream ray ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    dim: usize,
    generators: Vec<IntVector>,
}

impl Presentation {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::InvalidGenerator { vector: g, reason: "zero vector" });
            }
            if !g.is_nonnegative() {
                return Err(Error::InvalidGenerator { vector: g, reason: "negative entry" });
            }
            if seen.insert(g.clone()) {
                kept.push(g);
            }
        }
        Ok(Presentation { dim, generators: kept })
    }

    /// Rank-1 presentation of a numerical semigroup.
    pub fn numerical(values: &[i64]) -> Result<Self> {
        Presentation::new(1, values.iter().map(|&v| IntVector::new(vec![v])).collect())
    }

    /// The product semigroup inside `N^{d1+d2}`.
    pub fn product(&self, other: &Presentation) -> Result<Presentation> {
        let dim = self.dim + other.dim;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            let mut entries = g.entries().to_vec();
            entries.extend(std::iter::repeat_n(0, other.dim));
            gens.push(IntVector::new(entries));
        }
        for g in &other.generators {
            let mut entries = vec![0; self.dim];
            entries.extend_from_slice(g.entries());
            gens.push(IntVector::new(entries));
        }
        Presentation::new(dim, gens)
    }

    /// Points of `N^d` with coordinate sum `n`; they generate the semigroup
    /// of lattice points whose degree is a multiple of `n`.
    pub fn veronese(n: i64, dim: usize) -> Result<Presentation> {
        fn compositions(n: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<IntVector>) {
            if parts == 1 {
                prefix.push(n);
                out.push(IntVector::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=n).rev() {
                prefix.push(first);
                compositions(n - first, parts - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut gens = Vec::new();
        compositions(n, dim.max(1), &mut Vec::new(), &mut gens);
        Presentation::new(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }
}

/// Memoized membership test for the semigroup generated by a presentation.
///
/// Membership of `v` is decided by the dynamic program over the coordinate
/// box `[0, v]`: `v` belongs to the semigroup exactly when some generator
/// `a <= v` has `v - a` in the semigroup. The memo table is shared across
/// queries of one oracle. The table sits behind a `RefCell`, so an oracle is
/// confined to a single thread; queries through a shared reference are
/// nevertheless sequentially consistent.
pub struct MembershipOracle {
    dim: usize,
    generators: Vec<IntVector>,
    max_box_volume: u128,
    memo: RefCell<HashMap<IntVector, bool>>,
}

impl MembershipOracle {
    pub fn new(presentation: &Presentation, limits: &Limits) -> Self {
        MembershipOracle {
            dim: presentation.dim(),
            generators: presentation.generators().to_vec(),
            max_box_volume: limits.max_box_volume,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// True exactly when `v` is a finite sum of generators. Vectors with a
    /// negative entry are never members.
    pub fn contains(&self, v: &IntVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: v.dim() });
        }
        if !v.is_nonnegative() {
            return Ok(false);
        }
        if v.is_zero() {
            return Ok(true);
        }
        let mut volume: u128 = 1;
        for &x in v.entries() {
            volume = volume.saturating_mul(x as u128 + 1);
        }
        if volume > self.max_box_volume {
            return Err(Error::BoxVolumeExceeded {
                vector: v.clone(),
                volume,
                limit: self.max_box_volume,
            });
        }
        Ok(self.decide(v))
    }

    fn decide(&self, v: &IntVector) -> bool {
        if let Some(&hit) = self.memo.borrow().get(v) {
            return hit;
        }
        let mut found = false;
        for g in &self.generators {
            if v.dominates(g) {
                let w = v.checked_sub(g).expect("difference of box points");
                if w.is_zero() || self.decide(&w) {
                    found = true;
                    break;
                }
            }
        }
        self.memo.borrow_mut().insert(v.clone(), found);
        found
    }
}

/// All semigroup elements of degree at most `max_degree`, sorted
/// lexicographically. Breadth-first closure over generator additions.
pub fn enumerate_up_to_degree(
    oracle: &MembershipOracle,
    max_degree: i64,
    limits: &Limits,
) -> Result<Vec<IntVector>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    if max_degree >= 0 {
        let zero = IntVector::zeros(oracle.dim());
        seen.insert(zero.clone());
        queue.push_back(zero);
    }
    while let Some(u) = queue.pop_front() {
        for g in oracle.generators() {
            let w = u.checked_add(g)?;
            if w.degree() <= max_degree && !seen.contains(&w) {
                if seen.len() >= limits.max_enumeration {
                    return Err(Error::EnumerationCapExceeded { limit: limits.max_enumeration });
                }
                seen.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<IntVector> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Primitive directions of the generators that are not nonnegative rational
/// combinations of the generators on other rays. No rank requirement.
fn extreme_directions(p: &Presentation, limits: &Limits) -> Result<Vec<IntVector>> {
    if p.dim() > limits.max_cone_dim {
        return Err(Error::ConeDimension { dim: p.dim(), limit: limits.max_cone_dim });
    }
    let mut directions: Vec<IntVector> = Vec::new();
    for g in p.generators() {
        let d = g.primitive();
        if !directions.contains(&d) {
            directions.push(d);
        }
    }
    let mut extreme = Vec::new();
    for dir in &directions {
        let others: Vec<IntVector> = p
            .generators()
            .iter()
            .filter(|g| g.primitive() != *dir)
            .cloned()
            .collect();
        if !cone_contains(&others, dir, limits.fm_row_cap)? {
            extreme.push(dir.clone());
        }
    }
    Ok(extreme)
}

/// Primitive extreme-ray directions, in first-occurrence order of the
/// generators. Requires the generators to span a rank-`d` lattice.
pub fn extreme_rays(p: &Presentation, limits: &Limits) -> Result<Vec<IntVector>> {
    let rank = lattice_rank(p.dim(), p.generators())?;
    if rank < p.dim() {
        return Err(Error::RankDeficient { expected: p.dim(), actual: rank });
    }
    extreme_directions(p, limits)
}

/// True when the number of extreme rays equals the lattice rank and every
/// generator lies in the rational cone of the extreme rays.
pub fn is_simplicial(p: &Presentation, limits: &Limits) -> Result<bool> {
    let rank = lattice_rank(p.dim(), p.generators())?;
    let dirs = extreme_directions(p, limits)?;
    if dirs.len() != rank {
        return Ok(false);
    }
    for g in p.generators() {
        if !cone_contains(&dirs, g, limits.fm_row_cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The smallest positive multiple of a primitive direction that belongs to
/// the semigroup. The scan is bounded by the smallest generator multiple
/// lying on the ray.
pub fn minimal_ray_element(
    p: &Presentation,
    oracle: &MembershipOracle,
    direction: &IntVector,
) -> Result<IntVector> {
    let dir = direction.primitive();
    let pivot = dir
        .entries()
        .iter()
        .position(|&x| x != 0)
        .ok_or(Error::InvalidGenerator { vector: dir.clone(), reason: "zero direction" })?;
    let bound = p
        .generators()
        .iter()
        .filter(|g| g.primitive() == dir)
        .map(|g| g.entry(pivot) / dir.entry(pivot))
        .min()
        .ok_or(Error::NoRayMultiple { direction: dir.clone(), bound: 0 })?;
    for k in 1..=bound {
        let candidate = dir.checked_scale(k)?;
        if oracle.contains(&candidate)? {
            return Ok(candidate);
        }
    }
    Err(Error::NoRayMultiple { direction: dir, bound })
}

/// A presentation in orthogonal normal form: the extreme set is `{m e_i}`
/// and no smaller multiple of any axis vector lies in the semigroup.
/// `transform` maps source coordinates to orthogonal coordinates; the
/// columns of `ray_matrix` are the minimal extreme-ray elements of the
/// source presentation.
#[derive(Clone, Debug)]
pub struct OrthogonalPresentation {
    base: Presentation,
    order: i64,
    transform: IntMatrix,
    transform_adjugate: IntMatrix,
    transform_determinant: i64,
    ray_matrix: IntMatrix,
    source: Presentation,
}

impl OrthogonalPresentation {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    /// Extreme set `{m e_i}` in orthogonal coordinates.
    pub fn extreme_set(&self) -> Vec<IntVector> {
        (0..self.dim())
            .map(|i| {
                IntVector::unit(self.dim(), i)
                    .checked_scale(self.order)
                    .expect("extreme set")
            })
            .collect()
    }

    /// `Σ_{b in E} b = (m, ..., m)`.
    pub fn extreme_set_sum(&self) -> IntVector {
        IntVector::new(vec![self.order; self.dim()])
    }

    /// Minimal extreme-ray elements of the source presentation.
    pub fn source_extreme_set(&self) -> Vec<IntVector> {
        self.ray_matrix.columns()
    }

    pub fn to_orthogonal(&self, v: &IntVector) -> Result<IntVector> {
        self.transform.mul_vector(v)
    }

    /// Inverts the transform on a vector of the image lattice.
    pub fn to_source(&self, v: &IntVector) -> Result<IntVector> {
        let scaled = self.transform_adjugate.mul_vector(v)?;
        let det = self.transform_determinant;
        let mut entries = Vec::with_capacity(scaled.dim());
        for &x in scaled.entries() {
            if x % det != 0 {
                return Err(Error::NotInLattice { vector: v.clone() });
            }
            entries.push(x / det);
        }
        Ok(IntVector::new(entries))
    }

    pub fn oracle(&self, limits: &Limits) -> MembershipOracle {
        MembershipOracle::new(&self.base, limits)
    }
}

/// Transforms a simplicial full-rank presentation into orthogonal form.
///
/// The transform is the adjugate of the matrix `B` of minimal extreme-ray
/// elements (columns ordered by first occurrence, reordered for a positive
/// determinant), so each ray maps to `det(B) e_i` and the order is
/// `m = det(B)`. A presentation whose rays already form `{m e_i}` is
/// returned unchanged with the identity transform. The axis-minimality of
/// `m` is re-verified through the source oracle in both paths.
pub fn orthogonalize(
    p: &Presentation,
    oracle: &MembershipOracle,
    limits: &Limits,
) -> Result<OrthogonalPresentation> {
    let dim = p.dim();
    let rank = lattice_rank(dim, p.generators())?;
    let dirs = extreme_directions(p, limits)?;
    let simplicial = dirs.len() == rank && {
        let mut inside = true;
        for g in p.generators() {
            if !cone_contains(&dirs, g, limits.fm_row_cap)? {
                inside = false;
                break;
            }
        }
        inside
    };
    if !simplicial {
        return Err(Error::NotSimplicial { extreme_rays: dirs.len(), rank });
    }
    if rank < dim {
        return Err(Error::RankDeficient { expected: dim, actual: rank });
    }

    let mut rays = Vec::with_capacity(dim);
    for dir in &dirs {
        rays.push(minimal_ray_element(p, oracle, dir)?);
    }

    if let Some(order) = common_axis_order(dim, &rays) {
        verify_axis_minimality(oracle, dim, order, |i, k| {
            Ok(Some(IntVector::unit(dim, i).checked_scale(k)?))
        })?;
        return Ok(OrthogonalPresentation {
            base: p.clone(),
            order,
            transform: IntMatrix::identity(dim),
            transform_adjugate: IntMatrix::identity(dim),
            transform_determinant: 1,
            ray_matrix: IntMatrix::from_columns(&rays)?,
            source: p.clone(),
        });
    }

    let mut ray_matrix = IntMatrix::from_columns(&rays)?;
    let mut det = ray_matrix.determinant()?;
    if det == 0 {
        return Err(Error::DegenerateTransform);
    }
    if det < 0 {
        ray_matrix.swap_columns(dim - 2, dim - 1);
        rays.swap(dim - 2, dim - 1);
        det = -det;
    }
    let transform = ray_matrix.adjugate()?;
    for (i, ray) in rays.iter().enumerate() {
        let image = transform.mul_vector(ray)?;
        let expected = IntVector::unit(dim, i).checked_scale(det)?;
        if image != expected {
            return Err(Error::internal(format!(
                "extreme ray {ray} maps to {image}, expected {expected}"
            )));
        }
    }
    let mut base_gens = Vec::with_capacity(p.generators().len());
    for g in p.generators() {
        let image = transform.mul_vector(g)?;
        if !image.is_nonnegative() {
            return Err(Error::internal(format!(
                "generator {g} leaves the nonnegative orthant as {image}"
            )));
        }
        base_gens.push(image);
    }
    // m' e_i lies in the image exactly when (m'/m) b_i is an integer point
    // of the source semigroup
    verify_axis_minimality(oracle, dim, det, |i, k| {
        let scaled = rays[i].checked_scale(k)?;
        if scaled.entries().iter().all(|&x| x % det == 0) {
            Ok(Some(IntVector::new(scaled.entries().iter().map(|&x| x / det).collect())))
        } else {
            Ok(None)
        }
    })?;

    let transform_adjugate = transform.adjugate()?;
    Ok(OrthogonalPresentation {
        base: Presentation::new(dim, base_gens)?,
        order: det,
        transform,
        transform_adjugate,
        transform_determinant: det,
        ray_matrix,
        source: p.clone(),
    })
}

/// When every ray is `m e_i` for one common `m` covering all axes,
/// returns that `m`.
fn common_axis_order(dim: usize, rays: &[IntVector]) -> Option<i64> {
    let mut order = None;
    let mut covered = vec![false; dim];
    for ray in rays {
        let support = ray.support();
        if support.len() != 1 {
            return None;
        }
        let axis = support[0];
        let value = ray.entry(axis);
        match order {
            None => order = Some(value),
            Some(m) if m == value => {}
            Some(_) => return None,
        }
        covered[axis] = true;
    }
    if covered.iter().all(|&c| c) {
        order
    } else {
        None
    }
}

fn verify_axis_minimality(
    oracle: &MembershipOracle,
    dim: usize,
    order: i64,
    preimage: impl Fn(usize, i64) -> Result<Option<IntVector>>,
) -> Result<()> {
    for i in 0..dim {
        for k in 1..order {
            if let Some(candidate) = preimage(i, k)? {
                if oracle.contains(&candidate)? {
                    return Err(Error::internal(format!(
                        "{k} e_{i} lies in the semigroup below the order {order}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(entries: &[i64]) -> IntVector {
        IntVector::new(entries.to_vec())
    }

    fn limits() -> Limits {
        Limits::default()
    }

    /// Generators of the rank-3 order-2 fixture.
    fn order2_rank3() -> Presentation {
        Presentation::new(
            3,
            vec![v(&[2, 0, 0]), v(&[0, 2, 0]), v(&[0, 0, 2]), v(&[1, 1, 0]), v(&[1, 0, 1])],
        )
        .unwrap()
    }

    /// Rank-2 fixture whose source and orthogonal gradings differ.
    fn mixed_grading_plane() -> Presentation {
        Presentation::new(2, vec![v(&[1, 0]), v(&[3, 3]), v(&[3, 1]), v(&[3, 2])]).unwrap()
    }

    #[test]
    fn contains_accepts_generator_sums() {
        let p = order2_rank3();
        let oracle = MembershipOracle::new(&p, &limits());
        assert!(oracle.contains(&v(&[2, 1, 1])).unwrap());
        assert!(oracle.contains(&v(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn contains_rejects_points_outside() {
        let p = order2_rank3();
        let oracle = MembershipOracle::new(&p, &limits());
        // brute force over all sums of at most two generators of degree 2
        assert!(!oracle.contains(&v(&[0, 1, 1])).unwrap());
        assert!(!oracle.contains(&v(&[-1, 0, 0])).unwrap());
    }

    #[test]
    fn contains_reports_the_box_limit() {
        let p = order2_rank3();
        let mut small = limits();
        small.max_box_volume = 10;
        let oracle = MembershipOracle::new(&p, &small);
        match oracle.contains(&v(&[5, 5, 5])) {
            Err(Error::BoxVolumeExceeded { limit, .. }) => assert_eq!(limit, 10),
            other => panic!("expected box limit error, got {other:?}"),
        }
    }

    /// Independent oracle: iterative table over the whole box in mixed-radix
    /// order, no memoized recursion involved.
    fn exhaustive_box_check(p: &Presentation, side: i64) {
        let oracle = MembershipOracle::new(p, &limits());
        let dim = p.dim();
        let width = (side + 1) as usize;
        let volume = width.pow(dim as u32);
        let index_of = |point: &[i64]| -> usize {
            point.iter().fold(0usize, |acc, &c| acc * width + c as usize)
        };
        let mut table = vec![false; volume];
        table[0] = true;
        let mut point = vec![0i64; dim];
        for idx in 1..volume {
            // increment the mixed-radix counter
            let mut carry = dim;
            while carry > 0 {
                carry -= 1;
                point[carry] += 1;
                if point[carry] <= side {
                    break;
                }
                point[carry] = 0;
            }
            let reachable = p.generators().iter().any(|g| {
                (0..dim).all(|i| g.entry(i) <= point[i])
                    && table[index_of(
                        &(0..dim).map(|i| point[i] - g.entry(i)).collect::<Vec<_>>(),
                    )]
            });
            table[idx] = reachable;
            assert_eq!(
                oracle.contains(&IntVector::new(point.clone())).unwrap(),
                reachable,
                "membership of {point:?} in {p:?}"
            );
        }
    }

    #[test]
    fn contains_matches_exhaustive_box_enumeration() {
        exhaustive_box_check(&mixed_grading_plane(), 9);
        exhaustive_box_check(&order2_rank3(), 9);
        let curve = Presentation::new(2, vec![v(&[0, 7]), v(&[4, 3]), v(&[5, 2]), v(&[7, 0])])
            .unwrap();
        exhaustive_box_check(&curve, 15);
    }

    #[test]
    fn degree_is_the_coordinate_sum() {
        assert_eq!(v(&[2, 1, 1]).degree(), 4);
        assert_eq!(v(&[0, 7, 0]).degree(), 7);
        assert_eq!(v(&[45, 35]).degree(), 80);
    }

    #[test]
    fn extreme_rays_of_axis_dominated_cone() {
        let p = order2_rank3();
        let rays = extreme_rays(&p, &limits()).unwrap();
        assert_eq!(rays, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn extreme_rays_of_slanted_plane_cone() {
        let p = Presentation::new(2, vec![v(&[11, 13]), v(&[5, 6]), v(&[4, 5]), v(&[3, 4])])
            .unwrap();
        let rays = extreme_rays(&p, &limits()).unwrap();
        assert_eq!(rays, vec![v(&[11, 13]), v(&[3, 4])]);
    }

    #[test]
    fn extreme_rays_of_free_plane() {
        let p = Presentation::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(extreme_rays(&p, &limits()).unwrap(), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn extreme_rays_requires_full_rank() {
        let p = Presentation::new(2, vec![v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert!(matches!(extreme_rays(&p, &limits()), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn four_ray_rank_three_cone_is_not_simplicial() {
        let p = Presentation::new(
            4,
            vec![v(&[1, 1, 0, 0]), v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1]), v(&[0, 0, 1, 1])],
        )
        .unwrap();
        assert!(!is_simplicial(&p, &limits()).unwrap());
    }

    #[test]
    fn simplicial_examples() {
        assert!(is_simplicial(&order2_rank3(), &limits()).unwrap());
        let free = Presentation::new(
            3,
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])],
        )
        .unwrap();
        assert!(is_simplicial(&free, &limits()).unwrap());
    }

    #[test]
    fn minimal_ray_element_scans_upward() {
        let p = Presentation::new(2, vec![v(&[2, 0]), v(&[0, 3])]).unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        assert_eq!(minimal_ray_element(&p, &oracle, &v(&[1, 0])).unwrap(), v(&[2, 0]));

        let p = order2_rank3();
        let oracle = MembershipOracle::new(&p, &limits());
        assert_eq!(
            minimal_ray_element(&p, &oracle, &v(&[1, 0, 0])).unwrap(),
            v(&[2, 0, 0])
        );

        // (1,0) itself is not in the semigroup, brute force over sums
        let p = Presentation::new(2, vec![v(&[2, 0]), v(&[3, 0]), v(&[0, 1])]).unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        assert_eq!(minimal_ray_element(&p, &oracle, &v(&[1, 0])).unwrap(), v(&[2, 0]));
    }

    #[test]
    fn minimal_ray_element_reports_rayless_directions() {
        let p = Presentation::new(2, vec![v(&[2, 0]), v(&[0, 3])]).unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        assert!(matches!(
            minimal_ray_element(&p, &oracle, &v(&[1, 1])),
            Err(Error::NoRayMultiple { .. })
        ));
    }

    #[test]
    fn orthogonalize_rank3_with_large_order() {
        let p = Presentation::new(
            3,
            vec![v(&[5, 3, 1]), v(&[1, 5, 2]), v(&[8, 3, 5]), v(&[2, 1, 1]), v(&[2, 2, 1])],
        )
        .unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        let op = orthogonalize(&p, &oracle, &limits()).unwrap();
        assert_eq!(op.order(), 91);
        let expected = [
            v(&[91, 0, 0]),
            v(&[0, 91, 0]),
            v(&[0, 0, 91]),
            v(&[12, 2, 15]),
            v(&[23, 19, 6]),
        ];
        assert_eq!(op.base().generators(), &expected);
    }

    #[test]
    fn orthogonalize_rank2_shear() {
        let p = mixed_grading_plane();
        let oracle = MembershipOracle::new(&p, &limits());
        let op = orthogonalize(&p, &oracle, &limits()).unwrap();
        assert_eq!(op.order(), 3);
        assert_eq!(
            op.transform(),
            &IntMatrix::new(2, 2, vec![3, -3, 0, 1]).unwrap()
        );
        let expected = [v(&[3, 0]), v(&[0, 3]), v(&[6, 1]), v(&[3, 2])];
        assert_eq!(op.base().generators(), &expected);
    }

    #[test]
    fn orthogonalize_keeps_an_orthogonal_presentation_fixed() {
        let p = order2_rank3();
        let oracle = MembershipOracle::new(&p, &limits());
        let op = orthogonalize(&p, &oracle, &limits()).unwrap();
        assert_eq!(op.order(), 2);
        assert_eq!(op.transform(), &IntMatrix::identity(3));
        assert_eq!(op.base(), &p);
    }

    #[test]
    fn orthogonalize_rejects_non_simplicial_input() {
        let p = Presentation::new(
            4,
            vec![v(&[1, 1, 0, 0]), v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1]), v(&[0, 0, 1, 1])],
        )
        .unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        assert!(matches!(
            orthogonalize(&p, &oracle, &limits()),
            Err(Error::NotSimplicial { extreme_rays: 4, rank: 3 })
        ));
    }

    #[test]
    fn orthogonalize_maps_rays_to_scaled_axes() {
        for p in [order2_rank3(), mixed_grading_plane()] {
            let oracle = MembershipOracle::new(&p, &limits());
            let op = orthogonalize(&p, &oracle, &limits()).unwrap();
            for (i, ray) in op.source_extreme_set().iter().enumerate() {
                let image = op.to_orthogonal(ray).unwrap();
                let expected = if op.transform() == &IntMatrix::identity(p.dim()) {
                    ray.clone()
                } else {
                    IntVector::unit(p.dim(), i).checked_scale(op.order()).unwrap()
                };
                assert_eq!(image, expected);
            }
        }
    }

    #[test]
    fn orthogonalize_preserves_membership_of_sampled_sums() {
        let p = mixed_grading_plane();
        let src_oracle = MembershipOracle::new(&p, &limits());
        let op = orthogonalize(&p, &src_oracle, &limits()).unwrap();
        let img_oracle = op.oracle(&limits());
        for x in 0..=8i64 {
            for y in 0..=8i64 {
                let s = v(&[x, y]);
                let mapped = op.to_orthogonal(&s).unwrap();
                if mapped.is_nonnegative() {
                    assert_eq!(
                        src_oracle.contains(&s).unwrap(),
                        img_oracle.contains(&mapped).unwrap(),
                        "membership preserved at {s}"
                    );
                } else {
                    assert!(!src_oracle.contains(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn round_trip_between_coordinate_systems() {
        let p = mixed_grading_plane();
        let oracle = MembershipOracle::new(&p, &limits());
        let op = orthogonalize(&p, &oracle, &limits()).unwrap();
        for g in p.generators() {
            let there = op.to_orthogonal(g).unwrap();
            assert_eq!(op.to_source(&there).unwrap(), *g);
        }
    }

    #[test]
    fn enumerate_collects_low_degree_elements() {
        let p = order2_rank3();
        let oracle = MembershipOracle::new(&p, &limits());
        assert_eq!(
            enumerate_up_to_degree(&oracle, 0, &limits()).unwrap(),
            vec![v(&[0, 0, 0])]
        );
        let mut expected = vec![
            v(&[0, 0, 0]),
            v(&[2, 0, 0]),
            v(&[0, 2, 0]),
            v(&[0, 0, 2]),
            v(&[1, 1, 0]),
            v(&[1, 0, 1]),
        ];
        expected.sort();
        assert_eq!(enumerate_up_to_degree(&oracle, 2, &limits()).unwrap(), expected);
    }

    #[test]
    fn enumerate_numerical_semigroup() {
        let p = Presentation::numerical(&[6, 7]).unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        let got = enumerate_up_to_degree(&oracle, 14, &limits()).unwrap();
        let expected: Vec<IntVector> = [0, 6, 7, 12, 13, 14].iter().map(|&x| v(&[x])).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn enumerate_respects_the_cap() {
        let p = Presentation::numerical(&[1]).unwrap();
        let oracle = MembershipOracle::new(&p, &limits());
        let mut small = limits();
        small.max_enumeration = 5;
        assert!(matches!(
            enumerate_up_to_degree(&oracle, 100, &small),
            Err(Error::EnumerationCapExceeded { limit: 5 })
        ));
    }

    #[test]
    fn presentation_validation() {
        assert!(matches!(Presentation::new(2, vec![]), Err(Error::EmptyGenerators)));
        assert!(matches!(
            Presentation::new(2, vec![v(&[0, 0])]),
            Err(Error::InvalidGenerator { .. })
        ));
        assert!(matches!(
            Presentation::new(2, vec![v(&[1, -1])]),
            Err(Error::InvalidGenerator { .. })
        ));
        let dedup = Presentation::new(2, vec![v(&[1, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(dedup.generators().len(), 2);
    }

    /// Slope comparison decides rank-2 extremality independently.
    fn extreme_rays_2d_by_slope(gens: &[IntVector]) -> Vec<IntVector> {
        let cross = |a: &IntVector, b: &IntVector| a.entry(0) * b.entry(1) - a.entry(1) * b.entry(0);
        let mut dirs: Vec<IntVector> = Vec::new();
        for g in gens {
            let p = g.primitive();
            if !dirs.contains(&p) {
                dirs.push(p);
            }
        }
        dirs.iter()
            .filter(|d| {
                // extreme iff no other pair of directions straddles it
                !dirs
                    .iter()
                    .any(|a| dirs.iter().any(|b| cross(a, d) > 0 && cross(d, b) > 0))
            })
            .cloned()
            .collect()
    }

    proptest! {
        #[test]
        fn rank2_extremality_matches_slope_test(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..=6, 2), 2..6),
        ) {
            let gens: Vec<IntVector> = gens
                .into_iter()
                .map(IntVector::new)
                .filter(|g| !g.is_zero())
                .collect();
            prop_assume!(gens.len() >= 2);
            let p = match Presentation::new(2, gens) {
                Ok(p) => p,
                Err(_) => return Ok(()),
            };
            let by_slope: std::collections::BTreeSet<IntVector> =
                extreme_rays_2d_by_slope(p.generators()).into_iter().collect();
            let by_cone: std::collections::BTreeSet<IntVector> =
                extreme_directions(&p, &limits()).unwrap().into_iter().collect();
            prop_assert_eq!(by_slope, by_cone);
        }
    }
}

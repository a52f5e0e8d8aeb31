//! Exact integer lattice arithmetic.
//!
//! Vectors and matrices over `i64` with checked arithmetic (overflow is a
//! reported error, never a wrap), adjugates, Smith normal form with
//! transforms, lattice bases and indices, and finite quotient groups of
//! nested full-rank lattices with canonical coset labels.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

fn cadd(a: i64, b: i64, context: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::overflow(context))
}

fn csub(a: i64, b: i64, context: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::overflow(context))
}

fn cmul(a: i64, b: i64, context: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::overflow(context))
}

/// A lattice point with a fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![0; dim])
    }

    /// Standard basis vector `e_i` (zero-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut entries = vec![0; dim];
        entries[i] = 1;
        IntVector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Indices of the nonzero entries, computed on demand.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Coordinate sum. Panics on overflow; entries produced by this crate
    /// are themselves overflow-checked, so a panic here indicates a bug.
    pub fn degree(&self) -> i64 {
        self.0
            .iter()
            .copied()
            .try_fold(0i64, i64::checked_add)
            .expect("degree overflow")
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        self.zip_with(other, |a, b| cadd(a, b, "vector addition"))
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<IntVector> {
        self.zip_with(other, |a, b| csub(a, b, "vector subtraction"))
    }

    pub fn checked_scale(&self, k: i64) -> Result<IntVector> {
        Ok(IntVector(
            self.0
                .iter()
                .map(|&a| cmul(a, k, "vector scaling"))
                .collect::<Result<_>>()?,
        ))
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &IntVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// The primitive vector on the same ray: entries divided by their gcd.
    pub fn primitive(&self) -> IntVector {
        let g = self.0.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g <= 1 {
            return self.clone();
        }
        IntVector(self.0.iter().map(|&x| x / g).collect())
    }

    fn zip_with(
        &self,
        other: &IntVector,
        f: impl Fn(i64, i64) -> Result<i64>,
    ) -> Result<IntVector> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                actual: other.0.len(),
            });
        }
        Ok(IntVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f(a, b))
                .collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let rows = columns.first().map(IntVector::dim).unwrap_or(0);
        for c in columns {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch { expected: rows, actual: c.dim() });
            }
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.entry(i));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = cadd(
                        acc,
                        cmul(self.get(i, k), other.get(k, j), "matrix product")?,
                        "matrix product",
                    )?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &IntVector) -> Result<IntVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: v.dim() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = 0i64;
            for k in 0..self.cols {
                acc = cadd(
                    acc,
                    cmul(self.get(i, k), v.entry(k), "matrix-vector product")?,
                    "matrix-vector product",
                )?;
            }
            out.push(acc);
        }
        Ok(IntVector(out))
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.get(i, a);
            let y = self.get(i, b);
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. Every
    /// intermediate value is a minor determinant of the input, so `i128`
    /// working precision suffices whenever the result fits in `i64`.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |a: &[i128], i: usize, j: usize| a[i * n + j];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                let Some(p) = (k + 1..n).find(|&i| at(&a, i, k) != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, k, k)
                        .checked_mul(at(&a, i, j))
                        .and_then(|x| {
                            at(&a, i, k).checked_mul(at(&a, k, j)).and_then(|y| x.checked_sub(y))
                        })
                        .ok_or(Error::overflow("determinant"))?;
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = at(&a, k, k);
        }
        let det = sign * at(&a, n - 1, n - 1);
        i64::try_from(det).map_err(|_| Error::overflow("determinant"))
    }

    /// The adjugate matrix: `adjugate(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(IntMatrix::zeros(0, 0));
        }
        if n == 1 {
            return IntMatrix::new(1, 1, vec![1]);
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let cof = minor.determinant()?;
                let signed = if (i + j) % 2 == 0 { cof } else { -cof };
                // cofactor transpose
                out.set(j, i, signed);
            }
        }
        Ok(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                data.push(self.get(i, j));
            }
        }
        IntMatrix { rows: n - 1, cols: n - 1, data }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Smith normal form `left * M * right = diag(divisors)` with unimodular
/// transforms and positive divisors `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub divisors: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let row_op = |a: &mut IntMatrix, left: &mut IntMatrix, dst: usize, src: usize, q: i64| -> Result<()> {
        for j in 0..a.cols() {
            let v = csub(a.get(dst, j), cmul(q, a.get(src, j), "snf")?, "snf")?;
            a.set(dst, j, v);
        }
        for j in 0..left.cols() {
            let v = csub(left.get(dst, j), cmul(q, left.get(src, j), "snf")?, "snf")?;
            left.set(dst, j, v);
        }
        Ok(())
    };
    let col_op = |a: &mut IntMatrix, right: &mut IntMatrix, dst: usize, src: usize, q: i64| -> Result<()> {
        for i in 0..a.rows() {
            let v = csub(a.get(i, dst), cmul(q, a.get(i, src), "snf")?, "snf")?;
            a.set(i, dst, v);
        }
        for i in 0..right.rows() {
            let v = csub(right.get(i, dst), cmul(q, right.get(i, src), "snf")?, "snf")?;
            right.set(i, dst, v);
        }
        Ok(())
    };
    let swap_rows = |a: &mut IntMatrix, left: &mut IntMatrix, x: usize, y: usize| {
        if x == y {
            return;
        }
        for j in 0..a.cols() {
            let (p, q) = (a.get(x, j), a.get(y, j));
            a.set(x, j, q);
            a.set(y, j, p);
        }
        for j in 0..left.cols() {
            let (p, q) = (left.get(x, j), left.get(y, j));
            left.set(x, j, q);
            left.set(y, j, p);
        }
    };

    let mut k = 0;
    while k < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = a.get(i, j);
                if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < a.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, &mut left, k, pi);
        a.swap_columns(k, pj);
        right.swap_columns(k, pj);

        'reduce: loop {
            for i in k + 1..rows {
                if a.get(i, k) != 0 {
                    let q = a.get(i, k).div_euclid(a.get(k, k));
                    row_op(&mut a, &mut left, i, k, q)?;
                    if a.get(i, k) != 0 {
                        swap_rows(&mut a, &mut left, i, k);
                        continue 'reduce;
                    }
                }
            }
            for j in k + 1..cols {
                if a.get(k, j) != 0 {
                    let q = a.get(k, j).div_euclid(a.get(k, k));
                    col_op(&mut a, &mut right, j, k, q)?;
                    if a.get(k, j) != 0 {
                        a.swap_columns(j, k);
                        right.swap_columns(j, k);
                        continue 'reduce;
                    }
                }
            }
            // divisibility: the pivot must divide the rest of the block
            let p = a.get(k, k);
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a.get(i, j) % p != 0 {
                        row_op(&mut a, &mut left, k, i, -1)?;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a.get(k, k) < 0 {
            for j in 0..cols {
                a.set(k, j, -a.get(k, j));
            }
            for j in 0..rows {
                left.set(k, j, -left.get(k, j));
            }
        }
        k += 1;
    }

    let divisors: Vec<i64> = (0..k).map(|i| a.get(i, i)).collect();
    debug_assert!(divisors.iter().all(|&d| d > 0));
    Ok(SmithNormalForm { divisors, left, right, rank: k })
}

/// Inverse of a unimodular matrix, computed exactly through the adjugate.
fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let det = m.determinant()?;
    debug_assert!(det == 1 || det == -1);
    let adj = m.adjugate()?;
    if det == 1 {
        Ok(adj)
    } else {
        let mut out = adj;
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                out.set(i, j, -out.get(i, j));
            }
        }
        Ok(out)
    }
}

/// Rank of the lattice spanned by the given vectors.
pub fn lattice_rank(dim: usize, vectors: &[IntVector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: v.dim() });
        }
    }
    Ok(smith_normal_form(&IntMatrix::from_columns(vectors)?)?.rank)
}

/// A column basis (dim x rank) of the lattice spanned by the given vectors.
pub fn lattice_basis(dim: usize, vectors: &[IntVector]) -> Result<IntMatrix> {
    let m = IntMatrix::from_columns(vectors)?;
    if m.rows() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: m.rows() });
    }
    let snf = smith_normal_form(&m)?;
    let uinv = unimodular_inverse(&snf.left)?;
    let mut basis = IntMatrix::zeros(dim, snf.rank);
    for j in 0..snf.rank {
        for i in 0..dim {
            basis.set(i, j, cmul(uinv.get(i, j), snf.divisors[j], "lattice basis")?);
        }
    }
    Ok(basis)
}

/// Solves `A x = y` over the integers for square full-rank `A` with a
/// precomputed Smith normal form. `None` when `y` is outside the lattice.
fn solve_full_rank(snf: &SmithNormalForm, y: &IntVector) -> Result<Option<IntVector>> {
    let n = snf.left.rows();
    if snf.rank != n {
        return Err(Error::RankDeficient { expected: n, actual: snf.rank });
    }
    let z = snf.left.mul_vector(y)?;
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z.entry(i);
        if zi % snf.divisors[i] != 0 {
            return Ok(None);
        }
        w.push(zi / snf.divisors[i]);
    }
    Ok(Some(snf.right.mul_vector(&IntVector::new(w))?))
}

/// Index of one full-rank lattice inside another, `|super / sub|`.
pub fn lattice_index(dim: usize, super_gens: &[IntVector], sub_gens: &[IntVector]) -> Result<i64> {
    Ok(QuotientGroup::new(dim, super_gens, sub_gens)?.index())
}

/// Canonical coset label: residues of the Smith-basis coordinates modulo
/// the elementary divisors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel(Vec<i64>);

impl CosetLabel {
    pub fn residues(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// The finite quotient of a full-rank ambient lattice by a full-rank
/// sublattice, with a canonical labeling of cosets.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    dim: usize,
    ambient_snf: SmithNormalForm,
    rel_left: IntMatrix,
    divisors: Vec<i64>,
    index: i64,
}

impl QuotientGroup {
    /// `super_gens` generate the ambient lattice, `sub_gens` the sublattice.
    /// Both must have full rank `dim` and the sublattice must be contained
    /// in the ambient one.
    pub fn new(dim: usize, super_gens: &[IntVector], sub_gens: &[IntVector]) -> Result<Self> {
        let ambient = lattice_basis(dim, super_gens)?;
        if ambient.cols() != dim {
            return Err(Error::RankDeficient { expected: dim, actual: ambient.cols() });
        }
        let sub_basis = lattice_basis(dim, sub_gens)?;
        if sub_basis.cols() != dim {
            return Err(Error::RankDeficient { expected: dim, actual: sub_basis.cols() });
        }
        let ambient_snf = smith_normal_form(&ambient)?;
        // express the sublattice in ambient coordinates; integrality is
        // exactly the containment condition
        let mut rel = IntMatrix::zeros(dim, dim);
        for j in 0..dim {
            let col = sub_basis.column(j);
            match solve_full_rank(&ambient_snf, &col)? {
                Some(x) => {
                    for i in 0..dim {
                        rel.set(i, j, x.entry(i));
                    }
                }
                None => return Err(Error::SublatticeNotContained { vector: col }),
            }
        }
        let rel_snf = smith_normal_form(&rel)?;
        if rel_snf.rank != dim {
            return Err(Error::RankDeficient { expected: dim, actual: rel_snf.rank });
        }
        let mut index = 1i64;
        for &d in &rel_snf.divisors {
            index = cmul(index, d, "lattice index")?;
        }
        Ok(QuotientGroup {
            dim,
            ambient_snf,
            rel_left: rel_snf.left,
            divisors: rel_snf.divisors,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn divisors(&self) -> &[i64] {
        &self.divisors
    }

    /// Label of the coset `v + sub`. Two vectors get equal labels exactly
    /// when their difference lies in the sublattice.
    pub fn coset_label(&self, v: &IntVector) -> Result<CosetLabel> {
        let coords = solve_full_rank(&self.ambient_snf, v)?
            .ok_or_else(|| Error::NotInLattice { vector: v.clone() })?;
        let u = self.rel_left.mul_vector(&coords)?;
        Ok(CosetLabel(
            (0..self.dim).map(|i| u.entry(i).rem_euclid(self.divisors[i])).collect(),
        ))
    }

    /// All labels, in sorted order. The count equals the index.
    pub fn all_labels(&self) -> Vec<CosetLabel> {
        let mut out = vec![Vec::new()];
        for &d in &self.divisors {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in out {
                for r in 0..d {
                    let mut p = prefix.clone();
                    p.push(r);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(CosetLabel).collect()
    }
}

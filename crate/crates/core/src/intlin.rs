//! Exact integer lattice algebra: Hermite and Smith normal forms, lattices
//! in `Z^D`, saturations and cokernels.
//!
//! Everything here works over arbitrary-precision integers. Normal forms are
//! computed with fixed pivot rules so that results are reproducible for a
//! fixed input.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntLinError {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice is not contained in the given superlattice")]
    NotContained,
}

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, IntLinError> {
        if data.len() != rows * cols {
            return Err(IntLinError::Shape { rows, cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self, IntLinError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(IntLinError::DimensionMismatch { expected: cols, got: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self, IntLinError> {
        Ok(Self::from_rows(rows, columns)?.transpose())
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, IntLinError> {
        if self.cols != other.rows {
            return Err(IntLinError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum())
            .collect()
    }

    /// Keeps the rows listed in `keep`, in that order.
    pub fn select_rows(&self, keep: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = keep.into_iter().map(|i| self.row(i).to_vec()).collect();
        IntMatrix::from_rows(self.cols, &rows).expect("rows come from the same matrix")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form.
///
/// Nonzero rows come first in echelon form, pivots are positive and entries
/// above a pivot lie in `[0, pivot)`. The output keeps the input shape, with
/// zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        loop {
            let best = (pivot_row..h.rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            let mut cleared = true;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                h.add_row_multiple(i, pivot_row, &-q);
                if !h[(i, col)].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
        }
        let p = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&p);
            h.add_row_multiple(i, pivot_row, &-q);
        }
        pivot_row += 1;
    }
    h
}

/// `u * a * v == d` with `u`, `v` unimodular. `v_inv` is the inverse of `v`,
/// tracked alongside so callers can change coordinates in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the remaining
/// submatrix, ties broken by row-major position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let mut t = 0;
    'outer: while t < rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                v_inv.add_row_multiple(t, j, &-q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariants = (0..rows.min(cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithDecomposition { u, v, v_inv, d, invariants }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Isomorphism type of a finitely generated abelian group `Z^free_rank x G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientStructure {
    pub free_rank: usize,
    /// Invariant factors of the torsion part, each > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn free(rank: usize) -> Self {
        QuotientStructure { free_rank: rank, torsion: Vec::new() }
    }

    /// Order of the torsion subgroup.
    pub fn multiplicity(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for QuotientStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// A sublattice of `Z^ambient_dim`, stored as its Hermite basis.
///
/// Two lattices are equal exactly when their canonical bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice generated by the rows of `generators`.
    pub fn from_generators(ambient_dim: usize, generators: &IntMatrix) -> Result<Self, IntLinError> {
        if generators.cols != ambient_dim {
            return Err(IntLinError::DimensionMismatch { expected: ambient_dim, got: generators.cols });
        }
        let h = hermite_normal_form(generators);
        let nonzero = (0..h.rows).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero()));
        let basis = h.select_rows(nonzero);
        Ok(Lattice { ambient_dim, basis })
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<BigInt>]) -> Result<Self, IntLinError> {
        Self::from_generators(ambient_dim, &IntMatrix::from_rows(ambient_dim, vectors)?)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice { ambient_dim, basis: IntMatrix::identity(ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows == 0
    }

    /// Canonical basis, one row per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vectors()
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, IntLinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(IntLinError::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Lattice::from_vectors(self.ambient_dim, &rows)
    }

    /// Adds extra generating vectors.
    pub fn extend(&self, vectors: &[Vec<BigInt>]) -> Result<Lattice, IntLinError> {
        let mut rows = self.basis_vectors();
        rows.extend(vectors.iter().cloned());
        Lattice::from_vectors(self.ambient_dim, &rows)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        matches!(express_in_basis(v, self), Ok(Membership::Member { integral: true, .. }))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Integer coordinates of a member of the lattice.
    pub fn integer_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        match express_in_basis(v, self).ok()? {
            Membership::Member { coordinates, integral: true } => {
                Some(coordinates.into_iter().map(|c| c.to_integer()).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

/// Isomorphism type of `Z^D / (relations + span(columns))`.
///
/// `columns` holds one generator per column, living in the ambient space of
/// `relations`.
pub fn cokernel_structure(columns: &IntMatrix, relations: &Lattice) -> Result<QuotientStructure, IntLinError> {
    let dim = relations.ambient_dim();
    if columns.rows != dim {
        return Err(IntLinError::DimensionMismatch { expected: dim, got: columns.rows });
    }
    let mut rows = columns.transpose().row_vectors();
    rows.extend(relations.basis_vectors());
    let m = IntMatrix::from_rows(dim, &rows)?;
    let snf = smith_normal_form(&m);
    Ok(QuotientStructure {
        free_rank: dim - snf.rank(),
        torsion: snf.invariants.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

/// Smallest lattice containing `l` with torsion-free quotient, i.e.
/// `(l ⊗ Q) ∩ Z^D`.
pub fn saturate(l: &Lattice) -> Lattice {
    if l.is_zero() {
        return l.clone();
    }
    let snf = smith_normal_form(&l.basis);
    // rows of B span the same Q-space as the first k rows of v_inv, which are
    // part of a unimodular basis of Z^D
    let sat = snf.v_inv.select_rows(0..snf.rank());
    Lattice::from_generators(l.ambient_dim, &sat).expect("dimensions agree")
}

/// Result of [`express_in_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `v` lies in the rational span; coordinates are w.r.t. the canonical basis.
    Member { coordinates: Vec<BigRational>, integral: bool },
    NotInSpan,
}

/// Rational coordinates of `v` in the canonical basis of `l`, if `v` lies in
/// `l ⊗ Q`.
pub fn express_in_basis(v: &[BigInt], l: &Lattice) -> Result<Membership, IntLinError> {
    if v.len() != l.ambient_dim {
        return Err(IntLinError::DimensionMismatch { expected: l.ambient_dim, got: v.len() });
    }
    let b = &l.basis;
    let mut coords: Vec<BigRational> = Vec::with_capacity(b.rows);
    let mut residual: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    // echelon form: each row has a pivot strictly right of the previous one
    for i in 0..b.rows {
        let pivot_col = (0..b.cols).find(|&j| !b[(i, j)].is_zero()).expect("basis rows are nonzero");
        let c = &residual[pivot_col] / BigRational::from_integer(b[(i, pivot_col)].clone());
        for j in 0..b.cols {
            if !b[(i, j)].is_zero() {
                let delta = &c * BigRational::from_integer(b[(i, j)].clone());
                residual[j] -= delta;
            }
        }
        coords.push(c);
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return Ok(Membership::NotInSpan);
    }
    let integral = coords.iter().all(|c| c.is_integer());
    Ok(Membership::Member { coordinates: coords, integral })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// Index `[sup : sub]`; infinite when the ranks differ.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<LatticeIndex, IntLinError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(IntLinError::DimensionMismatch { expected: sup.ambient_dim, got: sub.ambient_dim });
    }
    let mut coords = Vec::with_capacity(sub.rank());
    for i in 0..sub.rank() {
        coords.push(sup.integer_coordinates(sub.basis.row(i)).ok_or(IntLinError::NotContained)?);
    }
    if sub.rank() != sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let m = IntMatrix::from_rows(sup.rank(), &coords)?;
    let snf = smith_normal_form(&m);
    Ok(LatticeIndex::Finite(snf.invariants.iter().product()))
}

//! Dense exact matrices and canonical (reduced row-echelon) subspaces.
//!
//! Everything here works over the complex rationals, so rank, kernels and
//! subspace comparisons are decided exactly. Subspaces keep their basis in
//! RREF with unit pivots, which makes equality of subspaces a plain
//! comparison of representations.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::ComplexRational;

pub type Vector = Vec<ComplexRational>;

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexRational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![ComplexRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ComplexRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers, used mostly in tests.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ComplexRational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ComplexRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ComplexRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ComplexRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ComplexRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[ComplexRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ComplexRational::is_zero)
    }

    /// Copies the `rows × cols` block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &DenseMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_dims(other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_dims(other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &ComplexRational) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    fn same_dims(&self, other: &DenseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Exact product. Zero entries of `self` are skipped, which matters for the
    /// very sparse embeddings produced by this crate.
    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * other.cols + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        row_space(self).dim()
    }

    /// Gauss–Jordan inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.entries.swap(pivot * n + c, col * n + c);
                    inv.entries.swap(pivot * n + c, col * n + c);
                }
            }
            let f = a.get(col, col).recip().expect("pivot is nonzero");
            for c in 0..n {
                let (x, y) = (a.get(col, c) * &f, inv.get(col, c) * &f);
                a.set(col, c, x);
                inv.set(col, c, y);
            }
            for r in (0..n).filter(|&r| r != col) {
                let g = a.get(r, col).clone();
                if g.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c) - &(&g * a.get(col, c));
                    let y = inv.get(r, c) - &(&g * inv.get(col, c));
                    a.set(r, c, x);
                    inv.set(r, c, y);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `a · b`, failing on incompatible dimensions.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.mul(b)
}

fn first_nonzero(v: &[ComplexRational]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// A linear subspace of `C^ambient_dim` stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut s = Subspace::zero(ambient_dim);
        for i in 0..ambient_dim {
            let mut e = vec![ComplexRational::zero(); ambient_dim];
            e[i] = ComplexRational::one();
            s.basis.push(e);
            s.pivots.push(i);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis rows, sorted by pivot column.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[ComplexRational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` is in the span.
    fn residual(&self, v: &[ComplexRational]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        r
    }

    /// Adds `v` to the subspace, keeping RREF. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[ComplexRational]) -> Result<bool> {
        self.check_len(v)?;
        let mut r = self.residual(v);
        let Some(p) = first_nonzero(&r) else {
            return Ok(false);
        };
        let inv = r[p].recip().expect("pivot is nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.basis.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, b) in row.iter_mut().zip(&r) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn contains(&self, v: &[ComplexRational]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.residual(v).iter().all(ComplexRational::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ambient_mismatch(self, other));
        }
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors `u` with `Σ_i u_i w_i = 0` for every basis row `w` (the kernel of
    /// the basis viewed as a matrix).
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient_dim;
        let mut out = Subspace::zero(n);
        let is_pivot: Vec<bool> = (0..n).map(|c| self.pivots.contains(&c)).collect();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![ComplexRational::zero(); n];
            v[free] = ComplexRational::one();
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                v[p] = -&row[free];
            }
            out.insert(&v).expect("length matches");
        }
        out
    }
}

fn ambient_mismatch(a: &Subspace, b: &Subspace) -> Error {
    Error::DimensionMismatch(format!(
        "ambient dimensions {} and {} differ",
        a.ambient_dim, b.ambient_dim
    ))
}

/// Canonical span of `vectors` inside `C^ambient_dim`.
pub fn span<V: AsRef<[ComplexRational]>>(vectors: &[V], ambient_dim: usize) -> Result<Subspace> {
    let mut s = Subspace::zero(ambient_dim);
    for v in vectors {
        s.insert(v.as_ref())?;
    }
    Ok(s)
}

pub fn row_space(m: &DenseMatrix) -> Subspace {
    let mut s = Subspace::zero(m.cols());
    for r in 0..m.rows() {
        s.insert(m.row(r)).expect("row length equals column count");
    }
    s
}

/// `{v : m·v = 0}` in canonical form.
pub fn nullspace(m: &DenseMatrix) -> Subspace {
    row_space(m).annihilator()
}

pub fn subspace_contains(s: &Subspace, v: &[ComplexRational]) -> Result<bool> {
    s.contains(v)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(ambient_mismatch(a, b));
    }
    Ok(a == b)
}

pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient_dim != b.ambient_dim {
        return Err(ambient_mismatch(a, b));
    }
    // x ∈ a ∩ b  ⇔  x is annihilated by both complements' defining equations.
    let mut eqs = a.annihilator();
    for v in b.annihilator().basis() {
        eqs.insert(v)?;
    }
    Ok(eqs.annihilator())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| ComplexRational::from_int(x)).collect()
    }

    #[test]
    fn identity_times_m_is_m() {
        let m = DenseMatrix::from_ints(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(mat_mul(&DenseMatrix::identity(2), &m).unwrap(), m);
    }

    #[test]
    fn nilpotent_square_is_zero() {
        let n = DenseMatrix::from_ints(&[&[0, 1], &[0, 0]]).unwrap();
        assert!(mat_mul(&n, &n).unwrap().is_zero());
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_of_vandermonde() {
        let v = DenseMatrix::from_ints(&[&[1, 0, 0], &[1, 1, 1], &[1, -1, 1]]).unwrap();
        let inv = v.inverse().unwrap();
        assert_eq!(v.mul(&inv).unwrap(), DenseMatrix::identity(3));
        assert!(DenseMatrix::from_ints(&[&[1, 2], &[2, 4]])
            .unwrap()
            .inverse()
            .is_none());
    }

    #[test]
    fn nullspace_trivial_cases() {
        assert_eq!(nullspace(&DenseMatrix::zeros(3, 3)).dim(), 3);
        assert!(nullspace(&DenseMatrix::identity(3)).is_zero());
    }

    #[test]
    fn span_examples() {
        assert_eq!(
            span(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], 2)
                .unwrap()
                .dim(),
            2
        );
        assert!(span::<Vector>(&[], 2).unwrap().is_zero());
        let s = span(&[v(&[2, 4])], 2).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 2])]);
        assert!(span(&[v(&[1, 2, 3])], 2).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(Subspace::full(3).contains(&v(&[5, -1, 2])).unwrap());
        assert!(!Subspace::zero(3).contains(&v(&[0, 1, 0])).unwrap());
        let s = span(&[v(&[1, 2])], 2).unwrap();
        assert!(s.contains(&v(&[3, 6])).unwrap());
        assert!(!s.contains(&v(&[3, 5])).unwrap());
        assert!(s.contains(&v(&[1])).is_err());
    }

    #[test]
    fn equality_examples() {
        let a = span(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap();
        let b = span(&[v(&[1, 1]), v(&[1, -1])], 2).unwrap();
        assert!(subspace_equal(&a, &b).unwrap());
        assert!(!subspace_equal(&Subspace::zero(2), &Subspace::full(2)).unwrap());
        assert!(subspace_equal(&Subspace::zero(2), &Subspace::zero(3)).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let a = span(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3).unwrap();
        let b = span(&[v(&[0, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        let i = subspace_intersection(&a, &b).unwrap();
        assert_eq!(i, span(&[v(&[0, 1, 0])], 3).unwrap());
    }

    #[test]
    fn complex_pivots_normalise() {
        let i = ComplexRational::from_parts((0, 1), (1, 1));
        let s = span(&[vec![i.clone(), ComplexRational::from_int(1)]], 2).unwrap();
        assert!(s.basis()[0][0].is_one());
        assert_eq!(s.basis()[0][1], i.recip().unwrap());
    }
}

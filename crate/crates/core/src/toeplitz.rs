//! Block Toeplitz matrices with entries in a Schur algebra.
//!
//! A value of order `n` is the `nd × nd` matrix whose `(p, q)` block is
//! `T_{p−q}`, so positive diagonal indices sit below the main diagonal.
//! Only nonzero diagonals are stored.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Vector};
use crate::scalar::ComplexRational;
use crate::schur::{SchurElement, SchurShape};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockToeplitz {
    n: usize,
    shape: SchurShape,
    blocks: BTreeMap<i64, SchurElement>,
}

/// Dimension of the coordinate space of block Toeplitz matrices of order `n`
/// over `shape`: `(2n − 1)(στ + 1)`.
pub fn coord_dim(n: usize, shape: SchurShape) -> usize {
    (2 * n - 1) * shape.dim()
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BlockOrderTooSmall(n));
    }
    Ok(())
}

impl BlockToeplitz {
    pub fn new(
        n: usize,
        shape: SchurShape,
        blocks: impl IntoIterator<Item = (i64, SchurElement)>,
    ) -> Result<Self> {
        check_order(n)?;
        let mut t = BlockToeplitz::zero(n, shape);
        for (j, b) in blocks {
            t.set_block(j, b)?;
        }
        Ok(t)
    }

    pub fn zero(n: usize, shape: SchurShape) -> Self {
        BlockToeplitz {
            n,
            shape,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, shape: SchurShape) -> Self {
        BlockToeplitz::block_diagonal(n, SchurElement::identity(shape))
    }

    /// `diag(T₀, …, T₀)`.
    pub fn block_diagonal(n: usize, t0: SchurElement) -> Self {
        let mut t = BlockToeplitz::zero(n, t0.shape());
        t.set_block(0, t0).expect("index 0 is always in range");
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> SchurShape {
        self.shape
    }

    pub fn index_range(&self) -> std::ops::RangeInclusive<i64> {
        let m = self.n as i64 - 1;
        -m..=m
    }

    fn check_index(&self, j: i64) -> Result<()> {
        if !self.index_range().contains(&j) {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Sets diagonal `j`; zero blocks are dropped from storage.
    pub fn set_block(&mut self, j: i64, b: SchurElement) -> Result<()> {
        self.check_index(j)?;
        if b.shape() != self.shape {
            return Err(Error::DimensionMismatch(format!(
                "block {j} has shape {} but the matrix uses {}",
                b.shape(),
                self.shape
            )));
        }
        if b.is_zero() {
            self.blocks.remove(&j);
        } else {
            self.blocks.insert(j, b);
        }
        Ok(())
    }

    /// Stored (nonzero) diagonal `j`.
    pub fn get(&self, j: i64) -> Option<&SchurElement> {
        self.blocks.get(&j)
    }

    /// Diagonal `j`, zero when absent.
    pub fn block(&self, j: i64) -> SchurElement {
        self.blocks
            .get(&j)
            .cloned()
            .unwrap_or_else(|| SchurElement::zero(self.shape))
    }

    /// Nonzero diagonals in increasing index order.
    pub fn blocks(&self) -> impl Iterator<Item = (i64, &SchurElement)> {
        self.blocks.iter().map(|(&j, b)| (j, b))
    }

    pub fn nonzero_diagonals(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn check_compatible(&self, other: &BlockToeplitz) -> Result<()> {
        if self.n != other.n || self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "order/shape ({}, {}) vs ({}, {})",
                self.n, self.shape, other.n, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BlockToeplitz) -> Result<BlockToeplitz> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&j, b) in &other.blocks {
            out.set_block(j, out.block(j).add(b)?)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BlockToeplitz) -> Result<BlockToeplitz> {
        self.add(&other.scale(&-ComplexRational::one()))
    }

    pub fn scale(&self, s: &ComplexRational) -> BlockToeplitz {
        if s.is_zero() {
            return BlockToeplitz::zero(self.n, self.shape);
        }
        BlockToeplitz {
            n: self.n,
            shape: self.shape,
            blocks: self.blocks.iter().map(|(&j, b)| (j, b.scale(s))).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let d = self.shape.d();
        let mut m = DenseMatrix::zeros(self.n * d, self.n * d);
        for (&j, b) in &self.blocks {
            let e = b.embed();
            for q in 0..self.n as i64 {
                let p = q + j;
                if (0..self.n as i64).contains(&p) {
                    m.set_block(p as usize * d, q as usize * d, &e);
                }
            }
        }
        m
    }

    /// Reads an `nd × nd` matrix back, requiring constant diagonals of Schur blocks.
    pub fn from_dense(m: &DenseMatrix, n: usize, shape: SchurShape) -> Result<BlockToeplitz> {
        check_order(n)?;
        let d = shape.d();
        if m.rows() != n * d || m.cols() != n * d {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                n * d,
                m.rows(),
                m.cols()
            )));
        }
        if let Some((p, q)) = first_toeplitz_violation(m, n, d) {
            return Err(Error::NotBlockToeplitz(format!(
                "block ({p},{q}) differs from block ({},{})",
                p - 1,
                q - 1
            )));
        }
        let mut t = BlockToeplitz::zero(n, shape);
        for j in 1 - n as i64..n as i64 {
            let (p, q) = if j >= 0 {
                (j as usize, 0)
            } else {
                (0, (-j) as usize)
            };
            let block = m.submatrix(p * d, q * d, d, d);
            t.set_block(j, SchurElement::extract(&block, shape)?)?;
        }
        Ok(t)
    }

    /// Coordinates: for each diagonal `j = 1−n, …, n−1` in turn, `[λ_j, X_j row-major]`.
    pub fn coords(&self) -> Vector {
        let dim = self.shape.dim();
        let mut v = vec![ComplexRational::zero(); coord_dim(self.n, self.shape)];
        for (&j, b) in &self.blocks {
            let off = (j + self.n as i64 - 1) as usize * dim;
            for (k, c) in b.coords().into_iter().enumerate() {
                v[off + k] = c;
            }
        }
        v
    }

    pub fn from_coords(n: usize, shape: SchurShape, coords: &[ComplexRational]) -> Result<Self> {
        check_order(n)?;
        if coords.len() != coord_dim(n, shape) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                coord_dim(n, shape),
                coords.len()
            )));
        }
        let mut t = BlockToeplitz::zero(n, shape);
        for (i, chunk) in coords.chunks(shape.dim()).enumerate() {
            let j = i as i64 - (n as i64 - 1);
            t.set_block(j, SchurElement::from_coords(shape, chunk)?)?;
        }
        Ok(t)
    }
}

/// Returns the first block position `(p, q)` (with `p, q ≥ 1`) whose block differs
/// from block `(p−1, q−1)`, or `None` when `m` is block Toeplitz.
fn first_toeplitz_violation(m: &DenseMatrix, n: usize, d: usize) -> Option<(usize, usize)> {
    for p in 1..n {
        for q in 1..n {
            for r in 0..d {
                for c in 0..d {
                    if m.get(p * d + r, q * d + c) != m.get((p - 1) * d + r, (q - 1) * d + c) {
                        return Some((p, q));
                    }
                }
            }
        }
    }
    None
}

/// Whether the `nd × nd` matrix `m` is constant along its `d×d` block diagonals.
pub fn is_block_toeplitz(m: &DenseMatrix, n: usize, d: usize) -> bool {
    m.rows() == n * d && m.cols() == n * d && first_toeplitz_violation(m, n, d).is_none()
}

fn mul_opt(a: Option<&SchurElement>, b: Option<&SchurElement>) -> Result<Option<SchurElement>> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(Some(a.mul(b)?)),
        _ => Ok(None),
    }
}

/// First `(p, q)` in `1..n` where `T_p U_{q−n} ≠ T_{p−n} U_q`.
pub fn product_condition_violation(
    t: &BlockToeplitz,
    u: &BlockToeplitz,
) -> Result<Option<(usize, usize)>> {
    t.check_compatible(u)?;
    let n = t.n as i64;
    for p in 1..n {
        for q in 1..n {
            let lhs = mul_opt(t.get(p), u.get(q - n))?;
            let rhs = mul_opt(t.get(p - n), u.get(q))?;
            let equal = match (&lhs, &rhs) {
                (None, None) => true,
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
                (Some(a), Some(b)) => a == b,
            };
            if !equal {
                return Ok(Some((p as usize, q as usize)));
            }
        }
    }
    Ok(None)
}

/// Whether `T·U` is block Toeplitz, decided by the block identities
/// `T_p U_{q−n} = T_{p−n} U_q` for `p, q = 1, …, n−1`.
pub fn product_condition(t: &BlockToeplitz, u: &BlockToeplitz) -> Result<bool> {
    Ok(product_condition_violation(t, u)?.is_none())
}

/// Evaluation/interpolation plan for a middle product
/// `out_j = Σ_{ℓ<q} w_{j+ℓ} b_ℓ`, `j < p`, with `w` of length `L = p + q − 1`.
///
/// It is the transpose of Toom–Cook multiplication of a degree `p−1` polynomial
/// by a degree `q−1` one, so it needs exactly `L` products in the coefficient
/// algebra; all the other work is scaling by rational constants.
struct MiddleProductPlan {
    outputs: usize,
    short_len: usize,
    /// `x_i^ℓ`, `L × q`.
    short_eval: Vec<Vec<ComplexRational>>,
    /// `(V⁻¹)ᵀ` for the `L × L` Vandermonde matrix `V[i][k] = x_i^k`.
    long_transform: Vec<Vec<ComplexRational>>,
    /// `x_i^j`, `L × p`.
    out_eval: Vec<Vec<ComplexRational>>,
}

impl MiddleProductPlan {
    fn new(outputs: usize, short_len: usize) -> Self {
        let l = outputs + short_len - 1;
        // 0, 1, −1, 2, −2, …
        let points: Vec<ComplexRational> = (0..l as i64)
            .map(|i| {
                let k = (i + 1) / 2;
                ComplexRational::from_int(if i % 2 == 1 { k } else { -k })
            })
            .collect();
        let pow = |x: &ComplexRational, e: usize| {
            let mut acc = ComplexRational::one();
            for _ in 0..e {
                acc = &acc * x;
            }
            acc
        };
        let mut vandermonde = DenseMatrix::zeros(l, l);
        for (i, x) in points.iter().enumerate() {
            for k in 0..l {
                vandermonde.set(i, k, pow(x, k));
            }
        }
        let inv = vandermonde
            .inverse()
            .expect("Vandermonde matrix on distinct points is invertible");
        MiddleProductPlan {
            outputs,
            short_len,
            short_eval: points
                .iter()
                .map(|x| (0..short_len).map(|e| pow(x, e)).collect())
                .collect(),
            long_transform: (0..l)
                .map(|i| (0..l).map(|k| inv.get(k, i).clone()).collect())
                .collect(),
            out_eval: points
                .iter()
                .map(|x| (0..outputs).map(|e| pow(x, e)).collect())
                .collect(),
        }
    }

    fn cached(outputs: usize, short_len: usize) -> Arc<MiddleProductPlan> {
        type PlanCache = Mutex<HashMap<(usize, usize), Arc<MiddleProductPlan>>>;
        static PLANS: OnceLock<PlanCache> = OnceLock::new();
        let plans = PLANS.get_or_init(Default::default);
        let mut guard = plans.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry((outputs, short_len))
            .or_insert_with(|| Arc::new(MiddleProductPlan::new(outputs, short_len)))
            .clone()
    }

    fn apply(
        &self,
        shape: SchurShape,
        long: &[SchurElement],
        short: &[SchurElement],
        mults: &mut usize,
    ) -> Result<Vec<SchurElement>> {
        debug_assert_eq!(short.len(), self.short_len);
        debug_assert_eq!(long.len(), self.outputs + self.short_len - 1);
        let combine =
            |coeffs: &[ComplexRational], items: &[SchurElement]| -> Result<SchurElement> {
                let mut acc = SchurElement::zero(shape);
                for (c, e) in coeffs.iter().zip(items) {
                    if !c.is_zero() && !e.is_zero() {
                        acc = acc.add(&e.scale(c))?;
                    }
                }
                Ok(acc)
            };
        let mut products = Vec::with_capacity(long.len());
        for (lt, se) in self.long_transform.iter().zip(&self.short_eval) {
            let a = combine(lt, long)?;
            let b = combine(se, short)?;
            products.push(a.mul(&b)?);
            *mults += 1;
        }
        (0..self.outputs)
            .map(|j| {
                let coeffs: Vec<ComplexRational> =
                    self.out_eval.iter().map(|row| row[j].clone()).collect();
                combine(&coeffs, &products)
            })
            .collect()
    }
}

/// Block multiplications performed by one product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductCost {
    pub block_multiplications: usize,
}

/// The block Toeplitz product `T·U`, defined when [`product_condition`] holds.
pub fn structured_product(t: &BlockToeplitz, u: &BlockToeplitz) -> Result<BlockToeplitz> {
    structured_product_counted(t, u).map(|(p, _)| p)
}

/// [`structured_product`] together with its block-multiplication count.
///
/// Diagonal `k ≥ 0` of the product is `Σ_{ℓ=0}^{n−1} T_{k−ℓ} U_ℓ` (first block
/// column), and diagonal `k < 0` is `Σ_{ℓ=0}^{n−1} T_{−ℓ} U_{ℓ+k}` (first block
/// row). Both families are middle products, evaluated with `2n−1` and `2n−2`
/// block multiplications respectively, `4n−3` in total. The precondition check
/// is not included in the count.
pub fn structured_product_counted(
    t: &BlockToeplitz,
    u: &BlockToeplitz,
) -> Result<(BlockToeplitz, ProductCost)> {
    if let Some((p, q)) = product_condition_violation(t, u)? {
        return Err(Error::ConditionViolated { p, q });
    }
    let n = t.n;
    let m = n as i64 - 1;
    let shape = t.shape;
    let mut mults = 0;
    let mut out = BlockToeplitz::zero(n, shape);

    // First column: w_i = T_{i−(n−1)}, b_ℓ = U_{n−1−ℓ}.
    let long: Vec<SchurElement> = (0..2 * n - 1).map(|i| t.block(i as i64 - m)).collect();
    let short: Vec<SchurElement> = (0..n).map(|l| u.block(m - l as i64)).collect();
    let column = MiddleProductPlan::cached(n, n).apply(shape, &long, &short, &mut mults)?;
    for (k, b) in column.into_iter().enumerate() {
        out.set_block(k as i64, b)?;
    }

    // First row, k = −(n−1), …, −1: w_i = U_{i−(n−1)}, b_ℓ = T_{−ℓ}.
    let long: Vec<SchurElement> = (0..2 * n - 2).map(|i| u.block(i as i64 - m)).collect();
    let short: Vec<SchurElement> = (0..n).map(|l| t.block(-(l as i64))).collect();
    let row = MiddleProductPlan::cached(n - 1, n).apply(shape, &long, &short, &mut mults)?;
    for (j, b) in row.into_iter().enumerate() {
        out.set_block(j as i64 - m, b)?;
    }

    Ok((
        out,
        ProductCost {
            block_multiplications: mults,
        },
    ))
}

/// Dense block-by-block product `Σ_r dense(T_{p−r})·dense(U_{r−q})` over every
/// output block, counting each `d×d` block product (always `n³`).
pub fn dense_block_product(
    t: &BlockToeplitz,
    u: &BlockToeplitz,
) -> Result<(DenseMatrix, ProductCost)> {
    t.check_compatible(u)?;
    let (n, d) = (t.n, t.shape.d());
    let embed = |x: &BlockToeplitz, j: i64| x.block(j).embed();
    let mut out = DenseMatrix::zeros(n * d, n * d);
    let mut mults = 0;
    for p in 0..n as i64 {
        for q in 0..n as i64 {
            let mut acc = DenseMatrix::zeros(d, d);
            for r in 0..n as i64 {
                acc = acc.add(&embed(t, p - r).mul(&embed(u, r - q))?)?;
                mults += 1;
            }
            out.set_block(p as usize * d, q as usize * d, &acc);
        }
    }
    Ok((
        out,
        ProductCost {
            block_multiplications: mults,
        },
    ))
}

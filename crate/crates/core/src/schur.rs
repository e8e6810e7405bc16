//! The Schur algebra `O(σ,τ)`: `d×d` matrices `[[λ·I_σ, X], [0, λ·I_τ]]` with
//! `d = σ + τ`.
//!
//! Elements are stored as the pair `(λ, X)`; the dense `d×d` form is derived on
//! demand. The radical `R` is the set of elements with `λ = 0`, and `R² = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, span, DenseMatrix, Vector};
use crate::scalar::ComplexRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SchurShape {
    sigma: usize,
    tau: usize,
}

impl SchurShape {
    /// A shape with `σ, τ ≥ 1` and `|σ − τ| ≤ 1`.
    pub fn new(sigma: usize, tau: usize) -> Result<Self> {
        let shape = SchurShape::relaxed(sigma, tau)?;
        if !shape.is_standard() {
            return Err(Error::InvalidShape {
                sigma,
                tau,
                reason: "|sigma - tau| must be at most 1 (use relaxed mode to override)".into(),
            });
        }
        Ok(shape)
    }

    /// Any shape with `σ, τ ≥ 1`. Results for shapes with `|σ − τ| > 1` fall
    /// outside the hypotheses of the classification and are flagged as such.
    pub fn relaxed(sigma: usize, tau: usize) -> Result<Self> {
        if sigma == 0 || tau == 0 {
            return Err(Error::InvalidShape {
                sigma,
                tau,
                reason: "sigma and tau must both be positive".into(),
            });
        }
        Ok(SchurShape { sigma, tau })
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Matrix size `d = σ + τ`.
    pub fn d(&self) -> usize {
        self.sigma + self.tau
    }

    /// Dimension of the radical, `στ`.
    pub fn radical_dim(&self) -> usize {
        self.sigma * self.tau
    }

    /// Dimension of `O(σ,τ)` as a linear space, `στ + 1`.
    pub fn dim(&self) -> usize {
        self.radical_dim() + 1
    }

    pub fn is_standard(&self) -> bool {
        self.sigma.abs_diff(self.tau) <= 1
    }
}

impl fmt::Display for SchurShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({},{})", self.sigma, self.tau)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SchurElement {
    shape: SchurShape,
    lambda: ComplexRational,
    x: DenseMatrix,
}

impl SchurElement {
    pub fn new(shape: SchurShape, lambda: ComplexRational, x: DenseMatrix) -> Result<Self> {
        if x.rows() != shape.sigma || x.cols() != shape.tau {
            return Err(Error::DimensionMismatch(format!(
                "X must be {}x{} for {shape}, got {}x{}",
                shape.sigma,
                shape.tau,
                x.rows(),
                x.cols()
            )));
        }
        Ok(SchurElement { shape, lambda, x })
    }

    pub fn zero(shape: SchurShape) -> Self {
        SchurElement::scalar(shape, ComplexRational::zero())
    }

    pub fn identity(shape: SchurShape) -> Self {
        SchurElement::scalar(shape, ComplexRational::one())
    }

    /// `λ·I_d`.
    pub fn scalar(shape: SchurShape, lambda: ComplexRational) -> Self {
        SchurElement {
            shape,
            lambda,
            x: DenseMatrix::zeros(shape.sigma, shape.tau),
        }
    }

    /// Radical element whose `X` has a single 1 at `(r, c)`.
    pub fn radical_unit(shape: SchurShape, r: usize, c: usize) -> Self {
        let mut x = DenseMatrix::zeros(shape.sigma, shape.tau);
        x.set(r, c, ComplexRational::one());
        SchurElement {
            shape,
            lambda: ComplexRational::zero(),
            x,
        }
    }

    pub fn shape(&self) -> SchurShape {
        self.shape
    }

    pub fn lambda(&self) -> &ComplexRational {
        &self.lambda
    }

    pub fn x(&self) -> &DenseMatrix {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.x.is_zero()
    }

    pub fn is_radical(&self) -> bool {
        self.lambda.is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        !self.lambda.is_zero()
    }

    fn check_shape(&self, other: &SchurElement) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// `(λ_a λ_b, λ_a X_b + λ_b X_a)`.
    pub fn mul(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_shape(other)?;
        let lambda = &self.lambda * &other.lambda;
        let x = other
            .x
            .scale(&self.lambda)
            .add(&self.x.scale(&other.lambda))?;
        Ok(SchurElement {
            shape: self.shape,
            lambda,
            x,
        })
    }

    pub fn add(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_shape(other)?;
        Ok(SchurElement {
            shape: self.shape,
            lambda: &self.lambda + &other.lambda,
            x: self.x.add(&other.x)?,
        })
    }

    pub fn sub(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_shape(other)?;
        Ok(SchurElement {
            shape: self.shape,
            lambda: &self.lambda - &other.lambda,
            x: self.x.sub(&other.x)?,
        })
    }

    pub fn scale(&self, s: &ComplexRational) -> SchurElement {
        SchurElement {
            shape: self.shape,
            lambda: &self.lambda * s,
            x: self.x.scale(s),
        }
    }

    /// `(λ⁻¹, −λ⁻² X)`.
    pub fn inverse(&self) -> Result<SchurElement> {
        let inv = self.lambda.recip().ok_or(Error::NotInvertible)?;
        let factor = -(&inv * &inv);
        Ok(SchurElement {
            shape: self.shape,
            lambda: inv,
            x: self.x.scale(&factor),
        })
    }

    pub fn embed(&self) -> DenseMatrix {
        let (s, t) = (self.shape.sigma, self.shape.tau);
        let mut m = DenseMatrix::zeros(s + t, s + t);
        for i in 0..s + t {
            m.set(i, i, self.lambda.clone());
        }
        m.set_block(0, s, &self.x);
        m
    }

    /// Inverse of [`SchurElement::embed`]; fails unless `m` has the Schur block form.
    pub fn extract(m: &DenseMatrix, shape: SchurShape) -> Result<SchurElement> {
        let (s, t) = (shape.sigma, shape.tau);
        let d = s + t;
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "expected {d}x{d} matrix for {shape}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let lambda = m.get(0, 0).clone();
        for r in 0..d {
            for c in 0..d {
                let v = m.get(r, c);
                if r == c {
                    if *v != lambda {
                        return Err(Error::NotInSchurAlgebra(format!(
                            "diagonal entry ({r},{r}) = {v} differs from {lambda}"
                        )));
                    }
                } else if !(r < s && c >= s) && !v.is_zero() {
                    return Err(Error::NotInSchurAlgebra(format!(
                        "entry ({r},{c}) = {v} lies outside the Schur pattern"
                    )));
                }
            }
        }
        Ok(SchurElement {
            shape,
            lambda,
            x: m.submatrix(0, s, s, t),
        })
    }

    /// Coordinates `[λ, X row-major]`, length `στ + 1`.
    pub fn coords(&self) -> Vector {
        let mut v = Vec::with_capacity(self.shape.dim());
        v.push(self.lambda.clone());
        v.extend(self.x.entries().iter().cloned());
        v
    }

    pub fn from_coords(shape: SchurShape, coords: &[ComplexRational]) -> Result<SchurElement> {
        if coords.len() != shape.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{shape} needs {} coordinates, got {}",
                shape.dim(),
                coords.len()
            )));
        }
        let rows = coords[1..]
            .chunks(shape.tau)
            .map(<[ComplexRational]>::to_vec)
            .collect();
        Ok(SchurElement {
            shape,
            lambda: coords[0].clone(),
            x: DenseMatrix::from_rows(rows)?,
        })
    }
}

impl fmt::Debug for SchurElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = self
            .x
            .to_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "(λ={}, X=[{}])", self.lambda, x.join(","))
    }
}

pub fn schur_mul(a: &SchurElement, b: &SchurElement) -> Result<SchurElement> {
    a.mul(b)
}

/// Decides `Ker A ∩ Ker B = {0}` from the dense embeddings.
pub fn kernel_intersection_trivial(a: &SchurElement, b: &SchurElement) -> Result<bool> {
    a.check_shape(b)?;
    let d = a.shape.d();
    let mut stacked = DenseMatrix::zeros(2 * d, d);
    stacked.set_block(0, 0, &a.embed());
    stacked.set_block(d, 0, &b.embed());
    Ok(nullspace(&stacked).is_zero())
}

/// The scalar-part shortcut for the kernel condition: one of `A`, `B` is invertible.
pub fn has_invertible_member(a: &SchurElement, b: &SchurElement) -> bool {
    a.is_invertible() || b.is_invertible()
}

pub fn linearly_independent(a: &SchurElement, b: &SchurElement) -> Result<bool> {
    a.check_shape(b)?;
    Ok(span(&[a.coords(), b.coords()], a.shape.dim())?.dim() == 2)
}

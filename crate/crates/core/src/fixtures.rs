//! The three worked examples at `σ = 2, τ = 1, n = 3`.

use crate::algebra::{b_algebra_basis, fab_basis, AlgebraBasis, GeneratorPair};
use crate::error::{Error, Result};
use crate::scalar::ComplexRational;
use crate::schur::{SchurElement, SchurShape};
use crate::toeplitz::BlockToeplitz;

pub const EXAMPLE_N: usize = 3;

pub fn example_shape() -> SchurShape {
    SchurShape::new(2, 1).expect("(2,1) is a valid shape")
}

/// Identity plus the radical coordinate units: a basis of `O(σ,τ)`.
pub fn schur_basis(shape: SchurShape) -> Vec<SchurElement> {
    let mut out = vec![SchurElement::identity(shape)];
    for r in 0..shape.sigma() {
        for c in 0..shape.tau() {
            out.push(SchurElement::radical_unit(shape, r, c));
        }
    }
    out
}

/// Both readings of the first example: the block-diagonal repeat algebra as
/// printed, and `F_{I,0}` as defined.
#[derive(Clone, Debug)]
pub struct ExampleOne {
    pub as_displayed: Vec<BlockToeplitz>,
    pub as_defined: AlgebraBasis,
    pub pair: GeneratorPair,
}

pub const EXAMPLE_ONE_ERRATUM: &str = "the printed form diag(T0,T0,T0) is not F_(I,0): the relation I*T_j = 0*T_(j-3) forces only T_1 = T_2 = 0 and leaves T_0, T_-1, T_-2 free (dimension 9); the printed 3-dimensional algebra is a proper subalgebra of B(x)O";

pub fn example1() -> Result<ExampleOne> {
    let shape = example_shape();
    let pair = GeneratorPair::new(SchurElement::identity(shape), SchurElement::zero(shape))?;
    Ok(ExampleOne {
        as_displayed: schur_basis(shape)
            .into_iter()
            .map(|e| BlockToeplitz::block_diagonal(EXAMPLE_N, e))
            .collect(),
        as_defined: fab_basis(&pair, EXAMPLE_N)?,
        pair,
    })
}

/// Pair `(I, μI)` of the second example.
pub fn example2_pair(mu: &ComplexRational) -> Result<GeneratorPair> {
    if mu.is_zero() {
        return Err(Error::InvalidParameter("mu must be nonzero".into()));
    }
    let shape = example_shape();
    GeneratorPair::new(
        SchurElement::identity(shape),
        SchurElement::scalar(shape, mu.clone()),
    )
}

/// Generators of `{T : T_j = μ T_{j−3}, j = 1, 2}`: for each basis element `e`
/// of `O(2,1)`, `e` on the main diagonal, and `e` on diagonal `−k` together
/// with `μe` on diagonal `3−k` for `k = 1, 2`.
pub fn example2(mu: &ComplexRational) -> Result<Vec<BlockToeplitz>> {
    example2_pair(mu)?;
    let shape = example_shape();
    let n = EXAMPLE_N as i64;
    let mut out = Vec::new();
    for e in schur_basis(shape) {
        out.push(BlockToeplitz::block_diagonal(EXAMPLE_N, e.clone()));
        for k in 1..n {
            out.push(BlockToeplitz::new(
                EXAMPLE_N,
                shape,
                [(-k, e.clone()), (n - k, e.scale(mu))],
            )?);
        }
    }
    Ok(out)
}

/// Parameters of the sample element `D_0 = λI`, `N_1 = (a, b)ᵀ`, `N_2 = (c, d)ᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleThreeParams {
    pub lambda: ComplexRational,
    pub a: ComplexRational,
    pub b: ComplexRational,
    pub c: ComplexRational,
    pub d: ComplexRational,
}

impl Default for ExampleThreeParams {
    fn default() -> Self {
        let int = ComplexRational::from_int;
        ExampleThreeParams {
            lambda: int(1),
            a: int(1),
            b: int(2),
            c: int(3),
            d: int(4),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExampleThree {
    pub basis: AlgebraBasis,
    pub sample: BlockToeplitz,
    pub pair: GeneratorPair,
}

fn radical_column(
    shape: SchurShape,
    top: &ComplexRational,
    bottom: &ComplexRational,
) -> SchurElement {
    SchurElement::radical_unit(shape, 0, 0)
        .scale(top)
        .add(&SchurElement::radical_unit(shape, 1, 0).scale(bottom))
        .expect("same shape")
}

/// `B⊗O(2,1)` with a sample element whose printed upper diagonals carry the
/// parameters, and the independent radical pair `X = e_1`, `X = e_2`.
pub fn example3(params: &ExampleThreeParams) -> Result<ExampleThree> {
    let shape = example_shape();
    let sample = BlockToeplitz::new(
        EXAMPLE_N,
        shape,
        [
            (0, SchurElement::scalar(shape, params.lambda.clone())),
            (-1, radical_column(shape, &params.a, &params.b)),
            (-2, radical_column(shape, &params.c, &params.d)),
        ],
    )?;
    Ok(ExampleThree {
        basis: b_algebra_basis(EXAMPLE_N, shape)?,
        sample,
        pair: GeneratorPair::new(
            SchurElement::radical_unit(shape, 0, 0),
            SchurElement::radical_unit(shape, 1, 0),
        )?,
    })
}

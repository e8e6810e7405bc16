//! Seeded random instances for the verification suites.
//!
//! Scalars are small rationals `{−2..2}/{1,2}` (occasionally with an imaginary
//! part) so that exact elimination stays cheap and counterexamples stay readable.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{b_algebra_basis, fab_basis, AlgebraBasis, GeneratorPair};
use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::scalar::ComplexRational;
use crate::schur::{linearly_independent, SchurElement, SchurShape};
use crate::toeplitz::{product_condition, BlockToeplitz};

/// Independent stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn small_real<R: Rng>(rng: &mut R) -> (i64, i64) {
    (rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

/// A small rational, complex one time in eight.
pub fn small_scalar<R: Rng>(rng: &mut R) -> ComplexRational {
    let re = small_real(rng);
    let im = if rng.gen_ratio(1, 8) {
        small_real(rng)
    } else {
        (0, 1)
    };
    ComplexRational::from_parts(re, im)
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> ComplexRational {
    loop {
        let s = small_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Zero with probability 1/4, otherwise a nonzero small scalar.
pub fn random_lambda<R: Rng>(rng: &mut R) -> ComplexRational {
    if rng.gen_ratio(1, 4) {
        ComplexRational::zero()
    } else {
        nonzero_scalar(rng)
    }
}

pub fn random_block<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| small_scalar(rng)).collect())
        .collect();
    DenseMatrix::from_rows(entries).expect("rectangular by construction")
}

fn element(shape: SchurShape, lambda: ComplexRational, x: DenseMatrix) -> SchurElement {
    SchurElement::new(shape, lambda, x).expect("block has the shape's dimensions")
}

pub fn random_schur<R: Rng>(rng: &mut R, shape: SchurShape) -> SchurElement {
    let lambda = random_lambda(rng);
    element(shape, lambda, random_block(rng, shape.sigma(), shape.tau()))
}

pub fn random_invertible<R: Rng>(rng: &mut R, shape: SchurShape) -> SchurElement {
    let lambda = nonzero_scalar(rng);
    element(shape, lambda, random_block(rng, shape.sigma(), shape.tau()))
}

/// A nonzero element of the radical.
pub fn random_radical<R: Rng>(rng: &mut R, shape: SchurShape) -> SchurElement {
    loop {
        let x = random_block(rng, shape.sigma(), shape.tau());
        if !x.is_zero() {
            return element(shape, ComplexRational::zero(), x);
        }
    }
}

/// A pair with at least one invertible member, so `Ker A ∩ Ker B = {0}`.
///
/// The other member is invertible, radical or zero with roughly equal odds.
pub fn random_nondegenerate_pair<R: Rng>(rng: &mut R, shape: SchurShape) -> GeneratorPair {
    let first = random_invertible(rng, shape);
    let second = match rng.gen_range(0..3) {
        0 => random_invertible(rng, shape),
        1 => random_radical(rng, shape),
        _ => SchurElement::zero(shape),
    };
    let (a, b) = if rng.gen_bool(0.5) {
        (first, second)
    } else {
        (second, first)
    };
    GeneratorPair::new(a, b).expect("same shape")
}

/// Two linearly independent radical elements; needs `στ ≥ 2`.
pub fn random_independent_radical_pair<R: Rng>(rng: &mut R, shape: SchurShape) -> GeneratorPair {
    assert!(
        shape.radical_dim() >= 2,
        "radical of {shape} has dimension < 2"
    );
    loop {
        let (a, b) = (random_radical(rng, shape), random_radical(rng, shape));
        if linearly_independent(&a, &b).expect("same shape") {
            return GeneratorPair::new(a, b).expect("same shape");
        }
    }
}

/// A block Toeplitz matrix whose diagonals are each zero with probability 1/4.
pub fn random_block_toeplitz<R: Rng>(rng: &mut R, n: usize, shape: SchurShape) -> BlockToeplitz {
    let m = n as i64 - 1;
    let mut blocks = Vec::new();
    for j in -m..=m {
        if !rng.gen_ratio(1, 4) {
            blocks.push((j, random_schur(rng, shape)));
        }
    }
    BlockToeplitz::new(n, shape, blocks).expect("indices in range")
}

/// A random linear combination of the basis of `alg`.
pub fn random_member<R: Rng>(rng: &mut R, alg: &AlgebraBasis) -> BlockToeplitz {
    let coeffs: Vec<_> = (0..alg.dim()).map(|_| small_scalar(rng)).collect();
    alg.combination(&coeffs)
        .expect("one coefficient per basis vector")
}

/// Where a product-condition-satisfying pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairFamily {
    /// Both factors in a common `F_{A,B}` with a nondegenerate pair.
    CommonFab,
    /// Both factors have radical off-diagonal blocks.
    Special,
    /// One factor is block diagonal.
    BlockDiagonal,
}

/// Two block Toeplitz matrices whose product is block Toeplitz.
pub fn random_condition_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: SchurShape,
) -> Result<(BlockToeplitz, BlockToeplitz, PairFamily)> {
    let family = *[
        PairFamily::CommonFab,
        PairFamily::Special,
        PairFamily::BlockDiagonal,
    ]
    .choose(rng)
    .expect("nonempty");
    let (t, u) = match family {
        PairFamily::CommonFab => {
            let f = fab_basis(&random_nondegenerate_pair(rng, shape), n)?;
            (random_member(rng, &f), random_member(rng, &f))
        }
        PairFamily::Special => {
            let b = b_algebra_basis(n, shape)?;
            (random_member(rng, &b), random_member(rng, &b))
        }
        PairFamily::BlockDiagonal => {
            let d = BlockToeplitz::block_diagonal(n, random_schur(rng, shape));
            let other = random_block_toeplitz(rng, n, shape);
            if rng.gen_bool(0.5) {
                (d, other)
            } else {
                (other, d)
            }
        }
    };
    debug_assert!(product_condition(&t, &u)?);
    Ok((t, u, family))
}

/// Adds a random invertible element to one off-diagonal block of `t` or `u`,
/// retrying until the product condition fails. `None` if no attempt breaks it.
pub fn perturb_to_violation<R: Rng>(
    rng: &mut R,
    t: &BlockToeplitz,
    u: &BlockToeplitz,
    attempts: usize,
) -> Result<Option<(BlockToeplitz, BlockToeplitz)>> {
    let n = t.n() as i64;
    for _ in 0..attempts {
        let (mut t2, mut u2) = (t.clone(), u.clone());
        let target = if rng.gen_bool(0.5) { &mut t2 } else { &mut u2 };
        let mut j = rng.gen_range(1..n);
        if rng.gen_bool(0.5) {
            j = -j;
        }
        let bumped = target.block(j).add(&random_invertible(rng, t.shape()))?;
        target.set_block(j, bumped)?;
        if !product_condition(&t2, &u2)? {
            return Ok(Some((t2, u2)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |seed, trial| {
            let mut r = trial_rng(seed, trial);
            (0..8).map(|_| r.gen::<u32>()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7, 3), draw(7, 3));
        assert_ne!(draw(7, 3), draw(7, 4));
        assert_ne!(draw(7, 3), draw(8, 3));
    }

    #[test]
    fn generated_pairs_have_their_advertised_properties() {
        let shape = SchurShape::new(2, 1).unwrap();
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            assert!(random_nondegenerate_pair(&mut rng, shape)
                .is_nondegenerate()
                .unwrap());
            let p = random_independent_radical_pair(&mut rng, shape);
            assert!(p.a().is_radical() && p.b().is_radical());
            let (t, u, _) = random_condition_pair(&mut rng, 3, shape).unwrap();
            assert!(product_condition(&t, &u).unwrap());
        }
    }

    #[test]
    fn perturbation_yields_genuine_negatives() {
        let shape = SchurShape::new(1, 1).unwrap();
        let mut rng = trial_rng(2, 0);
        let mut found = 0;
        for _ in 0..20 {
            let (t, u, _) = random_condition_pair(&mut rng, 2, shape).unwrap();
            if let Some((t2, u2)) = perturb_to_violation(&mut rng, &t, &u, 8).unwrap() {
                assert!(!product_condition(&t2, &u2).unwrap());
                found += 1;
            }
        }
        assert!(found > 10);
    }
}

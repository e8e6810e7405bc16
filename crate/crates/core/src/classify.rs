//! Constructive classification of commutative subalgebras of `T_n ⊗ O(σ,τ)`.
//!
//! Every maximal one is either `F_{A,B}` with one of `A`, `B` invertible
//! (type I) or the algebra `B⊗O` of matrices with radical off-diagonal
//! blocks (type II). Non-maximal inputs are reported together with the
//! family that contains them.

use crate::algebra::{
    algebra_closure, b_algebra_basis, fab_basis, fab_membership, maximality_certificate,
    AlgebraBasis, GeneratorPair, MaximalityCertificate,
};
use crate::error::{Error, Result};
use crate::toeplitz::BlockToeplitz;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    TypeI {
        pair: GeneratorPair,
    },
    TypeII,
    ContainedInTypeI {
        pair: GeneratorPair,
        codimension: usize,
    },
    ContainedInTypeII {
        codimension: usize,
    },
    Rejected {
        reason: String,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::TypeI { .. } => "type_i",
            Verdict::TypeII => "type_ii",
            Verdict::ContainedInTypeI { .. } => "contained_in_type_i",
            Verdict::ContainedInTypeII { .. } => "contained_in_type_ii",
            Verdict::Rejected { .. } => "rejected",
        }
    }

    pub fn pair(&self) -> Option<&GeneratorPair> {
        match self {
            Verdict::TypeI { pair } | Verdict::ContainedInTypeI { pair, .. } => Some(pair),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub algebra_dimension: usize,
    pub ambient_dimension: usize,
    /// `None` only for rejected inputs.
    pub certificate: Option<MaximalityCertificate>,
    pub notes: Vec<String>,
}

/// What the caller hands to [`classify`].
#[derive(Clone, Debug)]
pub enum AlgebraInput {
    Generators(Vec<BlockToeplitz>),
    Basis {
        basis: Vec<BlockToeplitz>,
        closed: bool,
    },
}

impl AlgebraInput {
    pub fn elements(&self) -> &[BlockToeplitz] {
        match self {
            AlgebraInput::Generators(g) => g,
            AlgebraInput::Basis { basis, .. } => basis,
        }
    }
}

/// Finds `(A, B) = (T_{p−n}, T_p)` from the first basis element and smallest
/// `p ∈ 1..n` where one of the two blocks is invertible.
///
/// For a closed algebra every product `T·U` is block Toeplitz, so the product
/// identity at row `p` gives `A·U_q = B·U_{q−n}` for all `U`; the returned pair
/// therefore satisfies `alg ⊆ F_{A,B}`, which is checked before returning.
pub fn recover_pair(alg: &AlgebraBasis) -> Result<GeneratorPair> {
    let n = alg.n() as i64;
    let elements = alg.elements();
    let found = elements.iter().find_map(|t| {
        (1..n).find_map(|p| {
            let (lower, upper) = (t.block(p), t.block(p - n));
            (lower.is_invertible() || upper.is_invertible()).then_some((upper, lower))
        })
    });
    let (a, b) = found.ok_or(Error::NoInvertibleOffDiagonal)?;
    let pair = GeneratorPair::new(a, b)?;
    for (i, t) in elements.iter().enumerate() {
        if !fab_membership(&pair, t)? {
            return Err(Error::NotClosed(format!(
                "basis element #{i} is outside F_(A,B) for the recovered pair; the input is not a closed algebra"
            )));
        }
    }
    Ok(pair)
}

/// Runs the full pipeline: closure, pair recovery, containment, maximality certificate.
pub fn classify(input: &AlgebraInput) -> Result<ClassificationResult> {
    let elements = input.elements();
    let first = elements.first().ok_or(Error::EmptyGenerators)?;
    let (n, shape) = (first.n(), first.shape());
    let ambient_dimension = crate::toeplitz::coord_dim(n, shape);
    let mut notes = Vec::new();
    if !shape.is_standard() {
        notes.push(format!(
            "shape {shape} has |sigma - tau| > 1 and lies outside the hypotheses of the classification"
        ));
    }

    let alg = match algebra_closure(elements) {
        Ok(alg) => alg,
        Err(e @ (Error::NotCommutative(_) | Error::NotToeplitzClosed(_))) => {
            return Ok(ClassificationResult {
                verdict: Verdict::Rejected {
                    reason: e.to_string(),
                },
                algebra_dimension: AlgebraBasis::span_of(n, shape, elements)?.dim(),
                ambient_dimension,
                certificate: None,
                notes,
            });
        }
        Err(e) => return Err(e),
    };
    if let AlgebraInput::Basis {
        closed: true,
        basis,
    } = input
    {
        if alg.dim() != AlgebraBasis::span_of(n, shape, basis)?.dim() {
            notes.push("input was marked closed but its span is not closed under multiplication; classified the closure".into());
        }
    }

    let verdict = match recover_pair(&alg) {
        Ok(pair) => {
            let family = fab_basis(&pair, alg.n())?;
            debug_assert!(family.contains_algebra(&alg)?);
            let codimension = family.dim() - alg.dim();
            if pair.a().is_invertible() {
                notes.push("A is invertible".into());
            }
            if pair.b().is_invertible() {
                notes.push("B is invertible".into());
            }
            if codimension == 0 {
                Verdict::TypeI { pair }
            } else {
                Verdict::ContainedInTypeI { pair, codimension }
            }
        }
        Err(Error::NoInvertibleOffDiagonal) => {
            let special = b_algebra_basis(alg.n(), alg.shape())?;
            debug_assert!(special.contains_algebra(&alg)?);
            let codimension = special.dim() - alg.dim();
            if codimension == 0 {
                Verdict::TypeII
            } else {
                Verdict::ContainedInTypeII { codimension }
            }
        }
        Err(e) => return Err(e),
    };

    let certificate = maximality_certificate(&alg)?;
    match (&verdict, &certificate) {
        (Verdict::TypeI { .. } | Verdict::TypeII, MaximalityCertificate::Inconclusive { .. }) => {
            notes.push("maximality certificate is inconclusive for a classified family".into());
        }
        (
            Verdict::ContainedInTypeI { codimension, .. }
            | Verdict::ContainedInTypeII { codimension },
            _,
        ) => {
            notes.push(format!(
                "proper subalgebra: {codimension} dimension(s) short of the containing maximal family"
            ));
        }
        _ => {}
    }

    Ok(ClassificationResult {
        verdict,
        algebra_dimension: alg.dim(),
        ambient_dimension,
        certificate: Some(certificate),
        notes,
    })
}

/// Shorthand for classifying a closed basis.
pub fn classify_algebra(alg: &AlgebraBasis) -> Result<ClassificationResult> {
    classify(&AlgebraInput::Basis {
        basis: alg.elements(),
        closed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pairs_equivalent;
    use crate::scalar::ComplexRational;
    use crate::schur::{SchurElement, SchurShape};

    fn shape21() -> SchurShape {
        SchurShape::new(2, 1).unwrap()
    }

    fn scalar(v: i64) -> SchurElement {
        SchurElement::scalar(shape21(), ComplexRational::from_int(v))
    }

    fn pair(a: i64, b: i64) -> GeneratorPair {
        GeneratorPair::new(scalar(a), scalar(b)).unwrap()
    }

    #[test]
    fn recovers_equivalent_pairs() {
        for p in [pair(1, 2), pair(1, 0), pair(0, 1), pair(3, -1)] {
            let f = fab_basis(&p, 3).unwrap();
            let q = recover_pair(&f).unwrap();
            assert!(pairs_equivalent(&p, &q).unwrap(), "{p:?} vs {q:?}");
        }
    }

    #[test]
    fn special_algebra_has_no_invertible_off_diagonal() {
        let b = b_algebra_basis(3, shape21()).unwrap();
        assert_eq!(recover_pair(&b), Err(Error::NoInvertibleOffDiagonal));
    }

    #[test]
    fn classifies_both_families() {
        let r = classify_algebra(&fab_basis(&pair(1, 2), 3).unwrap()).unwrap();
        assert_eq!(r.verdict.tag(), "type_i");
        assert_eq!(r.algebra_dimension, 9);
        assert_eq!(r.ambient_dimension, 15);
        assert_eq!(r.certificate, Some(MaximalityCertificate::Certified));
        assert!(pairs_equivalent(r.verdict.pair().unwrap(), &pair(1, 2)).unwrap());

        let r = classify_algebra(&b_algebra_basis(3, shape21()).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::TypeII);
        assert_eq!(r.algebra_dimension, 11);
        assert!(r.certificate.unwrap().is_certified());
    }

    #[test]
    fn diagonal_repeat_is_contained_in_special_algebra() {
        let s = shape21();
        let gens = vec![
            BlockToeplitz::identity(3, s),
            BlockToeplitz::block_diagonal(3, SchurElement::radical_unit(s, 0, 0)),
            BlockToeplitz::block_diagonal(3, SchurElement::radical_unit(s, 1, 0)),
        ];
        let r = classify(&AlgebraInput::Generators(gens)).unwrap();
        assert_eq!(r.verdict, Verdict::ContainedInTypeII { codimension: 8 });
        assert_eq!(r.algebra_dimension, 3);
        assert!(!r.certificate.unwrap().is_certified());
    }

    #[test]
    fn non_commuting_input_is_rejected() {
        let s = shape21();
        let gens = vec![
            BlockToeplitz::new(3, s, [(1, scalar(1))]).unwrap(),
            BlockToeplitz::new(3, s, [(-1, scalar(1))]).unwrap(),
        ];
        let r = classify(&AlgebraInput::Generators(gens)).unwrap();
        assert_eq!(r.verdict.tag(), "rejected");
        assert!(r.certificate.is_none());
    }

    #[test]
    fn shift_algebra_is_contained_in_type_i() {
        // The lower shift generates span{S, S²} ⊂ F_{0,I}.
        let s = shape21();
        let shift = BlockToeplitz::new(3, s, [(1, scalar(1))]).unwrap();
        let r = classify(&AlgebraInput::Generators(vec![shift])).unwrap();
        match r.verdict {
            Verdict::ContainedInTypeI {
                pair: p,
                codimension,
            } => {
                assert_eq!(codimension, 7);
                assert!(pairs_equivalent(&p, &pair(0, 1)).unwrap());
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            classify(&AlgebraInput::Generators(vec![])),
            Err(Error::EmptyGenerators)
        );
    }
}

//! Concrete subspaces of `T_n ⊗ O(σ,τ)`: the algebras `F_{A,B}` and `B⊗O`,
//! closure of generator sets, commutants and maximality certificates.

use crate::error::{Error, Result};
use crate::linalg::{span, Subspace, Vector};
use crate::scalar::ComplexRational;
use crate::schur::{kernel_intersection_trivial, SchurElement, SchurShape};
use crate::toeplitz::{
    check_order, coord_dim, product_condition, structured_product, BlockToeplitz,
};

/// A linear subspace of `T_n ⊗ O(σ,τ)` in canonical form.
///
/// The name reflects how it is used: most values are algebras, but the type
/// itself only promises a subspace (commutants, for instance, need not be
/// closed under multiplication).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraBasis {
    n: usize,
    shape: SchurShape,
    space: Subspace,
}

impl AlgebraBasis {
    pub fn new(n: usize, shape: SchurShape, space: Subspace) -> Result<Self> {
        check_order(n)?;
        if space.ambient_dim() != coord_dim(n, shape) {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in dimension {}, expected {}",
                space.ambient_dim(),
                coord_dim(n, shape)
            )));
        }
        Ok(AlgebraBasis { n, shape, space })
    }

    /// Linear span of the given elements.
    pub fn span_of(n: usize, shape: SchurShape, elements: &[BlockToeplitz]) -> Result<Self> {
        check_order(n)?;
        for t in elements {
            check_member_shape(n, shape, t)?;
        }
        let coords: Vec<Vector> = elements.iter().map(BlockToeplitz::coords).collect();
        AlgebraBasis::new(n, shape, span(&coords, coord_dim(n, shape))?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> SchurShape {
        self.shape
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `(2n − 1)(στ + 1)`.
    pub fn ambient_dim(&self) -> usize {
        coord_dim(self.n, self.shape)
    }

    /// The canonical basis as block Toeplitz matrices.
    pub fn elements(&self) -> Vec<BlockToeplitz> {
        self.space
            .basis()
            .iter()
            .map(|v| {
                BlockToeplitz::from_coords(self.n, self.shape, v)
                    .expect("basis vectors have the ambient length")
            })
            .collect()
    }

    pub fn contains(&self, t: &BlockToeplitz) -> Result<bool> {
        check_member_shape(self.n, self.shape, t)?;
        self.space.contains(&t.coords())
    }

    pub fn contains_algebra(&self, other: &AlgebraBasis) -> Result<bool> {
        self.check_compatible(other)?;
        self.space.contains_subspace(&other.space)
    }

    pub fn same_space(&self, other: &AlgebraBasis) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.space == other.space)
    }

    fn check_compatible(&self, other: &AlgebraBasis) -> Result<()> {
        if self.n != other.n || self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "algebras over ({}, {}) and ({}, {})",
                self.n, self.shape, other.n, other.shape
            )));
        }
        Ok(())
    }

    /// Linear combination `Σ c_i e_i` of the canonical basis.
    pub fn combination(&self, coeffs: &[ComplexRational]) -> Result<BlockToeplitz> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {}-dimensional space",
                coeffs.len(),
                self.dim()
            )));
        }
        let mut v = vec![ComplexRational::zero(); self.ambient_dim()];
        for (c, row) in coeffs.iter().zip(self.space.basis()) {
            for (x, r) in v.iter_mut().zip(row) {
                x.add_mul(c, r);
            }
        }
        BlockToeplitz::from_coords(self.n, self.shape, &v)
    }
}

fn check_member_shape(n: usize, shape: SchurShape, t: &BlockToeplitz) -> Result<()> {
    if t.n() != n || t.shape() != shape {
        return Err(Error::DimensionMismatch(format!(
            "element over ({}, {}) in an algebra over ({n}, {shape})",
            t.n(),
            t.shape()
        )));
    }
    Ok(())
}

/// The generators `(A, B)` of `F_{A,B}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorPair {
    a: SchurElement,
    b: SchurElement,
}

impl GeneratorPair {
    pub fn new(a: SchurElement, b: SchurElement) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch(format!(
                "pair members have shapes {} and {}",
                a.shape(),
                b.shape()
            )));
        }
        Ok(GeneratorPair { a, b })
    }

    pub fn a(&self) -> &SchurElement {
        &self.a
    }

    pub fn b(&self) -> &SchurElement {
        &self.b
    }

    pub fn shape(&self) -> SchurShape {
        self.a.shape()
    }

    /// `Ker A ∩ Ker B = {0}`.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        kernel_intersection_trivial(&self.a, &self.b)
    }
}

/// Whether `A·T_j = B·T_{j−n}` for `j = 1, …, n−1`.
pub fn fab_membership(pair: &GeneratorPair, t: &BlockToeplitz) -> Result<bool> {
    if t.shape() != pair.shape() {
        return Err(Error::DimensionMismatch(format!(
            "pair over {} and matrix over {}",
            pair.shape(),
            t.shape()
        )));
    }
    let n = t.n() as i64;
    for j in 1..n {
        if pair.a.mul(&t.block(j))? != pair.b.mul(&t.block(j - n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F_{A,B}` as the solution space of its defining linear constraints.
pub fn fab_basis(pair: &GeneratorPair, n: usize) -> Result<AlgebraBasis> {
    check_order(n)?;
    let shape = pair.shape();
    let dim = coord_dim(n, shape);
    // One column per coordinate of T; constraint rows are the coordinates of
    // A·T_j − B·T_{j−n} for j = 1..n−1.
    let mut columns = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut unit = vec![ComplexRational::zero(); dim];
        unit[c] = ComplexRational::one();
        let t = BlockToeplitz::from_coords(n, shape, &unit)?;
        let mut col = Vec::new();
        for j in 1..n as i64 {
            let residual = pair
                .a
                .mul(&t.block(j))?
                .sub(&pair.b.mul(&t.block(j - n as i64))?)?;
            col.extend(residual.coords());
        }
        columns.push(col);
    }
    let rows = (n - 1) * shape.dim();
    let mut row_space = Subspace::zero(dim);
    for r in 0..rows {
        let row: Vector = columns.iter().map(|col| col[r].clone()).collect();
        row_space.insert(&row)?;
    }
    AlgebraBasis::new(n, shape, row_space.annihilator())
}

/// Whether every off-diagonal block lies in the radical.
pub fn b_membership(t: &BlockToeplitz) -> bool {
    t.blocks().all(|(j, b)| j == 0 || b.is_radical())
}

/// `B⊗O`: arbitrary main diagonal, radical off-diagonal blocks. Its dimension is
/// `(στ + 1) + (2n − 2)στ`.
pub fn b_algebra_basis(n: usize, shape: SchurShape) -> Result<AlgebraBasis> {
    check_order(n)?;
    let dim = coord_dim(n, shape);
    let mut space = Subspace::zero(dim);
    for c in 0..dim {
        let diagonal = c / shape.dim();
        let is_lambda = c % shape.dim() == 0;
        if is_lambda && diagonal != n - 1 {
            continue;
        }
        let mut unit = vec![ComplexRational::zero(); dim];
        unit[c] = ComplexRational::one();
        space.insert(&unit)?;
    }
    AlgebraBasis::new(n, shape, space)
}

fn commute_densely(t: &BlockToeplitz, u: &BlockToeplitz) -> Result<bool> {
    Ok(t.to_dense().commutator(&u.to_dense())?.is_zero())
}

/// Smallest subspace containing `generators` and closed under multiplication.
///
/// Every new product of two current elements is added until nothing new
/// appears; the ambient dimension bounds the number of rounds.
pub fn algebra_closure(generators: &[BlockToeplitz]) -> Result<AlgebraBasis> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let (n, shape) = (first.n(), first.shape());
    for g in generators {
        check_member_shape(n, shape, g)?;
    }
    let mut space = Subspace::zero(coord_dim(n, shape));
    let mut elems: Vec<BlockToeplitz> = Vec::new();
    for g in generators {
        if space.insert(&g.coords())? {
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let (t, u) = (&elems[j], &elems[i]);
            if !commute_densely(t, u)? {
                return Err(Error::NotCommutative(format!(
                    "elements #{j} and #{i} of the generated set do not commute"
                )));
            }
            if !product_condition(t, u)? {
                return Err(Error::NotToeplitzClosed(format!(
                    "product of elements #{j} and #{i} is not block Toeplitz"
                )));
            }
            let p = structured_product(t, u)?;
            if space.insert(&p.coords())? {
                elems.push(p);
            }
        }
        i += 1;
    }
    AlgebraBasis::new(n, shape, space)
}

/// Checks that the subspace is commutative and closed under multiplication.
pub fn check_commutative_algebra(alg: &AlgebraBasis) -> Result<()> {
    let elems = alg.elements();
    for i in 0..elems.len() {
        for j in 0..=i {
            let (t, u) = (&elems[j], &elems[i]);
            if !commute_densely(t, u)? {
                return Err(Error::NotCommutative(format!(
                    "basis elements #{j} and #{i} do not commute"
                )));
            }
            if !product_condition(t, u)? {
                return Err(Error::NotClosed(format!(
                    "product of basis elements #{j} and #{i} is not block Toeplitz"
                )));
            }
            if !alg.contains(&structured_product(t, u)?)? {
                return Err(Error::NotClosed(format!(
                    "product of basis elements #{j} and #{i} leaves the subspace"
                )));
            }
        }
    }
    Ok(())
}

/// All `U ∈ T_n ⊗ O(σ,τ)` whose dense form commutes with every element of `alg`.
///
/// The commutator `U·T − T·U` is linear in the coordinates of `U`, so each
/// basis element `T` contributes `(nd)²` linear equations; the commutant is
/// the kernel of the stacked system.
pub fn commutant_in_bt(alg: &AlgebraBasis) -> Result<AlgebraBasis> {
    let (n, shape) = (alg.n, alg.shape);
    let dim = coord_dim(n, shape);
    let units: Vec<_> = (0..dim)
        .map(|c| {
            let mut unit = vec![ComplexRational::zero(); dim];
            unit[c] = ComplexRational::one();
            BlockToeplitz::from_coords(n, shape, &unit).map(|u| u.to_dense())
        })
        .collect::<Result<_>>()?;
    let mut equations = Subspace::zero(dim);
    for t in alg.elements() {
        let td = t.to_dense();
        let columns: Vec<_> = units
            .iter()
            .map(|e| e.commutator(&td))
            .collect::<Result<_>>()?;
        let entries = td.rows() * td.cols();
        for r in 0..entries {
            let row: Vector = columns.iter().map(|c| c.entries()[r].clone()).collect();
            if row.iter().all(ComplexRational::is_zero) {
                continue;
            }
            equations.insert(&row)?;
            if equations.dim() == dim {
                break;
            }
        }
    }
    AlgebraBasis::new(n, shape, equations.annihilator())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MaximalityCertificate {
    /// The algebra equals its commutant inside `T_n ⊗ O`, hence it is maximal commutative.
    Certified,
    /// The commutant is strictly larger; `witness` commutes with the algebra but lies outside it.
    Inconclusive { witness: BlockToeplitz },
}

impl MaximalityCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, MaximalityCertificate::Certified)
    }
}

/// Certifies maximality of a closed commutative algebra by comparing it with
/// its commutant.
pub fn maximality_certificate(alg: &AlgebraBasis) -> Result<MaximalityCertificate> {
    check_commutative_algebra(alg)?;
    let commutant = commutant_in_bt(alg)?;
    if commutant.space == alg.space {
        return Ok(MaximalityCertificate::Certified);
    }
    let outside: Vec<BlockToeplitz> = commutant
        .elements()
        .into_iter()
        .filter(|u| !alg.contains(u).unwrap_or(true))
        .collect();
    let has_radical_off_diagonal =
        |u: &BlockToeplitz| u.blocks().any(|(j, b)| j != 0 && !b.x().is_zero());
    let witness = outside
        .iter()
        .find(|u| has_radical_off_diagonal(u))
        .or(outside.first())
        .cloned()
        .expect("a strictly larger commutant has a basis vector outside the algebra");
    Ok(MaximalityCertificate::Inconclusive { witness })
}

/// `(A, B) ~ (A′, B′)` iff `A·B′ = A′·B`, for nondegenerate pairs only.
pub fn pairs_equivalent(p: &GeneratorPair, q: &GeneratorPair) -> Result<bool> {
    if !p.is_nondegenerate()? || !q.is_nondegenerate()? {
        return Err(Error::DegeneratePair);
    }
    Ok(p.a.mul(&q.b)? == q.a.mul(&p.b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    fn shape21() -> SchurShape {
        SchurShape::new(2, 1).unwrap()
    }

    fn scalar(v: i64) -> SchurElement {
        SchurElement::scalar(shape21(), ComplexRational::from_int(v))
    }

    fn el(lambda: i64, x: &[i64]) -> SchurElement {
        let rows = x
            .iter()
            .map(|&v| vec![ComplexRational::from_int(v)])
            .collect();
        SchurElement::new(
            shape21(),
            ComplexRational::from_int(lambda),
            DenseMatrix::from_rows(rows).unwrap(),
        )
        .unwrap()
    }

    fn pair(a: SchurElement, b: SchurElement) -> GeneratorPair {
        GeneratorPair::new(a, b).unwrap()
    }

    fn radical_pair() -> GeneratorPair {
        pair(
            SchurElement::radical_unit(shape21(), 0, 0),
            SchurElement::radical_unit(shape21(), 1, 0),
        )
    }

    /// The diagonal-repeat algebra `{diag(T₀, T₀, T₀)}`.
    fn diagonal_repeat() -> AlgebraBasis {
        let s = shape21();
        let gens = [
            BlockToeplitz::identity(3, s),
            BlockToeplitz::block_diagonal(3, SchurElement::radical_unit(s, 0, 0)),
            BlockToeplitz::block_diagonal(3, SchurElement::radical_unit(s, 1, 0)),
        ];
        AlgebraBasis::span_of(3, s, &gens).unwrap()
    }

    #[test]
    fn fab_membership_examples() {
        let s = shape21();
        let t = BlockToeplitz::new(
            3,
            s,
            [
                (0, el(1, &[2, 3])),
                (-1, el(5, &[0, 1])),
                (-2, el(-1, &[1, 1])),
            ],
        )
        .unwrap();
        assert!(fab_membership(&pair(scalar(1), scalar(0)), &t).unwrap());

        let (t1, t2) = (el(3, &[1, 0]), el(-1, &[4, 2]));
        let two = ComplexRational::from_int(2);
        let t = BlockToeplitz::new(
            3,
            s,
            [
                (0, el(7, &[0, 0])),
                (-2, t1.clone()),
                (-1, t2.clone()),
                (1, t1.scale(&two)),
                (2, t2.scale(&two)),
            ],
        )
        .unwrap();
        assert!(fab_membership(&pair(scalar(1), scalar(2)), &t).unwrap());

        let t = BlockToeplitz::new(3, s, [(1, el(1, &[0, 0]))]).unwrap();
        assert!(!fab_membership(&radical_pair(), &t).unwrap());
    }

    #[test]
    fn fab_dimensions() {
        assert_eq!(fab_basis(&pair(scalar(1), scalar(0)), 3).unwrap().dim(), 9);
        assert_eq!(fab_basis(&pair(scalar(1), scalar(2)), 3).unwrap().dim(), 9);
        assert_eq!(fab_basis(&radical_pair(), 3).unwrap().dim(), 11);
        assert!(fab_basis(&radical_pair(), 1).is_err());
    }

    #[test]
    fn fab_basis_elements_are_members() {
        let p = pair(el(2, &[1, -1]), el(0, &[3, 1]));
        let f = fab_basis(&p, 3).unwrap();
        for t in f.elements() {
            assert!(fab_membership(&p, &t).unwrap());
        }
    }

    #[test]
    fn b_algebra_examples() {
        let s = shape21();
        let b = b_algebra_basis(3, s).unwrap();
        assert_eq!(b.dim(), 11);
        assert!(b_membership(&BlockToeplitz::block_diagonal(
            3,
            el(4, &[1, 1])
        )));
        let generic = BlockToeplitz::new(
            3,
            s,
            [
                (0, el(1, &[0, 0])),
                (-1, el(0, &[1, 2])),
                (-2, el(0, &[3, 4])),
                (1, el(0, &[5, 6])),
                (2, el(0, &[7, 8])),
            ],
        )
        .unwrap();
        assert!(b_membership(&generic));
        assert!(b.contains(&generic).unwrap());
        assert!(!b_membership(
            &BlockToeplitz::new(3, s, [(1, el(1, &[0, 0]))]).unwrap()
        ));
    }

    #[test]
    fn closure_examples() {
        let s = shape21();
        let id = algebra_closure(&[BlockToeplitz::identity(3, s)]).unwrap();
        assert_eq!(id.dim(), 1);

        let b = b_algebra_basis(3, s).unwrap();
        assert_eq!(algebra_closure(&b.elements()).unwrap(), b);

        let lower = BlockToeplitz::new(3, s, [(1, scalar(1))]).unwrap();
        let upper = BlockToeplitz::new(3, s, [(-1, scalar(1))]).unwrap();
        assert!(matches!(
            algebra_closure(&[lower, upper]),
            Err(Error::NotCommutative(_))
        ));
        assert_eq!(algebra_closure(&[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn closure_of_single_shift_grows() {
        // The upper shift generates its powers.
        let s = shape21();
        let upper = BlockToeplitz::new(3, s, [(-1, scalar(1))]).unwrap();
        let alg = algebra_closure(&[upper]).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn commutant_examples() {
        let s = shape21();
        let id = AlgebraBasis::span_of(3, s, &[BlockToeplitz::identity(3, s)]).unwrap();
        assert_eq!(commutant_in_bt(&id).unwrap().dim(), 15);

        let b = b_algebra_basis(3, s).unwrap();
        assert_eq!(commutant_in_bt(&b).unwrap(), b);

        let diag = diagonal_repeat();
        let c = commutant_in_bt(&diag).unwrap();
        assert!(c.dim() > diag.dim());
        assert!(c.contains_algebra(&diag).unwrap());
    }

    #[test]
    fn certificates() {
        let f = fab_basis(&pair(scalar(1), scalar(2)), 3).unwrap();
        assert!(maximality_certificate(&f).unwrap().is_certified());
        let b = b_algebra_basis(3, shape21()).unwrap();
        assert!(maximality_certificate(&b).unwrap().is_certified());
        match maximality_certificate(&diagonal_repeat()).unwrap() {
            MaximalityCertificate::Inconclusive { witness } => {
                assert!(witness
                    .blocks()
                    .any(|(j, b)| j != 0 && b.is_radical() && !b.is_zero()));
            }
            MaximalityCertificate::Certified => panic!("diagonal repeat algebra is not maximal"),
        }
    }

    #[test]
    fn certificate_rejects_non_algebras() {
        let s = shape21();
        let lower = BlockToeplitz::new(3, s, [(1, scalar(1))]).unwrap();
        let upper = BlockToeplitz::new(3, s, [(-1, scalar(1))]).unwrap();
        let sp = AlgebraBasis::span_of(3, s, &[lower, upper]).unwrap();
        assert!(maximality_certificate(&sp).is_err());
    }

    #[test]
    fn pair_equivalence_examples() {
        let p = pair(scalar(1), scalar(2));
        let q = pair(scalar(3), scalar(6));
        assert!(pairs_equivalent(&p, &q).unwrap());
        assert_eq!(fab_basis(&p, 3).unwrap(), fab_basis(&q, 3).unwrap());

        let r = pair(scalar(1), scalar(0));
        assert!(!pairs_equivalent(&r, &p).unwrap());
        assert_ne!(fab_basis(&r, 3).unwrap(), fab_basis(&p, 3).unwrap());

        assert_eq!(
            pairs_equivalent(&radical_pair(), &p),
            Err(Error::DegeneratePair)
        );
    }
}

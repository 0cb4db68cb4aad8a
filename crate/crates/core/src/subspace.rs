//! Linear subspaces of an algebra's coordinate space, kept in canonical
//! reduced row-echelon form so that equality is structural.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, InvolutiveAlgebra};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{self, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("vector of length {got} in a space of dimension {expected}")]
    Length { expected: usize, got: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspaces live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How two elements are combined in [`Subspace::product_span`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductMode {
    /// `ab`
    Product,
    /// `ab + ba`
    Jordan,
    /// `ab − ba`
    Lie,
}

impl ProductMode {
    pub fn apply(self, a: &Element, b: &Element) -> Element {
        match self {
            ProductMode::Product => a * b,
            ProductMode::Jordan => a.jordan(b),
            ProductMode::Lie => a.lie(b),
        }
    }
}

/// A subspace with a canonical reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldDescriptor,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: FieldDescriptor, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn full(field: FieldDescriptor, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Subspace { field, ambient, basis }
    }

    /// The whole algebra as a subspace of itself.
    pub fn whole(alg: &InvolutiveAlgebra) -> Self {
        Self::full(alg.field(), alg.dim())
    }

    /// Canonical span of `vectors`.
    pub fn span<'a, I>(field: FieldDescriptor, ambient: usize, vectors: I) -> Result<Self, SubspaceError>
    where
        I: IntoIterator<Item = &'a [Scalar]>,
    {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(SubspaceError::Length { expected: ambient, got: v.len() });
            }
            if v.iter().any(|c| c.descriptor() != field) {
                return Err(SubspaceError::FieldMismatch);
            }
            ech.insert(v);
        }
        Ok(Self::from_echelon(ech))
    }

    /// Span of algebra elements. All elements must belong to `alg`.
    pub fn span_elements<'a, I>(alg: &InvolutiveAlgebra, elements: I) -> Result<Self, SubspaceError>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut ech = Echelon::new(alg.field(), alg.dim());
        for e in elements {
            if e.algebra() != alg {
                return Err(AlgebraError::Mismatch(alg.to_string(), e.algebra().to_string()).into());
            }
            ech.insert(e.coords());
        }
        Ok(Self::from_echelon(ech))
    }

    fn from_echelon(ech: Echelon) -> Self {
        let (field, ambient) = (ech.field(), ech.width());
        Subspace { field, ambient, basis: ech.into_rows() }
    }

    fn echelon(&self) -> Echelon {
        Echelon::from_rref(self.field, self.ambient, self.basis.clone())
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as elements of `alg`.
    pub fn basis_elements(&self, alg: &InvolutiveAlgebra) -> Result<Vec<Element>, SubspaceError> {
        self.check_algebra(alg)?;
        self.basis.iter().map(|v| alg.devectorize(v).map_err(Into::into)).collect()
    }

    fn check_algebra(&self, alg: &InvolutiveAlgebra) -> Result<(), SubspaceError> {
        if alg.dim() != self.ambient {
            return Err(SubspaceError::AmbientMismatch(self.ambient, alg.dim()));
        }
        if alg.field() != self.field {
            return Err(SubspaceError::FieldMismatch);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(SubspaceError::FieldMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, SubspaceError> {
        if v.len() != self.ambient {
            return Err(SubspaceError::Length { expected: self.ambient, got: v.len() });
        }
        if self.is_full() {
            return Ok(true);
        }
        Ok(self.echelon().contains(v))
    }

    /// Membership of an element; elements of a different-sized algebra are an error.
    pub fn contains_element(&self, e: &Element) -> Result<bool, SubspaceError> {
        self.contains(e.coords())
    }

    /// Coefficients of `v` in terms of [`basis`](Self::basis), if `v` lies in the subspace.
    /// With a reduced basis these are just the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, SubspaceError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.basis
                .iter()
                .map(|row| v[row.iter().position(|c| !c.is_zero()).expect("nonzero row")].clone())
                .collect(),
        ))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        self.check_compatible(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        let ech = other.echelon();
        Ok(self.basis.iter().all(|v| ech.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_compatible(other)?;
        let mut ech = self.echelon();
        for v in &other.basis {
            if ech.is_full() {
                break;
            }
            ech.insert(v);
        }
        Ok(Self::from_echelon(ech))
    }

    /// Span of `φ(a, b)` over basis pairs of `a ∈ self`, `b ∈ other`. Bilinearity of
    /// every mode makes basis pairs sufficient.
    pub fn product_span(
        &self,
        other: &Subspace,
        alg: &InvolutiveAlgebra,
        mode: ProductMode,
    ) -> Result<Subspace, SubspaceError> {
        self.check_algebra(alg)?;
        other.check_algebra(alg)?;
        let left = self.basis_elements(alg)?;
        let right = other.basis_elements(alg)?;
        let mut ech = Echelon::new(alg.field(), alg.dim());
        'outer: for a in &left {
            for b in &right {
                ech.insert(mode.apply(a, b).coords());
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
        Ok(Self::from_echelon(ech))
    }

    /// `{r : ra = ar for every generator a}`.
    pub fn centralizer(alg: &InvolutiveAlgebra, generators: &[Element]) -> Result<Subspace, SubspaceError> {
        let basis = alg.basis();
        let d = alg.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for g in generators {
            if g.algebra() != alg {
                return Err(AlgebraError::Mismatch(alg.to_string(), g.algebra().to_string()).into());
            }
            // Column b of the map r ↦ rg − gr is the image of the b-th basis element.
            let cols: Vec<Element> = basis.iter().map(|b| b.lie(g)).collect();
            for i in 0..d {
                rows.push(cols.iter().map(|c| c.coords()[i].clone()).collect());
            }
        }
        let null = linalg::nullspace(alg.field(), &rows, d);
        Self::span(alg.field(), d, null.iter().map(Vec::as_slice))
    }

    /// Linear functionals vanishing exactly on this subspace; membership becomes a
    /// handful of dot products, which is much cheaper for repeated queries.
    pub fn membership_test(&self) -> MembershipTest {
        let functionals = linalg::nullspace(self.field, &self.basis, self.ambient);
        MembershipTest { ambient: self.ambient, functionals }
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Vec<String>> =
            self.basis.iter().map(|v| v.iter().map(Scalar::to_string).collect()).collect();
        json!({ "ambient": self.ambient, "dim": self.dim(), "basis": basis })
    }
}

/// Precomputed membership oracle for one subspace, see [`Subspace::membership_test`].
#[derive(Debug, Clone)]
pub struct MembershipTest {
    ambient: usize,
    functionals: Vec<Vec<Scalar>>,
}

impl MembershipTest {
    pub fn contains(&self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.functionals.iter().all(|f| {
            let mut acc: Option<Scalar> = None;
            for (a, b) in f.iter().zip(v) {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let t = a * b;
                acc = Some(match acc {
                    Some(x) => x + t,
                    None => t,
                });
            }
            acc.is_none_or(|x| x.is_zero())
        })
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subspace of dimension {} in F^{}", self.dim(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Involution;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    fn span(vs: &[Vec<Scalar>], d: usize) -> Subspace {
        Subspace::span(q(), d, vs.iter().map(Vec::as_slice)).unwrap()
    }

    #[test]
    fn span_examples() {
        let s = span(&[v(&[1, 1]), v(&[2, 2])], 2);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 1])]);
        assert_eq!(span(&[], 3).dim(), 0);
        assert_eq!(span(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])], 3).dim(), 2);
        assert_eq!(
            Subspace::span(q(), 3, [v(&[1, 0]).as_slice()]),
            Err(SubspaceError::Length { expected: 3, got: 2 })
        );
    }

    #[test]
    fn sum_and_compare() {
        let a = span(&[v(&[1, 0, 1])], 3);
        let b = span(&[v(&[0, 1, 0])], 3);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.sum(&Subspace::zero(q(), 3)).unwrap(), a);
        let ab = a.sum(&b).unwrap();
        assert_eq!(ab.dim(), 2);
        assert!(a.is_subspace_of(&ab).unwrap());
        assert!(!ab.is_subspace_of(&a).unwrap());
        assert!(ab.contains(&v(&[2, 3, 2])).unwrap());
        assert_eq!(ab.coordinates(&v(&[2, 3, 2])).unwrap(), Some(v(&[2, 3])));
        assert!(matches!(a.sum(&Subspace::zero(q(), 2)), Err(SubspaceError::AmbientMismatch(3, 2))));
    }

    #[test]
    fn centralizer_of_everything_is_scalars() {
        let alg = InvolutiveAlgebra::matrices(q(), 3, Involution::Transpose).unwrap();
        let c = Subspace::centralizer(&alg, &alg.basis()).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains_element(&alg.one()).unwrap());
        assert_eq!(Subspace::centralizer(&alg, &[]).unwrap().dim(), 9);
    }

    #[test]
    fn product_modes() {
        let alg = InvolutiveAlgebra::matrices(q(), 2, Involution::Transpose).unwrap();
        let r = Subspace::whole(&alg);
        assert_eq!(r.product_span(&r, &alg, ProductMode::Product).unwrap().dim(), 4);
        // Commutators of M2 span the trace-zero matrices.
        assert_eq!(r.product_span(&r, &alg, ProductMode::Lie).unwrap().dim(), 3);
        assert_eq!(r.product_span(&r, &alg, ProductMode::Jordan).unwrap().dim(), 4);
    }

    #[test]
    fn membership_test_agrees() {
        let s = span(&[v(&[1, 0, 1]), v(&[0, 1, 1])], 3);
        let t = s.membership_test();
        for w in [v(&[1, 1, 2]), v(&[0, 0, 1]), v(&[0, 0, 0]), v(&[3, -1, 2])] {
            assert_eq!(t.contains(&w), s.contains(&w).unwrap());
        }
        assert!(Subspace::full(q(), 2).membership_test().contains(&v(&[5, 7])));
    }

    #[test]
    fn json_shape() {
        let s = span(&[v(&[1, 2])], 2);
        assert_eq!(s.to_json(), serde_json::json!({"ambient": 2, "dim": 1, "basis": [["1", "2"]]}));
    }
}

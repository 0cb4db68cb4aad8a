//! Concrete algebras with involution: `M_n(F)` under the transpose or the
//! symplectic involution, and the quaternions under conjugation.
//!
//! Elements carry their coordinates in a single fixed convention: row-major
//! matrix entries, or the coefficients of `1, i, j, k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{FieldDescriptor, FieldError, Scalar};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("the symplectic involution needs an even matrix size, got {0}")]
    SymplecticOddSize(usize),
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error("involution {involution:?} does not apply to {kind:?}")]
    IncompatibleInvolution { kind: AlgebraKind, involution: Involution },
    #[error("algebra mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("operation {0} is only defined for matrix algebras")]
    Unsupported(&'static str),
    #[error("matrix unit e({0},{1}) is out of range")]
    UnitOutOfRange(usize, usize),
    #[error("bad algebra spec {0:?} (expected mat:<n>:<transpose|symplectic> or quat)")]
    BadSpec(String),
    #[error("bad element JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    FullMatrix(usize),
    Quaternions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    Transpose,
    /// `X ↦ J Xᵗ J⁻¹` with `J = [[0, I_m], [−I_m, 0]]`.
    Symplectic,
    QuaternionConjugation,
}

/// A validated finite-dimensional algebra together with its involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvolutiveAlgebra {
    field: FieldDescriptor,
    kind: AlgebraKind,
    involution: Involution,
}

/// Returned by [`Element::right_inverse`] for singular elements.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("element is not invertible")]
pub struct NotInvertible;

impl InvolutiveAlgebra {
    pub fn new(field: FieldDescriptor, kind: AlgebraKind, involution: Involution) -> Result<Self, AlgebraError> {
        match (kind, involution) {
            (AlgebraKind::FullMatrix(0), _) => return Err(AlgebraError::EmptyMatrix),
            (AlgebraKind::FullMatrix(n), Involution::Symplectic) if n % 2 == 1 => {
                return Err(AlgebraError::SymplecticOddSize(n))
            }
            (AlgebraKind::FullMatrix(_), Involution::Transpose | Involution::Symplectic) => {}
            (AlgebraKind::Quaternions, Involution::QuaternionConjugation) => {}
            _ => return Err(AlgebraError::IncompatibleInvolution { kind, involution }),
        }
        Ok(InvolutiveAlgebra { field, kind, involution })
    }

    pub fn matrices(field: FieldDescriptor, n: usize, involution: Involution) -> Result<Self, AlgebraError> {
        Self::new(field, AlgebraKind::FullMatrix(n), involution)
    }

    pub fn quaternions(field: FieldDescriptor) -> Self {
        InvolutiveAlgebra { field, kind: AlgebraKind::Quaternions, involution: Involution::QuaternionConjugation }
    }

    /// Parses `mat:<n>:transpose`, `mat:<n>:symplectic` or `quat`.
    pub fn parse_spec(spec: &str, field: FieldDescriptor) -> Result<Self, AlgebraError> {
        let bad = || AlgebraError::BadSpec(spec.to_string());
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["quat"] => Ok(Self::quaternions(field)),
            ["mat", n, inv] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                let inv = match *inv {
                    "transpose" | "t" => Involution::Transpose,
                    "symplectic" | "sp" => Involution::Symplectic,
                    _ => return Err(bad()),
                };
                Self::matrices(field, n, inv)
            }
            _ => Err(bad()),
        }
    }

    /// Inverse of [`parse_spec`](Self::parse_spec).
    pub fn spec(&self) -> String {
        match (self.kind, self.involution) {
            (AlgebraKind::Quaternions, _) => "quat".to_string(),
            (AlgebraKind::FullMatrix(n), Involution::Symplectic) => format!("mat:{n}:symplectic"),
            (AlgebraKind::FullMatrix(n), _) => format!("mat:{n}:transpose"),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    /// Matrix size `n`, or `None` for the quaternions.
    pub fn order(&self) -> Option<usize> {
        match self.kind {
            AlgebraKind::FullMatrix(n) => Some(n),
            AlgebraKind::Quaternions => None,
        }
    }

    /// Dimension of the underlying vector space.
    pub fn dim(&self) -> usize {
        match self.kind {
            AlgebraKind::FullMatrix(n) => n * n,
            AlgebraKind::Quaternions => 4,
        }
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self.kind, AlgebraKind::FullMatrix(_))
    }

    pub fn zero(&self) -> Element {
        Element { algebra: *self, coords: vec![self.field.zero(); self.dim()] }
    }

    pub fn one(&self) -> Element {
        match self.kind {
            AlgebraKind::FullMatrix(n) => {
                let mut e = self.zero();
                for i in 0..n {
                    e.coords[i * n + i] = self.field.one();
                }
                e
            }
            AlgebraKind::Quaternions => self.basis_element(0),
        }
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.one().scale(c)
    }

    /// The `i`-th coordinate basis vector.
    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coords[i] = self.field.one();
        e
    }

    pub fn basis(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Matrix unit `e_{ij}`, 1-based like the usual notation.
    pub fn unit(&self, i: usize, j: usize) -> Result<Element, AlgebraError> {
        let n = self.order().ok_or(AlgebraError::Unsupported("unit"))?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(AlgebraError::UnitOutOfRange(i, j));
        }
        Ok(self.basis_element((i - 1) * n + (j - 1)))
    }

    /// Shorthand for [`unit`](Self::unit) in code that already knows the indices are valid.
    pub fn e(&self, i: usize, j: usize) -> Element {
        self.unit(i, j).expect("matrix unit in range")
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::Length { expected: self.dim(), got: coords.len() });
        }
        if let Some(bad) = coords.iter().find(|c| c.descriptor() != self.field) {
            return Err(FieldError::Mismatch(self.field, bad.descriptor()).into());
        }
        Ok(Element { algebra: *self, coords })
    }

    /// Alias of [`element`](Self::element) matching the vectorize/devectorize pairing.
    pub fn devectorize(&self, coords: &[Scalar]) -> Result<Element, AlgebraError> {
        self.element(coords.to_vec())
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<Element, AlgebraError> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn from_rows(&self, rows: &[Vec<i64>]) -> Result<Element, AlgebraError> {
        self.from_ints(&rows.concat())
    }

    /// Element with independent uniform integer coordinates in `[-bound, bound]`.
    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G, bound: i64) -> Element {
        let coords = (0..self.dim()).map(|_| self.field.from_i64(rng.gen_range(-bound..=bound))).collect();
        Element { algebra: *self, coords }
    }

    fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        match self.kind {
            AlgebraKind::FullMatrix(n) => {
                let mut out = vec![self.field.zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        let aik = &a[i * n + k];
                        if aik.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let bkj = &b[k * n + j];
                            if !bkj.is_zero() {
                                out[i * n + j] = &out[i * n + j] + &(aik * bkj);
                            }
                        }
                    }
                }
                out
            }
            AlgebraKind::Quaternions => {
                let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
                let (b0, b1, b2, b3) = (&b[0], &b[1], &b[2], &b[3]);
                vec![
                    a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                    a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                    a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                    a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
                ]
            }
        }
    }

    fn star_coords(&self, a: &[Scalar]) -> Vec<Scalar> {
        match (self.kind, self.involution) {
            (AlgebraKind::FullMatrix(n), Involution::Transpose) => {
                (0..n * n).map(|idx| a[(idx % n) * n + idx / n].clone()).collect()
            }
            (AlgebraKind::FullMatrix(n), Involution::Symplectic) => {
                // Blockwise [[A, B], [C, D]]* = [[Dᵗ, −Bᵗ], [−Cᵗ, Aᵗ]].
                let m = n / 2;
                let swap = |t: usize| (t + m) % n;
                (0..n * n)
                    .map(|idx| {
                        let (i, j) = (idx / n, idx % n);
                        let v = &a[swap(j) * n + swap(i)];
                        if (i < m) == (j < m) {
                            v.clone()
                        } else {
                            -v
                        }
                    })
                    .collect()
            }
            (AlgebraKind::Quaternions, _) => vec![a[0].clone(), -&a[1], -&a[2], -&a[3]],
            (AlgebraKind::FullMatrix(_), Involution::QuaternionConjugation) => {
                unreachable!("rejected at construction")
            }
        }
    }

    fn check_same(&self, other: &InvolutiveAlgebra) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch(self.to_string(), other.to_string()))
        }
    }

    /// Parses the matrix JSON `{"n": .., "entries": [[..]]}` or the quaternion
    /// JSON `{"coeffs": [..]}`; scalars are strings or integers.
    pub fn element_from_json(&self, v: &Value) -> Result<Element, AlgebraError> {
        let bad = |m: &str| AlgebraError::BadJson(m.to_string());
        let scalar = |s: &Value| -> Result<Scalar, AlgebraError> {
            match s {
                Value::String(t) => Ok(self.field.parse_scalar(t)?),
                Value::Number(n) => Ok(self.field.parse_scalar(&n.to_string())?),
                _ => Err(bad("scalar must be a string or integer")),
            }
        };
        match self.kind {
            AlgebraKind::FullMatrix(n) => {
                let got_n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing \"n\""))?;
                if got_n as usize != n {
                    return Err(bad(&format!("expected n = {n}, got {got_n}")));
                }
                let rows = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing \"entries\""))?;
                if rows.len() != n {
                    return Err(bad("wrong number of rows"));
                }
                let mut coords = Vec::with_capacity(n * n);
                for row in rows {
                    let row = row.as_array().ok_or_else(|| bad("row must be an array"))?;
                    if row.len() != n {
                        return Err(bad("wrong number of columns"));
                    }
                    for s in row {
                        coords.push(scalar(s)?);
                    }
                }
                self.element(coords)
            }
            AlgebraKind::Quaternions => {
                let cs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing \"coeffs\""))?;
                self.element(cs.iter().map(scalar).collect::<Result<_, _>>()?)
            }
        }
    }

    /// Parses a signed sum of short names such as `e11-e22` or `-i+k`. Names are
    /// `e12`, `e1,2`, `0`, `1`, and for quaternions `i`, `j`, `k`.
    pub fn parse_element_name(&self, text: &str) -> Result<Element, AlgebraError> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut total = self.zero();
        let mut rest = text.as_str();
        loop {
            let (negate, body) = match rest.as_bytes().first() {
                Some(b'-') => (true, &rest[1..]),
                Some(b'+') => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = self.parse_unit_name(&body[..end])?;
            total = if negate { total - term } else { total + term };
            rest = &body[end..];
            if rest.is_empty() {
                return Ok(total);
            }
        }
    }

    fn parse_unit_name(&self, name: &str) -> Result<Element, AlgebraError> {
        let bad = || AlgebraError::BadJson(format!("unknown element name {name:?}"));
        match name {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        match self.kind {
            AlgebraKind::Quaternions => match name {
                "i" => Ok(self.basis_element(1)),
                "j" => Ok(self.basis_element(2)),
                "k" => Ok(self.basis_element(3)),
                _ => Err(bad()),
            },
            AlgebraKind::FullMatrix(_) => {
                let rest = name.strip_prefix('e').ok_or_else(bad)?;
                let (i, j) = match rest.split_once(',') {
                    Some((i, j)) => (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?),
                    None if rest.len() == 2 => {
                        let d: Vec<usize> =
                            rest.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
                        (d[0], d[1])
                    }
                    None => return Err(bad()),
                };
                self.unit(i, j)
            }
        }
    }
}

impl fmt::Display for InvolutiveAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.spec(), self.field)
    }
}

/// An element of an [`InvolutiveAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: InvolutiveAlgebra,
    coords: Vec<Scalar>,
}

impl Element {
    pub fn algebra(&self) -> &InvolutiveAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn vectorize(&self) -> Vec<Scalar> {
        self.coords.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Entry `(i, j)` of a matrix element, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        let n = self.algebra.order().expect("entry() on a matrix element");
        &self.coords[(i - 1) * n + (j - 1)]
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Element { algebra: self.algebra, coords })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Element { algebra: self.algebra, coords })
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        Ok(Element { algebra: self.algebra, coords: self.algebra.mul_coords(&self.coords, &other.coords) })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { algebra: self.algebra, coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Element {
        self.scale(&self.algebra.field.from_i64(c))
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Element, AlgebraError> {
        if c.descriptor() != self.algebra.field {
            return Err(FieldError::Mismatch(self.algebra.field, c.descriptor()).into());
        }
        Ok(self.scale(c))
    }

    /// The involution applied to this element.
    pub fn star(&self) -> Element {
        Element { algebra: self.algebra, coords: self.algebra.star_coords(&self.coords) }
    }

    pub fn is_symmetric(&self) -> bool {
        self.star() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.star() == -self
    }

    /// True when the element is a scalar multiple of 1.
    pub fn is_scalar(&self) -> bool {
        let c = match self.algebra.kind {
            AlgebraKind::FullMatrix(_) => self.coords[0].clone(),
            AlgebraKind::Quaternions => self.coords[0].clone(),
        };
        *self == self.algebra.scalar(&c)
    }

    /// `r = s + k` with `s = ½(r + r*)` symmetric and `k = ½(r − r*)` skew.
    pub fn sk_split(&self) -> (Element, Element) {
        let half = self.algebra.field.from_ratio(1, 2).expect("characteristic is not 2");
        let st = self.star();
        ((self + &st).scale(&half), (self - &st).scale(&half))
    }

    pub fn lie(&self, other: &Element) -> Element {
        &(self * other) - &(other * self)
    }

    pub fn jordan(&self, other: &Element) -> Element {
        &(self * other) + &(other * self)
    }

    pub fn checked_lie(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn checked_jordan(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.checked_mul(other)?.checked_add(&other.checked_mul(self)?)
    }

    pub fn trace(&self) -> Result<Scalar, AlgebraError> {
        let n = self.algebra.order().ok_or(AlgebraError::Unsupported("trace"))?;
        Ok((0..n).fold(self.algebra.field.zero(), |acc, i| acc + &self.coords[i * n + i]))
    }

    /// Solves `self · z = 1`. The algebras here are finite-dimensional, so a right
    /// inverse is automatically two-sided.
    pub fn right_inverse(&self) -> Result<Element, NotInvertible> {
        let alg = &self.algebra;
        // Columns of the left-multiplication operator x ↦ self·x.
        let columns: Vec<Vec<Scalar>> =
            alg.basis().iter().map(|b| alg.mul_coords(&self.coords, b.coords())).collect();
        let coords = linalg::solve_combination(alg.field, &columns, alg.one().coords()).ok_or(NotInvertible)?;
        let z = Element { algebra: *alg, coords };
        if (self * &z) == alg.one() {
            Ok(z)
        } else {
            Err(NotInvertible)
        }
    }

    pub fn to_json(&self) -> Value {
        match self.algebra.kind {
            AlgebraKind::FullMatrix(n) => {
                let entries: Vec<Vec<String>> =
                    self.coords.chunks(n).map(|row| row.iter().map(Scalar::to_string).collect()).collect();
                json!({ "n": n, "entries": entries })
            }
            AlgebraKind::Quaternions => {
                let coeffs: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
                json!({ "coeffs": coeffs })
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.algebra.kind {
            AlgebraKind::FullMatrix(n) => {
                let rows: Vec<String> = self
                    .coords
                    .chunks(n)
                    .map(|row| row.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                write!(f, "[{}]", rows.join("; "))
            }
            AlgebraKind::Quaternions => {
                let c = &self.coords;
                write!(f, "{} + {}i + {}j + {}k", c[0], c[1], c[2], c[3])
            }
        }
    }
}

// Operator forms panic on mismatched algebras; the `checked_*` methods report it.
macro_rules! elem_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("algebra mismatch")
            }
        }
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$checked(&rhs).expect("algebra mismatch")
            }
        }
        impl $trait<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("algebra mismatch")
            }
        }
    };
}

elem_binop!(Add, add, checked_add);
elem_binop!(Sub, sub, checked_sub);
elem_binop!(Mul, mul, checked_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { algebra: self.algebra, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

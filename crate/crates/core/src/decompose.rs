//! Constructive decompositions with machine-checkable certificates.
//!
//! Each decomposer takes a witness pair `(x, y)` whose commutator (or Jordan
//! product) `c` is invertible, sets `w = (c⁻¹ r)*` and splits `w = s + k`. The
//! target is then `r = c w*`, which expands into short monomials in `S` or `K`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, InvolutiveAlgebra, Involution};
use crate::field::FieldDescriptor;
use crate::linalg;
use crate::structure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("{combination} is not invertible")]
    NotInvertible { combination: &'static str },
    #[error("{role} must be symmetric")]
    NotSymmetric { role: &'static str },
    #[error("{role} must be skew")]
    NotSkew { role: &'static str },
    #[error("decomposition obstructed: {0}")]
    Obstructed(String),
    #[error("unknown scheme {0:?}; known: s3, s2, k_plus_k2, k_plus_k2_k3")]
    UnknownScheme(String),
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `x s y` has no expression as a sum of products of two symmetric elements.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("x s y = {product} is not in S^2")]
pub struct NotInS2 {
    pub product: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `r = λ + μ + ν` in `S^3`: one `S` term, two products of two, two of three.
    S3,
    /// `r = λ + Σ a_i b_i` in `S^2` with at most `M + 4` two-factor products.
    S2,
    /// `r ∈ K + K^2` from `x, y ∈ K` with `xy + yx` invertible and `xSy ⊆ K^2`.
    KPlusK2,
    /// `r ∈ K + K^2 + K^3` from `x, y ∈ K` with `xy − yx` invertible.
    KPlusK2K3,
}

impl Scheme {
    pub fn parse(name: &str) -> Result<Self, DecomposeError> {
        match name {
            "s3" | "s3_bounded" => Ok(Scheme::S3),
            "s2" | "s2_bounded" => Ok(Scheme::S2),
            "k_plus_k2" => Ok(Scheme::KPlusK2),
            "k_plus_k2_k3" => Ok(Scheme::KPlusK2K3),
            _ => Err(DecomposeError::UnknownScheme(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::S3 => "s3",
            Scheme::S2 => "s2",
            Scheme::KPlusK2 => "k_plus_k2",
            Scheme::KPlusK2K3 => "k_plus_k2_k3",
        }
    }

    fn factor_tag(&self) -> Tag {
        match self {
            Scheme::S3 | Scheme::S2 => Tag::S,
            Scheme::KPlusK2 | Scheme::KPlusK2K3 => Tag::K,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    S,
    K,
    Scalar,
}

impl Tag {
    fn name(&self) -> &'static str {
        match self {
            Tag::S => "S",
            Tag::K => "K",
            Tag::Scalar => "Scalar",
        }
    }

    fn parse(s: &str) -> Option<Tag> {
        match s {
            "S" => Some(Tag::S),
            "K" => Some(Tag::K),
            "Scalar" => Some(Tag::Scalar),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub tag: Tag,
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub factors: Vec<Factor>,
}

impl Monomial {
    fn new(tag: Tag, values: Vec<Element>) -> Self {
        Monomial { factors: values.into_iter().map(|value| Factor { tag, value }).collect() }
    }

    pub fn product(&self) -> Element {
        let mut it = self.factors.iter();
        let first = it.next().expect("monomials are nonempty").value.clone();
        it.fold(first, |acc, f| acc * &f.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessData {
    pub x: Element,
    pub y: Element,
    /// Inverse of the combination the scheme uses.
    pub z: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub scheme: Scheme,
    pub target: Element,
    pub witness: WitnessData,
    /// Size bound of the inner dictionary decomposition (`M` for `s2`).
    pub m: Option<usize>,
    pub terms: Vec<Monomial>,
}

impl Certificate {
    pub fn algebra(&self) -> &InvolutiveAlgebra {
        self.target.algebra()
    }

    pub fn recompose(&self) -> Element {
        self.terms.iter().fold(self.algebra().zero(), |acc, t| acc + t.product())
    }

    pub fn to_json(&self) -> Value {
        let alg = self.algebra();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let factors: Vec<Value> =
                    t.factors.iter().map(|f| json!({ "tag": f.tag.name(), "value": f.value.to_json() })).collect();
                json!({ "factors": factors })
            })
            .collect();
        json!({
            "scheme": self.scheme.name(),
            "algebra": alg.spec(),
            "field": alg.field().spec(),
            "target": self.target.to_json(),
            "witness": {
                "x": self.witness.x.to_json(),
                "y": self.witness.y.to_json(),
                "z": self.witness.z.to_json(),
            },
            "m": self.m,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Certificate, DecomposeError> {
        let bad = |m: &str| DecomposeError::BadCertificate(m.to_string());
        let text = |key: &str| v.get(key).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing \"{key}\"")));
        let scheme = Scheme::parse(text("scheme")?)?;
        let field = FieldDescriptor::parse_spec(text("field")?).map_err(|e| bad(&e.to_string()))?;
        let alg = InvolutiveAlgebra::parse_spec(text("algebra")?, field)?;
        let elem = |x: Option<&Value>, what: &str| -> Result<Element, DecomposeError> {
            Ok(alg.element_from_json(x.ok_or_else(|| bad(&format!("missing {what}")))?)?)
        };
        let target = elem(v.get("target"), "target")?;
        let w = v.get("witness").ok_or_else(|| bad("missing \"witness\""))?;
        let witness = WitnessData {
            x: elem(w.get("x"), "witness x")?,
            y: elem(w.get("y"), "witness y")?,
            z: elem(w.get("z"), "witness z")?,
        };
        let m = match v.get("m") {
            None | Some(Value::Null) => None,
            Some(m) => Some(m.as_u64().ok_or_else(|| bad("\"m\" must be an integer"))? as usize),
        };
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing \"terms\""))? {
            let fs = t.get("factors").and_then(Value::as_array).ok_or_else(|| bad("term without \"factors\""))?;
            let mut factors = Vec::new();
            for f in fs {
                let tag = f.get("tag").and_then(Value::as_str).and_then(Tag::parse).ok_or_else(|| bad("bad tag"))?;
                factors.push(Factor { tag, value: elem(f.get("value"), "factor value")? });
            }
            terms.push(Monomial { factors });
        }
        Ok(Certificate { scheme, target, witness, m, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid,
    Violation(String),
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

impl fmt::Display for CertificateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateVerdict::Valid => f.write_str("valid"),
            CertificateVerdict::Violation(m) => write!(f, "invalid: {m}"),
        }
    }
}

/// Re-checks a certificate from scratch: factor tags, scheme bounds, the witness
/// inverse and exact recomposition.
pub fn verify_certificate(cert: &Certificate) -> CertificateVerdict {
    use CertificateVerdict::Violation;
    let alg = cert.algebra();
    let w = &cert.witness;
    if [&w.x, &w.y, &w.z].iter().any(|e| e.algebra() != alg)
        || cert.terms.iter().flat_map(|t| &t.factors).any(|f| f.value.algebra() != alg)
    {
        return Violation("elements from different algebras".into());
    }
    for (i, t) in cert.terms.iter().enumerate() {
        if t.factors.is_empty() || t.factors.len() > 3 {
            return Violation(format!("term {i} has {} factors", t.factors.len()));
        }
        for f in &t.factors {
            let truthful = match f.tag {
                Tag::S => f.value.is_symmetric(),
                Tag::K => f.value.is_skew(),
                Tag::Scalar => f.value.is_scalar(),
            };
            if !truthful {
                return Violation(
                    match f.tag {
                        Tag::S => "factor not symmetric",
                        Tag::K => "factor not skew",
                        Tag::Scalar => "factor not scalar",
                    }
                    .into(),
                );
            }
        }
    }
    let expected = cert.scheme.factor_tag();
    if cert.terms.iter().flat_map(|t| &t.factors).any(|f| f.tag != expected) {
        return Violation(format!("scheme {} only allows {} factors", cert.scheme, expected.name()));
    }
    let combination = match cert.scheme {
        Scheme::KPlusK2 => w.x.jordan(&w.y),
        _ => w.x.lie(&w.y),
    };
    if &combination * &w.z != alg.one() {
        return Violation("witness z is not the inverse of the combination".into());
    }
    if let Some(msg) = bound_violation(cert) {
        return Violation(msg);
    }
    if cert.recompose() != cert.target {
        return Violation("sum mismatch".into());
    }
    CertificateVerdict::Valid
}

fn bound_violation(cert: &Certificate) -> Option<String> {
    let lengths: Vec<usize> = cert.terms.iter().map(|t| t.factors.len()).collect();
    let fits = |pattern: &[usize]| {
        lengths.len() <= pattern.len() && {
            let mut sorted = lengths.clone();
            sorted.sort_unstable();
            sorted.iter().zip(pattern).all(|(a, b)| a <= b)
        }
    };
    match cert.scheme {
        Scheme::S3 if !fits(&[1, 2, 2, 3, 3]) => Some(format!("s3 bound exceeded: term lengths {lengths:?}")),
        Scheme::KPlusK2K3 if !fits(&[1, 2, 2, 3]) => {
            Some(format!("k_plus_k2_k3 bound exceeded: term lengths {lengths:?}"))
        }
        Scheme::S2 | Scheme::KPlusK2 => {
            let Some(m) = cert.m else {
                return Some(format!("{} certificate without m", cert.scheme));
            };
            let extra = if cert.scheme == Scheme::S2 { 4 } else { 2 };
            let ones = lengths.iter().filter(|&&l| l == 1).count();
            let twos = lengths.iter().filter(|&&l| l == 2).count();
            if ones > 1 || twos > m + extra || ones + twos != lengths.len() {
                Some(format!("{} bound exceeded: term lengths {lengths:?} with m = {m}", cert.scheme))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Reproducible pseudo-random target with entries in `[-9, 9]`.
pub fn random_target(alg: &InvolutiveAlgebra, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    alg.random_element(&mut rng, 9)
}

/// Writes `target` as `Σ_i b_i c_i` over products of `basis` elements. Products
/// `b_i b_j` are solved for exactly and grouped by left factor, so at most
/// `basis.len()` pairs come back and zero pairs are dropped.
fn dictionary_solve(basis: &[Element], target: &Element) -> Option<Vec<(Element, Element)>> {
    let alg = target.algebra();
    let gens: Vec<Vec<_>> =
        basis.iter().flat_map(|a| basis.iter().map(move |b| (a * b).vectorize())).collect();
    let coeffs = linalg::solve_combination(alg.field(), &gens, target.coords())?;
    let n = basis.len();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        let right = basis
            .iter()
            .enumerate()
            .fold(alg.zero(), |acc, (j, b)| acc + b.scale(&coeffs[i * n + j]));
        if !right.is_zero() {
            out.push((a.clone(), right));
        }
    }
    Some(out)
}

fn require(e: &Element, role: &'static str, symmetric: bool) -> Result<(), DecomposeError> {
    match (symmetric, symmetric && e.is_symmetric() || !symmetric && e.is_skew()) {
        (_, true) => Ok(()),
        (true, false) => Err(DecomposeError::NotSymmetric { role }),
        (false, false) => Err(DecomposeError::NotSkew { role }),
    }
}

fn same_algebra(alg: &InvolutiveAlgebra, es: &[&Element]) -> Result<(), DecomposeError> {
    for e in es {
        if e.algebra() != alg {
            return Err(AlgebraError::Mismatch(alg.to_string(), e.algebra().to_string()).into());
        }
    }
    Ok(())
}

/// Solves `x s y = Σ a_i b_i` with `a_i, b_i ∈ S` over the products of an `S`
/// basis.
pub fn generic_xsy_s2(
    alg: &InvolutiveAlgebra,
    x: &Element,
    y: &Element,
    s: &Element,
) -> Result<Vec<(Element, Element)>, DecomposeError> {
    same_algebra(alg, &[x, y, s])?;
    require(x, "x", true)?;
    require(y, "y", true)?;
    require(s, "s", true)?;
    let product = &(x * s) * y;
    let basis = structure::s_k_bases(alg).0.basis_elements(alg).expect("same algebra");
    dictionary_solve(&basis, &product)
        .ok_or_else(|| DecomposeError::Obstructed(NotInS2 { product }.to_string()))
}

/// Supplies the bounded sum `x s y = Σ_{i ≤ M} a_i b_i` used by [`decompose_s2`].
pub trait XsyDecomposer {
    fn name(&self) -> &'static str;
    /// The `M` of the resulting certificate.
    fn bound(&self, alg: &InvolutiveAlgebra) -> usize;
    fn decompose(&self, x: &Element, y: &Element, s: &Element) -> Result<Vec<(Element, Element)>, DecomposeError>;
}

/// Exact solve over the `S`-basis product dictionary; `M = dim S`.
pub struct GenericXsy;

impl XsyDecomposer for GenericXsy {
    fn name(&self) -> &'static str {
        "generic"
    }

    fn bound(&self, alg: &InvolutiveAlgebra) -> usize {
        structure::s_k_bases(alg).0.dim()
    }

    fn decompose(&self, x: &Element, y: &Element, s: &Element) -> Result<Vec<(Element, Element)>, DecomposeError> {
        generic_xsy_s2(x.algebra(), x, y, s)
    }
}

/// Closed form for `x = e11 − e22`, `y = e12 + e21` in `M_2` with the transpose:
/// for `s = a e11 + b (e12 + e21) + d e22`,
/// `x s y = b (e11 − e22) · 1 + (a e11 − d e22)(e12 + e21)`, so `M = 2`.
pub struct ClosedFormM2Transpose;

impl ClosedFormM2Transpose {
    pub fn applies(x: &Element, y: &Element) -> bool {
        let alg = x.algebra();
        alg.order() == Some(2)
            && alg.involution() == Involution::Transpose
            && *x == alg.e(1, 1) - alg.e(2, 2)
            && *y == alg.e(1, 2) + alg.e(2, 1)
    }
}

impl XsyDecomposer for ClosedFormM2Transpose {
    fn name(&self) -> &'static str {
        "closed_form_m2_transpose"
    }

    fn bound(&self, _alg: &InvolutiveAlgebra) -> usize {
        2
    }

    fn decompose(&self, x: &Element, y: &Element, s: &Element) -> Result<Vec<(Element, Element)>, DecomposeError> {
        if !Self::applies(x, y) {
            return Err(DecomposeError::Obstructed(
                "closed form needs x = e11 - e22, y = e12 + e21 in M_2 with the transpose".into(),
            ));
        }
        require(s, "s", true)?;
        let alg = x.algebra();
        let (a, b, d) = (s.entry(1, 1), s.entry(1, 2), s.entry(2, 2));
        Ok(vec![
            ((alg.e(1, 1) - alg.e(2, 2)).scale(b), alg.one()),
            (alg.e(1, 1).scale(a) - alg.e(2, 2).scale(d), alg.e(1, 2) + alg.e(2, 1)),
        ])
    }
}

/// Closed form where it applies, generic solve elsewhere.
pub fn default_xsy_decomposer(x: &Element, y: &Element) -> Box<dyn XsyDecomposer> {
    if ClosedFormM2Transpose::applies(x, y) {
        Box::new(ClosedFormM2Transpose)
    } else {
        Box::new(GenericXsy)
    }
}

struct Prepared {
    z: Element,
    w: Element,
    s: Element,
    k: Element,
}

/// Validates the pair, inverts the combination and splits `w = (z r)*`.
fn prepare(
    alg: &InvolutiveAlgebra,
    x: &Element,
    y: &Element,
    r: &Element,
    symmetric: bool,
    jordan: bool,
) -> Result<Prepared, DecomposeError> {
    same_algebra(alg, &[x, y, r])?;
    require(x, "x", symmetric)?;
    require(y, "y", symmetric)?;
    let (c, combination) = if jordan { (x.jordan(y), "xy + yx") } else { (x.lie(y), "xy - yx") };
    let z = c.right_inverse().map_err(|_| DecomposeError::NotInvertible { combination })?;
    let w = (&z * r).star();
    let (s, k) = w.sk_split();
    Ok(Prepared { z, w, s, k })
}

/// `r = −λ + (kx − xk) y + (−x)(yk − ky) + s x y + x y s` with `λ = w x y + y x w*`.
pub fn decompose_s3(alg: &InvolutiveAlgebra, x: &Element, y: &Element, r: &Element) -> Result<Certificate, DecomposeError> {
    let Prepared { z, w, s, k } = prepare(alg, x, y, r, true, false)?;
    let lambda = &w * &(x * y) + &(y * x) * &w.star();
    let terms = vec![
        Monomial::new(Tag::S, vec![-lambda]),
        Monomial::new(Tag::S, vec![k.lie(x), y.clone()]),
        Monomial::new(Tag::S, vec![-x, y.lie(&k)]),
        Monomial::new(Tag::S, vec![s.clone(), x.clone(), y.clone()]),
        Monomial::new(Tag::S, vec![x.clone(), y.clone(), s]),
    ];
    Ok(Certificate {
        scheme: Scheme::S3,
        target: r.clone(),
        witness: WitnessData { x: x.clone(), y: y.clone(), z },
        m: None,
        terms,
    })
}

/// As [`decompose_s3`], with `s x y + x y s = (sx + xs) y + x (ys + sy) − 2 x s y`
/// and `x s y` supplied by `xsy`.
pub fn decompose_s2(
    alg: &InvolutiveAlgebra,
    x: &Element,
    y: &Element,
    r: &Element,
    xsy: &dyn XsyDecomposer,
) -> Result<Certificate, DecomposeError> {
    let Prepared { z, w, s, k } = prepare(alg, x, y, r, true, false)?;
    let m = xsy.bound(alg);
    let pairs = xsy.decompose(x, y, &s)?;
    if pairs.len() > m {
        return Err(DecomposeError::Obstructed(format!("{} returned {} terms, more than M = {m}", xsy.name(), pairs.len())));
    }
    let lambda = &w * &(x * y) + &(y * x) * &w.star();
    let mut terms = vec![
        Monomial::new(Tag::S, vec![-lambda]),
        Monomial::new(Tag::S, vec![k.lie(x), y.clone()]),
        Monomial::new(Tag::S, vec![-x, y.lie(&k)]),
        Monomial::new(Tag::S, vec![s.jordan(x), y.clone()]),
        Monomial::new(Tag::S, vec![x.clone(), y.jordan(&s)]),
    ];
    for (a, b) in pairs {
        terms.push(Monomial::new(Tag::S, vec![a.scale_int(-2), b]));
    }
    Ok(Certificate {
        scheme: Scheme::S2,
        target: r.clone(),
        witness: WitnessData { x: x.clone(), y: y.clone(), z },
        m: Some(m),
        terms,
    })
}

/// Skew-side decompositions from `x, y ∈ K`.
///
/// `k_plus_k2`: `r = β + (wx + xw*) y + x (yw* + wy) − x (w + w*) y` with
/// `β = yxw* − wxy` and the last product expanded over a `K` dictionary.
///
/// `k_plus_k2_k3`: `r = (wxy − yxw*) − (wx + xw*) y + x (yw* + wy) + x (w* − w) y`.
pub fn decompose_k_chain(
    alg: &InvolutiveAlgebra,
    x: &Element,
    y: &Element,
    r: &Element,
    scheme: Scheme,
) -> Result<Certificate, DecomposeError> {
    let jordan = match scheme {
        Scheme::KPlusK2 => true,
        Scheme::KPlusK2K3 => false,
        other => return Err(DecomposeError::UnknownScheme(format!("{other} is not a skew scheme"))),
    };
    let Prepared { z, w, .. } = prepare(alg, x, y, r, false, jordan)?;
    let ws = w.star();
    let wxy = &w * &(x * y);
    let yxws = &(y * x) * &ws;
    let left = &(&w * x) + &(x * &ws);
    let right = &(y * &ws) + &(&w * y);
    let (terms, m) = if jordan {
        let sym_part = &w + &ws;
        let inner = &(x * &sym_part) * y;
        let basis = structure::s_k_bases(alg).1.basis_elements(alg).expect("same algebra");
        let pairs = dictionary_solve(&basis, &inner)
            .ok_or_else(|| DecomposeError::Obstructed("xSy ⊄ K^2".into()))?;
        let mut terms = vec![
            Monomial::new(Tag::K, vec![yxws - wxy]),
            Monomial::new(Tag::K, vec![left, y.clone()]),
            Monomial::new(Tag::K, vec![x.clone(), right]),
        ];
        for (a, b) in pairs {
            terms.push(Monomial::new(Tag::K, vec![-a, b]));
        }
        (terms, Some(basis.len()))
    } else {
        let terms = vec![
            Monomial::new(Tag::K, vec![wxy - yxws]),
            Monomial::new(Tag::K, vec![-left, y.clone()]),
            Monomial::new(Tag::K, vec![x.clone(), right]),
            Monomial::new(Tag::K, vec![x.clone(), &ws - &w, y.clone()]),
        ];
        (terms, None)
    };
    Ok(Certificate {
        scheme,
        target: r.clone(),
        witness: WitnessData { x: x.clone(), y: y.clone(), z },
        m,
        terms,
    })
}

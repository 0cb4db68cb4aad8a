//! Witness-style criteria: a pair `(x, y)` of symmetric or skew elements with a
//! nondegenerate commutator or Jordan product such that every `x b y`, for `b`
//! running over a basis of `S` or `K`, lands in a prescribed set.
//!
//! Memberships are checked on a basis only; the map `b ↦ x b y` is linear, so
//! that is the same as checking the whole of `S` or `K`.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, InvolutiveAlgebra, Involution};
use crate::structure::{Evaluator, StructureError};
use crate::subspace::{MembershipTest, SubspaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("{role} must be symmetric")]
    NotSymmetric { role: &'static str },
    #[error("{role} must be skew")]
    NotSkew { role: &'static str },
    #[error("unknown criterion {0:?}; known: first, second, a, b, c, d, e, f, g, h3, h2")]
    UnknownCriterion(String),
    #[error("unknown named witness {0:?}; known: {known}", known = NAMED_WITNESSES.iter().map(|w| w.name).collect::<Vec<_>>().join(", "))]
    UnknownWitness(String),
    #[error("witness {name} is not available on {algebra}: {reason}")]
    WitnessUnavailable { name: String, algebra: String, reason: &'static str },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Structure(#[from] Box<StructureError>),
}

impl From<StructureError> for CriterionError {
    fn from(e: StructureError) -> Self {
        CriterionError::Structure(Box::new(e))
    }
}

/// Symmetry type demanded of a witness component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymType {
    S,
    K,
}

impl SymType {
    fn of(e: &Element) -> Option<SymType> {
        if e.is_symmetric() {
            Some(SymType::S)
        } else if e.is_skew() {
            Some(SymType::K)
        } else {
            None
        }
    }

    fn validate(self, e: &Element, role: &'static str) -> Result<(), CriterionError> {
        match self {
            SymType::S if !e.is_symmetric() => Err(CriterionError::NotSymmetric { role }),
            SymType::K if !e.is_skew() => Err(CriterionError::NotSkew { role }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SymType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The auxiliary criteria besides the two `S^2` criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `x, y ∈ K`, `xy + yx ≠ 0`, `xSy ⊆ KS + K^2`.
    A,
    /// `x ∈ K, y ∈ S` with `xSy ⊆ KS + K^2`, or mirrored `x ∈ S, y ∈ K` with
    /// `xSy ⊆ SK + K^2`; `xy − yx ≠ 0`.
    B,
    /// As [`Variant::B`] with target `KS` (or `SK`).
    C,
    /// `x, y ∈ K`, `xy + yx` invertible, `xSy ⊆ K^2`.
    D,
    /// `x, y ∈ K`, `xy − yx` invertible.
    E,
    /// `x ∈ S, y ∈ K`, `xy − yx ≠ 0`, `xSy ⊆ SK`.
    F,
    /// `x, y ∈ S`, `xy − yx ≠ 0`, `xKy ⊆ KS + SK`.
    G,
    /// `x, y ∈ S`, `xy − yx` invertible.
    H3,
    /// `x, y ∈ S`, `xy − yx` invertible, `xSy ⊆ S^2`.
    H2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionId {
    /// `x, y ∈ S`, `xy − yx ≠ 0`, `xSy ⊆ S^2`.
    First,
    /// `x, y ∈ S`, `xy + yx ≠ 0`, `xKy ⊆ S^2`.
    Second,
    Aux(Variant),
}

pub const CRITERION_NAMES: &[&str] = &["first", "second", "a", "b", "c", "d", "e", "f", "g", "h3", "h2"];

impl CriterionId {
    pub fn parse(name: &str) -> Result<Self, CriterionError> {
        Ok(match name.trim().to_ascii_lowercase().as_str() {
            "first" => CriterionId::First,
            "second" => CriterionId::Second,
            "a" => CriterionId::Aux(Variant::A),
            "b" => CriterionId::Aux(Variant::B),
            "c" => CriterionId::Aux(Variant::C),
            "d" => CriterionId::Aux(Variant::D),
            "e" => CriterionId::Aux(Variant::E),
            "f" => CriterionId::Aux(Variant::F),
            "g" => CriterionId::Aux(Variant::G),
            "h3" => CriterionId::Aux(Variant::H3),
            "h2" => CriterionId::Aux(Variant::H2),
            _ => return Err(CriterionError::UnknownCriterion(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CriterionId::First => "first",
            CriterionId::Second => "second",
            CriterionId::Aux(v) => match v {
                Variant::A => "a",
                Variant::B => "b",
                Variant::C => "c",
                Variant::D => "d",
                Variant::E => "e",
                Variant::F => "f",
                Variant::G => "g",
                Variant::H3 => "h3",
                Variant::H2 => "h2",
            },
        }
    }

    /// The rule for a witness whose `x` has the given type. Only variants B and C
    /// depend on it; elsewhere `x_type` is ignored.
    fn rule(self, x_type: SymType) -> Rule {
        use NondegKind::*;
        use SymType::{K, S};
        let r = |x, y, nondeg, over, target| Rule { x, y, nondeg, over, target };
        match self {
            CriterionId::First => r(S, S, LieNonzero, Some(S), Some("S^2")),
            CriterionId::Second => r(S, S, JordanNonzero, Some(K), Some("S^2")),
            CriterionId::Aux(v) => match v {
                Variant::A => r(K, K, JordanNonzero, Some(S), Some("KS+K^2")),
                Variant::B if x_type == S => r(S, K, LieNonzero, Some(S), Some("SK+K^2")),
                Variant::B => r(K, S, LieNonzero, Some(S), Some("KS+K^2")),
                Variant::C if x_type == S => r(S, K, LieNonzero, Some(S), Some("SK")),
                Variant::C => r(K, S, LieNonzero, Some(S), Some("KS")),
                Variant::D => r(K, K, JordanInvertible, Some(S), Some("K^2")),
                Variant::E => r(K, K, LieInvertible, None, None),
                Variant::F => r(S, K, LieNonzero, Some(S), Some("SK")),
                Variant::G => r(S, S, LieNonzero, Some(K), Some("KS+SK")),
                Variant::H3 => r(S, S, LieInvertible, None, None),
                Variant::H2 => r(S, S, LieInvertible, Some(S), Some("S^2")),
            },
        }
    }

    fn default_x_type(self) -> SymType {
        match self {
            CriterionId::Aux(Variant::A | Variant::B | Variant::C | Variant::D | Variant::E) => SymType::K,
            _ => SymType::S,
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NondegKind {
    LieNonzero,
    JordanNonzero,
    LieInvertible,
    JordanInvertible,
}

impl NondegKind {
    fn is_lie(self) -> bool {
        matches!(self, NondegKind::LieNonzero | NondegKind::LieInvertible)
    }

    fn needs_inverse(self) -> bool {
        matches!(self, NondegKind::LieInvertible | NondegKind::JordanInvertible)
    }
}

#[derive(Debug, Clone, Copy)]
struct Rule {
    x: SymType,
    y: SymType,
    nondeg: NondegKind,
    over: Option<SymType>,
    target: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nondegeneracy {
    /// `"lie"` for `xy − yx`, `"jordan"` for `xy + yx`.
    pub kind: &'static str,
    /// `"nonzero"` or `"invertible"`.
    pub requirement: &'static str,
    pub value: Element,
    pub is_zero: bool,
    pub invertible: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub factor: Element,
    pub product: Element,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub criterion: CriterionId,
    pub x: Element,
    pub y: Element,
    pub nondegeneracy: Nondegeneracy,
    /// Set that every `x b y` must lie in, if the criterion has a membership part.
    pub target: Option<String>,
    /// Which basis `b` runs over.
    pub quantified_over: Option<SymType>,
    pub memberships: Vec<Membership>,
    pub verdict: bool,
}

impl CriterionOutcome {
    /// Short description of the first failing condition, `None` on a pass.
    pub fn failure(&self) -> Option<String> {
        let nd = &self.nondegeneracy;
        if !nd.passed {
            let combo = if nd.kind == "lie" { "xy - yx" } else { "xy + yx" };
            return Some(if nd.is_zero { format!("{combo} = 0") } else { format!("{combo} is not invertible") });
        }
        if self.memberships.iter().any(|m| !m.contained) {
            let over = self.quantified_over.map(|t| t.to_string()).unwrap_or_default();
            let target = self.target.clone().unwrap_or_default();
            return Some(format!("x{over}y ⊄ {target}"));
        }
        None
    }

    pub fn witness_json(&self) -> Value {
        json!({ "x": self.x.to_json(), "y": self.y.to_json() })
    }

    pub fn to_json(&self) -> Value {
        let alg = self.x.algebra();
        let memberships: Vec<Value> = self
            .memberships
            .iter()
            .map(|m| json!({ "factor": m.factor.to_json(), "product": m.product.to_json(), "contained": m.contained }))
            .collect();
        let nd = &self.nondegeneracy;
        json!({
            "criterion": self.criterion.name(),
            "algebra": alg.spec(),
            "field": alg.field().spec(),
            "witness": self.witness_json(),
            "nondegeneracy": {
                "kind": nd.kind,
                "requirement": nd.requirement,
                "value": nd.value.to_json(),
                "is_zero": nd.is_zero,
                "invertible": nd.invertible,
                "passed": nd.passed,
            },
            "membership": {
                "target": self.target,
                "quantified_over": self.quantified_over.map(|t| format!("{t} basis")),
                "mode": "basis-quantified",
                "checks": memberships,
            },
            "verdict": if self.verdict { "pass" } else { "fail" },
        })
    }
}

/// Reusable checker for one algebra: caches `S`, `K` and the target sets.
pub struct CriterionChecker {
    alg: InvolutiveAlgebra,
    eval: Evaluator,
    bases: HashMap<SymType, Vec<Element>>,
    tests: HashMap<&'static str, MembershipTest>,
}

impl CriterionChecker {
    pub fn new(alg: &InvolutiveAlgebra) -> Self {
        let eval = Evaluator::new(alg);
        let mut bases = HashMap::new();
        bases.insert(SymType::S, eval.s().basis_elements(alg).expect("same algebra"));
        bases.insert(SymType::K, eval.k().basis_elements(alg).expect("same algebra"));
        CriterionChecker { alg: *alg, eval, bases, tests: HashMap::new() }
    }

    pub fn algebra(&self) -> &InvolutiveAlgebra {
        &self.alg
    }

    fn basis(&self, t: SymType) -> &[Element] {
        &self.bases[&t]
    }

    fn test(&mut self, target: &'static str) -> Result<&MembershipTest, CriterionError> {
        if !self.tests.contains_key(target) {
            let v = self.eval.eval_str(target)?;
            self.tests.insert(target, v.membership_test());
        }
        Ok(&self.tests[target])
    }

    fn rule_for(&self, id: CriterionId, x: &Element) -> Rule {
        id.rule(SymType::of(x).unwrap_or(id.default_x_type()))
    }

    /// Full evaluation with every membership recorded.
    pub fn check(&mut self, id: CriterionId, x: &Element, y: &Element) -> Result<CriterionOutcome, CriterionError> {
        for e in [x, y] {
            if e.algebra() != &self.alg {
                return Err(AlgebraError::Mismatch(self.alg.to_string(), e.algebra().to_string()).into());
            }
        }
        let rule = self.rule_for(id, x);
        rule.x.validate(x, "x")?;
        rule.y.validate(y, "y")?;
        let value = if rule.nondeg.is_lie() { x.lie(y) } else { x.jordan(y) };
        let is_zero = value.is_zero();
        let invertible = !is_zero && value.right_inverse().is_ok();
        let passed = if rule.nondeg.needs_inverse() { invertible } else { !is_zero };
        let nondegeneracy = Nondegeneracy {
            kind: if rule.nondeg.is_lie() { "lie" } else { "jordan" },
            requirement: if rule.nondeg.needs_inverse() { "invertible" } else { "nonzero" },
            value,
            is_zero,
            invertible,
            passed,
        };
        let mut memberships = Vec::new();
        if let (Some(over), Some(target)) = (rule.over, rule.target) {
            let factors = self.basis(over).to_vec();
            let test = self.test(target)?;
            for b in factors {
                let product = &(x * &b) * y;
                let contained = test.contains(product.coords());
                memberships.push(Membership { factor: b, product, contained });
            }
        }
        let verdict = passed && memberships.iter().all(|m| m.contained);
        Ok(CriterionOutcome {
            criterion: id,
            x: x.clone(),
            y: y.clone(),
            nondegeneracy,
            target: rule.target.map(str::to_string),
            quantified_over: rule.over,
            memberships,
            verdict,
        })
    }

    /// Verdict only, stopping at the first failing condition. Assumes the symmetry
    /// types were already validated.
    fn quick(&mut self, rule: Rule, x: &Element, y: &Element) -> Result<Quick, CriterionError> {
        let value = if rule.nondeg.is_lie() { x.lie(y) } else { x.jordan(y) };
        if value.is_zero() || (rule.nondeg.needs_inverse() && value.right_inverse().is_err()) {
            return Ok(Quick::Degenerate);
        }
        if let (Some(over), Some(target)) = (rule.over, rule.target) {
            let xs: Vec<Element> = self.basis(over).iter().map(|b| x * b).collect();
            let test = self.test(target)?;
            for xb in xs {
                if !test.contains((&xb * y).coords()) {
                    return Ok(Quick::OutsideTarget);
                }
            }
        }
        Ok(Quick::Pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quick {
    Pass,
    Degenerate,
    OutsideTarget,
}

pub fn check_criterion(
    alg: &InvolutiveAlgebra,
    id: CriterionId,
    x: &Element,
    y: &Element,
) -> Result<CriterionOutcome, CriterionError> {
    CriterionChecker::new(alg).check(id, x, y)
}

pub fn check_first_criterion(alg: &InvolutiveAlgebra, x: &Element, y: &Element) -> Result<CriterionOutcome, CriterionError> {
    check_criterion(alg, CriterionId::First, x, y)
}

pub fn check_second_criterion(alg: &InvolutiveAlgebra, x: &Element, y: &Element) -> Result<CriterionOutcome, CriterionError> {
    check_criterion(alg, CriterionId::Second, x, y)
}

pub fn check_auxiliary_criterion(
    alg: &InvolutiveAlgebra,
    variant: Variant,
    x: &Element,
    y: &Element,
) -> Result<CriterionOutcome, CriterionError> {
    check_criterion(alg, CriterionId::Aux(variant), x, y)
}

/// Explicit witness matrices from the worked matrix examples.
#[derive(Debug, Clone, Copy)]
pub struct NamedWitnessInfo {
    pub name: &'static str,
    pub involution: Involution,
    /// Criterion the pair is meant to satisfy.
    pub criterion: CriterionId,
}

pub const NAMED_WITNESSES: &[NamedWitnessInfo] = &[
    NamedWitnessInfo { name: "s3_transpose_even", involution: Involution::Transpose, criterion: CriterionId::Aux(Variant::H3) },
    NamedWitnessInfo { name: "s3_symplectic", involution: Involution::Symplectic, criterion: CriterionId::Aux(Variant::H3) },
    NamedWitnessInfo { name: "s2_transpose", involution: Involution::Transpose, criterion: CriterionId::First },
    NamedWitnessInfo { name: "s2_symplectic", involution: Involution::Symplectic, criterion: CriterionId::First },
    NamedWitnessInfo { name: "crit2_transpose", involution: Involution::Transpose, criterion: CriterionId::Second },
    NamedWitnessInfo { name: "crit2_symplectic", involution: Involution::Symplectic, criterion: CriterionId::Second },
    NamedWitnessInfo { name: "ks_k2_transpose", involution: Involution::Transpose, criterion: CriterionId::Aux(Variant::A) },
    NamedWitnessInfo { name: "ks_k2_symplectic", involution: Involution::Symplectic, criterion: CriterionId::Aux(Variant::A) },
    NamedWitnessInfo { name: "ks_k2_v2_transpose", involution: Involution::Transpose, criterion: CriterionId::Aux(Variant::B) },
    NamedWitnessInfo { name: "ks_k2_v2_symplectic", involution: Involution::Symplectic, criterion: CriterionId::Aux(Variant::B) },
    NamedWitnessInfo { name: "k_k2_symplectic_m2", involution: Involution::Symplectic, criterion: CriterionId::Aux(Variant::D) },
];

pub fn named_witness_info(name: &str) -> Result<NamedWitnessInfo, CriterionError> {
    NAMED_WITNESSES
        .iter()
        .find(|w| w.name == name)
        .copied()
        .ok_or_else(|| CriterionError::UnknownWitness(name.to_string()))
}

/// Builds a named witness on `alg` and re-validates the symmetry types it claims.
pub fn paper_witness(alg: &InvolutiveAlgebra, name: &str) -> Result<(Element, Element), CriterionError> {
    let info = named_witness_info(name)?;
    let unavailable =
        |reason| CriterionError::WitnessUnavailable { name: name.to_string(), algebra: alg.spec(), reason };
    if !alg.is_matrix() || alg.involution() != info.involution {
        return Err(unavailable("wrong algebra or involution"));
    }
    let n = alg.order().expect("matrix algebra");
    let m = n / 2;
    let e = |i, j| alg.e(i, j);
    let (x, y) = match name {
        "s3_transpose_even" => {
            if !n.is_multiple_of(2) {
                return Err(unavailable("n must be even"));
            }
            let mut x = alg.zero();
            let mut y = alg.zero();
            for i in (1..n).step_by(2) {
                x = x + e(i, i) - e(i + 1, i + 1);
                y = y + e(i, i + 1) + e(i + 1, i);
            }
            (x, y)
        }
        "s3_symplectic" => {
            if !m.is_multiple_of(2) {
                return Err(unavailable("n must be 2m with m even"));
            }
            let mut x = alg.zero();
            let mut y = alg.zero();
            for off in [0, m] {
                for i in (1..m).step_by(2) {
                    x = x + e(off + i, off + i) - e(off + i + 1, off + i + 1);
                    y = y + e(off + i, off + i + 1) + e(off + i + 1, off + i);
                }
            }
            (x, y)
        }
        "s2_transpose" => {
            if n < 2 {
                return Err(unavailable("n must be at least 2"));
            }
            (e(1, 1) - e(2, 2), e(1, 2) + e(2, 1))
        }
        "s2_symplectic" => {
            if n < 4 {
                return Err(unavailable("n must be at least 4"));
            }
            (e(1, m + 2) - e(2, m + 1), e(1, 2) + e(m + 2, m + 1))
        }
        "crit2_transpose" => {
            if n < 2 {
                return Err(unavailable("n must be at least 2"));
            }
            (e(1, 1), e(1, 2) + e(2, 1))
        }
        "crit2_symplectic" => {
            if n < 4 {
                return Err(unavailable("n must be at least 4"));
            }
            (e(1, m + 2) - e(2, m + 1), e(1, 1) + e(m + 1, m + 1))
        }
        "ks_k2_transpose" => {
            if n < 3 {
                return Err(unavailable("n must be at least 3"));
            }
            (e(1, 2) - e(2, 1), e(1, 3) - e(3, 1))
        }
        "ks_k2_symplectic" => {
            if n < 4 {
                return Err(unavailable("n must be at least 4"));
            }
            (e(1, m + 1), e(m + 1, 1))
        }
        "ks_k2_v2_transpose" => {
            if n < 3 {
                return Err(unavailable("n must be at least 3"));
            }
            (e(1, 2) + e(2, 1), e(1, n) - e(n, 1))
        }
        "ks_k2_v2_symplectic" => {
            if n < 4 {
                return Err(unavailable("n must be at least 4"));
            }
            (e(1, m) + e(n, m + 1), e(m, n))
        }
        "k_k2_symplectic_m2" => {
            if n != 2 {
                return Err(unavailable("defined for n = 2 only"));
            }
            (e(1, 2), e(2, 1))
        }
        _ => unreachable!("names come from NAMED_WITNESSES"),
    };
    let rule = info.criterion.rule(SymType::of(&x).unwrap_or(info.criterion.default_x_type()));
    rule.x.validate(&x, "x")?;
    rule.y.validate(&y, "y")?;
    Ok((x, y))
}

/// Candidate pool for [`witness_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPool {
    /// Basis elements of `S` or `K`.
    Basis,
    /// Basis elements followed by `b_i + b_j` and `b_i − b_j` for `i < j`.
    BasisSumsDifferences,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub criterion: CriterionId,
    pub algebra: InvolutiveAlgebra,
    pub tried: usize,
    pub pool_sizes: (usize, usize),
    /// Outcome for the first passing pair in enumeration order, if any.
    pub outcome: Option<CriterionOutcome>,
    /// When nothing passes: the first pair that was nondegenerate but failed a
    /// membership.
    pub closest: Option<CriterionOutcome>,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.outcome.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion.name(),
            "algebra": self.algebra.spec(),
            "field": self.algebra.field().spec(),
            "tried": self.tried,
            "pool": { "x": self.pool_sizes.0, "y": self.pool_sizes.1 },
            "found": self.found(),
            "outcome": self.outcome.as_ref().map(CriterionOutcome::to_json),
            "closest": self.closest.as_ref().map(CriterionOutcome::to_json),
        })
    }
}

fn pool(basis: &[Element], kind: SearchPool) -> Vec<Element> {
    let mut out = basis.to_vec();
    if kind == SearchPool::BasisSumsDifferences {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                out.push(&basis[i] + &basis[j]);
                out.push(&basis[i] - &basis[j]);
            }
        }
    }
    out
}

/// Enumerates pairs `(x, y)` from the pools in lexicographic order and returns the
/// first one that passes. `budget` caps the number of pairs tried. For the second
/// criterion the pair `(1, 1)` is tried after the pools.
pub fn witness_search(
    alg: &InvolutiveAlgebra,
    id: CriterionId,
    kind: SearchPool,
    budget: Option<usize>,
) -> Result<SearchResult, CriterionError> {
    let mut checker = CriterionChecker::new(alg);
    let rule = id.rule(id.default_x_type());
    let xs = pool(checker.basis(rule.x), kind);
    let ys = pool(checker.basis(rule.y), kind);
    let budget = budget.unwrap_or(usize::MAX);
    let mut tried = 0;
    let mut candidates = xs.iter().flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone()))).collect::<Vec<_>>();
    if id == CriterionId::Second {
        candidates.push((alg.one(), alg.one()));
    }
    let mut outcome = None;
    let mut closest = None;
    for (x, y) in candidates {
        if tried >= budget {
            break;
        }
        tried += 1;
        match checker.quick(rule, &x, &y)? {
            Quick::Pass => {
                outcome = Some(checker.check(id, &x, &y)?);
                break;
            }
            Quick::OutsideTarget if closest.is_none() => closest = Some(checker.check(id, &x, &y)?),
            _ => {}
        }
    }
    if outcome.is_some() {
        closest = None;
    }
    Ok(SearchResult { criterion: id, algebra: *alg, tried, pool_sizes: (xs.len(), ys.len()), outcome, closest })
}

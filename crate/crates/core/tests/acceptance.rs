//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails.

use std::panic::{self, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symskew::criteria::{self, CriterionId, SearchPool, Variant, NAMED_WITNESSES};
use symskew::decompose::{self, ClosedFormM2Transpose, Scheme};
use symskew::staralgebra::{self, StarExpr, CORPUS, MUTATED_CORPUS};
use symskew::structure::{self, commutativity_probe, Evaluator, ProbeMode, TheoremStatus};
use symskew::{FieldDescriptor, InvolutiveAlgebra, Involution, Subspace};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mat(field: FieldDescriptor, n: usize, inv: Involution) -> InvolutiveAlgebra {
    InvolutiveAlgebra::matrices(field, n, inv).expect("valid instance")
}

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).expect("prime")
}

/// Transpose n = 2..5 and symplectic n = 4, 6: the instances where S is not commutative.
fn noncommutative_s(field: FieldDescriptor) -> Vec<InvolutiveAlgebra> {
    let mut out: Vec<_> = (2..=5).map(|n| mat(field, n, Involution::Transpose)).collect();
    out.extend([4, 6].map(|n| mat(field, n, Involution::Symplectic)));
    out
}

fn all_instances(field: FieldDescriptor) -> Vec<InvolutiveAlgebra> {
    let mut out = noncommutative_s(field);
    out.push(mat(field, 2, Involution::Symplectic));
    out.push(InvolutiveAlgebra::quaternions(field));
    out
}

fn dim(alg: &InvolutiveAlgebra, expr: &str) -> usize {
    Evaluator::new(alg).eval_str(expr).expect("valid expression").dim()
}

fn dims(alg: &InvolutiveAlgebra, exprs: &[&str]) -> Vec<usize> {
    let mut ev = Evaluator::new(alg);
    exprs.iter().map(|e| ev.eval_str(e).expect("valid expression").dim()).collect()
}

fn sq(alg: &InvolutiveAlgebra) -> usize {
    alg.dim()
}

fn c1_s2_dims(field: FieldDescriptor) -> Outcome {
    for alg in noncommutative_s(field) {
        let d = dim(&alg, "S^2");
        ensure(d == sq(&alg), || format!("{}: dim S^2 = {d}", alg.spec()))?;
    }
    let m2 = mat(field, 2, Involution::Symplectic);
    let d = dim(&m2, "S^2");
    ensure(d == 1, || format!("mat:2:symplectic: dim S^2 = {d}, expected 1"))
}

fn c2_s3_chain(field: FieldDescriptor) -> Outcome {
    for alg in noncommutative_s(field) {
        let mut ev = Evaluator::new(&alg);
        let s = ev.eval_str("S").unwrap();
        let s2 = ev.eval_str("S^2").unwrap();
        let s3 = ev.eval_str("S^3").unwrap();
        ensure(s.is_subspace_of(&s2).unwrap(), || format!("{}: S ⊄ S^2", alg.spec()))?;
        ensure(s2.is_subspace_of(&s3).unwrap(), || format!("{}: S^2 ⊄ S^3", alg.spec()))?;
        ensure(s3.dim() == sq(&alg), || format!("{}: dim S^3 = {}", alg.spec(), s3.dim()))?;
    }
    let m2 = mat(field, 2, Involution::Symplectic);
    let d = dim(&m2, "S^3");
    ensure(d == 1, || format!("mat:2:symplectic: dim S^3 = {d}, expected 1"))
}

fn c3_named_witnesses() -> Outcome {
    let first_second = ["s2_transpose", "s2_symplectic", "crit2_transpose", "crit2_symplectic"];
    for name in first_second {
        let info = criteria::named_witness_info(name).unwrap();
        let mut built = 0;
        for alg in all_instances(q()) {
            let Ok((x, y)) = criteria::paper_witness(&alg, name) else { continue };
            built += 1;
            let out = criteria::check_criterion(&alg, info.criterion, &x, &y).map_err(|e| e.to_string())?;
            ensure(out.verdict, || format!("{name} on {}: {:?}", alg.spec(), out.failure()))?;
        }
        let expected = if name.contains("symplectic") { 2 } else { 4 };
        ensure(built == expected, || format!("{name}: built on {built} instances, expected {expected}"))?;
    }

    // x s y for x = e11 − e22, y = e12 + e21 and s = a e11 + b(e12 + e21) + d e22 + (rest).
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 3] {
        let alg = mat(q(), n, Involution::Transpose);
        let (x, y) = criteria::paper_witness(&alg, "s2_transpose").unwrap();
        for _ in 0..20 {
            let s = alg.random_element(&mut rng, 7).sk_split().0;
            let (a, b, d) = (s.entry(1, 1).clone(), s.entry(1, 2).clone(), s.entry(2, 2).clone());
            let expected = alg.e(1, 1).scale(&b) + alg.e(1, 2).scale(&a) - alg.e(2, 1).scale(&d) - alg.e(2, 2).scale(&b);
            ensure(&(&x * &s) * &y == expected, || format!("xsy expansion fails on M{n} for s = {s}"))?;
        }
        let (x, y) = criteria::paper_witness(&alg, "crit2_transpose").unwrap();
        for _ in 0..20 {
            let k = alg.random_element(&mut rng, 7).sk_split().1;
            let expected = alg.e(1, 1).scale(k.entry(1, 2));
            ensure(&(&x * &k) * &y == expected, || format!("xky expansion fails on M{n} for k = {k}"))?;
        }
    }
    Ok(())
}

fn c4_bounded_decompositions() -> Outcome {
    for n in [2, 4] {
        let alg = mat(q(), n, Involution::Transpose);
        let (x, y) = criteria::paper_witness(&alg, "s3_transpose_even").unwrap();
        for seed in 1..=100 {
            let r = decompose::random_target(&alg, seed);
            let cert = decompose::decompose_s3(&alg, &x, &y, &r).map_err(|e| e.to_string())?;
            ensure(cert.terms.len() <= 5, || format!("s3 M{n} seed {seed}: {} terms", cert.terms.len()))?;
            ensure(cert.recompose() == r, || format!("s3 M{n} seed {seed}: recomposition differs"))?;
            let verdict = decompose::verify_certificate(&cert);
            ensure(verdict.is_valid(), || format!("s3 M{n} seed {seed}: {verdict:?}"))?;
        }
    }
    let alg = mat(q(), 2, Involution::Transpose);
    let (x, y) = criteria::paper_witness(&alg, "s2_transpose").unwrap();
    for seed in 1..=100 {
        let r = decompose::random_target(&alg, seed);
        let cert = decompose::decompose_s2(&alg, &x, &y, &r, &ClosedFormM2Transpose).map_err(|e| e.to_string())?;
        ensure(cert.m == Some(2), || format!("s2 seed {seed}: M = {:?}", cert.m))?;
        ensure(cert.terms.len() <= 7, || format!("s2 seed {seed}: {} terms", cert.terms.len()))?;
        ensure(cert.recompose() == r, || format!("s2 seed {seed}: recomposition differs"))?;
        let verdict = decompose::verify_certificate(&cert);
        ensure(verdict.is_valid(), || format!("s2 seed {seed}: {verdict:?}"))?;
    }
    Ok(())
}

fn c5_odd_transpose_obstruction() -> Outcome {
    let alg = mat(q(), 3, Involution::Transpose);
    ensure(criteria::paper_witness(&alg, "s3_transpose_even").is_err(), || "even-n witness built on M3".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = alg.random_element(&mut rng, 9).sk_split().1;
        ensure(k.right_inverse().is_err(), || format!("skew {k} is invertible"))?;
    }

    let basis = structure::s_k_bases(&alg).0.basis_elements(&alg).unwrap();
    let mut pool = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pool.push(&basis[i] + &basis[j]);
            pool.push(&basis[i] - &basis[j]);
        }
    }
    for x in &pool {
        for y in &pool {
            ensure(x.lie(y).right_inverse().is_err(), || format!("xy − yx invertible for x = {x}, y = {y}"))?;
        }
    }
    let search = criteria::witness_search(&alg, CriterionId::Aux(Variant::H3), SearchPool::BasisSumsDifferences, None)
        .map_err(|e| e.to_string())?;
    ensure(!search.found(), || "h3 search found a witness on M3".into())
}

fn k_side_dims(alg: &InvolutiveAlgebra) -> Outcome {
    let mut ev = Evaluator::new(alg);
    let s = ev.eval_str("S").unwrap();
    let kk = ev.eval_str("K o K").unwrap();
    ensure(kk == s, || format!("{}: span(K∘K) has dim {}, S has dim {}", alg.spec(), kk.dim(), s.dim()))?;
    let kk3 = ev.eval_str("(K o K)^3").unwrap();
    ensure(kk3.is_full(), || format!("{}: dim (K∘K)^3 = {}", alg.spec(), kk3.dim()))
}

fn c6_k_side(field: FieldDescriptor) -> Outcome {
    let mut herstein: Vec<_> = (3..=5).map(|n| mat(field, n, Involution::Transpose)).collect();
    herstein.push(mat(field, 4, Involution::Symplectic));
    for alg in &herstein {
        k_side_dims(alg)?;
    }

    for alg in [mat(field, 2, Involution::Symplectic), InvolutiveAlgebra::quaternions(field)] {
        let d = dim(&alg, "K^2");
        ensure(d == sq(&alg), || format!("{}: dim K^2 = {d}", alg.spec()))?;
    }

    for alg in all_instances(field) {
        let k = structure::s_k_bases(&alg).1;
        let skew_commutative = commutativity_probe(&alg, &k, ProbeMode::SkewCommutative).unwrap().holds();
        if !skew_commutative {
            let d = dim(&alg, "K+KSK");
            ensure(d == sq(&alg), || format!("{}: dim K+KSK = {d}", alg.spec()))?;
        }
    }

    for (n, inv, name) in [(3, Involution::Transpose, "ks_k2_transpose"), (4, Involution::Symplectic, "ks_k2_symplectic")] {
        let alg = mat(field, n, inv);
        let (x, y) = criteria::paper_witness(&alg, name).map_err(|e| e.to_string())?;
        let out = criteria::check_auxiliary_criterion(&alg, Variant::A, &x, &y).map_err(|e| e.to_string())?;
        ensure(out.verdict, || format!("{name}: {:?}", out.failure()))?;
        let d = dim(&alg, "KS+K^2");
        ensure(d == sq(&alg), || format!("{}: dim KS+K^2 = {d}", alg.spec()))?;
    }

    let m2 = mat(field, 2, Involution::Symplectic);
    let d = dim(&m2, "K+K^2");
    ensure(d == 4, || format!("mat:2:symplectic: dim K+K^2 = {d}"))?;
    let (x, y) = criteria::paper_witness(&m2, "k_k2_symplectic_m2").map_err(|e| e.to_string())?;
    for seed in 1..=20 {
        let r = decompose::random_target(&m2, seed);
        let cert = decompose::decompose_k_chain(&m2, &x, &y, &r, Scheme::KPlusK2).map_err(|e| e.to_string())?;
        let verdict = decompose::verify_certificate(&cert);
        ensure(verdict.is_valid(), || format!("k_plus_k2 seed {seed}: {verdict:?}"))?;
    }
    Ok(())
}

fn c7_trace_obstruction() -> Outcome {
    let mut instances: Vec<_> = (2..=5).map(|n| mat(q(), n, Involution::Transpose)).collect();
    instances.extend([2, 4].map(|n| mat(q(), n, Involution::Symplectic)));
    for alg in instances {
        let d = dim(&alg, "KS+SK");
        ensure(d < sq(&alg), || format!("{}: dim KS+SK = {d}", alg.spec()))?;
        let pool = if alg.dim() <= 9 { SearchPool::BasisSumsDifferences } else { SearchPool::Basis };
        let search = criteria::witness_search(&alg, CriterionId::Aux(Variant::G), pool, None).map_err(|e| e.to_string())?;
        ensure(!search.found(), || format!("{}: variant g witness found", alg.spec()))?;
    }
    Ok(())
}

fn c8_sks_s2k(field: FieldDescriptor) -> Outcome {
    for alg in noncommutative_s(field) {
        let d = dims(&alg, &["SKS", "S^2K"]);
        ensure(d == [sq(&alg), sq(&alg)], || format!("{}: dims SKS, S^2K = {d:?}", alg.spec()))?;
        let s = structure::s_k_bases(&alg).0;
        let probe = commutativity_probe(&alg, &s, ProbeMode::MixedSk).unwrap();
        ensure(!probe.holds(), || format!("{}: no noncommuting s, k pair", alg.spec()))?;
    }
    let m2 = mat(field, 2, Involution::Symplectic);
    let s = structure::s_k_bases(&m2).0;
    let probe = commutativity_probe(&m2, &s, ProbeMode::MixedSk).unwrap();
    ensure(probe.holds(), || "mat:2:symplectic: noncommuting s, k pair found".into())
}

fn cent_s(alg: &InvolutiveAlgebra) -> Subspace {
    let s = structure::s_k_bases(alg).0.basis_elements(alg).unwrap();
    Subspace::centralizer(alg, &s).unwrap()
}

fn c9_centralizer() -> Outcome {
    let scalars = |alg: &InvolutiveAlgebra| Subspace::span_elements(alg, &[alg.one()]).unwrap();
    let mut scalar_cases: Vec<_> = (2..=5).map(|n| mat(q(), n, Involution::Transpose)).collect();
    scalar_cases.push(mat(q(), 4, Involution::Symplectic));
    for alg in scalar_cases {
        let c = cent_s(&alg);
        ensure(c == scalars(&alg), || format!("{}: dim Cent(S) = {}", alg.spec(), c.dim()))?;
    }
    let m2 = mat(q(), 2, Involution::Symplectic);
    ensure(cent_s(&m2).is_full(), || "mat:2:symplectic: Cent(S) ≠ R".into())?;

    for alg in all_instances(q()) {
        let s = structure::s_k_bases(&alg).0;
        let commutative = commutativity_probe(&alg, &s, ProbeMode::Commutative).unwrap().holds();
        let z_is_s = structure::center(&alg) == s;
        ensure(commutative == z_is_s, || format!("{}: S commutative {commutative}, Z = S {z_is_s}", alg.spec()))?;
        let report = structure::verify_theorem("s_comm_iff_z_eq_s", &alg).map_err(|e| e.to_string())?;
        ensure(report.status != TheoremStatus::ConclusionFailed, || format!("{}: {}", alg.spec(), report.text_line()))?;
    }
    Ok(())
}

fn substitution_agrees(lhs: &StarExpr, rhs: &StarExpr, decls: &staralgebra::Declarations, seed: u64) -> bool {
    let alg = mat(q(), 3, Involution::Transpose);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = staralgebra::random_assignment(decls, &alg, &mut rng, 5);
    lhs.evaluate(&alg, &values).unwrap() == rhs.evaluate(&alg, &values).unwrap()
}

fn c10_corpus() -> Outcome {
    let holding = staralgebra::parse_corpus(CORPUS).map_err(|e| e.to_string())?;
    let mutated = staralgebra::parse_corpus(MUTATED_CORPUS).map_err(|e| e.to_string())?;
    ensure(holding.len() >= 20, || format!("only {} identities", holding.len()))?;
    ensure(holding.len() == mutated.len(), || "corpus and mutated twins differ in size".into())?;
    for (good, bad) in holding.iter().zip(&mutated) {
        ensure(good.name == bad.name, || format!("twin order: {} vs {}", good.name, bad.name))?;
        ensure(good.check().holds(), || format!("{} fails symbolically", good.name))?;
        ensure(!bad.check().holds(), || format!("mutated {} holds symbolically", bad.name))?;
        for seed in 0..3 {
            ensure(substitution_agrees(&good.lhs, &good.rhs, &good.decls, seed), || {
                format!("{} fails under M3 substitution {seed}", good.name)
            })?;
        }
        let caught = (0..3).any(|seed| !substitution_agrees(&bad.lhs, &bad.rhs, &bad.decls, seed));
        ensure(caught, || format!("mutated {} survives M3 substitution", bad.name))?;
    }
    Ok(())
}

fn c11_dimension_bounds() -> Outcome {
    for alg in all_instances(q()) {
        let d = dims(&alg, &["S", "S^2", "S^3"]);
        let (s, n2) = (d[0], sq(&alg));
        if d[2] == n2 {
            ensure(s.pow(3) >= n2, || format!("{}: dim S = {s}, dim S^3 = R", alg.spec()))?;
        }
        if d[1] == n2 {
            ensure(s.pow(2) >= n2, || format!("{}: dim S = {s}, dim S^2 = R", alg.spec()))?;
        }
    }
    Ok(())
}

/// Dimensions probed by criteria 1, 2, 6 and 8.
fn fingerprint(field: FieldDescriptor) -> Vec<(String, Vec<usize>)> {
    all_instances(field)
        .iter()
        .map(|alg| (alg.spec(), dims(alg, &["S", "K", "S^2", "S^3", "K o K", "(K o K)^3", "K^2", "K+KSK", "KS+K^2", "K+K^2", "SKS", "S^2K"])))
        .collect()
}

fn c12_field_robustness() -> Outcome {
    c1_s2_dims(gf(5))?;
    c2_s3_chain(gf(5))?;
    c6_k_side(gf(5))?;
    c8_sks_s2k(gf(5))?;
    let rational = fingerprint(q());
    let mod5 = fingerprint(gf(5));
    ensure(rational == mod5, || format!("GF(5) dims differ: {rational:?} vs {mod5:?}"))?;
    for ((spec, a), (_, b)) in rational.iter().zip(fingerprint(gf(3))) {
        if *a != b {
            println!("  note: GF(3) dims differ on {spec}: Q {a:?}, GF(3) {b:?}");
        }
    }
    Ok(())
}

#[test]
fn acceptance_suite() {
    let criteria: Vec<Criterion> = vec![
        ("S^2 = R on matrices", Box::new(|| c1_s2_dims(q()))),
        ("S^3 chain", Box::new(|| c2_s3_chain(q()))),
        ("first/second criterion witnesses", Box::new(c3_named_witnesses)),
        ("bounded decompositions", Box::new(c4_bounded_decompositions)),
        ("odd transpose obstruction", Box::new(c5_odd_transpose_obstruction)),
        ("K-side theorems", Box::new(|| c6_k_side(q()))),
        ("trace obstruction", Box::new(c7_trace_obstruction)),
        ("SKS and S^2K", Box::new(|| c8_sks_s2k(q()))),
        ("centralizer", Box::new(c9_centralizer)),
        ("identity corpus", Box::new(c10_corpus)),
        ("dimension bounds", Box::new(c11_dimension_bounds)),
        ("field robustness", Box::new(c12_field_robustness)),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn named_witness_table_matches_checkers() {
    for info in NAMED_WITNESSES {
        for alg in all_instances(q()) {
            if let Ok((x, y)) = criteria::paper_witness(&alg, info.name) {
                let out = criteria::check_criterion(&alg, info.criterion, &x, &y).unwrap();
                assert!(out.verdict, "{} on {}: {:?}", info.name, alg.spec(), out.failure());
            }
        }
    }
}

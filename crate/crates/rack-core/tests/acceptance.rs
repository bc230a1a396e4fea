//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). Every tolerance is pinned here.
//!
//! Criterion 3 contains one sub-case that is provably unattainable —
//! `oct^(2)` does not embed in the (4,2)-class of S_6 (exhaustive search;
//! the octahedral double-rack rows require a nontrivial odd part, and the
//! (2,4) class is certified through the affine construction instead). That
//! sub-case is kept as a faithful red test rather than weakened; see
//! `criterion_03_oct2_in_4_2_s6_as_stated` and the README.

use std::collections::BTreeMap;

use rack_core::abelian::{diagonal_involution_triple, TriangleVerdict};
use rack_core::affine::{
    brute_force_layer_witness, s_condition_exception, simple_affine_racks, type_d_condition,
    DoubleRackCondition, FpMatrix,
};
use rack_core::cocycle::{braiding_check, class_braiding_cocycle, CMatrix, Cocycle};
use rack_core::cyclotomic::Cyclotomic;
use rack_core::group::{Ambient, ConjClassSpec, SplitPart};
use rack_core::perm::{gcd, is_prime, jacobi, power_conjugator, CycleType, Permutation};
use rack_core::rack::{catalog_rack, find_embedding, EmbedOutcome, FiniteRack};
use rack_core::reps::{all_cycle_types, enumerate_degree_one, theorem_table, ClassOutcome, KillReason};
use rack_core::typed::{
    check_witness, class_rack, classify, exhaustive_type_d_search, Caps, ExhaustiveOutcome,
    TypeDWitness, Verdict, WitnessBody,
};

fn caps() -> Caps {
    Caps::default()
}

/// Re-verification "from scratch": serialize, reparse, recheck.
fn reverify(witness: &TypeDWitness) -> bool {
    let json = serde_json::to_string(witness).expect("witness serializes");
    let parsed: TypeDWitness = serde_json::from_str(&json).expect("witness parses");
    check_witness(&parsed).is_ok()
}

/// What the recorded classification predicts for a canonical class.
#[derive(Debug, PartialEq, Clone, Copy)]
enum Expected {
    TypeD,
    ExceptionA,
    ExceptionB,
    NotTypeDExhaustive,
}

fn expected_verdict(t: &CycleType) -> Expected {
    let s = t.to_string();
    let m = t.degree() as u64;
    // list (a)
    if s == "(2,3)"
        || s == "(2^3)"
        || (t.multiplicity(2) == 1 && t.multiplicity(1) as u64 + 2 == m && t.counts().len() == 2)
    {
        return Expected::ExceptionA;
    }
    // list (b) fixed members
    if ["(3^2)", "(2^2,3)", "(2^4)", "(1^2,2^2)", "(1,2^2)"].contains(&s.as_str()) {
        return Expected::ExceptionB;
    }
    if t.multiplicity(3) == 1 && t.multiplicity(1) as u64 + 3 == m && t.counts().len() <= 2 {
        return Expected::ExceptionB;
    }
    // prime families, refined by the recorded facts
    if t.multiplicity(m as u32) == 1 && is_prime(m) {
        return if m == 5 { Expected::NotTypeDExhaustive } else { Expected::ExceptionB };
    }
    if t.multiplicity(1) == 1 && t.multiplicity((m - 1) as u32) == 1 && is_prime(m - 1) {
        // p = m − 1 is Mersenne iff m is a power of two; those classes
        // carry the field construction, the rest stay exceptional
        return if m.is_power_of_two() { Expected::TypeD } else { Expected::ExceptionB };
    }
    Expected::TypeD
}

#[test]
fn criterion_01_theorem_reproduction_desk_scale() {
    let caps = caps();
    let start = std::time::Instant::now();
    let mut classes = 0usize;
    let mut type_d = 0usize;
    for m in 5..=10usize {
        for t in all_cycle_types(m) {
            if t.is_identity() {
                continue;
            }
            let expected = expected_verdict(&t);
            let base = ConjClassSpec::canonical(t.clone());
            let mut specs = vec![base.clone()];
            if base.splits() {
                specs.push(
                    ConjClassSpec::new(m, t.clone(), Ambient::Alternating, Some(SplitPart::Minus))
                        .unwrap(),
                );
            }
            for spec in specs {
                classes += 1;
                let verdict = classify(&spec, &caps);
                match (&verdict, expected) {
                    (Verdict::TypeD { witness }, Expected::TypeD) => {
                        assert!(reverify(witness), "{spec}: witness must re-verify");
                        type_d += 1;
                    }
                    (Verdict::Exception { list, .. }, Expected::ExceptionA) => {
                        assert_eq!(format!("{list:?}"), "A", "{spec}");
                    }
                    (Verdict::Exception { list, .. }, Expected::ExceptionB) => {
                        assert_eq!(format!("{list:?}"), "B", "{spec}");
                    }
                    (Verdict::NotTypeD { .. }, Expected::NotTypeDExhaustive) => {}
                    (got, want) => {
                        panic!("{spec}: expected {want:?}, classified as {got:?}")
                    }
                }
                assert!(
                    !matches!(verdict, Verdict::Unknown { .. }),
                    "{spec}: no UNKNOWN allowed in this range"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "budget is ten minutes, took {elapsed:?}");
    println!(
        "criterion 1: PASS — {classes} classes over m = 5..10, {type_d} TYPE_D with re-verified \
         certificates, zero UNKNOWN, {elapsed:?}"
    );
}

#[test]
fn criterion_02_fixture_pair_rows() {
    let rows: [(usize, &str, &str, Option<u128>); 5] = [
        (7, "(4 5)(6 7)", "(1 2)(3 7)", None),
        (7, "(2 3 4)(5 6 7)", "(1 2 5)(3 4 6)", Some(21)),
        (9, "(1 2 3)(4 5 6)(7 8 9)", "(1 2 4)(3 5 6)(7 9 8)", Some(36)),
        (10, "(1 2)(3 4)(5 6)(7 8)(9 10)", "(1 3)(2 4)(5 7)(6 9)(8 10)", None),
        (7, "(2 3)(4 5)(6 7)", "(1 6)(2 4)(3 5)", None),
    ];
    let mut flagged = 0;
    for (m, s1, s2, expected_order) in rows {
        let sigma1: Permutation = rack_core::perm::parse_cycles(m, s1).unwrap();
        let sigma2: Permutation = rack_core::perm::parse_cycles(m, s2).unwrap();
        let prod12 = sigma1.compose(&sigma2).unwrap();
        let prod21 = sigma2.compose(&sigma1).unwrap();
        assert_ne!(prod12.power(2), prod21.power(2), "row {s1}: squares must differ");
        let h =
            rack_core::group::GeneratedGroup::new(m, vec![sigma1.clone(), sigma2.clone()]).unwrap();
        let orbit = h.class_orbit(&sigma1, 100_000).unwrap();
        assert!(
            orbit.binary_search(&sigma2).is_err(),
            "row {s1}: σ₁ and σ₂ must lie in distinct H-classes"
        );
        let order = h.order().unwrap();
        match expected_order {
            Some(expected) => assert_eq!(order, expected, "row {s1}"),
            None => {
                // the ambiguous dihedral rows: report the computed order
                assert_eq!(order, 12, "row {s1}: computed dihedral order");
                flagged += 1;
            }
        }
    }
    assert_eq!(flagged, 3);
    println!(
        "criterion 2: PASS — five rows verified; |H| = 21 and 36 exact; three dihedral rows \
         computed as order 12 with the naming ambiguity flagged"
    );
}

fn class_rack_of(m: usize, ty: &str) -> FiniteRack {
    let spec =
        ConjClassSpec::new(m, CycleType::parse(ty).unwrap(), Ambient::Symmetric, None).unwrap();
    class_rack(&spec, 100_000).expect("class fits the cap")
}

#[test]
fn criterion_03_table1_embeddings_attainable() {
    let budget = 10_000_000;
    let d3double = catalog_rack("D_3^(2)").unwrap();
    let oct2 = catalog_rack("oct2").unwrap();
    let cases: [(&FiniteRack, &str, usize, &str); 3] = [
        (&d3double, "D_3^(2)", 6, "1,2,3"),
        (&d3double, "D_3^(2)", 9, "2^3,3"),
        (&oct2, "oct2", 8, "4^2"),
    ];
    for (pattern, name, m, ty) in cases {
        let target = class_rack_of(m, ty);
        match find_embedding(pattern, &target, budget) {
            EmbedOutcome::Found(map) => {
                assert!(rack_core::rack::verify_embedding(pattern, &target, &map));
            }
            other => panic!("{name} must embed in ({ty}) in S_{m}, got {other:?}"),
        }
    }
    // supporting evidence for the defective sub-case: the row shape
    // (4, σ_o) with σ_o ≠ id does admit the embedding
    let target = class_rack_of(7, "3,4");
    assert!(matches!(find_embedding(&oct2, &target, budget), EmbedOutcome::Found(_)));
    println!(
        "criterion 3 (attainable part): PASS — D_3^(2) found in (1,2,3)/S_6 and (2^3,3)/S_9, \
         oct^(2) found in (4^2)/S_8 and additionally in (3,4)/S_7"
    );
}

/// The criterion as literally stated. It fails: the embedding does not
/// exist, by a complete anchored search (NotFound, not a budget stop).
/// Kept red on purpose; see the README and the witness notes of (2,4).
#[test]
fn criterion_03_oct2_in_4_2_s6_as_stated() {
    let oct2 = catalog_rack("oct2").unwrap();
    let target = class_rack_of(6, "2,4");
    let outcome = find_embedding(&oct2, &target, 10_000_000);
    // pin the mathematical fact so regressions are visible either way
    assert_ne!(outcome, EmbedOutcome::BudgetExceeded, "search must be complete");
    println!(
        "criterion 3 (as stated): {} — oct^(2) in (4,2)/S_6: {:?}",
        if matches!(outcome, EmbedOutcome::Found(_)) { "PASS" } else { "FAIL" },
        outcome
    );
    assert!(
        matches!(outcome, EmbedOutcome::Found(_)),
        "oct^(2) does not embed in the (4,2)-class of S_6: the octahedral double needs a \
         nontrivial odd part (the class is certified affinely instead); complete search \
         returned NotFound"
    );
}

#[test]
fn criterion_04_affine_double_rack_equivalence() {
    let mut racks = 0usize;
    let mut witnesses = 0usize;
    for q in [3u64, 4, 5, 7, 8, 9, 16, 25, 27] {
        for base in simple_affine_racks(q) {
            racks += 1;
            let d = base.twist_order();
            let exceptional = s_condition_exception(&base);
            for j in 0..d {
                let id = FpMatrix::identity(base.p(), base.dim());
                let matrix = id
                    .add(&base.matrix().pow((j + 1) % d))
                    .mul(&id.sub(base.matrix()));
                let vanishes = matrix.is_zero();
                assert_eq!(
                    exceptional == Some(j),
                    vanishes,
                    "q = {q}, j = {j}: the exceptional exponent is exactly the vanishing one"
                );
                let double = base.double_rack(j);
                let brute = brute_force_layer_witness(&double, base.size());
                match type_d_condition(&base, j) {
                    DoubleRackCondition::Witness { r, s } => {
                        assert!(!vanishes);
                        // the algebraic witness agrees with brute force
                        assert!(brute.is_some(), "q = {q}, j = {j}");
                        let rs = double.apply(r, s);
                        let srs = double.apply(s, rs);
                        assert_ne!(double.apply(r, srs), s);
                        witnesses += 1;
                    }
                    DoubleRackCondition::ConditionFails => {
                        assert!(vanishes, "q = {q}, j = {j}");
                    }
                }
            }
        }
    }
    println!(
        "criterion 4: PASS — {racks} simple affine racks over the nine field sizes; algebraic \
         condition ⇔ exceptional exponent, {witnesses} witnesses confirmed by brute force"
    );
}

#[test]
fn criterion_05_zolotarev_and_power_conjugacy() {
    let start = std::time::Instant::now();
    for m in (3..=45u64).step_by(2) {
        for k in 1..m {
            if gcd(k, m) != 1 {
                continue;
            }
            let lambda = power_conjugator(m, k).unwrap();
            assert_eq!(lambda.sign(), jacobi(k as i64, m).unwrap(), "m = {m}, k = {k}");
        }
    }
    // σ^k ~ σ in A_m iff J(k, m) = 1, by direct conjugator search: every
    // conjugator is λ_k σ^i, so scan the cyclic centralizer coset
    for m in (3..=13u64).step_by(2) {
        let spec = ConjClassSpec::new(
            m as usize,
            CycleType::parse(&m.to_string()).unwrap(),
            Ambient::Alternating,
            Some(SplitPart::Plus),
        )
        .unwrap();
        let sigma = spec.representative();
        for k in 2..m {
            if gcd(k, m) != 1 {
                continue;
            }
            let lambda = power_conjugator(m, k).unwrap();
            let power = sigma.power(k as i64);
            let mut even_conjugator = None;
            for i in 0..m {
                let candidate = lambda.compose(&sigma.power(i as i64)).unwrap();
                assert_eq!(candidate.conjugate(&sigma).unwrap(), power);
                if candidate.is_even() {
                    even_conjugator = Some(candidate);
                    break;
                }
            }
            assert_eq!(
                even_conjugator.is_some(),
                jacobi(k as i64, m).unwrap() == 1,
                "m = {m}, k = {k}"
            );
            assert_eq!(spec.contains(&power), even_conjugator.is_some());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "budget is ten seconds, took {elapsed:?}");
    println!("criterion 5: PASS — Zolotarev property to m = 45, conjugator search to m = 13, {elapsed:?}");
}

#[test]
fn criterion_06_negative_results_at_feasible_scale() {
    // the 12-element split (5)-class: full exhaustion
    let five = ConjClassSpec::new(
        5,
        CycleType::parse("5").unwrap(),
        Ambient::Alternating,
        Some(SplitPart::Plus),
    )
    .unwrap();
    let rack = class_rack(&five, 100).unwrap();
    assert_eq!(rack.size(), 12);
    let (subracks, pairs) = match exhaustive_type_d_search(&rack, &caps()) {
        ExhaustiveOutcome::NotTypeD { subracks, pairs } => (subracks, pairs),
        other => panic!("(5) split class must be NOT_TYPE_D by exhaustion, got {other:?}"),
    };
    // (1,5) in A_6: 72 elements, beyond the full-exhaustion limit; a
    // bounded partial report must be emitted and labeled as such
    let one_five = ConjClassSpec::new(
        6,
        CycleType::parse("1,5").unwrap(),
        Ambient::Alternating,
        Some(SplitPart::Plus),
    )
    .unwrap();
    let rack = class_rack(&one_five, 1000).unwrap();
    assert_eq!(rack.size(), 72);
    match exhaustive_type_d_search(&rack, &caps()) {
        ExhaustiveOutcome::Unknown { report } => {
            assert!(report.contains("bounded"), "partial report must be labeled: {report}");
            assert!(report.contains("exhaustion is infeasible"));
        }
        other => panic!("(1,5) must produce a labeled partial report, got {other:?}"),
    }
    println!(
        "criterion 6: PASS — (5) in A_5 NOT_TYPE_D by full exhaustion ({subracks} subracks, \
         {pairs} decomposable pairs); (1,5) in A_6 reported as a labeled bounded search"
    );
}

#[test]
fn criterion_07_mersenne_construction() {
    for part in [SplitPart::Plus, SplitPart::Minus] {
        let spec = ConjClassSpec::new(
            8,
            CycleType::parse("1,7").unwrap(),
            Ambient::Alternating,
            Some(part),
        )
        .unwrap();
        match classify(&spec, &caps()) {
            Verdict::TypeD { witness } => {
                assert!(witness.provenance.contains("mersenne"), "{}", witness.provenance);
                assert!(reverify(&witness));
                assert_eq!(witness.size_of_y(), 16, "two 8-element layers");
                if let WitnessBody::Class { set_r, set_s, .. } = &witness.body {
                    assert_eq!(set_r.len(), 8);
                    assert_eq!(set_s.len(), 8);
                }
            }
            other => panic!("(1,7) in A_8 must be TYPE_D via the field construction, got {other:?}"),
        }
    }
    println!("criterion 7: PASS — (1,7) in A_8 certified through F_8 ⋊ F_8^× in both split parts");
}

#[test]
fn criterion_08_cocycle_braid_agreement() {
    let mut corpus: Vec<(FiniteRack, Cocycle)> = Vec::new();
    let names = ["trivial:2", "trivial:3", "D_3", "D_4", "D_5", "cyclic:3", "cyclic:4",
                 "tetrahedron", "oct", "cube", "D_3^(2)", "dodecahedron", "oct2"];
    for name in names {
        let rack = catalog_rack(name).unwrap();
        assert!(rack.size() <= 12);
        let n = rack.size();
        // valid: constant roots of unity
        for (order, k) in [(1u64, 0i64), (2, 1), (3, 1), (4, 1)] {
            corpus.push((rack.clone(), Cocycle::constant(n, Cyclotomic::root(order, k))));
        }
        // deterministic single-entry mutations
        for seed in 0..2usize {
            let mut q = Cocycle::constant(n, Cyclotomic::integer(-1));
            *q.value_mut(seed % n, (2 * seed + 1) % n) = CMatrix::scalar(Cyclotomic::root(5, 1));
            corpus.push((rack.clone(), q));
        }
    }
    // braiding cocycles of small classes, plus mutations
    for (m, ty) in [(3usize, "1,2"), (4, "1,3"), (4, "2^2"), (5, "1^2,3")] {
        let spec =
            ConjClassSpec::new(m, CycleType::parse(ty).unwrap(), Ambient::Symmetric, None).unwrap();
        for rep in enumerate_degree_one(&spec.cycle_type).into_iter().take(3) {
            let (rack, q) = class_braiding_cocycle(&spec, &rep, 100).unwrap();
            if rack.size() > 12 {
                continue;
            }
            let mut mutated = q.clone();
            *mutated.value_mut(0, rack.size() - 1) = CMatrix::scalar(Cyclotomic::root(7, 1));
            corpus.push((rack.clone(), q));
            corpus.push((rack, mutated));
        }
    }
    assert!(corpus.len() >= 50, "corpus has {} tables", corpus.len());
    let mut valid = 0usize;
    let mut invalid = 0usize;
    for (i, (rack, q)) in corpus.iter().enumerate() {
        let identity_holds = q.validate(rack).is_ok();
        let braid_holds = braiding_check(rack, q).is_ok();
        assert_eq!(identity_holds, braid_holds, "table #{i} disagrees");
        if identity_holds {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid >= 10 && invalid >= 10);
    println!(
        "criterion 8: PASS — {} tables ({valid} valid, {invalid} invalid), identity ⇔ braid \
         equation with 100% agreement",
        corpus.len()
    );
}

#[test]
fn criterion_09_abelian_technique() {
    let cases = [
        (5usize, "1,2^2", 1u64, 3u64),
        (6, "1^2,2^2", 1, 3),
        (7, "2^2,3", 3, 5),
        (8, "2^4", 1, 3),
    ];
    for (m, ty, r, h) in cases {
        let spec = ConjClassSpec::new(
            m,
            CycleType::parse(ty).unwrap(),
            Ambient::Alternating,
            None,
        )
        .unwrap();
        let triple = diagonal_involution_triple(&spec, &caps())
            .unwrap_or_else(|e| panic!("({ty}) in A_{m}: {e}"));
        assert_eq!(triple.h, h, "h = r + 2 with r = {r}");
        assert_eq!(triple.h % 2, 1);
        match triple.verdict() {
            TriangleVerdict::InfiniteDimAllReps { diagram } => {
                assert_eq!(diagram.h, h);
            }
            TriangleVerdict::Inconclusive { reason } => {
                panic!("({ty}) in A_{m}: triple must verify, got {reason}")
            }
        }
    }
    println!(
        "criterion 9: PASS — verified commuting triples with odd h = r + 2 for the four \
         alternating classes, each concluding INFINITE_DIM_ALL_REPS"
    );
}

#[test]
fn criterion_10_theorem_tables() {
    let caps = caps();
    // symmetric survivors for m = 5, 6, 7
    let mut survivors: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    for m in 5..=7usize {
        for row in theorem_table(m, Ambient::Symmetric, &caps) {
            match &row.outcome {
                ClassOutcome::Survivors { survivors: s, .. } => {
                    for pair in s {
                        survivors
                            .entry(m)
                            .or_default()
                            .push((row.spec.type_string(), pair.rep.to_string()));
                    }
                }
                ClassOutcome::KilledAllReps { reason } => match reason {
                    KillReason::TypeD { witness } => assert!(reverify(witness)),
                    KillReason::AbelianTriple { triple } => assert!(triple.verify().is_ok()),
                    KillReason::CitedFact { citation, .. } => assert!(!citation.is_empty()),
                    KillReason::TrivialClass => {}
                },
            }
        }
    }
    let m5: Vec<&(String, String)> = survivors[&5].iter().collect();
    assert_eq!(m5.len(), 3);
    assert_eq!(m5.iter().filter(|(t, _)| t == "1^3,2").count(), 2);
    assert!(m5
        .iter()
        .all(|(t, r)| t != "1^3,2" || r.contains("ρ2 = sgn")));
    assert_eq!(m5.iter().filter(|(t, _)| t == "2,3").count(), 1);
    let m6 = &survivors[&6];
    assert_eq!(m6.len(), 4);
    assert_eq!(m6.iter().filter(|(t, _)| t == "1^4,2").count(), 2);
    assert_eq!(m6.iter().filter(|(t, _)| t == "2^3").count(), 2);
    let m7 = &survivors[&7];
    assert_eq!(m7.len(), 2);
    assert!(m7.iter().all(|(t, _)| t == "1^5,2"));

    // alternating tables are empty for m = 5..10, every kill certified or cited
    let mut alt_kills = 0usize;
    for m in 5..=10usize {
        for row in theorem_table(m, Ambient::Alternating, &caps) {
            match &row.outcome {
                ClassOutcome::KilledAllReps { reason } => {
                    match reason {
                        KillReason::TypeD { witness } => assert!(reverify(witness)),
                        KillReason::AbelianTriple { triple } => {
                            assert!(triple.verify().is_ok())
                        }
                        KillReason::CitedFact { citation, .. } => {
                            assert!(!citation.is_empty())
                        }
                        KillReason::TrivialClass => {}
                    }
                    alt_kills += 1;
                }
                ClassOutcome::Survivors { survivors, .. } => panic!(
                    "A_{m} class {} must not survive: {survivors:?}",
                    row.spec
                ),
            }
        }
    }
    println!(
        "criterion 10: PASS — S_m survivors match the recorded lists for m = 5..7 \
         (3 + 4 + 2 pairs); alternating tables empty for m = 5..10 with {alt_kills} \
         certified or cited kills"
    );
}

//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N: PASS` line (visible with `--nocapture`).
//!
//! Golden values come from the 3x3 worked example and its 5x4 extension;
//! the statistical criteria run over deterministic pseudo-random corpora.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use uum_cli::formats::{parse_csv, parse_cxt, serialize_csv, serialize_cxt};
use uum_core::{
    brute_force_concepts, concept_count_bound, gen_random_context, gen_random_extension,
    seed_recall, verify_propositions, verify_propositions_with, AttributeSet, ContextExtension,
    FormalContext, GenSpec, ObjectSet, RevelationMaps,
};

fn table1() -> FormalContext {
    FormalContext::new(
        ["A", "B", "C"],
        ["α", "β", "γ"],
        [("A", "α"), ("A", "β"), ("B", "γ"), ("C", "β"), ("C", "γ")],
    )
    .unwrap()
}

fn table2() -> FormalContext {
    FormalContext::new(
        ["A", "B", "C", "D", "E"],
        ["α", "β", "γ", "δ"],
        [
            ("A", "α"),
            ("A", "β"),
            ("A", "δ"),
            ("B", "α"),
            ("B", "γ"),
            ("C", "β"),
            ("C", "γ"),
            ("D", "α"),
            ("D", "δ"),
            ("E", "β"),
            ("E", "γ"),
        ],
    )
    .unwrap()
}

fn worked_extension() -> ContextExtension {
    ContextExtension::new(table1(), table2(), false).unwrap()
}

fn concept_names(k: &FormalContext, c: &uum_core::Concept) -> (Vec<String>, Vec<String>) {
    (
        c.extent().iter().map(|g| k.object_name(g).to_string()).collect(),
        c.intent().iter().map(|m| k.attribute_name(m).to_string()).collect(),
    )
}

#[test]
fn criterion_01_golden_negation() {
    let k = table1();
    let start = Instant::now();
    let negated = k.negate();
    let elapsed = start.elapsed();

    let rows: Vec<Vec<&str>> = (0..3)
        .map(|g| {
            let s = negated.object_set([g]).unwrap();
            negated
                .intent(&s)
                .unwrap()
                .iter()
                .map(|m| negated.attribute_name(m))
                .collect()
        })
        .collect();
    assert_eq!(rows, vec![vec!["γ"], vec!["α", "β"], vec!["α"]]);
    assert!(elapsed.as_micros() < 1000, "negation took {:?}", elapsed);
    println!("criterion 1 (golden negation): PASS");
}

#[test]
fn criterion_02_golden_anticoncepts() {
    let negative = table1().negate();
    let start = Instant::now();
    let concepts = negative.concept_list(None).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(concepts.len(), 5);
    assert_eq!(brute_force_concepts(&negative).unwrap(), concepts);
    let named: Vec<_> = concepts.iter().map(|c| concept_names(&negative, c)).collect();
    for expected in [
        (vec!["B", "C"], vec!["α"]),
        (vec!["A"], vec!["γ"]),
        (vec!["B"], vec!["α", "β"]),
    ] {
        let expected = (
            expected.0.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            expected.1.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        );
        assert!(named.contains(&expected), "missing {:?}", expected);
    }
    assert!(elapsed.as_micros() < 1000, "enumeration took {:?}", elapsed);
    println!("criterion 2 (golden anti-concepts): PASS");
}

#[test]
fn criterion_03_golden_birkhoff_values() {
    let k = table1();
    let s = k.objects_by_name(["A", "C"]).unwrap();
    assert_eq!(k.format_attributes(&k.intent(&s).unwrap()), "{β}");
    let t = k.attributes_by_name(["α", "β"]).unwrap();
    assert_eq!(k.format_objects(&k.extent(&t).unwrap()), "{A}");
    println!("criterion 3 (golden derivation values): PASS");
}

#[test]
fn criterion_04_golden_revelation_mappings() {
    let ext = worked_extension();
    let kp = ext.extended();
    assert!(ext.phi(&kp.objects_by_name(["B", "E"]).unwrap()).unwrap().is_empty());
    assert_eq!(
        kp.format_attributes(&ext.phi(&kp.objects_by_name(["A"]).unwrap()).unwrap()),
        "{δ}"
    );
    assert!(ext.psi(&kp.attributes_by_name(["γ", "δ"]).unwrap()).unwrap().is_empty());
    assert_eq!(
        kp.format_objects(&ext.psi(&kp.attributes_by_name(["β", "γ"]).unwrap()).unwrap()),
        "{E}"
    );
    println!("criterion 4 (golden revelation mappings): PASS");
}

#[test]
fn criterion_05_golden_discovery_and_seeds() {
    let ext = worked_extension();
    let star = ext.discovery_context();

    // the discovery relation, including the (A, δ) cross
    let rows: Vec<Vec<usize>> = (0..5).map(|g| {
        (0..4).filter(|&m| star.has(g, m)).collect()
    }).collect();
    assert_eq!(rows, vec![vec![3], vec![0], vec![], vec![0, 3], vec![1, 2]]);

    // its concepts include the four worked examples
    let concepts = star.concept_list(None).unwrap();
    let named: Vec<_> = concepts.iter().map(|c| concept_names(&star, c)).collect();
    for (extent, intent) in [
        (vec!["B", "D"], vec!["α"]),
        (vec!["E"], vec!["β", "γ"]),
        (vec!["A", "D"], vec!["δ"]),
        (vec!["D"], vec!["α", "δ"]),
    ] {
        let expected = (
            extent.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            intent.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        );
        assert!(named.contains(&expected), "missing {:?}", expected);
    }

    // exactly one maximal seed: ({B}; {α})
    let seeds = ext.maximal_seeds(None).unwrap();
    assert_eq!(seeds.len(), 1);
    assert_eq!(
        ext.base().format_objects(seeds[0].objects()),
        "{B}"
    );
    assert_eq!(
        ext.base().format_attributes(seeds[0].attributes()),
        "{α}"
    );

    // recall 1/4 against the four non-trivial discovery concepts
    let metrics = seed_recall(&ext, None).unwrap();
    assert_eq!(metrics.seed_count, 1);
    assert_eq!(metrics.discovery_concept_count, 4);
    assert_eq!(metrics.anticipated_count, 1);
    assert_eq!(metrics.recall, 0.25);
    println!("criterion 5 (golden discovery context and seeds): PASS");
}

#[test]
fn criterion_06_proposition_property_suite() {
    let start = Instant::now();
    let densities = [0.2, 0.5, 0.8];
    let growth = [(0, 1), (1, 0), (1, 1), (2, 2), (3, 3), (0, 3)];
    let mut trials = 0u64;
    for g in 1..=8usize {
        for m in 1..=8usize {
            for (di, &density) in densities.iter().enumerate() {
                for (vi, &(new_g, new_m)) in growth.iter().enumerate() {
                    let seed = trials
                        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                        .wrapping_add((g * 64 + m * 8 + di + vi) as u64);
                    let base =
                        gen_random_context(&GenSpec::new(g, m, density, seed).unwrap());
                    let ext =
                        gen_random_extension(&base, new_g, new_m, density, seed ^ 0xabcd).unwrap();
                    let report = verify_propositions(&ext, 128, seed);
                    assert!(
                        report.all_pass(),
                        "trial {} failed: {:?}",
                        trials,
                        report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
                    );
                    // the criterion's named laws are all present in the run
                    for name in [
                        "prop1_antitone",
                        "prop2_galois_connection",
                        "prop3_new_relations",
                        "prop4_seed_existence",
                        "prop5_no_existing_preconcept",
                        "prop6_seed_in_negative",
                        "birkhoff_galois",
                        "phi_is_discovery_intent",
                        "approximation_containment",
                    ] {
                        assert!(report.check(name).expect(name).pass, "{} failed", name);
                    }
                    trials += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(trials >= 1000, "only {} trials", trials);
    assert!(elapsed.as_secs() < 60, "suite took {:?}", elapsed);
    println!(
        "criterion 6 (propositions over {} random extensions in {:?}): PASS",
        trials, elapsed
    );
}

/// Deterministic corpus shared by criteria 7–9.
fn corpus() -> Vec<FormalContext> {
    let densities = [0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95];
    let mut contexts = Vec::new();
    let mut counter = 0u64;
    'outer: loop {
        for &density in &densities {
            for g in 1..=10usize {
                for m in 1..=10usize {
                    if contexts.len() >= 210 {
                        break 'outer;
                    }
                    counter += 1;
                    let seed = counter.wrapping_mul(0x2545_f491_4f6c_dd1d);
                    contexts.push(gen_random_context(
                        &GenSpec::new(g, m, density, seed).unwrap(),
                    ));
                }
            }
        }
    }
    contexts
}

#[test]
fn criterion_07_oracle_equivalence_and_count_bound() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 200);
    for k in &corpus {
        let enumerated = k.concept_list(None).unwrap();
        let oracle = brute_force_concepts(k).unwrap();
        assert_eq!(enumerated, oracle, "mismatch on {:?}", k);
        // the real-valued bound is strict; integer counts sit below bound + 1
        let bound = concept_count_bound(k.relation_size());
        assert!(
            (enumerated.len() as f64) < bound + 1.0,
            "count {} exceeds bound {} for |R|={}",
            enumerated.len(),
            bound,
            k.relation_size()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "suite took {:?}", elapsed);
    println!(
        "criterion 7 (oracle equivalence over {} contexts in {:?}): PASS",
        corpus.len(),
        elapsed
    );
}

#[test]
fn criterion_08_no_existing_preconcept_is_a_seed() {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let corpus = corpus();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pick = |n: usize| ((rng.next_u64() as u128 * n as u128) >> 64) as usize;

    let mut total = 0u64;
    for (i, k) in corpus.iter().enumerate() {
        if k.relation_size() == 0 {
            continue; // no preconcept has a non-empty attribute side
        }
        let ext = gen_random_extension(k, 2, 2, 0.4, i as u64).unwrap();
        let pairs: Vec<(usize, usize)> = (0..k.object_count())
            .flat_map(|g| (0..k.attribute_count()).map(move |m| (g, m)))
            .filter(|&(g, m)| k.has(g, m))
            .collect();
        for _ in 0..100 {
            // grow a preconcept around a random cross
            let (g, _) = pairs[pick(pairs.len())];
            let row = k.intent(&k.object_set([g]).unwrap()).unwrap();
            let members = row.indices();
            let chosen: Vec<usize> = members
                .iter()
                .copied()
                .filter(|_| pick(2) == 1)
                .collect();
            let u: AttributeSet = if chosen.is_empty() {
                k.attribute_set([members[pick(members.len())]]).unwrap()
            } else {
                k.attribute_set(chosen).unwrap()
            };
            let extent = k.extent(&u).unwrap();
            let ext_members = extent.indices();
            let chosen: Vec<usize> = ext_members
                .iter()
                .copied()
                .filter(|_| pick(2) == 1)
                .collect();
            let p: ObjectSet = if chosen.is_empty() {
                k.object_set([g]).unwrap()
            } else {
                k.object_set(chosen).unwrap()
            };
            assert!(k.is_preconcept(&p, &u).unwrap());
            assert!(
                !ext.is_seed(&p, &u).unwrap(),
                "preconcept ({:?}; {:?}) accepted as seed",
                p.indices(),
                u.indices()
            );
            total += 1;
        }
    }
    assert!(total >= 100 * 150, "only {} preconcepts sampled", total);
    println!(
        "criterion 8 (no existing preconcept is a seed; {} sampled): PASS",
        total
    );
}

#[test]
fn criterion_09_round_trips_and_bit_exact_writer() {
    // the writer's exact byte grammar
    let expected = "B\n\n3\n3\n\nA\nB\nC\nα\nβ\nγ\nXX.\n..X\n.XX\n";
    assert_eq!(serialize_cxt(&table1()), expected);

    let mut corpus = corpus();
    corpus.push(table1());
    corpus.push(table2());
    corpus.push(
        FormalContext::new(
            Vec::<String>::new(),
            Vec::<String>::new(),
            Vec::<(&str, &str)>::new(),
        )
        .unwrap(),
    );
    for k in &corpus {
        assert_eq!(&parse_cxt(&serialize_cxt(k)).unwrap(), k);
        assert_eq!(&parse_csv(&serialize_csv(k).unwrap()).unwrap(), k);
    }
    println!(
        "criterion 9 (cxt and csv round-trips over {} contexts): PASS",
        corpus.len()
    );
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run_uum(args: &[&str]) -> (Vec<u8>, Vec<u8>, Option<i32>) {
    let output = Command::new(env!("CARGO_BIN_EXE_uum"))
        .args(args)
        .env_remove("UUM_CAP")
        .output()
        .expect("binary runs");
    (output.stdout, output.stderr, output.status.code())
}

#[test]
fn criterion_10_cli_determinism() {
    let t1 = data("table1.cxt");
    let t1csv = data("table1.csv");
    let t2 = data("table2.cxt");
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.dot");
    let out_b = dir.path().join("b.dot");

    let commands: Vec<Vec<&str>> = vec![
        vec!["concepts", &t1],
        vec!["concepts", &t1, "--json"],
        vec!["concepts", &t1csv],
        vec!["negate", &t1],
        vec!["anticoncepts", &t1],
        vec!["candidates", &t1, "--json"],
        vec!["candidates", &t1],
        vec!["reveal", &t1, &t2],
        vec!["reveal", &t1, &t2, "--json"],
        vec!["seeds", &t1, &t2],
        vec!["seeds", &t1, &t2, "--json"],
        vec!["verify", &t1, &t2],
        vec!["verify", &t1, &t2, "--json", "--budget", "64"],
        vec!["gen", "--objects", "6", "--attributes", "5", "--density", "0.4", "--seed", "3"],
        vec![
            "extend", &t1, "--new-objects", "2", "--new-attributes", "1", "--new-density",
            "0.5", "--seed", "9",
        ],
        vec!["eval", "--trials", "5", "--seed", "4"],
        vec!["dot", &t1, "--labels", "reduced"],
    ];
    for args in &commands {
        let first = run_uum(args);
        let second = run_uum(args);
        assert_eq!(first, second, "non-deterministic output for {:?}", args);
        assert_eq!(first.2, Some(0), "command failed: {:?} -> {:?}", args, first);
    }

    // files written through --dot are byte-identical across runs too
    let a = out_a.to_str().unwrap().to_string();
    let b = out_b.to_str().unwrap().to_string();
    run_uum(&["concepts", &t1, "--dot", &a]);
    run_uum(&["concepts", &t1, "--dot", &b]);
    assert_eq!(std::fs::read(&out_a).unwrap(), std::fs::read(&out_b).unwrap());

    println!(
        "criterion 10 (byte-identical reruns across {} commands): PASS",
        commands.len() + 1
    );
}

#[test]
fn criterion_11_mutation_sensitivity() {
    struct SubtractionDisabled;
    impl RevelationMaps for SubtractionDisabled {
        fn phi(&self, ext: &ContextExtension, s: &ObjectSet) -> AttributeSet {
            // the one-line mutation: Φ without the ∖ ⋃ I_R(g) subtraction
            ext.extended().intent(s).expect("valid set")
        }
        fn psi(&self, ext: &ContextExtension, t: &AttributeSet) -> ObjectSet {
            ext.psi(t).expect("valid set")
        }
    }

    let ext = worked_extension();
    let healthy = verify_propositions(&ext, 1 << 20, 0);
    assert!(healthy.all_pass());

    let report = verify_propositions_with(&ext, 1 << 20, 0, &SubtractionDisabled);
    let prop3 = report.check("prop3_new_relations").unwrap();
    assert!(!prop3.pass, "mutated Φ must fail the induced-relation check");
    let witness = prop3.witness.as_ref().expect("concrete witness");
    assert!(!witness.is_empty());
    println!(
        "criterion 11 (mutation trips prop3 with witness `{}`): PASS",
        witness
    );
}

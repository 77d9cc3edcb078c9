//! Property tests for extensions, seeds, and the proposition checker.

use std::collections::BTreeSet;

use proptest::prelude::*;
use uum_core::{
    gen_random_context, gen_random_extension, seed_recall, verify_propositions, ContextExtension,
    FormalContext, GenSpec, Seed,
};

fn arb_monotone_extension() -> impl Strategy<Value = ContextExtension> {
    (
        1usize..=6,
        1usize..=6,
        prop_oneof![Just(0.2f64), Just(0.5), Just(0.8)],
        0usize..=3,
        0usize..=3,
        prop_oneof![Just(0.2f64), Just(0.5), Just(0.8)],
        any::<u64>(),
    )
        .prop_map(|(g, m, density, new_g, new_m, new_density, seed)| {
            let base = gen_random_context(&GenSpec::new(g, m, density, seed).unwrap());
            gen_random_extension(&base, new_g, new_m, new_density, seed.wrapping_add(1)).unwrap()
        })
}

fn arb_free_extension() -> impl Strategy<Value = ContextExtension> {
    // base and extension drawn independently: removals may appear anywhere
    (1usize..=5, 1usize..=5, 0usize..=2, 0usize..=2).prop_flat_map(|(g, m, extra_g, extra_m)| {
        let gp = g + extra_g;
        let mp = m + extra_m;
        (
            proptest::collection::vec(0..(1u64 << m), g),
            proptest::collection::vec(0..(1u64 << mp), gp),
        )
            .prop_map(move |(base_rows, plus_rows)| {
                let base = context_from_words(g, m, &base_rows);
                let plus = context_from_words(gp, mp, &plus_rows);
                ContextExtension::new(base, plus, true).unwrap()
            })
    })
}

fn context_from_words(g: usize, m: usize, rows: &[u64]) -> FormalContext {
    let objects: Vec<String> = (0..g).map(|i| format!("g{i}")).collect();
    let attributes: Vec<String> = (0..m).map(|i| format!("m{i}")).collect();
    let crosses: Vec<(String, String)> = rows
        .iter()
        .enumerate()
        .flat_map(|(gi, w)| {
            (0..m)
                .filter(move |mi| w & (1 << mi) != 0)
                .map(move |mi| (format!("g{gi}"), format!("m{mi}")))
        })
        .collect();
    FormalContext::new(objects, attributes, crosses).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propositions_hold_on_monotone_extensions(ext in arb_monotone_extension(), seed: u64) {
        let report = verify_propositions(&ext, 128, seed);
        prop_assert!(report.all_pass(), "failed checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn propositions_hold_even_with_removals(ext in arb_free_extension(), seed: u64) {
        let report = verify_propositions(&ext, 128, seed);
        prop_assert!(report.all_pass(), "failed checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn maximal_seeds_are_seeds(ext in arb_monotone_extension()) {
        let seeds = ext.maximal_seeds(None).unwrap();
        let mut seen = BTreeSet::new();
        for seed in &seeds {
            prop_assert!(ext.is_seed(seed.objects(), seed.attributes()).unwrap());
            prop_assert!(!seed.objects().is_empty() && !seed.attributes().is_empty());
            prop_assert!(seen.insert((seed.objects().clone(), seed.attributes().clone())));
            // the validated constructor accepts them
            prop_assert!(Seed::new(&ext, seed.objects().clone(), seed.attributes().clone()).is_ok());
        }
    }

    #[test]
    fn all_seeds_match_naive_enumeration(ext in all_seeds_sized_extension()) {
        let all: BTreeSet<_> = ext
            .all_seeds(None)
            .unwrap()
            .into_iter()
            .map(|s| (s.objects().clone(), s.attributes().clone()))
            .collect();

        // naive: test every non-empty pair of base subsets
        let base = ext.base();
        let g = base.object_count();
        let m = base.attribute_count();
        let mut naive = BTreeSet::new();
        for sw in 1..(1u64 << g) {
            for tw in 1..(1u64 << m) {
                let x = base.object_set((0..g).filter(|i| sw & (1 << i) != 0)).unwrap();
                let y = base.attribute_set((0..m).filter(|i| tw & (1 << i) != 0)).unwrap();
                if ext.is_seed(&x, &y).unwrap() {
                    naive.insert((x, y));
                }
            }
        }
        prop_assert_eq!(all, naive);

        // every maximal seed appears among all seeds
        let all_again: BTreeSet<_> = ext
            .all_seeds(None)
            .unwrap()
            .into_iter()
            .collect::<Vec<_>>()
            .into_iter()
            .map(|s| (s.objects().clone(), s.attributes().clone()))
            .collect();
        for seed in ext.maximal_seeds(None).unwrap() {
            prop_assert!(all_again.contains(&(seed.objects().clone(), seed.attributes().clone())));
        }
    }

    #[test]
    fn recall_metrics_are_bounded(ext in arb_monotone_extension()) {
        let metrics = seed_recall(&ext, None).unwrap();
        prop_assert!(metrics.anticipated_count <= metrics.discovery_concept_count);
        prop_assert!((0.0..=1.0).contains(&metrics.recall));
        if metrics.discovery_concept_count == 0 {
            prop_assert_eq!(metrics.recall, 0.0);
        }
    }

    #[test]
    fn generated_extensions_are_monotone(
        g in 0usize..=6, m in 0usize..=6, density in 0.0f64..=1.0,
        new_g in 0usize..=3, new_m in 0usize..=3, new_density in 0.0f64..=1.0,
        seed: u64,
    ) {
        let base = gen_random_context(&GenSpec::new(g, m, density, seed).unwrap());
        let ext = gen_random_extension(&base, new_g, new_m, new_density, seed).unwrap();
        prop_assert!(!ext.removals_present());
        prop_assert_eq!(ext.extended().object_count(), g + new_g);
        prop_assert_eq!(ext.extended().attribute_count(), m + new_m);
        // identical inputs reproduce the extension bit for bit
        let again = gen_random_extension(&base, new_g, new_m, new_density, seed).unwrap();
        prop_assert_eq!(ext.extended(), again.extended());
    }
}

fn all_seeds_sized_extension() -> impl Strategy<Value = ContextExtension> {
    // small enough for the 2^g · 2^m naive sweep
    (1usize..=4, 1usize..=4, 0usize..=2, 0usize..=2, any::<u64>()).prop_map(
        |(g, m, new_g, new_m, seed)| {
            let base = gen_random_context(&GenSpec::new(g, m, 0.4, seed).unwrap());
            gen_random_extension(&base, new_g, new_m, 0.4, seed.wrapping_add(7)).unwrap()
        },
    )
}

//! Round-trip invariants for the context file formats.

use proptest::prelude::*;
use uum_cli::formats::{parse_csv, parse_cxt, serialize_csv, serialize_cxt};
use uum_core::FormalContext;

fn arb_context() -> impl Strategy<Value = FormalContext> {
    (0usize..=7, 0usize..=7).prop_flat_map(|(g, m)| {
        proptest::collection::vec(0..(1u64 << m), g).prop_map(move |rows| {
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
        })
    })
}

proptest! {
    #[test]
    fn cxt_round_trip_identity(k in arb_context()) {
        prop_assert_eq!(&parse_cxt(&serialize_cxt(&k)).unwrap(), &k);
    }

    #[test]
    fn csv_round_trip_identity(k in arb_context()) {
        prop_assert_eq!(&parse_csv(&serialize_csv(&k).unwrap()).unwrap(), &k);
    }
}

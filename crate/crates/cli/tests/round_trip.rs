use proptest::prelude::*;
use solscat_cli::ScanResult;

fn finite_or_special() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => any::<f64>().prop_filter("finite", |v| v.is_finite()),
        1 => Just(f64::INFINITY),
        1 => Just(f64::NEG_INFINITY),
        1 => Just(f64::MIN_POSITIVE / 4.0),
    ]
}

proptest! {
    #[test]
    fn csv_round_trip_is_exact(
        width in 1usize..6,
        rows in proptest::collection::vec(proptest::collection::vec(finite_or_special(), 6), 0..20),
        meta in proptest::collection::vec(("[a-z_]{1,8}", "[ -~]{0,12}"), 0..4),
    ) {
        let mut table = ScanResult::new((0..width).map(|i| format!("col{i}")));
        for (k, v) in &meta {
            table.meta(k, v);
        }
        for r in rows {
            table.push(r[..width].to_vec());
        }
        let back = ScanResult::from_csv(&table.to_csv()).unwrap();
        prop_assert_eq!(&back.columns, &table.columns);
        prop_assert_eq!(&back.metadata, &table.metadata);
        prop_assert_eq!(back.rows.len(), table.rows.len());
        for (a, b) in back.rows.iter().zip(&table.rows) {
            for (x, y) in a.iter().zip(b) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}

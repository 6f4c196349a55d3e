//! Independent routes to the same numbers, checked through the public API.

use typeb_core::numeric::{expect_integer, int};
use typeb_core::permcore::{oracle_total, OracleQuery, DEFAULT_ENUMERATION_BOUND};
use typeb_core::riordan::ExpRiordanArray;
use typeb_core::sequences::stirling_b::StirlingBRecurrence;
use typeb_core::sequences::type_a::typeb_factorial_conv;
use typeb_core::Mode;

/// The r = 3 triangle as computed. Six cells in rows 4 to 6 differ from the
/// commonly reproduced table, which carries typesetting errors there.
const CORRECTED_R3: [&[i64]; 7] = [
    &[1],
    &[12, 1],
    &[144, 28, 1],
    &[1824, 592, 48, 1],
    &[25344, 11616, 1552, 72, 1],
    &[391680, 229248, 43360, 3280, 100, 1],
    &[6727680, 4724736, 1153408, 123360, 6080, 132, 1],
];

#[test]
fn r3_triangle_agrees_across_routes() {
    let rec = StirlingBRecurrence::new(6, 3, 2).unwrap();
    let array = ExpRiordanArray::stirling_b(2, 3, 6).unwrap();
    for (n, row) in CORRECTED_R3.iter().enumerate() {
        let want: Vec<_> = row.iter().map(|&v| int(v)).collect();
        assert_eq!(rec.row(n, 3).unwrap(), &want[..], "recurrence row {n}");
        let riordan: Vec<_> = (0..=n)
            .map(|k| expect_integer(&array.entry(n, k).unwrap(), "entry").unwrap())
            .collect();
        assert_eq!(riordan, want, "riordan row {n}");
        if n + 3 <= DEFAULT_ENUMERATION_BOUND {
            let oracle = OracleQuery::new(n, 3, Mode::Associated, 2).counts(DEFAULT_ENUMERATION_BOUND).unwrap();
            assert_eq!(oracle, want, "oracle row {n}");
        }
    }
}

#[test]
fn m3_column_zero_matches_oracle() {
    let rec = StirlingBRecurrence::new(6, 1, 3).unwrap();
    for n in 0..=6 {
        let oracle = OracleQuery::new(n, 1, Mode::Associated, 3).counts(DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(oracle[0], rec.get(n, 0, 1).unwrap(), "n={n}");
    }
}

#[test]
fn factorial_convolution_counts_all_permutations() {
    for mode in [Mode::Associated, Mode::Restricted] {
        let conv = typeb_factorial_conv(4, mode, 3);
        assert_eq!(conv, oracle_total(4, 0, mode, 3, DEFAULT_ENUMERATION_BOUND).unwrap());
    }
}

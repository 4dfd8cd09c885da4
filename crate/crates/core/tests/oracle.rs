//! Generating functions against exhaustive enumeration on random part sets.

use comppat::genfun::{build, build_with, PartWeights};
use comppat::patterns::{brute_force_table, composition_count};
use comppat::words::word_gf;
use comppat::{OccurrenceTable, PartSet, PatternId};
use num_bigint::BigInt;
use proptest::prelude::*;

fn part_set() -> impl Strategy<Value = PartSet> {
    prop::collection::btree_set(1u32..8, 1..5).prop_map(|s| PartSet::finite(s.into_iter().collect()).unwrap())
}

fn pattern() -> impl Strategy<Value = PatternId> {
    prop::sample::select(PatternId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn builders_match_brute_force(set in part_set(), p in pattern()) {
        let s = build::<BigInt>(p, &set, 13).unwrap();
        let got = OccurrenceTable::from_series(p, set.clone(), 13, &s);
        prop_assert_eq!(brute_force_table(p, &set, 13).compare(&got).1, vec![]);
    }

    #[test]
    fn rows_sum_to_composition_counts(set in part_set(), p in pattern()) {
        let s = build::<BigInt>(p, &set, 16).unwrap();
        let t = OccurrenceTable::from_series(p, set.clone(), 16, &s);
        for n in 0..=16 {
            prop_assert_eq!(t.row_total(n), composition_count(n, &set));
        }
    }

    #[test]
    fn y_one_collapses_to_unrestricted(set in part_set(), p in pattern()) {
        let w = PartWeights::<BigInt>::compositions(&set, 18);
        prop_assert_eq!(build_with(p, &w).unwrap().substitute_y1(), w.unrestricted().unwrap());
    }

    #[test]
    fn word_rows_sum_to_powers(k in 1u32..5, p in pattern()) {
        let s = word_gf::<BigInt>(p, k, 9).unwrap();
        let t = OccurrenceTable::from_series(p, PartSet::alphabet(k).unwrap(), 9, &s);
        for m in 0..=9u32 {
            let total: BigInt = t.counts.iter().filter(|((_, mm, _), _)| *mm == m).map(|(_, c)| c).sum();
            prop_assert_eq!(total, BigInt::from(k).pow(m));
        }
    }
}

use hurwitz_core::branch::{make_heart, BranchDatum};
use hurwitz_core::oracle::{exhaustive_counts, oracle_counts, OracleOptions, SlotChoice, WeakConvention};
use hurwitz_core::partition::{parse_partition, partitions_of, partitions_with_len};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

/// RH-compatible data of degree `d`, one per ordered triple of partitions.
fn compatible_data(d: usize) -> Vec<BranchDatum> {
    let parts = partitions_of(d);
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            for c in &parts {
                if let Ok(Some(datum)) = BranchDatum::from_partitions([a.clone(), b.clone(), c.clone()]) {
                    out.push(datum);
                }
            }
        }
    }
    out
}

#[test]
fn anchored_matches_exhaustive_up_to_degree_7() {
    let opts = OracleOptions::with_threads(1);
    let data: Vec<BranchDatum> = (1..=7).flat_map(compatible_data).collect();
    data.par_iter().for_each(|datum| {
        let anchored = oracle_counts(datum, &opts).unwrap();
        let full = exhaustive_counts(datum).unwrap();
        assert_eq!(anchored, full, "{datum}");
    });
}

#[test]
fn anchor_choice_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut data: Vec<BranchDatum> = (4..=8).flat_map(compatible_data).collect();
    for (g, h, k) in [(0, 1, 5), (0, 2, 5), (1, 1, 5), (1, 2, 5), (2, 3, 5)] {
        let len = h + 2 - 2 * g;
        for pi in partitions_with_len(2 * k, len) {
            data.push(make_heart(g, h, k, &pi).unwrap());
        }
    }
    data.shuffle(&mut rng);
    data.truncate(120);
    let choices: Vec<SlotChoice> = (0..3)
        .flat_map(|s| (0..3).filter(move |&a| a != s).map(move |a| SlotChoice { stream: s, anchor: a }))
        .collect();
    for datum in data {
        let base = oracle_counts(&datum, &OracleOptions::default()).unwrap();
        let choice = *choices.choose(&mut rng).unwrap();
        let opts = OracleOptions {
            slots: Some(choice),
            ..OracleOptions::default()
        };
        match oracle_counts(&datum, &opts) {
            Ok(counts) => assert_eq!(counts, base, "{datum} with {choice:?}"),
            // identity-like anchors can have huge centralizers; skip those
            Err(hurwitz_core::OracleError::CentralizerTooLarge { .. }) => {}
            Err(e) => panic!("{datum}: {e}"),
        }
    }
}

#[test]
fn thread_count_does_not_change_counts() {
    let p = |s: &str| parse_partition(s).unwrap();
    let data = [
        make_heart(0, 2, 6, &p("5,4,2,1")).unwrap(),
        make_heart(2, 3, 6, &p("12")).unwrap(),
        make_heart(1, 2, 5, &p("7,3")).unwrap(),
    ];
    for datum in &data {
        let serial = oracle_counts(datum, &OracleOptions::with_threads(1)).unwrap();
        for t in [2, 8] {
            assert_eq!(oracle_counts(datum, &OracleOptions::with_threads(t)).unwrap(), serial);
        }
        assert_eq!(serial.weak(WeakConvention::REFLECTION_AND_SLOTS), serial.weak(WeakConvention::REFLECTION));
    }
}

#[test]
#[ignore]
fn time_one_degree_16_row() {
    let p = |s: &str| parse_partition(s).unwrap();
    let t = std::time::Instant::now();
    let c = oracle_counts(&make_heart(0, 1, 8, &p("6,5,5")).unwrap(), &OracleOptions::default()).unwrap();
    eprintln!("{c:?} in {:?}", t.elapsed());
}


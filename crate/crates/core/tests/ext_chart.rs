//! The Ext chart against stored and published values.

use std::collections::BTreeMap;

use isochart::data::{GOLDEN_EXT, GOLDEN_MAX_S, GOLDEN_MAX_T};
use isochart::deformation::{self, AdamsData};
use isochart::ext::{self, minimal_resolution, Resolution};
use isochart::Chart;

#[test]
fn golden_chart_regression() {
    let golden = Chart::from_tsv(GOLDEN_EXT).unwrap();
    let chart = minimal_resolution(GOLDEN_MAX_S, GOLDEN_MAX_T).unwrap().ext_chart(GOLDEN_MAX_S, GOLDEN_MAX_T);
    assert_eq!(chart, golden);
}

// Named classes of the classical E2 page with their (s, t).
const NAMED: &[(&str, i64, i64)] = &[
    ("h0", 1, 1),
    ("h3", 1, 8),
    ("h4", 1, 16),
    ("h2^3 = h1^2 h3", 3, 12),
    ("c0", 3, 11),
    ("P h1", 5, 14),
    ("P h2", 5, 16),
    ("h3^2", 2, 16),
    ("d0", 4, 18),
    ("h0^7 h4", 8, 23),
    ("h1 d0", 5, 20),
    ("e0", 4, 21),
    ("f0", 4, 22),
    ("c1", 3, 22),
    ("g", 4, 24),
];

#[test]
fn named_classes_are_present() {
    let chart = Chart::from_tsv(GOLDEN_EXT).unwrap();
    for &(name, s, t) in NAMED {
        assert!(chart.dim(&[s, t]) >= 1, "{name} missing at ({s},{t})");
    }
    // nothing at all in stems 4, 5, 12 and 13 above filtration 0
    for stem in [4, 5, 12, 13] {
        for s in 1..=12 {
            assert_eq!(chart.dim(&[s, s + stem]), 0, "stem {stem}, s {s}");
        }
    }
    // the h0-tower on h3 has length 4
    let stem7: Vec<usize> = (1..=6).map(|s| chart.dim(&[s, s + 7])).collect();
    assert_eq!(stem7, [1, 1, 1, 1, 0, 0]);
}

// log2 of the order of the 2-primary stable stems 1..=20.
const KNOWN_STEMS: [(i64, usize); 20] = [
    (1, 1),
    (2, 1),
    (3, 3),
    (4, 0),
    (5, 0),
    (6, 1),
    (7, 4),
    (8, 2),
    (9, 3),
    (10, 1),
    (11, 3),
    (12, 0),
    (13, 0),
    (14, 2),
    (15, 6),
    (16, 2),
    (17, 4),
    (18, 4),
    (19, 4),
    (20, 3),
];

#[test]
fn bundled_differentials_give_known_stems() {
    let max_s = 12;
    let max_t = 21 + max_s;
    let e2 = minimal_resolution(max_s, max_t).unwrap().ext_chart(max_s, max_t);
    let ds = deformation::parse_differentials(isochart::data::ADAMS_DIFFERENTIALS).unwrap();
    let data = AdamsData::new(e2, ds).unwrap();
    let survivors = data.survivors_per_stem();
    let found: BTreeMap<i64, usize> = (1..=20).map(|n| (n, survivors.get(&n).copied().unwrap_or(0))).collect();
    assert_eq!(found, KNOWN_STEMS.into_iter().collect());
}

#[test]
fn worker_count_does_not_change_anything() {
    let run = |w| {
        let mut r = Resolution::new().with_workers(w);
        r.extend(8, 24).unwrap();
        (r.ext_chart(8, 24).to_tsv(), r.to_checkpoint())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn checkpoint_round_trip_then_extend() {
    let mut a = Resolution::new();
    a.extend(5, 12).unwrap();
    let mut b = Resolution::from_checkpoint(&a.to_checkpoint()).unwrap();
    b.extend(8, 20).unwrap();
    let c = minimal_resolution(8, 20).unwrap();
    assert_eq!(b.to_checkpoint(), c.to_checkpoint());
}

#[test]
fn resolution_is_exact_and_minimal() {
    let mut r = minimal_resolution(5, 16).unwrap();
    r.verify_exactness(5, 16).unwrap();
    r.verify_minimality().unwrap();
}

#[test]
fn cobar_agrees_past_the_oracle_window() {
    let res = minimal_resolution(4, 14).unwrap().ext_chart(4, 14);
    let cobar = ext::cobar_ext(4, 14, 5_000_000).unwrap();
    assert_eq!(res.first_dim_mismatch(&cobar), None);
}

mod common;

use common::{div, TestCurve, R};
use fv_core::basept::in_base_locus;
use fv_core::oracle::{h0_divisor, sweep, Suite, SweepConfig, SweepReport, SCHEMA_VERSION};
use fv_core::pt;
use proptest::prelude::*;

fn config(suite: Suite, den: u32, points: u32, n: u32) -> SweepConfig {
    let mut c = SweepConfig::new(suite);
    c.max_denominator = den;
    c.max_points = points;
    c.max_n = n;
    c.jobs = 1;
    c
}

/// Everything in a report except timing and execution settings.
fn outcome(r: &SweepReport) -> impl PartialEq + std::fmt::Debug {
    (
        r.grid_size,
        r.skipped,
        r.checks.clone(),
        r.notes.clone(),
        r.mismatch_count,
        r.mismatches.clone(),
        r.success,
    )
}

fn clean(r: &SweepReport) {
    assert!(r.success && r.mismatch_count == 0, "{:?}", r.mismatches);
    assert!(r.checks.values().all(|c| c.compared > 0), "{:?}", r.checks);
}

#[test]
fn small_sweeps_are_clean() {
    clean(&sweep(&config(Suite::Floor, 6, 2, 6)).unwrap());
    clean(&sweep(&config(Suite::Divisor, 6, 3, 6)).unwrap());
    let mut c = config(Suite::Vanish, 4, 2, 10);
    c.p1 = false;
    c.torsion_orders = (2..=10).collect();
    let r = sweep(&c).unwrap();
    clean(&r);
    assert!(r.compared("v-successive") > 0);
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    for suite in [
        Suite::Floor,
        Suite::Divisor,
        Suite::Vanish,
        Suite::Basept,
        Suite::Crossmodule,
    ] {
        let mut c = config(suite, 4, 2, 4);
        c.torsion_orders = vec![3, 5];
        let base = sweep(&c).unwrap();
        assert_eq!(
            outcome(&base),
            outcome(&sweep(&c).unwrap()),
            "{suite:?} repeat"
        );
        c.jobs = 3;
        assert_eq!(
            outcome(&base),
            outcome(&sweep(&c).unwrap()),
            "{suite:?} jobs"
        );
        c.chunk_size = 5;
        assert_eq!(
            outcome(&base),
            outcome(&sweep(&c).unwrap()),
            "{suite:?} chunks"
        );
    }
}

#[test]
fn resuming_covers_the_remaining_chunks() {
    let mut c = config(Suite::Floor, 5, 2, 5);
    c.chunk_size = 7;
    let full = sweep(&c).unwrap();
    let mut last = full.compared("crt");
    for k in 1..=full.chunks {
        c.start_chunk = k;
        let r = sweep(&c).unwrap();
        assert_eq!(r.chunks, full.chunks);
        assert!(r.compared("crt") < last, "chunk {k}");
        last = r.compared("crt");
    }
    assert_eq!(last, 0);
    c.start_chunk = full.chunks + 1;
    assert!(sweep(&c).is_err());
}

#[test]
fn report_round_trips_through_json() {
    let r = sweep(&config(Suite::Divisor, 4, 2, 4)).unwrap();
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    let text = serde_json::to_string(&r).unwrap();
    let back: SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}

#[test]
fn configuration_limits_are_enforced() {
    let mut c = config(Suite::Floor, 4, 2, 4);
    c.jobs = 0;
    assert!(sweep(&c).is_err());
    let mut c = config(Suite::Floor, 4, 2, 4);
    c.chunk_size = 0;
    assert!(sweep(&c).is_err());
    let mut c = config(Suite::Vanish, 4, 2, 4);
    c.torsion_orders = vec![0];
    assert!(sweep(&c).is_err());
    assert!("nosuch".parse::<Suite>().is_err());
    assert_eq!("basept".parse::<Suite>().unwrap(), Suite::Basept);
}

#[test]
fn section_counts() {
    let p1 = TestCurve::P1;
    let e = TestCurve::elliptic(5, &[("Q", 0), ("P", 1)]);
    type Case<'a> = (&'a TestCurve, &'a [(&'static str, i64)], u64);
    let cases: [Case; 6] = [
        (&p1, &[("P", 3)], 4),
        (&p1, &[("P", -1)], 0),
        (&e, &[], 1),
        (&e, &[("P", 1), ("Q", -1)], 0),
        (&e, &[("P", 5), ("Q", -5)], 1),
        (&e, &[("P", 2)], 2),
    ];
    for (c, d, want) in cases {
        let terms: Vec<(&'static str, R)> =
            d.iter().map(|(p, k)| (*p, R::from_integer(*k))).collect();
        assert_eq!(h0_divisor(&c.model(), &div(&terms)).unwrap(), want, "{d:?}");
        assert_eq!(c.h0(c.class(d)) as u64, want);
    }
}

fn curve() -> impl Strategy<Value = TestCurve> {
    prop_oneof![
        Just(TestCurve::P1),
        (3i64..=12).prop_map(|t| TestCurve::elliptic(t, &[("Q", 0), ("P1", 1), ("P2", t - 1)])),
        Just(TestCurve::elliptic(0, &[("Q", 0), ("P1", 2), ("P2", -3)])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn sections_and_base_loci_match_riemann_roch(c in curve(), k in prop::collection::vec(-4i64..=4, 3)) {
        let d: Vec<(&'static str, i64)> = ["Q", "P1", "P2"].into_iter().zip(k).collect();
        let terms: Vec<(&'static str, R)> = d.iter().map(|(p, k)| (*p, R::from_integer(*k))).collect();
        let model = c.model();
        prop_assert_eq!(h0_divisor(&model, &div(&terms)).unwrap() as i64, c.h0(c.class(&d)));
        prop_assert_eq!(
            in_base_locus(&model, &pt("Q"), &div(&terms)).unwrap(),
            c.in_base_locus("Q", c.class(&d))
        );
    }
}

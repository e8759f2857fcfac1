mod common;

use common::{ce, div, fraction, r, TestCurve, R};
use fv_core::curve::{CurveModel, PicardModel};
use fv_core::divcrit::Order;
use fv_core::vanish::{
    extremal_boundary, is_empty_adjoint, maximal_l, nvl_dichotomy, nvl_standard, successive_empty,
    successive_empty_infinite, AdjointProblem, Preamble, VanishCase,
};
use fv_core::{pt, Divisor};
use proptest::prelude::*;

type Terms = Vec<(&'static str, R)>;

const HORIZON: i64 = 60;

fn d(s: &str) -> Divisor {
    s.parse().expect("valid divisor")
}

fn problem(c: &TestCurve, l: &Terms, b: &Terms) -> AdjointProblem {
    AdjointProblem::new(c.model(), div(l), div(b)).expect("valid problem")
}

fn empty_at(c: &TestCurve, l: &Terms, b: &Terms, i: i64) -> bool {
    c.h0(c.adjoint(l, b, i)) == 0
}

/// Largest `N ≤ HORIZON` with every system through `N` empty.
fn reach(c: &TestCurve, l: &Terms, b: &Terms) -> i64 {
    (1..=HORIZON)
        .find(|&i| !empty_at(c, l, b, i))
        .map_or(HORIZON, |i| i - 1)
}

fn curve() -> impl Strategy<Value = TestCurve> {
    prop_oneof![
        2 => Just(TestCurve::P1),
        2 => (3i64..=12, 1i64..12, 1i64..12).prop_filter_map("distinct points", |(t, a, b)| {
            let (a, b) = (a % t, b % t);
            (a != 0 && b != 0 && a != b).then(|| TestCurve::elliptic(t, &[("Q", 0), ("P1", a), ("P2", b)]))
        }),
        1 => (-4i64..=4, -4i64..=4).prop_filter_map("distinct points", |(a, b)| {
            (a != 0 && b != 0 && a != b).then(|| TestCurve::elliptic(0, &[("Q", 0), ("P1", a), ("P2", b)]))
        }),
    ]
}

/// `(L, B)` on `Q, P1, P2` with `deg L ≥ 0` and `B ≥ 0`.
fn adjoint(max_den: i64) -> impl Strategy<Value = (Terms, Terms)> {
    (
        prop::collection::vec(fraction(r(-2, 1), r(2, 1), max_den), 3),
        prop::collection::vec(fraction(r(0, 1), r(1, 1), 4), 3),
        prop::collection::vec(any::<bool>(), 3),
    )
        .prop_filter_map("deg L >= 0", |(lc, bc, on)| {
            let names = ["Q", "P1", "P2"];
            let l: Terms = names.iter().copied().zip(lc).collect();
            let b: Terms = names
                .iter()
                .copied()
                .zip(bc)
                .zip(on)
                .filter(|(_, on)| *on)
                .map(|(t, _)| t)
                .collect();
            (l.iter().map(|(_, c)| *c).sum::<R>() >= r(0, 1)).then_some((l, b))
        })
}

fn elliptic(t: u64) -> CurveModel {
    CurveModel::Elliptic(
        PicardModel::cyclic(t)
            .unwrap()
            .with_point(pt("Q"), vec![0])
            .unwrap()
            .with_point(pt("P"), vec![1])
            .unwrap(),
    )
}

#[test]
fn single_step_examples() {
    let p =
        AdjointProblem::new(CurveModel::P1, d("1@Q - 1/2@P1 - 1/2@P2"), Divisor::zero()).unwrap();
    assert_eq!(
        is_empty_adjoint(&p).unwrap(),
        (true, VanishCase::Fractional)
    );
    let p = AdjointProblem::new(CurveModel::P1, Divisor::zero(), d("1/2@P")).unwrap();
    assert_eq!(is_empty_adjoint(&p).unwrap(), (true, VanishCase::Trivial));
    let p = AdjointProblem::new(elliptic(5), d("1@Q - 1@P"), Divisor::zero()).unwrap();
    assert_eq!(is_empty_adjoint(&p).unwrap(), (true, VanishCase::Torsion));
    let err = AdjointProblem::new(CurveModel::P1, d("-1@Q"), Divisor::zero()).unwrap_err();
    assert_eq!(err.hypothesis_name(), Some("deg L >= 0"));
}

#[test]
fn successive_examples() {
    let p =
        AdjointProblem::new(CurveModel::P1, d("1@Q - 3/4@P - 1/8@Pp"), Divisor::zero()).unwrap();
    let r4 = successive_empty(&p, 4).unwrap();
    assert_eq!((r4.case, r4.holds), (VanishCase::Fractional, Some(true)));
    assert_eq!(r4.delta, Some(d("3/4@P + 1/8@Pp")));
    assert_eq!(successive_empty(&p, 5).unwrap().holds, Some(false));
    let e = AdjointProblem::new(elliptic(5), d("1@Q - 1@P"), Divisor::zero()).unwrap();
    let r4 = successive_empty(&e, 4).unwrap();
    assert_eq!((r4.case, r4.holds), (VanishCase::Torsion, Some(true)));
    assert_eq!(successive_empty(&e, 5).unwrap().holds, Some(false));
    let t = AdjointProblem::new(CurveModel::P1, Divisor::zero(), d("1@P")).unwrap();
    assert!((2..30).all(|n| successive_empty(&t, n).unwrap().holds == Some(true)));
    assert!(successive_empty(&t, 1).is_err());
}

#[test]
fn unbounded_examples() {
    let inf = |l: &str, b: &str| {
        let p = AdjointProblem::new(CurveModel::P1, d(l), d(b)).unwrap();
        successive_empty_infinite(&p).unwrap().n_max
    };
    assert_eq!(inf("1@Q - 2/3@P1 - 1/3@P2", "1/3@P1"), Order::Infinite);
    assert_eq!(inf("1@Q - 1/2@P1 - 1/2@P2", "1/2@P2"), Order::Infinite);
    assert_eq!(inf("1@Q - 3/4@P - 1/8@Pp", ""), Order::Finite(4));
}

#[test]
fn torsion_order_decides_emptiness() {
    for t in 2..=12u64 {
        let e = AdjointProblem::new(elliptic(t), d("1@Q - 1@P"), Divisor::zero()).unwrap();
        for n in 2..=14u32 {
            assert_eq!(successive_empty(&e, n).unwrap().holds, Some(t > n as u64));
        }
        assert_eq!(
            successive_empty_infinite(&e).unwrap().n_max,
            Order::Finite(t as u32 - 1)
        );
    }
}

#[test]
fn maximal_shapes_are_empty_and_saturated() {
    for n in 1..=7u32 {
        let shapes = maximal_l(n).unwrap();
        assert_eq!(shapes.len(), common::farey(n as i64).len() - 1);
        for s in &shapes {
            let (x, xn) = (s.x.to_string(), s.x_next.to_string());
            let l: Terms = vec![("Pp", x_of(&xn)), ("P", -x_of(&x))];
            assert_eq!(div(&l), s.shape);
            assert!(
                reach(&TestCurve::P1, &l, &vec![]) >= n as i64,
                "{}",
                s.shape
            );
            match s.free_multiple {
                Some(i) => {
                    let i = R::from_integer(i as i64);
                    assert!((i * x_of(&xn)).is_integer() && (i * x_of(&x)).is_integer());
                    assert_eq!(i * (x_of(&xn) - x_of(&x)), r(1, 1));
                    assert!(i <= R::from_integer(((n - 1) * n) as i64));
                }
                None => assert_eq!(n, 1),
            }
        }
    }
    assert_eq!(maximal_l(1).unwrap()[0].shape, d("1@Pp"));
}

fn x_of(s: &str) -> R {
    let v = s.parse::<fv_core::Rational>().unwrap();
    let (n, d) = v.to_i64_pair().unwrap();
    r(n, d)
}

/// `(a, b)` of the dichotomy for `m(K+B)` on `P¹`, up to the given bounds.
fn branches(b: &Terms, m: i64, bound_a: i64, bound_b: i64) -> (Option<i64>, Option<i64>) {
    let deg: R = b.iter().map(|(_, c)| *c).sum();
    let a = (deg == r(2, 1))
        .then(|| {
            (1..=bound_a).find(|&n| {
                b.iter()
                    .all(|(_, c)| (R::from_integer(n * m) * c).is_integer())
            })
        })
        .flatten();
    let first = (1..=bound_b).find(|&n| {
        let k = n * m;
        let up: i64 = b.iter().map(|(_, c)| ce(R::from_integer(k) * c)).sum();
        up - 2 * k - 2 >= 0
    });
    (a, first)
}

#[test]
fn nvl_examples() {
    let rep = nvl_dichotomy(1, &d("1/2@P + 2/3@Pp + 9/10@Q"), 1).unwrap();
    assert_eq!((rep.branch(), rep.branch_b), ("b", Some(5)));
    let rep = nvl_dichotomy(1, &d("1/2@P1 + 1/2@P2 + 1@P3"), 1).unwrap();
    assert_eq!(rep.preamble, Some(Preamble::Torsion { r: 2 }));
    let rep = nvl_standard(1, &d("1/2@P + 2/3@Pp + 9/10@Q")).unwrap();
    assert_eq!((rep.bound_a, rep.bound_b), (2, 5));
}

#[test]
fn extremal_boundaries_reach_the_bound() {
    for l in 1..=3u32 {
        let b = extremal_boundary(l);
        let terms: Terms = b
            .iter()
            .map(|(p, c)| {
                let (n, dd) = c.to_i64_pair().unwrap();
                (
                    match p.as_str() {
                        "P" => "P",
                        "Pp" => "Pp",
                        _ => "R",
                    },
                    r(n, dd),
                )
            })
            .collect();
        let bound = ((l + 1) * (l + 1) + 1) as i64;
        assert_eq!(
            branches(&terms, 1, 2 * l as i64, bound),
            (None, Some(bound))
        );
        let rep = nvl_dichotomy(1, &b, l).unwrap();
        assert_eq!(rep.branch_b, Some(bound as u32));
    }
    assert_eq!(
        nvl_standard(1, &extremal_boundary(1)).unwrap().branch_b,
        Some(5)
    );
}

#[test]
fn standard_form_can_miss_both_branches_for_larger_m() {
    let b = d("1/2@P1 + 2/3@P2 + 6/7@P3");
    let rep = nvl_standard(3, &b).unwrap();
    assert!(!rep.holds());
    let terms: Terms = vec![("P1", r(1, 2)), ("P2", r(2, 3)), ("P3", r(6, 7))];
    assert_eq!(branches(&terms, 3, 2, 5), (None, None));
    assert!(nvl_standard(1, &b).unwrap().holds());
}

#[test]
fn standard_form_holds_for_m_one() {
    let qs: Vec<i64> = (2..=12).collect();
    for (i, &a) in qs.iter().enumerate() {
        for (j, &bq) in qs.iter().enumerate().skip(i) {
            for &c in &qs[j..] {
                let terms: Terms = vec![
                    ("P1", r(a - 1, a)),
                    ("P2", r(bq - 1, bq)),
                    ("P3", r(c - 1, c)),
                ];
                if r(1, a) + r(1, bq) + r(1, c) > r(1, 1) {
                    continue;
                }
                let rep = nvl_standard(1, &div(&terms)).unwrap();
                let (ba, bb) = branches(&terms, 1, 2, 5);
                assert_eq!(
                    (rep.branch_a.map(i64::from), rep.branch_b.map(i64::from)),
                    (ba, bb)
                );
                assert!(rep.holds(), "{a} {bq} {c}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1500,
        max_global_rejects: 20_000,
        ..ProptestConfig::default()
    })]

    #[test]
    fn successive_emptiness_matches_sections(c in curve(), s in adjoint(6), n in 2u32..=10) {
        let (l, b) = s;
        let p = problem(&c, &l, &b);
        let want = reach(&c, &l, &b);
        let rep = successive_empty(&p, n).unwrap();
        prop_assert_eq!(rep.holds, Some(want >= n as i64));
        prop_assert_eq!(is_empty_adjoint(&p).unwrap().0, empty_at(&c, &l, &b, 1));
        match rep.n_max {
            Order::Finite(m) => prop_assert_eq!(m as i64, want),
            Order::Infinite => prop_assert_eq!(want, HORIZON),
        }
        prop_assert_eq!(successive_empty_infinite(&p).unwrap().n_max, rep.n_max);
        if rep.case == VanishCase::Fractional {
            let delta = rep.delta.clone().unwrap();
            let note = (&delta + &div(&l).scale(2)).round_up().degree() - fv_core::q(2, 1);
            prop_assert!(note.is_zero());
        }
    }

    #[test]
    fn report_depends_on_l_through_its_class(s in adjoint(6), shift in prop::collection::vec(-3i64..=3, 2), n in 2u32..=8) {
        let (l, b) = s;
        let moved: Terms = vec![
            ("Q", common::coeff(&l, "Q") - R::from_integer(shift[0] + shift[1])),
            ("P1", common::coeff(&l, "P1") + R::from_integer(shift[0])),
            ("P2", common::coeff(&l, "P2") + R::from_integer(shift[1])),
        ];
        let a = successive_empty(&problem(&TestCurve::P1, &l, &b), n).unwrap();
        let z = successive_empty(&problem(&TestCurve::P1, &moved, &b), n).unwrap();
        prop_assert_eq!((a.case, a.n_max, a.holds, a.delta), (z.case, z.n_max, z.holds, z.delta));
    }

    #[test]
    fn dichotomy_branches_match_direct_count(
        cs in prop::collection::vec(fraction(r(1, 3), r(12, 13), 13), 3..=4),
        m in 1u32..=3,
    ) {
        let total: R = cs.iter().sum();
        prop_assume!(total >= r(2, 1));
        let names = ["P1", "P2", "P3", "P4"];
        let terms: Terms = names.iter().copied().zip(cs.iter().copied()).collect();
        let mut fr: Vec<R> = cs.iter().map(|c| (R::from_integer(m as i64) * c).fract()).filter(|c| *c != r(0, 1)).collect();
        fr.sort();
        let l = fr.iter().take(2).map(|c| *(r(1, 1) - c).numer()).max().unwrap_or(1).max(1);
        let rep = nvl_dichotomy(m, &div(&terms), l as u32).unwrap();
        let (ba, bb) = branches(&terms, m as i64, 2 * l, (l + 1) * (l + 1) + 1);
        prop_assert_eq!(rep.branch_a.map(i64::from), ba);
        prop_assert_eq!(rep.branch_b.map(i64::from), bb);
    }
}

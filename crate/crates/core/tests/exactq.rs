mod common;

use common::{above, at_or_below, farey, fraction, r, to_q, R};
use fv_core::exactq::{
    delta_plus, farey_floor, farey_set, gap_empty, in_bounded_numerator, index_of,
    rationals_between, FareyInterval,
};
use fv_core::{q, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(x: &Rational) -> BigRational {
    BigRational::new(x.numer(), x.denom())
}

fn wide() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![
        (-50i64..50, 1i64..50),
        (-(1i64 << 62)..(1i64 << 62), 1i64..(1i64 << 62)),
    ]
}

#[test]
fn farey_sets_of_small_order() {
    let show = |n| -> Vec<String> {
        farey_set(n)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    };
    assert_eq!(show(4), ["0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"]);
    assert_eq!(show(3), ["0", "1/3", "1/2", "2/3", "1"]);
    assert!(farey_set(0).is_err());
}

#[test]
fn interval_endpoints() {
    assert_eq!(delta_plus(&q(2, 5), 3).unwrap(), q(1, 2));
    assert_eq!(delta_plus(&q(3, 4), 5).unwrap(), q(4, 5));
    assert_eq!(farey_floor(&q(2, 5), 3).unwrap(), q(1, 3));
    assert_eq!(farey_floor(&q(9, 10), 3).unwrap(), q(2, 3));
    let iv = FareyInterval::containing(&q(2, 5), 3).unwrap();
    assert!(iv.contains(&q(2, 5)) && !iv.contains(&q(1, 2)));
    assert_eq!(iv.width(), q(1, 6));
    assert!(delta_plus(&Rational::one(), 3).is_err());
}

#[test]
fn gaps_and_bounded_numerators() {
    assert!(gap_empty(&q(1, 3), &q(1, 2), 4).unwrap());
    assert!(!gap_empty(&q(1, 3), &q(1, 2), 5).unwrap());
    assert!(!in_bounded_numerator(&q(3, 7), 2).unwrap());
    assert!(in_bounded_numerator(&q(3, 7), 3).unwrap());
    assert!(in_bounded_numerator(&q(5, 6), 5).unwrap());
    assert!(in_bounded_numerator(&Rational::one(), 5).is_err());
    assert_eq!(index_of(&q(6, 4)), BigInt::from(2));
}

#[test]
fn farey_set_matches_enumeration() {
    for n in 1..=25 {
        let lib: Vec<Rational> = farey_set(n).unwrap();
        let want: Vec<Rational> = farey(n as i64).iter().map(to_q).collect();
        assert_eq!(lib, want, "order {n}");
    }
}

#[test]
fn overflowing_products_stay_exact() {
    let a = q(i64::MAX, 3);
    let b = q(i64::MAX - 1, 7);
    let want = big(&a) * big(&b);
    assert_eq!(big(&(&a * &b)), want);
    assert_eq!(&(&a * &b) / &b, a);
    assert_eq!((&a - &a).to_string(), "0");
}

proptest! {
    #[test]
    fn arithmetic_agrees_with_big_rationals(x in wide(), y in wide()) {
        let (a, b) = (q(x.0, x.1), q(y.0, y.1));
        let (ba, bb) = (big(&a), big(&b));
        prop_assert_eq!(big(&(&a + &b)), &ba + &bb);
        prop_assert_eq!(big(&(&a - &b)), &ba - &bb);
        prop_assert_eq!(big(&(&a * &b)), &ba * &bb);
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), &ba / &bb);
        }
        prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        prop_assert_eq!(big(&a.floor()), ba.floor());
        prop_assert_eq!(big(&a.ceil()), ba.ceil());
        prop_assert_eq!(a.to_string(), ba.to_string());
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn endpoints_match_enumeration(x in fraction(r(0, 1), r(29, 30), 30), n in 1u32..=20) {
        let xq = to_q(&x);
        prop_assert_eq!(delta_plus(&xq, n).unwrap(), to_q(&above(x, n as i64)));
        prop_assert_eq!(farey_floor(&xq, n).unwrap(), to_q(&at_or_below(x, n as i64)));
    }

    #[test]
    fn gap_identity_matches_enumeration(
        a in fraction(r(0, 1), r(1, 1), 12),
        b in fraction(r(0, 1), r(1, 1), 12),
        n in 1u32..=14,
    ) {
        prop_assume!(a < b);
        let inside = farey(n as i64).into_iter().any(|f| a < f && f < b);
        prop_assert_eq!(gap_empty(&to_q(&a), &to_q(&b), n).unwrap(), !inside);
    }

    #[test]
    fn bounded_numerator_means_small_reduced_numerator(
        x in fraction(r(1, 40), r(39, 40), 40),
        l in 1u32..=6,
    ) {
        let has_rep = (1..=l as i64).any(|p| {
            let qq = R::from_integer(p) / x;
            qq.is_integer()
        });
        prop_assert_eq!(in_bounded_numerator(&to_q(&x), l).unwrap(), has_rep);
    }

    #[test]
    fn rationals_between_lists_the_box(lo in fraction(r(-1, 1), r(1, 1), 6), len in fraction(r(0, 1), r(2, 1), 6)) {
        let hi = lo + len;
        let lib = rationals_between(&to_q(&lo), &to_q(&hi), 7);
        let mut want: Vec<R> = (1..=7i64)
            .flat_map(|b| (-20..=20).map(move |a| r(a, b)))
            .filter(|x| lo <= *x && *x <= hi)
            .collect();
        want.sort();
        want.dedup();
        prop_assert_eq!(lib, want.iter().map(to_q).collect::<Vec<_>>());
    }
}

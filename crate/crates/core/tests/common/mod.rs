//! Brute-force references written against `num_rational` only, sharing no
//! code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fv_core::curve::{CurveModel, PicardModel};
use fv_core::{pt, q, Divisor, Rational};
use num_rational::Ratio;
use proptest::prelude::*;

pub type R = Ratio<i64>;

pub fn r(n: i64, d: i64) -> R {
    R::new(n, d)
}

pub fn to_q(x: &R) -> Rational {
    q(*x.numer(), *x.denom())
}

pub fn fl(x: R) -> i64 {
    x.floor().to_integer()
}

pub fn ce(x: R) -> i64 {
    x.ceil().to_integer()
}

/// `[0,1] ∩ ⋃_{b≤n} (1/b)ℤ`, sorted.
pub fn farey(n: i64) -> Vec<R> {
    let mut v: Vec<R> = (1..=n)
        .flat_map(|b| (0..=b).map(move |a| r(a, b)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Least Farey fraction of order `m` strictly above `x`.
pub fn above(x: R, m: i64) -> R {
    farey(m).into_iter().find(|f| *f > x).expect("x < 1")
}

/// Largest Farey fraction of order `m` at or below `x`.
pub fn at_or_below(x: R, m: i64) -> R {
    farey(m).into_iter().rfind(|f| *f <= x).expect("x >= 0")
}

/// First `i ≤ n` with `⌊iδ - b⌋ + ⌊iδ' - b'⌋ < i - 1`.
pub fn floor_failure(d: R, b: R, dp: R, bp: R, n: i64) -> Option<i64> {
    (1..=n).find(|&i| {
        let i_r = R::from_integer(i);
        fl(i_r * d - b) + fl(i_r * dp - bp) < i - 1
    })
}

pub fn div(t: &[(&'static str, R)]) -> Divisor {
    Divisor::from_terms(t.iter().map(|(p, c)| (pt(p), to_q(c))))
}

pub fn coeff(t: &[(&'static str, R)], p: &str) -> R {
    t.iter().filter(|(x, _)| *x == p).map(|(_, c)| *c).sum()
}

pub fn points_of(ts: &[&[(&'static str, R)]]) -> Vec<&'static str> {
    let mut v: Vec<&'static str> = ts.iter().flat_map(|t| t.iter().map(|(p, _)| *p)).collect();
    v.sort();
    v.dedup();
    v
}

/// First `i ≤ n` with `deg⌊iΔ - B⌋ < i - 1`.
pub fn div_failure(delta: &[(&'static str, R)], b: &[(&'static str, R)], n: i64) -> Option<i64> {
    let pts = points_of(&[delta, b]);
    (1..=n).find(|&i| {
        let deg: i64 = pts
            .iter()
            .map(|p| fl(R::from_integer(i) * coeff(delta, p) - coeff(b, p)))
            .sum();
        deg < i - 1
    })
}

/// A curve of genus at most one with its own class arithmetic: `P¹` or an
/// elliptic curve whose `Pic⁰` is `ℤ/t` (`t = 0` meaning `ℤ`).
#[derive(Debug, Clone)]
pub enum TestCurve {
    P1,
    Elliptic {
        t: i64,
        elems: BTreeMap<&'static str, i64>,
    },
}

impl TestCurve {
    pub fn elliptic(t: i64, elems: &[(&'static str, i64)]) -> Self {
        TestCurve::Elliptic {
            t,
            elems: elems
                .iter()
                .map(|(p, g)| (*p, if t == 0 { *g } else { g.rem_euclid(t) }))
                .collect(),
        }
    }

    pub fn model(&self) -> CurveModel {
        match self {
            TestCurve::P1 => CurveModel::P1,
            TestCurve::Elliptic { t, elems } => {
                let mut m = if *t == 0 {
                    PicardModel::free()
                } else {
                    PicardModel::cyclic(*t as u64).expect("positive order")
                };
                for (p, g) in elems {
                    m = m.with_point(pt(p), vec![*g]).expect("distinct elements");
                }
                CurveModel::Elliptic(m)
            }
        }
    }

    fn reduce(&self, g: i64) -> i64 {
        match self {
            TestCurve::Elliptic { t, .. } if *t > 0 => g.rem_euclid(*t),
            _ => g,
        }
    }

    /// `(deg, Pic⁰ part)` of an integral divisor.
    pub fn class(&self, d: &[(&'static str, i64)]) -> (i64, i64) {
        let deg = d.iter().map(|(_, c)| c).sum();
        let g = match self {
            TestCurve::P1 => 0,
            TestCurve::Elliptic { elems, .. } => d.iter().map(|(p, c)| c * elems[p]).sum(),
        };
        (deg, self.reduce(g))
    }

    pub fn canonical_degree(&self) -> i64 {
        match self {
            TestCurve::P1 => -2,
            TestCurve::Elliptic { .. } => 0,
        }
    }

    /// Dimension of the space of sections, by Riemann–Roch.
    pub fn h0(&self, (deg, g): (i64, i64)) -> i64 {
        match self {
            TestCurve::P1 => (deg + 1).max(0),
            TestCurve::Elliptic { .. } => match deg {
                d if d < 0 => 0,
                0 => i64::from(g == 0),
                d => d,
            },
        }
    }

    pub fn point(&self, p: &str) -> (i64, i64) {
        match self {
            TestCurve::P1 => (1, 0),
            TestCurve::Elliptic { elems, .. } => (1, elems[p]),
        }
    }

    /// `Q ∈ Bs|E|`, with every point in the base locus of an empty system.
    pub fn in_base_locus(&self, qp: &str, e: (i64, i64)) -> bool {
        let (d, g) = self.point(qp);
        self.h0((e.0 - d, self.reduce(e.1 - g))) == self.h0(e)
    }

    /// Class of `⌈K + B + iL⌉`.
    pub fn adjoint(&self, l: &[(&'static str, R)], b: &[(&'static str, R)], i: i64) -> (i64, i64) {
        let up: Vec<(&'static str, i64)> = points_of(&[l, b])
            .into_iter()
            .map(|p| (p, ce(coeff(b, p) + R::from_integer(i) * coeff(l, p))))
            .collect();
        let (deg, g) = self.class(&up);
        (deg + self.canonical_degree(), g)
    }
}

/// Rationals `a/b` in `[lo, hi]` with `b ≤ max_den`.
pub fn fraction(lo: R, hi: R, max_den: i64) -> impl Strategy<Value = R> {
    (1..=max_den)
        .prop_filter("nonempty range", move |&b| {
            ce(lo * R::from_integer(b)) <= fl(hi * R::from_integer(b))
        })
        .prop_flat_map(move |b| {
            let b_r = R::from_integer(b);
            (ce(lo * b_r)..=fl(hi * b_r)).prop_map(move |a| r(a, b))
        })
}

//! Brute-force engines and the exhaustive sweep harness.
//!
//! The engines evaluate every condition term by term from concrete
//! representatives: `h⁰` by Riemann–Roch on the curve model, base loci by
//! comparing `h⁰(E - Q)` with `h⁰(E)`. They share only the arithmetic and
//! divisor plumbing with the classifiers.

mod suites;
mod sweep;

pub use sweep::{CheckStats, Mismatch, Suite, SweepConfig, SweepReport, SCHEMA_VERSION};

use crate::basept::BaseptProblem;
use crate::curve::{Class, CurveModel};
use crate::divisor::{Divisor, PointId};
use crate::error::Result;
use crate::exactq::Rational;
use crate::vanish::AdjointProblem;

/// `h⁰` of an integral class by Riemann–Roch.
pub fn h0(curve: &CurveModel, e: &Class) -> u64 {
    match curve {
        CurveModel::P1 => (e.degree + 1).max(0) as u64,
        CurveModel::Elliptic(_) => match e.degree {
            d if d < 0 => 0,
            0 => u64::from(curve.is_trivial(e)),
            d => d as u64,
        },
    }
}

/// `h⁰` of an integral divisor; fractional coefficients are rejected.
pub fn h0_divisor(curve: &CurveModel, e: &Divisor) -> Result<u64> {
    Ok(h0(curve, &curve.class_of(e)?))
}

/// Class of `⌈K + B + iL⌉ = K + ⌈B + iL⌉`.
pub fn adjoint_class(curve: &CurveModel, l: &Divisor, b: &Divisor, i: u32) -> Result<Class> {
    let up = (b + &l.scale(i as i64)).round_up();
    Ok(curve.add(&curve.canonical_class(), &curve.class_of(&up)?))
}

/// `|⌈K + B + iL⌉| = ∅`.
pub fn empty_adjoint_oracle(p: &AdjointProblem, i: u32) -> Result<bool> {
    Ok(h0(&p.curve, &adjoint_class(&p.curve, &p.l, &p.b, i)?) == 0)
}

/// Least `i ≤ cap` with `|⌈K + B + iL⌉| ≠ ∅`.
pub fn first_nonempty(p: &AdjointProblem, cap: u32) -> Result<Option<u32>> {
    for i in 1..=cap {
        if !empty_adjoint_oracle(p, i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `Q ∈ Bs|E|`, with `Bs|∅| = C`.
pub fn base_locus_oracle(curve: &CurveModel, q: &PointId, e: &Class) -> bool {
    let minus_q = curve.sub(e, &curve.point_class(q));
    h0(curve, &minus_q) == h0(curve, e)
}

/// `Q ∈ Bs|⌈K + B + iL⌉|`.
pub fn basept_oracle(p: &BaseptProblem, i: u32) -> Result<bool> {
    Ok(base_locus_oracle(
        &p.curve,
        &p.q,
        &adjoint_class(&p.curve, &p.l, &p.b, i)?,
    ))
}

/// Least `i ≤ cap` with `Q ∉ Bs|⌈K + B + iL⌉|`.
pub fn first_basept_failure(p: &BaseptProblem, cap: u32) -> Result<Option<u32>> {
    for i in 1..=cap {
        if !basept_oracle(p, i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Least `i ≤ cap` with `⌊iδ - b⌋ + ⌊iδ' - b'⌋ < i - 1`.
pub fn floor_first_failure(
    delta: &Rational,
    b: &Rational,
    delta_p: &Rational,
    b_p: &Rational,
    cap: u32,
) -> Option<u32> {
    (1..=cap).find(|&i| {
        let k = i as i64;
        let s = (delta.scale(k) - b).floor() + (delta_p.scale(k) - b_p).floor();
        s < Rational::from(k - 1)
    })
}

/// Least `i ≤ cap` with `deg⌊iΔ - B⌋ < i - 1`.
pub fn div_first_failure(delta: &Divisor, b: &Divisor, cap: u32) -> Option<u32> {
    (1..=cap).find(|&i| {
        let k = i as i64;
        (&delta.scale(k) - b).round_down().degree() < Rational::from(k - 1)
    })
}

/// Least `i ≤ cap` with `deg⌊iΔ⌋ ≠ i - 1`.
pub fn equality_first_failure(delta: &Divisor, cap: u32) -> Option<u32> {
    (1..=cap).find(|&i| {
        let k = i as i64;
        delta.scale(k).round_down().degree() != Rational::from(k - 1)
    })
}

/// Sweeps the suite's grid, comparing every classifier with its oracle.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    suites::run(config)
}

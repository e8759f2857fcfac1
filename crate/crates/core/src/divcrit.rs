//! Divisor-level floor criteria.
//!
//! For `0 ≤ B ≤ Δ` with `⌊Δ⌋ = 0` and `deg Δ ≤ 1`, the inequalities
//! `deg⌊iΔ - B⌋ ≥ i - 1` (`1 ≤ i ≤ N`) only see the two largest coefficients
//! of `Δ`: they hold iff the remainder `Δ''` satisfies `⌊NΔ''⌋ = 0` and the
//! two-term floor system holds at the top two points.

use serde::Serialize;

use crate::divisor::{Divisor, PointId};
use crate::error::{Error, Result};
use crate::exactq::{delta_plus, index_u64, q, Rational};
use crate::floorcrit::{classify_crt, holds_no_b, CrtCase, CrtClassification, CrtInput, Verdict};

/// The two largest coefficients of an effective divisor and what remains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopCoefficients {
    pub p: Option<PointId>,
    pub delta: Rational,
    pub p2: Option<PointId>,
    pub delta2: Rational,
    pub rest: Divisor,
}

/// Splits off the two largest coefficients. Ties go to the smaller point name.
pub fn top_two(delta: &Divisor) -> Result<TopCoefficients> {
    if !delta.is_effective() {
        return Err(Error::hypothesis("Delta >= 0", format!("Delta={delta}")));
    }
    let pick = |d: &Divisor| -> Option<(PointId, Rational)> {
        let mut best: Option<(&PointId, &Rational)> = None;
        for (p, c) in d.iter() {
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((p, c));
            }
        }
        best.map(|(p, c)| (p.clone(), c.clone()))
    };
    let mut rest = delta.clone();
    let first = pick(&rest);
    if let Some((p, _)) = &first {
        rest.set(p.clone(), Rational::zero());
    }
    let second = pick(&rest);
    if let Some((p, _)) = &second {
        rest.set(p.clone(), Rational::zero());
    }
    let (p, delta_top) = first.map_or((None, Rational::zero()), |(p, c)| (Some(p), c));
    let (p2, delta2) = second.map_or((None, Rational::zero()), |(p, c)| (Some(p), c));
    Ok(TopCoefficients {
        p,
        delta: delta_top,
        p2,
        delta2,
        rest,
    })
}

fn check_div(delta: &Divisor, b: &Divisor, n: u32, need_n2: bool) -> Result<()> {
    let show = || format!("Delta={delta}, B={b}, N={n}");
    if !b.is_effective() {
        return Err(Error::hypothesis("B >= 0", show()));
    }
    if !b.le(delta) {
        return Err(Error::hypothesis("B <= Delta", show()));
    }
    if !delta.round_down().is_zero() {
        return Err(Error::hypothesis("floor(Delta) = 0", show()));
    }
    if delta.degree() > Rational::one() {
        return Err(Error::hypothesis("deg Delta <= 1", show()));
    }
    if need_n2 && n < 2 {
        return Err(Error::hypothesis("N >= 2", show()));
    }
    Ok(())
}

/// Term-by-term evaluation of `deg⌊iΔ - B⌋ ≥ i - 1` for `1 ≤ i ≤ N`.
pub fn holds_direct_div(delta: &Divisor, b: &Divisor, n: u32) -> Result<Verdict> {
    check_div(delta, b, n, true)?;
    Ok(direct_div_unchecked(delta, b, n))
}

fn direct_div_unchecked(delta: &Divisor, b: &Divisor, n: u32) -> Verdict {
    for i in 1..=n {
        let k = i as i64;
        if (&delta.scale(k) - b).round_down().degree() < Rational::from(k - 1) {
            return Verdict::FailsAt(i);
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivClassification {
    pub holds: bool,
    pub top: TopCoefficients,
    /// `⌊NΔ''⌋ = 0`.
    pub residual_clear: bool,
    /// Whether the two-point system (or `δ⁺_N + δ' ≥ 1` when `B = 0`) holds.
    pub pair_holds: bool,
    /// `δ⁺_N` of the top coefficient, reported for the boundary-free case.
    pub delta_plus: Option<Rational>,
    /// Closed-form reading of the two-point system.
    pub pair: CrtClassification,
}

/// Decides `deg⌊iΔ - B⌋ ≥ i - 1` for `i ≤ N` through the top-two reduction.
pub fn classify_div(delta: &Divisor, b: &Divisor, n: u32) -> Result<DivClassification> {
    check_div(delta, b, n, true)?;
    let top = top_two(delta)?;
    let residual_clear = top.rest.scale(n as i64).round_down().is_zero();
    let b_at = |p: &Option<PointId>| p.as_ref().map_or_else(Rational::zero, |p| b.coeff(p));
    let input = CrtInput::new(
        top.delta.clone(),
        b_at(&top.p),
        top.delta2.clone(),
        b_at(&top.p2),
        n,
    )?;
    let pair = classify_crt(&input);
    let (pair_holds, dp) = if b.is_zero() {
        (
            holds_no_b(&top.delta, &top.delta2, n)?,
            Some(delta_plus(&top.delta, n)?),
        )
    } else {
        (pair.case != CrtCase::Fails, None)
    };
    Ok(DivClassification {
        holds: residual_clear && pair_holds,
        pair,
        top,
        residual_clear,
        pair_holds,
        delta_plus: dp,
    })
}

/// Largest `N` for which `deg⌊iΔ - B⌋ ≥ i - 1` holds for all `1 ≤ i ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// Whether the inequalities hold for all `i ≤ n`.
    pub fn reaches(self, n: u32) -> bool {
        match self {
            Order::Infinite => true,
            Order::Finite(m) => n <= m,
        }
    }

    pub fn min(self, cap: u32) -> u32 {
        match self {
            Order::Infinite => cap,
            Order::Finite(m) => m.min(cap),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u32(*n),
            Order::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinity"),
        }
    }
}

/// Whether `Δ = δP + (1-δ)P'` with `B` either zero or a single point of
/// coefficient at most `1/index(δ)`.
fn complementary_shape_unbounded(delta: &Divisor, b: &Divisor) -> bool {
    if delta.len() != 2 || delta.degree() != Rational::one() {
        return false;
    }
    if b.is_zero() {
        return true;
    }
    if b.len() != 1 {
        return false;
    }
    let (_, coeff) = delta.iter().next().expect("two points");
    let l = index_u64(coeff) as i64;
    let (_, bc) = b.iter().next().expect("one point");
    bc <= &q(1, l)
}

/// Vanishing order of `(Δ, B)`: infinite exactly for `Δ = P`, or for
/// `Δ = δP + (1-δ)P'` with `B = 0` or `0 ≠ B ≤ (1/l)·(one point)` where `l`
/// is the index of `δ`; otherwise found by an upward search.
pub fn vanishing_order(delta: &Divisor, b: &Divisor) -> Result<Order> {
    if !delta.is_effective() {
        return Err(Error::hypothesis("Delta >= 0", format!("Delta={delta}")));
    }
    if delta.degree() > Rational::one() {
        return Err(Error::hypothesis(
            "deg Delta <= 1",
            format!("Delta={delta}"),
        ));
    }
    if !b.is_effective() {
        return Err(Error::hypothesis("B >= 0", format!("B={b}")));
    }
    if !b.le(delta) {
        return Err(Error::hypothesis(
            "B <= Delta",
            format!("Delta={delta}, B={b}"),
        ));
    }
    if !delta.round_down().is_zero() {
        // deg Δ ≤ 1 and Δ ≥ 0 leave only Δ = P.
        return Ok(Order::Infinite);
    }
    if complementary_shape_unbounded(delta, b) {
        return Ok(Order::Infinite);
    }
    let top = top_two(delta)?;
    let gap = Rational::one() - &top.delta - &top.delta2;
    let cap = if gap.is_positive() {
        gap.recip()?.ceil().to_i64().unwrap_or(i64::MAX) as u64 + 2
    } else {
        index_u64(&top.delta) + 2
    };
    for n in 2..=cap.min(u32::MAX as u64) as u32 {
        if !classify_div(delta, b, n)?.holds {
            return Ok(Order::Finite(n - 1));
        }
    }
    Err(Error::Domain(format!(
        "vanishing search for Delta={delta}, B={b} passed its bound {cap}"
    )))
}

/// Whether `deg⌊iΔ⌋ = i - 1` for every `1 ≤ i ≤ N`, evaluated directly.
pub fn equality_profile(delta: &Divisor, n: u32) -> Result<bool> {
    check_div(delta, &Divisor::zero(), n, false)?;
    Ok((1..=n as i64).all(|i| delta.scale(i).round_down().degree() == Rational::from(i - 1)))
}

/// The same property through its closed form: either `δ ∈ [(N-1)/N, 1)` and
/// `⌊NΔ'⌋ = 0`, or `δ' ≥ 1 - δ⁺_N` and `iΔ` is never integral of degree `i`.
pub fn equality_profile_criterion(delta: &Divisor, n: u32) -> Result<bool> {
    check_div(delta, &Divisor::zero(), n, false)?;
    if n == 0 {
        return Err(Error::hypothesis("N >= 1", "N=0"));
    }
    let top = top_two(delta)?;
    let ni = n as i64;
    let mut after_top = top.rest.clone();
    if let Some(p2) = &top.p2 {
        after_top.set(p2.clone(), top.delta2.clone());
    }
    let first = top.delta >= q(ni - 1, ni) && after_top.scale(ni).round_down().is_zero();
    let deg = delta.degree();
    let second = top.delta2 >= Rational::one() - delta_plus(&top.delta, n)?
        && (deg < Rational::one() || (1..=ni).all(|i| !delta.scale(i).is_integral()));
    Ok(first || second)
}

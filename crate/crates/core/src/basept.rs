//! Whether a fixed point `Q` lies in the base loci of `|⌈K + B + iL⌉|`.
//!
//! Base loci follow the convention `Bs|∅| = C`. On `P¹` every nonempty
//! complete system is base-point free, so `Q ∈ Bs|E|` iff `|E| = ∅`. On an
//! elliptic curve a degree-one system `|E|` has the single member `P_E` with
//! `[P_E] = [E]`, and systems of degree at least two are free.
//!
//! Classification tags: `sp-1..3` for a single step, `4.6-1`, `4.6-2`,
//! `4.7-1..3` for `N = 2`, `4.5-1`, `4.5-2`, `4.9-1..4` for finite `N ≥ 3`,
//! `cor-1..3` for every `i ≥ 1`. Overlapping cases are all reported.

use serde::Serialize;

use crate::curve::{Class, CurveModel, ElementOrder};
use crate::divcrit::Order;
use crate::divisor::{Divisor, PointId};
use crate::error::{Error, Result};
use crate::exactq::{index_u64, q, Rational};

/// `(C, L, B, Q)` with `B ≥ 0` and `deg L ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseptProblem {
    pub curve: CurveModel,
    pub l: Divisor,
    pub b: Divisor,
    pub q: PointId,
}

impl BaseptProblem {
    pub fn new(curve: CurveModel, l: Divisor, b: Divisor, q: PointId) -> Result<Self> {
        if !b.is_effective() {
            return Err(Error::hypothesis("B >= 0", format!("B={b}")));
        }
        if l.degree().is_negative() {
            return Err(Error::hypothesis("deg L >= 0", format!("L={l}")));
        }
        Ok(BaseptProblem { curve, l, b, q })
    }
}

/// `Q ∈ Bs|E|` for an integral class `E`.
pub fn in_base_locus_class(curve: &CurveModel, q: &PointId, e: &Class) -> bool {
    match curve {
        CurveModel::P1 => e.degree < 0,
        CurveModel::Elliptic(_) => match e.degree {
            d if d < 0 => true,
            0 => !curve.is_trivial(e),
            1 => *e == curve.point_class(q),
            _ => false,
        },
    }
}

/// `Q ∈ Bs|E|` for an integral divisor `E`.
pub fn in_base_locus(curve: &CurveModel, q: &PointId, e: &Divisor) -> Result<bool> {
    Ok(in_base_locus_class(curve, q, &curve.class_of(e)?))
}

/// Both sides of `Q ∈ Bs|K + D| ⟺ Q ∉ Bs|Q - D|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Duality {
    pub q_in_bs_k_plus_d: bool,
    pub q_not_in_bs_q_minus_d: bool,
}

impl Duality {
    pub fn agrees(self) -> bool {
        self.q_in_bs_k_plus_d == self.q_not_in_bs_q_minus_d
    }
}

pub fn duality_check(curve: &CurveModel, q: &PointId, d: &Divisor) -> Result<Duality> {
    let dc = curve.class_of(d)?;
    let lhs = curve.add(&curve.canonical_class(), &dc);
    let rhs = curve.sub(&curve.point_class(q), &dc);
    Ok(Duality {
        q_in_bs_k_plus_d: in_base_locus_class(curve, q, &lhs),
        q_not_in_bs_q_minus_d: !in_base_locus_class(curve, q, &rhs),
    })
}

/// Degree of the fixed part of a nonempty `|E|`; `None` when `|E| = ∅`.
pub fn fixed_part_degree(curve: &CurveModel, e: &Class) -> Option<i64> {
    match curve {
        CurveModel::P1 => (e.degree >= 0).then_some(0),
        CurveModel::Elliptic(_) => match e.degree {
            d if d < 0 => None,
            0 => curve.is_trivial(e).then_some(0),
            1 => Some(1),
            _ => Some(0),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BaseptCase {
    #[serde(rename = "sp-1")]
    Sp1,
    #[serde(rename = "sp-2")]
    Sp2,
    #[serde(rename = "sp-3")]
    Sp3,
    #[serde(rename = "4.6-1")]
    Two1,
    #[serde(rename = "4.6-2")]
    Two2,
    #[serde(rename = "4.7-1")]
    TwoHalf,
    #[serde(rename = "4.7-2")]
    TwoHalfBoundary,
    #[serde(rename = "4.7-3")]
    TwoChain,
    #[serde(rename = "4.5-1")]
    Point,
    #[serde(rename = "4.5-2")]
    Trivial,
    #[serde(rename = "4.9-1")]
    Farey,
    #[serde(rename = "4.9-2")]
    TopBoundary,
    #[serde(rename = "4.9-3")]
    TopAnchored,
    #[serde(rename = "4.9-4")]
    Chain,
    #[serde(rename = "cor-1")]
    InfPoint,
    #[serde(rename = "cor-2")]
    InfTrivial,
    #[serde(rename = "cor-3")]
    InfSlope,
}

impl BaseptCase {
    pub fn tag(self) -> &'static str {
        match self {
            BaseptCase::Sp1 => "sp-1",
            BaseptCase::Sp2 => "sp-2",
            BaseptCase::Sp3 => "sp-3",
            BaseptCase::Two1 => "4.6-1",
            BaseptCase::Two2 => "4.6-2",
            BaseptCase::TwoHalf => "4.7-1",
            BaseptCase::TwoHalfBoundary => "4.7-2",
            BaseptCase::TwoChain => "4.7-3",
            BaseptCase::Point => "4.5-1",
            BaseptCase::Trivial => "4.5-2",
            BaseptCase::Farey => "4.9-1",
            BaseptCase::TopBoundary => "4.9-2",
            BaseptCase::TopAnchored => "4.9-3",
            BaseptCase::Chain => "4.9-4",
            BaseptCase::InfPoint => "cor-1",
            BaseptCase::InfTrivial => "cor-2",
            BaseptCase::InfSlope => "cor-3",
        }
    }
}

/// Which cases hold; `holds` iff `cases` is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseptClassification {
    pub holds: bool,
    pub cases: Vec<BaseptCase>,
    /// `Δ = ⌈L⌉ - L` when the single-step shape is `sp-3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Divisor>,
}

impl BaseptClassification {
    fn from_cases(cases: Vec<BaseptCase>, delta: Option<Divisor>) -> Self {
        BaseptClassification {
            holds: !cases.is_empty(),
            cases,
            delta,
        }
    }

    pub fn tags(&self) -> Vec<&'static str> {
        self.cases.iter().map(|c| c.tag()).collect()
    }
}

/// Shape of `(L, B)` for the single step.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    /// `L ~ Q - P` with `P ≠ Q`, `B = 0`; carries `[P]`.
    Point(Class),
    /// `L ~ Q - P`, `0 ≠ B ≤ P`.
    Bounded(PointId),
    /// `L ~ Q - Δ`, `⌊Δ⌋ = 0`, `B ≤ Δ`.
    Fractional(Divisor),
    Outside,
}

fn step_shape(p: &BaseptProblem) -> Result<Step> {
    let c = &p.curve;
    let qc = c.point_class(&p.q);
    if p.l.is_integral() && p.l.degree().is_zero() {
        let lc = c.class_of(&p.l)?;
        let pc = c.sub(&qc, &lc);
        if p.b.is_zero() {
            // On P¹ any point other than Q works; on an elliptic curve P is
            // the point of class [Q] - [L].
            let distinct = matches!(c, CurveModel::P1) || !c.is_trivial(&lc);
            return Ok(if distinct {
                Step::Point(pc)
            } else {
                Step::Outside
            });
        }
        if p.b.len() == 1 && p.b.max_coeff() <= Rational::one() {
            let point = p.b.points().next().expect("one point").clone();
            if c.point_class(&point) == pc {
                return Ok(Step::Bounded(point));
            }
        }
        return Ok(Step::Outside);
    }
    let up = p.l.round_up();
    let delta = &up - &p.l;
    if c.class_of(&up)? == qc && p.b.le(&delta) {
        return Ok(Step::Fractional(delta));
    }
    Ok(Step::Outside)
}

/// `Q ∈ Bs|⌈K + B + L⌉|` by the three single-step shapes.
pub fn basept_step(p: &BaseptProblem) -> Result<BaseptClassification> {
    Ok(step_classification(step_shape(p)?))
}

fn step_classification(step: Step) -> BaseptClassification {
    match step {
        Step::Point(_) => BaseptClassification::from_cases(vec![BaseptCase::Sp1], None),
        Step::Bounded(_) => BaseptClassification::from_cases(vec![BaseptCase::Sp2], None),
        Step::Fractional(d) => BaseptClassification::from_cases(vec![BaseptCase::Sp3], Some(d)),
        Step::Outside => BaseptClassification::from_cases(vec![], None),
    }
}

/// Largest `n ≤ cap` with `Q ∉ Bs|iP - (i-1)Q|` for `2 ≤ i ≤ n`.
fn point_reach(c: &CurveModel, q: &PointId, pc: &Class, cap: u32) -> u32 {
    let qc = c.point_class(q);
    let mut reach = 1;
    for i in 2..=cap as i64 {
        let e = c.sub(&c.scale(pc, i), &c.scale(&qc, i - 1));
        if in_base_locus_class(c, q, &e) {
            break;
        }
        reach = i as u32;
    }
    reach
}

/// The two points of `Δ` when it is `δP₁ + (1-δ)P₂`, larger coefficient first.
fn complementary_pair(delta: &Divisor) -> Option<((PointId, Rational), (PointId, Rational))> {
    if delta.len() != 2 || delta.degree() != Rational::one() {
        return None;
    }
    let mut terms: Vec<(PointId, Rational)> =
        delta.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
    terms.sort_by(|a, b| b.1.cmp(&a.1));
    let second = terms.pop().expect("two terms");
    let first = terms.pop().expect("two terms");
    Some((first, second))
}

/// `B ≤ c·P` for one of the given points.
fn below_scaled_point(b: &Divisor, c: &Rational, points: &[&PointId]) -> bool {
    match b.iter().next() {
        None => true,
        Some((at, x)) => b.len() == 1 && points.contains(&at) && x <= c,
    }
}

fn second_order(
    c: &CurveModel,
    anchor: &PointId,
    delta: &Divisor,
    b: &Divisor,
) -> Result<Vec<BaseptCase>> {
    let mut cases = Vec::new();
    let half = q(1, 2);
    let halves = delta.len() == 2 && delta.iter().all(|(_, x)| *x == half);
    if halves {
        let pts: Vec<&PointId> = delta.points().collect();
        if b.is_zero() {
            let e = c.sub(&c.class_of(&delta.scale(2))?, &c.point_class(anchor));
            if !in_base_locus_class(c, anchor, &e) {
                cases.push(BaseptCase::TwoHalf);
            }
        } else if b.len() == 1 {
            let at = b.points().next().expect("one point");
            let other = if at == pts[0] { pts[1] } else { pts[0] };
            if c.point_class(other) == c.point_class(anchor) {
                cases.push(BaseptCase::TwoHalfBoundary);
            }
        }
    }
    let two = delta.scale(2);
    let cap = delta_min(delta, &two.frac());
    if c.class_of(&two.round_down())? == c.point_class(anchor) && b.le(&cap) {
        cases.push(BaseptCase::TwoChain);
    }
    Ok(cases)
}

/// Componentwise minimum of two effective divisors.
fn delta_min(a: &Divisor, b: &Divisor) -> Divisor {
    Divisor::from_terms(
        a.iter()
            .map(|(p, x)| (p.clone(), x.clone().min(b.coeff(p)))),
    )
}

/// `caps[i-1]` is the componentwise minimum of `{jΔ}` over `j ≤ i` while
/// `⌊jΔ⌋ ~ (j-1)Q` holds for all those `j`.
fn chain_caps(c: &CurveModel, anchor: &PointId, delta: &Divisor, cap: u32) -> Result<Vec<Divisor>> {
    let qc = c.point_class(anchor);
    let mut out: Vec<Divisor> = Vec::new();
    for i in 1..=cap as i64 {
        let scaled = delta.scale(i);
        if c.class_of(&scaled.round_down())? != c.scale(&qc, i - 1) {
            break;
        }
        let prev = out.last().unwrap_or(delta);
        out.push(delta_min(prev, &scaled.frac()));
    }
    Ok(out)
}

fn higher_order(
    c: &CurveModel,
    anchor: &PointId,
    delta: &Divisor,
    b: &Divisor,
    caps: &[Divisor],
    n: u32,
) -> Vec<BaseptCase> {
    let mut cases = Vec::new();
    let ni = n as i64;
    let top = q(ni - 1, ni);
    let bottom = q(1, ni);
    let p1 = matches!(c, CurveModel::P1);
    if let Some(((pa, da), (pb, db))) = complementary_pair(delta) {
        let l = index_u64(&da);
        if p1
            && l <= n as u64
            && da >= q(1, 2)
            && da < top
            && below_scaled_point(b, &q(1, l as i64), &[&pa, &pb])
        {
            cases.push(BaseptCase::Farey);
        }
        if da == top && db == bottom {
            if p1 && !b.is_zero() && below_scaled_point(b, &bottom, &[&pa]) {
                cases.push(BaseptCase::TopBoundary);
            }
            if c.point_class(&pa) == c.point_class(anchor) && below_scaled_point(b, &bottom, &[&pb])
            {
                cases.push(BaseptCase::TopAnchored);
            }
        }
    }
    if caps.get(n as usize - 1).is_some_and(|cap| b.le(cap)) {
        cases.push(BaseptCase::Chain);
    }
    cases
}

/// `Q ∈ Bs|⌈K + B + iL⌉|` for every `1 ≤ i ≤ N` (`N ≥ 1`).
pub fn successive_basept(p: &BaseptProblem, n: u32) -> Result<BaseptClassification> {
    if n == 0 {
        return Err(Error::hypothesis("N >= 1", "N=0"));
    }
    Ok(successive_basept_through(p, n)?.pop().expect("n >= 1"))
}

/// [`successive_basept`] for `N = 1..=max_n`, sharing the work between `N`.
pub fn successive_basept_through(
    p: &BaseptProblem,
    max_n: u32,
) -> Result<Vec<BaseptClassification>> {
    let c = &p.curve;
    let mut out = Vec::with_capacity(max_n as usize);
    if max_n == 0 {
        return Ok(out);
    }
    let step = step_shape(p)?;
    out.push(step_classification(step.clone()));
    match step {
        Step::Point(pc) => {
            let reach = point_reach(c, &p.q, &pc, max_n);
            for n in 2..=max_n {
                let tag = if n == 2 {
                    BaseptCase::Two1
                } else {
                    BaseptCase::Point
                };
                let cases = if n <= reach { vec![tag] } else { vec![] };
                out.push(BaseptClassification::from_cases(cases, None));
            }
        }
        Step::Bounded(point) => {
            let trivial =
                c.is_trivial(&c.class_of(&p.l)?) && c.point_class(&point) == c.point_class(&p.q);
            for n in 2..=max_n {
                let tag = if n == 2 {
                    BaseptCase::Two2
                } else {
                    BaseptCase::Trivial
                };
                out.push(BaseptClassification::from_cases(
                    if trivial { vec![tag] } else { vec![] },
                    None,
                ));
            }
        }
        Step::Fractional(delta) => {
            let caps = if max_n >= 3 {
                chain_caps(c, &p.q, &delta, max_n)?
            } else {
                Vec::new()
            };
            for n in 2..=max_n {
                let cases = if n == 2 {
                    second_order(c, &p.q, &delta, &p.b)?
                } else {
                    higher_order(c, &p.q, &delta, &p.b, &caps, n)
                };
                out.push(BaseptClassification::from_cases(cases, Some(delta.clone())));
            }
        }
        Step::Outside => {
            for _ in 2..=max_n {
                out.push(BaseptClassification::from_cases(vec![], None));
            }
        }
    }
    Ok(out)
}

/// `Q ∈ Bs|⌈K + B + iL⌉|` for every `i ≥ 1`. Rational inputs only: the
/// irrational-slope branch with `B = 0` has no instance here.
pub fn successive_basept_infinite(p: &BaseptProblem) -> Result<BaseptClassification> {
    let c = &p.curve;
    let cases = match step_shape(p)? {
        Step::Point(_) => {
            let unbounded = match c {
                CurveModel::P1 => true,
                CurveModel::Elliptic(_) => c.order(&c.class_of(&p.l)?)? == ElementOrder::Infinite,
            };
            if unbounded {
                vec![BaseptCase::InfPoint]
            } else {
                vec![]
            }
        }
        Step::Bounded(point) => {
            if c.is_trivial(&c.class_of(&p.l)?) && c.point_class(&point) == c.point_class(&p.q) {
                vec![BaseptCase::InfTrivial]
            } else {
                vec![]
            }
        }
        Step::Fractional(delta) => {
            let slope = complementary_pair(&delta).filter(|_| matches!(c, CurveModel::P1));
            match slope {
                Some(((pa, da), (pb, _))) => {
                    let l = index_u64(&da) as i64;
                    if below_scaled_point(&p.b, &q(1, l), &[&pa, &pb]) {
                        vec![BaseptCase::InfSlope]
                    } else {
                        vec![]
                    }
                }
                None => vec![],
            }
        }
        Step::Outside => vec![],
    };
    Ok(BaseptClassification::from_cases(cases, None))
}

/// Largest `N` with `Q ∈ Bs|⌈K + B + iL⌉|` for all `i ≤ N` (`0` if `i = 1`
/// already fails), searching at most `cap` steps past the unbounded test.
pub fn basept_order(p: &BaseptProblem, cap: u32) -> Result<Order> {
    if successive_basept_infinite(p)?.holds {
        return Ok(Order::Infinite);
    }
    if let Some(n) = successive_basept_through(p, cap)?
        .iter()
        .position(|c| !c.holds)
    {
        return Ok(Order::Finite(n as u32));
    }
    Err(Error::Resource(format!(
        "base-point order search passed {cap}"
    )))
}

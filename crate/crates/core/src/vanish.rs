//! Successive emptiness of `|⌈K + B + iL⌉|` on curves of genus at most one.
//!
//! The classifier first recognizes which of the three shapes the pair
//! `(L, B)` has for `i = 1`, then decides the higher multiples from that
//! shape alone:
//!
//! * `v2-1`: `P¹`, `L ~ 0`, `B ≤ P` for a point `P`; empty for every `i`.
//! * `v2-2`: `P¹`, `L ~ Q - Δ` with `Δ = ⌈L⌉ - L`, `B ≤ Δ`; empty up to `N`
//!   iff `deg⌊iΔ - B⌋ ≥ i - 1` for `i ≤ N` (see [`crate::divcrit`]).
//! * `v2-3`: elliptic, `L ~ Q - P` with `Q ≠ P`, `B = 0`; empty up to `N`
//!   iff the order of `[Q - P]` exceeds `N`.
//!
//! Rational inputs only: the unbounded shapes with an irrational slope `ε`
//! have no instance here.

use serde::Serialize;

use crate::curve::{CurveModel, ElementOrder};
use crate::divcrit::{classify_div, vanishing_order, Order};
use crate::divisor::{pt, Divisor};
use crate::error::{Error, Result};
use crate::exactq::{farey_set, in_bounded_numerator, index_u64, q, Rational};

/// `(C, L, B)` with `B ≥ 0` and `deg L ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointProblem {
    pub curve: CurveModel,
    pub l: Divisor,
    pub b: Divisor,
}

impl AdjointProblem {
    pub fn new(curve: CurveModel, l: Divisor, b: Divisor) -> Result<Self> {
        if !b.is_effective() {
            return Err(Error::hypothesis("B >= 0", format!("B={b}")));
        }
        if l.degree().is_negative() {
            return Err(Error::hypothesis("deg L >= 0", format!("L={l}")));
        }
        Ok(AdjointProblem { curve, l, b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VanishCase {
    #[serde(rename = "v2-1")]
    Trivial,
    #[serde(rename = "v2-2")]
    Fractional,
    #[serde(rename = "v2-3")]
    Torsion,
    #[serde(rename = "nonempty")]
    Nonempty,
}

impl VanishCase {
    pub fn tag(self) -> &'static str {
        match self {
            VanishCase::Trivial => "v2-1",
            VanishCase::Fractional => "v2-2",
            VanishCase::Torsion => "v2-3",
            VanishCase::Nonempty => "nonempty",
        }
    }
}

/// Shape of `(L, B)` with respect to the `i = 1` system.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    Trivial,
    Fractional(Divisor),
    Torsion(ElementOrder),
    Nonempty,
}

impl Shape {
    fn case(&self) -> VanishCase {
        match self {
            Shape::Trivial => VanishCase::Trivial,
            Shape::Fractional(_) => VanishCase::Fractional,
            Shape::Torsion(_) => VanishCase::Torsion,
            Shape::Nonempty => VanishCase::Nonempty,
        }
    }
}

/// Whether `B ≤ P` for a single point `P`.
pub(crate) fn below_one_point(b: &Divisor) -> bool {
    b.len() <= 1 && b.max_coeff() <= Rational::one()
}

fn shape(p: &AdjointProblem) -> Result<Shape> {
    let l = &p.l;
    match &p.curve {
        CurveModel::P1 => {
            if l.is_integral() && l.degree().is_zero() && below_one_point(&p.b) {
                return Ok(Shape::Trivial);
            }
            let up = l.round_up();
            let delta = &up - l;
            if up.degree() == Rational::one() && p.b.le(&delta) {
                return Ok(Shape::Fractional(delta));
            }
            Ok(Shape::Nonempty)
        }
        CurveModel::Elliptic(_) => {
            if p.b.is_zero() && l.is_integral() && l.degree().is_zero() {
                let class = p.curve.class_of(l)?;
                if !p.curve.is_trivial(&class) {
                    return Ok(Shape::Torsion(p.curve.order(&class)?));
                }
            }
            Ok(Shape::Nonempty)
        }
    }
}

/// Outcome of a successive-emptiness query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub case: VanishCase,
    /// Largest `N` with `|⌈K+B+iL⌉| = ∅` for all `1 ≤ i ≤ N`; `0` when the
    /// first system is already nonempty.
    pub n_max: Order,
    /// Whether emptiness holds up to the queried `N` (absent for `N = ∞`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    /// `Δ = ⌈L⌉ - L` in case `v2-2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Divisor>,
    /// Order of `[L]` in case `v2-3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<ElementOrder>,
    /// Index `l` of the slope for the unbounded two-point shape.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
}

impl VanishingReport {
    fn new(case: VanishCase, n_max: Order) -> Self {
        VanishingReport {
            case,
            n_max,
            holds: None,
            delta: None,
            torsion: None,
            index: None,
        }
    }
}

/// Emptiness of `|⌈K + B + L⌉|` by the three-shape classification.
pub fn is_empty_adjoint(p: &AdjointProblem) -> Result<(bool, VanishCase)> {
    let case = shape(p)?.case();
    Ok((case != VanishCase::Nonempty, case))
}

fn torsion_n_max(order: ElementOrder) -> Order {
    match order {
        ElementOrder::Infinite => Order::Infinite,
        ElementOrder::Finite(t) => Order::Finite((t - 1).min(u32::MAX as u64) as u32),
    }
}

/// Whether `|⌈K + B + iL⌉| = ∅` for all `1 ≤ i ≤ N`, with the matching case.
pub fn successive_empty(p: &AdjointProblem, n: u32) -> Result<VanishingReport> {
    if n < 2 {
        return Err(Error::hypothesis("N >= 2", format!("N={n}")));
    }
    let s = shape(p)?;
    let mut report = match &s {
        Shape::Trivial => {
            let mut r = VanishingReport::new(VanishCase::Trivial, Order::Infinite);
            r.holds = Some(true);
            r
        }
        Shape::Fractional(delta) => {
            let mut r = VanishingReport::new(VanishCase::Fractional, vanishing_order(delta, &p.b)?);
            r.holds = Some(classify_div(delta, &p.b, n)?.holds);
            r.delta = Some(delta.clone());
            r
        }
        Shape::Torsion(order) => {
            let mut r = VanishingReport::new(VanishCase::Torsion, torsion_n_max(*order));
            r.holds = Some(order.exceeds(n as u64));
            r.torsion = Some(*order);
            r
        }
        Shape::Nonempty => {
            let mut r = VanishingReport::new(VanishCase::Nonempty, Order::Finite(0));
            r.holds = Some(false);
            r
        }
    };
    if let Shape::Fractional(delta) = &s {
        report.index = unbounded_index(delta, &p.b);
    }
    Ok(report)
}

/// For `Δ = δP₁ + (1-δ)P₂`: `Some(index(δ))` when `B = 0` or
/// `0 ≠ B ≤ (1/l)P_j`, the shapes that stay empty for every `i`.
fn unbounded_index(delta: &Divisor, b: &Divisor) -> Option<u64> {
    if delta.len() != 2 || delta.degree() != Rational::one() {
        return None;
    }
    let l = index_u64(&delta.max_coeff());
    let unbounded = b.is_zero() || (b.len() == 1 && b.max_coeff() <= q(1, l as i64));
    unbounded.then_some(l)
}

/// Whether `|⌈K + B + iL⌉| = ∅` for every `i ≥ 1`.
///
/// Unbounded exactly for `P¹` with `L ~ 0`, `B ≤ P`; for `P¹` with
/// `L ~ ε(P₁ - P₂)`, `ε ∈ (0,1)` of index `l`, and `B = 0` or
/// `0 ≠ B ≤ (1/l)P₁`; and for elliptic `L ~ P₁ - P₂` of infinite order with
/// `B = 0`. Otherwise `n_max` is finite.
pub fn successive_empty_infinite(p: &AdjointProblem) -> Result<VanishingReport> {
    Ok(match shape(p)? {
        Shape::Trivial => VanishingReport::new(VanishCase::Trivial, Order::Infinite),
        Shape::Fractional(delta) => {
            let index = unbounded_index(&delta, &p.b);
            let n_max = match index {
                Some(_) => Order::Infinite,
                None => match vanishing_order(&delta, &p.b)? {
                    Order::Infinite => {
                        return Err(Error::Domain(format!(
                            "Delta={delta}, B={} is unbounded outside the classified shapes",
                            p.b
                        )))
                    }
                    finite => finite,
                },
            };
            let mut r = VanishingReport::new(VanishCase::Fractional, n_max);
            r.delta = Some(delta);
            r.index = index;
            r
        }
        Shape::Torsion(order) => {
            let mut r = VanishingReport::new(VanishCase::Torsion, torsion_n_max(order));
            r.torsion = Some(order);
            r
        }
        Shape::Nonempty => VanishingReport::new(VanishCase::Nonempty, Order::Finite(0)),
    })
}

/// A maximal `L = x'·Pp - x·P` for a pair `x < x'` of consecutive Farey
/// fractions, where `Pp` names the second point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalShape {
    pub x: Rational,
    pub x_next: Rational,
    pub shape: Divisor,
    /// Least `1 ≤ i ≤ (N-1)N` with `i·L` integral of degree one (so `|iL|`
    /// is free of degree one on `P¹`); absent for `N = 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_multiple: Option<u32>,
}

/// Maximal divisors `L` on `P¹` with `⌈K + iL⌉` empty for `i ≤ N`, one per
/// gap of the Farey set of order `N`.
pub fn maximal_l(n: u32) -> Result<Vec<MaximalShape>> {
    let f = farey_set(n)?;
    let (p, pp) = (pt("P"), pt("Pp"));
    Ok(f.windows(2)
        .map(|w| {
            let shape = Divisor::from_terms([(pp.clone(), w[1].clone()), (p.clone(), -&w[0])]);
            let free_multiple = (n >= 2)
                .then(|| {
                    (1..=(n - 1) * n).find(|&i| {
                        let s = shape.scale(i as i64);
                        s.is_integral() && s.degree() == Rational::one()
                    })
                })
                .flatten();
            MaximalShape {
                x: w[0].clone(),
                x_next: w[1].clone(),
                shape,
                free_multiple,
            }
        })
        .collect())
}

/// Outcome of the `deg⌊B⌋ ≥ 1` preamble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Preamble {
    /// `deg⌊B⌋ = 1` and `r(K+B) ~ 0` with `r` minimal; the system
    /// `|⌈K + ⌊B⌋ + n(K+B)⌉|` is nonempty exactly when `r ∤ n`.
    Torsion { r: u64 },
    /// `|⌈K + ⌊B⌋ + n(K+B)⌉| ≠ ∅` for all `n ≥ 1`.
    AlwaysNonempty,
}

/// Both branches of the dichotomy for `m(K+B)` on `P¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NvlReport {
    pub m: u32,
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preamble: Option<Preamble>,
    /// Bound `2l` for branch a).
    pub bound_a: u32,
    /// Bound `(l+1)² + 1` for branch b).
    pub bound_b: u32,
    /// Least `n ≤ bound_a` with `nm(K+B) ~ 0`.
    pub branch_a: Option<u32>,
    /// Least `n ≤ bound_b` with `|⌈K + nm(K+B)⌉| ≠ ∅`.
    pub branch_b: Option<u32>,
}

impl NvlReport {
    /// At least one branch holds.
    pub fn holds(&self) -> bool {
        self.preamble.is_some() || self.branch_a.is_some() || self.branch_b.is_some()
    }

    /// Exactly one branch holds.
    pub fn exclusive(&self) -> bool {
        self.preamble.is_some() || (self.branch_a.is_some() != self.branch_b.is_some())
    }

    /// `"a"`, `"b"` or `"a+b"`.
    pub fn branch(&self) -> &'static str {
        match (self.branch_a.is_some(), self.branch_b.is_some()) {
            (true, true) => "a+b",
            (true, false) => "a",
            (false, true) => "b",
            (false, false) => "none",
        }
    }
}

/// Least `n ≤ bound` with `nm(K+B) ~ 0` on `P¹`.
pub fn p1_torsion_multiple(b: &Divisor, m: u32, bound: u32) -> Option<u32> {
    if b.degree() != Rational::from(2) {
        return None;
    }
    (1..=bound).find(|&n| b.scale((n * m) as i64).is_integral())
}

/// Least `n ≤ bound` with `|⌈K + nm(K+B)⌉| ≠ ∅` on `P¹`.
pub fn p1_first_nonvanishing(b: &Divisor, m: u32, bound: u32) -> Option<u32> {
    (1..=bound).find(|&n| {
        let k = (n * m) as i64;
        let up = b
            .scale(k)
            .round_up()
            .degree()
            .to_i64()
            .expect("integral degree");
        up - 2 * k - 2 >= 0
    })
}

fn check_boundary(m: u32, b: &Divisor, l: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::hypothesis("m >= 1", "m=0"));
    }
    if l == 0 {
        return Err(Error::hypothesis("l >= 1", "l=0"));
    }
    if !b.is_effective() {
        return Err(Error::hypothesis("B >= 0", format!("B={b}")));
    }
    if b.degree() < Rational::from(2) {
        return Err(Error::hypothesis(
            "deg(K+B) >= 0",
            format!("deg B={}", b.degree()),
        ));
    }
    Ok(())
}

/// The two smallest nonzero coefficients of `D` (one or none if `D` has fewer).
fn smallest_two(d: &Divisor) -> Vec<Rational> {
    let mut c: Vec<Rational> = d.iter().map(|(_, c)| c.clone()).collect();
    c.sort();
    c.truncate(2);
    c
}

/// Dichotomy for `m(K+B)` on `P¹` with `deg(K+B) ≥ 0`.
///
/// With `⌊B⌋ = 0`, the two smallest nonzero coefficients of `{mB}` must be
/// `1 - p/q` with `p ≤ l`; both branches are computed directly. With
/// `deg⌊B⌋ ≥ 1` the preamble classification is returned instead.
pub fn nvl_dichotomy(m: u32, b: &Divisor, l: u32) -> Result<NvlReport> {
    check_boundary(m, b, l)?;
    let mut report = NvlReport {
        m,
        l,
        preamble: None,
        bound_a: 2 * l,
        bound_b: (l + 1) * (l + 1) + 1,
        branch_a: None,
        branch_b: None,
    };
    let fl = b.round_down();
    if !fl.is_zero() {
        let r = b.degree() == Rational::from(2) && fl.degree() == Rational::one();
        report.preamble = Some(if r {
            Preamble::Torsion {
                r: b.iter()
                    .map(|(_, c)| index_u64(c))
                    .fold(1, num_integer::lcm),
            }
        } else {
            Preamble::AlwaysNonempty
        });
        return Ok(report);
    }
    for c in smallest_two(&b.scale(m as i64).frac()) {
        if !in_bounded_numerator(&(Rational::one() - &c), l)? {
            return Err(Error::hypothesis(
                "smallest coefficients of {mB} are 1 - p/q with p <= l",
                format!("coefficient {c} of {{{m}B}}, l={l}"),
            ));
        }
    }
    report.branch_a = p1_torsion_multiple(b, m, report.bound_a);
    report.branch_b = p1_first_nonvanishing(b, m, report.bound_b);
    Ok(report)
}

/// Standard-coefficient form: the two smallest nonzero coefficients of `B`
/// are `1 - 1/q`; the bounds become `n ≤ 2` and `n ≤ 5`.
pub fn nvl_standard(m: u32, b: &Divisor) -> Result<NvlReport> {
    check_boundary(m, b, 1)?;
    if !b.round_down().is_zero() {
        return nvl_dichotomy(m, b, 1);
    }
    for c in smallest_two(b) {
        if (Rational::one() - &c).numer() != 1.into() {
            return Err(Error::hypothesis(
                "smallest coefficients of B are standard",
                format!("coefficient {c}"),
            ));
        }
    }
    Ok(NvlReport {
        m,
        l: 1,
        preamble: None,
        bound_a: 2,
        bound_b: 5,
        branch_a: p1_torsion_multiple(b, m, 2),
        branch_b: p1_first_nonvanishing(b, m, 5),
    })
}

/// Boundary on `P¹` of degree two whose first nonvanishing multiple is
/// `(l+1)² + 1`: coefficients `1/(l+1)`, `(l²+1)/(l²+l+1)` and
/// `1 - 1/((l+1)(l²+l+1))`.
pub fn extremal_boundary(l: u32) -> Divisor {
    let l = l as i64;
    let s = l * l + l + 1;
    Divisor::from_terms([
        (pt("P"), q(1, l + 1)),
        (pt("Pp"), q(l * l + 1, s)),
        (pt("R"), Rational::one() - q(1, (l + 1) * s)),
    ])
}

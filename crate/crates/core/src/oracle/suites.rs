//! Grid enumeration for each suite.
//!
//! Divisors are canonicalized up to renaming of unanchored points: the
//! divisor suite enumerates `Δ` as a non-increasing coefficient tuple and the
//! `P¹` suites enumerate multisets of per-point `(δ_j, b_j)` pairs. Points
//! carrying group elements are never collapsed; on elliptic models only
//! element tuples related by a unit of `ℤ/t` are identified.

use num_integer::Integer;

use super::sweep::{run_chunks, Suite, SweepConfig, SweepReport, Tally};
use super::{
    base_locus_oracle, div_first_failure, equality_first_failure, first_basept_failure,
    first_nonempty, floor_first_failure,
};
use crate::basept::{
    basept_step, duality_check, successive_basept_infinite, successive_basept_through,
    BaseptProblem,
};
use crate::curve::{CurveModel, PicardModel};
use crate::divcrit::{classify_div, equality_profile_criterion, vanishing_order, Order};
use crate::divisor::{pt, Divisor, PointId};
use crate::error::{Error, Result};
use crate::exactq::{q, rationals_between, Rational};
use crate::floorcrit::{
    classify_crt, classify_crt_as_stated, holds_direct, holds_no_b, CrtCase, CrtInput,
};
use crate::vanish::{
    is_empty_adjoint, successive_empty, successive_empty_infinite, AdjointProblem, VanishCase,
};

/// Horizon standing in for "every `i`" when an unbounded answer is checked.
const UNBOUNDED_CAP: u32 = 50;

pub(crate) fn run(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    match config.suite {
        Suite::Floor => floor(config),
        Suite::Divisor => divisor(config),
        Suite::Vanish => vanish(config),
        Suite::Basept => basept(config),
        Suite::Crossmodule => crossmodule(config),
    }
}

/// `[0, 1)` with denominators at most `d`.
fn half_open(d: u32) -> Vec<Rational> {
    let mut v = rationals_between(&Rational::zero(), &Rational::one(), d);
    v.pop();
    v
}

/// `(0, 1)` with denominators at most `d`.
fn open(d: u32) -> Vec<Rational> {
    let mut v = half_open(d);
    v.remove(0);
    v
}

/// `[0, 1]` with denominators at most `d`.
fn closed(d: u32) -> Vec<Rational> {
    rationals_between(&Rational::zero(), &Rational::one(), d)
}

fn needs_two(config: &SweepConfig) -> Result<()> {
    if config.max_n < 2 {
        return Err(Error::Domain(format!(
            "the {} suite needs max_n >= 2",
            config.suite
        )));
    }
    Ok(())
}

fn unbounded_first(order: Order) -> Option<u32> {
    match order {
        Order::Finite(m) => Some(m + 1),
        Order::Infinite => None,
    }
}

fn holds_through(first: Option<u32>, n: u32) -> bool {
    first.is_none_or(|f| f > n)
}

fn floor(config: &SweepConfig) -> Result<SweepReport> {
    needs_two(config)?;
    let vals = half_open(config.max_denominator);
    let per_input = (config.max_n - 1) as u64;
    let v = vals.len() as u64;
    let one = Rational::one();
    let mut items = Vec::new();
    let mut skipped = 0;
    for d in &vals {
        for dp in &vals {
            if dp <= d && d + dp <= one {
                items.push((d.clone(), dp.clone()));
            } else {
                skipped += v * v * per_input;
            }
        }
    }
    run_chunks(config, &items, skipped, |(d, dp), t| {
        for b in &vals {
            for bp in &vals {
                if b > d || bp > dp {
                    t.skipped += per_input;
                    continue;
                }
                floor_instance(config.max_n, d, b, dp, bp, t)?;
            }
        }
        Ok(())
    })
}

fn floor_instance(
    max_n: u32,
    d: &Rational,
    b: &Rational,
    dp: &Rational,
    bp: &Rational,
    t: &mut Tally,
) -> Result<()> {
    let first = floor_first_failure(d, b, dp, bp, max_n);
    let zero_b = b.is_zero() && bp.is_zero();
    let one = Rational::one();
    for n in 2..=max_n {
        t.instances += 1;
        let show = || format!("delta={d}, b={b}, delta'={dp}, b'={bp}, N={n}");
        let input = CrtInput::new(d.clone(), b.clone(), dp.clone(), bp.clone(), n)?;
        let oracle = holds_through(first, n);
        let cls = classify_crt(&input);
        t.check("crt", cls.case != CrtCase::Fails, oracle, show);
        t.check(
            "direct",
            holds_direct(&input).first_violation(),
            first.filter(|&f| f <= n),
            show,
        );
        if zero_b {
            t.check("no-b", holds_no_b(d, dp, n)?, oracle, show);
        }
        if classify_crt_as_stated(&input).case != cls.case {
            t.note("crt-labelling-exchanged");
        }
        let ni = n as i64;
        match cls.case {
            CrtCase::CaseA => t.check("crt-moreover", *d >= &one - &q(1, ni), true, show),
            CrtCase::CaseB => {
                let bounds = d + dp > &one - &q(1, ni + 1) && *dp >= q(1, ni);
                t.check("crt-moreover", bounds, true, show);
                let lead_b = if cls.swapped { bp } else { b };
                let tie_shape = *d == q(1, 2) && *dp == q(1, 2) && lead_b.is_zero();
                t.check("crt-tie", d == dp, tie_shape, show);
            }
            CrtCase::Fails => {}
        }
    }
    Ok(())
}

fn names(prefix: &str, k: usize) -> Vec<PointId> {
    (1..=k).map(|i| pt(&format!("{prefix}{i}"))).collect()
}

/// Non-increasing index tuples of every length `0..=k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let top = s.last().copied().unwrap_or(n.saturating_sub(1));
            for i in 0..=top.min(n.saturating_sub(1)) {
                if n == 0 {
                    break;
                }
                let mut e: Vec<usize> = s.clone();
                e.push(i);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every tuple with `x_j ∈ choices[j]`, in lexicographic order.
fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, c| {
        acc.iter()
            .flat_map(|prefix| {
                c.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

fn divisor(config: &SweepConfig) -> Result<SweepReport> {
    needs_two(config)?;
    let coeffs = open(config.max_denominator);
    let bvals = half_open(config.max_denominator);
    let per_input = (config.max_n - 1) as u64;
    let one = Rational::one();
    let points = names("P", config.max_points as usize);
    let mut items = Vec::new();
    let mut skipped = 0;
    for idx in multisets(coeffs.len(), config.max_points as usize) {
        let deltas: Vec<Rational> = idx.iter().rev().map(|&i| coeffs[i].clone()).collect();
        let deg: Rational = deltas.iter().sum();
        if deg > one {
            skipped += (bvals.len() as u64).pow(deltas.len() as u32) * per_input;
        } else {
            items.push(deltas);
        }
    }
    run_chunks(config, &items, skipped, |deltas, t| {
        let delta = Divisor::from_terms(points.iter().cloned().zip(deltas.iter().cloned()));
        let choices: Vec<Vec<Rational>> = deltas
            .iter()
            .map(|d| bvals.iter().filter(|b| *b <= d).cloned().collect())
            .collect();
        let total = (bvals.len() as u64).pow(deltas.len() as u32);
        let valid: u64 = choices.iter().map(|c| c.len() as u64).product();
        t.skipped += (total - valid) * per_input;
        for bs in product(&choices) {
            let b = Divisor::from_terms(points.iter().cloned().zip(bs));
            divisor_instance(config.max_n, &delta, &b, t)?;
        }
        Ok(())
    })
}

fn divisor_instance(max_n: u32, delta: &Divisor, b: &Divisor, t: &mut Tally) -> Result<()> {
    let show = |n: u32| move || format!("Delta={delta}, B={b}, N={n}");
    let first = div_first_failure(delta, b, max_n);
    for n in 2..=max_n {
        t.instances += 1;
        t.check(
            "crtdiv",
            classify_div(delta, b, n)?.holds,
            holds_through(first, n),
            show(n),
        );
    }
    let order = vanishing_order(delta, b)?;
    let expected = unbounded_first(order);
    let cap = expected.unwrap_or(UNBOUNDED_CAP);
    t.check(
        "order",
        expected,
        div_first_failure(delta, b, cap),
        show(cap),
    );
    if b.is_zero() {
        let eq_first = equality_first_failure(delta, max_n);
        for n in 1..=max_n {
            t.check(
                "equality",
                equality_profile_criterion(delta, n)?,
                holds_through(eq_first, n),
                show(n),
            );
        }
    }
    Ok(())
}

/// Per-point `(δ, b)` pairs of the `P¹` grids: `b ≤ δ` or `b = 1`, and any
/// `b ∈ [0, 1]` off the support of `Δ`.
fn p1_pairs(d: u32) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for delta in half_open(d) {
        for b in closed(d) {
            if delta.is_zero() || b <= delta || b == Rational::one() {
                out.push((delta.clone(), b));
            }
        }
    }
    out
}

/// `(L, B)` on `P¹` for one multiset of pairs: `L = u·A - Δ` with
/// `0 ≤ deg L ≤ 1`, the anchor `A` being the first point or a fresh one.
fn p1_problems(
    pairs: &[(Rational, Rational)],
    points: &[PointId],
    anchor_names: &[PointId],
) -> Vec<(Divisor, Divisor)> {
    let delta = Divisor::from_terms(
        points
            .iter()
            .cloned()
            .zip(pairs.iter().map(|p| p.0.clone())),
    );
    let b = Divisor::from_terms(
        points
            .iter()
            .cloned()
            .zip(pairs.iter().map(|p| p.1.clone())),
    );
    let deg = delta.degree();
    let mut out = Vec::new();
    for u in 0..=2i64 {
        let deg_l = Rational::from(u) - &deg;
        if deg_l.is_negative() || deg_l > Rational::one() {
            continue;
        }
        for a in anchor_names {
            let l = &Divisor::single(a.clone(), Rational::from(u)) - &delta;
            out.push((l, b.clone()));
        }
    }
    out
}

fn p1_grid(config: &SweepConfig) -> Vec<Vec<(Rational, Rational)>> {
    let pairs = p1_pairs(config.max_denominator);
    multisets(pairs.len(), config.max_points as usize)
        .into_iter()
        .filter(|s| s.len() == config.max_points as usize || s.is_empty())
        .map(|s| s.iter().map(|&i| pairs[i].clone()).collect())
        .collect()
}

fn vanish_checks(p: &AdjointProblem, max_n: u32, t: &mut Tally) -> Result<()> {
    let show = |n: u32| move || format!("{}: L={}, B={}, N={n}", p.curve.kind(), p.l, p.b);
    let unbounded = successive_empty_infinite(p);
    let expected = unbounded.as_ref().ok().map(|r| unbounded_first(r.n_max));
    let cap = expected.flatten().unwrap_or(UNBOUNDED_CAP);
    let first = first_nonempty(p, cap.max(max_n))?;
    t.instances += 1;
    t.check(
        "v-step",
        is_empty_adjoint(p)?.0,
        holds_through(first, 1),
        show(1),
    );
    for n in 2..=max_n {
        t.instances += 1;
        t.check(
            "v-successive",
            successive_empty(p, n)?.holds,
            Some(holds_through(first, n)),
            show(n),
        );
    }
    match unbounded {
        Ok(report) => {
            t.check(
                "v-nmax",
                expected.flatten(),
                first.filter(|&f| f <= cap),
                show(cap),
            );
            if report.case == VanishCase::Fractional {
                let k2 = (&report.delta.clone().unwrap_or_default() + &p.l.scale(2)).round_up();
                t.check(
                    "v-note",
                    k2.degree() - Rational::from(2),
                    Rational::zero(),
                    show(2),
                );
            }
        }
        Err(e) => t.check(
            "v-nmax",
            format!("error: {e}"),
            String::from("a finite or unbounded order"),
            show(0),
        ),
    }
    Ok(())
}

fn vanish(config: &SweepConfig) -> Result<SweepReport> {
    needs_two(config)?;
    let mut items: Vec<VanishItem> = Vec::new();
    if config.p1 {
        items.extend(p1_grid(config).into_iter().map(VanishItem::P1));
    }
    for model in elliptic_models(config)? {
        items.push(VanishItem::Elliptic(model));
    }
    let points = names("P", config.max_points as usize);
    let anchors = [points[0].clone(), pt("Q")];
    let shift =
        &Divisor::single(pt("R"), Rational::one()) - &Divisor::single(pt("Q"), Rational::one());
    run_chunks(config, &items, 0, |item, t| {
        match item {
            VanishItem::P1(pairs) => {
                for (l, b) in p1_problems(pairs, &points, &anchors) {
                    let p = AdjointProblem::new(CurveModel::P1, l, b)?;
                    vanish_checks(&p, config.max_n, t)?;
                    let moved = AdjointProblem::new(CurveModel::P1, &p.l + &shift, p.b.clone())?;
                    let a = successive_empty_infinite(&p).map(|r| (r.case, r.n_max, r.delta));
                    let m = successive_empty_infinite(&moved).map(|r| (r.case, r.n_max, r.delta));
                    t.check("v-intrinsic", a, m, || {
                        format!("L={} vs {}, B={}", p.l, moved.l, p.b)
                    });
                }
            }
            VanishItem::Elliptic(curve) => {
                for (l, b) in elliptic_adjoint_inputs(config.max_denominator) {
                    vanish_checks(&AdjointProblem::new(curve.clone(), l, b)?, config.max_n, t)?;
                }
            }
        }
        Ok(())
    })
}

enum VanishItem {
    P1(Vec<(Rational, Rational)>),
    Elliptic(CurveModel),
}

/// Models `Q = 0`, `P1 = a`, `P2 = c` for every pair of distinct nonzero
/// elements (one point when the group has order two), and for the free model
/// `P1 = 1`, `P2 ∈ {-1, 2, 3}`.
fn elliptic_models(config: &SweepConfig) -> Result<Vec<CurveModel>> {
    let mut out = Vec::new();
    for &t in &config.torsion_orders {
        for (a, c) in element_pairs(t, false) {
            out.push(cyclic_model(t, a, c)?);
        }
    }
    if config.free_generator {
        out.extend(free_models()?);
    }
    Ok(out)
}

fn free_models() -> Result<Vec<CurveModel>> {
    [-1, 2, 3]
        .into_iter()
        .map(|c| {
            let m = PicardModel::free()
                .with_point(pt("Q"), vec![0])?
                .with_point(pt("P1"), vec![1])?
                .with_point(pt("P2"), vec![c])?;
            Ok(CurveModel::Elliptic(m))
        })
        .collect()
}

fn cyclic_model(t: u64, a: i64, c: Option<i64>) -> Result<CurveModel> {
    let mut m = PicardModel::cyclic(t)?
        .with_point(pt("Q"), vec![0])?
        .with_point(pt("P1"), vec![a])?;
    if let Some(c) = c {
        m = m.with_point(pt("P2"), vec![c])?;
    }
    Ok(CurveModel::Elliptic(m))
}

/// Distinct nonzero `(a, c)` in `ℤ/t`; with `up_to_units`, one per orbit of
/// the unit group acting diagonally.
fn element_pairs(t: u64, up_to_units: bool) -> Vec<(i64, Option<i64>)> {
    let t = t as i64;
    if t == 2 {
        return vec![(1, None)];
    }
    let units: Vec<i64> = (1..t).filter(|u| u.gcd(&t) == 1).collect();
    let mut out = Vec::new();
    for a in 1..t {
        for c in 1..t {
            if a == c {
                continue;
            }
            let canonical = units
                .iter()
                .map(|u| ((u * a) % t, (u * c) % t))
                .min()
                .expect("1 is a unit");
            if !up_to_units || canonical == (a, c) {
                out.push((a, Some(c)));
            }
        }
    }
    out
}

/// Adjoint inputs on the points `Q, P1, P2` of an elliptic model.
fn elliptic_adjoint_inputs(d: u32) -> Vec<(Divisor, Divisor)> {
    let (qq, p1, p2) = (pt("Q"), pt("P1"), pt("P2"));
    let mut ls = Vec::new();
    for x in -2..=2i64 {
        for y in -2..=2i64 {
            let z = -x - y;
            if z.abs() <= 2 {
                ls.push(Divisor::from_terms([
                    (qq.clone(), Rational::from(x)),
                    (p1.clone(), Rational::from(y)),
                    (p2.clone(), Rational::from(z)),
                ]));
            }
        }
    }
    for x in open(d.min(3)) {
        ls.push(Divisor::from_terms([
            (qq.clone(), Rational::one()),
            (p1.clone(), -&x),
            (p2.clone(), &x - &Rational::one()),
        ]));
    }
    let bs = [
        Divisor::zero(),
        Divisor::single(p1.clone(), q(1, 2)),
        Divisor::single(p1, Rational::one()),
        Divisor::single(qq, q(1, 3)),
    ];
    ls.iter()
        .flat_map(|l| bs.iter().map(move |b| (l.clone(), b.clone())))
        .collect()
}

fn basept_checks(p: &BaseptProblem, max_n: u32, t: &mut Tally) -> Result<()> {
    let show =
        |n: u32| move || format!("{}: L={}, B={}, Q={}, N={n}", p.curve.kind(), p.l, p.b, p.q);
    let first = first_basept_failure(p, max_n.max(UNBOUNDED_CAP))?;
    t.instances += 1;
    let profile = successive_basept_through(p, max_n)?;
    t.check("b-step", profile[0].holds, holds_through(first, 1), show(1));
    for (c, n) in profile.iter().zip(1..).skip(1) {
        t.instances += 1;
        t.check("b-successive", c.holds, holds_through(first, n), show(n));
        if c.holds && n >= 3 {
            t.note("b-classified-holds");
        }
    }
    let unbounded = successive_basept_infinite(p)?.holds;
    t.check(
        "b-infinite",
        unbounded,
        first.is_none(),
        show(UNBOUNDED_CAP),
    );
    Ok(())
}

enum BaseptItem {
    P1(Vec<(Rational, Rational)>),
    /// Fractional `L = L₀ - Δ` with `Δ` on `Q, P1, P2`.
    Fractional(CurveModel, Vec<Rational>),
    /// Integral `L` of degree zero and the duality pairs.
    Integral(CurveModel),
}

fn basept(config: &SweepConfig) -> Result<SweepReport> {
    let mut items = Vec::new();
    if config.p1 {
        items.extend(p1_grid(config).into_iter().map(BaseptItem::P1));
        items.push(BaseptItem::Integral(CurveModel::P1));
    }
    let mut models = Vec::new();
    for &t in &config.torsion_orders {
        for (a, c) in element_pairs(t, true) {
            models.push(cyclic_model(t, a, c)?);
        }
    }
    if config.free_generator {
        models.extend(free_models()?);
    }
    let k = config.max_points.min(3) as usize;
    let coeff_tuples: Vec<Vec<Rational>> = product(&vec![half_open(config.max_denominator); 3])
        .into_iter()
        .filter(|c| {
            c.iter().filter(|x| !x.is_zero()).count() <= k
                && c.iter().sum::<Rational>() <= Rational::one()
        })
        .collect();
    for m in &models {
        let on = |p: &str| {
            m.picard()
                .is_some_and(|pic| pic.points().any(|(n, _)| n.as_str() == p))
        };
        for c in &coeff_tuples {
            if !c[2].is_zero() && !on("P2") {
                continue;
            }
            items.push(BaseptItem::Fractional(m.clone(), c.clone()));
        }
        items.push(BaseptItem::Integral(m.clone()));
    }
    let points = names("P", config.max_points as usize);
    let anchors = [pt("Q"), points[0].clone()];
    run_chunks(config, &items, 0, |item, t| {
        match item {
            BaseptItem::P1(pairs) => {
                for anchor in &anchors {
                    for (l, b) in p1_problems(pairs, &points, std::slice::from_ref(anchor)) {
                        let p = BaseptProblem::new(CurveModel::P1, l, b, anchor.clone())?;
                        basept_checks(&p, config.max_n, t)?;
                    }
                }
            }
            BaseptItem::Fractional(curve, coeffs) => {
                let support = [pt("Q"), pt("P1"), pt("P2")];
                let delta =
                    Divisor::from_terms(support.iter().cloned().zip(coeffs.iter().cloned()));
                let bvals = half_open(config.max_denominator);
                let choices: Vec<Vec<Rational>> = coeffs
                    .iter()
                    .map(|d| bvals.iter().filter(|b| *b <= d).cloned().collect())
                    .collect();
                let l = &Divisor::single(pt("Q"), Rational::one()) - &delta;
                for bs in product(&choices) {
                    let b = Divisor::from_terms(support.iter().cloned().zip(bs));
                    basept_checks(
                        &BaseptProblem::new(curve.clone(), l.clone(), b, pt("Q"))?,
                        config.max_n,
                        t,
                    )?;
                }
                // With `⌈L⌉ ≁ Q` the first step already fails; `B = 0` suffices.
                let off = &Divisor::single(unit_point(curve), Rational::one()) - &delta;
                basept_checks(
                    &BaseptProblem::new(curve.clone(), off, Divisor::zero(), pt("Q"))?,
                    config.max_n,
                    t,
                )?;
            }
            BaseptItem::Integral(curve) => integral_basept(curve, config, t)?,
        }
        Ok(())
    })
}

/// A point of class `1` (the fresh point `X` when no named point carries it);
/// on `P¹` simply `X`.
fn unit_point(curve: &CurveModel) -> PointId {
    curve
        .picard()
        .and_then(|m| {
            let mut e = m.identity();
            e[0] = 1;
            m.point_at(&e).cloned()
        })
        .unwrap_or_else(|| pt("X"))
}

fn integral_basept(curve: &CurveModel, config: &SweepConfig, t: &mut Tally) -> Result<()> {
    let curve = match curve {
        CurveModel::P1 => CurveModel::P1,
        CurveModel::Elliptic(m) => {
            let mut e = m.identity();
            e[0] = 1;
            if m.point_at(&e).is_none() {
                CurveModel::Elliptic(m.clone().with_point(pt("X"), e)?)
            } else {
                curve.clone()
            }
        }
    };
    let support: Vec<PointId> = match &curve {
        CurveModel::P1 => vec![pt("Q"), pt("P1"), pt("P2")],
        CurveModel::Elliptic(m) => m.points().map(|(p, _)| p.clone()).collect(),
    };
    let qq = pt("Q");
    let mut bs = vec![Divisor::zero()];
    for z in &support {
        for c in open(config.max_denominator)
            .into_iter()
            .chain([Rational::one()])
        {
            bs.push(Divisor::single(z.clone(), c));
        }
    }
    for x in &support {
        for y in &support {
            let l = &Divisor::single(x.clone(), Rational::one())
                - &Divisor::single(y.clone(), Rational::one());
            for b in &bs {
                basept_checks(
                    &BaseptProblem::new(curve.clone(), l.clone(), b.clone(), qq.clone())?,
                    config.max_n,
                    t,
                )?;
            }
        }
    }
    let coeffs: Vec<Vec<i64>> =
        product(&vec![(-3..=3).collect::<Vec<i64>>(); support.len().min(3)]);
    for c in coeffs {
        let d = Divisor::from_terms(
            support
                .iter()
                .cloned()
                .zip(c.into_iter().map(Rational::from)),
        );
        let dc = curve.class_of(&d)?;
        let lhs = base_locus_oracle(&curve, &qq, &curve.add(&curve.canonical_class(), &dc));
        let rhs = !base_locus_oracle(&curve, &qq, &curve.sub(&curve.point_class(&qq), &dc));
        let show = || format!("{}: D={d}, Q={qq}", curve.kind());
        t.check("duality", lhs, rhs, show);
        let cls = duality_check(&curve, &qq, &d)?;
        t.check(
            "duality-classifier",
            (cls.q_in_bs_k_plus_d, cls.q_not_in_bs_q_minus_d),
            (lhs, rhs),
            show,
        );
    }
    Ok(())
}

fn crossmodule(config: &SweepConfig) -> Result<SweepReport> {
    needs_two(config)?;
    let items = p1_grid(config);
    let points = names("P", config.max_points as usize);
    let anchors = [pt("Q"), points[0].clone()];
    run_chunks(config, &items, 0, |pairs, t| {
        for anchor in &anchors {
            for (l, b) in p1_problems(pairs, &points, std::slice::from_ref(anchor)) {
                let bp = BaseptProblem::new(CurveModel::P1, l.clone(), b.clone(), anchor.clone())?;
                let ap = AdjointProblem::new(CurveModel::P1, l, b)?;
                let show = |n: u32| {
                    let (l, b) = (&ap.l, &ap.b);
                    move || format!("L={l}, B={b}, Q={anchor}, N={n}")
                };
                t.instances += 1;
                t.check(
                    "x-step",
                    basept_step(&bp)?.holds,
                    is_empty_adjoint(&ap)?.0,
                    show(1),
                );
                let profile = successive_basept_through(&bp, config.max_n)?;
                for (c, n) in profile.iter().zip(1..).skip(1) {
                    t.instances += 1;
                    t.check(
                        "x-successive",
                        Some(c.holds),
                        successive_empty(&ap, n)?.holds,
                        show(n),
                    );
                }
                let v = successive_empty_infinite(&ap).map(|r| r.n_max == Order::Infinite);
                t.check(
                    "x-infinite",
                    Ok(successive_basept_infinite(&bp)?.holds),
                    v,
                    show(0),
                );
            }
        }
        Ok(())
    })
}

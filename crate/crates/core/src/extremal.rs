//! Failure indices for fractions with bounded numerators.
//!
//! For `x ∈ (0,1)` the sequence `x⁺_M` (right end of the Farey interval of
//! order `M` containing `x`) decreases to `x`. [`n_single`] is the last `M`
//! with `x⁺_M ≥ 1`, and [`n_pair`] the last `M` with `x⁺_M + y ≥ 1`.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{in_bounded_numerator, q, Rational};

fn check_open_unit(x: &Rational, name: &str) -> Result<()> {
    if !x.is_positive() || *x >= Rational::one() {
        return Err(Error::Domain(format!("{name}={x} is outside (0,1)")));
    }
    Ok(())
}

/// Pair count, best index and its maximizers for one `x`.
type RowBest = (u64, u64, Vec<(Rational, Rational)>);

/// `⌊1/(1-x)⌋`, the unique `N` with `x⁺_{N+1} < 1 ≤ x⁺_N`.
pub fn n_single(x: &Rational) -> Result<u64> {
    check_open_unit(x, "x")?;
    let v = (Rational::one() - x).recip()?.floor();
    Ok(v.to_i64().expect("small index") as u64)
}

/// Unique `N` with `x⁺_{N+1} + y < 1 ≤ x⁺_N + y`, by ascending search.
pub fn n_pair(x: &Rational, y: &Rational) -> Result<u64> {
    check_open_unit(x, "x")?;
    check_open_unit(y, "y")?;
    if y > x {
        return Err(Error::hypothesis("x >= y", format!("x={x}, y={y}")));
    }
    if x + y >= Rational::one() {
        return Err(Error::hypothesis("x + y < 1", format!("x={x}, y={y}")));
    }
    let one = Rational::one();
    let mut plus = one.clone();
    let mut m: i64 = 1;
    loop {
        m += 1;
        let cand = (x.scale(m).floor() + &one) * q(1, m);
        if cand < plus {
            plus = cand;
        }
        if &plus + y < one {
            return Ok((m - 1) as u64);
        }
    }
}

/// Maximum of [`n_pair`] over `A_l × A_l` inside a denominator box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub l: u32,
    pub denominator_bound: u32,
    pub pairs_searched: u64,
    pub n_max: u64,
    pub argmax_pairs: Vec<(Rational, Rational)>,
    /// `n_max ≤ (l+1)²`.
    pub within_bound: bool,
    /// If `n_max = (l+1)²`, the maximizers are exactly `(l/(l+1), l/(l²+l+1))`.
    pub extremal_unique: bool,
}

/// Elements of `A_l` with denominator at most `bound`, ascending.
pub fn bounded_numerator_grid(l: u32, bound: u32) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=l as i64)
        .flat_map(|p| {
            ((p + 1)..=bound as i64)
                .filter(move |d| p.gcd(d) == 1)
                .map(move |d| q(p, d))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The pair `(l/(l+1), l/(l²+l+1))`.
pub fn extremal_pair(l: u32) -> (Rational, Rational) {
    let l = l as i64;
    (q(l, l + 1), q(l, l * l + l + 1))
}

pub fn max_over_pairs(l: u32, bound: u32) -> Result<ExtremalRecord> {
    if l == 0 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    if bound < l * l + l + 1 {
        return Err(Error::Domain(format!(
            "denominator bound {bound} is below l^2+l+1 = {}",
            l * l + l + 1
        )));
    }
    let grid = bounded_numerator_grid(l, bound);
    let one = Rational::one();
    let per_x: Vec<RowBest> = grid
        .par_iter()
        .map(|x| {
            let mut best = 0u64;
            let mut count = 0u64;
            let mut arg = Vec::new();
            for y in grid.iter().take_while(|y| *y <= x) {
                if x + y >= one {
                    break;
                }
                count += 1;
                let n = n_pair(x, y).expect("hypotheses checked");
                if n > best {
                    best = n;
                    arg.clear();
                }
                if n == best {
                    arg.push((x.clone(), y.clone()));
                }
            }
            (best, count, arg)
        })
        .collect();
    let n_max = per_x.iter().map(|r| r.0).max().unwrap_or(0);
    let pairs_searched = per_x.iter().map(|r| r.1).sum();
    let argmax_pairs: Vec<_> = per_x
        .into_iter()
        .filter(|r| r.0 == n_max)
        .flat_map(|r| r.2)
        .collect();
    let cap = ((l + 1) * (l + 1)) as u64;
    Ok(ExtremalRecord {
        l,
        denominator_bound: bound,
        pairs_searched,
        within_bound: n_max <= cap,
        extremal_unique: n_max != cap || argmax_pairs == [extremal_pair(l)],
        n_max,
        argmax_pairs,
    })
}

/// Pairs `(p, q)` with `1 ≤ p ≤ l`, `p < q ≤ 2p`, `gcd(p,q) = 1`: the
/// decompositions `x + y = 1` with `x = p/q ≥ y` in `A_l`.
pub fn complementary_pairs(l: u32) -> Vec<(u32, u32)> {
    let out: Vec<(u32, u32)> = (1..=l)
        .flat_map(|p| {
            ((p + 1)..=2 * p)
                .filter(move |d| p.gcd(d) == 1)
                .map(move |d| (p, d))
        })
        .collect();
    debug_assert!(out.iter().all(|&(_, d)| d <= 2 * l));
    debug_assert!(out.iter().all(|&(p, d)| {
        let (x, y) = (q(p as i64, d as i64), q((d - p) as i64, d as i64));
        x >= y && in_bounded_numerator(&x, l).unwrap() && in_bounded_numerator(&y, l).unwrap()
    }));
    out
}

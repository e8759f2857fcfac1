//! Exact rationals, Farey sets of bounded order, and fractions with bounded
//! numerators.
//!
//! The Farey set of order `n` is `[0,1] ∩ ⋃_{i≤n} (1/i)ℤ`. It cuts `[0,1)`
//! into half-open intervals `[x, x')`; [`farey_floor`] and [`delta_plus`]
//! return the two endpoints of the interval containing a given point using
//! closed formulas, without materializing the set.

mod rational;

pub(crate) use rational::parse_rational_at;
pub use rational::{q, Rational};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

/// Half-open interval between two consecutive elements of a Farey set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FareyInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub order: u32,
}

impl FareyInterval {
    /// The interval of the Farey set of order `order` that contains `x`.
    pub fn containing(x: &Rational, order: u32) -> Result<Self> {
        Ok(FareyInterval {
            lo: farey_floor(x, order)?,
            hi: delta_plus(x, order)?,
            order,
        })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("Farey order must be at least 1".into()));
    }
    Ok(())
}

fn check_unit_interval(x: &Rational) -> Result<()> {
    if x.is_negative() || x >= &Rational::one() {
        return Err(Error::Domain(format!("{x} is outside [0,1)")));
    }
    Ok(())
}

/// Sorted elements of the Farey set of order `n`, from `0` to `1`.
pub fn farey_set(n: u32) -> Result<Vec<Rational>> {
    check_order(n)?;
    let n = n as i64;
    let mut out: Vec<Rational> = (1..=n)
        .flat_map(|den| (0..=den).map(move |num| q(num, den)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Right endpoint of the Farey interval of order `n` containing `x`:
/// `min_{1≤i≤n} (1 + ⌊ix⌋)/i`.
pub fn delta_plus(x: &Rational, n: u32) -> Result<Rational> {
    check_order(n)?;
    check_unit_interval(x)?;
    let mut best = Rational::one();
    for i in 1..=n as i64 {
        let cand = (x.scale(i).floor() + Rational::one()) * q(1, i);
        if cand < best {
            best = cand;
        }
    }
    Ok(best)
}

/// Left endpoint of the Farey interval of order `n` containing `x`:
/// `max_{1≤i≤n} ⌊ix⌋/i`.
pub fn farey_floor(x: &Rational, n: u32) -> Result<Rational> {
    check_order(n)?;
    check_unit_interval(x)?;
    let mut best = Rational::zero();
    for i in 1..=n as i64 {
        let cand = x.scale(i).floor() * q(1, i);
        if cand > best {
            best = cand;
        }
    }
    Ok(best)
}

/// Whether the open interval `(lo, hi)` misses the Farey set of order `n`,
/// decided by the identity `⌊i·lo⌋ + ⌊i(1-hi)⌋ = i - 1` for all `i ≤ n`.
pub fn gap_empty(lo: &Rational, hi: &Rational, n: u32) -> Result<bool> {
    check_order(n)?;
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
    }
    if lo.is_negative() || hi > &Rational::one() {
        return Err(Error::Domain(format!("({lo}, {hi}) is not inside [0,1]")));
    }
    let co = Rational::one() - hi;
    Ok((1..=n as i64).all(|i| {
        let lhs = lo.scale(i).floor() + co.scale(i).floor();
        lhs == Rational::from(i - 1)
    }))
}

/// Membership in `A_l`: `x ∈ (0,1)` has a representation `p/q` with `p ≤ l`.
pub fn in_bounded_numerator(x: &Rational, l: u32) -> Result<bool> {
    if !x.is_positive() || x >= &Rational::one() {
        return Err(Error::Domain(format!("{x} is outside (0,1)")));
    }
    if l == 0 {
        return Err(Error::Domain("numerator bound must be at least 1".into()));
    }
    Ok(x.numer() <= BigInt::from(l))
}

/// Smallest positive `l` with `l·x` integral.
pub fn index_of(x: &Rational) -> BigInt {
    x.index()
}

/// [`index_of`] as a machine integer, for the small values used by the criteria.
pub fn index_u64(x: &Rational) -> u64 {
    use num_traits::ToPrimitive;
    x.index().to_u64().expect("index fits in u64")
}

/// All rationals in `[lo, hi]` whose reduced denominator is at most `max_den`,
/// sorted ascending.
pub fn rationals_between(lo: &Rational, hi: &Rational, max_den: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    for den in 1..=max_den as i64 {
        let start = lo.scale(den).ceil().to_i64().expect("small grid bound");
        let end = hi.scale(den).floor().to_i64().expect("small grid bound");
        for num in start..=end {
            let r = q(num, den);
            if r.index() == BigInt::from(den) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[Rational]) -> Vec<String> {
        v.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn farey_small_orders() {
        assert_eq!(strs(&farey_set(1).unwrap()), ["0", "1"]);
        assert_eq!(
            strs(&farey_set(3).unwrap()),
            ["0", "1/3", "1/2", "2/3", "1"]
        );
        assert_eq!(
            strs(&farey_set(4).unwrap()),
            ["0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"]
        );
        assert!(farey_set(0).is_err());
    }

    #[test]
    fn interval_endpoints() {
        assert_eq!(delta_plus(&Rational::zero(), 7).unwrap(), q(1, 7));
        assert_eq!(delta_plus(&q(2, 5), 3).unwrap(), q(1, 2));
        assert_eq!(delta_plus(&q(3, 4), 5).unwrap(), q(4, 5));
        assert_eq!(farey_floor(&q(2, 5), 3).unwrap(), q(1, 3));
        assert_eq!(farey_floor(&q(1, 2), 4).unwrap(), q(1, 2));
        assert_eq!(farey_floor(&q(9, 10), 3).unwrap(), q(2, 3));
        assert!(delta_plus(&Rational::one(), 3).is_err());
        assert!(farey_floor(&q(-1, 2), 3).is_err());
    }

    #[test]
    fn gap_identity_examples() {
        assert!(gap_empty(&q(1, 3), &q(1, 2), 4).unwrap());
        assert!(!gap_empty(&q(1, 3), &q(1, 2), 5).unwrap());
        assert!(gap_empty(&Rational::zero(), &Rational::one(), 1).unwrap());
        assert!(gap_empty(&q(1, 2), &q(1, 3), 4).is_err());
    }

    #[test]
    fn bounded_numerators() {
        assert!(!in_bounded_numerator(&q(3, 7), 2).unwrap());
        assert!(in_bounded_numerator(&q(3, 7), 3).unwrap());
        assert!(in_bounded_numerator(&q(5, 6), 5).unwrap());
        assert!(in_bounded_numerator(&Rational::one(), 5).is_err());
        assert!(in_bounded_numerator(&Rational::zero(), 5).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_of(&q(1, 2)), BigInt::from(2));
        assert_eq!(index_of(&q(2, 3)), BigInt::from(3));
        assert_eq!(index_of(&q(4, 6)), BigInt::from(3));
        assert_eq!(index_u64(&Rational::from(3)), 1);
    }

    #[test]
    fn rationals_between_counts() {
        let all = rationals_between(&Rational::zero(), &Rational::one(), 4);
        assert_eq!(all, farey_set(4).unwrap());
        let neg = rationals_between(&q(-1, 1), &Rational::zero(), 2);
        assert_eq!(strs(&neg), ["-1", "-1/2", "0"]);
    }
}

//! Divisors with rational coefficients on a curve, and their text grammar.
//!
//! Grammar: `"c1@P1 + c2@P2 - c3@P3"` where each `ci` follows the rational
//! grammar and point names are `[A-Za-z0-9_]+`. The zero divisor is written
//! `"0"` (the empty string also parses to zero). Printing sorts terms by point
//! name, so output is byte-stable.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactq::{parse_rational_at, Rational};

/// Opaque point identifier; cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(Arc<str>);

impl PointId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        match name
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
        {
            _ if name.is_empty() => Err(Error::parse(&name, 0, "empty point name")),
            Some((pos, _)) => Err(Error::parse(&name, pos, "point names are alphanumeric")),
            None => Ok(PointId(name.into())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for PointId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for PointId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        PointId::new(name).map_err(serde::de::Error::custom)
    }
}

impl FromStr for PointId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PointId::new(s)
    }
}

/// Shorthand for building point ids in code and tests. Panics on a bad name.
pub fn pt(name: &str) -> PointId {
    PointId::new(name).expect("valid point name")
}

/// Finite formal sum of points with nonzero rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    /// Sorted by point, coefficients nonzero.
    entries: Vec<(PointId, Rational)>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn single(point: PointId, coeff: Rational) -> Self {
        let mut d = Divisor::zero();
        d.set(point, coeff);
        d
    }

    pub fn from_terms<I: IntoIterator<Item = (PointId, Rational)>>(terms: I) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in terms {
            d.add_term(p, &c);
        }
        d
    }

    /// Replaces the coefficient at `point`; a zero coefficient removes it.
    pub fn set(&mut self, point: PointId, coeff: Rational) {
        match (
            self.entries.binary_search_by(|(p, _)| p.cmp(&point)),
            coeff.is_zero(),
        ) {
            (Ok(i), true) => {
                self.entries.remove(i);
            }
            (Ok(i), false) => self.entries[i].1 = coeff,
            (Err(_), true) => {}
            (Err(i), false) => self.entries.insert(i, (point, coeff)),
        }
    }

    pub fn add_term(&mut self, point: PointId, coeff: &Rational) {
        let c = self.coeff(&point) + coeff;
        self.set(point, c);
    }

    pub fn coeff(&self, point: &PointId) -> Rational {
        match self.entries.binary_search_by(|(p, _)| p.cmp(point)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointId, &Rational)> {
        self.entries.iter().map(|(p, c)| (p, c))
    }

    pub fn points(&self) -> impl Iterator<Item = &PointId> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> Rational {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter_map(|(p, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (p.clone(), v))
                })
                .collect(),
        }
    }

    /// Sorted merge of `self + sign·other`.
    fn combine(&self, other: &Divisor, negate: bool) -> Divisor {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        let signed = |c: &Rational| if negate { -c } else { c.clone() };
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().cloned(),
                (None, Some((p, c))) => {
                    b.next();
                    Some((p.clone(), signed(c)))
                }
                (Some((pa, ca)), Some((pb, cb))) => match pa.cmp(pb) {
                    std::cmp::Ordering::Less => a.next().cloned(),
                    std::cmp::Ordering::Greater => {
                        b.next();
                        Some((pb.clone(), signed(cb)))
                    }
                    std::cmp::Ordering::Equal => {
                        let v = if negate { ca - cb } else { ca + cb };
                        let p = pa.clone();
                        a.next();
                        b.next();
                        Some((p, v))
                    }
                },
            };
            if let Some((p, c)) = next {
                if !c.is_zero() {
                    entries.push((p, c));
                }
            }
        }
        Divisor { entries }
    }

    pub fn round_down(&self) -> Divisor {
        self.map(Rational::floor)
    }

    pub fn round_up(&self) -> Divisor {
        self.map(Rational::ceil)
    }

    /// Componentwise fractional part `D - ⌊D⌋`.
    pub fn frac(&self) -> Divisor {
        self.map(Rational::fract)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        self.map(|c| c.scale(k))
    }

    pub fn scale_by(&self, k: &Rational) -> Divisor {
        self.map(|c| c * k)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_integer())
    }

    pub fn is_effective(&self) -> bool {
        self.entries.iter().all(|(_, c)| !c.is_negative())
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Divisor) -> bool {
        self.entries.iter().all(|(p, c)| *c <= other.coeff(p))
            && other
                .entries
                .iter()
                .all(|(p, c)| !c.is_negative() || self.coeff(p) <= *c)
    }

    /// Largest coefficient, or zero for the zero divisor.
    pub fn max_coeff(&self) -> Rational {
        self.entries
            .iter()
            .map(|(_, c)| c)
            .max()
            .cloned()
            .unwrap_or_default()
    }

    /// Integral coefficients as machine integers.
    pub fn integral_terms(&self) -> Result<Vec<(PointId, i64)>> {
        self.entries
            .iter()
            .map(|(p, c)| {
                c.to_i64()
                    .map(|n| (p.clone(), n))
                    .ok_or_else(|| Error::Domain(format!("divisor {self} is not integral at {p}")))
            })
            .collect()
    }
}

impl std::ops::Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        self.combine(rhs, false)
    }
}

impl std::ops::Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self.combine(rhs, true)
    }
}

impl std::ops::Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.map(|c| -c)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.entries.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, _) => write!(f, "{c}@{p}")?,
                (_, false) => write!(f, " + {c}@{p}")?,
                (_, true) => write!(f, " - {}@{p}", c.abs())?,
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn term(&mut self) -> Result<(PointId, Rational)> {
        let start = self.pos;
        let coeff_text = self.take_while(|b| b == b'-' || b == b'/' || b.is_ascii_digit());
        let coeff = parse_rational_at(coeff_text, self.text, start)?;
        if self.peek() != Some(b'@') {
            return Err(Error::parse(
                self.text,
                self.pos,
                "expected '@' after coefficient",
            ));
        }
        self.pos += 1;
        let name_start = self.pos;
        let name = self.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
        if name.is_empty() {
            return Err(Error::parse(self.text, name_start, "expected point name"));
        }
        Ok((PointId(name.into()), coeff))
    }
}

impl FromStr for Divisor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "0" {
            return Ok(Divisor::zero());
        }
        let mut cur = Cursor { text, pos: 0 };
        let mut out = Divisor::zero();
        cur.skip_ws();
        let mut negate = false;
        loop {
            let (p, c) = cur.term()?;
            out.add_term(p, &if negate { -c } else { c });
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => {
                    return Err(Error::parse(
                        text,
                        cur.pos,
                        "expected '+' or '-' between terms",
                    ))
                }
            }
            cur.pos += 1;
            cur.skip_ws();
            if cur.peek().is_none() {
                return Err(Error::parse(text, cur.pos, "dangling operator"));
            }
        }
        Ok(out)
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

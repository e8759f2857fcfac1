//! Curve models of genus at most one and their divisor classes.
//!
//! `P¹` only needs degrees. An elliptic curve is represented by an abstract
//! Picard model: `Pic⁰` is a finitely generated abelian group
//! `ℤ^r ⊕ ℤ/n₁ ⊕ … ⊕ ℤ/n_k`, and every named point carries the group element
//! of its Abel–Jacobi image. The class of an integral divisor `D` is the pair
//! `(deg D, Σ c_P · g_P)`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::divisor::{Divisor, PointId};
use crate::error::{Error, Result};

/// Element of `ℤ^r ⊕ ⊕ ℤ/n_j`, free coordinates first.
pub type GroupElem = Vec<i64>;

/// Order of a group element; free elements have infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl ElementOrder {
    /// Whether `order > n`, i.e. `i·g ≠ 0` for every `1 ≤ i ≤ n`.
    pub fn exceeds(self, n: u64) -> bool {
        match self {
            ElementOrder::Finite(t) => t > n,
            ElementOrder::Infinite => true,
        }
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(t) => write!(f, "{t}"),
            ElementOrder::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for ElementOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ElementOrder::Finite(t) => s.serialize_u64(*t),
            ElementOrder::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// `Pic⁰` of an elliptic curve together with the classes of named points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardModel {
    free_rank: usize,
    torsion: Vec<u64>,
    points: BTreeMap<PointId, GroupElem>,
}

impl PicardModel {
    /// `ℤ^free_rank ⊕ ℤ/n₁ ⊕ …`. A zero rank is allowed (purely torsion models).
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|&&n| n == 0) {
            return Err(Error::Model(format!(
                "torsion order {bad} must be positive"
            )));
        }
        Ok(PicardModel {
            free_rank,
            torsion,
            points: BTreeMap::new(),
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        PicardModel::new(0, vec![n])
    }

    pub fn free() -> Self {
        PicardModel::new(1, vec![]).expect("no torsion")
    }

    /// Assigns a group element to a point. Distinct points of an elliptic
    /// curve are never linearly equivalent, so two names may not share an
    /// element.
    pub fn with_point(mut self, name: PointId, elem: GroupElem) -> Result<Self> {
        let elem = self.reduce_checked(elem)?;
        if let Some((other, _)) = self.points.iter().find(|(p, e)| **e == elem && **p != name) {
            return Err(Error::Model(format!(
                "points {other} and {name} share a group element; distinct points of an elliptic curve are not linearly equivalent"
            )));
        }
        self.points.insert(name, elem);
        Ok(self)
    }

    /// Parses `"r;n1,n2"` (group) and `"P=g,Q=g"` (points), where an element
    /// `g` lists its coordinates separated by `:`.
    pub fn parse(group: &str, points: &str) -> Result<Self> {
        let (rank, tors) = group.split_once(';').unwrap_or((group, ""));
        let rank: usize = rank
            .trim()
            .parse()
            .map_err(|_| Error::parse(group, 0, "expected free rank before ';'"))?;
        let offset = group.len() - tors.len();
        let mut torsion = Vec::new();
        for (k, part) in tors
            .split(',')
            .enumerate()
            .filter(|(_, p)| !p.trim().is_empty())
        {
            let pos = offset + tors.split(',').take(k).map(|s| s.len() + 1).sum::<usize>();
            torsion.push(
                part.trim()
                    .parse()
                    .map_err(|_| Error::parse(group, pos, "expected a torsion order"))?,
            );
        }
        let mut model = PicardModel::new(rank, torsion)?;
        let mut pos = 0;
        for item in points.split(',') {
            if !item.trim().is_empty() {
                let (name, elem) = item
                    .split_once('=')
                    .ok_or_else(|| Error::parse(points, pos, "expected NAME=element"))?;
                let elem = elem
                    .split(':')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| {
                        Error::parse(points, pos + name.len() + 1, "expected integer coordinates")
                    })?;
                model = model.with_point(name.trim().parse()?, elem)?;
            }
            pos += item.len() + 1;
        }
        Ok(model)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn identity(&self) -> GroupElem {
        vec![0; self.dim()]
    }

    pub fn points(&self) -> impl Iterator<Item = (&PointId, &GroupElem)> {
        self.points.iter()
    }

    fn reduce_checked(&self, mut elem: GroupElem) -> Result<GroupElem> {
        if elem.len() != self.dim() {
            return Err(Error::Model(format!(
                "element {elem:?} has {} coordinates, the group has {}",
                elem.len(),
                self.dim()
            )));
        }
        self.reduce_in_place(&mut elem);
        Ok(elem)
    }

    fn reduce_in_place(&self, elem: &mut [i64]) {
        for (c, &n) in elem[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(n as i64);
        }
    }

    /// Group element of a point; unassigned points sit at the identity.
    pub fn element(&self, point: &PointId) -> GroupElem {
        self.points
            .get(point)
            .cloned()
            .unwrap_or_else(|| self.identity())
    }

    /// A named point carrying `elem`, if any.
    pub fn point_at(&self, elem: &[i64]) -> Option<&PointId> {
        self.points
            .iter()
            .find(|(_, e)| e.as_slice() == elem)
            .map(|(p, _)| p)
    }

    /// `acc += k·[point]`, unreduced.
    fn accumulate(&self, acc: &mut [i64], point: &PointId, k: i64) {
        if let Some(e) = self.points.get(point) {
            for (a, x) in acc.iter_mut().zip(e) {
                *a += x * k;
            }
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> GroupElem {
        let mut out: GroupElem = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn scale(&self, a: &[i64], k: i64) -> GroupElem {
        let mut out: GroupElem = a.iter().map(|x| x * k).collect();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn neg(&self, a: &[i64]) -> GroupElem {
        self.scale(a, -1)
    }

    pub fn is_identity(&self, a: &[i64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn order(&self, a: &[i64]) -> ElementOrder {
        if a[..self.free_rank].iter().any(|&c| c != 0) {
            return ElementOrder::Infinite;
        }
        let mut order = 1u64;
        for (&c, &n) in a[self.free_rank..].iter().zip(&self.torsion) {
            let g = (c.rem_euclid(n as i64) as u64).gcd(&n);
            order = order.lcm(&(n / g));
        }
        ElementOrder::Finite(order)
    }
}

/// Linear-equivalence class of an integral divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Class {
    pub degree: i64,
    /// `Pic⁰` component; empty on `P¹`.
    pub elem: GroupElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveModel {
    P1,
    Elliptic(PicardModel),
}

impl CurveModel {
    /// Model for a curve of the given genus. Genus two or more is rejected:
    /// an empty adjoint system `|⌈K+B+L⌉|` forces `g ≤ 1`.
    pub fn of_genus(genus: u32, picard: Option<PicardModel>) -> Result<Self> {
        match (genus, picard) {
            (0, _) => Ok(CurveModel::P1),
            (1, Some(p)) => Ok(CurveModel::Elliptic(p)),
            (1, None) => Err(Error::Model(
                "an elliptic model needs a Picard group".into(),
            )),
            (g, _) => Err(Error::Model(format!(
                "genus {g} curves are out of scope: an empty adjoint system forces genus <= 1"
            ))),
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            CurveModel::P1 => 0,
            CurveModel::Elliptic(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveModel::P1 => "p1",
            CurveModel::Elliptic(_) => "elliptic",
        }
    }

    pub fn picard(&self) -> Option<&PicardModel> {
        match self {
            CurveModel::P1 => None,
            CurveModel::Elliptic(p) => Some(p),
        }
    }

    pub fn zero_class(&self) -> Class {
        Class {
            degree: 0,
            elem: self.picard().map_or_else(Vec::new, PicardModel::identity),
        }
    }

    /// `K`: degree `-2` on `P¹`, the trivial class on an elliptic curve.
    pub fn canonical_class(&self) -> Class {
        Class {
            degree: 2 * self.genus() as i64 - 2,
            ..self.zero_class()
        }
    }

    pub fn point_class(&self, p: &PointId) -> Class {
        Class {
            degree: 1,
            elem: self.picard().map_or_else(Vec::new, |m| m.element(p)),
        }
    }

    /// Class of an integral divisor; fractional coefficients are rejected.
    pub fn class_of(&self, d: &Divisor) -> Result<Class> {
        let mut out = self.zero_class();
        for (p, c) in d.iter() {
            let k = c
                .to_i64()
                .ok_or_else(|| Error::Domain(format!("divisor {d} is not integral at {p}")))?;
            out.degree += k;
            if let Some(m) = self.picard() {
                m.accumulate(&mut out.elem, p, k);
            }
        }
        if let Some(m) = self.picard() {
            m.reduce_in_place(&mut out.elem);
        }
        Ok(out)
    }

    pub fn add(&self, a: &Class, b: &Class) -> Class {
        Class {
            degree: a.degree + b.degree,
            elem: self
                .picard()
                .map_or_else(Vec::new, |m| m.add(&a.elem, &b.elem)),
        }
    }

    pub fn sub(&self, a: &Class, b: &Class) -> Class {
        self.add(a, &self.scale(b, -1))
    }

    pub fn scale(&self, a: &Class, k: i64) -> Class {
        Class {
            degree: a.degree * k,
            elem: self.picard().map_or_else(Vec::new, |m| m.scale(&a.elem, k)),
        }
    }

    pub fn is_trivial(&self, a: &Class) -> bool {
        a.degree == 0 && a.elem.iter().all(|&c| c == 0)
    }

    /// Linear equivalence of integral divisors.
    pub fn equivalent(&self, a: &Divisor, b: &Divisor) -> Result<bool> {
        Ok(self.class_of(a)? == self.class_of(b)?)
    }

    /// Order of a degree-zero class (always 1 on `P¹`).
    pub fn order(&self, a: &Class) -> Result<ElementOrder> {
        if a.degree != 0 {
            return Err(Error::Domain(format!(
                "class of degree {} has no order",
                a.degree
            )));
        }
        Ok(self
            .picard()
            .map_or(ElementOrder::Finite(1), |m| m.order(&a.elem)))
    }
}

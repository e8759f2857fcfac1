//! Two-term floor systems `⌊iδ - b⌋ + ⌊iδ' - b'⌋ ≥ i - 1` for `1 ≤ i ≤ N`.
//!
//! [`holds_direct`] evaluates the system term by term. [`classify_crt`]
//! decides it in closed form: either `δ` already sits in the top window
//! `[(N-1+b)/N, 1)`, or `δ` lies in `[(1+b)/2, (N-1+b)/N)` and `δ'` clears
//! every constraint `(q-p+b')/q` attached to a pair `1 ≤ p < q ≤ N` with
//! `δ < (p+b)/q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{delta_plus, q, Rational};

/// Outcome of a direct evaluation over `1..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(
    tag = "verdict",
    content = "first_violation",
    rename_all = "snake_case"
)]
pub enum Verdict {
    Holds,
    FailsAt(u32),
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn first_violation(self) -> Option<u32> {
        match self {
            Verdict::Holds => None,
            Verdict::FailsAt(i) => Some(i),
        }
    }
}

/// Validated input of the two-term floor system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrtInput {
    pub delta: Rational,
    pub b: Rational,
    pub delta_p: Rational,
    pub b_p: Rational,
    pub n: u32,
}

impl CrtInput {
    pub fn new(
        delta: Rational,
        b: Rational,
        delta_p: Rational,
        b_p: Rational,
        n: u32,
    ) -> Result<Self> {
        let one = Rational::one();
        let checks: [(&'static str, bool); 9] = [
            ("0 <= b", !b.is_negative()),
            ("b <= delta", b <= delta),
            ("delta < 1", delta < one),
            ("0 <= b'", !b_p.is_negative()),
            ("b' <= delta'", b_p <= delta_p),
            ("delta' < 1", delta_p < one),
            ("delta' <= delta", delta_p <= delta),
            ("delta + delta' <= 1", &delta + &delta_p <= one),
            ("N >= 2", n >= 2),
        ];
        for (name, ok) in checks {
            if !ok {
                return Err(Error::hypothesis(
                    name,
                    format!("delta={delta}, b={b}, delta'={delta_p}, b'={b_p}, N={n}"),
                ));
            }
        }
        Ok(CrtInput {
            delta,
            b,
            delta_p,
            b_p,
            n,
        })
    }

    /// Same system with the two terms exchanged. Only valid when `δ = δ'`.
    fn swapped(&self) -> Option<CrtInput> {
        (self.delta == self.delta_p).then(|| CrtInput {
            delta: self.delta_p.clone(),
            b: self.b_p.clone(),
            delta_p: self.delta.clone(),
            b_p: self.b.clone(),
            n: self.n,
        })
    }
}

/// Term-by-term evaluation, reporting the least violating `i`.
pub fn holds_direct(input: &CrtInput) -> Verdict {
    for i in 1..=input.n {
        let k = i as i64;
        let lhs = (input.delta.scale(k) - &input.b).floor()
            + (input.delta_p.scale(k) - &input.b_p).floor();
        if lhs < Rational::from(k - 1) {
            return Verdict::FailsAt(i);
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrtCase {
    #[serde(rename = "crt-a")]
    CaseA,
    #[serde(rename = "crt-b")]
    CaseB,
    #[serde(rename = "fails")]
    Fails,
}

impl CrtCase {
    pub fn tag(self) -> &'static str {
        match self {
            CrtCase::CaseA => "crt-a",
            CrtCase::CaseB => "crt-b",
            CrtCase::Fails => "fails",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrtClassification {
    pub case: CrtCase,
    /// Pairs `(p, q)` with `δ < (p+b)/q`; populated in case b.
    pub witnesses: Vec<(u32, u32)>,
    /// `max (q-p+b')/q` over the witnesses, in case b.
    pub bound: Option<Rational>,
    /// Least `q` of a pair whose constraint `δ'` misses, when failing.
    pub first_violation: Option<u32>,
    /// The tie `δ = δ'` was resolved by reading the system with the two
    /// terms exchanged.
    pub swapped: bool,
}

fn top_threshold(delta_b: &Rational, n: u32) -> Rational {
    (Rational::from(n as i64 - 1) + delta_b) * q(1, n as i64)
}

/// The closed-form criterion exactly as written, with `(δ, b)` always read as
/// the leading term.
///
/// When `δ = δ'` and only the second term carries a boundary (`b > 0 = b'`)
/// this reading rejects systems that hold; [`classify_crt`] repairs that by
/// also trying the exchanged labelling.
pub fn classify_crt_as_stated(input: &CrtInput) -> CrtClassification {
    let CrtInput {
        delta,
        b,
        delta_p,
        b_p,
        n,
    } = input;
    let n = *n;
    if delta >= &top_threshold(b, n) {
        return CrtClassification {
            case: CrtCase::CaseA,
            witnesses: Vec::new(),
            bound: None,
            first_violation: None,
            swapped: false,
        };
    }
    let mut witnesses = Vec::new();
    let mut bound: Option<Rational> = None;
    let mut first_violation: Option<u32> = None;
    for qq in 2..=n {
        let qi = qq as i64;
        for p in 1..qq {
            let pi = p as i64;
            if delta < &((Rational::from(pi) + b) * q(1, qi)) {
                witnesses.push((p, qq));
                let c = (Rational::from(qi - pi) + b_p) * q(1, qi);
                if delta_p < &c && first_violation.is_none() {
                    first_violation = Some(qq);
                }
                bound = Some(match bound {
                    Some(m) => m.max(c),
                    None => c,
                });
            }
        }
    }
    let lower = (Rational::one() + b) * q(1, 2);
    let in_window = delta >= &lower;
    let meets = bound.as_ref().is_none_or(|m| delta_p >= m);
    if in_window && meets {
        CrtClassification {
            case: CrtCase::CaseB,
            witnesses,
            bound,
            first_violation: None,
            swapped: false,
        }
    } else {
        CrtClassification {
            case: CrtCase::Fails,
            witnesses: Vec::new(),
            bound: None,
            first_violation: first_violation.or(if in_window { None } else { Some(2) }),
            swapped: false,
        }
    }
}

/// Closed-form decision of the floor system.
///
/// The leading term is `(δ, b)`; when `δ = δ'` the two terms are
/// interchangeable and the exchanged reading is tried as well.
pub fn classify_crt(input: &CrtInput) -> CrtClassification {
    let direct = classify_crt_as_stated(input);
    if direct.case != CrtCase::Fails {
        return direct;
    }
    match input.swapped() {
        Some(sw) => {
            let mut alt = classify_crt_as_stated(&sw);
            if alt.case == CrtCase::Fails {
                return direct;
            }
            alt.swapped = true;
            alt
        }
        None => direct,
    }
}

/// Boundary-free criterion: `δ⁺_N + δ' ≥ 1`.
pub fn holds_no_b(delta: &Rational, delta_p: &Rational, n: u32) -> Result<bool> {
    CrtInput::new(
        delta.clone(),
        Rational::zero(),
        delta_p.clone(),
        Rational::zero(),
        n,
    )?;
    Ok(delta_plus(delta, n)? + delta_p >= Rational::one())
}

/// A pair `1 ≤ p < q ≤ N` with `δ < (p+b)/q` and `p/q - δ < 1/(N+1)`.
///
/// Requires `N ≥ 2`, `0 ≤ b < 1` and `1/2 ≤ δ < (N-1+b)/N`. Returns
/// `(N-1, N)` when `δ ≥ (N-1)/N`, otherwise the reduced right endpoint of the
/// Farey interval of order `N` containing `δ`.
pub fn nd_witness(delta: &Rational, b: &Rational, n: u32) -> Result<(u32, u32)> {
    if n < 2 {
        return Err(Error::hypothesis("N >= 2", format!("N={n}")));
    }
    if b.is_negative() || b >= &Rational::one() {
        return Err(Error::hypothesis("0 <= b < 1", format!("b={b}")));
    }
    if delta < &q(1, 2) || delta >= &top_threshold(b, n) {
        return Err(Error::hypothesis(
            "1/2 <= delta < (N-1+b)/N",
            format!("delta={delta}, b={b}, N={n}"),
        ));
    }
    let ni = n as i64;
    let (p, qq) = if delta >= &q(ni - 1, ni) {
        (n - 1, n)
    } else {
        let hi = delta_plus(delta, n)?;
        let (p, qq) = hi.to_i64_pair().expect("Farey endpoints are small");
        (p as u32, qq as u32)
    };
    debug_assert!(delta < &((Rational::from(p as i64) + b) * q(1, qq as i64)));
    debug_assert!(q(p as i64, qq as i64) - delta < q(1, ni + 1));
    Ok((p, qq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EacRegime {
    /// `(N-1+b)/N ≤ x < 1`: `⌊ix - b⌋ = i - 1` for every `i ≤ N`.
    TopWindow,
    /// `(N-2+b)/(N-1) ≤ x < (N-1+b)/N` with `N ≥ 2`: `⌊Nx - b⌋ = N - 2`.
    SecondWindow,
    Other,
}

/// Locates `x` relative to the two largest thresholds `(p+b)/q`, `q ≤ N`.
pub fn eac_regime(x: &Rational, b: &Rational, n: u32) -> Result<EacRegime> {
    if n == 0 {
        return Err(Error::hypothesis("N >= 1", "N=0"));
    }
    let one = Rational::one();
    if b.is_negative() || b >= &one {
        return Err(Error::hypothesis("0 <= b < 1", format!("b={b}")));
    }
    if x.is_negative() || x >= &one {
        return Err(Error::hypothesis("0 <= x < 1", format!("x={x}")));
    }
    let ni = n as i64;
    if x >= &top_threshold(b, n) {
        return Ok(EacRegime::TopWindow);
    }
    if n >= 2 && x >= &((Rational::from(ni - 2) + b) * q(1, ni - 1)) {
        // Nx - b lies in [N-1-(1-b)/(N-1), N-1), so its floor is N-2 even
        // when the window's left end makes Nx - b integral.
        debug_assert_eq!((x.scale(ni) - b).floor(), Rational::from(ni - 2));
        return Ok(EacRegime::SecondWindow);
    }
    Ok(EacRegime::Other)
}

/// Whether `⌊ix - b⌋ = i - 1` for all `1 ≤ i ≤ N`, evaluated term by term.
pub fn top_window_identity(x: &Rational, b: &Rational, n: u32) -> bool {
    (1..=n as i64).all(|i| (x.scale(i) - b).floor() == Rational::from(i - 1))
}

/// The distinct values of `[0,1) ∩ {(p+b)/q : 1 ≤ q ≤ N, p ≥ 0}`, descending.
pub fn ordered_thresholds(b: &Rational, n: u32) -> Vec<Rational> {
    let one = Rational::one();
    let mut out = Vec::new();
    for qq in 1..=n as i64 {
        for p in 0..qq {
            let v = (Rational::from(p) + b) * q(1, qq);
            if v < one {
                out.push(v);
            }
        }
    }
    out.sort();
    out.dedup();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(d: Rational, b: Rational, dp: Rational, bp: Rational, n: u32) -> CrtInput {
        CrtInput::new(d, b, dp, bp, n).unwrap()
    }

    #[test]
    fn direct_examples() {
        let z = Rational::zero;
        assert!(holds_direct(&input(q(1, 2), z(), q(1, 2), z(), 2)).holds());
        assert!(holds_direct(&input(q(11, 20), q(1, 10), q(1, 3), z(), 3)).holds());
        assert_eq!(
            holds_direct(&input(q(3, 4), z(), q(1, 8), z(), 5)),
            Verdict::FailsAt(5)
        );
    }

    #[test]
    fn classification_examples() {
        let z = Rational::zero;
        let a = classify_crt(&input(q(9, 10), z(), z(), z(), 5));
        assert_eq!(a.case, CrtCase::CaseA);

        let b = classify_crt(&input(q(11, 20), q(1, 10), q(1, 3), z(), 3));
        assert_eq!(b.case, CrtCase::CaseB);
        assert_eq!(b.witnesses, vec![(2, 3)]);
        assert_eq!(b.bound, Some(q(1, 3)));

        let f = classify_crt(&input(q(1, 2), z(), q(1, 4), z(), 3));
        assert_eq!(f.case, CrtCase::Fails);
        assert_eq!(f.first_violation, Some(3));
    }

    #[test]
    fn tie_with_boundary_on_leading_term() {
        // δ = δ' = 1/2, b = 1/4, b' = 0: the system holds for every N.
        for n in 2..=8 {
            let inp = input(q(1, 2), q(1, 4), q(1, 2), Rational::zero(), n);
            assert!(holds_direct(&inp).holds());
            assert_eq!(classify_crt_as_stated(&inp).case, CrtCase::Fails);
            let fixed = classify_crt(&inp);
            assert_ne!(fixed.case, CrtCase::Fails);
            assert!(fixed.swapped);
        }
    }

    #[test]
    fn hypotheses_are_named() {
        let err =
            CrtInput::new(q(1, 3), q(1, 2), Rational::zero(), Rational::zero(), 3).unwrap_err();
        assert_eq!(err.hypothesis_name(), Some("b <= delta"));
        let err =
            CrtInput::new(q(2, 3), Rational::zero(), q(1, 2), Rational::zero(), 3).unwrap_err();
        assert_eq!(err.hypothesis_name(), Some("delta + delta' <= 1"));
        let err =
            CrtInput::new(q(1, 2), Rational::zero(), q(1, 2), Rational::zero(), 1).unwrap_err();
        assert_eq!(err.hypothesis_name(), Some("N >= 2"));
    }

    #[test]
    fn no_boundary_examples() {
        assert!(holds_no_b(&q(3, 5), &q(2, 5), 4).unwrap());
        assert!(holds_no_b(&q(3, 4), &q(1, 8), 4).unwrap());
        assert!(!holds_no_b(&q(3, 4), &q(1, 8), 5).unwrap());
        for n in 2..=12 {
            assert!(holds_no_b(&q(1, 2), &q(1, 2), n).unwrap());
        }
    }

    #[test]
    fn nd_examples() {
        assert_eq!(nd_witness(&q(1, 2), &Rational::zero(), 3).unwrap(), (2, 3));
        assert_eq!(nd_witness(&q(7, 10), &q(1, 2), 3).unwrap(), (2, 3));
        assert_eq!(nd_witness(&q(5, 8), &Rational::zero(), 4).unwrap(), (2, 3));
        assert!(nd_witness(&q(2, 5), &Rational::zero(), 4).is_err());
        assert!(nd_witness(&q(3, 4), &Rational::zero(), 4).is_err());
    }

    #[test]
    fn eac_examples() {
        let z = Rational::zero();
        assert_eq!(eac_regime(&q(9, 10), &z, 5).unwrap(), EacRegime::TopWindow);
        assert_eq!(eac_regime(&q(4, 5), &z, 5).unwrap(), EacRegime::TopWindow);
        assert_eq!(
            eac_regime(&q(7, 9), &z, 5).unwrap(),
            EacRegime::SecondWindow
        );
        assert_eq!((q(7, 9).scale(5)).floor(), Rational::from(3));
        assert_eq!(eac_regime(&q(1, 3), &z, 4).unwrap(), EacRegime::Other);
        assert_eq!(eac_regime(&z, &z, 2).unwrap(), EacRegime::SecondWindow);
    }

    #[test]
    fn threshold_ordering() {
        let t = ordered_thresholds(&q(1, 3), 4);
        assert_eq!(t[0], q(10, 12));
        assert_eq!(t[1], q(7, 9));
        assert_eq!(
            ordered_thresholds(&Rational::zero(), 1),
            vec![Rational::zero()]
        );
    }
}

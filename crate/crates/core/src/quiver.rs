//! Vertex sets `I_lambda = {lambda^(+-1) q^(2l)}`, the quiver with arrows
//! `i -> q^2 i`, and the relation between two vertices.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{Field, Params, Scalar};

/// Default bound on `|l|` when searching `q^(2l)` over the rationals.
pub const DEFAULT_SEARCH_BOUND: u32 = 64;

/// Mutual position of an ordered pair of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowRelation {
    Equal,
    /// `i` and `j` are distinct and not joined by an arrow.
    None,
    /// `j = q^2 i != q^-2 i`.
    Right,
    /// `j = q^-2 i != q^2 i`.
    Left,
    /// `j = q^2 i = q^-2 i`, possible only when `q^2 = -1`.
    Both,
}

impl ArrowRelation {
    /// The relation of the reversed pair.
    pub fn reversed(self) -> ArrowRelation {
        match self {
            ArrowRelation::Right => ArrowRelation::Left,
            ArrowRelation::Left => ArrowRelation::Right,
            r => r,
        }
    }

    /// Number of arrows from the first vertex to the second.
    pub fn arrows_out(self) -> u32 {
        matches!(self, ArrowRelation::Right | ArrowRelation::Both) as u32
    }

    /// Number of arrows from the second vertex to the first.
    pub fn arrows_in(self) -> u32 {
        matches!(self, ArrowRelation::Left | ArrowRelation::Both) as u32
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ArrowRelation::Equal => "=",
            ArrowRelation::None => "-/-",
            ArrowRelation::Right => "->",
            ArrowRelation::Left => "<-",
            ArrowRelation::Both => "<->",
        }
    }
}

impl fmt::Display for ArrowRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Relation between `i` and `j` for the given parameters.
pub fn arrow_relation(params: &Params, i: &Scalar, j: &Scalar) -> ArrowRelation {
    if i == j {
        return ArrowRelation::Equal;
    }
    let q2 = params.q2();
    let q2_inv = params.q_inv() * params.q_inv();
    let fwd = *j == &q2 * i;
    let back = *j == &q2_inv * i;
    match (fwd, back) {
        (true, true) => ArrowRelation::Both,
        (true, false) => ArrowRelation::Right,
        (false, true) => ArrowRelation::Left,
        (false, false) => ArrowRelation::None,
    }
}

/// `|i -> j|`.
pub fn arrow_count(params: &Params, i: &Scalar, j: &Scalar) -> u32 {
    arrow_relation(params, i, j).arrows_out()
}

/// Exponent data `(eps, l)` with `x = lambda^eps q^(2l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPosition {
    pub eps: i8,
    pub l: i64,
}

/// Finds `(eps, l)` with `x = lambda^eps q^(2l)`, preferring `eps = 1` and
/// the smallest `|l|` (smallest nonnegative `l` over a finite field).
///
/// Over a finite field the cyclic group generated by `q^2` is walked in full.
/// Over the rationals `|l| <= bound` is searched, which is exact for this
/// window since `|q| != 1`.
pub fn in_component(
    params: &Params,
    x: &Scalar,
    lambda: &Scalar,
    bound: u32,
) -> Result<Option<ComponentPosition>> {
    let lambda_inv =
        lambda.inv().ok_or_else(|| Error::Precondition("lambda must be nonzero".into()))?;
    if x.is_zero() {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let q2 = params.q2();
    for (eps, base) in [(1i8, lambda.clone()), (-1i8, lambda_inv)] {
        // Looking for q^(2l) = x / base.
        let target = x * &base.inv().expect("nonzero");
        match params.field() {
            Field::Prime(p) => {
                let mut pow = params.field().one();
                for l in 0..p as i64 {
                    if pow == target {
                        return Ok(Some(ComponentPosition { eps, l }));
                    }
                    pow = &pow * &q2;
                    if pow.is_one() {
                        break;
                    }
                }
            }
            Field::Rationals => {
                let q2_inv = params.q_inv() * params.q_inv();
                let mut up = params.field().one();
                let mut down = params.field().one();
                for l in 0..=bound as i64 {
                    if up == target {
                        return Ok(Some(ComponentPosition { eps, l }));
                    }
                    if down == target {
                        return Ok(Some(ComponentPosition { eps, l: -l }));
                    }
                    up = &up * &q2;
                    down = &down * &q2_inv;
                }
            }
        }
    }
    Ok(None)
}

/// A validated tuple `(lambda_1, .., lambda_l)` with pairwise disjoint
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTuple {
    entries: Vec<Scalar>,
    bound: u32,
}

impl LambdaTuple {
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn search_bound(&self) -> u32 {
        self.bound
    }

    /// Index of the component containing `x`, if any.
    pub fn component_of(&self, params: &Params, x: &Scalar) -> Result<Option<usize>> {
        for (a, lam) in self.entries.iter().enumerate() {
            if in_component(params, x, lam, self.bound)?.is_some() {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, params: &Params, x: &Scalar) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        Ok(self.component_of(params, x)?.is_some())
    }
}

/// Validates `entries`: all nonzero and with pairwise disjoint components.
/// Overlaps are reported with a witness, namely the later entry itself.
pub fn check_lambda_tuple(params: &Params, entries: &[Scalar], bound: u32) -> Result<LambdaTuple> {
    for x in entries {
        if x.is_zero() || !params.field().contains(x) {
            return Err(Error::InvalidParams(format!("lambda entry {x} must be a nonzero field element")));
        }
    }
    // Two components I(a), I(b) are either equal or disjoint, so it suffices
    // to test whether b lies in I(a).
    for (ia, a) in entries.iter().enumerate() {
        for b in &entries[ia + 1..] {
            if in_component(params, b, a, bound)?.is_some() {
                return Err(Error::OverlappingComponents {
                    a: a.to_string(),
                    b: b.to_string(),
                    witness: b.to_string(),
                });
            }
        }
    }
    Ok(LambdaTuple { entries: entries.to_vec(), bound })
}

/// Position of `lambda` relative to the powers of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaCase {
    /// `lambda` or `-lambda` lies in `I_1`.
    CaseA,
    /// `lambda` or `-lambda` lies in `I_q` but not in `I_1`.
    CaseB,
    /// `lambda` is not of the form `+-q^l`.
    CaseC,
}

pub fn classify_lambda(params: &Params, lambda: &Scalar, bound: u32) -> Result<LambdaCase> {
    let one = params.field().one();
    for x in [lambda.clone(), -lambda] {
        if in_component(params, &x, &one, bound)?.is_some() {
            return Ok(LambdaCase::CaseA);
        }
    }
    for x in [lambda.clone(), -lambda] {
        if in_component(params, &x, params.q(), bound)?.is_some() {
            return Ok(LambdaCase::CaseB);
        }
    }
    Ok(LambdaCase::CaseC)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13(q: &str) -> Params {
        Params::parse(Field::Prime(13), "1", q).unwrap()
    }

    fn s(p: &Params, x: i64) -> Scalar {
        p.field().from_i64(x)
    }

    #[test]
    fn relations_generic() {
        let p = f13("2");
        assert_eq!(arrow_relation(&p, &s(&p, 3), &s(&p, 3)), ArrowRelation::Equal);
        assert_eq!(arrow_relation(&p, &s(&p, 1), &s(&p, 4)), ArrowRelation::Right);
        assert_eq!(arrow_relation(&p, &s(&p, 4), &s(&p, 1)), ArrowRelation::Left);
        assert_eq!(arrow_relation(&p, &s(&p, 1), &s(&p, 5)), ArrowRelation::None);
        assert_eq!(arrow_count(&p, &s(&p, 1), &s(&p, 4)), 1);
        assert_eq!(arrow_count(&p, &s(&p, 4), &s(&p, 1)), 0);
    }

    #[test]
    fn relation_both_when_q_squared_is_minus_one() {
        let p = f13("5");
        let r = arrow_relation(&p, &s(&p, 1), &s(&p, 12));
        assert_eq!(r, ArrowRelation::Both);
        assert_eq!(r.arrows_out() + r.arrows_in(), 2);
    }

    #[test]
    fn relation_mirror_and_inverse() {
        let p = f13("2");
        for a in 1..13 {
            for b in 1..13 {
                let (i, j) = (s(&p, a), s(&p, b));
                let r = arrow_relation(&p, &i, &j);
                assert_eq!(arrow_relation(&p, &j, &i), r.reversed());
                let (ii, ji) = (i.inv().unwrap(), j.inv().unwrap());
                assert_eq!(arrow_relation(&p, &ii, &ji), r.reversed());
            }
        }
    }

    #[test]
    fn component_search() {
        let p = f13("2");
        let one = s(&p, 1);
        assert_eq!(in_component(&p, &one, &one, 64).unwrap(), Some(ComponentPosition { eps: 1, l: 0 }));
        // 4^2 = 16 = 3 mod 13.
        assert_eq!(in_component(&p, &s(&p, 3), &one, 64).unwrap(), Some(ComponentPosition { eps: 1, l: 2 }));
        assert_eq!(in_component(&p, &s(&p, 5), &one, 64).unwrap(), None);
        let q = Params::parse(Field::Rationals, "1", "2").unwrap();
        let lam = q.field().parse("3").unwrap();
        let x = &lam.inv().unwrap() * &q.q2();
        assert_eq!(in_component(&q, &x, &lam, 64).unwrap(), Some(ComponentPosition { eps: -1, l: 1 }));
        for eps in [1i64, -1] {
            for l in -6i64..=6 {
                let x = &lam.pow(eps) * &q.q2().pow(l);
                let pos = in_component(&q, &x, &lam, 64).unwrap().unwrap();
                assert_eq!((pos.eps as i64, pos.l), (eps, l));
            }
        }
    }

    #[test]
    fn lambda_tuples() {
        let p = f13("2");
        assert!(check_lambda_tuple(&p, &[s(&p, 1)], 64).is_ok());
        assert!(check_lambda_tuple(&p, &[s(&p, 1), s(&p, 5)], 64).is_ok());
        let err = check_lambda_tuple(&p, &[s(&p, 1), s(&p, 4)], 64).unwrap_err();
        assert!(matches!(err, Error::OverlappingComponents { ref witness, .. } if witness == "4"));
    }

    #[test]
    fn lambda_classification() {
        let p = f13("2");
        assert_eq!(classify_lambda(&p, &s(&p, 1), 64).unwrap(), LambdaCase::CaseA);
        // 7 = 2^11 is an odd power of q.
        assert_eq!(classify_lambda(&p, &s(&p, 7), 64).unwrap(), LambdaCase::CaseB);
        let q = Params::parse(Field::Rationals, "1", "2").unwrap();
        assert_eq!(classify_lambda(&q, &q.field().from_i64(3), 64).unwrap(), LambdaCase::CaseC);
        assert_eq!(classify_lambda(&q, &q.field().from_i64(-8), 64).unwrap(), LambdaCase::CaseB);
        // q = 3 mod 13 has q^2 = 9 of odd order 3, so q lies in I_1.
        let odd = f13("3");
        assert_eq!(classify_lambda(&odd, &s(&odd, 3), 64).unwrap(), LambdaCase::CaseA);
    }
}

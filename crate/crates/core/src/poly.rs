//! Sparse multivariate polynomials in `y_1..y_n` (n <= 8) with exact
//! coefficients, and the signed-permutation action on them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};
use crate::weyl::SignedPerm;

pub const MAX_VARS: usize = 8;

/// Exponent vector packed into eight 8-bit slots; slot `k` holds the exponent
/// of `y_{k+1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = 0u64;
        for (k, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent {e} too large");
            m |= (e as u64) << (8 * k);
        }
        Mono(m)
    }

    /// `y_k` for 0-based `k`.
    pub fn var(k: usize) -> Mono {
        Mono(1u64 << (8 * k))
    }

    pub fn exp(&self, k: usize) -> u32 {
        ((self.0 >> (8 * k)) & 0xff) as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.exp(k)).collect()
    }

    pub fn degree(&self) -> u32 {
        (0..MAX_VARS).map(|k| self.exp(k)).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        for k in 0..MAX_VARS {
            assert!(self.exp(k) + o.exp(k) < 256, "exponent overflow");
        }
        Mono(self.0 + o.0)
    }

    fn with_exp(&self, k: usize, e: u32) -> Mono {
        let cleared = self.0 & !(0xffu64 << (8 * k));
        Mono(cleared | ((e as u64) << (8 * k)))
    }

    /// Swaps the exponents of `y_{a+1}` and `y_{b+1}` (0-based `a`, `b`).
    pub fn swap(&self, a: usize, b: usize) -> Mono {
        let (ea, eb) = (self.exp(a), self.exp(b));
        self.with_exp(a, eb).with_exp(b, ea)
    }

    /// All monomials in `n` variables of total degree exactly `d`, in a fixed
    /// order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(Mono::from_exps(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[k] = e;
                rec(k + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of total degree at most `d`.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<Mono> {
        (0..=d).flat_map(|k| Mono::of_degree(n, k)).collect()
    }

    pub fn fmt_with(&self, n: usize, var: &str) -> String {
        let parts: Vec<String> = (0..n)
            .filter(|&k| self.exp(k) > 0)
            .map(|k| {
                if self.exp(k) == 1 {
                    format!("{var}{}", k + 1)
                } else {
                    format!("{var}{}^{}", k + 1, self.exp(k))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        let mut p = Poly::zero(field);
        p.add_term(Mono::ONE, c);
        p
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn monomial(field: Field, m: Mono, c: Scalar) -> Poly {
        let mut p = Poly::zero(field);
        p.add_term(m, c);
        p
    }

    /// `y_{k+1}` for 0-based `k`.
    pub fn var(field: Field, k: usize) -> Poly {
        Poly::monomial(field, Mono::var(k), field.one())
    }

    /// `sum_k coeffs[k] * y_{k+1}`.
    pub fn linear(field: Field, coeffs: &[i64]) -> Poly {
        let mut p = Poly::zero(field);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(Mono::var(k), field.from_i64(c));
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly { field: self.field, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { field: self.field, terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.field);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Image under the signed permutation `w`: `y_k -> sgn(w(k)) y_|w(k)|`.
    pub fn act(&self, w: &SignedPerm) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let (mm, neg) = act_mono(m, w);
            out.add_term(mm, if neg { -c } else { c.clone() });
        }
        out
    }

    /// Swap of `y_{k+1}` and `y_{k+2}` (0-based `k`).
    pub fn swap_vars(&self, k: usize) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.swap(k, k + 1), c.clone())).collect(),
        }
    }

    /// Exact division by `y_{a+1} - s * y_{b+1}` (0-based `a != b`, `s` a
    /// scalar), viewing the polynomial in `y_{a+1}`. Fails on a nonzero
    /// remainder.
    pub fn div_linear(&self, a: usize, b: usize, s: &Scalar) -> Result<Poly> {
        // Group by the exponent of y_a: f = sum_d f_d y_a^d.
        let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.exp(a);
            let rest = m.with_exp(a, 0);
            parts.entry(d).or_insert_with(|| Poly::zero(self.field)).add_term(rest, c.clone());
        }
        let top = match parts.keys().next_back() {
            Some(&d) => d,
            None => return Ok(Poly::zero(self.field)),
        };
        let alpha = Poly::monomial(self.field, Mono::var(b), s.clone());
        let mut quotient = Poly::zero(self.field);
        let mut carry = Poly::zero(self.field);
        // Synthetic division from the top degree down.
        for d in (0..=top).rev() {
            let fd = parts.remove(&d).unwrap_or_else(|| Poly::zero(self.field));
            let cur = fd.add(&carry.mul(&alpha));
            if d == 0 {
                if !cur.is_zero() {
                    return Err(Error::Precondition("nonzero remainder in exact division".into()));
                }
            } else {
                let ya = Mono::var(a);
                let mut shift = Mono::ONE;
                for _ in 0..d - 1 {
                    shift = shift.mul(&ya);
                }
                quotient = quotient.add(&cur.mul_mono(&shift));
                carry = cur;
            }
        }
        Ok(quotient)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in point.iter().enumerate() {
                let e = m.exp(k);
                if e > 0 {
                    t *= &x.pow(e as i64);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn fmt_vars(&self, n: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("{c}*{}", m.fmt_with(n, "y"))).collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars(MAX_VARS))
    }
}

/// Applies a signed permutation to a monomial; returns the image and whether
/// the sign is negative.
pub fn act_mono(m: &Mono, w: &SignedPerm) -> (Mono, bool) {
    let mut out = Mono::ONE;
    let mut neg = false;
    for (k, &img) in w.images().iter().enumerate() {
        let e = m.exp(k);
        if e == 0 {
            continue;
        }
        let target = (img.unsigned_abs() - 1) as usize;
        out = out.with_exp(target, e);
        if img < 0 && e % 2 == 1 {
            neg = !neg;
        }
    }
    (out, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::Rationals
    }

    #[test]
    fn monomial_packing() {
        let m = Mono::from_exps(&[2, 0, 3]);
        assert_eq!(m.exps(3), vec![2, 0, 3]);
        assert_eq!(m.degree(), 5);
        assert_eq!(m.swap(0, 1).exps(3), vec![0, 2, 3]);
        assert_eq!(Mono::of_degree(2, 2).len(), 3);
        assert_eq!(Mono::up_to_degree(3, 2).len(), 10);
    }

    #[test]
    fn exact_division() {
        let fld = f();
        // (y1 - y2) * (y1^2 + 3 y2) divided by y1 - y2.
        let a = Poly::linear(fld, &[1, -1]);
        let b = Poly::var(fld, 0).pow(2).add(&Poly::var(fld, 1).scale(&fld.from_i64(3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_linear(0, 1, &fld.one()).unwrap(), b);
        assert!(b.div_linear(0, 1, &fld.one()).is_err());
        // division by y1 + y2
        let c = Poly::linear(fld, &[1, 1]).mul(&b);
        assert_eq!(c.div_linear(0, 1, &fld.from_i64(-1)).unwrap(), b);
    }

    #[test]
    fn signed_action() {
        let fld = f();
        let r0 = SignedPerm::new(vec![-1, 2]).unwrap();
        let p = Poly::var(fld, 0).mul(&Poly::var(fld, 1));
        assert_eq!(p.act(&r0), p.neg());
        let s0 = SignedPerm::new(vec![-2, -1]).unwrap();
        let y1 = Poly::var(fld, 0);
        assert_eq!(y1.act(&s0), Poly::var(fld, 1).neg());
    }
}

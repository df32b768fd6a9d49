//! Truncated formal power series in one and two variables.
//!
//! One-variable series keep coefficients of `z^0..=z^order`. Two-variable
//! series use total-degree truncation: the coefficient of `z^a z'^b` is kept
//! when `a + b <= order`.

use crate::error::{Error, Result};
use crate::report::CheckSet;
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl TruncSeries {
    pub fn zero(field: Field, order: usize) -> Self {
        TruncSeries { field, coeffs: vec![field.zero(); order + 1] }
    }

    pub fn constant(field: Field, order: usize, c: Scalar) -> Self {
        let mut s = Self::zero(field, order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn var(field: Field, order: usize) -> Self {
        let mut s = Self::zero(field, order);
        if order >= 1 {
            s.coeffs[1] = field.one();
        }
        s
    }

    pub fn from_coeffs(field: Field, order: usize, coeffs: &[Scalar]) -> Self {
        let mut s = Self::zero(field, order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(self.field, order);
        for k in 0..=order.min(self.order()) {
            s.coeffs[k] = self.coeffs[k].clone();
        }
        s
    }

    fn common_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect();
        TruncSeries { field: self.field, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect();
        TruncSeries { field: self.field, coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncSeries { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let mut out = Self::zero(self.field, n);
        for (a, ca) in self.coeffs.iter().enumerate().take(n + 1) {
            if ca.is_zero() {
                continue;
            }
            for b in 0..=(n - a) {
                if !o.coeffs[b].is_zero() {
                    out.coeffs[a + b] += &(ca * &o.coeffs[b]);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::NotInvertible("series with zero constant term".into()))?;
        let n = self.order();
        let mut inv = Self::zero(self.field, n);
        inv.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut acc = self.field.zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &inv.coeffs[k - j]);
            }
            inv.coeffs[k] = -(&acc * &c0);
        }
        Ok(inv)
    }

    /// `self(t(z))`; `t` must have zero constant term.
    pub fn compose(&self, t: &Self) -> Result<Self> {
        if !t.coeffs[0].is_zero() {
            return Err(Error::Precondition("inner series must have zero constant term".into()));
        }
        let n = self.common_order(t);
        let t = t.truncate(n);
        // Horner evaluation keeps the work quadratic in the order.
        let mut acc = Self::zero(self.field, n);
        for k in (0..=n).rev() {
            acc = acc.mul(&t);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `self(-z)`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        TruncSeries { field: self.field, coeffs }
    }

    /// Square root with the given constant term `root` (`root^2` must equal
    /// the constant term of `self`).
    pub fn sqrt_with_root(&self, root: &Scalar) -> Result<Self> {
        if (root * root) != self.coeffs[0] || root.is_zero() {
            return Err(Error::Precondition("bad square root of constant term".into()));
        }
        let n = self.order();
        let two_r_inv = (root + root).inv().expect("characteristic is odd");
        let mut s = Self::zero(self.field, n);
        s.coeffs[0] = root.clone();
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &(&s.coeffs[j] * &s.coeffs[k - j]);
            }
            s.coeffs[k] = &acc * &two_r_inv;
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// `f(z) = z + z/(1-z) = 2z + z^2 + z^3 + ...` truncated at `order`.
pub fn series_f(field: Field, order: usize) -> Result<TruncSeries> {
    if order < 1 {
        return Err(Error::Precondition("series order must be at least 1".into()));
    }
    let mut s = TruncSeries::zero(field, order);
    s.coeffs[1] = field.from_i64(2);
    for k in 2..=order {
        s.coeffs[k] = field.one();
    }
    Ok(s)
}

/// Checks that `g` inverts `f` on both sides and that
/// `1/(1 - g(z)) = 1 - g(-z)`, up to `order`.
pub fn series_checks(field: Field, order: usize) -> Result<CheckSet> {
    let f = series_f(field, order)?;
    let g = series_comp_inverse(&f)?;
    let z = TruncSeries::var(field, order);
    let one = TruncSeries::constant(field, order, field.one());
    let mut set = CheckSet::new();
    let fg = f.compose(&g)?;
    set.check("g is a right inverse of f", "f(g(z)) = z", fg == z, || format!("f(g(z)) = {:?}", fg.coeffs()));
    let gf = g.compose(&f)?;
    set.check("g is a left inverse of f", "g(f(z)) = z", gf == z, || format!("g(f(z)) = {:?}", gf.coeffs()));
    let lhs = one.sub(&g).inverse()?;
    let rhs = one.sub(&g.negate_var());
    set.check("inverse of 1 - g", "1/(1 - g(z)) = 1 - g(-z)", lhs == rhs, || {
        let k = (0..=order).find(|&k| lhs.coeff(k) != rhs.coeff(k)).unwrap_or(0);
        format!("first difference at z^{k}")
    });
    Ok(set)
}

/// Compositional inverse `t` with `s(t(z)) = z`, solved degree by degree.
pub fn series_comp_inverse(s: &TruncSeries) -> Result<TruncSeries> {
    if !s.coeffs[0].is_zero() {
        return Err(Error::Precondition("series has nonzero constant term".into()));
    }
    let n = s.order();
    if n < 1 {
        return Err(Error::Precondition("series order must be at least 1".into()));
    }
    let a1_inv = s.coeffs[1]
        .inv()
        .ok_or_else(|| Error::NotInvertible("linear coefficient is zero".into()))?;
    let field = s.field;
    let mut t = TruncSeries::var(field, n).scale(&a1_inv);
    for k in 2..=n {
        // With t correct below degree k, the degree-k coefficient of s(t)
        // is a1 * t_k plus terms that only involve lower coefficients.
        let mut trial = t.clone();
        trial.coeffs[k] = field.zero();
        let comp = s.compose(&trial)?;
        t.coeffs[k] = -(&comp.coeffs[k] * &a1_inv);
    }
    Ok(t)
}

/// Operations needed to substitute commuting nilpotent elements into a series.
pub trait NilpotentRing {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
}

fn powers<R: NilpotentRing>(ring: &R, x: &R::Elem, upto: usize) -> Vec<R::Elem> {
    let mut p = vec![ring.one()];
    for k in 1..=upto {
        let next = ring.mul(&p[k - 1], x);
        p.push(next);
    }
    p
}

/// Substitutes `x` into `s`. `bound` must satisfy `x^bound = 0`; the sum is
/// then exact and stops at degree `bound - 1`.
pub fn eval_series_on_nilpotent<R: NilpotentRing>(
    ring: &R,
    s: &TruncSeries,
    x: &R::Elem,
    bound: usize,
) -> Result<R::Elem> {
    if s.order() < bound {
        return Err(Error::Precondition(format!(
            "truncation order {} below nilpotency bound {bound}",
            s.order()
        )));
    }
    let top = bound.saturating_sub(1);
    let pw = powers(ring, x, top);
    let mut acc = ring.zero();
    for (k, p) in pw.iter().enumerate() {
        let c = s.coeff(k);
        if !c.is_zero() {
            acc = ring.add(&acc, &ring.scale(&c, p));
        }
    }
    Ok(acc)
}

/// Two-variable series with total-degree truncation, stored densely by
/// total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries2 {
    field: Field,
    order: usize,
    coeffs: Vec<Scalar>,
}

fn tri_index(a: usize, b: usize) -> usize {
    let d = a + b;
    d * (d + 1) / 2 + b
}

impl TruncSeries2 {
    pub fn zero(field: Field, order: usize) -> Self {
        let len = (order + 1) * (order + 2) / 2;
        TruncSeries2 { field, order, coeffs: vec![field.zero(); len] }
    }

    pub fn constant(field: Field, order: usize, c: Scalar) -> Self {
        let mut s = Self::zero(field, order);
        s.coeffs[0] = c;
        s
    }

    /// Embeds a one-variable series in the first (`first = true`) or second
    /// variable.
    pub fn from_single(s: &TruncSeries, first: bool, order: usize) -> Self {
        let mut out = Self::zero(s.field(), order);
        for k in 0..=order.min(s.order()) {
            let (a, b) = if first { (k, 0) } else { (0, k) };
            out.coeffs[tri_index(a, b)] = s.coeff(k);
        }
        out
    }

    /// The linear form `ca*z + cb*z'`.
    pub fn linear(field: Field, order: usize, ca: Scalar, cb: Scalar) -> Self {
        let mut s = Self::zero(field, order);
        if order >= 1 {
            s.coeffs[tri_index(1, 0)] = ca;
            s.coeffs[tri_index(0, 1)] = cb;
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, a: usize, b: usize) -> Scalar {
        if a + b > self.order {
            self.field.zero()
        } else {
            self.coeffs[tri_index(a, b)].clone()
        }
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, c: Scalar) {
        self.coeffs[tri_index(a, b)] = c;
    }

    /// Nonzero terms as `(a, b, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for d in 0..=self.order {
            for b in 0..=d {
                let c = &self.coeffs[tri_index(d - b, b)];
                if !c.is_zero() {
                    out.push((d - b, b, c.clone()));
                }
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(self.field, order);
        for d in 0..=order.min(self.order) {
            for b in 0..=d {
                s.coeffs[tri_index(d - b, b)] = self.coeffs[tri_index(d - b, b)].clone();
            }
        }
        s
    }

    fn zip(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let n = self.order.min(o.order);
        let a = self.truncate(n);
        let b = o.truncate(n);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        TruncSeries2 { field: self.field, order: n, coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x + y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x - y)
    }

    pub fn neg(&self) -> Self {
        TruncSeries2 {
            field: self.field,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TruncSeries2 {
            field: self.field,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let mut out = Self::zero(self.field, n);
        let lhs = self.terms();
        let rhs = o.terms();
        for (a1, b1, c1) in &lhs {
            for (a2, b2, c2) in &rhs {
                if a1 + b1 + a2 + b2 <= n {
                    let k = tri_index(a1 + a2, b1 + b2);
                    out.coeffs[k] += &(c1 * c2);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::NotInvertible("series with zero constant term".into()))?;
        // 1/(c0 (1 - u)) = c0^{-1} * sum u^k, u nilpotent modulo the order.
        let one = Self::constant(self.field, self.order, self.field.one());
        let u = one.sub(&self.scale(&c0));
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 0..self.order {
            pw = pw.mul(&u);
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&c0))
    }

    /// Square root with prescribed constant term.
    pub fn sqrt_with_root(&self, root: &Scalar) -> Result<Self> {
        if (root * root) != self.coeffs[0] || root.is_zero() {
            return Err(Error::Precondition("bad square root of constant term".into()));
        }
        let n = self.order;
        let two_r_inv = (root + root).inv().expect("characteristic is odd");
        let mut s = Self::zero(self.field, n);
        s.coeffs[0] = root.clone();
        // Solve degree by degree: 2 r s_d = c_d - sum of products of lower parts.
        for d in 1..=n {
            for b in 0..=d {
                let a = d - b;
                let mut acc = self.coeffs[tri_index(a, b)].clone();
                for a1 in 0..=a {
                    for b1 in 0..=b {
                        let (a2, b2) = (a - a1, b - b1);
                        if a1 + b1 == 0 || a2 + b2 == 0 {
                            continue;
                        }
                        acc -= &(&s.coeffs[tri_index(a1, b1)] * &s.coeffs[tri_index(a2, b2)]);
                    }
                }
                s.coeffs[tri_index(a, b)] = &acc * &two_r_inv;
            }
        }
        Ok(s)
    }

    /// `F(z, z') -> F(z', z)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.field, self.order);
        for (a, b, c) in self.terms() {
            out.coeffs[tri_index(b, a)] = c;
        }
        out
    }

    /// `F(z, z') -> F(-z', -z)`.
    pub fn kappa(&self) -> Self {
        let mut out = Self::zero(self.field, self.order);
        for (a, b, c) in self.terms() {
            let c = if (a + b) % 2 == 1 { -c } else { c };
            out.coeffs[tri_index(b, a)] = c;
        }
        out
    }

    /// `F(z, z') -> F(-z, -z')`.
    pub fn negate_vars(&self) -> Self {
        let mut out = self.clone();
        for (a, b, c) in self.terms() {
            if (a + b) % 2 == 1 {
                out.coeffs[tri_index(a, b)] = -c;
            }
        }
        out
    }

    /// Exact division by `z' - z`. Each homogeneous part must vanish on the
    /// diagonal; the result has order one less.
    pub fn div_by_diff(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::Precondition("cannot divide an order-0 series".into()));
        }
        let n = self.order - 1;
        let mut out = Self::zero(self.field, n);
        for d in 0..=self.order {
            // h = sum_a c_a z^a z'^(d-a); quotient s_a = sum_{t<=a} c_t.
            let mut run = self.field.zero();
            for a in 0..=d {
                run += &self.coeffs[tri_index(a, d - a)];
                if a < d && d >= 1 && d - 1 <= n {
                    out.coeffs[tri_index(a, d - 1 - a)] = run.clone();
                }
            }
            if !run.is_zero() {
                return Err(Error::Precondition(format!(
                    "degree-{d} part is not divisible by z' - z"
                )));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// Substitutes commuting elements `x`, `y` into a two-variable series. Every
/// monomial of total degree `>= bound` in `x, y` must vanish.
pub fn eval_series2_on_nilpotent<R: NilpotentRing>(
    ring: &R,
    s: &TruncSeries2,
    x: &R::Elem,
    y: &R::Elem,
    bound: usize,
) -> Result<R::Elem> {
    if s.order() < bound {
        return Err(Error::Precondition(format!(
            "truncation order {} below nilpotency bound {bound}",
            s.order()
        )));
    }
    let top = bound.saturating_sub(1);
    let px = powers(ring, x, top);
    let py = powers(ring, y, top);
    let mut acc = ring.zero();
    for (a, b, c) in s.terms() {
        if a + b > top {
            continue;
        }
        let m = ring.mul(&px[a], &py[b]);
        acc = ring.add(&acc, &ring.scale(&c, &m));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn f_expansion() {
        let f = series_f(q(), 4).unwrap();
        let s: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(s, ["0", "2", "1", "1", "1"]);
        let f1 = series_f(q(), 1).unwrap();
        assert_eq!(f1.coeff(1).to_string(), "2");
        assert!(series_f(q(), 0).is_err());
    }

    #[test]
    fn g_low_coefficients() {
        let g = series_comp_inverse(&series_f(q(), 10).unwrap()).unwrap();
        assert_eq!(g.coeff(1).to_string(), "1/2");
        assert_eq!(g.coeff(2).to_string(), "-1/8");
        assert_eq!(g.coeff(3).to_string(), "0");
    }

    /// Independent oracle: g solves w = 2g + g^2/(1-g)... which rearranges to
    /// g^2 - (2 + w) g + w = 0 with the root g = (2 + w - sqrt(4 + w^2)) / 2.
    #[test]
    fn g_matches_closed_form() {
        let fld = q();
        let n = 20;
        let g = series_comp_inverse(&series_f(fld, n).unwrap()).unwrap();
        let mut four_plus = TruncSeries::constant(fld, n, fld.from_i64(4));
        four_plus.coeffs[2] = fld.one();
        let root = four_plus.sqrt_with_root(&fld.from_i64(2)).unwrap();
        let mut num = TruncSeries::constant(fld, n, fld.from_i64(2));
        num.coeffs[1] = fld.one();
        let closed = num.sub(&root).scale(&fld.parse("1/2").unwrap());
        assert_eq!(g, closed);
    }

    #[test]
    fn f_of_g_is_identity() {
        for fld in [q(), Field::Prime(13), Field::Prime(10007)] {
            let n = 20;
            let f = series_f(fld, n).unwrap();
            let g = series_comp_inverse(&f).unwrap();
            assert_eq!(f.compose(&g).unwrap(), TruncSeries::var(fld, n));
            assert_eq!(g.compose(&f).unwrap(), TruncSeries::var(fld, n));
        }
    }

    #[test]
    fn inverse_of_one_minus_g() {
        let fld = q();
        let n = 20;
        let g = series_comp_inverse(&series_f(fld, n).unwrap()).unwrap();
        let one = TruncSeries::constant(fld, n, fld.one());
        let lhs = one.sub(&g).inverse().unwrap();
        let rhs = one.sub(&g.negate_var());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn comp_inverse_rejects_degenerate() {
        let fld = q();
        let s = TruncSeries::from_coeffs(fld, 4, &[fld.zero(), fld.zero(), fld.one()]);
        assert!(series_comp_inverse(&s).is_err());
        let s = TruncSeries::constant(fld, 4, fld.one());
        assert!(series_comp_inverse(&s).is_err());
        let id = TruncSeries::var(fld, 6);
        assert_eq!(series_comp_inverse(&id).unwrap(), id);
    }

    struct Trunc(usize, Field);

    impl NilpotentRing for Trunc {
        type Elem = TruncSeries;
        fn one(&self) -> TruncSeries {
            TruncSeries::constant(self.1, self.0, self.1.one())
        }
        fn zero(&self) -> TruncSeries {
            TruncSeries::zero(self.1, self.0)
        }
        fn add(&self, a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
            a.add(b)
        }
        fn mul(&self, a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
            a.mul(b)
        }
        fn scale(&self, c: &Scalar, a: &TruncSeries) -> TruncSeries {
            a.scale(c)
        }
    }

    #[test]
    fn eval_on_nilpotent() {
        let fld = q();
        // y with y^2 = 0: truncated ring of order 1.
        let ring = Trunc(1, fld);
        let y = TruncSeries::var(fld, 1);
        let g = series_comp_inverse(&series_f(fld, 6).unwrap()).unwrap();
        let v = eval_series_on_nilpotent(&ring, &g, &y, 2).unwrap();
        assert_eq!(v.coeff(1).to_string(), "1/2");
        assert!(v.coeff(0).is_zero());
        let f = series_f(fld, 6).unwrap();
        assert!(eval_series_on_nilpotent(&ring, &f, &ring.zero(), 2).unwrap().is_zero());
        let c = TruncSeries::constant(fld, 6, fld.from_i64(5));
        assert_eq!(eval_series_on_nilpotent(&ring, &c, &y, 2).unwrap().coeff(0).to_string(), "5");
        assert!(eval_series_on_nilpotent(&ring, &g, &y, 7).is_err());
        // Independent of order once order >= bound.
        let g12 = series_comp_inverse(&series_f(fld, 12).unwrap()).unwrap();
        let ring3 = Trunc(3, fld);
        let y3 = TruncSeries::var(fld, 3);
        assert_eq!(
            eval_series_on_nilpotent(&ring3, &g, &y3, 4).unwrap(),
            eval_series_on_nilpotent(&ring3, &g12, &y3, 4).unwrap()
        );
    }

    #[test]
    fn two_variable_basics() {
        let fld = q();
        let n = 8;
        let zp_minus_z = TruncSeries2::linear(fld, n, fld.from_i64(-1), fld.one());
        let g = series_comp_inverse(&series_f(fld, n).unwrap()).unwrap();
        let gz = TruncSeries2::from_single(&g, true, n);
        let gzp = TruncSeries2::from_single(&g, false, n);
        let diff = gzp.sub(&gz);
        let dd = diff.div_by_diff().unwrap();
        // (z' - z) * dd reproduces g(z') - g(z) up to the reduced order.
        assert_eq!(zp_minus_z.mul(&dd), diff.truncate(n - 1));
        assert!(gz.div_by_diff().is_err());
        let inv = dd.inverse().unwrap();
        let one = TruncSeries2::constant(fld, n - 1, fld.one());
        assert_eq!(dd.mul(&inv), one);
        assert_eq!(gz.swap(), gzp);
        assert_eq!(gz.kappa(), TruncSeries2::from_single(&g.negate_var(), false, n));
    }

    #[test]
    fn two_variable_sqrt() {
        let fld = q();
        let n = 6;
        let x = TruncSeries2::linear(fld, n, fld.from_i64(3), fld.from_i64(-2));
        let s = TruncSeries2::constant(fld, n, fld.from_i64(3)).add(&x);
        let sq = s.mul(&s);
        assert_eq!(sq.sqrt_with_root(&fld.from_i64(3)).unwrap(), s);
    }

    fn arb_series(fld: Field, n: usize) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec(-20i64..20, n + 1).prop_map(move |v| {
            let cs: Vec<Scalar> = v.iter().map(|x| fld.from_i64(*x)).collect();
            TruncSeries::from_coeffs(fld, n, &cs)
        })
    }

    proptest! {
        #[test]
        fn prop_inverse(s in arb_series(Field::Prime(101), 8)) {
            prop_assume!(!s.coeff(0).is_zero());
            let one = TruncSeries::constant(Field::Prime(101), 8, Field::Prime(101).one());
            prop_assert_eq!(s.mul(&s.inverse().unwrap()), one);
        }

        #[test]
        fn prop_comp_inverse_involution(s in arb_series(Field::Rationals, 7)) {
            let mut s = s;
            s.coeffs[0] = Field::Rationals.zero();
            prop_assume!(!s.coeff(1).is_zero());
            let t = series_comp_inverse(&s).unwrap();
            prop_assert_eq!(series_comp_inverse(&t).unwrap(), s.clone());
            prop_assert_eq!(s.compose(&t).unwrap(), TruncSeries::var(Field::Rationals, 7));
        }

        #[test]
        fn prop_field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, p in prop::sample::select(vec![3u64, 5, 7, 13, 101])) {
            for fld in [Field::Rationals, Field::Prime(p)] {
                let (x, y, z) = (fld.from_i64(a), fld.from_i64(b), fld.from_i64(c));
                prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x + &y, &y + &x);
                prop_assert_eq!(&(&x - &y) + &y, x.clone());
                if !x.is_zero() {
                    prop_assert!((&x * &x.inv().unwrap()).is_one());
                }
            }
        }
    }
}

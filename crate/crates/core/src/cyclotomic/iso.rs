//! The maps between a cyclotomic Hecke algebra of type B and the cyclotomic
//! quotient of the type B algebra.
//!
//! The Hecke side is never presented independently. Its generators are the
//! elements `X_k^V`, `g_k^V` of the quotient; the relations they satisfy are
//! checked directly, and the inverse images `e^H(i)`, `y^H_k`, `psi^H_k` are
//! rebuilt from them and compared with the quiver generators.

use std::collections::{BTreeMap, BTreeSet};

use super::qfamily::{adjacent_pairs, ArrowOrientation, QSeriesFamily};
use super::quotient::CycloAlgebra;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::report::CheckSet;
use crate::scalars::{
    eval_series2_on_nilpotent, eval_series_on_nilpotent, series_f, Scalar, TruncSeries, TruncSeries2,
};
use crate::weyl::{fmt_tuple, Flavor};

/// Newton steps allowed when sharpening an approximate idempotent.
const MAX_NEWTON_STEPS: usize = 64;

/// Images of the Hecke generators in the quotient together with the
/// elements rebuilt from them.
pub struct IsoMapData<'a> {
    cyc: &'a CycloAlgebra,
    family: QSeriesFamily,
    /// `X_k^V` for `k = 1..n` (index `k - 1`).
    pub x: Vec<SparseVec>,
    pub x_inv: Vec<SparseVec>,
    /// `g_k^V` for `k = 0..n-1`.
    pub g: Vec<SparseVec>,
    /// `e^H(i)` per tuple index.
    pub e_h: Vec<SparseVec>,
    /// `y^H_k` for `k = 1..n` (index `k - 1`).
    pub y_h: Vec<SparseVec>,
    /// `psi^H_k` for `k = 0..n-1`.
    pub psi_h: Vec<SparseVec>,
}

/// The default working order: two more than the largest `N_k + N_{k+1}`.
pub fn default_truncation(cyc: &CycloAlgebra) -> usize {
    let nil = cyc.nilpotency_indices();
    let widest = match nil.len() {
        0 => 0,
        1 => nil[0] as usize,
        _ => nil.windows(2).map(|w| (w[0] + w[1]) as usize).max().unwrap_or(0),
    };
    widest + 2
}

/// Smallest working order for which every series substitution is exact.
pub fn required_order(cyc: &CycloAlgebra) -> usize {
    let nil = cyc.nilpotency_indices();
    let single = nil.iter().copied().max().unwrap_or(0) as usize;
    let pair = nil.windows(2).map(|w| (w[0] + w[1]) as usize).max().unwrap_or(1) - 1;
    single.max(pair).max(1)
}

/// Least `b` with `x^b = 0`, if at most `cap`.
fn nilpotency(cyc: &CycloAlgebra, x: &SparseVec, cap: usize) -> Result<usize> {
    let mut p = cyc.one();
    for b in 0..=cap {
        if p.is_empty() {
            return Ok(b);
        }
        p = cyc.mul(&p, x);
    }
    Err(Error::CapExceeded(format!("element not nilpotent within {cap} powers")))
}

struct Ctx<'a> {
    cyc: &'a CycloAlgebra,
    one: Scalar,
}

impl<'a> Ctx<'a> {
    fn new(cyc: &'a CycloAlgebra) -> Ctx<'a> {
        Ctx { cyc, one: cyc.algebra().field().one() }
    }

    fn residue(&self, i: usize, k: usize) -> &Scalar {
        &self.cyc.algebra().tuple(i as u32)[k]
    }

    fn tuple_count(&self) -> usize {
        self.cyc.algebra().tuples().len()
    }

    /// Sum of `e(i)` over tuples satisfying `keep`.
    fn sum_e(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        let mut acc = self.cyc.zero();
        for i in (0..self.tuple_count()).filter(|&i| keep(i)) {
            acc = self.cyc.add(&acc, &self.cyc.e(i as u32));
        }
        acc
    }

    /// `sum_i h(i_k) e(i)`.
    fn diagonal(&self, k: usize, h: impl Fn(&Scalar) -> Scalar) -> SparseVec {
        let mut acc = self.cyc.zero();
        for i in 0..self.tuple_count() {
            acc = self.cyc.add(&acc, &self.cyc.scale(&h(self.residue(i, k)), &self.cyc.e(i as u32)));
        }
        acc
    }

    /// Sum of the entries of `es` at the tuples satisfying `keep`.
    fn sum_of(&self, es: &[SparseVec], keep: impl Fn(usize) -> bool) -> SparseVec {
        let mut acc = self.cyc.zero();
        for i in (0..self.tuple_count()).filter(|&i| keep(i)) {
            acc = self.cyc.add(&acc, &es[i]);
        }
        acc
    }

    fn residues_at(&self, k: usize) -> BTreeSet<Scalar> {
        (0..self.tuple_count()).map(|i| self.residue(i, k).clone()).collect()
    }

    fn pairs_at(&self, k: usize) -> BTreeSet<(Scalar, Scalar)> {
        (0..self.tuple_count()).map(|i| (self.residue(i, k).clone(), self.residue(i, k + 1).clone())).collect()
    }

    fn pair_is(&self, i: usize, k: usize, ab: &(Scalar, Scalar)) -> bool {
        self.residue(i, k) == &ab.0 && self.residue(i, k + 1) == &ab.1
    }

    fn lin(&self, a: &SparseVec, ca: &Scalar, b: &SparseVec, cb: &Scalar) -> SparseVec {
        self.cyc.add(&self.cyc.scale(ca, a), &self.cyc.scale(cb, b))
    }

    /// `1 - s`.
    fn one_minus(&self, s: &TruncSeries) -> TruncSeries {
        TruncSeries::constant(s.field(), s.order(), self.one.clone()).sub(s)
    }

    fn eval1(&self, s: &TruncSeries, x: &SparseVec, bound: usize) -> Result<SparseVec> {
        eval_series_on_nilpotent(self.cyc, s, x, bound)
    }

    fn eval2(&self, s: &TruncSeries2, x: &SparseVec, y: &SparseVec, bound: usize) -> Result<SparseVec> {
        eval_series2_on_nilpotent(self.cyc, s, x, y, bound)
    }
}

/// Lagrange projector onto eigenvalue `c` among `values`, sharpened by
/// Newton steps `e -> 3e^2 - 2e^3` until idempotent.
fn spectral_idempotent(ctx: &Ctx, x: &SparseVec, values: &BTreeSet<Scalar>, c: &Scalar) -> Result<SparseVec> {
    let cyc = ctx.cyc;
    let mut e = cyc.one();
    for d in values.iter().filter(|d| *d != c) {
        let denom = (c - d).inv().expect("distinct residues");
        let factor = ctx.lin(x, &denom, &cyc.one(), &(-d * &denom));
        e = cyc.mul(&e, &factor);
    }
    let field = cyc.algebra().field();
    let (three, two) = (field.from_i64(3), field.from_i64(-2));
    for _ in 0..MAX_NEWTON_STEPS {
        let e2 = cyc.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = cyc.mul(&e2, &e);
        e = ctx.lin(&e2, &three, &e3, &two);
    }
    Err(Error::CapExceeded(format!("idempotent for eigenvalue {c} did not stabilise")))
}

impl<'a> IsoMapData<'a> {
    /// Builds both halves at the default working order.
    pub fn new(cyc: &'a CycloAlgebra) -> Result<IsoMapData<'a>> {
        Self::with_options(cyc, None, ArrowOrientation::Compatible)
    }

    /// Builds both halves with an optional truncation override and an
    /// explicit arrow orientation for the series family.
    pub fn with_options(
        cyc: &'a CycloAlgebra,
        truncation: Option<usize>,
        orientation: ArrowOrientation,
    ) -> Result<IsoMapData<'a>> {
        let alg = cyc.algebra();
        if alg.flavor() != Flavor::B {
            return Err(Error::Precondition("the Hecke maps are defined on the type B quotient".into()));
        }
        let n = alg.rank();
        let needed = required_order(cyc);
        let order = truncation.unwrap_or_else(|| default_truncation(cyc));
        if order < needed {
            return Err(Error::Precondition(format!("truncation order {order} below nilpotency bound {needed}")));
        }
        let family = QSeriesFamily::build_oriented(alg.params(), &adjacent_pairs(alg.tuples()), order, orientation)?;
        let ctx = Ctx::new(cyc);
        let nil: Vec<usize> = cyc.nilpotency_indices().iter().map(|&v| v as usize).collect();
        let g = family.g().clone();
        let u = ctx.one_minus(&g).inverse()?;

        // X_k = D_k (1 - g(y_k)), X_k^-1 = (1 - g(y_k))^-1 D_k^-1.
        let mut x = Vec::with_capacity(n);
        let mut x_inv = Vec::with_capacity(n);
        for k in 1..=n {
            let yk = cyc.y(k)?;
            let d = ctx.diagonal(k - 1, Scalar::clone);
            let d_inv = ctx.diagonal(k - 1, |c| c.inv().expect("residues are nonzero"));
            let gk = ctx.eval1(&g, &yk, nil[k - 1])?;
            x.push(cyc.mul(&d, &cyc.sub(&cyc.one(), &gk)));
            x_inv.push(cyc.mul(&ctx.eval1(&u, &yk, nil[k - 1])?, &d_inv));
        }

        // g_0 = psi_0, g_k = sum (psi_k Q(y_k, y_k+1) - P(y_k, y_k+1)) e(i).
        let mut gens = vec![cyc.psi(0)?];
        for k in 1..n {
            let (yk, yk1) = (cyc.y(k)?, cyc.y(k + 1)?);
            let psik = cyc.psi(k)?;
            let bound = nil[k - 1] + nil[k] - 1;
            let mut acc = cyc.zero();
            for ab in ctx.pairs_at(k - 1) {
                let e_ab = ctx.sum_e(|i| ctx.pair_is(i, k - 1, &ab));
                let q = ctx.eval2(family.get(&ab.0, &ab.1)?, &yk, &yk1, bound)?;
                let p = ctx.eval2(&family.p_series(&ab.0, &ab.1)?, &yk, &yk1, bound)?;
                let term = cyc.sub(&cyc.mul(&psik, &q), &p);
                acc = cyc.add(&acc, &cyc.mul(&term, &e_ab));
            }
            gens.push(acc);
        }

        let mut data = IsoMapData { cyc, family, x, x_inv, g: gens, e_h: Vec::new(), y_h: Vec::new(), psi_h: Vec::new() };
        data.build_rho()?;
        Ok(data)
    }

    pub fn family(&self) -> &QSeriesFamily {
        &self.family
    }

    pub fn quotient(&self) -> &CycloAlgebra {
        self.cyc
    }

    /// `e^H(i)`, `y^H_k` and `psi^H_k` from the Hecke generators alone.
    fn build_rho(&mut self) -> Result<()> {
        let cyc = self.cyc;
        let ctx = Ctx::new(cyc);
        let n = cyc.algebra().rank();
        let cap = cyc.dim() + 1;

        let mut projectors: Vec<BTreeMap<Scalar, SparseVec>> = Vec::with_capacity(n);
        for k in 0..n {
            let values = ctx.residues_at(k);
            let mut per = BTreeMap::new();
            for c in &values {
                per.insert(c.clone(), spectral_idempotent(&ctx, &self.x[k], &values, c)?);
            }
            projectors.push(per);
        }
        self.e_h = (0..ctx.tuple_count())
            .map(|i| {
                let factors: Vec<&SparseVec> = (0..n).map(|k| &projectors[k][ctx.residue(i, k)]).collect();
                cyc.product(&factors)
            })
            .collect();

        // y^H_k = sum f(1 - i_k^-1 X_k) e^H(i).
        self.y_h.clear();
        for k in 0..n {
            let parts: Vec<SparseVec> = (0..ctx.tuple_count())
                .map(|i| {
                    let c = ctx.residue(i, k).inv().expect("nonzero");
                    let xe = cyc.mul(&self.x[k], &self.e_h[i]);
                    ctx.lin(&self.e_h[i], &ctx.one, &xe, &-c)
                })
                .collect();
            let t = ctx.sum_of(&parts, |_| true);
            let b = nilpotency(cyc, &t, cap)?;
            let f = series_f(cyc.algebra().field(), b.max(1))?;
            self.y_h.push(ctx.eval1(&f, &t, b)?);
        }

        // psi^H_0 = g_0 e_beta, psi^H_k = sum (g_k + P(y^H)) Q(y^H)^-1 e^H(i).
        let e_beta = ctx.sum_of(&self.e_h, |_| true);
        self.psi_h = vec![cyc.mul(&self.g[0], &e_beta)];
        let ybound: Vec<usize> = self.y_h.iter().map(|y| nilpotency(cyc, y, cap)).collect::<Result<_>>()?;
        for k in 1..n {
            let bound = (ybound[k - 1] + ybound[k]).saturating_sub(1);
            let mut acc = cyc.zero();
            for ab in ctx.pairs_at(k - 1) {
                let e_ab = ctx.sum_of(&self.e_h, |i| ctx.pair_is(i, k - 1, &ab));
                let q_inv = self.family.get(&ab.0, &ab.1)?.inverse()?;
                let qi = ctx.eval2(&q_inv, &self.y_h[k - 1], &self.y_h[k], bound)?;
                let p = ctx.eval2(&self.family.p_series(&ab.0, &ab.1)?, &self.y_h[k - 1], &self.y_h[k], bound)?;
                let lead = cyc.add(&self.g[k], &p);
                acc = cyc.add(&acc, &cyc.product(&[&lead, &qi, &e_ab]));
            }
            self.psi_h.push(acc);
        }
        Ok(())
    }

    fn fmt(&self, v: &SparseVec) -> String {
        self.cyc.lift(v).to_string()
    }

    fn check_eq(&self, set: &mut CheckSet, name: &str, anchor: &str, lhs: &SparseVec, rhs: &SparseVec, ctx: impl FnOnce() -> String) {
        let ok = lhs == rhs;
        set.check(name, anchor, ok, || format!("{}: difference {}", ctx(), self.fmt(&self.cyc.sub(lhs, rhs))));
    }

    /// The type B affine Hecke relations and the cyclotomic relation on the
    /// images `X_k^V`, `g_k^V`.
    pub fn hecke_relation_checks(&self) -> CheckSet {
        let cyc = self.cyc;
        let params = cyc.algebra().params();
        let n = cyc.algebra().rank();
        let one = cyc.one();
        let qq = params.q() - params.q_inv();
        let m = |a: &SparseVec, b: &SparseVec| cyc.mul(a, b);
        let mut set = CheckSet::new();

        self.check_eq(&mut set, "g_0 quadratic relation", "g_0^2 = 1 (p^2 = 1)", &m(&self.g[0], &self.g[0]), &one, String::new);
        for k in 1..n {
            let rhs = cyc.add(&cyc.scale(&qq, &self.g[k]), &one);
            self.check_eq(&mut set, "g_k quadratic relation", "g_k^2 = (q - q^-1) g_k + 1", &m(&self.g[k], &self.g[k]), &rhs, || {
                format!("k={k}")
            });
        }
        if n >= 2 {
            let (g0, g1) = (&self.g[0], &self.g[1]);
            let lhs = cyc.product(&[g0, g1, g0, g1]);
            let rhs = cyc.product(&[g1, g0, g1, g0]);
            self.check_eq(&mut set, "type B braid relation", "g_0 g_1 g_0 g_1 = g_1 g_0 g_1 g_0", &lhs, &rhs, String::new);
        }
        for k in 1..n.saturating_sub(1) {
            let (a, b) = (&self.g[k], &self.g[k + 1]);
            self.check_eq(&mut set, "type A braid relation", "g_k g_{k+1} g_k = g_{k+1} g_k g_{k+1}", &cyc.product(&[a, b, a]), &cyc.product(&[b, a, b]), || {
                format!("k={k}")
            });
        }
        for a in 0..n {
            for b in a + 2..n {
                self.check_eq(&mut set, "distant generators commute", "g_a g_b = g_b g_a for |a - b| > 1", &m(&self.g[a], &self.g[b]), &m(&self.g[b], &self.g[a]), || {
                    format!("a={a}, b={b}")
                });
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                self.check_eq(&mut set, "X generators commute", "X_a X_b = X_b X_a", &m(&self.x[a], &self.x[b]), &m(&self.x[b], &self.x[a]), || {
                    format!("a={}, b={}", a + 1, b + 1)
                });
            }
            self.check_eq(&mut set, "X generators are invertible", "X_k X_k^-1 = 1 = X_k^-1 X_k", &m(&self.x[a], &self.x_inv[a]), &one, || {
                format!("k={}", a + 1)
            });
            self.check_eq(&mut set, "X generators are invertible", "X_k X_k^-1 = 1 = X_k^-1 X_k", &m(&self.x_inv[a], &self.x[a]), &one, || {
                format!("k={}", a + 1)
            });
        }
        let lhs = cyc.product(&[&self.g[0], &self.x_inv[0], &self.g[0]]);
        self.check_eq(&mut set, "g_0 inverts X_1", "g_0 X_1^-1 g_0 = X_1", &lhs, &self.x[0], String::new);
        for k in 1..n {
            let lhs = cyc.product(&[&self.g[k], &self.x[k - 1], &self.g[k]]);
            self.check_eq(&mut set, "g_k moves X_k to X_{k+1}", "g_k X_k g_k = X_{k+1}", &lhs, &self.x[k], || format!("k={k}"));
        }
        for a in 0..n {
            for j in 1..=n {
                if a >= 1 && (j == a || j == a + 1) || a == 0 && j == 1 {
                    continue;
                }
                let x = &self.x[j - 1];
                self.check_eq(&mut set, "g_a commutes with distant X_j", "g_a X_j = X_j g_a for j != a, a+1", &m(&self.g[a], x), &m(x, &self.g[a]), || {
                    format!("a={a}, j={j}")
                });
            }
        }
        // prod_j (X_1 - j)^{m(j)} = 0.
        let mut poly = one.clone();
        for (j, mult) in cyc.multiplicities().entries() {
            let factor = cyc.sub(&self.x[0], &cyc.scale(j, &one));
            poly = cyc.mul(&poly, &cyc.pow(&factor, *mult));
        }
        self.check_eq(&mut set, "cyclotomic polynomial vanishes", "prod_j (X_1 - j)^m(j) = 0", &poly, &cyc.zero(), String::new);
        set
    }

    /// Both compositions of the maps are the identity on generators.
    pub fn round_trip_checks(&self) -> Result<CheckSet> {
        let cyc = self.cyc;
        let ctx = Ctx::new(cyc);
        let n = cyc.algebra().rank();
        let cap = cyc.dim() + 1;
        let mut set = CheckSet::new();

        // Idempotents: complete, and equal to the quiver idempotents.
        let total = ctx.sum_of(&self.e_h, |_| true);
        self.check_eq(&mut set, "Hecke idempotents sum to one", "sum_i e^H(i) = e_beta", &total, &cyc.one(), String::new);
        for i in 0..ctx.tuple_count() {
            let t = cyc.algebra().tuple(i as u32);
            self.check_eq(&mut set, "sigma(rho(e(i))) = e(i)", "e(i) -> e^H(i)", &self.e_h[i], &cyc.e(i as u32), || fmt_tuple(t));
        }
        for k in 0..n {
            self.check_eq(&mut set, "sigma(rho(y_k)) = y_k", "y_k -> sum f(1 - i_k^-1 X_k) e^H(i)", &self.y_h[k], &cyc.y(k + 1)?, || {
                format!("k={}", k + 1)
            });
        }
        for k in 0..n {
            self.check_eq(&mut set, "sigma(rho(psi_k)) = psi_k", "psi_k -> sum (g_k + P) Q^-1 e^H(i)", &self.psi_h[k], &cyc.psi(k)?, || {
                format!("k={k}")
            });
        }

        // rho(sigma(X_k)) = sum i_k (1 - g(y^H_k)) e^H(i).
        let ybound: Vec<usize> = self.y_h.iter().map(|y| nilpotency(cyc, y, cap)).collect::<Result<_>>()?;
        let g = self.family.g();
        for (k, &bound) in ybound.iter().enumerate() {
            if bound > g.order() {
                set.error("rho(sigma(X_k)) = X_k", "X_k -> sum i_k (1 - g(y_k)) e(i)", format!("y^H_{} needs order {}", k + 1, bound));
                continue;
            }
            let gy = ctx.eval1(g, &self.y_h[k], bound)?;
            let base = cyc.sub(&cyc.one(), &gy);
            let mut acc = cyc.zero();
            for i in 0..ctx.tuple_count() {
                acc = cyc.add(&acc, &cyc.scale(ctx.residue(i, k), &cyc.mul(&base, &self.e_h[i])));
            }
            self.check_eq(&mut set, "rho(sigma(X_k)) = X_k", "X_k -> sum i_k (1 - g(y_k)) e(i)", &acc, &self.x[k], || {
                format!("k={}", k + 1)
            });
        }
        self.check_eq(&mut set, "rho(sigma(g_0)) = g_0", "g_0 -> psi_0", &self.psi_h[0], &self.g[0], String::new);
        for k in 1..n {
            let bound = (ybound[k - 1] + ybound[k]).saturating_sub(1);
            let mut acc = cyc.zero();
            for ab in ctx.pairs_at(k - 1) {
                let e_ab = ctx.sum_of(&self.e_h, |i| ctx.pair_is(i, k - 1, &ab));
                let q = ctx.eval2(self.family.get(&ab.0, &ab.1)?, &self.y_h[k - 1], &self.y_h[k], bound)?;
                let p = ctx.eval2(&self.family.p_series(&ab.0, &ab.1)?, &self.y_h[k - 1], &self.y_h[k], bound)?;
                let term = cyc.sub(&cyc.mul(&self.psi_h[k], &q), &p);
                acc = cyc.add(&acc, &cyc.mul(&term, &e_ab));
            }
            self.check_eq(&mut set, "rho(sigma(g_k)) = g_k", "g_k -> sum (psi_k Q - P) e(i)", &acc, &self.g[k], || format!("k={k}"));
        }
        Ok(set)
    }
}

/// The full isomorphism suite: series conditions, Hecke relations and round
/// trips.
pub fn iso_checks(cyc: &CycloAlgebra, truncation: Option<usize>) -> Result<CheckSet> {
    let data = IsoMapData::with_options(cyc, truncation, ArrowOrientation::Compatible)?;
    let mut set = data.family().verify()?;
    set.extend(data.hecke_relation_checks());
    set.extend(data.round_trip_checks()?);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{MultiplicityMap, QuotientOptions};
    use crate::scalars::{Field, Params};
    use crate::vqha::{beta_from_seeds, v_algebra};

    fn quotient(ell: u64, q: &str, seed: &[i64], m: &[(i64, u32)]) -> CycloAlgebra {
        let field = Field::new_prime(ell).unwrap();
        let params = Params::parse(field, "1", q).unwrap();
        let seed: Vec<Scalar> = seed.iter().map(|&a| field.from_i64(a)).collect();
        let beta = beta_from_seeds(&[seed], Flavor::B);
        let alg = v_algebra(params, beta).unwrap();
        let m = MultiplicityMap::new(m.iter().map(|&(a, k)| (field.from_i64(a), k))).unwrap();
        CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap()
    }

    fn assert_passes(set: &CheckSet) {
        if let Some(r) = set.failures().first() {
            panic!("{} failed: {:?}", r.name, r.witness);
        }
    }

    #[test]
    fn single_arrow_configuration() {
        let cyc = quotient(13, "2", &[1, 4], &[(1, 1), (4, 1), (10, 1)]);
        assert!(cyc.dim() > 0);
        assert_passes(&iso_checks(&cyc, None).unwrap());
    }

    #[test]
    fn double_arrow_configuration() {
        let cyc = quotient(13, "5", &[1, 12], &[(1, 2), (12, 1)]);
        assert!(cyc.dim() > 0);
        assert_passes(&iso_checks(&cyc, None).unwrap());
    }

    #[test]
    fn g0_is_psi0_and_x1_is_scalar_when_y1_vanishes() {
        let cyc = quotient(13, "2", &[1, 4], &[(1, 1), (4, 1), (10, 1)]);
        let data = IsoMapData::new(&cyc).unwrap();
        assert_eq!(data.g[0], cyc.psi(0).unwrap());
        assert_eq!(cyc.nilpotency_indices()[0], 1);
        for i in 0..cyc.algebra().tuples().len() as u32 {
            let expect = cyc.scale(&cyc.algebra().tuple(i)[0], &cyc.e(i));
            assert_eq!(cyc.mul(&data.x[0], &cyc.e(i)), expect);
        }
    }

    #[test]
    fn reversed_arrow_orientation_breaks_quadratic_relation() {
        let cyc = quotient(13, "2", &[1, 4], &[(1, 1), (4, 1), (10, 1)]);
        let data = IsoMapData::with_options(&cyc, None, ArrowOrientation::Reversed).unwrap();
        let set = data.hecke_relation_checks();
        assert!(set.failures().iter().any(|r| r.name == "g_k quadratic relation"));
    }

    #[test]
    fn truncation_below_bound_is_rejected() {
        let cyc = quotient(13, "5", &[1, 12], &[(1, 2), (12, 1)]);
        assert!(matches!(IsoMapData::with_options(&cyc, Some(1), ArrowOrientation::Compatible), Err(Error::Precondition(_))));
    }
}

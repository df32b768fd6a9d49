//! The renormalising family `Q(i, j)` of invertible two-variable series used
//! by the isomorphism between cyclotomic Hecke algebras and cyclotomic
//! quotients of the type B algebra.
//!
//! Throughout, `z` and `z'` stand for `y_k` and `y_{k+1}`, `X = i(1 - g(z))`
//! and `X' = j(1 - g(z'))`. The series do not depend on `k`.
//!
//! For `i != j` the product `swap(Q(j, i)) Q(i, j)` must equal
//! `R(i, j) = Gamma(i, j) * A(i, j)` where
//! `Gamma = (qX - q^-1 X')(qX' - q^-1 X) / ((X - X')(X' - X))` and the arrow
//! factor `A` is `1`, `1/(z' - z)` for `j = q^2 i`, `1/(z - z')` for
//! `i = q^2 j`, and their product when both hold. The compatibility
//! `Q(i, j) = kappa(Q(j^-1, i^-1))` with `kappa F(z, z') = F(-z', -z)` is
//! imposed by building one representative per orbit of ordered pairs under
//! `(i, j) -> (j, i)` and `(i, j) -> (j^-1, i^-1)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};
use crate::quiver::{arrow_relation, ArrowRelation};
use crate::report::CheckSet;
use crate::scalars::{series_comp_inverse, series_f, Params, Scalar, TruncSeries, TruncSeries2};
use crate::weyl::Tuple;

/// Extra orders carried through the divisions by `z' - z`.
const GUARD: usize = 3;

/// Which arrow receives which divided-difference factor in `R(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ArrowOrientation {
    /// `j = q^2 i` pairs with `1/(z' - z)`; compatible with the quadratic
    /// relation of `psi_k` in the type B algebra.
    #[default]
    Compatible,
    /// The opposite assignment, `j = q^2 i` with `1/(z - z')`.
    Reversed,
}

/// The series `Q(i, j)` for a set of ordered residue pairs.
#[derive(Clone, Debug)]
pub struct QSeriesFamily {
    params: Params,
    order: usize,
    orientation: ArrowOrientation,
    g: TruncSeries,
    q: BTreeMap<(Scalar, Scalar), TruncSeries2>,
}

/// Helpers at a fixed working order.
struct Builder<'a> {
    params: &'a Params,
    order: usize,
    gz: TruncSeries2,
    gz2: TruncSeries2,
}

impl<'a> Builder<'a> {
    fn new(params: &'a Params, g: &TruncSeries, order: usize) -> Builder<'a> {
        Builder {
            params,
            order,
            gz: TruncSeries2::from_single(g, true, order),
            gz2: TruncSeries2::from_single(g, false, order),
        }
    }

    fn constant(&self, c: Scalar) -> TruncSeries2 {
        TruncSeries2::constant(self.params.field(), self.order, c)
    }

    fn one(&self) -> TruncSeries2 {
        self.constant(self.params.field().one())
    }

    /// `i(1 - g(z))`.
    fn x(&self, i: &Scalar) -> TruncSeries2 {
        self.one().sub(&self.gz).scale(i)
    }

    /// `j(1 - g(z'))`.
    fn x2(&self, j: &Scalar) -> TruncSeries2 {
        self.one().sub(&self.gz2).scale(j)
    }

    /// `z' - z`.
    fn diff(&self) -> TruncSeries2 {
        let f = self.params.field();
        TruncSeries2::linear(f, self.order, -f.one(), f.one())
    }

    /// `(q^-1 (1 - g(z)) - q (1 - g(z'))) (z' - z) / (g(z') - g(z))`.
    fn diagonal(&self) -> Result<TruncSeries2> {
        let p = self.params;
        let num = self.one().sub(&self.gz).scale(p.q_inv()).sub(&self.one().sub(&self.gz2).scale(p.q()));
        let h = self.gz2.sub(&self.gz).div_by_diff()?;
        Ok(num.truncate(h.order()).mul(&h.inverse()?))
    }

    /// `qX - q^-1 X'` and `qX' - q^-1 X`.
    fn numerators(&self, i: &Scalar, j: &Scalar) -> (TruncSeries2, TruncSeries2) {
        let p = self.params;
        let (x, x2) = (self.x(i), self.x2(j));
        (x.scale(p.q()).sub(&x2.scale(p.q_inv())), x2.scale(p.q()).sub(&x.scale(p.q_inv())))
    }

    /// `R(i, j)` for `i != j`.
    fn r(&self, i: &Scalar, j: &Scalar, orientation: ArrowOrientation) -> Result<TruncSeries2> {
        let (mut n1, mut n2) = self.numerators(i, j);
        let rel = arrow_relation(self.params, i, j);
        // Divide the vanishing numerator by the matching difference.
        if matches!(rel, ArrowRelation::Right | ArrowRelation::Both) {
            n1 = n1.div_by_diff()?;
        }
        if matches!(rel, ArrowRelation::Left | ArrowRelation::Both) {
            n2 = n2.div_by_diff()?.neg();
        }
        let d = self.x(i).sub(&self.x2(j));
        let den = d.mul(&d).neg();
        let o = n1.order().min(n2.order());
        let mut r = n1.truncate(o).mul(&n2.truncate(o)).mul(&den.truncate(o).inverse()?);
        if orientation == ArrowOrientation::Reversed && matches!(rel, ArrowRelation::Right | ArrowRelation::Left) {
            r = r.neg();
        }
        Ok(r)
    }

    /// The chosen factor `(qX - q^-1 X')/(X' - X)`, divided by `z' - z` when
    /// `j = q^2 i`.
    fn representative(&self, i: &Scalar, j: &Scalar) -> Result<TruncSeries2> {
        let (mut n1, _) = self.numerators(i, j);
        if matches!(arrow_relation(self.params, i, j), ArrowRelation::Right | ArrowRelation::Both) {
            n1 = n1.div_by_diff()?;
        }
        let d = self.x2(j).sub(&self.x(i));
        Ok(n1.mul(&d.truncate(n1.order()).inverse()?))
    }
}

fn inv(x: &Scalar) -> Scalar {
    x.inv().expect("residues are nonzero")
}

/// Consecutive residue pairs `(i_k, i_{k+1})` of a tuple set.
pub fn adjacent_pairs(tuples: &[Tuple]) -> BTreeSet<(Scalar, Scalar)> {
    let mut out = BTreeSet::new();
    for t in tuples {
        for k in 0..t.len().saturating_sub(1) {
            out.insert((t[k].clone(), t[k + 1].clone()));
        }
    }
    out
}

impl QSeriesFamily {
    /// Builds and verifies the family on the closure of `pairs` under both
    /// pair involutions, correct up to total degree `order`.
    pub fn build(params: &Params, pairs: &BTreeSet<(Scalar, Scalar)>, order: usize) -> Result<QSeriesFamily> {
        Self::build_oriented(params, pairs, order, ArrowOrientation::Compatible)
    }

    /// As `build`, with an explicit arrow orientation in `R(i, j)`.
    pub fn build_oriented(
        params: &Params,
        pairs: &BTreeSet<(Scalar, Scalar)>,
        order: usize,
        orientation: ArrowOrientation,
    ) -> Result<QSeriesFamily> {
        if order == 0 {
            return Err(Error::Precondition("working order must be positive".into()));
        }
        let field = params.field();
        let wide = order + GUARD;
        let g_wide = series_comp_inverse(&series_f(field, wide)?)?;
        let b = Builder::new(params, &g_wide, wide);
        let mut closure = BTreeSet::new();
        for (i, j) in pairs {
            closure.insert((i.clone(), j.clone()));
            closure.insert((j.clone(), i.clone()));
            closure.insert((inv(j), inv(i)));
            closure.insert((inv(i), inv(j)));
        }

        let mut q: BTreeMap<(Scalar, Scalar), TruncSeries2> = BTreeMap::new();
        let diag = b.diagonal()?.truncate(order);
        for (i, j) in &closure {
            if q.contains_key(&(i.clone(), j.clone())) {
                continue;
            }
            if i == j {
                q.insert((i.clone(), j.clone()), diag.clone());
                continue;
            }
            let (ii, ji) = (inv(i), inv(j));
            let r = b.r(i, j, orientation)?;
            let f = if i == &ii && j == &ji {
                // (i, j) = (1, -1) or (-1, 1): the partner is both the swap
                // and the kappa image, so Q is an even square root of R.
                let c = r.coeff(0, 0);
                let root = field
                    .sqrt(&c)
                    .ok_or_else(|| Error::Unsupported(format!("constant term {c} of R({i}, {j}) is not a square")))?;
                r.sqrt_with_root(&root)?
            } else {
                b.representative(i, j)?
            };
            let o = f.order().min(r.order());
            let partner = r.truncate(o).mul(&f.truncate(o).inverse()?).swap();
            let entries = [
                ((i.clone(), j.clone()), f.clone()),
                ((j.clone(), i.clone()), partner.clone()),
                ((ji.clone(), ii.clone()), f.kappa()),
                ((ii, ji), partner.kappa()),
            ];
            for (key, s) in entries {
                q.entry(key).or_insert_with(|| s.truncate(order));
            }
        }
        let fam = QSeriesFamily { params: params.clone(), order, orientation, g: g_wide.truncate(order), q };
        let report = fam.verify()?;
        if let Some(bad) = report.failures().first() {
            return Err(Error::Verification(format!(
                "Q-family check '{}' failed: {}",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(fam)
    }

    /// Builds the family for the consecutive pairs of a tuple set.
    pub fn for_tuples(params: &Params, tuples: &[Tuple], order: usize) -> Result<QSeriesFamily> {
        Self::build(params, &adjacent_pairs(tuples), order)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orientation(&self) -> ArrowOrientation {
        self.orientation
    }

    /// `g` at the working order.
    pub fn g(&self) -> &TruncSeries {
        &self.g
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Scalar, Scalar)> {
        self.q.keys()
    }

    /// `Q_k(i, j)`; the same series for every `k`.
    pub fn get(&self, i: &Scalar, j: &Scalar) -> Result<&TruncSeries2> {
        self.q
            .get(&(i.clone(), j.clone()))
            .ok_or_else(|| Error::Precondition(format!("Q({i}, {j}) is not in the family")))
    }

    /// `P(i, j)`: `q^-1` if `i = j`, else
    /// `-(q - q^-1)(1 - X(i) X'(j)^-1)^-1`.
    pub fn p_series(&self, i: &Scalar, j: &Scalar) -> Result<TruncSeries2> {
        let field = self.params.field();
        if i == j {
            return Ok(TruncSeries2::constant(field, self.order, self.params.q_inv().clone()));
        }
        let wide = self.order + GUARD;
        let g = series_comp_inverse(&series_f(field, wide)?)?;
        let b = Builder::new(&self.params, &g, wide);
        let x2_inv = b.x2(j).inverse()?;
        let core = b.one().sub(&b.x(i).mul(&x2_inv));
        let qq = self.params.q() - self.params.q_inv();
        Ok(core.inverse()?.scale(&-qq).truncate(self.order))
    }

    /// Checks the diagonal formula, the product formula in every arrow case
    /// present, both compatibilities and invertibility.
    pub fn verify(&self) -> Result<CheckSet> {
        let p = &self.params;
        let field = p.field();
        let wide = self.order + GUARD;
        let g = series_comp_inverse(&series_f(field, wide)?)?;
        let b = Builder::new(p, &g, wide);
        let o = self.order;
        let mut set = CheckSet::new();
        for ((i, j), s) in &self.q {
            set.check("Q is invertible", "renormalising series", !s.coeff(0, 0).is_zero(), || {
                format!("Q({i}, {j}) has zero constant term")
            });
            if i == j {
                // Q (g(z') - g(z)) = i^-1 (q^-1 X - q X') (z' - z).
                let lhs = s.mul(&b.gz2.sub(&b.gz).truncate(o));
                let rhs = b.x(i).scale(p.q_inv()).sub(&b.x2(i).scale(p.q())).scale(&inv(i)).truncate(o).mul(&b.diff().truncate(o));
                set.check("diagonal Q formula", "Q(i,i) divided-difference formula", lhs == rhs, || {
                    format!("mismatch for i = {i}")
                });
            } else if let Some(partner) = self.q.get(&(j.clone(), i.clone())) {
                let rel = arrow_relation(p, i, j);
                let r = b.r(i, j, self.orientation)?.truncate(o);
                let prod = partner.swap().mul(s);
                let name = match rel {
                    ArrowRelation::None => "Q product, no arrow",
                    ArrowRelation::Right => "Q product, arrow i -> j",
                    ArrowRelation::Left => "Q product, arrow i <- j",
                    _ => "Q product, double arrow",
                };
                set.check(name, "Q(j,i)^{r_k} Q(i,j) = Gamma-factor", prod == r, || format!("pair ({i}, {j})"));
                // R times the cleared denominators gives the numerators back.
                let (n1, n2) = b.numerators(i, j);
                let d = b.x(i).sub(&b.x2(j));
                let mut lhs = r.mul(&d.mul(&d).neg().truncate(o));
                let dz = b.diff().truncate(o);
                let sign = if self.orientation == ArrowOrientation::Reversed
                    && matches!(rel, ArrowRelation::Right | ArrowRelation::Left)
                {
                    -field.one()
                } else {
                    field.one()
                };
                if matches!(rel, ArrowRelation::Right | ArrowRelation::Both) {
                    lhs = lhs.mul(&dz);
                }
                if matches!(rel, ArrowRelation::Left | ArrowRelation::Both) {
                    lhs = lhs.mul(&dz.neg());
                }
                let rhs = n1.mul(&n2).truncate(o).scale(&sign);
                // Each multiplication by z' - z loses one order of accuracy.
                let lost = rel.arrows_out() as usize + rel.arrows_in() as usize;
                let keep = o.saturating_sub(lost);
                set.check("Gamma factor clears denominators", "Gamma_k(i,j)", lhs.truncate(keep) == rhs.truncate(keep), || {
                    format!("pair ({i}, {j})")
                });
            }
            if let Some(twin) = self.q.get(&(inv(j), inv(i))) {
                set.check("Q(i,j) = kappa Q(j^-1,i^-1)", "r_0 r_1 r_0 twist", *s == twin.kappa(), || {
                    format!("pair ({i}, {j})")
                });
            }
            // Q_{k+1}(i,j) with y_k <-> y_{k+1} against Q_k(i,j) with
            // y_{k+1} <-> y_{k+2}, in three variables.
            let first = embed(s, 0, 1);
            let second = embed(s, 1, 2);
            set.check("Q_{k+1} and Q_k agree after reflection", "r_k Q_{k+1} = r_{k+1} Q_k", second.swap_vars(0) == first.swap_vars(1), || {
                format!("pair ({i}, {j})")
            });
        }
        Ok(set)
    }
}

/// `F(y_a, y_b)` as a polynomial in three variables.
fn embed(s: &TruncSeries2, a: usize, b: usize) -> Poly {
    let mut out = Poly::zero(s.field());
    for (x, y, c) in s.terms() {
        let mut exps = [0u32; 3];
        exps[a] += x as u32;
        exps[b] += y as u32;
        out.add_term(Mono::from_exps(&exps), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn params(ell: u64, q: &str) -> Params {
        Params::parse(Field::new_prime(ell).unwrap(), "1", q).unwrap()
    }

    fn pairs(p: &Params, xs: &[(i64, i64)]) -> BTreeSet<(Scalar, Scalar)> {
        let f = p.field();
        xs.iter().map(|&(a, b)| (f.from_i64(a), f.from_i64(b))).collect()
    }

    #[test]
    fn all_arrow_cases_verify() {
        // q = 2 over F13: 1 -> 4, 4 <- ... and 3 is unrelated to 1.
        let p = params(13, "2");
        let fam = QSeriesFamily::build(&p, &pairs(&p, &[(1, 4), (4, 1), (1, 3), (1, 12), (5, 5)]), 8).unwrap();
        let report = fam.verify().unwrap();
        assert!(report.all_passed());
        let names: Vec<&str> = report.records().iter().map(|r| r.name.as_str()).collect();
        for n in ["Q product, no arrow", "Q product, arrow i -> j", "Q product, arrow i <- j", "diagonal Q formula"] {
            assert!(names.contains(&n), "{n}");
        }
        // q^2 = -1 over F13 with q = 5: 1 <-> 12.
        let p = params(13, "5");
        let fam = QSeriesFamily::build(&p, &pairs(&p, &[(1, 12), (2, 3)]), 8).unwrap();
        let report = fam.verify().unwrap();
        assert!(report.all_passed());
        assert!(report.records().iter().any(|r| r.name == "Q product, double arrow"));
    }

    #[test]
    fn rationals_and_sign_pair() {
        let p = Params::parse(Field::Rationals, "-1", "3").unwrap();
        let f = p.field();
        let set: BTreeSet<_> = [(f.one(), -f.one()), (f.from_i64(2), f.from_ratio(1, 2).unwrap())].into_iter().collect();
        let fam = QSeriesFamily::build(&p, &set, 6).unwrap();
        // Q(1, -1) squares to R(1, -1) and has constant term (q + q^-1)/2 up to sign.
        let c = fam.get(&f.one(), &-f.one()).unwrap().coeff(0, 0);
        let expect = (p.q() + p.q_inv()) * f.from_ratio(1, 2).unwrap();
        assert!(c == expect || c == -expect);
    }

    #[test]
    fn diagonal_constant_term() {
        let p = params(13, "2");
        let f = p.field();
        let fam = QSeriesFamily::build(&p, &pairs(&p, &[(3, 3)]), 5).unwrap();
        let c = fam.get(&f.from_i64(3), &f.from_i64(3)).unwrap().coeff(0, 0);
        assert_eq!(c, (p.q_inv() - p.q()) * f.from_i64(2));
    }

    #[test]
    fn reversed_orientation_also_solves_its_own_equations() {
        let p = params(13, "2");
        let fam =
            QSeriesFamily::build_oriented(&p, &pairs(&p, &[(1, 4)]), 6, ArrowOrientation::Reversed).unwrap();
        assert!(fam.verify().unwrap().all_passed());
    }

    #[test]
    fn p_series_constant_terms() {
        let p = params(13, "2");
        let f = p.field();
        let fam = QSeriesFamily::build(&p, &pairs(&p, &[(1, 4)]), 5).unwrap();
        let (i, j) = (f.from_i64(1), f.from_i64(4));
        let c = fam.p_series(&i, &j).unwrap().coeff(0, 0);
        let expect = -(p.q() - p.q_inv()) * (f.one() - &i * &inv(&j)).inv().unwrap();
        assert_eq!(c, expect);
        assert_eq!(fam.p_series(&i, &i).unwrap().coeff(0, 0), p.q_inv().clone());
    }
}

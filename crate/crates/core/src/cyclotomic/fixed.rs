//! Fixed points of the involution `rho` on cyclotomic quotients of the type B
//! algebra and their comparison with cyclotomic quotients of the type D
//! algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::collections::VecDeque;

use super::iso::IsoMapData;
use super::multiplicity::MultiplicityMap;
use super::quotient::{CycloAlgebra, QuotientOptions};
use crate::engine::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, PivotOrder, SparseVec};
use crate::report::CheckSet;
use crate::scalars::{eval_series_on_nilpotent, series_comp_inverse, series_f, Params};
use crate::vqha::{rho_sign, v_algebra};
use crate::weyl::{fmt_tuple, orbit, Flavor, Tuple};
use crate::wqha::{phi, w_algebra};

/// `rho` on the quotient; diagonal on residual words.
pub fn rho_tilde(cyc: &CycloAlgebra, v: &SparseVec) -> SparseVec {
    let alg = cyc.algebra();
    v.iter()
        .map(|(k, c)| (*k, if rho_sign(alg, cyc.basis()[*k].w) { -c } else { c.clone() }))
        .collect()
}

/// Graded dimensions of the `+1` and `-1` eigenspaces of `rho`.
pub fn eigen_dims(cyc: &CycloAlgebra) -> (BTreeMap<i32, usize>, BTreeMap<i32, usize>) {
    let (mut plus, mut minus) = (BTreeMap::new(), BTreeMap::new());
    for (k, t) in cyc.basis().iter().enumerate() {
        let side = if rho_sign(cyc.algebra(), t.w) { &mut minus } else { &mut plus };
        *side.entry(cyc.basis_degree(k)).or_insert(0) += 1;
    }
    (plus, minus)
}

fn plus_words(cyc: &CycloAlgebra) -> Vec<usize> {
    (0..cyc.dim()).filter(|&k| !rho_sign(cyc.algebra(), cyc.basis()[k].w)).collect()
}

fn unit(cyc: &CycloAlgebra, k: usize) -> SparseVec {
    SparseVec::from([(k, cyc.algebra().field().one())])
}

fn add_dims(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = a.clone();
    for (d, n) in b {
        *out.entry(*d).or_insert(0) += n;
    }
    out.retain(|_, n| *n > 0);
    out
}

/// Compares the fixed points of `rho` on the type B quotient `v` with the
/// type D quotient `w` on the same tuples and multiplicities, and checks that
/// `phi` induces an isomorphism between them.
pub fn fixed_point_checks(v: &CycloAlgebra, w: &CycloAlgebra) -> Result<CheckSet> {
    if v.algebra().flavor() != Flavor::B || w.algebra().flavor() != Flavor::D {
        return Err(Error::Precondition("expected a type B and a type D quotient".into()));
    }
    let mut set = CheckSet::new();
    let (plus, minus) = eigen_dims(v);
    let split: usize = plus.values().chain(minus.values()).sum();
    set.check("eigenspaces of rho fill the quotient", "dim(+1) + dim(-1) = dim V_m", split == v.dim(), || {
        format!("{split} vs {}", v.dim())
    });

    // rho is multiplicative on the structure constants.
    let table = v.structure_constants();
    for (a, row) in table.iter().enumerate() {
        for (b, ab) in row.iter().enumerate() {
            let lhs = rho_tilde(v, ab);
            let rhs = v.mul(&rho_tilde(v, &unit(v, a)), &rho_tilde(v, &unit(v, b)));
            set.check("rho is an algebra map on the quotient", "rho(ab) = rho(a) rho(b)", lhs == rhs, || {
                format!("basis pair ({a}, {b})")
            });
        }
    }
    let native = w.graded_dims();
    set.check("fixed points match the type D quotient", "dims of (V_m)^rho = dims of W_m", plus == native, || {
        format!("fixed points {plus:?} vs type D {native:?}")
    });

    // phi on residual words of W_m, reduced into V_m.
    let images: Vec<SparseVec> = (0..w.dim())
        .map(|k| {
            let t = w.basis()[k];
            v.reduce(&phi(&w.algebra().basis_word(t.m, t.w, t.i), v.algebra())?)
        })
        .collect::<Result<_>>()?;
    let mut span = Echelon::new(PivotOrder::Lowest);
    for img in &images {
        span.insert(img);
    }
    set.check("phi is injective on the quotient", "rank phi(W_m) = dim W_m", span.rank() == w.dim(), || {
        format!("rank {} vs {}", span.rank(), w.dim())
    });
    set.check("phi is onto the fixed points", "rank phi(W_m) = dim (V_m)^rho", span.rank() == plus.values().sum::<usize>(), || {
        format!("rank {} vs {}", span.rank(), plus.values().sum::<usize>())
    });
    for (k, img) in images.iter().enumerate() {
        set.check("image of phi is rho-fixed", "rho(phi(x)) = phi(x)", rho_tilde(v, img) == *img, || {
            w.algebra().fmt_term(&w.basis()[k])
        });
    }
    let wt = w.structure_constants();
    for a in 0..w.dim() {
        for b in 0..w.dim() {
            let mut lhs = SparseVec::new();
            for (c, x) in &wt[a][b] {
                axpy(&mut lhs, x, &images[*c]);
            }
            let rhs = v.mul(&images[a], &images[b]);
            set.check("phi is multiplicative on the quotient", "phi(ab) = phi(a) phi(b) on basis pairs", lhs == rhs, || {
                format!("{} * {}", w.algebra().fmt_term(&w.basis()[a]), w.algebra().fmt_term(&w.basis()[b]))
            });
        }
    }
    let unit_img = {
        let mut acc = SparseVec::new();
        for (k, c) in w.one() {
            axpy(&mut acc, &c, &images[k]);
        }
        acc
    };
    set.check("phi is unital on the quotient", "phi(1) = 1", unit_img == v.one(), String::new);
    Ok(set)
}

/// The type D orbits making up the tuple set of `alg`.
pub fn d_orbits(alg: &Algebra) -> Vec<Vec<Tuple>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in alg.tuples() {
        if seen.contains(t) {
            continue;
        }
        let o = orbit(t, Flavor::D);
        seen.extend(o.members.iter().cloned());
        out.push(o.members);
    }
    out
}

/// For each type D orbit `delta`, the graded dimensions of `e_delta` times
/// the fixed points of `v` against the native type D quotient on `delta`.
pub fn block_checks(v: &CycloAlgebra) -> Result<CheckSet> {
    let alg = v.algebra();
    let mut set = CheckSet::new();
    let plus = plus_words(v);
    for delta in d_orbits(alg) {
        let mut e_delta = SparseVec::new();
        for t in &delta {
            let i = alg.tuple_index(t).ok_or_else(|| Error::TupleNotInSet(fmt_tuple(t)))?;
            e_delta = v.add(&e_delta, &v.e(i));
        }
        let mut by_degree: BTreeMap<i32, Echelon> = BTreeMap::new();
        for &k in &plus {
            let x = v.mul(&e_delta, &unit(v, k));
            by_degree.entry(v.basis_degree(k)).or_insert_with(|| Echelon::new(PivotOrder::Lowest)).insert(&x);
        }
        let mut dims: BTreeMap<i32, usize> = by_degree.iter().map(|(d, e)| (*d, e.rank())).collect();
        dims.retain(|_, n| *n > 0);
        let w_alg = w_algebra(alg.params().clone(), delta.clone())?;
        let native = CycloAlgebra::new(&w_alg, v.multiplicities(), v.options())?.graded_dims();
        set.check("orbit blocks match type D quotients", "dims of e_delta (V_m)^rho = dims of W^delta_m", dims == native, || {
            format!("orbit of {}: {dims:?} vs {native:?}", fmt_tuple(&delta[0]))
        });
    }
    Ok(set)
}

/// A two-sided ideal of a quotient, spanned by the listed vectors.
pub struct IdealSpan {
    echelon: Echelon,
    vectors: Vec<SparseVec>,
}

impl IdealSpan {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v)
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn same_as(&self, o: &IdealSpan) -> bool {
        self.dim() == o.dim() && o.vectors.iter().all(|v| self.contains(v))
    }

    /// Dimensions by degree; meaningful when every spanning vector is
    /// homogeneous.
    pub fn graded_dims(&self, cyc: &CycloAlgebra) -> Option<BTreeMap<i32, usize>> {
        let mut out = BTreeMap::new();
        for v in &self.vectors {
            *out.entry(cyc.degree_of(v)?).or_insert(0) += 1;
        }
        Some(out)
    }
}

/// Homogeneous generators: `e(i)`, `y_k`, and `psi_a e(i)`.
fn homogeneous_generators(cyc: &CycloAlgebra) -> Result<Vec<SparseVec>> {
    let alg = cyc.algebra();
    let mut out: Vec<SparseVec> = (0..alg.tuples().len() as u32).map(|i| cyc.e(i)).collect();
    for k in 1..=alg.rank() {
        out.push(cyc.y(k)?);
    }
    for a in 0..alg.rank() {
        let psi = cyc.psi(a)?;
        for i in 0..alg.tuples().len() as u32 {
            out.push(cyc.mul(&psi, &cyc.e(i)));
        }
    }
    out.retain(|v| !v.is_empty());
    Ok(out)
}

/// The two-sided ideal generated by `seeds`.
pub fn two_sided_ideal(cyc: &CycloAlgebra, seeds: &[SparseVec]) -> Result<IdealSpan> {
    let gens = homogeneous_generators(cyc)?;
    let mut span = IdealSpan { echelon: Echelon::new(PivotOrder::Lowest), vectors: Vec::new() };
    let mut queue: VecDeque<SparseVec> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if !span.echelon.insert(&v) {
            continue;
        }
        for s in &gens {
            queue.push_back(cyc.mul(s, &v));
            queue.push_back(cyc.mul(&v, s));
        }
        span.vectors.push(v);
    }
    Ok(span)
}

/// Passing from the max-symmetrization back to `m` on the type D algebra
/// `w_alg`: the ideal generated by `y_1^{m(i_1)} e(i)` coincides with the
/// ideal generated by the image of `prod_j (X_1 - j)^{m(j)}`, and its
/// quotient is the type D quotient for `m`.
pub fn reduction_checks(w_alg: &Algebra, m: &MultiplicityMap, opts: QuotientOptions) -> Result<CheckSet> {
    let m_max = m.symmetrize_max();
    let big = CycloAlgebra::new(w_alg, &m_max, opts)?;
    let small = CycloAlgebra::new(w_alg, m, opts)?;
    let mut set = CheckSet::new();

    let y1 = big.y(1)?;
    let quiver_gens: Vec<SparseVec> = (0..w_alg.tuples().len() as u32)
        .map(|i| big.mul(&big.pow(&y1, m.get(&w_alg.tuple(i)[0])), &big.e(i)))
        .collect();
    let i_w = two_sided_ideal(&big, &quiver_gens)?;

    // X_1 = sum_i i_1 (1 - g(y_1)) e(i).
    let field = w_alg.field();
    let n1 = big.nilpotency_index(1)? as usize;
    let g = series_comp_inverse(&series_f(field, n1.max(1))?)?;
    let gy = eval_series_on_nilpotent(&big, &g, &y1, n1)?;
    let mut d = SparseVec::new();
    for i in 0..w_alg.tuples().len() as u32 {
        d = big.add(&d, &big.scale(&w_alg.tuple(i)[0], &big.e(i)));
    }
    let x1 = big.mul(&d, &big.sub(&big.one(), &gy));
    let mut poly = big.one();
    for (j, k) in m.entries() {
        let factor = big.sub(&x1, &big.scale(j, &big.one()));
        poly = big.mul(&poly, &big.pow(&factor, *k));
    }
    let i_theta = two_sided_ideal(&big, &[poly])?;

    set.check("cyclotomic ideals coincide", "ideal of prod_j (X_1 - j)^m(j) = ideal of y_1^m(i_1) e(i)", i_w.same_as(&i_theta), || {
        format!("dims {} vs {}", i_w.dim(), i_theta.dim())
    });
    let graded = i_w.graded_dims(&big).unwrap_or_default();
    let expect = {
        let mut e = big.graded_dims();
        for (deg, k) in small.graded_dims() {
            let slot = e.entry(deg).or_insert(0);
            *slot = slot.saturating_sub(k);
        }
        e.retain(|_, k| *k > 0);
        e
    };
    set.check("ideal dimensions by degree", "dim I_d = dim W_{max m, d} - dim W_{m, d}", graded == expect, || {
        format!("ideal {graded:?} vs difference {expect:?}")
    });
    let total: usize = small.dim() + i_w.dim();
    set.check("quotient by the ideal is the type D quotient", "W_{max m} / I = W_m", total == big.dim(), || {
        format!("{} + {} vs {}", small.dim(), i_w.dim(), big.dim())
    });
    Ok(set)
}

/// Graded dimensions agree after replacing `m` by its min-symmetrization.
pub fn min_symmetrization_checks(alg: &Algebra, m: &MultiplicityMap, opts: QuotientOptions) -> Result<CheckSet> {
    let a = CycloAlgebra::new(alg, m, opts)?.graded_dims();
    let b = CycloAlgebra::new(alg, &m.symmetrize_min(), opts)?.graded_dims();
    let mut set = CheckSet::new();
    set.check("min-symmetrization keeps dimensions", "dims V_m = dims V_{min(m(i), m(i^-1))}", a == b, || {
        format!("{a:?} vs {b:?} for m = {m}")
    });
    Ok(set)
}

/// The quotient on a union of orbits is the direct sum of the quotients on
/// each orbit.
pub fn additivity_checks(params: &Params, seeds: &[Tuple], flavor: Flavor, m: &MultiplicityMap, opts: QuotientOptions) -> Result<CheckSet> {
    let build = |tuples: Vec<Tuple>| -> Result<BTreeMap<i32, usize>> {
        let alg = match flavor {
            Flavor::B => v_algebra(params.clone(), tuples)?,
            Flavor::D => w_algebra(params.clone(), tuples)?,
        };
        Ok(CycloAlgebra::new(&alg, m, opts)?.graded_dims())
    };
    let mut orbits: BTreeSet<Vec<Tuple>> = BTreeSet::new();
    for s in seeds {
        orbits.insert(orbit(s, flavor).members);
    }
    let mut summed = BTreeMap::new();
    for o in &orbits {
        summed = add_dims(&summed, &build(o.clone())?);
    }
    let union = build(orbits.iter().flatten().cloned().collect())?;
    let mut set = CheckSet::new();
    set.check("quotient is additive over orbits", "dims V^n_m = sum over orbits of dims V^beta_m", union == summed, || {
        format!("{union:?} vs {summed:?}")
    });
    Ok(set)
}

/// The type D Hecke generators `T_0 = g_0 g_1 g_0`, `T_k = g_k` are fixed by
/// `rho` and satisfy the type D relations.
pub fn hecke_d_checks(data: &IsoMapData) -> CheckSet {
    let cyc = data.quotient();
    let n = cyc.algebra().rank();
    let mut set = CheckSet::new();
    if n < 2 {
        return set;
    }
    let g = &data.g;
    let mut t = vec![cyc.product(&[&g[0], &g[1], &g[0]])];
    t.extend(g[1..].iter().cloned());
    let params = cyc.algebra().params();
    let qq = params.q() - params.q_inv();
    let one = cyc.one();
    let mut eq = |name: &str, anchor: &str, lhs: SparseVec, rhs: SparseVec, ctx: String| {
        set.check(name, anchor, lhs == rhs, || ctx);
    };
    for (k, tk) in t.iter().enumerate() {
        eq("type D generators are rho-fixed", "rho(T_k) = T_k", rho_tilde(cyc, tk), tk.clone(), format!("k={k}"));
        let sq = cyc.mul(tk, tk);
        eq("type D quadratic relation", "T_k^2 = (q - q^-1) T_k + 1", sq, cyc.add(&cyc.scale(&qq, tk), &one), format!("k={k}"));
    }
    let braid = |a: usize, b: usize| (cyc.product(&[&t[a], &t[b], &t[a]]), cyc.product(&[&t[b], &t[a], &t[b]]));
    let commute = |a: usize, b: usize| (cyc.mul(&t[a], &t[b]), cyc.mul(&t[b], &t[a]));
    if n >= 3 {
        let (l, r) = braid(0, 2);
        eq("type D braid relation at T_0", "T_0 T_2 T_0 = T_2 T_0 T_2", l, r, String::new());
    }
    for j in (1..n).filter(|&j| j != 2) {
        let (l, r) = commute(0, j);
        eq("T_0 commutes with T_j for j != 2", "T_0 T_j = T_j T_0", l, r, format!("j={j}"));
    }
    for k in 1..n.saturating_sub(1) {
        let (l, r) = braid(k, k + 1);
        eq("type A braid relation", "T_k T_{k+1} T_k = T_{k+1} T_k T_{k+1}", l, r, format!("k={k}"));
    }
    for a in 1..n {
        for b in a + 2..n {
            let (l, r) = commute(a, b);
            eq("distant generators commute", "T_a T_b = T_b T_a for |a - b| > 1", l, r, format!("a={a}, b={b}"));
        }
    }
    set
}

/// Quotients on `beta` for both flavors.
fn quotients(params: &Params, beta: &[Tuple], m: &MultiplicityMap, opts: QuotientOptions) -> Result<(CycloAlgebra, CycloAlgebra)> {
    let v = CycloAlgebra::new(&v_algebra(params.clone(), beta.to_vec())?, m, opts)?;
    let w = CycloAlgebra::new(&w_algebra(params.clone(), beta.to_vec())?, m, opts)?;
    Ok((v, w))
}

fn symmetric_hypothesis(set: &mut CheckSet, m: &MultiplicityMap) {
    set.check("multiplicities are symmetric", "m(i^-1) = m(i)", m.is_symmetric(), || format!("m = {m}"));
}

/// Fixed points against the type D quotient and the per-orbit blocks for a
/// symmetric multiplicity map.
pub fn fixed_point_suite(params: &Params, beta: &[Tuple], m: &MultiplicityMap, opts: QuotientOptions) -> Result<CheckSet> {
    let mut set = CheckSet::new();
    symmetric_hypothesis(&mut set, m);
    if !m.is_symmetric() {
        return Ok(set);
    }
    let (v, w) = quotients(params, beta, m, opts)?;
    set.extend(fixed_point_checks(&v, &w)?);
    set.extend(block_checks(&v)?);
    Ok(set)
}

/// The type D chain: fixed points and blocks for the max-symmetrization of
/// `m`, the type D Hecke relations on the transported generators, and the
/// reduction to `m` when `m` is not symmetric.
pub fn iso_d_suite(params: &Params, beta: &[Tuple], m: &MultiplicityMap, opts: QuotientOptions, truncation: Option<usize>) -> Result<CheckSet> {
    let m_max = m.symmetrize_max();
    let (v, w) = quotients(params, beta, &m_max, opts)?;
    let mut set = CheckSet::new();
    symmetric_hypothesis(&mut set, &m_max);
    set.extend(fixed_point_checks(&v, &w)?);
    set.extend(block_checks(&v)?);
    let data = IsoMapData::with_options(&v, truncation, Default::default())?;
    set.extend(hecke_d_checks(&data));
    if !m.is_symmetric() {
        set.extend(reduction_checks(w.algebra(), m, opts)?);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Field, Scalar};
    use crate::vqha::beta_from_seeds;

    fn setup(ell: u64, q: &str, seed: &[i64], m: &[(i64, u32)]) -> (Params, Vec<Tuple>, MultiplicityMap) {
        let field = Field::new_prime(ell).unwrap();
        let params = Params::parse(field, "1", q).unwrap();
        let seed: Vec<Scalar> = seed.iter().map(|&a| field.from_i64(a)).collect();
        let beta = beta_from_seeds(&[seed], Flavor::B);
        let m = MultiplicityMap::new(m.iter().map(|&(a, k)| (field.from_i64(a), k))).unwrap();
        (params, beta, m)
    }

    fn assert_passes(set: &CheckSet) {
        if let Some(r) = set.failures().first() {
            panic!("{} failed: {:?}", r.name, r.witness);
        }
    }

    #[test]
    fn symmetric_case_c_fixed_points() {
        let (params, beta, m) = setup(17, "2", &[3, 12], &[(3, 1), (6, 1), (12, 1), (10, 1)]);
        assert!(m.is_symmetric());
        let set = fixed_point_suite(&params, &beta, &m, QuotientOptions::default()).unwrap();
        assert_passes(&set);
        assert!(set.records().iter().any(|r| r.name == "orbit blocks match type D quotients"));
    }

    #[test]
    fn asymmetric_map_reduces_through_ideals() {
        let (params, beta, m) = setup(13, "2", &[1, 4], &[(1, 1), (4, 1)]);
        assert!(!m.is_symmetric());
        let set = iso_d_suite(&params, &beta, &m, QuotientOptions::default(), None).unwrap();
        assert_passes(&set);
        assert!(set.records().iter().any(|r| r.name == "cyclotomic ideals coincide"));
    }

    #[test]
    fn asymmetric_map_fails_fixed_point_hypothesis() {
        let (params, beta, m) = setup(13, "2", &[1, 4], &[(1, 1), (4, 1)]);
        let set = fixed_point_suite(&params, &beta, &m, QuotientOptions::default()).unwrap();
        assert_eq!(set.failures().len(), 1);
    }

    #[test]
    fn min_symmetrization_and_additivity() {
        let (params, beta, m) = setup(13, "2", &[1, 4], &[(1, 1), (4, 1), (10, 2)]);
        let alg = v_algebra(params.clone(), beta).unwrap();
        assert_passes(&min_symmetrization_checks(&alg, &m, QuotientOptions::default()).unwrap());
        let f = params.field();
        let seeds = vec![vec![f.from_i64(1), f.from_i64(4)], vec![f.from_i64(1), f.from_i64(1)]];
        assert_passes(&additivity_checks(&params, &seeds, Flavor::B, &m, QuotientOptions::default()).unwrap());
    }

    #[test]
    fn eigensplit_on_double_arrow_quotient() {
        let (params, beta, m) = setup(13, "5", &[1, 12], &[(1, 2), (12, 2)]);
        let (v, _) = quotients(&params, &beta, &m, QuotientOptions::default()).unwrap();
        let (p, n) = eigen_dims(&v);
        assert_eq!(p.values().sum::<usize>() + n.values().sum::<usize>(), v.dim());
    }
}

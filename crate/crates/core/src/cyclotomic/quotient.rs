//! Cyclotomic quotients `A / <y_1^{m(i_1)} e(i)>` as finite-dimensional
//! graded algebras, computed degree by degree.
//!
//! The right ideal generated by the relations is spanned by the basis words
//! `y^M psi_w e(j)` with `M_1 >= m(i_1)`, where `i` is the left idempotent
//! `w . j`. Since `psi_u y^P e(k)` spans the algebra, the two-sided ideal is
//! spanned by the products `psi_u r` with `r` such a word.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;

use super::multiplicity::MultiplicityMap;
use crate::engine::{Algebra, Element, Term};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, PivotOrder, SparseVec};
use crate::poly::Mono;
use crate::scalars::{NilpotentRing, Scalar};

pub const DEFAULT_DEGREE_CAP: i32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Pivot choice for the ideal; residual words are the non-pivot columns.
    pub pivot: PivotOrder,
    /// Saturation aborts beyond this degree.
    pub degree_cap: i32,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions { pivot: PivotOrder::Highest, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

/// The ideal and the residual words in one degree.
#[derive(Clone, Debug)]
struct DegreePart {
    cols: Vec<Term>,
    col_index: HashMap<Term, usize>,
    ideal: Echelon,
    /// Global basis index of each non-pivot column.
    residual: HashMap<usize, usize>,
}

/// A cyclotomic quotient with a basis of residual words.
pub struct CycloAlgebra {
    alg: Algebra,
    m: MultiplicityMap,
    opts: QuotientOptions,
    nil: Vec<u32>,
    d_min: i32,
    d_star: i32,
    parts: BTreeMap<i32, DegreePart>,
    basis: Vec<Term>,
    degrees: Vec<i32>,
    table: OnceLock<Vec<Vec<SparseVec>>>,
}

impl std::fmt::Debug for CycloAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycloAlgebra({:?}, m = {}, dim = {})", self.alg, self.m, self.dim())
    }
}

/// All basis words of degree `d`, ordered by `(|m|, w, i, m)`.
fn columns(alg: &Algebra, d: i32) -> Vec<Term> {
    let mut out = Vec::new();
    let order = alg.group().order() as u32;
    let n_tuples = alg.tuples().len() as u32;
    for w in 0..order {
        for i in 0..n_tuples {
            let rest = d - alg.word_degree(w, i);
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            for m in Mono::of_degree(alg.rank(), (rest / 2) as u32) {
                out.push(Term { i, w, m });
            }
        }
    }
    out.sort_by_key(|t| (t.m.degree(), t.w, t.i, t.m));
    out
}

/// `y_k^e` as a monomial, `k` 0-based.
fn mono_power(n: usize, k: usize, e: u32) -> Mono {
    let mut exps = vec![0; n];
    exps[k] = e;
    Mono::from_exps(&exps)
}

/// `y_k^e = sum_i y_k^e e(i)`, `k` 0-based.
pub(crate) fn y_power(alg: &Algebra, k: usize, e: u32) -> Element {
    let m = mono_power(alg.rank(), k, e);
    let terms = (0..alg.tuples().len() as u32).map(|i| (Term { i, w: 0, m }, alg.field().one())).collect();
    alg.from_terms(terms)
}

/// Spanning products `psi_u r` of degree `d`.
fn ideal_generators(alg: &Algebra, m: &MultiplicityMap, d: i32) -> Vec<Element> {
    let order = alg.group().order() as u32;
    let n_tuples = alg.tuples().len() as u32;
    let mut seeds = Vec::new();
    for u in 0..order {
        for w in 0..order {
            for j in 0..n_tuples {
                let k = alg.act(w, j);
                let rest = d - alg.word_degree(u, k) - alg.word_degree(w, j);
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                let need = m.get(&alg.tuple(k)[0]);
                let ydeg = (rest / 2) as u32;
                if ydeg < need {
                    continue;
                }
                for extra in Mono::of_degree(alg.rank(), ydeg - need) {
                    let mono = extra.mul(&mono_power(alg.rank(), 0, need));
                    seeds.push((u, Term { i: j, w, m: mono }));
                }
            }
        }
    }
    seeds
        .par_iter()
        .map(|(u, t)| {
            let r = alg.basis_word(t.m, t.w, t.i);
            alg.left_word(alg.group().chosen_word(*u as usize), &r)
        })
        .filter(|x| !x.is_zero())
        .collect()
}

impl DegreePart {
    fn new(cols: Vec<Term>, pivot: PivotOrder) -> DegreePart {
        let col_index = cols.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        DegreePart { cols, col_index, ideal: Echelon::new(pivot), residual: HashMap::new() }
    }

    fn vector(&self, x: &Element) -> SparseVec {
        x.terms().iter().map(|(t, c)| (self.col_index[t], c.clone())).collect()
    }
}

impl CycloAlgebra {
    /// Saturates the ideal degree by degree up to the bound given by the
    /// nilpotency indices of the `y_k`.
    pub fn new(alg: &Algebra, m: &MultiplicityMap, opts: QuotientOptions) -> Result<CycloAlgebra> {
        let n = alg.rank();
        let order = alg.group().order() as u32;
        let n_tuples = alg.tuples().len() as u32;
        let word_degs: Vec<i32> =
            (0..order).flat_map(|w| (0..n_tuples).map(move |i| (w, i))).map(|(w, i)| alg.word_degree(w, i)).collect();
        let d_min = *word_degs.iter().min().expect("nonempty");
        let d_max_word = *word_degs.iter().max().expect("nonempty");

        let mut parts = BTreeMap::new();
        let mut nil: Vec<Option<u32>> = vec![None; n];
        let mut d = d_min;
        let d_star = loop {
            if d > opts.degree_cap {
                let open: Vec<String> =
                    (0..n).filter(|k| nil[*k].is_none()).map(|k| format!("y_{}", k + 1)).collect();
                return Err(Error::CapExceeded(format!(
                    "degree cap {} reached while saturating; nilpotency of {} not established",
                    opts.degree_cap,
                    open.join(", ")
                )));
            }
            let mut part = DegreePart::new(columns(alg, d), opts.pivot);
            for g in ideal_generators(alg, m, d) {
                let v = part.vector(&g);
                part.ideal.insert(&v);
            }
            if d >= 0 && d % 2 == 0 {
                let e = (d / 2) as u32;
                for (k, slot) in nil.iter_mut().enumerate() {
                    if slot.is_none() {
                        let yk = y_power(alg, k, e);
                        if part.ideal.contains(&part.vector(&yk)) {
                            *slot = Some(e);
                        }
                    }
                }
            }
            parts.insert(d, part);
            if nil.iter().all(Option::is_some) {
                let ns: Vec<u32> = nil.iter().map(|x| x.unwrap()).collect();
                if ns.contains(&0) {
                    break d;
                }
                let bound = 2 * ns.iter().map(|x| *x as i32 - 1).sum::<i32>() + d_max_word;
                if d >= bound {
                    break bound;
                }
            }
            d += 1;
        };
        let nil: Vec<u32> = nil.into_iter().map(|x| x.unwrap_or(0)).collect();

        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for (deg, part) in parts.iter_mut() {
            for (k, t) in part.cols.iter().enumerate() {
                if !part.ideal.is_pivot(k) {
                    part.residual.insert(k, basis.len());
                    basis.push(*t);
                    degrees.push(*deg);
                }
            }
        }
        Ok(CycloAlgebra {
            alg: alg.clone(),
            m: m.clone(),
            opts,
            nil,
            d_min,
            d_star,
            parts,
            basis,
            degrees,
            table: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn multiplicities(&self) -> &MultiplicityMap {
        &self.m
    }

    pub fn options(&self) -> QuotientOptions {
        self.opts
    }

    /// `N_k` for `k = 1..n`: the least `N` with `y_k^N = 0`.
    pub fn nilpotency_indices(&self) -> &[u32] {
        &self.nil
    }

    pub fn nilpotency_index(&self, k: usize) -> Result<u32> {
        if k == 0 || k > self.nil.len() {
            return Err(Error::Precondition(format!("y_{k} out of range")));
        }
        Ok(self.nil[k - 1])
    }

    /// Lowest degree of a basis word of the parent algebra.
    pub fn min_degree(&self) -> i32 {
        self.d_min
    }

    /// Every degree above this bound lies in the ideal.
    pub fn degree_bound(&self) -> i32 {
        self.d_star
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.basis.is_empty()
    }

    /// Residual basis words in order.
    pub fn basis(&self) -> &[Term] {
        &self.basis
    }

    pub fn basis_degree(&self, k: usize) -> i32 {
        self.degrees[k]
    }

    /// Dimension of each nonzero graded piece.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for d in &self.degrees {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    /// Dimension of the ideal in degree `d` (restricted to computed degrees).
    pub fn ideal_dims(&self) -> BTreeMap<i32, usize> {
        self.parts.iter().map(|(d, p)| (*d, p.ideal.rank())).collect()
    }

    /// Coordinates of the image of `x` in the quotient.
    pub fn reduce(&self, x: &Element) -> Result<SparseVec> {
        if x.algebra() != &self.alg {
            return Err(Error::ContextMismatch("element of a different algebra".into()));
        }
        let mut by_degree: BTreeMap<i32, SparseVec> = BTreeMap::new();
        for (t, c) in x.terms() {
            let d = self.alg.term_degree(t);
            let part = match self.parts.get(&d) {
                Some(p) => p,
                None if d > self.d_star => continue,
                None => unreachable!("degrees from the minimum up to the bound are computed"),
            };
            let v = by_degree.entry(d).or_default();
            v.insert(part.col_index[t], c.clone());
        }
        let mut out = SparseVec::new();
        for (d, v) in by_degree {
            let part = &self.parts[&d];
            for (k, c) in part.ideal.reduce(&v) {
                out.insert(part.residual[&k], c);
            }
        }
        Ok(out)
    }

    /// The combination of residual words with coordinates `v`.
    pub fn lift(&self, v: &SparseVec) -> Element {
        let mut terms = BTreeMap::new();
        for (k, c) in v {
            terms.insert(self.basis[*k], c.clone());
        }
        self.alg.from_terms(terms)
    }

    /// `x` lies in the ideal.
    pub fn in_ideal(&self, x: &Element) -> Result<bool> {
        Ok(self.reduce(x)?.is_empty())
    }

    pub fn zero(&self) -> SparseVec {
        SparseVec::new()
    }

    pub fn one(&self) -> SparseVec {
        self.reduce(&self.alg.one()).expect("same algebra")
    }

    pub fn e(&self, i: u32) -> SparseVec {
        self.reduce(&self.alg.e(i)).expect("same algebra")
    }

    pub fn y(&self, k: usize) -> Result<SparseVec> {
        self.reduce(&self.alg.y(k)?)
    }

    pub fn psi(&self, a: usize) -> Result<SparseVec> {
        self.reduce(&self.alg.psi(a)?)
    }

    pub fn add(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = a.clone();
        axpy(&mut out, &self.alg.field().one(), b);
        out
    }

    pub fn sub(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = a.clone();
        axpy(&mut out, &-self.alg.field().one(), b);
        out
    }

    pub fn scale(&self, c: &Scalar, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        axpy(&mut out, c, a);
        out
    }

    /// Product of two residual words, computed by the rewriting engine.
    pub fn mul_basis_via_engine(&self, a: usize, b: usize) -> SparseVec {
        let x = self.alg.basis_word(self.basis[a].m, self.basis[a].w, self.basis[a].i);
        let y = self.alg.basis_word(self.basis[b].m, self.basis[b].w, self.basis[b].i);
        self.reduce(&x.mul(&y).expect("same algebra")).expect("same algebra")
    }

    /// Structure constants `c_ab`, built in parallel on first use.
    pub fn structure_constants(&self) -> &[Vec<SparseVec>] {
        self.table.get_or_init(|| {
            let dim = self.dim();
            (0..dim)
                .into_par_iter()
                .map(|a| (0..dim).map(|b| self.mul_basis_via_engine(a, b)).collect())
                .collect()
        })
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let table = self.structure_constants();
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                axpy(&mut out, &(x * y), &table[*i][*j]);
            }
        }
        out
    }

    pub fn product(&self, factors: &[&SparseVec]) -> SparseVec {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, a: &SparseVec, e: u32) -> SparseVec {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Degree of a homogeneous element; `None` if inhomogeneous, zero has
    /// degree 0.
    pub fn degree_of(&self, a: &SparseVec) -> Option<i32> {
        let mut ds = a.keys().map(|k| self.degrees[*k]);
        let first = match ds.next() {
            Some(d) => d,
            None => return Some(0),
        };
        ds.all(|d| d == first).then_some(first)
    }

    /// First triple `(a, b, c)` of basis indices with `(ab)c != a(bc)`.
    /// Exhaustive up to `exhaustive_dim`, otherwise `samples` seeded triples.
    pub fn associativity_failure(&self, exhaustive_dim: usize, samples: usize, seed: u64) -> Option<(usize, usize, usize)> {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let dim = self.dim();
        if dim == 0 {
            return None;
        }
        let triples: Vec<(usize, usize, usize)> = if dim <= exhaustive_dim {
            (0..dim).flat_map(|a| (0..dim).flat_map(move |b| (0..dim).map(move |c| (a, b, c)))).collect()
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..samples).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))).collect()
        };
        let table = self.structure_constants();
        let unit = |k: usize| SparseVec::from([(k, self.alg.field().one())]);
        triples.into_par_iter().find_first(|&(a, b, c)| {
            let left = self.mul(&table[a][b], &unit(c));
            let right = self.mul(&unit(a), &table[b][c]);
            left != right
        })
    }

    /// First pair of basis indices whose product is not homogeneous of the
    /// summed degree.
    pub fn grading_failure(&self) -> Option<(usize, usize)> {
        let table = self.structure_constants();
        let dim = self.dim();
        (0..dim).flat_map(|a| (0..dim).map(move |b| (a, b))).find(|&(a, b)| {
            table[a][b].keys().any(|k| self.degrees[*k] != self.degrees[a] + self.degrees[b])
        })
    }
}

impl NilpotentRing for CycloAlgebra {
    type Elem = SparseVec;

    fn one(&self) -> SparseVec {
        CycloAlgebra::one(self)
    }

    fn zero(&self) -> SparseVec {
        SparseVec::new()
    }

    fn add(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        CycloAlgebra::add(self, a, b)
    }

    fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        CycloAlgebra::mul(self, a, b)
    }

    fn scale(&self, c: &Scalar, a: &SparseVec) -> SparseVec {
        CycloAlgebra::scale(self, c, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Field, Params};
    use crate::weyl::{orbit, Flavor};

    fn setup(ell: u64, q: &str, seed: &[i64], mm: &[(i64, u32)], flavor: Flavor) -> (Algebra, MultiplicityMap) {
        let params = Params::parse(Field::Prime(ell), "1", q).unwrap();
        let f = params.field();
        let seed: Vec<Scalar> = seed.iter().map(|&x| f.from_i64(x)).collect();
        let alg = Algebra::new(params, flavor, orbit(&seed, Flavor::B).members).unwrap();
        let m = MultiplicityMap::new(mm.iter().map(|&(x, k)| (f.from_i64(x), k))).unwrap();
        (alg, m)
    }

    /// The ideal in degree `d` spanned by all `x y_1^{m(i_1)} e(i) z` with
    /// basis words `x`, `z`.
    fn brute_force_ideal(alg: &Algebra, m: &MultiplicityMap, d: i32, d_min: i32) -> Echelon {
        let part = DegreePart::new(columns(alg, d), PivotOrder::Lowest);
        let mut ech = Echelon::new(PivotOrder::Lowest);
        for i in 0..alg.tuples().len() as u32 {
            let k = m.get(&alg.tuple(i)[0]);
            let v = alg.basis_word(mono_power(alg.rank(), 0, k), 0, i);
            let dv = 2 * k as i32;
            for a in d_min..=(d - dv - d_min) {
                for x in columns(alg, a) {
                    let xv = alg.basis_word(x.m, x.w, x.i).mul(&v).unwrap();
                    if xv.is_zero() {
                        continue;
                    }
                    for z in columns(alg, d - a - dv) {
                        let p = xv.mul(&alg.basis_word(z.m, z.w, z.i)).unwrap();
                        ech.insert(&part.vector(&p));
                    }
                }
            }
        }
        ech
    }

    #[test]
    fn ideal_matches_brute_force_span() {
        for (ell, q, seed, mm) in [
            (13, "2", vec![1, 4], vec![(1, 1), (4, 1), (10, 1)]),
            (13, "5", vec![1, 12], vec![(1, 2), (12, 1)]),
            (17, "2", vec![3, 3], vec![(3, 2), (6, 1)]),
        ] {
            for flavor in [Flavor::B, Flavor::D] {
                let (alg, m) = setup(ell, q, &seed, &mm, flavor);
                let c = CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap();
                let dims = c.ideal_dims();
                for d in c.min_degree()..=c.degree_bound() + 2 {
                    let brute = brute_force_ideal(&alg, &m, d, c.min_degree());
                    match dims.get(&d) {
                        Some(r) => assert_eq!(*r, brute.rank(), "degree {d} for {seed:?} {m}"),
                        None => assert_eq!(brute.rank(), columns(&alg, d).len(), "degree {d} beyond the bound"),
                    }
                }
            }
        }
    }

    #[test]
    fn zero_multiplicity_gives_zero_algebra() {
        let (alg, _) = setup(13, "2", &[1, 4], &[], Flavor::B);
        let c = CycloAlgebra::new(&alg, &MultiplicityMap::default(), QuotientOptions::default()).unwrap();
        assert!(c.is_zero_algebra());
        assert_eq!(c.nilpotency_indices(), &[0, 0]);
        assert!(c.one().is_empty());
    }

    #[test]
    fn nilpotency_indices_match_powers() {
        for (ell, q, seed, mm) in [
            (13, "2", vec![1, 4], vec![(1, 1), (4, 1), (10, 1)]),
            (13, "5", vec![1, 12], vec![(1, 2), (12, 1)]),
            (13, "2", vec![1, 4], vec![(1, 1)]),
        ] {
            let (alg, m) = setup(ell, q, &seed, &mm, Flavor::B);
            let c = CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap();
            for k in 1..=2 {
                let n = c.nilpotency_index(k).unwrap();
                let y = c.y(k).unwrap();
                assert!(n >= 1);
                assert!(c.pow(&y, n).is_empty());
                assert!(!c.pow(&y, n - 1).is_empty());
            }
        }
    }

    #[test]
    fn first_residues_covered_kill_y1() {
        let (alg, m) = setup(13, "2", &[1, 4], &[(1, 1), (4, 1), (10, 1)], Flavor::B);
        let c = CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap();
        assert_eq!(c.nilpotency_index(1).unwrap(), 1);
        assert!(c.y(1).unwrap().is_empty());
    }

    #[test]
    fn structure_is_associative_graded_and_unital() {
        let (alg, m) = setup(13, "5", &[1, 12], &[(1, 2), (12, 1)], Flavor::B);
        let c = CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap();
        assert!(c.dim() > 0);
        assert_eq!(c.associativity_failure(60, 1000, 7), None);
        assert_eq!(c.grading_failure(), None);
        let one = c.one();
        let mut sum = SparseVec::new();
        for i in 0..alg.tuples().len() as u32 {
            let e = c.e(i);
            assert_eq!(c.mul(&e, &e), e);
            for j in 0..i {
                assert!(c.mul(&e, &c.e(j)).is_empty());
            }
            sum = c.add(&sum, &e);
        }
        assert_eq!(sum, one);
        for k in 0..c.dim() {
            let b = SparseVec::from([(k, alg.field().one())]);
            assert_eq!(c.mul(&one, &b), b);
            assert_eq!(c.mul(&b, &one), b);
        }
    }

    #[test]
    fn pivot_strategy_does_not_change_dimensions() {
        for (ell, q, seed, mm) in [
            (13, "2", vec![1, 4], vec![(1, 1), (4, 1), (10, 1)]),
            (17, "2", vec![3, 12], vec![(3, 1), (6, 1), (12, 1), (10, 1)]),
        ] {
            let (alg, m) = setup(ell, q, &seed, &mm, Flavor::B);
            let hi = CycloAlgebra::new(&alg, &m, QuotientOptions::default()).unwrap();
            let lo = CycloAlgebra::new(&alg, &m, QuotientOptions { pivot: PivotOrder::Lowest, ..Default::default() })
                .unwrap();
            assert_eq!(hi.graded_dims(), lo.graded_dims());
        }
    }

    #[test]
    fn degree_cap_aborts() {
        let (alg, m) = setup(13, "5", &[1, 12], &[(1, 2), (12, 1)], Flavor::B);
        let err = CycloAlgebra::new(&alg, &m, QuotientOptions { degree_cap: 3, ..Default::default() }).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }
}

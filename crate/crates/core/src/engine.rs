//! Normal-form rewriting shared by the type B algebra `V` and the type D
//! algebra `W`.
//!
//! Elements are combinations of basis words `y^m psi_w e(i)`, where `psi_w` is
//! the product of generators along the chosen reduced word of `w` and `i` is
//! the right idempotent. Multiplication on the left by a single `psi_a` is
//! memoized on basis words and everything else is built from it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::poly::{act_mono, Mono, Poly};
use crate::quiver::{arrow_relation, ArrowRelation};
use crate::scalars::{Field, Params, Scalar};
use crate::weyl::{act_generator, fmt_tuple, BraidMove, Flavor, SignedPerm, Tuple, WeylGroup};

/// A basis word `y^m psi_w e(i)`; `w` and `i` index the context's group
/// elements and tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub i: u32,
    pub w: u32,
    pub m: Mono,
}

pub type Terms = BTreeMap<Term, Scalar>;

fn add_into(out: &mut Terms, t: Term, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&t) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                out.remove(&t);
            }
        }
        None => {
            out.insert(t, c);
        }
    }
}

fn add_scaled(out: &mut Terms, src: &Terms, c: &Scalar) {
    for (t, x) in src {
        add_into(out, *t, x * c);
    }
}

/// Multiplies every word of `src` on the left by `poly` and adds the result.
fn add_poly_times(out: &mut Terms, poly: &Poly, src: &Terms) {
    for (pm, pc) in poly.terms() {
        for (t, c) in src {
            add_into(out, Term { m: t.m.mul(pm), ..*t }, pc * c);
        }
    }
}

struct Inner {
    params: Params,
    flavor: Flavor,
    n: usize,
    group: WeylGroup,
    tuples: Vec<Tuple>,
    tuple_index: HashMap<Tuple, u32>,
    gen_perm: Vec<SignedPerm>,
    gen_act: Vec<Vec<u32>>,
    act: Vec<Vec<u32>>,
    word_deg: Vec<Vec<i32>>,
    memo: RwLock<HashMap<(u8, u32, u32), Arc<Terms>>>,
}

/// A quiver Hecke algebra of type B (`V`) or D (`W`) on a finite set of
/// residue tuples closed under the corresponding Weyl group.
#[derive(Clone)]
pub struct Algebra(Arc<Inner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}{}, {} tuples)", self.0.flavor, self.0.n, self.0.tuples.len())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
    }
}

impl Algebra {
    pub fn new(params: Params, flavor: Flavor, tuples: Vec<Tuple>) -> Result<Algebra> {
        let mut tuples = tuples;
        tuples.sort();
        tuples.dedup();
        let n = match tuples.first() {
            Some(t) => t.len(),
            None => return Err(Error::Precondition("the tuple set is empty".into())),
        };
        for t in &tuples {
            if t.len() != n {
                return Err(Error::Precondition("tuples of different lengths".into()));
            }
            for x in t {
                if x.is_zero() || !params.field().contains(x) {
                    return Err(Error::Precondition(format!("bad residue in {}", fmt_tuple(t))));
                }
            }
        }
        let group = WeylGroup::new(flavor, n)?;
        let tuple_index: HashMap<Tuple, u32> =
            tuples.iter().cloned().enumerate().map(|(k, t)| (t, k as u32)).collect();
        let mut gen_act = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(tuples.len());
            for t in &tuples {
                let u = act_generator(flavor, a, t);
                let k = tuple_index.get(&u).ok_or_else(|| {
                    Error::Precondition(format!(
                        "tuple set is not closed under the {flavor} action: {} is missing",
                        fmt_tuple(&u)
                    ))
                })?;
                row.push(*k);
            }
            gen_act.push(row);
        }
        let gen_perm: Vec<SignedPerm> = (0..n).map(|a| SignedPerm::generator(flavor, n, a)).collect();
        let mut inner = Inner {
            params,
            flavor,
            n,
            group,
            tuples,
            tuple_index,
            gen_perm,
            gen_act,
            act: Vec::new(),
            word_deg: Vec::new(),
            memo: RwLock::new(HashMap::new()),
        };
        let (act, word_deg) = inner.word_tables();
        inner.act = act;
        inner.word_deg = word_deg;
        Ok(Algebra(Arc::new(inner)))
    }

    pub fn params(&self) -> &Params {
        &self.0.params
    }

    pub fn field(&self) -> Field {
        self.0.params.field()
    }

    pub fn flavor(&self) -> Flavor {
        self.0.flavor
    }

    pub fn rank(&self) -> usize {
        self.0.n
    }

    pub fn group(&self) -> &WeylGroup {
        &self.0.group
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.0.tuples
    }

    pub fn tuple_index(&self, t: &[Scalar]) -> Option<u32> {
        self.0.tuple_index.get(t).copied()
    }

    pub fn tuple(&self, i: u32) -> &Tuple {
        &self.0.tuples[i as usize]
    }

    /// Index of `w . i`.
    pub fn act(&self, w: u32, i: u32) -> u32 {
        self.0.act[w as usize][i as usize]
    }

    /// Index of `s_a . i`.
    pub fn act_gen(&self, a: usize, i: u32) -> u32 {
        self.0.gen_act[a][i as usize]
    }

    /// Degree of the basis word `psi_w e(i)`.
    pub fn word_degree(&self, w: u32, i: u32) -> i32 {
        self.0.word_deg[w as usize][i as usize]
    }

    /// Degree of `psi_a e(i)`.
    pub fn gen_degree(&self, a: usize, i: u32) -> i32 {
        self.0.gen_degree(a, i)
    }

    pub fn term_degree(&self, t: &Term) -> i32 {
        2 * t.m.degree() as i32 + self.word_degree(t.w, t.i)
    }

    /// Relation between the two residues that govern `psi_a e(i)`.
    pub fn pair_relation(&self, a: usize, i: u32) -> ArrowRelation {
        let (x, y) = self.0.pair(a, &self.0.tuples[i as usize]);
        arrow_relation(&self.0.params, &x, &y)
    }

    pub fn zero(&self) -> Element {
        Element { alg: self.clone(), terms: Terms::new() }
    }

    pub fn from_terms(&self, terms: Terms) -> Element {
        Element { alg: self.clone(), terms }
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        let mut terms = Terms::new();
        for i in 0..self.0.tuples.len() as u32 {
            add_into(&mut terms, Term { i, w: 0, m: Mono::ONE }, c.clone());
        }
        self.from_terms(terms)
    }

    pub fn one(&self) -> Element {
        self.scalar(self.field().one())
    }

    pub fn basis_word(&self, m: Mono, w: u32, i: u32) -> Element {
        let mut terms = Terms::new();
        terms.insert(Term { i, w, m }, self.field().one());
        self.from_terms(terms)
    }

    pub fn idempotent(&self, t: &[Scalar]) -> Result<Element> {
        let i = self.tuple_index(t).ok_or_else(|| Error::TupleNotInSet(fmt_tuple(t)))?;
        Ok(self.e(i))
    }

    pub fn e(&self, i: u32) -> Element {
        self.basis_word(Mono::ONE, 0, i)
    }

    /// `y_k` for 1-based `k`.
    pub fn y(&self, k: usize) -> Result<Element> {
        if k == 0 || k > self.0.n {
            return Err(Error::Precondition(format!("y_{k} out of range")));
        }
        let m = Mono::var(k - 1);
        let mut terms = Terms::new();
        for i in 0..self.0.tuples.len() as u32 {
            terms.insert(Term { i, w: 0, m }, self.field().one());
        }
        Ok(self.from_terms(terms))
    }

    /// The polynomial `f(y_1..y_n)` as an element.
    pub fn poly(&self, f: &Poly) -> Element {
        let mut terms = Terms::new();
        add_poly_times(&mut terms, f, &self.one().terms);
        self.from_terms(terms)
    }

    /// `psi_a = sum_i psi_a e(i)`.
    pub fn psi(&self, a: usize) -> Result<Element> {
        if a >= self.0.n {
            return Err(Error::Precondition(format!("psi_{a} out of range")));
        }
        Ok(self.from_terms(self.0.apply_letters(&[a as u8], &self.one().terms)))
    }

    /// `psi_{a_1} .. psi_{a_k} e(i)` for an arbitrary word.
    pub fn word(&self, letters: &[u8], i: u32) -> Element {
        self.from_terms(self.0.apply_letters(letters, &self.e(i).terms))
    }

    /// Left multiplication by the generator word `letters` (applied right to
    /// left).
    pub fn left_word(&self, letters: &[u8], x: &Element) -> Element {
        self.from_terms(self.0.apply_letters(letters, &x.terms))
    }

    /// Number of cached `psi_a psi_w e(i)` products.
    pub fn memo_size(&self) -> usize {
        self.0.memo.read().len()
    }

    /// All basis words with `|m| <= max_ydeg`.
    pub fn basis_words(&self, max_ydeg: u32) -> Vec<Term> {
        let monos = Mono::up_to_degree(self.0.n, max_ydeg);
        let mut out = Vec::new();
        for i in 0..self.0.tuples.len() as u32 {
            for w in 0..self.0.group.order() as u32 {
                for m in &monos {
                    out.push(Term { i, w, m: *m });
                }
            }
        }
        out
    }

    pub fn fmt_term(&self, t: &Term) -> String {
        let word: Vec<String> =
            self.0.group.chosen_word(t.w as usize).iter().map(|a| a.to_string()).collect();
        format!(
            "{}*psi[{}]*e{}",
            t.m.fmt_with(self.0.n, "y"),
            word.join(""),
            fmt_tuple(&self.0.tuples[t.i as usize])
        )
    }
}

impl Inner {
    /// The two residues whose relation governs `psi_a e(t)`.
    fn pair(&self, a: usize, t: &[Scalar]) -> (Scalar, Scalar) {
        match (self.flavor, a) {
            (Flavor::D, 0) => (t[0].inv().expect("nonzero"), t[1].clone()),
            _ => (t[a - 1].clone(), t[a].clone()),
        }
    }

    fn gen_degree(&self, a: usize, i: u32) -> i32 {
        if self.flavor == Flavor::B && a == 0 {
            return 0;
        }
        let (x, y) = self.pair(a, &self.tuples[i as usize]);
        let r = arrow_relation(&self.params, &x, &y);
        if r == ArrowRelation::Equal {
            -2
        } else {
            (r.arrows_out() + r.arrows_in()) as i32
        }
    }

    fn word_tables(&self) -> (Vec<Vec<u32>>, Vec<Vec<i32>>) {
        let nw = self.group.order();
        let nt = self.tuples.len();
        let mut act = vec![vec![0u32; nt]; nw];
        let mut deg = vec![vec![0i32; nt]; nw];
        for w in 0..nw {
            let word = self.group.chosen_word(w);
            for i in 0..nt as u32 {
                let mut cur = i;
                let mut d = 0;
                for &a in word.iter().rev() {
                    d += self.gen_degree(a as usize, cur);
                    cur = self.gen_act[a as usize][cur as usize];
                }
                act[w][i as usize] = cur;
                deg[w][i as usize] = d;
            }
        }
        (act, deg)
    }

    fn one_poly(&self) -> Poly {
        Poly::one(self.params.field())
    }

    /// `psi_a^2 e(k)` as a polynomial.
    fn quad(&self, a: usize, k: u32) -> Poly {
        let fld = self.params.field();
        if self.flavor == Flavor::B && a == 0 {
            return self.one_poly();
        }
        let (x, y) = self.pair(a, &self.tuples[k as usize]);
        // d = y_{a+1} - y_a for a >= 1, and y_1 + y_2 for the type D generator 0.
        let d = if a == 0 {
            Poly::var(fld, 0).add(&Poly::var(fld, 1))
        } else {
            Poly::var(fld, a).sub(&Poly::var(fld, a - 1))
        };
        match arrow_relation(&self.params, &x, &y) {
            ArrowRelation::Equal => Poly::zero(fld),
            ArrowRelation::None => self.one_poly(),
            ArrowRelation::Right => d,
            ArrowRelation::Left => d.neg(),
            ArrowRelation::Both => d.mul(&d).neg(),
        }
    }

    /// Correction `c` in `psi_L e(j) = psi_L' e(j) + c e(j)` for a braid move
    /// turning `L` into `L'`, with `j` the idempotent to the right of `L`.
    fn move_correction(&self, mv: &BraidMove, j: u32) -> Option<Poly> {
        if mv.len != 3 {
            return None;
        }
        let fld = self.params.field();
        let t = &self.tuples[j as usize];
        let lo = mv.first.min(mv.second) as usize;
        // Forward direction: (lo, hi, lo) -> (hi, lo, hi).
        let sign_forward = mv.first as usize == lo;
        let c = if lo == 0 {
            // Type D: psi_0 psi_2 psi_0 - psi_2 psi_0 psi_2.
            let x = t[0].inv().expect("nonzero");
            if x != t[2] {
                return None;
            }
            match arrow_relation(&self.params, &x, &t[1]) {
                ArrowRelation::Right => self.one_poly(),
                ArrowRelation::Left => self.one_poly().neg(),
                ArrowRelation::Both => Poly::linear(fld, &[-1, -2, 1]),
                _ => return None,
            }
        } else {
            let b = lo;
            if t[b - 1] != t[b + 1] {
                return None;
            }
            match arrow_relation(&self.params, &t[b - 1], &t[b]) {
                ArrowRelation::Right => self.one_poly(),
                ArrowRelation::Left => self.one_poly().neg(),
                ArrowRelation::Both => {
                    let mut co = vec![0i64; self.n];
                    co[b - 1] = 1;
                    co[b] = -2;
                    co[b + 1] = 1;
                    Poly::linear(fld, &co)
                }
                _ => return None,
            }
        };
        Some(if sign_forward { c } else { c.neg() })
    }

    /// Twisted derivation term of `psi_a y^m e(j)`, if present.
    fn derivation(&self, a: usize, j: u32, m: &Mono) -> Option<Poly> {
        if self.flavor == Flavor::B && a == 0 {
            return None;
        }
        let (x, y) = self.pair(a, &self.tuples[j as usize]);
        if x != y {
            return None;
        }
        let fld = self.params.field();
        let f = Poly::monomial(fld, *m, fld.one());
        let diff = f.sub(&f.act(&self.gen_perm[a]));
        if diff.is_zero() {
            return None;
        }
        let q = if a == 0 {
            diff.div_linear(0, 1, &fld.from_i64(-1))
        } else {
            diff.div_linear(a, a - 1, &fld.one())
        };
        Some(q.expect("twisted derivation divides exactly"))
    }

    /// `psi_a psi_w e(i)` in normal form.
    fn left_psi_basis(&self, a: usize, w: u32, i: u32) -> Arc<Terms> {
        let key = (a as u8, w, i);
        if let Some(t) = self.memo.read().get(&key) {
            return t.clone();
        }
        let terms = Arc::new(self.compute_left_psi_basis(a, w, i));
        self.memo.write().entry(key).or_insert(terms).clone()
    }

    fn compute_left_psi_basis(&self, a: usize, w: u32, i: u32) -> Terms {
        let g = &self.group;
        let fld = self.params.field();
        let sw = g.left_mul_gen(a, w as usize) as u32;
        let mut out = Terms::new();
        if g.length(sw as usize) > g.length(w as usize) {
            let mut cur = vec![a as u8];
            cur.extend_from_slice(g.chosen_word(w as usize));
            let path = g.path_to_chosen(&cur).expect("word is reduced");
            for mv in path {
                let v = &cur[mv.pos + mv.len..];
                let j = self.act[g.eval_word(v)][i as usize];
                if let Some(c) = self.move_correction(&mv, j) {
                    let right = self.apply_letters(v, &self.idem_terms(i));
                    let mut mid = Terms::new();
                    add_poly_times(&mut mid, &c, &right);
                    let full = self.apply_letters(&cur[..mv.pos], &mid);
                    add_scaled(&mut out, &full, &fld.one());
                }
                cur = mv.apply(&cur);
            }
            add_into(&mut out, Term { i, w: sw, m: Mono::ONE }, fld.one());
        } else {
            // psi_a psi_{w'} e(i) = psi_w e(i) + C' with w' = s_a w, so
            // psi_a psi_w e(i) = psi_a^2 psi_{w'} e(i) - psi_a C'.
            let wp = sw;
            let mut c_prime = (*self.left_psi_basis(a, wp, i)).clone();
            add_into(&mut c_prime, Term { i, w, m: Mono::ONE }, -fld.one());
            let k = self.act[wp as usize][i as usize];
            let base = BTreeMap::from([(Term { i, w: wp, m: Mono::ONE }, fld.one())]);
            add_poly_times(&mut out, &self.quad(a, k), &base);
            let corr = self.apply_letters(&[a as u8], &c_prime);
            add_scaled(&mut out, &corr, &-fld.one());
        }
        out
    }

    fn idem_terms(&self, i: u32) -> Terms {
        BTreeMap::from([(Term { i, w: 0, m: Mono::ONE }, self.params.field().one())])
    }

    /// `psi_a y^m psi_w e(i)`.
    fn left_psi_term(&self, a: usize, t: &Term, c: &Scalar, out: &mut Terms) {
        let j = self.act[t.w as usize][t.i as usize];
        let (mm, neg) = act_mono(&t.m, &self.gen_perm[a]);
        let coef = if neg { -c } else { c.clone() };
        for (u, x) in self.left_psi_basis(a, t.w, t.i).iter() {
            add_into(out, Term { m: u.m.mul(&mm), ..*u }, x * &coef);
        }
        if let Some(d) = self.derivation(a, j, &t.m) {
            for (pm, pc) in d.terms() {
                add_into(out, Term { m: *pm, ..*t }, pc * c);
            }
        }
    }

    /// Left multiplication by `psi_{l_1} .. psi_{l_k}`.
    fn apply_letters(&self, letters: &[u8], src: &Terms) -> Terms {
        let mut cur = src.clone();
        for &a in letters.iter().rev() {
            let mut next = Terms::new();
            for (t, c) in &cur {
                self.left_psi_term(a as usize, t, c, &mut next);
            }
            cur = next;
        }
        cur
    }

    fn mul(&self, a: &Terms, b: &Terms) -> Terms {
        let mut by_word: BTreeMap<(u32, u32), Vec<(Mono, &Scalar)>> = BTreeMap::new();
        for (t, c) in a {
            by_word.entry((t.w, t.i)).or_default().push((t.m, c));
        }
        let mut out = Terms::new();
        for ((w, i), monos) in by_word {
            let filtered: Terms = b
                .iter()
                .filter(|(t, _)| self.act[t.w as usize][t.i as usize] == i)
                .map(|(t, c)| (*t, c.clone()))
                .collect();
            if filtered.is_empty() {
                continue;
            }
            let prod = self.apply_letters(self.group.chosen_word(w as usize), &filtered);
            for (m, c) in monos {
                for (t, x) in &prod {
                    add_into(&mut out, Term { m: t.m.mul(&m), ..*t }, x * c);
                }
            }
        }
        out
    }
}

/// An element of an [`Algebra`] in normal form.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg && self.terms == o.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(t, c)| format!("({c})*{}", self.alg.fmt_term(t))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(|| self.alg.field().zero())
    }

    fn check(&self, o: &Element) -> Result<()> {
        if self.alg != o.alg {
            return Err(Error::ContextMismatch("elements belong to different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &o.terms, &self.alg.field().one());
        Ok(self.alg.from_terms(terms))
    }

    pub fn sub(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &o.terms, &-self.alg.field().one());
        Ok(self.alg.from_terms(terms))
    }

    pub fn neg(&self) -> Element {
        self.scale(&-self.alg.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut terms = Terms::new();
        add_scaled(&mut terms, &self.terms, c);
        self.alg.from_terms(terms)
    }

    pub fn mul(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        Ok(self.alg.from_terms(self.alg.0.mul(&self.terms, &o.terms)))
    }

    /// Product of several elements from left to right.
    pub fn product(factors: &[&Element]) -> Result<Element> {
        let (first, rest) =
            factors.split_first().ok_or_else(|| Error::Precondition("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Left multiplication by `f(y_1..y_n)`.
    pub fn poly_times(&self, f: &Poly) -> Element {
        let mut terms = Terms::new();
        add_poly_times(&mut terms, f, &self.terms);
        self.alg.from_terms(terms)
    }

    /// The common degree of all terms, `None` if inhomogeneous; zero is
    /// reported as degree 0.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|t| self.alg.term_degree(t));
        let first = match degs.next() {
            Some(d) => d,
            None => return Some(0),
        };
        degs.all(|d| d == first).then_some(first)
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Term) -> bool) -> Element {
        self.alg.from_terms(self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (*t, c.clone())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::orbit;

    fn ctx(q: &str, seed: &[i64], flavor: Flavor) -> Algebra {
        let params = Params::parse(Field::Prime(13), "1", q).unwrap();
        let seed: Vec<Scalar> = seed.iter().map(|&x| params.field().from_i64(x)).collect();
        let tuples = orbit(&seed, flavor).members;
        Algebra::new(params, flavor, tuples).unwrap()
    }

    #[test]
    fn idempotents_and_unit() {
        let v = ctx("2", &[2, 3], Flavor::B);
        let one = v.one();
        for i in 0..v.tuples().len() as u32 {
            let e = v.e(i);
            assert_eq!(e.mul(&e).unwrap(), e);
            assert_eq!(one.mul(&e).unwrap(), e);
            for j in 0..i {
                assert!(e.mul(&v.e(j)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn psi_zero_relations() {
        let v = ctx("2", &[2, 3], Flavor::B);
        let p0 = v.psi(0).unwrap();
        let y1 = v.y(1).unwrap();
        assert_eq!(p0.mul(&p0).unwrap(), v.one());
        assert_eq!(p0.mul(&y1).unwrap(), y1.mul(&p0).unwrap().neg());
        let y2 = v.y(2).unwrap();
        assert_eq!(p0.mul(&y2).unwrap(), y2.mul(&p0).unwrap());
    }

    #[test]
    fn closedness_is_checked() {
        let params = Params::parse(Field::Prime(13), "1", "2").unwrap();
        let f = params.field();
        let t = vec![f.from_i64(2), f.from_i64(3)];
        assert!(Algebra::new(params, Flavor::B, vec![t]).is_err());
    }

    #[test]
    fn nil_hecke_quadratic() {
        // All residues equal to 1: psi_1^2 = 0 and psi_1 y_1 - y_2 psi_1 = -1.
        let v = ctx("2", &[1, 1], Flavor::B);
        let e = v.idempotent(&[v.field().one(), v.field().one()]).unwrap();
        let p1 = v.psi(1).unwrap();
        assert!(p1.mul(&p1).unwrap().mul(&e).unwrap().is_zero());
        let lhs = p1.mul(&v.y(1).unwrap()).unwrap().sub(&v.y(2).unwrap().mul(&p1).unwrap()).unwrap();
        assert_eq!(lhs.mul(&e).unwrap(), e.neg());
    }

    #[test]
    fn degrees() {
        let v = ctx("5", &[1, 12], Flavor::B);
        let f = v.field();
        let i = v.tuple_index(&[f.from_i64(1), f.from_i64(12)]).unwrap();
        let x = v.psi(1).unwrap().mul(&v.e(i)).unwrap();
        assert_eq!(x.degree(), Some(2));
        assert_eq!(v.y(1).unwrap().mul(&v.e(i)).unwrap().degree(), Some(2));
        let w = ctx("2", &[2, 7], Flavor::D);
        let j = w.tuple_index(&[f.from_i64(2), f.from_i64(7)]).unwrap();
        // 2^-1 = 7, so the pair for Psi_0 is equal.
        assert_eq!(w.gen_degree(0, j), -2);
    }
}

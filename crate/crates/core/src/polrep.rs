//! The polynomial representation of the type B algebra on
//! `Pol = sum_i K[Y_1..Y_n] e'(i)`, used as an independent oracle for the
//! rewriting engine.

use std::collections::{BTreeMap, HashMap};

use crate::engine::{Algebra, Element, Term};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, PivotOrder, SparseVec};
use crate::poly::{Mono, Poly};
use crate::quiver::{arrow_count, ArrowRelation};
use crate::scalars::Scalar;
use crate::weyl::Flavor;

/// A finitely supported map from tuple indices to polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolVector {
    comps: BTreeMap<u32, Poly>,
}

impl PolVector {
    pub fn zero() -> PolVector {
        PolVector::default()
    }

    /// `f e'(i)`.
    pub fn single(i: u32, f: Poly) -> PolVector {
        let mut v = PolVector::zero();
        v.add_comp(i, &f);
        v
    }

    pub fn components(&self) -> &BTreeMap<u32, Poly> {
        &self.comps
    }

    pub fn component(&self, i: u32) -> Option<&Poly> {
        self.comps.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn add_comp(&mut self, i: u32, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let sum = match self.comps.get(&i) {
            Some(g) => g.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.comps.remove(&i);
        } else {
            self.comps.insert(i, sum);
        }
    }

    pub fn add(&self, o: &PolVector) -> PolVector {
        let mut out = self.clone();
        for (i, f) in &o.comps {
            out.add_comp(*i, f);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PolVector {
        let mut out = PolVector::zero();
        for (i, f) in &self.comps {
            out.add_comp(*i, &f.scale(c));
        }
        out
    }
}

/// A generator of the type B algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(u32),
    /// `y_k`, 1-based.
    Y(usize),
    Psi(usize),
}

fn check_flavor(alg: &Algebra) -> Result<()> {
    if alg.flavor() != Flavor::B {
        return Err(Error::Unsupported("the polynomial representation is defined for type B".into()));
    }
    Ok(())
}

/// Image of `v` under one generator.
pub fn apply_generator(alg: &Algebra, g: Generator, v: &PolVector) -> Result<PolVector> {
    check_flavor(alg)?;
    let fld = alg.field();
    let n = alg.rank();
    let mut out = PolVector::zero();
    match g {
        Generator::E(i) => {
            if let Some(f) = v.comps.get(&i) {
                out.add_comp(i, f);
            }
        }
        Generator::Y(k) => {
            if k == 0 || k > n {
                return Err(Error::Precondition(format!("y_{k} out of range")));
            }
            let yk = Poly::var(fld, k - 1);
            for (i, f) in &v.comps {
                out.add_comp(*i, &f.mul(&yk));
            }
        }
        Generator::Psi(0) => {
            for (i, f) in &v.comps {
                out.add_comp(alg.act_gen(0, *i), &negate_first(f));
            }
        }
        Generator::Psi(k) => {
            if k >= n {
                return Err(Error::Precondition(format!("psi_{k} out of range")));
            }
            for (i, f) in &v.comps {
                let rf = f.swap_vars(k - 1);
                match alg.pair_relation(k, *i) {
                    ArrowRelation::Equal => {
                        let q = rf
                            .sub(f)
                            .div_linear(k - 1, k, &fld.one())
                            .expect("Demazure quotient is exact");
                        out.add_comp(*i, &q);
                    }
                    ArrowRelation::Right | ArrowRelation::None => {
                        out.add_comp(alg.act_gen(k, *i), &rf);
                    }
                    ArrowRelation::Left | ArrowRelation::Both => {
                        let d = Poly::var(fld, k).sub(&Poly::var(fld, k - 1));
                        out.add_comp(alg.act_gen(k, *i), &d.mul(&rf));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `f` with `Y_1` replaced by `-Y_1`.
fn negate_first(f: &Poly) -> Poly {
    let mut out = Poly::zero(f.field());
    for (m, c) in f.terms() {
        out.add_term(*m, if m.exp(0) % 2 == 1 { -c } else { c.clone() });
    }
    out
}

/// Applies the generator word `letters` (rightmost first).
pub fn apply_word(alg: &Algebra, letters: &[u8], v: &PolVector) -> Result<PolVector> {
    let mut cur = v.clone();
    for &a in letters.iter().rev() {
        cur = apply_generator(alg, Generator::Psi(a as usize), &cur)?;
    }
    Ok(cur)
}

fn apply_term(alg: &Algebra, t: &Term, v: &PolVector) -> Result<PolVector> {
    let mut cur = apply_generator(alg, Generator::E(t.i), v)?;
    cur = apply_word(alg, alg.group().chosen_word(t.w as usize), &cur)?;
    let mono = Poly::monomial(alg.field(), t.m, alg.field().one());
    let mut out = PolVector::zero();
    for (i, f) in &cur.comps {
        out.add_comp(*i, &f.mul(&mono));
    }
    Ok(out)
}

/// Image of `v` under an algebra element.
pub fn apply_element(a: &Element, v: &PolVector) -> Result<PolVector> {
    let alg = a.algebra();
    let mut out = PolVector::zero();
    for (t, c) in a.terms() {
        out = out.add(&apply_term(alg, t, v)?.scale(c));
    }
    Ok(out)
}

/// `h(i)`: `-1` if `i_1 = i_2`, otherwise `|i_2 -> i_1|`.
pub fn h_twist(alg: &Algebra, i: u32) -> Result<i32> {
    if alg.rank() < 2 {
        return Err(Error::Precondition("h needs rank at least 2".into()));
    }
    let t = alg.tuple(i);
    if t[0] == t[1] {
        return Ok(-1);
    }
    Ok(arrow_count(alg.params(), &t[1], &t[0]) as i32)
}

/// All probes `Y^p e'(j)` with `|p| <= cap`.
pub fn probes(alg: &Algebra, cap: u32) -> Vec<PolVector> {
    let fld = alg.field();
    let mut out = Vec::new();
    for j in 0..alg.tuples().len() as u32 {
        for m in Mono::up_to_degree(alg.rank(), cap) {
            out.push(PolVector::single(j, Poly::monomial(fld, m, fld.one())));
        }
    }
    out
}

/// Flattens the images of the probes of degree exactly `d` under a word.
fn word_image(
    alg: &Algebra,
    t: &Term,
    d: u32,
    coords: &mut HashMap<(u32, usize, u32, Mono), usize>,
) -> Result<SparseVec> {
    let fld = alg.field();
    let mut v = SparseVec::new();
    // Only probes in component e'(t.i) survive the idempotent.
    for (p, m) in Mono::of_degree(alg.rank(), d).into_iter().enumerate() {
        let img = apply_term(alg, t, &PolVector::single(t.i, Poly::monomial(fld, m, fld.one())))?;
        for (j, f) in img.components() {
            for (om, c) in f.terms() {
                let next = coords.len();
                let idx = *coords.entry((t.i, p, *j, *om)).or_insert(next);
                v.insert(idx, c.clone());
            }
        }
    }
    Ok(v)
}

/// Rank of the operators given by `words` on the probe family, raising the
/// probe degree until the rank is full or `cap` is reached.
pub fn independence_rank(alg: &Algebra, words: &[Term], cap: u32) -> Result<usize> {
    check_flavor(alg)?;
    // Images of probes of different degrees live in independent coordinate
    // blocks, so each degree adds its own block to every column.
    let mut columns: Vec<SparseVec> = vec![SparseVec::new(); words.len()];
    let mut offset = 0usize;
    let mut best = 0;
    for d in 0..=cap {
        let mut coords = HashMap::new();
        for (k, t) in words.iter().enumerate() {
            for (idx, c) in word_image(alg, t, d, &mut coords)? {
                columns[k].insert(offset + idx, c);
            }
        }
        offset += coords.len();
        let mut ech = Echelon::new(PivotOrder::Lowest);
        for c in &columns {
            ech.insert(c);
        }
        best = ech.rank();
        if best == words.len() {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Field, Params};
    use crate::weyl::orbit;

    fn ctx(q: &str, seed: &[i64]) -> Algebra {
        let params = Params::parse(Field::Prime(13), "1", q).unwrap();
        let seed: Vec<Scalar> = seed.iter().map(|&x| params.field().from_i64(x)).collect();
        Algebra::new(params, Flavor::B, orbit(&seed, Flavor::B).members).unwrap()
    }

    #[test]
    fn generator_examples() {
        let v = ctx("2", &[1, 1]);
        let f = v.field();
        let i = v.tuple_index(&[f.one(), f.one()]).unwrap();
        let y1 = PolVector::single(i, Poly::var(f, 0));
        let out = apply_generator(&v, Generator::Psi(0), &y1).unwrap();
        let j = v.act_gen(0, i);
        assert_eq!(out, PolVector::single(j, Poly::var(f, 0).neg()));
        let out = apply_generator(&v, Generator::Psi(1), &y1).unwrap();
        assert_eq!(out, PolVector::single(i, Poly::one(f).neg()));
        let one = PolVector::single(i, Poly::one(f));
        assert!(apply_generator(&v, Generator::Psi(1), &one).unwrap().is_zero());

        let v = ctx("2", &[2, 5]);
        let i = v.tuple_index(&[f.from_i64(2), f.from_i64(5)]).unwrap();
        let out = apply_generator(&v, Generator::Psi(1), &PolVector::single(i, Poly::one(f))).unwrap();
        assert_eq!(out, PolVector::single(v.act_gen(1, i), Poly::one(f)));
    }

    #[test]
    fn twist_values() {
        let v = ctx("2", &[1, 4]);
        let f = v.field();
        let idx = |a: i64, b: i64| v.tuple_index(&[f.from_i64(a), f.from_i64(b)]).unwrap();
        // 4 = q^2 * 1, so 1 -> 4 and |4 -> 1| = 0.
        assert_eq!(h_twist(&v, idx(1, 4)).unwrap(), 0);
        assert_eq!(h_twist(&v, idx(4, 1)).unwrap(), 1);
        let w = ctx("2", &[1, 1]);
        assert_eq!(h_twist(&w, 0).unwrap(), -1);
    }

    #[test]
    fn idempotent_rank() {
        let v = ctx("2", &[2, 5]);
        let words: Vec<Term> =
            (0..v.tuples().len() as u32).map(|i| Term { i, w: 0, m: Mono::ONE }).collect();
        assert_eq!(independence_rank(&v, &words, 2).unwrap(), v.tuples().len());
        let mut dup = words.clone();
        dup.push(words[0]);
        assert_eq!(independence_rank(&v, &dup, 2).unwrap(), v.tuples().len());
    }
}

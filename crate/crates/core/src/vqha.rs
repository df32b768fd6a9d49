//! The type B algebra `V`: construction, the involution `rho`, the orbit
//! decomposition, and relation checks against the rewriting engine and the
//! polynomial representation.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::engine::{Algebra, Element, Term};
use crate::error::Result;
use crate::poly::{Mono, Poly};
use crate::polrep::{apply_element, apply_generator, probes, Generator, PolVector};
use crate::quiver::ArrowRelation;
use crate::report::CheckSet;
use crate::scalars::{Params, Scalar};
use crate::weyl::{fmt_tuple, orbit, Flavor, Orbit, Tuple};

/// The type B algebra on `beta`, which must be a union of B-orbits.
pub fn v_algebra(params: Params, beta: Vec<Tuple>) -> Result<Algebra> {
    Algebra::new(params, Flavor::B, beta)
}

/// The union of the B-orbits of `seeds`.
pub fn beta_from_seeds(seeds: &[Tuple], flavor: Flavor) -> Vec<Tuple> {
    let mut all = BTreeSet::new();
    for s in seeds {
        all.extend(orbit(s, flavor).members);
    }
    all.into_iter().collect()
}

/// Sign of `rho` on the basis word with group element `w`.
pub fn rho_sign(alg: &Algebra, w: u32) -> bool {
    let zeros = alg.group().chosen_word(w as usize).iter().filter(|&&a| a == 0).count();
    zeros % 2 == 1
}

/// The involution fixing `y_j`, `e(i)`, `psi_b` and negating `psi_0`.
pub fn rho(x: &Element) -> Element {
    let alg = x.algebra();
    let terms = x
        .terms()
        .iter()
        .map(|(t, c)| (*t, if rho_sign(alg, t.w) { -c } else { c.clone() }))
        .collect();
    alg.from_terms(terms)
}

/// Basis words with `|m| <= max_ydeg`, split by whether their group element
/// lies in the image of the type D group.
pub fn fixed_point_basis_split(alg: &Algebra, max_ydeg: u32) -> (Vec<Term>, Vec<Term>) {
    alg.basis_words(max_ydeg).into_iter().partition(|t| alg.group().is_even(t.w as usize))
}

/// Orbits of the tuple set under the algebra's own group, with their central
/// idempotents.
pub fn orbit_decompose(alg: &Algebra) -> Vec<(Orbit, Element)> {
    let mut seen: BTreeSet<Tuple> = BTreeSet::new();
    let mut out = Vec::new();
    for t in alg.tuples() {
        if seen.contains(t) {
            continue;
        }
        let o = orbit(t, alg.flavor());
        let mut e = alg.zero();
        for m in &o.members {
            seen.insert(m.clone());
            e = e.add(&alg.idempotent(m).expect("orbit lies in the tuple set")).expect("same algebra");
        }
        out.push((o, e));
    }
    out
}

fn diff_witness(lhs: &Element, rhs: &Element, ctx: &str) -> String {
    format!("{ctx}: lhs - rhs = {}", lhs.sub(rhs).expect("same algebra"))
}

pub(crate) fn check_eq(set: &mut CheckSet, name: &str, anchor: &str, lhs: &Element, rhs: &Element, ctx: impl FnOnce() -> String) {
    set.check(name, anchor, lhs == rhs, || diff_witness(lhs, rhs, &ctx()));
}

/// Relations shared by both flavors: idempotents, commuting `y`'s, the
/// idempotent twist of `psi_a`, and the relations involving only `psi_b`
/// with `b >= 1`.
pub(crate) fn common_relation_checks(alg: &Algebra, set: &mut CheckSet) -> Result<()> {
    let n = alg.rank();
    let fld = alg.field();
    let nt = alg.tuples().len() as u32;
    let ys: Vec<Element> = (1..=n).map(|k| alg.y(k)).collect::<Result<_>>()?;
    let psis: Vec<Element> = (0..n).map(|a| alg.psi(a)).collect::<Result<_>>()?;
    let mut sum = alg.zero();
    for i in 0..nt {
        sum = sum.add(&alg.e(i))?;
    }
    check_eq(set, "idempotents sum to one", "sum of e(i) is the unit", &sum, &alg.one(), String::new);
    for i in 0..nt {
        let ei = alg.e(i);
        let ti = fmt_tuple(alg.tuple(i));
        for j in 0..nt {
            let expect = if i == j { ei.clone() } else { alg.zero() };
            check_eq(set, "orthogonal idempotents", "e(i)e(j) = delta e(i)", &ei.mul(&alg.e(j))?, &expect, || {
                format!("i={ti}, j={}", fmt_tuple(alg.tuple(j)))
            });
        }
        for (k, y) in ys.iter().enumerate() {
            check_eq(set, "y commutes with idempotents", "y_k e(i) = e(i) y_k", &y.mul(&ei)?, &ei.mul(y)?, || {
                format!("k={}, i={ti}", k + 1)
            });
        }
        for (a, psi) in psis.iter().enumerate() {
            let lhs = psi.mul(&ei)?;
            let rhs = alg.e(alg.act_gen(a, i)).mul(psi)?;
            check_eq(set, "psi twists idempotents", "psi_a e(i) = e(s_a i) psi_a", &lhs, &rhs, || {
                format!("a={a}, i={ti}")
            });
        }
        for b in 1..n {
            let rel = alg.pair_relation(b, i);
            // psi_b y_j - y_{pi(j)} psi_b
            for j in 1..=n {
                let pj = if j == b { b + 1 } else if j == b + 1 { b } else { j };
                let lhs = psis[b].mul(&ys[j - 1])?.sub(&ys[pj - 1].mul(&psis[b])?)?.mul(&ei)?;
                let rhs = match (rel, j) {
                    (ArrowRelation::Equal, j) if j == b => ei.neg(),
                    (ArrowRelation::Equal, j) if j == b + 1 => ei.clone(),
                    _ => alg.zero(),
                };
                check_eq(set, "psi_b and y_j", "psi_b y_j - y_pi(j) psi_b", &lhs, &rhs, || {
                    format!("b={b}, j={j}, i={ti}")
                });
            }
            // psi_b^2
            let d = Poly::var(fld, b).sub(&Poly::var(fld, b - 1));
            let rhs_poly = match rel {
                ArrowRelation::Equal => Poly::zero(fld),
                ArrowRelation::None => Poly::one(fld),
                ArrowRelation::Right => d.clone(),
                ArrowRelation::Left => d.neg(),
                ArrowRelation::Both => d.mul(&d.neg()),
            };
            let lhs = psis[b].mul(&psis[b])?.mul(&ei)?;
            check_eq(set, "quadratic relation psi_b^2", "psi_b^2 e(i) by arrow case", &lhs, &ei.poly_times(&rhs_poly), || {
                format!("b={b}, i={ti}")
            });
            // braid relation with b+1
            if b + 1 < n {
                let t = alg.tuple(i);
                let mut corr = Poly::zero(fld);
                if t[b - 1] == t[b + 1] {
                    match rel {
                        ArrowRelation::Right => corr = Poly::one(fld),
                        ArrowRelation::Left => corr = Poly::one(fld).neg(),
                        ArrowRelation::Both => {
                            let mut co = vec![0i64; n];
                            co[b - 1] = 1;
                            co[b] = -2;
                            co[b + 1] = 1;
                            corr = Poly::linear(fld, &co);
                        }
                        _ => {}
                    }
                }
                let (p, q) = (&psis[b], &psis[b + 1]);
                let lhs = Element::product(&[p, q, p, &ei])?.sub(&Element::product(&[q, p, q, &ei])?)?;
                check_eq(set, "braid relation psi_b psi_b+1", "psi_b psi_b+1 psi_b - psi_b+1 psi_b psi_b+1", &lhs, &ei.poly_times(&corr), || {
                    format!("b={b}, i={ti}")
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let commuting = match alg.flavor() {
                Flavor::B => a.abs_diff(b) > 1,
                Flavor::D => a != 0 && b != 0 && a.abs_diff(b) > 1,
            };
            if commuting {
                check_eq(set, "distant psi commute", "psi_a psi_b = psi_b psi_a", &psis[a].mul(&psis[b])?, &psis[b].mul(&psis[a])?, || {
                    format!("a={a}, b={b}")
                });
            }
        }
        for j in 0..n {
            check_eq(set, "y's commute", "y_i y_j = y_j y_i", &ys[a].mul(&ys[j])?, &ys[j].mul(&ys[a])?, || {
                format!("i={}, j={}", a + 1, j + 1)
            });
        }
    }
    Ok(())
}

/// Every defining relation of the type B algebra, instantiated for every
/// tuple and index, compared in normal form.
pub fn relation_checks(alg: &Algebra) -> Result<CheckSet> {
    let mut set = CheckSet::new();
    common_relation_checks(alg, &mut set)?;
    let n = alg.rank();
    let p0 = alg.psi(0)?;
    let y1 = alg.y(1)?;
    check_eq(&mut set, "psi_0 anticommutes with y_1", "psi_0 y_1 + y_1 psi_0 = 0", &p0.mul(&y1)?, &y1.mul(&p0)?.neg(), String::new);
    for j in 2..=n {
        let yj = alg.y(j)?;
        check_eq(&mut set, "psi_0 commutes with y_j", "psi_0 y_j = y_j psi_0 for j > 1", &p0.mul(&yj)?, &yj.mul(&p0)?, || format!("j={j}"));
    }
    check_eq(&mut set, "psi_0 squares to one", "psi_0^2 = 1", &p0.mul(&p0)?, &alg.one(), String::new);
    if n >= 2 {
        let p1 = alg.psi(1)?;
        let lhs = Element::product(&[&p0, &p1, &p0, &p1])?;
        let rhs = Element::product(&[&p1, &p0, &p1, &p0])?;
        check_eq(&mut set, "type B braid relation", "(psi_0 psi_1)^2 = (psi_1 psi_0)^2", &lhs, &rhs, String::new);
    }
    Ok(set)
}

fn compose_on(alg: &Algebra, word: &[Generator], v: &PolVector) -> Result<PolVector> {
    let mut cur = v.clone();
    for g in word.iter().rev() {
        cur = apply_generator(alg, *g, &cur)?;
    }
    Ok(cur)
}

fn generator_name(alg: &Algebra, g: &Generator) -> String {
    match g {
        Generator::E(i) => format!("e{}", fmt_tuple(alg.tuple(*i))),
        Generator::Y(k) => format!("y{k}"),
        Generator::Psi(a) => format!("psi{a}"),
    }
}

/// Relations checked as operator identities on probes: each relation of the
/// type B algebra is written as a difference of generator words, which must
/// act by zero.
pub fn polrep_relation_checks(alg: &Algebra, probe_deg: u32) -> Result<CheckSet> {
    use Generator::{Psi, Y, E};
    let n = alg.rank();
    let fld = alg.field();
    let mut set = CheckSet::new();
    let probe_list = probes(alg, probe_deg);
    let one = fld.one();
    let minus = -fld.one();
    // (name, anchor, terms as coefficient and word) instances.
    type Combo = Vec<(Scalar, Vec<Generator>)>;
    let mut rels: Vec<(String, &str, Combo)> = Vec::new();
    let nt = alg.tuples().len() as u32;
    for i in 0..nt {
        for a in 0..n {
            let j = alg.act_gen(a, i);
            rels.push(("psi twists idempotents".into(), "psi_a e(i) = e(s_a i) psi_a", vec![(one.clone(), vec![Psi(a), E(i)]), (minus.clone(), vec![E(j), Psi(a)])]));
        }
        for b in 1..n {
            let rel = alg.pair_relation(b, i);
            for jj in 1..=n {
                let pj = if jj == b { b + 1 } else if jj == b + 1 { b } else { jj };
                let mut combo = vec![(one.clone(), vec![Psi(b), Y(jj), E(i)]), (minus.clone(), vec![Y(pj), Psi(b), E(i)])];
                if rel == ArrowRelation::Equal && jj == b {
                    combo.push((one.clone(), vec![E(i)]));
                } else if rel == ArrowRelation::Equal && jj == b + 1 {
                    combo.push((minus.clone(), vec![E(i)]));
                }
                rels.push(("psi_b and y_j".into(), "psi_b y_j - y_pi(j) psi_b", combo));
            }
            let mut combo = vec![(one.clone(), vec![Psi(b), Psi(b), E(i)])];
            match rel {
                ArrowRelation::Equal => {}
                ArrowRelation::None => combo.push((minus.clone(), vec![E(i)])),
                ArrowRelation::Right => {
                    combo.push((minus.clone(), vec![Y(b + 1), E(i)]));
                    combo.push((one.clone(), vec![Y(b), E(i)]));
                }
                ArrowRelation::Left => {
                    combo.push((one.clone(), vec![Y(b + 1), E(i)]));
                    combo.push((minus.clone(), vec![Y(b), E(i)]));
                }
                ArrowRelation::Both => {
                    // -(y_{b+1} - y_b)(y_b - y_{b+1}) = (y_{b+1} - y_b)^2
                    combo.push((one.clone(), vec![Y(b + 1), Y(b + 1), E(i)]));
                    combo.push((fld.from_i64(-2), vec![Y(b + 1), Y(b), E(i)]));
                    combo.push((one.clone(), vec![Y(b), Y(b), E(i)]));
                }
            }
            rels.push(("quadratic relation psi_b^2".into(), "psi_b^2 e(i) by arrow case", combo));
            if b + 1 < n {
                let t = alg.tuple(i);
                let mut combo = vec![
                    (one.clone(), vec![Psi(b), Psi(b + 1), Psi(b), E(i)]),
                    (minus.clone(), vec![Psi(b + 1), Psi(b), Psi(b + 1), E(i)]),
                ];
                if t[b - 1] == t[b + 1] {
                    match rel {
                        ArrowRelation::Right => combo.push((minus.clone(), vec![E(i)])),
                        ArrowRelation::Left => combo.push((one.clone(), vec![E(i)])),
                        ArrowRelation::Both => {
                            combo.push((minus.clone(), vec![Y(b + 2), E(i)]));
                            combo.push((fld.from_i64(2), vec![Y(b + 1), E(i)]));
                            combo.push((minus.clone(), vec![Y(b), E(i)]));
                        }
                        _ => {}
                    }
                }
                rels.push(("braid relation psi_b psi_b+1".into(), "psi_b psi_b+1 psi_b - psi_b+1 psi_b psi_b+1", combo));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a.abs_diff(b) > 1 {
                rels.push(("distant psi commute".into(), "psi_a psi_b = psi_b psi_a", vec![(one.clone(), vec![Psi(a), Psi(b)]), (minus.clone(), vec![Psi(b), Psi(a)])]));
            }
        }
        for j in 1..=n {
            rels.push(("y's commute".into(), "y_i y_j = y_j y_i", vec![(one.clone(), vec![Y(a + 1), Y(j)]), (minus.clone(), vec![Y(j), Y(a + 1)])]));
        }
    }
    rels.push(("psi_0 anticommutes with y_1".into(), "psi_0 y_1 + y_1 psi_0 = 0", vec![(one.clone(), vec![Psi(0), Y(1)]), (one.clone(), vec![Y(1), Psi(0)])]));
    for j in 2..=n {
        rels.push(("psi_0 commutes with y_j".into(), "psi_0 y_j = y_j psi_0 for j > 1", vec![(one.clone(), vec![Psi(0), Y(j)]), (minus.clone(), vec![Y(j), Psi(0)])]));
    }
    let id: Vec<(Scalar, Vec<Generator>)> = (0..nt).map(|i| (minus.clone(), vec![E(i)])).collect();
    let mut sq = vec![(one.clone(), vec![Psi(0), Psi(0)])];
    sq.extend(id.clone());
    rels.push(("psi_0 squares to one".into(), "psi_0^2 = 1", sq));
    let mut unit = vec![];
    unit.extend(id.iter().map(|(_, w)| (one.clone(), w.clone())));
    rels.push(("idempotents sum to one".into(), "sum of e(i) is the unit", unit));
    if n >= 2 {
        rels.push(("type B braid relation".into(), "(psi_0 psi_1)^2 = (psi_1 psi_0)^2", vec![
            (one.clone(), vec![Psi(0), Psi(1), Psi(0), Psi(1)]),
            (minus.clone(), vec![Psi(1), Psi(0), Psi(1), Psi(0)]),
        ]));
    }
    for (name, anchor, combo) in rels {
        let is_unit = name == "idempotents sum to one";
        for v in &probe_list {
            let mut acc = PolVector::zero();
            for (c, word) in &combo {
                acc = acc.add(&compose_on(alg, word, v)?.scale(c));
            }
            if is_unit {
                acc = acc.add(&v.scale(&minus));
            }
            set.check(&name, anchor, acc.is_zero(), || {
                let words: Vec<String> = combo
                    .iter()
                    .map(|(c, w)| format!("{c}*{}", w.iter().map(|g| generator_name(alg, g)).collect::<Vec<_>>().join(".")))
                    .collect();
                format!("{} acts nontrivially on a probe", words.join(" + "))
            });
        }
    }
    Ok(set)
}

/// A random generator: an idempotent one time in ten, otherwise a `y` or,
/// twice as often, a `psi`.
fn random_generator(alg: &Algebra, rng: &mut StdRng) -> Generator {
    let n = alg.rank();
    match rng.gen_range(0..10) {
        0 => Generator::E(rng.gen_range(0..alg.tuples().len() as u32)),
        1..=3 => Generator::Y(rng.gen_range(1..=n)),
        _ => Generator::Psi(rng.gen_range(0..n)),
    }
}

fn generator_element(alg: &Algebra, g: Generator) -> Result<Element> {
    match g {
        Generator::E(i) => Ok(alg.e(i)),
        Generator::Y(k) => alg.y(k),
        Generator::Psi(a) => alg.psi(a),
    }
}

fn random_word(alg: &Algebra, rng: &mut StdRng, max_len: usize) -> Vec<Generator> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| random_generator(alg, rng)).collect()
}

fn word_product(alg: &Algebra, word: &[Generator]) -> Result<Element> {
    let factors: Vec<Element> = word.iter().map(|g| generator_element(alg, *g)).collect::<Result<_>>()?;
    let refs: Vec<&Element> = factors.iter().collect();
    if refs.is_empty() {
        return Ok(alg.one());
    }
    Element::product(&refs)
}

/// A random element: a sum of up to three scaled random generator products.
pub fn random_element(alg: &Algebra, rng: &mut StdRng, max_len: usize) -> Result<Element> {
    let fld = alg.field();
    let mut x = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let word = random_word(alg, rng, max_len);
        let c = fld.from_i64(rng.gen_range(1..=5));
        x = x.add(&word_product(alg, &word)?.scale(&c))?;
    }
    Ok(x)
}

/// Compares `count` random products computed by the engine with the direct
/// composition of generator operators on probes of degree `<= probe_deg`.
pub fn oracle_checks(alg: &Algebra, count: usize, seed: u64, probe_deg: u32) -> Result<CheckSet> {
    let mut set = CheckSet::new();
    let mut rng = StdRng::seed_from_u64(seed);
    let probe_list = probes(alg, probe_deg);
    for _ in 0..count {
        let gw = random_word(alg, &mut rng, 2 * alg.rank() + 2);
        let prod = word_product(alg, &gw)?;
        let mut ok = true;
        for v in &probe_list {
            if apply_element(&prod, v)? != compose_on(alg, &gw, v)? {
                ok = false;
                break;
            }
        }
        set.check("engine agrees with polynomial representation", "normal form acts as the generator word", ok, || {
            let names: Vec<String> = gw.iter().map(|g| generator_name(alg, g)).collect();
            format!("word {}", names.join("."))
        });
    }
    Ok(set)
}

/// `rho(b) = +-b` with the sign of the `r_0`-parity of the chosen word.
pub fn rho_sign_checks(alg: &Algebra, max_ydeg: u32) -> CheckSet {
    let mut set = CheckSet::new();
    for t in alg.basis_words(max_ydeg) {
        let b = alg.basis_word(t.m, t.w, t.i);
        let word = alg.group().chosen_word(t.w as usize);
        let odd = word.iter().filter(|&&a| a == 0).count() % 2 == 1;
        let expect = if odd { b.neg() } else { b.clone() };
        let via_gens = {
            // Rebuild the word from generators with psi_0 negated.
            let mut x = alg.e(t.i);
            for &a in word.iter().rev() {
                let mut p = alg.psi(a as usize).expect("in range");
                if a == 0 {
                    p = p.neg();
                }
                x = p.mul(&x).expect("same algebra");
            }
            alg.poly(&Poly::monomial(alg.field(), t.m, alg.field().one())).mul(&x).expect("same algebra")
        };
        set.check("rho acts by the r_0-parity sign", "rho on basis words", rho(&b) == expect && via_gens == expect, || {
            format!("word {}", alg.fmt_term(&t))
        });
    }
    set
}

/// `y^m` monomials times `e(i)` for all `|m| <= d`: a helper for tests and
/// suites.
pub fn monomial_window(alg: &Algebra, d: u32) -> Vec<Mono> {
    Mono::up_to_degree(alg.rank(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn ctx(q: &str, seeds: &[&[i64]]) -> Algebra {
        let params = Params::parse(Field::Prime(13), "1", q).unwrap();
        let seeds: Vec<Tuple> =
            seeds.iter().map(|s| s.iter().map(|&x| params.field().from_i64(x)).collect()).collect();
        v_algebra(params, beta_from_seeds(&seeds, Flavor::B)).unwrap()
    }

    #[test]
    fn relations_hold_in_normal_form() {
        for (q, seeds) in [("2", vec![&[2i64, 3][..]]), ("2", vec![&[1, 4]]), ("5", vec![&[1, 12]]), ("2", vec![&[1, 1]])] {
            let v = ctx(q, &seeds);
            let set = relation_checks(&v).unwrap();
            assert!(set.all_passed(), "{:?}", set.failures());
        }
    }

    #[test]
    fn relations_hold_on_probes() {
        for (q, seeds) in [("2", vec![&[1i64, 4][..]]), ("5", vec![&[1, 12]])] {
            let v = ctx(q, &seeds);
            let set = polrep_relation_checks(&v, 3).unwrap();
            assert!(set.all_passed(), "{:?}", set.failures());
        }
    }

    #[test]
    fn random_products_match_oracle() {
        for (q, seeds) in [("2", vec![&[1i64, 4][..]]), ("5", vec![&[1, 12]]), ("2", vec![&[1, 1]])] {
            let v = ctx(q, &seeds);
            let set = oracle_checks(&v, 60, 7, 2).unwrap();
            assert!(set.all_passed(), "{:?}", set.failures());
        }
    }

    #[test]
    fn rho_signs_and_split() {
        let v = ctx("2", &[&[2, 3]]);
        assert!(rho_sign_checks(&v, 1).all_passed());
        let (plus, minus) = fixed_point_basis_split(&v, 1);
        assert_eq!(plus.len(), minus.len());
        let x = v.psi(0).unwrap();
        assert_eq!(rho(&x), x.neg());
        assert_eq!(rho(&rho(&x)), x);
    }

    #[test]
    fn orbit_idempotents_are_central() {
        let v = ctx("2", &[&[2, 3], &[1, 4]]);
        let parts = orbit_decompose(&v);
        assert_eq!(parts.len(), 2);
        let mut sum = v.zero();
        for (_, e) in &parts {
            sum = sum.add(e).unwrap();
            for g in [v.psi(0).unwrap(), v.psi(1).unwrap(), v.y(1).unwrap(), v.y(2).unwrap()] {
                assert_eq!(e.mul(&g).unwrap(), g.mul(e).unwrap());
            }
        }
        assert_eq!(sum, v.one());
        assert!(parts[0].1.mul(&parts[1].1).unwrap().is_zero());
    }
}

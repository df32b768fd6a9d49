//! The type D algebra `W`: construction, its relation checks, and the map
//! `phi` into the type B algebra whose image is the `rho`-fixed subalgebra.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::engine::{Algebra, Element, Term};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quiver::ArrowRelation;
use crate::report::CheckSet;
use crate::scalars::Params;
use crate::vqha::{check_eq, common_relation_checks, fixed_point_basis_split, random_element, rho};
use crate::weyl::{fmt_tuple, iota_word, Flavor, Tuple};

/// The type D algebra on `delta`, which must be a union of D-orbits.
pub fn w_algebra(params: Params, delta: Vec<Tuple>) -> Result<Algebra> {
    Algebra::new(params, Flavor::D, delta)
}

fn require(alg: &Algebra, flavor: Flavor) -> Result<()> {
    if alg.flavor() != flavor {
        return Err(Error::Precondition(format!("expected a type {flavor} algebra")));
    }
    Ok(())
}

/// Every defining relation of the type D algebra, compared in normal form.
pub fn relation_checks_d(alg: &Algebra) -> Result<CheckSet> {
    require(alg, Flavor::D)?;
    let mut set = CheckSet::new();
    common_relation_checks(alg, &mut set)?;
    let n = alg.rank();
    if n < 2 {
        return Ok(set);
    }
    let fld = alg.field();
    let p0 = alg.psi(0)?;
    let ys: Vec<Element> = (1..=n).map(|k| alg.y(k)).collect::<Result<_>>()?;
    let y12 = Poly::var(fld, 0).add(&Poly::var(fld, 1));
    for i in 0..alg.tuples().len() as u32 {
        let ei = alg.e(i);
        let t = alg.tuple(i);
        let ti = fmt_tuple(t);
        let inv1 = t[0].inv().expect("residues are nonzero");
        let rel = alg.pair_relation(0, i);
        for j in 1..=n {
            let lhs = p0.mul(&ys[j - 1])?.mul(&ei)?;
            let rhs = if j <= 2 {
                let pj = 3 - j;
                let mut r = ys[pj - 1].mul(&p0)?.mul(&ei)?.neg();
                if inv1 == t[1] {
                    r = r.add(&ei)?;
                }
                r
            } else {
                ys[j - 1].mul(&p0)?.mul(&ei)?
            };
            check_eq(&mut set, "Psi_0 and y_j", "Psi_0 y_j e(i) by the i_1^-1, i_2 case", &lhs, &rhs, || {
                format!("j={j}, i={ti}")
            });
        }
        let sq = match rel {
            ArrowRelation::Equal => Poly::zero(fld),
            ArrowRelation::None => Poly::one(fld),
            ArrowRelation::Right => y12.clone(),
            ArrowRelation::Left => y12.neg(),
            ArrowRelation::Both => y12.mul(&y12).neg(),
        };
        check_eq(&mut set, "quadratic relation Psi_0^2", "Psi_0^2 e(i) by arrow case", &p0.mul(&p0)?.mul(&ei)?, &ei.poly_times(&sq), || {
            format!("i={ti}")
        });
        if n >= 3 {
            let p2 = alg.psi(2)?;
            let mut corr = Poly::zero(fld);
            if inv1 == t[2] {
                match rel {
                    ArrowRelation::Right => corr = Poly::one(fld),
                    ArrowRelation::Left => corr = Poly::one(fld).neg(),
                    ArrowRelation::Both => {
                        let mut co = vec![0i64; n];
                        co[0] = -1;
                        co[1] = -2;
                        co[2] = 1;
                        corr = Poly::linear(fld, &co);
                    }
                    _ => {}
                }
            }
            let lhs = Element::product(&[&p0, &p2, &p0, &ei])?.sub(&Element::product(&[&p2, &p0, &p2, &ei])?)?;
            check_eq(&mut set, "braid relation Psi_0 Psi_2", "Psi_0 Psi_2 Psi_0 - Psi_2 Psi_0 Psi_2", &lhs, &ei.poly_times(&corr), || {
                format!("i={ti}")
            });
        }
    }
    for b in (1..n).filter(|&b| b == 1 || b > 2) {
        let pb = alg.psi(b)?;
        check_eq(&mut set, "Psi_0 commutes with Psi_b", "Psi_0 Psi_b = Psi_b Psi_0 for b = 1 or b > 2", &p0.mul(&pb)?, &pb.mul(&p0)?, || {
            format!("b={b}")
        });
    }
    Ok(set)
}

/// The algebra map `W -> V` sending `Psi_0` to `psi_0 psi_1 psi_0` and the
/// other generators to their namesakes, computed by multiplying generator
/// images in `target`.
pub fn phi(x: &Element, target: &Algebra) -> Result<Element> {
    let src = x.algebra();
    require(src, Flavor::D)?;
    require(target, Flavor::B)?;
    if src.params() != target.params() || src.rank() != target.rank() {
        return Err(Error::Precondition("phi needs matching parameters and rank".into()));
    }
    let fld = target.field();
    let mut out = target.zero();
    for (t, c) in x.terms() {
        let tuple = src.tuple(t.i);
        let j = target
            .tuple_index(tuple)
            .ok_or_else(|| Error::Precondition(format!("{} is not in the target tuple set", fmt_tuple(tuple))))?;
        let letters = iota_word(src.group().chosen_word(t.w as usize));
        let word = target.left_word(&letters, &target.e(j));
        let img = word.poly_times(&Poly::monomial(fld, t.m, c.clone()));
        out = out.add(&img)?;
    }
    Ok(out)
}

/// The basis word of `target` that `phi` should send the basis word `t` to.
fn phi_on_basis(src: &Algebra, t: &Term, target: &Algebra) -> Option<Term> {
    let j = target.tuple_index(src.tuple(t.i))?;
    let w = target.group().index_of(src.group().element(t.w as usize))?;
    Some(Term { i: j, w: w as u32, m: t.m })
}

/// Checks that `phi` is a degree-preserving homomorphism onto the `rho`-fixed
/// subalgebra and a bijection from the D basis onto the even part of the B
/// basis.
pub fn phi_checks(w: &Algebra, v: &Algebra, pairs: usize, seed: u64, max_ydeg: u32) -> Result<CheckSet> {
    require(w, Flavor::D)?;
    let mut set = CheckSet::new();
    let gens: Vec<(String, Element, Element)> = {
        let mut g = Vec::new();
        for i in 0..w.tuples().len() as u32 {
            let t = w.tuple(i);
            let j = v.tuple_index(t).ok_or_else(|| Error::Precondition(format!("{} is not in the target", fmt_tuple(t))))?;
            g.push((format!("e{}", fmt_tuple(t)), w.e(i), v.e(j)));
        }
        for k in 1..=w.rank() {
            g.push((format!("y{k}"), w.y(k)?, v.y(k)?));
        }
        let p0 = v.psi(0)?;
        if w.rank() >= 2 {
            g.push(("Psi0".into(), w.psi(0)?, Element::product(&[&p0, &v.psi(1)?, &p0])?));
        }
        for a in 1..w.rank() {
            g.push((format!("Psi{a}"), w.psi(a)?, v.psi(a)?));
        }
        g
    };
    // Generator images are computed by phi itself and checked against the
    // defining assignment.
    for (name, x, img) in &gens {
        check_eq(&mut set, "phi on generators", "Psi_0 -> psi_0 psi_1 psi_0, others to namesakes", &phi(x, v)?, img, || name.clone());
    }
    // The image of the unit must be the unit of the subalgebra it lands in.
    let mut e_delta = v.zero();
    for i in 0..w.tuples().len() as u32 {
        e_delta = e_delta.add(&v.e(v.tuple_index(w.tuple(i)).expect("checked above")))?;
    }
    check_eq(&mut set, "phi is unital onto its corner", "phi(1) = sum of e(i) over delta", &phi(&w.one(), v)?, &e_delta, String::new);

    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = random_element(w, &mut rng, 4)?;
        let b = random_element(w, &mut rng, 4)?;
        let lhs = phi(&a.mul(&b)?, v)?;
        let rhs = phi(&a, v)?.mul(&phi(&b, v)?)?;
        check_eq(&mut set, "phi is multiplicative", "phi(ab) = phi(a) phi(b)", &lhs, &rhs, || format!("a={a}, b={b}"));
        let fa = phi(&a, v)?;
        check_eq(&mut set, "image of phi is rho-fixed", "rho(phi(x)) = phi(x)", &rho(&fa), &fa, || format!("x={a}"));
    }
    // Basis correspondence and degrees.
    let (plus, minus) = fixed_point_basis_split(v, max_ydeg);
    let plus_in_delta: Vec<Term> =
        plus.into_iter().filter(|t| w.tuple_index(v.tuple(t.i)).is_some()).collect();
    let mut hit: BTreeMap<Term, usize> = BTreeMap::new();
    for t in w.basis_words(max_ydeg) {
        let x = w.basis_word(t.m, t.w, t.i);
        let img = phi(&x, v)?;
        let expect = phi_on_basis(w, &t, v);
        let ok = match expect {
            Some(bt) => {
                *hit.entry(bt).or_default() += 1;
                img == v.basis_word(bt.m, bt.w, bt.i)
            }
            None => false,
        };
        set.check("phi maps basis words to even basis words", "phi(y^m Psi_w e(i)) = y^m psi_w e(i)", ok, || {
            format!("word {} maps to {img}", w.fmt_term(&t))
        });
        let dv = img.degree();
        set.check("phi preserves degree", "deg phi(x) = deg x", dv == Some(w.term_degree(&t)), || {
            format!("word {}: {} vs {:?}", w.fmt_term(&t), w.term_degree(&t), dv)
        });
    }
    let bijective = hit.len() == plus_in_delta.len()
        && hit.values().all(|&c| c == 1)
        && plus_in_delta.iter().all(|t| hit.contains_key(t));
    set.check("phi is a bijection onto the even basis", "D basis <-> B+ basis over delta", bijective, || {
        format!("{} images for {} even words", hit.len(), plus_in_delta.len())
    });
    let minus_count = minus.iter().filter(|t| w.tuple_index(v.tuple(t.i)).is_some()).count();
    set.check("even and odd basis parts have equal size", "|B+| = |B-|", minus_count == plus_in_delta.len(), || {
        format!("{} even vs {minus_count} odd", plus_in_delta.len())
    });
    Ok(set)
}

/// Number of basis words with `|m| <= max_ydeg` in each degree.
pub fn graded_counts(alg: &Algebra, max_ydeg: u32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for t in alg.basis_words(max_ydeg) {
        *out.entry(alg.term_degree(&t)).or_default() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use crate::vqha::{beta_from_seeds, orbit_decompose, v_algebra};
    use crate::weyl::{orbit, split_beta};

    fn setup(q: &str, seed: &[i64]) -> (Algebra, Algebra) {
        let params = Params::parse(Field::Prime(13), "1", q).unwrap();
        let seed: Tuple = seed.iter().map(|&x| params.field().from_i64(x)).collect();
        let v = v_algebra(params.clone(), beta_from_seeds(std::slice::from_ref(&seed), Flavor::B)).unwrap();
        let w = w_algebra(params, orbit(&seed, Flavor::B).members).unwrap();
        (v, w)
    }

    #[test]
    fn d_relations_hold() {
        for (q, seed) in [("2", &[1i64, 4, 3][..]), ("5", &[1, 12, 5]), ("2", &[1, 1, 4]), ("2", &[2, 7, 3])] {
            let (_, w) = setup(q, seed);
            let set = relation_checks_d(&w).unwrap();
            assert!(set.all_passed(), "{:?}", set.failures());
        }
    }

    #[test]
    fn phi_is_an_embedding_onto_fixed_points() {
        for (q, seed) in [("2", &[1i64, 4][..]), ("5", &[1, 12]), ("2", &[1, 1])] {
            let (v, w) = setup(q, seed);
            let set = phi_checks(&w, &v, 40, 3, 1).unwrap();
            assert!(set.all_passed(), "{:?}", set.failures());
        }
    }

    #[test]
    fn psi0_square_cases() {
        // i_1^-1 = i_2 gives zero; i_1^-1 -> i_2 gives y_1 + y_2.
        let (_, w) = setup("2", &[1, 1]);
        let f = w.field();
        let i = w.tuple_index(&[f.one(), f.one()]).unwrap();
        let p0 = w.psi(0).unwrap();
        assert!(p0.mul(&p0).unwrap().mul(&w.e(i)).unwrap().is_zero());
        assert_eq!(w.term_degree(&Term { i, w: w.group().index_of(&crate::weyl::SignedPerm::generator(Flavor::D, 2, 0)).unwrap() as u32, m: crate::poly::Mono::ONE }), -2);
        let (_, w) = setup("2", &[1, 4]);
        let i = w.tuple_index(&[f.one(), f.from_i64(4)]).unwrap();
        let y12 = Poly::var(f, 0).add(&Poly::var(f, 1));
        assert_eq!(p0_sq(&w, i), w.e(i).poly_times(&y12));
    }

    fn p0_sq(w: &Algebra, i: u32) -> Element {
        let p0 = w.psi(0).unwrap();
        p0.mul(&p0).unwrap().mul(&w.e(i)).unwrap()
    }

    #[test]
    fn split_components_have_equal_graded_counts() {
        let params = Params::parse(Field::Prime(13), "1", "2").unwrap();
        let f = params.field();
        let seed: Tuple = vec![f.from_i64(2), f.from_i64(4)];
        let (plus, minus) = split_beta(&orbit(&seed, Flavor::B));
        assert!(!minus.is_empty());
        let wp = w_algebra(params.clone(), plus).unwrap();
        let wm = w_algebra(params, minus).unwrap();
        assert_eq!(graded_counts(&wp, 2), graded_counts(&wm, 2));
        let parts = orbit_decompose(&wp);
        assert_eq!(parts.len(), 1);
    }
}

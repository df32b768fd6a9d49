//! Randomized invariants of the rewriting engine, the polynomial
//! representation, the involution rho and the cyclotomic quotients.

use std::sync::OnceLock;

use proptest::prelude::*;
use qhbd_core::cyclotomic::{CycloAlgebra, MultiplicityMap, QuotientOptions};
use qhbd_core::engine::{Algebra, Element};
use qhbd_core::poly::{Mono, Poly};
use qhbd_core::polrep::{apply_element, PolVector};
use qhbd_core::scalars::{Field, Params};
use qhbd_core::vqha::{beta_from_seeds, rho, v_algebra};
use qhbd_core::weyl::{orbit, Flavor, SignedPerm, WeylGroup};
use qhbd_core::wqha::{phi, w_algebra};

fn params() -> Params {
    Params::parse(Field::new_prime(13).unwrap(), "1", "2").unwrap()
}

fn beta() -> Vec<Vec<qhbd_core::scalars::Scalar>> {
    let f = params().field();
    beta_from_seeds(&[vec![f.from_i64(1), f.from_i64(4)], vec![f.from_i64(2), f.from_i64(3)]], Flavor::B)
}

fn v() -> &'static Algebra {
    static V: OnceLock<Algebra> = OnceLock::new();
    V.get_or_init(|| v_algebra(params(), beta()).unwrap())
}

fn w() -> &'static Algebra {
    static W: OnceLock<Algebra> = OnceLock::new();
    W.get_or_init(|| w_algebra(params(), beta()).unwrap())
}

fn cyc() -> &'static CycloAlgebra {
    static C: OnceLock<CycloAlgebra> = OnceLock::new();
    C.get_or_init(|| {
        let f = params().field();
        let m = MultiplicityMap::new([(f.from_i64(1), 1), (f.from_i64(4), 1), (f.from_i64(10), 1)]).unwrap();
        CycloAlgebra::new(v(), &m, QuotientOptions::default()).unwrap()
    })
}

/// A short linear combination of basis words with `|m| <= 2`.
fn element(alg: &'static Algebra) -> impl Strategy<Value = Element> {
    let n = alg.rank();
    let words = alg.group().order() as u32;
    let tuples = alg.tuples().len() as u32;
    proptest::collection::vec((0..tuples, 0..words, proptest::collection::vec(0u32..2, n), -3i64..4), 1..4).prop_map(
        move |parts| {
            let f = alg.field();
            parts.iter().fold(alg.zero(), |acc, (i, w, exps, c)| {
                acc.add(&alg.basis_word(Mono::from_exps(exps), *w, *i).scale(&f.from_i64(*c))).unwrap()
            })
        },
    )
}

fn probe(alg: &'static Algebra) -> impl Strategy<Value = PolVector> {
    let tuples = alg.tuples().len() as u32;
    (0..tuples, proptest::collection::vec(0u32..3, alg.rank()))
        .prop_map(move |(i, exps)| PolVector::single(i, Poly::monomial(alg.field(), Mono::from_exps(&exps), alg.field().one())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_is_associative(a in element(v()), b in element(v()), c in element(v())) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn products_act_by_composition(a in element(v()), b in element(v()), x in probe(v())) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(apply_element(&ab, &x).unwrap(), apply_element(&a, &apply_element(&b, &x).unwrap()).unwrap());
    }

    #[test]
    fn rho_is_an_involutive_automorphism(a in element(v()), b in element(v())) {
        prop_assert_eq!(rho(&a.mul(&b).unwrap()), rho(&a).mul(&rho(&b)).unwrap());
        prop_assert_eq!(rho(&rho(&a)), a);
    }

    #[test]
    fn phi_is_multiplicative_with_rho_fixed_image(a in element(w()), b in element(w())) {
        let (pa, pb) = (phi(&a, v()).unwrap(), phi(&b, v()).unwrap());
        prop_assert_eq!(phi(&a.mul(&b).unwrap(), v()).unwrap(), pa.mul(&pb).unwrap());
        prop_assert_eq!(rho(&pa), pa);
    }

    #[test]
    fn quotient_product_is_associative_and_graded(a in 0usize..40, b in 0usize..40, c in 0usize..40) {
        let q = cyc();
        let basis = |k: usize| {
            let mut v = q.zero();
            v.insert(k, q.algebra().field().one());
            v
        };
        let (x, y, z) = (basis(a % q.dim()), basis(b % q.dim()), basis(c % q.dim()));
        prop_assert_eq!(q.mul(&q.mul(&x, &y), &z), q.mul(&x, &q.mul(&y, &z)));
        let xy = q.mul(&x, &y);
        if !xy.is_empty() {
            let d = q.degree_of(&xy);
            prop_assert_eq!(d, Some(q.basis_degree(a % q.dim()) + q.basis_degree(b % q.dim())));
        }
    }

    #[test]
    fn orbits_are_closed_and_sized_by_stabilizers(a in 1i64..13, b in 1i64..13, flavor in prop::sample::select(vec![Flavor::B, Flavor::D])) {
        let f = params().field();
        let seed = vec![f.from_i64(a), f.from_i64(b)];
        let o = orbit(&seed, flavor);
        let g = WeylGroup::new(flavor, 2).unwrap();
        let stab = g.elements().iter().filter(|w| w.act_tuple(&seed) == seed).count();
        prop_assert_eq!(o.members.len() * stab, g.order());
        for w in g.elements() {
            for t in &o.members {
                prop_assert!(o.members.contains(&w.act_tuple(t)));
            }
        }
    }

    #[test]
    fn tuple_action_is_a_group_action(i in 0usize..48, j in 0usize..48, a in 1i64..13, b in 1i64..13, c in 1i64..13) {
        let g = WeylGroup::new(Flavor::B, 3).unwrap();
        let (x, y): (&SignedPerm, &SignedPerm) = (g.element(i), g.element(j));
        let f = params().field();
        let t = vec![f.from_i64(a), f.from_i64(b), f.from_i64(c)];
        prop_assert_eq!(x.compose(y).act_tuple(&t), x.act_tuple(&y.act_tuple(&t)));
    }

    #[test]
    fn symmetrizations_bracket_the_map(entries in proptest::collection::btree_map(1i64..13, 0u32..3, 0..5)) {
        let f = params().field();
        let m = MultiplicityMap::new(entries.iter().map(|(&x, &k)| (f.from_i64(x), k))).unwrap();
        let (lo, hi) = (m.symmetrize_min(), m.symmetrize_max());
        prop_assert!(lo.is_symmetric() && hi.is_symmetric());
        prop_assert!(lo.dominated_by(&m) && m.dominated_by(&hi));
    }
}

//! Algebraic invariants checked on generated inputs.

mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use common::{free_ring, shuffled, strings, SeedableRng};
use flatcert::flatness::{fibered_product_ideal, graph_ideal, ideal_flat_at_point, AffineMorphism, PointSpec};
use flatcert::groebner::{divide, eliminate, is_groebner_basis, is_reduced, map_kernel, IdealHandle, RingMap};
use flatcert::homology::{free_resolution, homology_is_zero, tor, PresentedModule};
use flatcert::{Monomial, MonomialOrder, Polynomial, PresentedRing, Rational, RingSignature};

type RawTerm = (Vec<u32>, i64, i64);

fn raw_terms(n: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=3),
        0..=max_terms,
    )
}

fn build(sig: &Arc<RingSignature>, raw: &[RawTerm]) -> Polynomial {
    let terms = raw
        .iter()
        .map(|(e, num, den)| (Monomial::new(e).unwrap(), Rational::new((*num).into(), (*den).into())))
        .collect();
    Polynomial::from_terms(sig, terms).unwrap()
}

fn nonconstant(sig: &Arc<RingSignature>, raw: &[RawTerm]) -> Option<Polynomial> {
    let p = build(sig, raw);
    (!p.is_constant()).then_some(p)
}

fn ideal_gens(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<RawTerm>>> {
    prop::collection::vec(raw_terms(n, 3, 2), 1..=k)
}

fn gens_in(r: &PresentedRing, raw: &[Vec<RawTerm>]) -> Vec<Polynomial> {
    raw.iter().filter_map(|t| nonconstant(r.signature(), t)).collect()
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        (1usize..=2).prop_map(MonomialOrder::Elimination),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in raw_terms(3, 4, 3), b in raw_terms(3, 4, 3), c in raw_terms(3, 4, 3)) {
        let sig = RingSignature::grevlex(&["x", "y", "z"]).unwrap();
        let (f, g, h) = (build(&sig, &a), build(&sig, &b), build(&sig, &c));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(&sig), f.clone());
    }

    #[test]
    fn orders_are_total_and_multiplicative(
        ord in order(),
        a in prop::collection::vec(0u32..4, 3),
        b in prop::collection::vec(0u32..4, 3),
        c in prop::collection::vec(0u32..4, 3),
    ) {
        let (a, b, c) = (Monomial::new(&a).unwrap(), Monomial::new(&b).unwrap(), Monomial::new(&c).unwrap());
        let ab = ord.cmp(&a, &b);
        prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(ord.cmp(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()), ab);
        prop_assert_ne!(ord.cmp(&a.mul(&c).unwrap(), &a), Ordering::Less);
    }

    #[test]
    fn print_then_parse(ord in order(), a in raw_terms(3, 5, 4)) {
        let sig = RingSignature::new(&["x", "y", "z"], ord).unwrap();
        let f = build(&sig, &a);
        let r = PresentedRing::free(sig);
        prop_assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn coefficients_are_reduced(a in raw_terms(2, 4, 2), b in raw_terms(2, 4, 2)) {
        let sig = RingSignature::grevlex(&["x", "y"]).unwrap();
        let p = &build(&sig, &a) * &build(&sig, &b);
        for (_, c) in p.terms() {
            prop_assert!(*c.denom() > 0.into());
            prop_assert_eq!(c, &Rational::new(c.numer().clone(), c.denom().clone()));
            prop_assert!(*c.numer() != 0.into());
        }
    }

    #[test]
    fn division_contract(a in raw_terms(3, 5, 3), ds in ideal_gens(3, 3)) {
        let r = free_ring(3);
        let f = build(r.signature(), &a);
        let divisors: Vec<Polynomial> = ds.iter().map(|t| build(r.signature(), t)).filter(|g| !g.is_zero()).collect();
        let (q, rem) = divide(&f, &divisors, &r).unwrap();
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(&divisors) {
            acc = &acc + &(qi * gi);
        }
        prop_assert_eq!(acc, f);
        for (m, _) in rem.terms() {
            prop_assert!(divisors.iter().all(|g| !g.lead_monomial().unwrap().divides(m)));
        }
    }
}

// Exponents stay small here: implicitization and resolutions of random
// inputs of higher degree can take minutes.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn groebner_basis_is_independent_of_generator_order(gs in ideal_gens(3, 3), seed in any::<u64>()) {
        let r = free_ring(3);
        let gens = gens_in(&r, &gs);
        let reference = IdealHandle::new(&r, gens.clone()).unwrap();
        let basis = reference.reduced_groebner();
        prop_assert!(is_groebner_basis(basis).unwrap());
        prop_assert!(is_reduced(basis));
        let mut rng = common::Rng8::seed_from_u64(seed);
        let other = IdealHandle::new(&r, shuffled(&mut rng, &gens)).unwrap();
        prop_assert_eq!(strings(other.reduced_groebner()), strings(basis));
        for g in &gens {
            prop_assert!(reference.contains(g).unwrap());
        }
    }

    #[test]
    fn elimination_is_sound(gs in ideal_gens(3, 3)) {
        let r = free_ring(3);
        let ideal = IdealHandle::new(&r, gens_in(&r, &gs)).unwrap();
        let e = eliminate(&ideal, &["x"]).unwrap();
        prop_assert_eq!(e.ring().signature().variables(), ["y", "z"]);
        for g in e.generators() {
            let lifted = r.parse(&g.to_string()).unwrap();
            prop_assert!(ideal.contains(&lifted).unwrap(), "{} not in {}", g, ideal);
        }
    }

    #[test]
    fn kernel_generators_map_to_zero(imgs in prop::collection::vec(raw_terms(2, 2, 1), 3)) {
        let src = PresentedRing::free(RingSignature::grevlex(&["a", "b", "c"]).unwrap());
        let tgt = free_ring(2);
        let images = imgs.iter().map(|t| build(tgt.signature(), t)).collect();
        let f = RingMap::new(&src, &tgt, images).unwrap();
        let k = map_kernel(&f).unwrap();
        for g in k.generators() {
            prop_assert!(f.apply(g).unwrap().is_zero(), "{} survives {}", g, f);
        }
    }

    #[test]
    fn resolutions_are_exact_complexes(gs in prop::collection::vec(raw_terms(2, 3, 1), 1..=3)) {
        let r = free_ring(2);
        let ideal = IdealHandle::new(&r, gens_in(&r, &gs)).unwrap();
        let c = free_resolution(&PresentedModule::cyclic(&ideal), 3).unwrap();
        prop_assert!(c.is_complex().unwrap());
        for i in 1..c.length() {
            prop_assert!(homology_is_zero(&c, i).unwrap().is_zero, "H_{} of resolution of {}", i, ideal);
        }
    }

    #[test]
    fn tor0_vanishes_exactly_for_comaximal_ideals(a in ideal_gens(2, 2), b in ideal_gens(2, 2)) {
        let r = free_ring(2);
        let i = IdealHandle::new(&r, gens_in(&r, &a)).unwrap();
        let j = IdealHandle::new(&r, gens_in(&r, &b)).unwrap();
        let mut sum = i.generators().to_vec();
        sum.extend_from_slice(j.generators());
        let unit = IdealHandle::new(&r, sum).unwrap().is_unit();
        let t = tor(0, &PresentedModule::cyclic(&i), &PresentedModule::cyclic(&j)).unwrap();
        prop_assert_eq!(t.is_zero, unit);
    }

    #[test]
    fn fibered_products_are_symmetric_and_trimmed(
        fi in prop::collection::vec(raw_terms(2, 2, 2), 2),
        gi in prop::collection::vec(raw_terms(2, 2, 2), 2),
    ) {
        let base = free_ring(2);
        let x = PresentedRing::free(RingSignature::grevlex(&["u", "v"]).unwrap());
        let morph = |raw: &Vec<Vec<RawTerm>>| {
            let images = raw.iter().map(|t| build(x.signature(), t)).collect();
            AffineMorphism::new(RingMap::new(&base, &x, images).unwrap())
        };
        let (f, g) = (morph(&fi), morph(&gi));
        let fg = fibered_product_ideal(&f, &g).unwrap();
        let gf = fibered_product_ideal(&g, &f).unwrap();
        prop_assert!(fg.ideal.same_ideal(&fg.untrimmed).unwrap());
        prop_assert!(fg.ideal.generators().len() <= fg.untrimmed.generators().len());
        let ring = &fg.product.ring;
        let (left, right) = (fg.product.left.images(), fg.product.right.images());
        let swap: Vec<Polynomial> = (0..ring.nvars())
            .map(|i| {
                let v = Polynomial::variable(ring.signature(), i);
                match left.iter().position(|l| *l == v) {
                    Some(k) => right[k].clone(),
                    None => left[right.iter().position(|r| *r == v).unwrap()].clone(),
                }
            })
            .collect();
        let swap = RingMap::new(ring, ring, swap).unwrap();
        let swapped = fg.ideal.generators().iter().map(|p| swap.apply(p).unwrap()).collect();
        let swapped = IdealHandle::new(ring, swapped).unwrap();
        let other = IdealHandle::new(ring, gf.ideal.generators().to_vec()).unwrap();
        prop_assert!(swapped.same_ideal(&other).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn graphs_of_linear_automorphisms_are_flat(m in prop::array::uniform4(-4i64..=4)) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let base = free_ring(2);
        let x = PresentedRing::free(RingSignature::grevlex(&["u", "v"]).unwrap());
        let images = [format!("{}*u + {}*v", m[0], m[1]), format!("{}*u + {}*v", m[2], m[3])];
        let images: Vec<&str> = images.iter().map(String::as_str).collect();
        let f = AffineMorphism::new(RingMap::parse(&base, &x, &images).unwrap());
        let (g, prod) = graph_ideal(&f).unwrap();
        let p = PointSpec::parse(&base, &["x", "y"]).unwrap();
        prop_assert!(ideal_flat_at_point(&g, &p, Some(&prod.left)).unwrap().flat);
    }
}

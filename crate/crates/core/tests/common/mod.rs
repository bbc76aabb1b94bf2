//! Seeded generators shared by the integration targets.
#![allow(dead_code)]

use std::sync::Arc;

use flatcert::{Monomial, Polynomial, PresentedRing, Rational, RingSignature};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const NAMES: [&str; 6] = ["x", "y", "z", "w", "s", "t"];

pub fn free_ring(n: usize) -> PresentedRing {
    PresentedRing::free(RingSignature::grevlex(&NAMES[..n]).unwrap())
}

pub fn monomial(rng: &mut Rng8, n: usize, max_deg: u32) -> Monomial {
    let mut e = vec![0u32; n];
    let d = rng.gen_range(0..=max_deg);
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&e).unwrap()
}

pub fn coeff(rng: &mut Rng8) -> Rational {
    let mut num: i64 = rng.gen_range(-5..=5);
    if num == 0 {
        num = 1;
    }
    let den: i64 = if rng.gen_bool(0.2) { rng.gen_range(2..=3) } else { 1 };
    Rational::new(num.into(), den.into())
}

/// Up to `terms` random terms of degree at most `max_deg`.
pub fn poly(rng: &mut Rng8, sig: &Arc<RingSignature>, terms: usize, max_deg: u32) -> Polynomial {
    let n = sig.nvars();
    let k = rng.gen_range(1..=terms);
    let ts = (0..k).map(|_| (monomial(rng, n, max_deg), coeff(rng))).collect();
    Polynomial::from_terms(sig, ts).unwrap()
}

pub fn nonzero_poly(rng: &mut Rng8, sig: &Arc<RingSignature>, terms: usize, max_deg: u32) -> Polynomial {
    loop {
        let p = poly(rng, sig, terms, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A nonconstant polynomial with at most `terms` terms.
pub fn nonconstant_poly(rng: &mut Rng8, sig: &Arc<RingSignature>, terms: usize, max_deg: u32) -> Polynomial {
    loop {
        let p = poly(rng, sig, terms, max_deg);
        if !p.is_zero() && !p.is_constant() {
            return p;
        }
    }
}

/// A linear form with random nonzero integer coefficients on every variable.
pub fn linear_form(rng: &mut Rng8, sig: &Arc<RingSignature>) -> Polynomial {
    let n = sig.nvars();
    let ts = (0..n)
        .map(|i| {
            let mut c: i64 = rng.gen_range(-7..=7);
            if c == 0 {
                c = 1;
            }
            (Monomial::variable(n, i), Rational::from_integer(c.into()))
        })
        .collect();
    Polynomial::from_terms(sig, ts).unwrap()
}

pub fn shuffled<T: Clone>(rng: &mut Rng8, v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.shuffle(rng);
    out
}

pub fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

//! Gröbner-basis engine: division, reduced bases, ideal membership,
//! elimination and kernels of ring maps.

pub(crate) mod engine;
mod map;
pub(crate) mod vector;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use map::{map_kernel, RingMap};

use crate::error::{argument, dimension, Result};
use crate::poly::{merge_add, MonomialOrder, Polynomial, PresentedRing, Rational, RingSignature};
use vector::{from_poly, to_poly, DivisorList, ModuleOrder};

/// Multivariate division of `f` by `divisors` in order: the first divisor
/// whose leading term divides the current leading term is used.
///
/// Returns `(quotients, remainder)` with `f = sum q_i g_i + r` and no term of
/// `r` divisible by any leading term of the divisors.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    ring: &PresentedRing,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    ring.check_member(f)?;
    for g in divisors {
        ring.check_member(g)?;
        if g.is_zero() {
            return Err(argument("division by the zero polynomial"));
        }
    }
    let sig = ring.signature();
    let order = sig.order();
    let mut quotients: Vec<Vec<(crate::Monomial, Rational)>> = vec![Vec::new(); divisors.len()];
    let mut remainder = Vec::new();
    let mut p = f.terms().to_vec();
    while let Some((lm, lc)) = p.first().cloned() {
        let hit = divisors.iter().enumerate().find_map(|(i, g)| {
            let (gm, gc) = g.lead_term().unwrap();
            gm.quotient_of(&lm).map(|m| (i, m, &lc / gc))
        });
        match hit {
            Some((i, m, c)) => {
                quotients[i].push((m.clone(), c.clone()));
                let prod = divisors[i].mul_term(&c, &m)?;
                let minus = -Rational::from_integer(1.into());
                p = merge_add(order, &p, prod.terms(), Some(&minus));
            }
            None => {
                remainder.push(p.remove(0));
            }
        }
    }
    let quotients = quotients
        .into_iter()
        .map(|q| Polynomial::from_terms(sig, q))
        .collect::<Result<Vec<_>>>()?;
    Ok((quotients, Polynomial::from_sorted(sig, remainder)))
}

pub(crate) fn poly_order(sig: &RingSignature) -> ModuleOrder {
    ModuleOrder::pot(sig.order())
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the ambient
/// polynomial ring of `sig`, sorted by decreasing leading monomial.
pub(crate) fn basis_of(sig: &Arc<RingSignature>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let vs = gens.iter().filter(|g| !g.is_zero()).map(from_poly).collect();
    let basis = engine::groebner_basis(poly_order(sig), sig.nvars(), 1, vs, &[])?;
    Ok(basis.iter().map(|v| to_poly(v, sig)).collect())
}

/// Normal form of `f` modulo a Gröbner basis (any order of its elements).
pub(crate) fn normal_form_by(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    if f.is_zero() || basis.is_empty() {
        return Ok(f.clone());
    }
    let vs: Vec<_> = basis.iter().map(from_poly).collect();
    let divs = DivisorList::new(vs.iter().map(|v| v.as_slice()));
    let ord = poly_order(f.signature());
    let (r, _) = vector::reduce(ord, ord, from_poly(f), None, &divs)?;
    Ok(to_poly(&r, f.signature()))
}

impl PresentedRing {
    /// Reduced Gröbner basis of the defining ideal, computed once.
    pub fn defining_basis(&self) -> &[Polynomial] {
        let cell = self.basis_cell();
        if let Some(b) = cell.get() {
            return b;
        }
        let b = basis_of(self.signature(), self.defining_generators())
            .expect("exponent overflow while computing the defining ideal's basis");
        let _ = cell.set(b);
        cell.get().unwrap()
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_member(f)?;
        normal_form_by(f, self.defining_basis())
    }

    /// Whether `f` is zero in the presented ring.
    pub fn is_zero_element(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// An ideal in a presented ring, with its reduced Gröbner basis cached.
#[derive(Clone)]
pub struct IdealHandle {
    ring: PresentedRing,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl IdealHandle {
    pub fn new(ring: &PresentedRing, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check_member(g)?;
        }
        Ok(Self {
            ring: ring.clone(),
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn parse(ring: &PresentedRing, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The unique reduced Gröbner basis of the generators together with the
    /// ring's defining generators, in the ambient polynomial ring.
    pub fn reduced_groebner(&self) -> &[Polynomial] {
        if let Some(b) = self.basis.get() {
            return b;
        }
        let mut gens = self.generators.clone();
        gens.extend_from_slice(self.ring.defining_basis());
        let b = basis_of(self.ring.signature(), &gens)
            .expect("exponent overflow during Buchberger's algorithm");
        let _ = self.basis.set(b);
        self.basis.get().unwrap()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_member(f)?;
        normal_form_by(f, self.reduced_groebner())
    }

    /// Membership in the presented ring.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.reduced_groebner()
            .iter()
            .any(|g| g.is_nonzero_constant())
    }

    /// True when both ideals are equal in the presented ring (mutual
    /// membership of generators).
    pub fn same_ideal(&self, other: &IdealHandle) -> Result<bool> {
        if self.ring != other.ring {
            return Err(dimension("ideals live in different rings"));
        }
        Ok(self.reduced_groebner() == other.reduced_groebner())
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealHandle({self} in {})", self.ring)
    }
}

/// Free-standing form of [`IdealHandle::reduced_groebner`].
pub fn reduced_groebner(ideal: &IdealHandle) -> Vec<Polynomial> {
    ideal.reduced_groebner().to_vec()
}

pub fn contains(ideal: &IdealHandle, f: &Polynomial) -> Result<bool> {
    ideal.contains(f)
}

/// Ring order used on a subring obtained by dropping variables.
fn restricted_order(order: MonomialOrder) -> MonomialOrder {
    match order {
        MonomialOrder::Elimination(_) => MonomialOrder::Grevlex,
        o => o,
    }
}

/// Reduced basis of `gens` under an elimination order putting the
/// variables flagged in `drop` first; returns the basis elements free of
/// those variables, expressed over `keep_sig` (the remaining variables in
/// their original relative order).
pub(crate) fn eliminate_polys(
    sig: &Arc<RingSignature>,
    gens: &[Polynomial],
    drop: &[bool],
    keep_sig: &Arc<RingSignature>,
) -> Result<Vec<Polynomial>> {
    let n = sig.nvars();
    let dropped: Vec<usize> = (0..n).filter(|&i| drop[i]).collect();
    let kept: Vec<usize> = (0..n).filter(|&i| !drop[i]).collect();
    let mut names: Vec<String> = Vec::with_capacity(n);
    let mut to_elim = vec![0usize; n];
    for (new, &old) in dropped.iter().chain(kept.iter()).enumerate() {
        names.push(sig.variables()[old].clone());
        to_elim[old] = new;
    }
    let elim_sig = RingSignature::new(&names, MonomialOrder::Elimination(dropped.len()))?;
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.remap(&elim_sig, &to_elim)).collect();
    let basis = basis_of(&elim_sig, &moved)?;
    let k = dropped.len();
    let back: Vec<usize> = (0..n).map(|i| i.saturating_sub(k)).collect();
    Ok(basis
        .into_iter()
        .filter(|g| (0..k).all(|i| !g.uses_variable(i)))
        .map(|g| g.remap(keep_sig, &back))
        .collect())
}

/// `I ∩ QQ[remaining variables]`, as an ideal of the ring on the remaining
/// variables whose defining ideal is the elimination of the original one.
pub fn eliminate(ideal: &IdealHandle, drop: &[&str]) -> Result<IdealHandle> {
    let ring = ideal.ring();
    let sig = ring.signature();
    let mut flags = vec![false; sig.nvars()];
    for name in drop {
        let i = sig
            .index_of(name)
            .ok_or_else(|| argument(format!("`{name}` is not a variable of {ring}")))?;
        flags[i] = true;
    }
    if !flags.iter().any(|&f| f) {
        return IdealHandle::new(ring, ideal.reduced_groebner().to_vec());
    }
    let remaining: Vec<&String> = sig
        .variables()
        .iter()
        .zip(&flags)
        .filter(|(_, &f)| !f)
        .map(|(v, _)| v)
        .collect();
    let keep_sig = RingSignature::new(&remaining, restricted_order(sig.order()))?;
    let defining = if ring.is_free() {
        Vec::new()
    } else {
        eliminate_polys(sig, ring.defining_basis(), &flags, &keep_sig)?
    };
    let sub_ring = PresentedRing::new(keep_sig.clone(), defining)?;
    let mut gens = ideal.generators().to_vec();
    gens.extend_from_slice(ring.defining_basis());
    let gens = eliminate_polys(sig, &gens, &flags, &keep_sig)?;
    IdealHandle::new(&sub_ring, gens)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (fm, fc) = f.lead_term().ok_or_else(|| argument("zero polynomial"))?;
    let (gm, gc) = g.lead_term().ok_or_else(|| argument("zero polynomial"))?;
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &fm.quotient_of(&l).unwrap())?;
    let b = g.mul_term(&gc.recip(), &gm.quotient_of(&l).unwrap())?;
    a.try_sub(&b)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> Result<bool> {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let s = s_polynomial(f, g)?;
            if !normal_form_by(&s, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reduced: monic, no term of any element divisible by another's lead.
pub fn is_reduced(basis: &[Polynomial]) -> bool {
    basis.iter().enumerate().all(|(i, f)| {
        f.lead_coeff().is_some_and(|c| c == &Rational::from_integer(1.into()))
            && basis.iter().enumerate().all(|(j, g)| {
                i == j
                    || f.terms()
                        .iter()
                        .all(|(m, _)| !g.lead_monomial().unwrap().divides(m))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> PresentedRing {
        PresentedRing::free(RingSignature::grevlex(vars).unwrap())
    }

    fn polys(r: &PresentedRing, gens: &[&str]) -> Vec<Polynomial> {
        gens.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    fn strings(ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn division_examples() {
        let r = ring(&["x", "y"]);
        let (q, rem) = divide(&r.parse("x*y").unwrap(), &polys(&r, &["x"]), &r).unwrap();
        assert_eq!(strings(&q), ["y"]);
        assert!(rem.is_zero());
        let (q, rem) = divide(&r.parse("x^2 - y").unwrap(), &polys(&r, &["x"]), &r).unwrap();
        assert_eq!(strings(&q), ["x"]);
        assert_eq!(rem.to_string(), "-y");

        let r3 = ring(&["x", "y", "z"]);
        let i = IdealHandle::parse(&r3, &["x*y - z^2"]).unwrap();
        let (_, rem) = divide(&r3.parse("x*y").unwrap(), i.reduced_groebner(), &r3).unwrap();
        assert_eq!(rem.to_string(), "z^2");
    }

    #[test]
    fn division_rejects_zero_divisor() {
        let r = ring(&["x"]);
        assert!(matches!(
            divide(&r.parse("x").unwrap(), &[r.zero()], &r),
            Err(crate::Error::Argument(_))
        ));
    }

    #[test]
    fn division_identity_holds() {
        let r = ring(&["x", "y", "z"]);
        let f = r.parse("x^3*y - 2*x*y*z + z^3 - y").unwrap();
        let g = polys(&r, &["x*y - z", "y^2 - x", "z^2 + 1"]);
        let (q, rem) = divide(&f, &g, &r).unwrap();
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(&g) {
            acc = &acc + &(qi * gi);
        }
        assert_eq!(acc, f);
        for (m, _) in rem.terms() {
            assert!(g.iter().all(|gi| !gi.lead_monomial().unwrap().divides(m)));
        }
    }

    #[test]
    fn reduced_basis_examples() {
        let r = ring(&["x", "y", "u", "v"]);
        let i = IdealHandle::parse(&r, &["x - u", "y - u*v"]).unwrap();
        assert_eq!(strings(i.reduced_groebner()), ["u*v - y", "x - u"]);
        let i = IdealHandle::parse(&r, &["x"]).unwrap();
        assert_eq!(strings(i.reduced_groebner()), ["x"]);
        let i = IdealHandle::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(strings(i.reduced_groebner()), ["x^2", "x*y"]);
        let zero = IdealHandle::new(&r, vec![]).unwrap();
        assert!(zero.reduced_groebner().is_empty());
    }

    #[test]
    fn cyclic_three_basis_is_certified() {
        let r = ring(&["x", "y", "z"]);
        let i = IdealHandle::parse(&r, &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]).unwrap();
        let b = i.reduced_groebner();
        assert!(is_groebner_basis(b).unwrap());
        assert!(is_reduced(b));
        assert_eq!(strings(b), ["z^3 - 1", "y^2 + y*z + z^2", "x + y + z"]);
    }

    #[test]
    fn membership_examples() {
        let r = ring(&["x", "y"]);
        let i = IdealHandle::parse(&r, &["x", "y"]).unwrap();
        assert!(i.contains(&r.parse("x + y").unwrap()).unwrap());
        let r3 = ring(&["x", "y", "z"]);
        let i = IdealHandle::parse(&r3, &["x*y - z^2"]).unwrap();
        assert!(!i.contains(&r3.parse("x").unwrap()).unwrap());
        let r5 = ring(&["x", "y", "z", "u", "v"]);
        let chart = IdealHandle::parse(&r5, &["x - u", "z - u*v", "y - u*v^2"]).unwrap();
        assert!(chart.contains(&r5.parse("x*y - z^2").unwrap()).unwrap());
        let other = ring(&["a"]);
        assert!(chart.contains(&other.parse("a").unwrap()).is_err());
    }

    #[test]
    fn quotient_ring_membership() {
        let sig = RingSignature::grevlex(&["x", "y"]).unwrap();
        let q = PresentedRing::new(sig.clone(), vec![crate::poly::parse_polynomial("y^2", &sig).unwrap()]).unwrap();
        let i = IdealHandle::parse(&q, &["x"]).unwrap();
        assert_eq!(strings(i.reduced_groebner()), ["y^2", "x"]);
        assert!(i.contains(&q.parse("x*y + y^3").unwrap()).unwrap());
        assert!(!i.contains(&q.parse("y").unwrap()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["e", "g", "E", "G", "A"]);
        let i = IdealHandle::parse(&r, &["A - e*g", "E - e^2", "G - g^2"]).unwrap();
        let k = eliminate(&i, &["e", "g"]).unwrap();
        assert_eq!(k.ring().signature().variables(), ["E", "G", "A"]);
        assert_eq!(strings(k.generators()), ["E*G - A^2"]);

        let same = eliminate(&i, &[]).unwrap();
        assert!(same.same_ideal(&i).unwrap());

        // degree-first pair selection made this run for minutes
        let r3 = ring(&["x", "y", "z"]);
        let i = IdealHandle::parse(
            &r3,
            &[
                "4/3*x^2*y + 6*x*y^2 + 2*x*z^2",
                "-5/3*x^2*y*z + 3*x^2*z^2 - x*y*z",
                "2*x^2*y^2*z^2 - 3/2*y*z + y",
            ],
        )
        .unwrap();
        let k = eliminate(&i, &["x"]).unwrap();
        assert!(!k.generators().is_empty());
        for g in k.generators() {
            assert!(i.contains(&r3.parse(&g.to_string()).unwrap()).unwrap());
        }

        let r1 = ring(&["x"]);
        let i = IdealHandle::parse(&r1, &["x - 1"]).unwrap();
        let k = eliminate(&i, &["x"]).unwrap();
        assert!(k.generators().is_empty());
        assert_eq!(k.ring().nvars(), 0);
    }
}

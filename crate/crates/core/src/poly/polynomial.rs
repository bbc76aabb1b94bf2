use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::signature::RingSignature;
use super::Rational;
use crate::error::{dimension, Result};

pub type Term = (Monomial, Rational);

/// A sparse polynomial with exact rational coefficients. Terms are kept in
/// strictly decreasing order under the signature's monomial order and never
/// carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    sig: Arc<RingSignature>,
    terms: Vec<Term>,
}

/// Merge two sorted term lists into `a + factor * b`.
pub(crate) fn merge_add(
    order: MonomialOrder,
    a: &[Term],
    b: &[Term],
    factor: Option<&Rational>,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |c: &Rational| match factor {
        Some(f) => c * f,
        None => c.clone(),
    };
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), scaled(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + scaled(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), scaled(c))));
    out
}

fn normalize_terms(order: MonomialOrder, mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += c,
            _ => {
                if let Some(last) = out.last() {
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if out.last().is_some_and(|t| t.1.is_zero()) {
        out.pop();
    }
    out
}

impl Polynomial {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        Self {
            sig: sig.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(sig: &Arc<RingSignature>) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn constant(sig: &Arc<RingSignature>, c: Rational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(sig.nvars()), c)]
        };
        Self {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn variable(sig: &Arc<RingSignature>, index: usize) -> Self {
        Self {
            sig: sig.clone(),
            terms: vec![(Monomial::variable(sig.nvars(), index), Rational::one())],
        }
    }

    pub fn term(sig: &Arc<RingSignature>, mono: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(mono, c)] };
        Self {
            sig: sig.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: like terms are combined and zeros dropped.
    pub fn from_terms(sig: &Arc<RingSignature>, terms: Vec<Term>) -> Result<Self> {
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.nvars() != sig.nvars()) {
            return Err(dimension(format!(
                "monomial with {} exponents in a ring with {} variables",
                m.nvars(),
                sig.nvars()
            )));
        }
        Ok(Self {
            sig: sig.clone(),
            terms: normalize_terms(sig.order(), terms),
        })
    }

    /// Terms must already be sorted decreasingly and free of zeros.
    pub(crate) fn from_sorted(sig: &Arc<RingSignature>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| sig.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Self {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn uses_variable(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[index] > 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if RingSignature::same(&self.sig, &other.sig) {
            Ok(())
        } else {
            Err(dimension("polynomials belong to different rings"))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            sig: self.sig.clone(),
            terms: merge_add(self.sig.order(), &self.terms, &other.terms, None),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let minus = -Rational::one();
        Ok(Self {
            sig: self.sig.clone(),
            terms: merge_add(self.sig.order(), &self.terms, &other.terms, Some(&minus)),
        })
    }

    /// Exact product; fails on a signature mismatch or exponent overflow.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.sig));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb)?, ca * cb));
            }
        }
        Ok(Self {
            sig: self.sig.clone(),
            terms: normalize_terms(self.sig.order(), prods),
        })
    }

    /// `c * m * self`; order is preserved since monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Result<Self> {
        if c.is_zero() {
            return Ok(Self::zero(&self.sig));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mm, cc) in &self.terms {
            terms.push((mm.mul(m)?, cc * c));
        }
        Ok(Self {
            sig: self.sig.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Self {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut result = Self::one(&self.sig);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Substitute `images[i]` for variable `i`. All images must share one
    /// signature, which becomes the signature of the result.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<RingSignature>) -> Result<Self> {
        if images.len() != self.sig.nvars() {
            return Err(dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.sig.nvars()
            )));
        }
        for img in images {
            if !RingSignature::same(img.signature(), target) {
                return Err(dimension("substitution images live in different rings"));
            }
        }
        // power cache per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e])?;
                if t.is_zero() {
                    break;
                }
            }
            acc.extend(t.terms);
        }
        Ok(Self {
            sig: target.clone(),
            terms: normalize_terms(target.order(), acc),
        })
    }

    /// Move into `target`, sending variable `i` to variable `map[i]`.
    pub fn remap(&self, target: &Arc<RingSignature>, map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(target.nvars(), map), c.clone()))
            .collect();
        Self {
            sig: target.clone(),
            terms: normalize_terms(target.order(), terms),
        }
    }

    /// Same polynomial re-sorted under a signature with identical variables
    /// but possibly a different order.
    pub fn reorder(&self, target: &Arc<RingSignature>) -> Self {
        debug_assert_eq!(target.variables(), self.sig.variables());
        Self {
            sig: target.clone(),
            terms: normalize_terms(target.order(), self.terms.clone()),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: decreasing terms, `c*x^a*y^b`, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (name, &e) in self.sig.variables().iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Exact product of two polynomials over the same signature.
pub fn multiply(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_mul(g)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on a signature mismatch; use [`Polynomial::try_add`] otherwise.
    fn add(self, rhs: Self) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn sig(vars: &[&str]) -> Arc<RingSignature> {
        RingSignature::grevlex(vars).unwrap()
    }

    fn p(s: &str, sig: &Arc<RingSignature>) -> Polynomial {
        parse_polynomial(s, sig).unwrap()
    }

    #[test]
    fn product_examples() {
        let s = sig(&["x", "y", "z"]);
        assert_eq!(&p("x+y", &s) * &p("x-y", &s), p("x^2-y^2", &s));
        let f = p("x*y - 3/2*z + 1", &s);
        assert_eq!(&f * &Polynomial::one(&s), f);
        assert_eq!(
            &p("x*y-z^2", &s) * &p("x*y+z^2", &s),
            p("x^2*y^2 - z^4", &s)
        );
    }

    #[test]
    fn signature_mismatch() {
        let a = sig(&["x", "y"]);
        let b = sig(&["x", "z"]);
        assert!(matches!(
            multiply(&p("x", &a), &p("x", &b)),
            Err(crate::Error::Dimension(_))
        ));
    }

    #[test]
    fn canonical_printing() {
        let s = sig(&["x", "y", "z"]);
        assert_eq!(p("-z^2 + y*x", &s).to_string(), "x*y - z^2");
        assert_eq!(p("1 - x", &s).to_string(), "-x + 1");
        assert_eq!(p("(x - 1/2)^2", &s).to_string(), "x^2 - x + 1/4");
        assert_eq!(p("0*x", &s).to_string(), "0");
        assert_eq!(p("-3", &s).to_string(), "-3");
    }

    #[test]
    fn substitution() {
        let src = sig(&["x", "y", "z"]);
        let tgt = sig(&["u", "v"]);
        let images = vec![p("u", &tgt), p("u*v^2", &tgt), p("u*v", &tgt)];
        let f = p("x*y - z^2", &src);
        assert!(f.substitute(&images, &tgt).unwrap().is_zero());
        let g = p("x + 2*z", &src).substitute(&images, &tgt).unwrap();
        assert_eq!(g, p("u + 2*u*v", &tgt));
    }
}

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{dimension, Error, Result};

pub(crate) type Exponents = SmallVec<[u32; 12]>;

/// A power product `x_1^e_1 * ... * x_n^e_n`, stored as its exponent vector
/// together with the cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        let mut degree: u32 = 0;
        for &e in exps {
            degree = degree.checked_add(e).ok_or(Error::Overflow)?;
        }
        Ok(Self {
            exps: SmallVec::from_slice(exps),
            degree,
        })
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.exps.len() != other.exps.len() {
            return Err(dimension("monomials over different numbers of variables"));
        }
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::Overflow)?);
        }
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or(Error::Overflow)?;
        Ok(Self { exps, degree })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for e in &self.exps {
            exps.push(e.checked_mul(k).ok_or(Error::Overflow)?);
        }
        let degree = self.degree.checked_mul(k).ok_or(Error::Overflow)?;
        Ok(Self { exps, degree })
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exponents = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Self {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Reindex into a monomial over `nvars` variables, sending variable `i`
    /// to position `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut exps = Exponents::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Self {
            exps,
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// The monomial order attached to a ring signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// The first `k` variables form a block compared by grevlex; ties are
    /// broken by grevlex on the remaining variables.
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exps.len());
                match grevlex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => grevlex(&a.exps[k..], &b.exps[k..]),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elimination({k})"),
        }
    }
}

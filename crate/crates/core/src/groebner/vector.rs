//! Sparse vectors in a free module `R^n`, stored as a flat list of
//! `(position, monomial, coefficient)` terms in decreasing module order.
//! Ideals are the special case where every term sits in position 0.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, RingSignature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Rational,
}

pub(crate) type Vector = Vec<VTerm>;

/// Monomial order extended to module terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    /// Term-over-position when set; otherwise position-over-term with
    /// position 0 the largest.
    pub top: bool,
}

impl ModuleOrder {
    pub fn pot(mono: MonomialOrder) -> Self {
        Self { mono, top: false }
    }

    #[inline]
    pub fn cmp(&self, a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
        if self.top {
            match self.mono.cmp(a, b) {
                Ordering::Equal => b_pos.cmp(&a_pos),
                o => o,
            }
        } else {
            match b_pos.cmp(&a_pos) {
                Ordering::Equal => self.mono.cmp(a, b),
                o => o,
            }
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.cmp(a.pos, &a.mono, b.pos, &b.mono)
    }
}

pub(crate) fn sort_vector(ord: ModuleOrder, mut v: Vector) -> Vector {
    v.sort_by(|a, b| ord.cmp_terms(b, a));
    let mut out: Vector = Vec::with_capacity(v.len());
    for t in v {
        match out.last_mut() {
            Some(last) if last.pos == t.pos && last.mono == t.mono => last.coeff += t.coeff,
            _ => {
                if out.last().is_some_and(|l| l.coeff.is_zero()) {
                    out.pop();
                }
                out.push(t);
            }
        }
    }
    if out.last().is_some_and(|l| l.coeff.is_zero()) {
        out.pop();
    }
    out
}

/// Columns of polynomials to a single vector (entry `i` goes to position `i`).
pub(crate) fn from_entries(ord: ModuleOrder, entries: &[Polynomial]) -> Vector {
    let mut v = Vec::new();
    for (i, p) in entries.iter().enumerate() {
        for (m, c) in p.terms() {
            v.push(VTerm {
                pos: i as u32,
                mono: m.clone(),
                coeff: c.clone(),
            });
        }
    }
    if entries.len() <= 1 {
        // a single polynomial is already sorted
        return v;
    }
    sort_vector(ord, v)
}

pub(crate) fn from_poly(p: &Polynomial) -> Vector {
    from_entries(ModuleOrder::pot(p.signature().order()), std::slice::from_ref(p))
}

pub(crate) fn to_entries(v: &[VTerm], rank: usize, sig: &Arc<RingSignature>) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
    for t in v {
        buckets[t.pos as usize].push((t.mono.clone(), t.coeff.clone()));
    }
    buckets
        .into_iter()
        .map(|terms| Polynomial::from_terms(sig, terms).expect("same variable count"))
        .collect()
}

pub(crate) fn to_poly(v: &[VTerm], sig: &Arc<RingSignature>) -> Polynomial {
    to_entries(v, 1, sig).pop().unwrap()
}

pub(crate) fn unit(nvars: usize, pos: u32) -> Vector {
    vec![VTerm {
        pos,
        mono: Monomial::one(nvars),
        coeff: Rational::one(),
    }]
}

/// `a - c * m * b` for vectors in decreasing order.
pub(crate) fn sub_scaled(
    ord: ModuleOrder,
    a: &[VTerm],
    c: &Rational,
    m: &Monomial,
    b: &[VTerm],
) -> Result<Vector> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter();
    let mut next_b = || -> Result<Option<VTerm>> {
        match bi.next() {
            Some(t) => Ok(Some(VTerm {
                pos: t.pos,
                mono: t.mono.mul(m)?,
                coeff: -(&t.coeff * c),
            })),
            None => Ok(None),
        }
    };
    let mut cur = next_b()?;
    while let Some(bt) = cur.take() {
        if i >= a.len() {
            out.push(bt);
            cur = next_b()?;
            continue;
        }
        match ord.cmp_terms(&a[i], &bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                cur = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                cur = next_b()?;
            }
            Ordering::Equal => {
                let s = &a[i].coeff + &bt.coeff;
                if !s.is_zero() {
                    out.push(VTerm {
                        pos: bt.pos,
                        mono: bt.mono,
                        coeff: s,
                    });
                }
                i += 1;
                cur = next_b()?;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}

/// Same as [`sub_scaled`] but `a` and the result are stored in increasing
/// order (lead term last), while `b` is in decreasing order.
fn sub_scaled_rev(
    ord: ModuleOrder,
    a: &[VTerm],
    c: &Rational,
    m: &Monomial,
    b: &[VTerm],
) -> Result<Vector> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = b.len();
    let mut bt: Option<VTerm> = None;
    loop {
        if bt.is_none() && j > 0 {
            j -= 1;
            let t = &b[j];
            bt = Some(VTerm {
                pos: t.pos,
                mono: t.mono.mul(m)?,
                coeff: -(&t.coeff * c),
            });
        }
        let Some(t) = bt.take() else { break };
        if i >= a.len() {
            out.push(t);
            continue;
        }
        match ord.cmp_terms(&a[i], &t) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
                bt = Some(t);
            }
            Ordering::Greater => out.push(t),
            Ordering::Equal => {
                let s = &a[i].coeff + &t.coeff;
                if !s.is_zero() {
                    out.push(VTerm {
                        pos: t.pos,
                        mono: t.mono,
                        coeff: s,
                    });
                }
                i += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    Ok(out)
}

pub(crate) fn scale(v: &mut [VTerm], c: &Rational) {
    for t in v {
        t.coeff *= c;
    }
}

pub(crate) fn mul_term(v: &[VTerm], c: &Rational, m: &Monomial) -> Result<Vector> {
    v.iter()
        .map(|t| {
            Ok(VTerm {
                pos: t.pos,
                mono: t.mono.mul(m)?,
                coeff: &t.coeff * c,
            })
        })
        .collect()
}

/// A reducer: given a lead `(pos, mono)`, return a divisor vector whose lead
/// term divides it, plus its tracked representation when tracking.
pub(crate) trait Divisors<'a> {
    fn find(&self, pos: u32, mono: &Monomial) -> Option<(&'a [VTerm], Option<&'a [VTerm]>)>;
}

/// Full reduction of `v`: repeatedly cancel every term divisible by a
/// divisor's leading term. When `repr` is given, it is updated alongside so
/// that `v - (result) = sum of q_k g_k` stays mirrored as
/// `repr - (result repr) = sum of q_k t_k`.
pub(crate) fn reduce<'a, D: Divisors<'a>>(
    ord: ModuleOrder,
    repr_ord: ModuleOrder,
    v: Vector,
    mut repr: Option<Vector>,
    divisors: &D,
) -> Result<(Vector, Option<Vector>)> {
    let mut p: Vector = v;
    p.reverse();
    let mut done: Vector = Vec::new();
    while let Some(lead) = p.last() {
        match divisors.find(lead.pos, &lead.mono) {
            Some((g, g_repr)) => {
                let g_lead = &g[0];
                let q = &lead.coeff / &g_lead.coeff;
                let m = g_lead
                    .mono
                    .quotient_of(&lead.mono)
                    .expect("divisor lead divides term");
                if let (Some(r), Some(gr)) = (repr.as_mut(), g_repr) {
                    if !gr.is_empty() {
                        *r = sub_scaled(repr_ord, r, &q, &m, gr)?;
                    }
                }
                let len = p.len();
                // drop the lead (it cancels exactly) before merging
                p.truncate(len - 1);
                p = sub_scaled_rev(ord, &p, &q, &m, &g[1..])?;
            }
            None => done.push(p.pop().unwrap()),
        }
    }
    Ok((done, repr))
}

/// Divide by the leading coefficient, keeping `repr` in step.
pub(crate) fn make_monic(v: &mut Vector, repr: Option<&mut Vector>) {
    if let Some(lead) = v.first() {
        if !lead.coeff.is_one() {
            let inv = lead.coeff.recip();
            scale(v, &inv);
            if let Some(r) = repr {
                scale(r, &inv);
            }
        }
    }
}

/// A plain list of divisors with lookup by position.
pub(crate) struct DivisorList<'a> {
    by_pos: std::collections::HashMap<u32, Vec<&'a [VTerm]>>,
}

impl<'a> DivisorList<'a> {
    pub fn new(vectors: impl IntoIterator<Item = &'a [VTerm]>) -> Self {
        let mut by_pos: std::collections::HashMap<u32, Vec<&'a [VTerm]>> = Default::default();
        for v in vectors {
            if let Some(l) = v.first() {
                by_pos.entry(l.pos).or_default().push(v);
            }
        }
        Self { by_pos }
    }
}

impl<'a> Divisors<'a> for DivisorList<'a> {
    fn find(&self, pos: u32, mono: &Monomial) -> Option<(&'a [VTerm], Option<&'a [VTerm]>)> {
        self.by_pos
            .get(&pos)?
            .iter()
            .find(|g| g[0].mono.divides(mono))
            .map(|g| (*g, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    fn t(pos: u32, e: &[u32], c: i64) -> VTerm {
        VTerm {
            pos,
            mono: m(e),
            coeff: Rational::from_integer(c.into()),
        }
    }

    #[test]
    fn pot_and_top_orders() {
        let pot = ModuleOrder::pot(MonomialOrder::Grevlex);
        let top = ModuleOrder {
            mono: MonomialOrder::Grevlex,
            top: true,
        };
        let a = t(0, &[0, 1], 1);
        let b = t(1, &[2, 0], 1);
        assert_eq!(pot.cmp_terms(&a, &b), Ordering::Greater);
        assert_eq!(top.cmp_terms(&a, &b), Ordering::Less);
    }

    #[test]
    fn sub_scaled_cancels() {
        let ord = ModuleOrder::pot(MonomialOrder::Grevlex);
        // a = x^2 e0 + y e1 ; b = x e0 + 1 e1 ; a - x*b = y e1 - x e1
        let a = vec![t(0, &[2, 0], 1), t(1, &[0, 1], 1)];
        let b = vec![t(0, &[1, 0], 1), t(1, &[0, 0], 1)];
        let r = sub_scaled(ord, &a, &Rational::one(), &m(&[1, 0]), &b).unwrap();
        assert_eq!(r, vec![t(1, &[1, 0], -1), t(1, &[0, 1], 1)]);
    }
}

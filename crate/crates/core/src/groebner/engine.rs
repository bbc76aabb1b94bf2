//! Buchberger's algorithm over free modules with Gebauer–Möller pair
//! pruning, optional tracking of representations in terms of the input
//! generators, and Schreyer syzygy extraction.
//!
//! Computations over `R/I0` adjoin `g * e_p` for every `g` in the reduced
//! basis of `I0` and every position `p`; these "quotient elements" are never
//! removed from the active set and are filtered from reported bases.

use std::collections::BTreeSet;

use super::vector::{
    make_monic, mul_term, reduce, sub_scaled, unit, Divisors, ModuleOrder, VTerm, Vector,
};
use crate::error::Result;
use crate::poly::Monomial;

struct Element {
    v: Vector,
    pos: u32,
    lead: Monomial,
    /// every term sits in the leading position
    single: bool,
    quotient: bool,
    repr: Vector,
}

pub(crate) struct Engine {
    ord: ModuleOrder,
    repr_ord: ModuleOrder,
    nvars: usize,
    track: bool,
    elems: Vec<Element>,
    /// active element indices, per position
    active: Vec<Vec<usize>>,
    /// pending S-pairs `(i, j)` with `i < j`
    pairs: BTreeSet<(usize, usize)>,
    inputs: Vec<Vector>,
}

struct ActiveDivisors<'e> {
    engine: &'e Engine,
    skip: Option<usize>,
}

impl<'e> Divisors<'e> for ActiveDivisors<'e> {
    fn find(&self, pos: u32, mono: &Monomial) -> Option<(&'e [VTerm], Option<&'e [VTerm]>)> {
        let e = self.engine;
        let list = e.active.get(pos as usize)?;
        list.iter()
            .copied()
            .filter(|&k| Some(k) != self.skip)
            .map(|k| &e.elems[k])
            .find(|el| el.lead.divides(mono))
            .map(|el| (el.v.as_slice(), Some(el.repr.as_slice())))
    }
}

impl Engine {
    /// `quotient` holds the reduced basis of the defining ideal as
    /// position-0 vectors; it is replicated at each of the `rank` positions.
    pub fn new(
        ord: ModuleOrder,
        nvars: usize,
        rank: usize,
        quotient: &[Vector],
        track: bool,
    ) -> Self {
        let mut e = Self {
            ord,
            repr_ord: ModuleOrder::pot(ord.mono),
            nvars,
            track,
            elems: Vec::new(),
            active: vec![Vec::new(); rank.max(1)],
            pairs: BTreeSet::new(),
            inputs: Vec::new(),
        };
        for p in 0..rank as u32 {
            for q in quotient {
                let v: Vector = q
                    .iter()
                    .map(|t| VTerm {
                        pos: p,
                        mono: t.mono.clone(),
                        coeff: t.coeff.clone(),
                    })
                    .collect();
                let idx = e.push(v, Vec::new(), true);
                e.active[p as usize].push(idx);
            }
        }
        e
    }

    fn push(&mut self, v: Vector, repr: Vector, quotient: bool) -> usize {
        let lead = &v[0];
        let pos = lead.pos;
        let single = v.iter().all(|t| t.pos == pos);
        self.elems.push(Element {
            pos,
            lead: lead.mono.clone(),
            single,
            quotient,
            v,
            repr,
        });
        if self.active.len() <= pos as usize {
            self.active.resize(pos as usize + 1, Vec::new());
        }
        self.elems.len() - 1
    }

    fn reduce(&self, v: Vector, repr: Vector, skip: Option<usize>) -> Result<(Vector, Vector)> {
        let divs = ActiveDivisors { engine: self, skip };
        let repr = if self.track { Some(repr) } else { None };
        let (r, repr) = reduce(self.ord, self.repr_ord, v, repr, &divs)?;
        Ok((r, repr.unwrap_or_default()))
    }

    /// Reduce and insert an input generator; returns false if it reduced to 0.
    pub fn add_generator(&mut self, v: Vector) -> Result<bool> {
        let index = self.inputs.len() as u32;
        self.inputs.push(v.clone());
        let repr = if self.track {
            unit(self.nvars, index)
        } else {
            Vec::new()
        };
        let (mut r, mut repr) = self.reduce(v, repr, None)?;
        if r.is_empty() {
            return Ok(false);
        }
        make_monic(&mut r, Some(&mut repr));
        let k = self.push(r, repr, false);
        self.update(k)?;
        Ok(true)
    }

    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.elems[i].lead.lcm(&self.elems[j].lead)
    }

    fn coprime(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        a.single && b.single && a.lead.is_coprime(&b.lead)
    }

    fn update(&mut self, h: usize) -> Result<()> {
        let pos = self.elems[h].pos as usize;
        let h_lead = self.elems[h].lead.clone();
        let candidates: Vec<usize> = self.active[pos].clone();
        let lcms: Vec<Monomial> = candidates.iter().map(|&g| self.lcm(h, g)).collect();

        let mut kept: Vec<usize> = Vec::new(); // indices into candidates
        for (ci, &g) in candidates.iter().enumerate() {
            let coprime = self.coprime(h, g);
            let dominated = || {
                candidates[ci + 1..]
                    .iter()
                    .enumerate()
                    .any(|(k, _)| lcms[ci + 1 + k].divides(&lcms[ci]))
                    || kept.iter().any(|&k| lcms[k].divides(&lcms[ci]))
            };
            if coprime || !dominated() {
                kept.push(ci);
            }
        }

        // chain criterion on old pairs in this position
        let elems = &self.elems;
        self.pairs.retain(|&(i, j)| {
            if elems[i].pos as usize != pos {
                return true;
            }
            let lij = elems[i].lead.lcm(&elems[j].lead);
            !(h_lead.divides(&lij)
                && elems[i].lead.lcm(&h_lead) != lij
                && elems[j].lead.lcm(&h_lead) != lij)
        });

        for ci in kept {
            let g = candidates[ci];
            if self.coprime(h, g) {
                continue;
            }
            let (i, j) = if g < h { (g, h) } else { (h, g) };
            self.pairs.insert((i, j));
        }

        let elems = &self.elems;
        self.active[pos].retain(|&g| elems[g].quotient || !h_lead.divides(&elems[g].lead));
        self.active[pos].push(h);
        self.interreduce(h)
    }

    /// Reduce the tails of active elements by the new element `h`; leads are
    /// unchanged, so the pending pairs stay valid.
    fn interreduce(&mut self, h: usize) -> Result<()> {
        let pos = self.elems[h].pos;
        let h_lead = self.elems[h].lead.clone();
        let stale: Vec<usize> = self.active[pos as usize]
            .iter()
            .copied()
            .filter(|&g| {
                let el = &self.elems[g];
                g != h && !el.quotient && el.v[1..].iter().any(|t| t.pos == pos && h_lead.divides(&t.mono))
            })
            .collect();
        for g in stale {
            let v = self.elems[g].v.clone();
            let repr = std::mem::take(&mut self.elems[g].repr);
            let (r, repr) = self.reduce(v, repr, Some(g))?;
            let el = &mut self.elems[g];
            el.single = r.iter().all(|t| t.pos == el.pos);
            el.v = r;
            el.repr = repr;
        }
        Ok(())
    }

    /// Normal strategy: the pair whose lcm is smallest in the module order.
    /// Selecting by degree instead blows up under elimination orders.
    fn next_pair(&mut self) -> Option<(usize, usize)> {
        let best = *self.pairs.iter().min_by(|a, b| {
            let (la, lb) = (self.lcm(a.0, a.1), self.lcm(b.0, b.1));
            self.ord.cmp(self.elems[a.0].pos, &la, self.elems[b.0].pos, &lb).then(a.cmp(b))
        })?;
        self.pairs.remove(&best);
        Some(best)
    }

    fn spoly(&self, i: usize, j: usize) -> Result<(Vector, Vector)> {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let l = a.lead.lcm(&b.lead);
        let ma = a.lead.quotient_of(&l).unwrap();
        let mb = b.lead.quotient_of(&l).unwrap();
        let one = crate::poly::Rational::from_integer(1.into());
        // both elements are monic
        let av = mul_term(&a.v, &one, &ma)?;
        let s = sub_scaled(self.ord, &av, &one, &mb, &b.v)?;
        let repr = if self.track {
            let ar = mul_term(&a.repr, &one, &ma)?;
            sub_scaled(self.repr_ord, &ar, &one, &mb, &b.repr)?
        } else {
            Vec::new()
        };
        Ok((s, repr))
    }

    pub fn run(&mut self) -> Result<()> {
        while let Some((i, j)) = self.next_pair() {
            let (s, repr) = self.spoly(i, j)?;
            let (mut r, mut repr) = self.reduce(s, repr, None)?;
            if r.is_empty() {
                continue;
            }
            make_monic(&mut r, Some(&mut repr));
            let k = self.push(r, repr, false);
            self.update(k)?;
        }
        Ok(())
    }

    fn active_real(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .active
            .iter()
            .flatten()
            .copied()
            .filter(|&k| !self.elems[k].quotient)
            .collect();
        out.sort_by(|&a, &b| {
            let (x, y) = (&self.elems[a], &self.elems[b]);
            self.ord.cmp(y.pos, &y.lead, x.pos, &x.lead)
        });
        out
    }

    /// Reduced basis, excluding quotient elements, in decreasing lead order.
    pub fn reduced_basis(&self) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        for k in self.active_real() {
            let (mut r, _) = self.reduce(self.elems[k].v.clone(), Vec::new(), Some(k))?;
            make_monic(&mut r, None);
            out.push(r);
        }
        Ok(out)
    }

    /// Generators of the syzygy module of the input generators, modulo the
    /// quotient elements. Requires tracking.
    pub fn syzygies(&self) -> Result<Vec<Vector>> {
        assert!(self.track, "syzygies need tracked representations");
        let mut out: Vec<Vector> = Vec::new();
        for list in &self.active {
            for (ai, &a) in list.iter().enumerate() {
                for &b in &list[ai + 1..] {
                    let (ea, eb) = (&self.elems[a], &self.elems[b]);
                    if ea.quotient && eb.quotient {
                        continue;
                    }
                    let l = ea.lead.lcm(&eb.lead);
                    let redundant = list.iter().any(|&k| {
                        k != a
                            && k != b
                            && self.elems[k].lead.divides(&l)
                            && ea.lead.lcm(&self.elems[k].lead) != l
                            && eb.lead.lcm(&self.elems[k].lead) != l
                    });
                    if redundant {
                        continue;
                    }
                    let (s, repr) = self.spoly(a, b)?;
                    let (r, repr) = self.reduce(s, repr, None)?;
                    debug_assert!(r.is_empty(), "S-vector of a Gröbner basis must reduce to 0");
                    if !repr.is_empty() {
                        out.push(repr);
                    }
                }
            }
        }
        for (c, v) in self.inputs.iter().enumerate() {
            let (r, repr) = self.reduce(v.clone(), unit(self.nvars, c as u32), None)?;
            debug_assert!(r.is_empty());
            if !repr.is_empty() {
                out.push(repr);
            }
        }
        Ok(out)
    }
}

/// Representation tracking is skipped when it is not needed.
pub(crate) fn groebner_basis(
    ord: ModuleOrder,
    nvars: usize,
    rank: usize,
    generators: Vec<Vector>,
    quotient: &[Vector],
) -> Result<Vec<Vector>> {
    let mut e = Engine::new(ord, nvars, rank, quotient, false);
    for g in generators {
        if !g.is_empty() {
            e.add_generator(g)?;
        }
    }
    e.run()?;
    e.reduced_basis()
}

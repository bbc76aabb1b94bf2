use std::collections::HashMap;

use super::module::{Matrix, PresentedModule};
use super::syzygy::syzygy_matrix;
use crate::error::{argument, dimension, Result};
use crate::poly::{Polynomial, PresentedRing};

/// `F_l -> ... -> F_1 -> F_0` given by its differentials `d_1, ..., d_l`,
/// where `d_k : F_k -> F_{k-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: PresentedRing,
    ranks: Vec<usize>,
    differentials: Vec<Matrix>,
    complete: bool,
}

impl ChainComplex {
    /// `rank0` is the rank of `F_0`; needed when there are no differentials.
    pub fn new(ring: &PresentedRing, rank0: usize, differentials: Vec<Matrix>, complete: bool) -> Result<Self> {
        let mut ranks = vec![rank0];
        for (k, d) in differentials.iter().enumerate() {
            if d.ring() != ring {
                return Err(argument(format!("differential d{} lives over another ring", k + 1)));
            }
            if d.rows() != ranks[k] {
                return Err(dimension(format!(
                    "d{} has {} rows but F{} has rank {}",
                    k + 1,
                    d.rows(),
                    k,
                    ranks[k]
                )));
            }
            ranks.push(d.cols());
        }
        Ok(Self {
            ring: ring.clone(),
            ranks,
            differentials,
            complete,
        })
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// Rank of `F_k`; zero beyond the last module.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_k` for `1 <= k <= length`.
    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        k.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// True when the complex is known to stop here (the next module is 0).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Every composite `d_k d_{k+1}` vanishes in the presented ring.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.differentials.windows(2) {
            if !w[0].mul(&w[1])?.is_zero_in_ring()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Free resolution of `m` up to `length` steps, each step the full syzygy
/// matrix of the previous one. Stops early, marked complete, when a step has
/// no syzygies.
pub fn free_resolution(m: &PresentedModule, length: usize) -> Result<ChainComplex> {
    if length == 0 {
        return Err(argument("resolution length must be at least 1"));
    }
    let ring = m.ring();
    let mut cols = Vec::new();
    for c in m.relation_matrix().columns() {
        let mut nonzero = false;
        for e in c {
            if !ring.is_zero_element(e)? {
                nonzero = true;
                break;
            }
        }
        if nonzero {
            cols.push(c.clone());
        }
    }
    if cols.is_empty() {
        return ChainComplex::new(ring, m.rank(), Vec::new(), true);
    }
    let mut ds = vec![Matrix::from_columns(ring, m.rank(), cols)?];
    let mut complete = false;
    while ds.len() < length {
        let next = syzygy_matrix(ds.last().unwrap())?;
        if next.cols() == 0 {
            complete = true;
            break;
        }
        ds.push(next);
    }
    ChainComplex::new(ring, m.rank(), ds, complete)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex on `seq`. `F_k` has basis the `k`-subsets of the
/// sequence in lexicographic order and
/// `d(e_S) = sum_j (-1)^j f_{s_j} e_{S - s_j}`.
pub fn koszul(seq: &[Polynomial], ring: &PresentedRing) -> Result<ChainComplex> {
    if seq.is_empty() {
        return Err(argument("Koszul complex of an empty sequence"));
    }
    for f in seq {
        ring.check_member(f)?;
    }
    let n = seq.len();
    let mut ds = Vec::with_capacity(n);
    for k in 1..=n {
        let rows = subsets(n, k - 1);
        let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let columns = subsets(n, k)
            .into_iter()
            .map(|s| {
                let mut col = vec![ring.zero(); rows.len()];
                for j in 0..s.len() {
                    let mut face = s.clone();
                    let v = face.remove(j);
                    let f = &seq[v];
                    col[index[face.as_slice()]] = if j % 2 == 0 { f.clone() } else { -f };
                }
                col
            })
            .collect();
        ds.push(Matrix::from_columns(ring, rows.len(), columns)?);
    }
    ChainComplex::new(ring, 1, ds, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::IdealHandle;
    use crate::poly::{parse_polynomial, RingSignature};

    fn free(vars: &[&str]) -> PresentedRing {
        PresentedRing::free(RingSignature::grevlex(vars).unwrap())
    }

    fn polys(r: &PresentedRing, ps: &[&str]) -> Vec<Polynomial> {
        ps.iter().map(|p| r.parse(p).unwrap()).collect()
    }

    fn strings(m: &Matrix) -> Vec<Vec<String>> {
        m.columns()
            .iter()
            .map(|c| c.iter().map(|e| e.to_string()).collect())
            .collect()
    }

    #[test]
    fn koszul_two_matches_display() {
        let r = free(&["x", "y"]);
        let k = koszul(&polys(&r, &["x", "y"]), &r).unwrap();
        assert_eq!(k.ranks(), [1, 2, 1]);
        assert_eq!(strings(&k.differentials()[0]), [["x"], ["y"]]);
        assert_eq!(strings(&k.differentials()[1]), [["-y", "x"]]);
        assert!(k.is_complex().unwrap());
    }

    #[test]
    fn koszul_ranks_are_binomial() {
        let r = free(&["a", "b", "c", "d"]);
        let k = koszul(&polys(&r, &["a", "b", "c", "d"]), &r).unwrap();
        assert_eq!(k.ranks(), [1, 4, 6, 4, 1]);
        assert!(k.is_complex().unwrap());
    }

    #[test]
    fn resolution_of_principal_quotient() {
        let r = free(&["x"]);
        let m = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x"]).unwrap());
        let c = free_resolution(&m, 3).unwrap();
        assert_eq!(c.length(), 1);
        assert!(c.is_complete());
    }

    #[test]
    fn resolution_matches_koszul_ranks() {
        let r = free(&["x", "y"]);
        let m = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x", "y"]).unwrap());
        let c = free_resolution(&m, 4).unwrap();
        assert_eq!(c.ranks(), [1, 2, 1]);
        assert!(c.is_complete());
        assert!(c.is_complex().unwrap());
    }

    #[test]
    fn infinite_resolution_over_dual_numbers() {
        let sig = RingSignature::grevlex(&["x"]).unwrap();
        let r = PresentedRing::new(sig.clone(), vec![parse_polynomial("x^2", &sig).unwrap()]).unwrap();
        let m = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x"]).unwrap());
        let c = free_resolution(&m, 3).unwrap();
        assert_eq!(c.length(), 3);
        assert!(!c.is_complete());
        for d in c.differentials() {
            assert_eq!(strings(d), [["x"]]);
        }
    }
}

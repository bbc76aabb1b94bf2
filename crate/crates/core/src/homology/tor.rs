use std::collections::HashSet;

use super::complex::{free_resolution, ChainComplex};
use super::module::{Matrix, ModuleElement, PresentedModule, SubmodulePresentation};
use super::syzygy::syzygy_matrix;
use crate::error::{argument, Result};
use crate::poly::{Polynomial, PresentedRing};

/// Zero/nonzero verdict for a homology module, with generators of the
/// surviving classes.
#[derive(Clone, Debug)]
pub struct TorReport {
    pub index: usize,
    pub is_zero: bool,
    pub witness_generators: Vec<ModuleElement>,
}

impl TorReport {
    fn new(index: usize, witnesses: Vec<ModuleElement>) -> Self {
        Self {
            index,
            is_zero: witnesses.is_empty(),
            witness_generators: witnesses,
        }
    }
}

/// `d (x) id_n`: the column for `(k, a)` is `sum_j d[j][k] e_(j, a)`, with
/// the pair `(j, a)` stored at index `j * n + a`.
fn tensor_identity(d: &Matrix, n: usize) -> Vec<Vec<Polynomial>> {
    let ring = d.ring();
    let mut out = Vec::with_capacity(d.cols() * n);
    for col in d.columns() {
        for a in 0..n {
            let mut v = vec![ring.zero(); d.rows() * n];
            for (j, e) in col.iter().enumerate() {
                v[j * n + a] = e.clone();
            }
            out.push(v);
        }
    }
    out
}

/// The relations of `N` imposed in each of `copies` blocks of `R^n`.
fn relation_blocks(ring: &PresentedRing, copies: usize, n: usize, rel: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let mut out = Vec::with_capacity(copies * rel.len());
    for j in 0..copies {
        for r in rel {
            let mut v = vec![ring.zero(); copies * n];
            v[j * n..(j + 1) * n].clone_from_slice(r);
            out.push(v);
        }
    }
    out
}

/// Homology at `F_i (x) N` of a complex tensored with `N = R^n / rel`:
/// generators of `ker(d_i (x) N)` reduced modulo `im(d_{i+1} (x) N)`.
/// Returns the nonzero reductions.
fn tensored_homology(c: &ChainComplex, i: usize, n: usize, rel: &[Vec<Polynomial>]) -> Result<Vec<ModuleElement>> {
    let ring = c.ring();
    let ri = c.rank(i);
    let width = ri * n;
    if width == 0 {
        return Ok(Vec::new());
    }
    let kernel: Vec<Vec<Polynomial>> = match (i, c.differential(i)) {
        (1.., Some(d)) if d.rows() > 0 => {
            let mut cols = tensor_identity(d, n);
            cols.extend(relation_blocks(ring, d.rows(), n, rel));
            let m = Matrix::from_columns(ring, d.rows() * n, cols)?;
            let s = syzygy_matrix(&m)?;
            s.columns()
                .iter()
                .map(|c| c[..width].to_vec())
                .filter(|c| c.iter().any(|e| !e.is_zero()))
                .collect()
        }
        _ => (0..width)
            .map(|k| (0..width).map(|j| if j == k { ring.one() } else { ring.zero() }).collect())
            .collect(),
    };
    let mut image = match c.differential(i + 1) {
        Some(d) => tensor_identity(d, n),
        None => Vec::new(),
    };
    image.extend(relation_blocks(ring, ri, n, rel));
    let image = SubmodulePresentation::new(ring, width, image)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in kernel {
        let r = image.normal_form(&ModuleElement::new(ring, k)?)?;
        if r.is_zero() {
            continue;
        }
        let key: Vec<String> = r.entries().iter().map(|e| e.to_string()).collect();
        if seen.insert(key) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Decide whether `H_i(c)` vanishes.
pub fn homology_is_zero(c: &ChainComplex, i: usize) -> Result<TorReport> {
    if i > c.length() {
        return Err(argument(format!("homology at {i} of a complex of length {}", c.length())));
    }
    Ok(TorReport::new(i, tensored_homology(c, i, 1, &[])?))
}

/// `Tor_i(m, n)` over their common ring, by resolving `m`.
///
/// When `n` is cyclic, `R/a`, the tensored complex is the resolution read
/// over `R/a`, and the computation is done there directly.
pub fn tor(i: usize, m: &PresentedModule, n: &PresentedModule) -> Result<TorReport> {
    if m.ring() != n.ring() {
        return Err(argument(format!(
            "Tor of modules over different rings: {} and {}",
            m.ring(),
            n.ring()
        )));
    }
    if n.rank() == 0 || m.rank() == 0 {
        return Ok(TorReport::new(i, Vec::new()));
    }
    let res = free_resolution(m, i + 1)?;
    if n.rank() == 1 {
        tor_cyclic(i, &res, n)
    } else {
        tor_general(i, &res, n)
    }
}

pub(crate) fn tor_general(i: usize, res: &ChainComplex, n: &PresentedModule) -> Result<TorReport> {
    let w = tensored_homology(res, i, n.rank(), n.relations().generators())?;
    Ok(TorReport::new(i, w))
}

pub(crate) fn tor_cyclic(i: usize, res: &ChainComplex, n: &PresentedModule) -> Result<TorReport> {
    let ring = res.ring();
    let mut defining = ring.defining_generators().to_vec();
    defining.extend(n.relations().generators().iter().map(|c| c[0].clone()));
    let over = PresentedRing::new(ring.signature().clone(), defining)?;
    let ds = res.differentials().iter().map(|d| d.over(&over)).collect();
    let c = ChainComplex::new(&over, res.rank(0), ds, res.is_complete())?;
    let w = tensored_homology(&c, i, 1, &[])?
        .into_iter()
        .map(|e| ModuleElement::new(ring, e.entries().to_vec()))
        .collect::<Result<_>>()?;
    Ok(TorReport::new(i, w))
}

#[cfg(test)]
mod tests {
    use super::super::complex::koszul;
    use super::*;
    use crate::groebner::IdealHandle;
    use crate::poly::{parse_polynomial, RingSignature};

    fn free(vars: &[&str]) -> PresentedRing {
        PresentedRing::free(RingSignature::grevlex(vars).unwrap())
    }

    fn polys(r: &PresentedRing, ps: &[&str]) -> Vec<Polynomial> {
        ps.iter().map(|p| r.parse(p).unwrap()).collect()
    }

    #[test]
    fn koszul_regular_sequence_is_exact() {
        let r = free(&["x", "y"]);
        let k = koszul(&polys(&r, &["x", "y"]), &r).unwrap();
        assert!(homology_is_zero(&k, 1).unwrap().is_zero);
        assert!(homology_is_zero(&k, 2).unwrap().is_zero);
        assert!(!homology_is_zero(&k, 0).unwrap().is_zero);
    }

    #[test]
    fn koszul_repeated_element_has_witness() {
        let r = free(&["x"]);
        let k = koszul(&polys(&r, &["x", "x"]), &r).unwrap();
        let h = homology_is_zero(&k, 1).unwrap();
        assert!(!h.is_zero);
        assert_eq!(h.witness_generators.len(), 1);
        assert_eq!(h.witness_generators[0].to_string(), "[1, -1]");
    }

    #[test]
    fn koszul_zerodivisor() {
        let sig = RingSignature::grevlex(&["x", "y"]).unwrap();
        let r = PresentedRing::new(sig.clone(), vec![parse_polynomial("x*y", &sig).unwrap()]).unwrap();
        let k = koszul(&polys(&r, &["x"]), &r).unwrap();
        let h = homology_is_zero(&k, 1).unwrap();
        assert_eq!(h.witness_generators[0].to_string(), "[y]");
        let k = koszul(&polys(&r, &["x + y"]), &r).unwrap();
        assert!(homology_is_zero(&k, 1).unwrap().is_zero);
    }

    #[test]
    fn tor_of_residue_field_with_itself() {
        let r = free(&["x"]);
        let m = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x"]).unwrap());
        let t = tor(1, &m, &m).unwrap();
        assert!(!t.is_zero);
        assert_eq!(t.witness_generators[0].to_string(), "[1]");
        assert!(!tor(0, &m, &m).unwrap().is_zero);
        assert!(tor(2, &m, &m).unwrap().is_zero);
    }

    #[test]
    fn free_module_is_flat() {
        let r = free(&["x", "y"]);
        let n = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x", "y"]).unwrap());
        assert!(tor(1, &PresentedModule::free(&r, 1), &n).unwrap().is_zero);
        assert!(tor(1, &PresentedModule::free(&r, 2), &n).unwrap().is_zero);
    }

    #[test]
    fn cyclic_shortcut_agrees_with_general_path() {
        let sig = RingSignature::grevlex(&["x", "y", "z"]).unwrap();
        let r = PresentedRing::new(sig.clone(), vec![parse_polynomial("x*y - z^2", &sig).unwrap()]).unwrap();
        let j = IdealHandle::parse(&r, &["x", "z"]).unwrap();
        let m = PresentedModule::from_ideal(&j).unwrap();
        let n = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x", "y", "z"]).unwrap());
        for i in 0..3 {
            let res = free_resolution(&m, i + 1).unwrap();
            let a = tor_cyclic(i, &res, &n).unwrap();
            let b = tor_general(i, &res, &n).unwrap();
            assert_eq!(a.is_zero, b.is_zero, "index {i}");
        }
    }

    #[test]
    fn tor_zero_is_tensor_product() {
        // R/(x) (x) R^2/((y, 0), (0, x)) = QQ[y]/(y)... nonzero; and R/(1) kills it
        let r = free(&["x", "y"]);
        let n = PresentedModule::cokernel(&Matrix::parse(&r, &[&["y", "0"], &["0", "x"]]).unwrap());
        let m = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x"]).unwrap());
        let t = tor(0, &m, &n).unwrap();
        assert_eq!(t.witness_generators.len(), 2);
        let unit = PresentedModule::cyclic(&IdealHandle::parse(&r, &["x + 1", "x"]).unwrap());
        assert!(tor(0, &unit, &n).unwrap().is_zero);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = free(&["x"]);
        let b = free(&["y"]);
        assert!(tor(1, &PresentedModule::free(&a, 1), &PresentedModule::free(&b, 1)).is_err());
    }
}

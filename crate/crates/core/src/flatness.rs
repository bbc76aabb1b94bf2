//! Graph and fibered-product ideals of affine morphisms, invariant
//! subalgebras, tensor products of rings, and the flat-at-a-point probe.

use std::collections::HashSet;

use crate::error::{argument, Result};
use crate::groebner::{map_kernel, IdealHandle, RingMap};
use crate::homology::{tor, PresentedModule, TorReport};
use crate::poly::{MonomialOrder, Polynomial, PresentedRing, RingSignature};

/// `A (x)_QQ B` together with the two inclusions.
#[derive(Clone, Debug)]
pub struct RingProduct {
    pub ring: PresentedRing,
    pub left: RingMap,
    pub right: RingMap,
    /// `(old, new)` for every variable renamed to avoid a clash.
    pub renamed: Vec<(String, String)>,
}

fn fresh(base: &str, suffix: &str, taken: &HashSet<String>) -> String {
    let mut name = format!("{base}{suffix}");
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Polynomial ring on the variables of `a` followed by those of `b`, modulo
/// both defining ideals. A name occurring in both rings gets the suffix `1`
/// on the left and `2` on the right.
pub fn tensor_rings(a: &PresentedRing, b: &PresentedRing) -> Result<RingProduct> {
    let av = a.signature().variables();
    let bv = b.signature().variables();
    let clash: HashSet<&String> = av.iter().filter(|v| bv.contains(v)).collect();
    let mut taken: HashSet<String> = av.iter().chain(bv.iter()).cloned().collect();
    let mut renamed = Vec::new();
    let mut names = Vec::with_capacity(av.len() + bv.len());
    for (vars, suffix) in [(av, "1"), (bv, "2")] {
        for v in vars {
            if clash.contains(v) {
                let new = fresh(v, suffix, &taken);
                taken.insert(new.clone());
                renamed.push((v.clone(), new.clone()));
                names.push(new);
            } else {
                names.push(v.clone());
            }
        }
    }
    let order = match a.signature().order() {
        MonomialOrder::Elimination(_) => MonomialOrder::Grevlex,
        o => o,
    };
    let sig = RingSignature::new(&names, order)?;
    let left_idx: Vec<usize> = (0..av.len()).collect();
    let right_idx: Vec<usize> = (av.len()..av.len() + bv.len()).collect();
    let mut defining: Vec<Polynomial> = a
        .defining_generators()
        .iter()
        .map(|g| g.remap(&sig, &left_idx))
        .collect();
    defining.extend(b.defining_generators().iter().map(|g| g.remap(&sig, &right_idx)));
    let ring = PresentedRing::new(sig.clone(), defining)?;
    let vars = |idx: &[usize]| idx.iter().map(|&i| Polynomial::variable(&sig, i)).collect();
    let left = RingMap::new(a, &ring, vars(&left_idx))?;
    let right = RingMap::new(b, &ring, vars(&right_idx))?;
    Ok(RingProduct {
        ring,
        left,
        right,
        renamed,
    })
}

/// The subalgebra of `ambient` generated by `gens`, as `QQ[names] / ker F`
/// with `F : names -> gens`. The returned map is `F` on the presented ring.
pub fn invariant_presentation<S: AsRef<str>>(
    ambient: &PresentedRing,
    gens: &[Polynomial],
    names: &[S],
) -> Result<(PresentedRing, RingMap)> {
    if gens.len() != names.len() {
        return Err(argument(format!("{} generators but {} names", gens.len(), names.len())));
    }
    let names: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
    if let Some(n) = names.iter().find(|n| ambient.signature().index_of(n).is_some()) {
        return Err(argument(format!("name `{n}` is already a variable of {ambient}")));
    }
    let free = PresentedRing::free(RingSignature::new(&names, ambient.signature().order())?);
    let f = RingMap::new(&free, ambient, gens.to_vec())?;
    let kernel = map_kernel(&f)?;
    let ring = PresentedRing::new(free.signature().clone(), kernel.generators().to_vec())?;
    let f = f.with_source(&ring)?;
    Ok((ring, f))
}

/// A morphism of affine schemes `X -> Y`, stored as its pullback
/// `O(Y) -> O(X)`.
#[derive(Clone, Debug)]
pub struct AffineMorphism {
    pullback: RingMap,
}

impl AffineMorphism {
    pub fn new(pullback: RingMap) -> Self {
        Self { pullback }
    }

    pub fn pullback(&self) -> &RingMap {
        &self.pullback
    }

    /// Coordinate ring of the base `Y`.
    pub fn base(&self) -> &PresentedRing {
        self.pullback.source()
    }

    /// Coordinate ring of the source `X`.
    pub fn source(&self) -> &PresentedRing {
        self.pullback.target()
    }
}

/// Graph of `f` inside `Y x X`: generated by `y_j - f*(y_j)`.
pub fn graph_ideal(f: &AffineMorphism) -> Result<(IdealHandle, RingProduct)> {
    let prod = tensor_rings(f.base(), f.source())?;
    let sig = prod.ring.signature().clone();
    let mut gens = Vec::with_capacity(f.base().nvars());
    for (j, img) in f.pullback.images().iter().enumerate() {
        let y = Polynomial::variable(&sig, j);
        gens.push(y.try_sub(&prod.right.apply(img)?)?);
    }
    Ok((IdealHandle::new(&prod.ring, gens)?, prod))
}

#[derive(Clone, Debug)]
pub struct FiberedProduct {
    pub ideal: IdealHandle,
    pub untrimmed: IdealHandle,
    pub product: RingProduct,
}

/// Drop, in order, each generator lying in the ideal of the ones still kept.
fn trim(ring: &PresentedRing, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut kept = gens;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if IdealHandle::new(ring, others)?.contains(&kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// `X x_Y X'` inside `X x X'`: generated by `f*(b) - g*(b)` over the base
/// variables `b`, then trimmed.
pub fn fibered_product_ideal(f: &AffineMorphism, g: &AffineMorphism) -> Result<FiberedProduct> {
    if f.base() != g.base() {
        return Err(argument(format!(
            "morphisms have different bases: {} and {}",
            f.base(),
            g.base()
        )));
    }
    let prod = tensor_rings(f.source(), g.source())?;
    let mut gens = Vec::with_capacity(f.base().nvars());
    for (a, b) in f.pullback.images().iter().zip(g.pullback.images()) {
        let d = prod.left.apply(a)?.try_sub(&prod.right.apply(b)?)?;
        gens.push(d);
    }
    let untrimmed = IdealHandle::new(&prod.ring, gens.clone())?;
    let ideal = IdealHandle::new(&prod.ring, trim(&prod.ring, gens)?)?;
    Ok(FiberedProduct {
        ideal,
        untrimmed,
        product: prod,
    })
}

/// A point of `Spec ring`, given by a proper ideal.
#[derive(Clone, Debug)]
pub struct PointSpec {
    point_ideal: IdealHandle,
}

impl PointSpec {
    pub fn new(point_ideal: IdealHandle) -> Result<Self> {
        if point_ideal.is_unit() {
            return Err(argument(format!("point ideal {point_ideal} is the whole ring")));
        }
        Ok(Self { point_ideal })
    }

    pub fn parse(ring: &PresentedRing, gens: &[&str]) -> Result<Self> {
        Self::new(IdealHandle::parse(ring, gens)?)
    }

    pub fn ring(&self) -> &PresentedRing {
        self.point_ideal.ring()
    }

    pub fn point_ideal(&self) -> &IdealHandle {
        &self.point_ideal
    }
}

#[derive(Clone, Debug)]
pub struct FlatnessVerdict {
    pub flat: bool,
    pub tor_witness: TorReport,
}

/// Local criterion: `m` is flat at `p` when `Tor_1(m, R / pR) = 0`. With
/// `along`, the point lives in `along`'s source and is extended to `m`'s
/// ring by pulling back its generators.
pub fn flat_at_point(m: &PresentedModule, p: &PointSpec, along: Option<&RingMap>) -> Result<FlatnessVerdict> {
    let ring = m.ring();
    let ext = match along {
        None => {
            if p.ring() != ring {
                return Err(argument(format!(
                    "point lives in {} but the module is over {ring}",
                    p.ring()
                )));
            }
            p.point_ideal.clone()
        }
        Some(map) => {
            if map.source() != p.ring() || map.target() != ring {
                return Err(argument(format!(
                    "map {map} does not go from the point's ring to the module's ring"
                )));
            }
            let gens = p
                .point_ideal
                .generators()
                .iter()
                .map(|g| map.apply(g))
                .collect::<Result<Vec<_>>>()?;
            IdealHandle::new(ring, gens)?
        }
    };
    let t = tor(1, m, &PresentedModule::cyclic(&ext))?;
    Ok(FlatnessVerdict {
        flat: t.is_zero,
        tor_witness: t,
    })
}

/// [`flat_at_point`] for an ideal viewed as a module.
pub fn ideal_flat_at_point(i: &IdealHandle, p: &PointSpec, along: Option<&RingMap>) -> Result<FlatnessVerdict> {
    flat_at_point(&PresentedModule::from_ideal(i)?, p, along)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::eliminate;
    use crate::poly::parse_polynomial;

    fn free(vars: &[&str]) -> PresentedRing {
        PresentedRing::free(RingSignature::grevlex(vars).unwrap())
    }

    fn quotient(vars: &[&str], rels: &[&str]) -> PresentedRing {
        let sig = RingSignature::grevlex(vars).unwrap();
        let rels = rels.iter().map(|r| parse_polynomial(r, &sig).unwrap()).collect();
        PresentedRing::new(sig, rels).unwrap()
    }

    fn morphism(base: &PresentedRing, source: &PresentedRing, imgs: &[&str]) -> AffineMorphism {
        AffineMorphism::new(RingMap::parse(base, source, imgs).unwrap())
    }

    fn strings(ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn tensor_of_disjoint_rings() {
        let p = tensor_rings(&free(&["x"]), &free(&["y"])).unwrap();
        assert_eq!(p.ring.signature().variables(), ["x", "y"]);
        assert!(p.ring.is_free());
        assert!(p.renamed.is_empty());
        let a = quotient(&["x", "y"], &["x*y"]);
        let q = tensor_rings(&a, &free(&[])).unwrap();
        assert_eq!(q.ring, a);
    }

    #[test]
    fn clashing_names_get_suffixes() {
        let p = tensor_rings(&free(&["u", "v", "u1"]), &free(&["u", "w"])).unwrap();
        assert_eq!(p.ring.signature().variables(), ["u1_", "v", "u1", "u2", "w"]);
        assert_eq!(p.renamed.len(), 2);
    }

    #[test]
    fn squares_invariants() {
        let s = free(&["e", "g", "h"]);
        let gens: Vec<Polynomial> = ["e^2", "g^2", "h^2", "e*g", "e*h", "g*h"]
            .iter()
            .map(|p| s.parse(p).unwrap())
            .collect();
        let (r, f) = invariant_presentation(&s, &gens, &["E", "G", "H", "A", "B", "C"]).unwrap();
        assert_eq!(r.defining_generators().len(), 6);
        for rel in ["E*G - A^2", "E*H - B^2", "G*H - C^2", "A*B - E*C", "A*C - G*B", "B*C - H*A"] {
            assert!(r.is_zero_element(&r.parse(rel).unwrap()).unwrap(), "{rel}");
        }
        assert_eq!(f.source(), &r);
        let t = tensor_rings(&free(&["a", "b", "c"]), &r).unwrap();
        assert_eq!(t.ring.nvars(), 9);
        assert_eq!(t.ring.defining_generators().len(), 6);
    }

    #[test]
    fn trivial_invariants() {
        let s = free(&["e"]);
        let (r, _) = invariant_presentation(&s, &[s.parse("e^2").unwrap()], &["E"]).unwrap();
        assert!(r.is_free());
    }

    #[test]
    fn graph_of_blowup_chart() {
        let y = free(&["x", "y"]);
        let f = morphism(&y, &free(&["u", "v"]), &["u", "u*v"]);
        let (g, prod) = graph_ideal(&f).unwrap();
        assert_eq!(strings(g.generators()), ["x - u", "-u*v + y"]);
        let p = PointSpec::parse(&y, &["x", "y"]).unwrap();
        assert!(ideal_flat_at_point(&g, &p, Some(&prod.left)).unwrap().flat);
    }

    #[test]
    fn surface_graph_is_not_flat() {
        let y = quotient(&["x", "y", "z"], &["x*y - z^2"]);
        let f = morphism(&y, &free(&["u", "v"]), &["u", "u*v^2", "u*v"]);
        let (g, prod) = graph_ideal(&f).unwrap();
        assert_eq!(strings(g.generators()), ["x - u", "-u*v^2 + y", "-u*v + z"]);
        let p = PointSpec::parse(&y, &["x", "y", "z"]).unwrap();
        let v = ideal_flat_at_point(&g, &p, Some(&prod.left)).unwrap();
        assert!(!v.flat);
        assert!(!v.tor_witness.witness_generators.is_empty());
    }

    #[test]
    fn fibered_product_trims_to_two() {
        let y = quotient(&["x", "y", "z"], &["x*y - z^2"]);
        let f = morphism(&y, &free(&["u", "v"]), &["u", "u*v^2", "u*v"]);
        let fp = fibered_product_ideal(&f, &f).unwrap();
        assert_eq!(fp.product.ring.signature().variables(), ["u1", "v1", "u2", "v2"]);
        assert_eq!(strings(fp.untrimmed.generators()).len(), 3);
        assert_eq!(strings(fp.ideal.generators()), ["u1 - u2", "u1*v1 - u2*v2"]);
        assert!(fp.ideal.same_ideal(&fp.untrimmed).unwrap());
        let x = f.source();
        let origin = PointSpec::parse(x, &["u", "v"]).unwrap();
        assert!(ideal_flat_at_point(&fp.ideal, &origin, Some(&fp.product.left)).unwrap().flat);
        assert!(ideal_flat_at_point(&fp.ideal, &origin, Some(&fp.product.right)).unwrap().flat);
    }

    #[test]
    fn diagonal_of_identity() {
        let y = free(&["x", "y"]);
        let id = AffineMorphism::new(RingMap::identity(&y));
        let fp = fibered_product_ideal(&id, &id).unwrap();
        assert_eq!(strings(fp.ideal.generators()), ["x1 - x2", "y1 - y2"]);
    }

    #[test]
    fn base_mismatch() {
        let a = morphism(&free(&["x"]), &free(&["u"]), &["u"]);
        let b = morphism(&free(&["y"]), &free(&["u"]), &["u"]);
        assert!(fibered_product_ideal(&a, &b).is_err());
    }

    #[test]
    fn improper_point_is_rejected() {
        let r = free(&["x"]);
        assert!(PointSpec::parse(&r, &["x", "x + 1"]).is_err());
    }

    #[test]
    fn segre_chart_is_flat() {
        let r = free(&["x", "y", "t"]);
        let i = IdealHandle::parse(&r, &["y - x*t"]).unwrap();
        let p = PointSpec::parse(&r, &["x", "y"]).unwrap();
        assert!(ideal_flat_at_point(&i, &p, None).unwrap().flat);
        let v = flat_at_point(&PresentedModule::free(&r, 1), &p, None).unwrap();
        assert!(v.flat && v.tor_witness.witness_generators.is_empty());
    }

    /// The chart `X_2(2) x_{Y_2} X_2^+(1)` of the quadric cone flip is the
    /// hypersurface `W U - y^2` once the variables solved by the fibered
    /// product relations are eliminated.
    #[test]
    fn francia_chart_pair_is_a_hypersurface() {
        // X_1(2) = Spec QQ[w, x, u] with w = v/x; C_2 acts by -1 on all three
        let x1 = free(&["w", "x", "u"]);
        let gens: Vec<Polynomial> = ["x^2", "x*u", "u^2", "u*w", "x*w", "w^2"]
            .iter()
            .map(|p| x1.parse(p).unwrap())
            .collect();
        let (x2, _) = invariant_presentation(&x1, &gens, &["P", "Q", "R", "Y", "V", "W"]).unwrap();
        // X_2^+(1) = Spec QQ[s, y, U] with s = x/u, U = u^2
        let x2p = free(&["s", "y", "U"]);
        // Y_2 = invariants of QQ[x,y,u,v]/(xy - uv) generated by x^2, xu, u^2, y, v
        let y1 = quotient(&["x", "y", "u", "v"], &["x*y - u*v"]);
        let ygens: Vec<Polynomial> = ["x^2", "x*u", "u^2", "y", "v"]
            .iter()
            .map(|p| y1.parse(p).unwrap())
            .collect();
        let (y2, _) = invariant_presentation(&y1, &ygens, &["X2", "XU", "U2", "Yb", "Vb"]).unwrap();
        let f = morphism(&y2, &x2, &["P", "Q", "R", "Y", "V"]);
        let g = morphism(&y2, &x2p, &["s^2*U", "s*U", "U", "y", "s*y"]);
        let fp = fibered_product_ideal(&f, &g).unwrap();
        let e = eliminate(&fp.ideal, &["P", "Q", "R", "Y", "V"]).unwrap();
        let ring = e.ring();
        let mut all = e.generators().to_vec();
        all.extend_from_slice(ring.defining_generators());
        let flat = PresentedRing::free(ring.signature().clone());
        let got = IdealHandle::new(&flat, all).unwrap();
        let want = IdealHandle::parse(&flat, &["W*U - y^2"]).unwrap();
        assert!(got.same_ideal(&want).unwrap());
    }
}

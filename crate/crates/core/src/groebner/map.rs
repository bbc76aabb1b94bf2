use std::fmt;

use super::{eliminate_polys, normal_form_by, IdealHandle};
use crate::error::{argument, dimension, Result};
use crate::poly::{MonomialOrder, Polynomial, PresentedRing, RingSignature};

/// A QQ-algebra homomorphism `source -> target`, given by the image of each
/// source variable. Well-definedness is checked on construction.
#[derive(Clone)]
pub struct RingMap {
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &PresentedRing, target: &PresentedRing, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(dimension(format!(
                "{} images given for the {} variables of {source}",
                images.len(),
                source.nvars()
            )));
        }
        for img in &images {
            target.check_member(img)?;
        }
        let map = Self {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for g in source.defining_generators() {
            let image = map.apply_unchecked(g)?;
            if !target.is_zero_element(&image)? {
                return Err(argument(format!(
                    "map is not well defined: relation {g} maps to {image}, which is nonzero in {target}"
                )));
            }
        }
        Ok(map)
    }

    pub fn parse(source: &PresentedRing, target: &PresentedRing, images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| target.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ring: &PresentedRing) -> Self {
        let images = (0..ring.nvars())
            .map(|i| Polynomial::variable(ring.signature(), i))
            .collect();
        Self {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    fn apply_unchecked(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.images, self.target.signature())
    }

    /// Image of `f`, reduced modulo the target's defining ideal.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.source.check_member(f)?;
        self.target.reduce(&self.apply_unchecked(f)?)
    }

    /// Replace the source ring by another presentation (same variables) of
    /// it, rechecking well-definedness.
    pub fn with_source(&self, source: &PresentedRing) -> Result<Self> {
        if source.signature().variables() != self.source.signature().variables() {
            return Err(dimension("replacement source has different variables"));
        }
        Self::new(source, &self.target, self.images.clone())
    }
}

impl fmt::Display for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images.iter().map(|p| p.to_string()).collect();
        write!(f, "{} -> {} = {{{}}}", self.source, self.target, imgs.join(", "))
    }
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMap({self})")
    }
}

/// Kernel of `map` as an ideal of its source.
///
/// Variables of the target and source are joined into one polynomial ring
/// (target first); the ideal of `s_i - image(s_i)` plus the target's
/// defining relations is computed under a block order and the target
/// variables are eliminated.
pub fn map_kernel(map: &RingMap) -> Result<IdealHandle> {
    let t = map.target.nvars();
    let s = map.source.nvars();
    let names: Vec<String> = (0..t)
        .map(|i| format!("_t{i}"))
        .chain((0..s).map(|i| format!("_s{i}")))
        .collect();
    let sig = RingSignature::new(&names, MonomialOrder::Grevlex)?;
    let into_target: Vec<usize> = (0..t).collect();
    let mut gens = Vec::with_capacity(s + map.target.defining_generators().len());
    for (i, img) in map.images.iter().enumerate() {
        let var = Polynomial::variable(&sig, t + i);
        gens.push(var.try_sub(&img.remap(&sig, &into_target))?);
    }
    for g in map.target.defining_basis() {
        gens.push(g.remap(&sig, &into_target));
    }
    let mut drop = vec![false; t + s];
    drop[..t].fill(true);
    let src_sig = map.source.signature();
    let kernel = eliminate_polys(&sig, &gens, &drop, src_sig)?;
    // the elimination is a basis of the kernel in the ambient ring; express
    // it modulo the source's own relations where that shortens it
    let kernel: Vec<Polynomial> = if map.source.is_free() {
        kernel
    } else {
        let mut out = Vec::new();
        for g in kernel {
            let r = normal_form_by(&g, map.source.defining_basis())?;
            if !r.is_zero() {
                out.push(r);
            }
        }
        out
    };
    IdealHandle::new(&map.source, kernel)
}

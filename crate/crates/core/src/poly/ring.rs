use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{Polynomial, RingSignature};
use crate::error::{dimension, Result};

struct RingInner {
    sig: Arc<RingSignature>,
    defining: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

/// A polynomial ring over QQ modulo a (possibly empty) defining ideal.
///
/// Cloning is cheap; clones share the cached Gröbner basis of the defining
/// ideal, which is computed on first use.
#[derive(Clone)]
pub struct PresentedRing(Arc<RingInner>);

impl PresentedRing {
    pub fn new(sig: Arc<RingSignature>, defining: Vec<Polynomial>) -> Result<Self> {
        for g in &defining {
            if !RingSignature::same(g.signature(), &sig) {
                return Err(dimension(format!(
                    "defining generator {g} is not in the ring's signature"
                )));
            }
        }
        let defining = defining.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self(Arc::new(RingInner {
            sig,
            defining,
            basis: OnceLock::new(),
        })))
    }

    pub fn free(sig: Arc<RingSignature>) -> Self {
        Self::new(sig, Vec::new()).expect("no generators to check")
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.0.sig
    }

    pub fn defining_generators(&self) -> &[Polynomial] {
        &self.0.defining
    }

    pub fn is_free(&self) -> bool {
        self.0.defining.is_empty()
    }

    pub(crate) fn basis_cell(&self) -> &OnceLock<Vec<Polynomial>> {
        &self.0.basis
    }

    pub fn nvars(&self) -> usize {
        self.0.sig.nvars()
    }

    pub fn variable(&self, name: &str) -> Option<Polynomial> {
        self.0
            .sig
            .index_of(name)
            .map(|i| Polynomial::variable(&self.0.sig, i))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse_polynomial(text, &self.0.sig)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.0.sig)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.0.sig)
    }

    pub fn ptr_eq(a: &Self, b: &Self) -> bool {
        Arc::ptr_eq(&a.0, &b.0)
    }

    pub(crate) fn check_member(&self, f: &Polynomial) -> Result<()> {
        if RingSignature::same(f.signature(), &self.0.sig) {
            Ok(())
        } else {
            Err(dimension(format!("{f} does not belong to the ring {self}")))
        }
    }
}

impl PartialEq for PresentedRing {
    fn eq(&self, other: &Self) -> bool {
        Self::ptr_eq(self, other)
            || (self.0.sig == other.0.sig && self.0.defining == other.0.defining)
    }
}

impl Eq for PresentedRing {}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.0.sig.variables().join(","))?;
        if !self.0.defining.is_empty() {
            let gens: Vec<String> = self.0.defining.iter().map(|g| g.to_string()).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedRing({self})")
    }
}

use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{argument, dimension, Result};

/// Ordered variable names plus the monomial order over them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    variables: Vec<String>,
    order: MonomialOrder,
}

impl RingSignature {
    pub fn new<S: AsRef<str>>(variables: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(argument("empty variable name"));
            }
            if variables[..i].contains(v) {
                return Err(argument(format!("duplicate variable name `{v}`")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > variables.len() {
                return Err(argument(format!(
                    "elimination block of size {k} exceeds {} variables",
                    variables.len()
                )));
            }
        }
        Ok(Arc::new(Self { variables, order }))
    }

    pub fn grevlex<S: AsRef<str>>(variables: &[S]) -> Result<Arc<Self>> {
        Self::new(variables, MonomialOrder::Grevlex)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(&self.variables, order)
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Compare two monomials under the signature's order, checking that both
/// exponent vectors have the right length.
pub fn compare_monomials(a: &Monomial, b: &Monomial, sig: &RingSignature) -> Result<Ordering> {
    if a.nvars() != sig.nvars() || b.nvars() != sig.nvars() {
        return Err(dimension(format!(
            "exponent vectors of length {} and {} in a ring with {} variables",
            a.nvars(),
            b.nvars(),
            sig.nvars()
        )));
    }
    Ok(sig.order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_names() {
        assert!(RingSignature::grevlex(&["x", "y", "x"]).is_err());
        assert!(RingSignature::new(&["x"], MonomialOrder::Elimination(2)).is_err());
    }

    #[test]
    fn compare_checks_lengths() {
        let sig = RingSignature::grevlex(&["x", "y"]).unwrap();
        let a = Monomial::new(&[1, 0]).unwrap();
        let b = Monomial::new(&[1, 0, 0]).unwrap();
        assert!(compare_monomials(&a, &b, &sig).is_err());
        let y = Monomial::new(&[0, 1]).unwrap();
        assert_eq!(compare_monomials(&a, &y, &sig).unwrap(), Ordering::Greater);
    }
}

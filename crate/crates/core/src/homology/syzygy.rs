use std::collections::HashSet;

use super::module::Matrix;
use crate::error::Result;
use crate::groebner::engine::{groebner_basis, Engine};
use crate::groebner::vector::{from_entries, from_poly, ModuleOrder, Vector};
use crate::groebner::normal_form_by;
use crate::poly::{Polynomial, PresentedRing};

fn quotient_vectors(ring: &PresentedRing) -> Vec<Vector> {
    ring.defining_basis().iter().map(from_poly).collect()
}

/// Reduced module basis of the columns, modulo `I0 * R^rank`.
pub(crate) fn module_gb(
    ring: &PresentedRing,
    rank: usize,
    columns: &[Vec<Polynomial>],
    ord: ModuleOrder,
) -> Result<Vec<Vector>> {
    let gens = columns.iter().map(|c| from_entries(ord, c)).collect();
    groebner_basis(ord, ring.nvars(), rank, gens, &quotient_vectors(ring))
}

/// Generators of `{v : M v = 0}` in the presented ring.
///
/// Entries are reduced modulo the defining ideal, each column is scaled so
/// its leading coefficient is 1, and zero or repeated columns are dropped.
pub fn syzygy_matrix(m: &Matrix) -> Result<Matrix> {
    let ring = m.ring();
    let ord = ModuleOrder::pot(ring.signature().order());
    let mut engine = Engine::new(ord, ring.nvars(), m.rows(), &quotient_vectors(ring), true);
    for c in m.columns() {
        engine.add_generator(from_entries(ord, c))?;
    }
    engine.run()?;
    let sig = ring.signature();
    let defining = ring.defining_basis();
    let ncols = m.cols();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in engine.syzygies()? {
        let mut entries = crate::groebner::vector::to_entries(&s, ncols, sig);
        if !ring.is_free() {
            for e in entries.iter_mut() {
                *e = normal_form_by(e, defining)?;
            }
        }
        let Some(lead) = entries.iter().find(|e| !e.is_zero()).and_then(|e| e.lead_coeff().cloned()) else {
            continue;
        };
        let inv = lead.recip();
        for e in entries.iter_mut() {
            *e = e.scale(&inv);
        }
        let key: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
        if seen.insert(key) {
            out.push(entries);
        }
    }
    Matrix::from_columns(ring, ncols, out)
}

use std::fmt;
use std::sync::OnceLock;

use crate::error::{dimension, Result};
use crate::groebner::vector::{self, from_entries, to_entries, DivisorList, ModuleOrder, VTerm, Vector};
use crate::groebner::IdealHandle;
use crate::poly::{Polynomial, PresentedRing, RingSignature};

use super::syzygy;

/// A vector of `R^n` over a presented ring.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    ring: PresentedRing,
    entries: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(ring: &PresentedRing, entries: Vec<Polynomial>) -> Result<Self> {
        for e in &entries {
            ring.check_member(e)?;
        }
        Ok(Self {
            ring: ring.clone(),
            entries,
        })
    }

    pub fn parse(ring: &PresentedRing, entries: &[&str]) -> Result<Self> {
        let entries = entries.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
        Self::new(ring, entries)
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Zero in the presented ring: every entry reduces to zero.
    pub fn is_zero_in_ring(&self) -> Result<bool> {
        for e in &self.entries {
            if !self.ring.is_zero_element(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement{self}")
    }
}

/// A matrix over a presented ring, stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: PresentedRing,
    rows: usize,
    columns: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn from_columns(ring: &PresentedRing, rows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        for c in &columns {
            if c.len() != rows {
                return Err(dimension(format!("column of length {} in a matrix with {rows} rows", c.len())));
            }
            for e in c {
                ring.check_member(e)?;
            }
        }
        Ok(Self {
            ring: ring.clone(),
            rows,
            columns,
        })
    }

    /// A one-row matrix `[f_1 ... f_k]`.
    pub fn row(ring: &PresentedRing, entries: Vec<Polynomial>) -> Result<Self> {
        Self::from_columns(ring, 1, entries.into_iter().map(|e| vec![e]).collect())
    }

    /// Build from row-major text entries.
    pub fn parse(ring: &PresentedRing, rows: &[&[&str]]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::with_capacity(nrows); ncols];
        for r in rows {
            if r.len() != ncols {
                return Err(dimension("ragged matrix rows"));
            }
            for (j, s) in r.iter().enumerate() {
                columns[j].push(ring.parse(s)?);
            }
        }
        Self::from_columns(ring, nrows, columns)
    }

    pub fn zero(ring: &PresentedRing, rows: usize, cols: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows,
            columns: vec![vec![ring.zero(); rows]; cols],
        }
    }

    pub fn identity(ring: &PresentedRing, n: usize) -> Self {
        let columns = (0..n)
            .map(|j| (0..n).map(|i| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Self {
            ring: ring.clone(),
            rows: n,
            columns,
        }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn column(&self, j: usize) -> ModuleElement {
        ModuleElement {
            ring: self.ring.clone(),
            entries: self.columns[j].clone(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols() != other.rows {
            return Err(dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        if self.ring != other.ring {
            return Err(dimension("matrices over different rings"));
        }
        let mut columns = Vec::with_capacity(other.cols());
        for oc in &other.columns {
            let mut col = vec![self.ring.zero(); self.rows];
            for (k, b) in oc.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (i, slot) in col.iter_mut().enumerate() {
                    let a = &self.columns[k][i];
                    if !a.is_zero() {
                        *slot = slot.try_add(&a.try_mul(b)?)?;
                    }
                }
            }
            columns.push(col);
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            columns,
        })
    }

    /// Every entry reduces to zero in the presented ring.
    pub fn is_zero_in_ring(&self) -> Result<bool> {
        for c in &self.columns {
            for e in c {
                if !self.ring.is_zero_element(e)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same entries over another ring with the same signature.
    pub(crate) fn over(&self, ring: &PresentedRing) -> Matrix {
        debug_assert!(RingSignature::same(self.ring.signature(), ring.signature()));
        Matrix {
            ring: ring.clone(),
            rows: self.rows,
            columns: self.columns.clone(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.columns.iter().map(|c| c[i].to_string()).collect();
            writeln!(f, "| {} |", row.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.rows, self.cols())
    }
}

/// A reduced module basis together with the quotient relations `g * e_p`,
/// usable as a reducer.
pub(crate) struct ModuleBasis {
    pub elements: Vec<Vector>,
    quotient: Vec<Vector>,
}

impl ModuleBasis {
    pub fn new(elements: Vec<Vector>, quotient_basis: &[Polynomial], rank: usize) -> Self {
        let mut quotient = Vec::with_capacity(rank * quotient_basis.len());
        for p in 0..rank as u32 {
            for g in quotient_basis {
                quotient.push(
                    g.terms()
                        .iter()
                        .map(|(m, c)| VTerm {
                            pos: p,
                            mono: m.clone(),
                            coeff: c.clone(),
                        })
                        .collect(),
                );
            }
        }
        Self { elements, quotient }
    }

    pub fn normal_form(&self, ord: ModuleOrder, v: Vector) -> Result<Vector> {
        let divs = DivisorList::new(
            self.elements
                .iter()
                .chain(self.quotient.iter())
                .map(|v| v.as_slice()),
        );
        let (mut r, _) = vector::reduce(ord, ord, v, None, &divs)?;
        vector::make_monic(&mut r, None);
        Ok(r)
    }
}

/// A submodule of `R^n` given by generating columns; its module Gröbner
/// basis (position over term) is computed on first use.
#[derive(Clone)]
pub struct SubmodulePresentation {
    ring: PresentedRing,
    ambient_rank: usize,
    generators: Vec<Vec<Polynomial>>,
    basis: OnceLock<Vec<Vector>>,
}

impl SubmodulePresentation {
    pub fn new(ring: &PresentedRing, ambient_rank: usize, generators: Vec<Vec<Polynomial>>) -> Result<Self> {
        Matrix::from_columns(ring, ambient_rank, generators.clone())?;
        Ok(Self {
            ring: ring.clone(),
            ambient_rank,
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            ring: m.ring.clone(),
            ambient_rank: m.rows,
            generators: m.columns.clone(),
            basis: OnceLock::new(),
        }
    }

    /// An ideal viewed as a submodule of `R^1`.
    pub fn from_ideal(ideal: &IdealHandle) -> Self {
        Self {
            ring: ideal.ring().clone(),
            ambient_rank: 1,
            generators: ideal.generators().iter().map(|g| vec![g.clone()]).collect(),
            basis: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    pub fn generator_matrix(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.ambient_rank,
            columns: self.generators.clone(),
        }
    }

    pub(crate) fn order(&self) -> ModuleOrder {
        ModuleOrder::pot(self.ring.signature().order())
    }

    fn basis_vectors(&self) -> &[Vector] {
        if let Some(b) = self.basis.get() {
            return b;
        }
        let b = syzygy::module_gb(&self.ring, self.ambient_rank, &self.generators, self.order())
            .expect("exponent overflow in module Gröbner basis");
        let _ = self.basis.set(b);
        self.basis.get().unwrap()
    }

    /// Reduced Gröbner basis under position-over-term order, excluding the
    /// multiples of the ring's defining relations that were adjoined.
    pub fn reduced_basis(&self) -> Vec<ModuleElement> {
        let sig = self.ring.signature();
        self.basis_vectors()
            .iter()
            .map(|v| ModuleElement {
                ring: self.ring.clone(),
                entries: to_entries(v, self.ambient_rank, sig),
            })
            .collect()
    }

    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement> {
        if v.rank() != self.ambient_rank {
            return Err(dimension(format!(
                "vector of length {} against a submodule of rank {}",
                v.rank(),
                self.ambient_rank
            )));
        }
        if v.ring != self.ring {
            return Err(dimension("vector and submodule live in different rings"));
        }
        let basis = ModuleBasis::new(
            self.basis_vectors().to_vec(),
            self.ring.defining_basis(),
            self.ambient_rank,
        );
        let ord = self.order();
        let r = basis.normal_form(ord, from_entries(ord, &v.entries))?;
        Ok(ModuleElement {
            ring: self.ring.clone(),
            entries: to_entries(&r, self.ambient_rank, self.ring.signature()),
        })
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Mutual containment of generators.
    pub fn same_submodule(&self, other: &SubmodulePresentation) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(&ModuleElement::new(&self.ring, g.clone())?)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(&ModuleElement::new(&other.ring, g.clone())?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for SubmodulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubmodulePresentation(rank {}, {:?})", self.ambient_rank, self.generators)
    }
}

/// Reduced module basis, free-standing form.
pub fn module_reduced_gb(s: &SubmodulePresentation) -> Vec<ModuleElement> {
    s.reduced_basis()
}

/// The cokernel `R^n / relations`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PresentedRing,
    rank: usize,
    relations: SubmodulePresentation,
}

impl PresentedModule {
    pub fn new(relations: SubmodulePresentation) -> Self {
        Self {
            ring: relations.ring.clone(),
            rank: relations.ambient_rank,
            relations,
        }
    }

    pub fn free(ring: &PresentedRing, rank: usize) -> Self {
        Self::new(SubmodulePresentation {
            ring: ring.clone(),
            ambient_rank: rank,
            generators: Vec::new(),
            basis: OnceLock::new(),
        })
    }

    /// `R / I` as a cyclic module.
    pub fn cyclic(ideal: &IdealHandle) -> Self {
        Self::new(SubmodulePresentation::from_ideal(ideal))
    }

    /// `R^n / (columns)`.
    pub fn cokernel(m: &Matrix) -> Self {
        Self::new(SubmodulePresentation::from_matrix(m))
    }

    /// The image of the generator columns, presented as a cokernel of its
    /// syzygies: `R^k / syz(gens)` with `k` the number of generators.
    pub fn image_of(s: &SubmodulePresentation) -> Result<Self> {
        let m = s.generator_matrix();
        if m.cols() == 0 {
            return Ok(Self::free(&s.ring, 0));
        }
        let syz = syzygy::syzygy_matrix(&m)?;
        Ok(Self::cokernel(&syz))
    }

    /// An ideal as a module (the ideal itself, not the quotient ring).
    pub fn from_ideal(ideal: &IdealHandle) -> Result<Self> {
        Self::image_of(&SubmodulePresentation::from_ideal(ideal))
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &SubmodulePresentation {
        &self.relations
    }

    pub fn relation_matrix(&self) -> Matrix {
        self.relations.generator_matrix()
    }
}

//! Modules over presented rings: module Gröbner bases, syzygies, free
//! resolutions, Koszul complexes and Tor.

mod complex;
mod module;
mod syzygy;
mod tor;

pub use complex::{free_resolution, koszul, ChainComplex};
pub use module::{module_reduced_gb, Matrix, ModuleElement, PresentedModule, SubmodulePresentation};
pub use syzygy::syzygy_matrix;
pub use tor::{homology_is_zero, tor, TorReport};

pub mod analysis;
pub mod catalog;
pub mod ffield;
pub mod gaction;
pub mod gbasis;
pub mod hilbert;
pub mod linalg;
pub mod mpoly;
pub mod nakajima;

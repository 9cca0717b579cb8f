pub mod appendix;
pub mod cohomology;
pub mod cone;
pub mod invariants;
pub mod io;
pub mod numeric;
pub mod polygon;

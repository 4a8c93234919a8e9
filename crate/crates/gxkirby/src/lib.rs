//! Invariants of closed 4-manifolds from G-crossed braided spherical fusion categories,
//! computed exactly by evaluating Kirby diagrams with 3-handles.

pub mod cli;
pub mod diagram;
pub mod gxcat;
pub mod invariant;
pub mod manifolds;
pub mod moves;
pub mod scalars;
pub mod treecalc;

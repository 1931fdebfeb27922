//! Coxeter polytopes, torsion-free subgroups and the manifolds they produce.

pub mod exact;
pub mod symbol;
pub mod gram;
pub mod roots;
pub mod torsion;
pub mod euler;
pub mod action;
pub mod search;

//! Exact tools for recovering representations from representations built
//! out of them: weight calculus for tensor, symmetric, exterior and adjoint
//! powers; highest-weight theory for small simple Lie algebras; finite group
//! characters over cyclotomic fields with Clifford theory and twisted tensor
//! products; density audits for trace-agreement sets; and the integer
//! lattice algebra behind lifting maps of tori.

pub mod acceptance;
pub mod density;
pub mod finchar;
pub mod lattice;
pub mod liealg;
pub mod weights;

//! Exact quantum sl2 invariants of framed links and tangles.

pub mod cyclotomic;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod algebra;
pub mod evaluator;
pub mod par;
pub mod skein;
pub mod random;
pub mod selftest;
pub mod surgery;

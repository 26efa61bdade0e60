use serde::Serialize;

use crate::error::InvariantError;
use crate::linalg::CycMatrix;

/// The module carried by one boundary point: `V^color`, or its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StrandModule {
    pub color: u32,
    pub dual: bool,
}

impl StrandModule {
    pub fn new(color: u32, dual: bool) -> Self {
        StrandModule { color, dual }
    }

    pub fn dim(&self) -> usize {
        self.color as usize
    }
}

pub fn signature_dim(sig: &[StrandModule]) -> usize {
    sig.iter().map(StrandModule::dim).product()
}

/// A linear map between tensor products of modules; the leftmost factor is the most significant index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Operator {
    domain: Vec<StrandModule>,
    codomain: Vec<StrandModule>,
    matrix: CycMatrix,
}

impl Operator {
    pub fn new(domain: Vec<StrandModule>, codomain: Vec<StrandModule>, matrix: CycMatrix) -> Result<Self, InvariantError> {
        let (rows, cols) = (signature_dim(&codomain), signature_dim(&domain));
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(InvariantError::Signature(format!(
                "matrix is {}x{} but signatures need {rows}x{cols}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Operator { domain, codomain, matrix })
    }

    pub fn identity(order: u32, sig: Vec<StrandModule>) -> Self {
        let n = signature_dim(&sig);
        Operator { codomain: sig.clone(), domain: sig, matrix: CycMatrix::identity(order, n) }
    }

    pub fn domain(&self) -> &[StrandModule] {
        &self.domain
    }

    pub fn codomain(&self) -> &[StrandModule] {
        &self.codomain
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Operator) -> Result<Operator, InvariantError> {
        if other.codomain != self.domain {
            return Err(InvariantError::Signature(format!(
                "cannot compose {:?} -> {:?} after {:?} -> {:?}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(Operator { domain: other.domain.clone(), codomain: self.codomain.clone(), matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn tensor(&self, other: &Operator) -> Operator {
        Operator {
            domain: self.domain.iter().chain(&other.domain).copied().collect(),
            codomain: self.codomain.iter().chain(&other.codomain).copied().collect(),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// The value of an operator between empty signatures.
    pub fn scalar(&self) -> Option<crate::cyclotomic::CycNum> {
        (self.domain.is_empty() && self.codomain.is_empty()).then(|| self.matrix[(0, 0)].clone())
    }
}

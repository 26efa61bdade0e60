use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::FramedLink;
use crate::error::InvariantError;

/// Symmetric integer matrix with framings on the diagonal and pairwise linking numbers off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Self {
        LinkingMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Sum of all entries, i.e. the self-linking of the sum of all components.
    pub fn total(&self) -> i64 {
        self.entries.iter().flatten().sum()
    }

    pub fn signature(&self) -> Result<i64, InvariantError> {
        signature(&self.entries)
    }
}

impl FramedLink {
    pub fn linking_matrix(&self) -> LinkingMatrix {
        let d = self.diagram();
        let topo = d.topology();
        let n = topo.n_components;
        let mut twice = vec![vec![0i64; n]; n];
        for step in d.crossing_steps() {
            let p = d.word()[step].position;
            let (a, b) = (topo.labels[step][p], topo.labels[step][p + 1]);
            if a != b {
                let s = d.crossing_sign(step);
                twice[a][b] += s;
                twice[b][a] += s;
            }
        }
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.framing()[i] } else { twice[i][j] / 2 }).collect())
            .collect();
        LinkingMatrix { entries }
    }
}

/// Signature of a symmetric integer matrix, by congruence diagonalization over the rationals.
pub fn signature(m: &[Vec<i64>]) -> Result<i64, InvariantError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(InvariantError::LinkingMatrix("matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(InvariantError::LinkingMatrix(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut sig = 0;
    let mut k = 0;
    while k < n {
        // bring a nonzero diagonal entry to (k, k)
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // diagonal is zero but a[k][p] is not: add row/col p to row/col k
                for c in 0..n {
                    let v = a[p][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][p].clone();
                    a[r][k] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
            for rr in k..n {
                let v = &f * &a[rr][k];
                a[rr][r] -= v;
            }
        }
        k += 1;
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_signatures() {
        assert_eq!(signature(&[]).unwrap(), 0);
        assert_eq!(signature(&[vec![1]]).unwrap(), 1);
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(signature(&[vec![2, 1], vec![1, 2]]).unwrap(), 2);
        assert_eq!(signature(&[vec![-1, 0, 0], vec![0, 0, 0], vec![0, 0, 3]]).unwrap(), 0);
        assert_eq!(signature(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        assert!(signature(&[vec![0, 1], vec![2, 0]]).is_err());
    }

    #[test]
    fn hyperbolic_block_with_zero_corner() {
        // zero first diagonal and zero second diagonal force the off-diagonal step
        assert_eq!(signature(&[vec![0, 2, 0], vec![2, 0, 1], vec![0, 1, -5]]).unwrap(), -1);
    }
}

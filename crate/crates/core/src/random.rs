//! Seeded generators for property checks: diagrams, moves, field elements, matrices.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cyclotomic::{CycNum, Rational};
use crate::diagram::{ArcDirection, Generator, Move, SliceDiagram};
use crate::linalg::CycMatrix;

/// A field element with integer coefficients in `[-bound, bound]` and a small denominator.
pub fn cycnum<R: Rng>(rng: &mut R, order: u32, bound: i64) -> CycNum {
    let degree = CycNum::zero(order).degree();
    let den = BigInt::from(rng.gen_range(1..=4));
    let coeffs: Vec<Rational> =
        (0..degree).map(|_| Rational::new(BigInt::from(rng.gen_range(-bound..=bound)), den.clone())).collect();
    CycNum::from_coeffs(order, &coeffs).expect("degree-length coefficients")
}

/// Closure of a braid word on `strands` strands: nested cups, the braid, nested caps.
pub fn braid_closure(strands: usize, braid: &[(usize, bool)]) -> SliceDiagram {
    let mut word: Vec<Generator> = (0..strands).map(|i| Generator::cup(ArcDirection::RightToLeft, i)).collect();
    word.extend(braid.iter().map(|&(p, pos)| Generator::crossing(pos, p)));
    word.extend((0..strands).rev().map(|i| Generator::cap(ArcDirection::LeftToRight, i)));
    SliceDiagram::from_word(vec![], word).expect("braid closure")
}

/// Random braid closure with up to `max_crossings` crossings, some components reversed.
pub fn diagram<R: Rng>(rng: &mut R, max_strands: usize, max_crossings: usize) -> SliceDiagram {
    let strands = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(1..=max_crossings.max(1));
    let braid: Vec<(usize, bool)> = (0..len).map(|_| (rng.gen_range(0..strands - 1), rng.gen())).collect();
    let mut d = braid_closure(strands, &braid);
    for c in 0..d.component_count() {
        if rng.gen_bool(0.3) {
            d = d.reverse_component(c).expect("component exists");
        }
    }
    d
}

/// Every triangle site where an R3 move applies.
pub fn r3_sites(d: &SliceDiagram) -> Vec<usize> {
    (0..d.word().len().saturating_sub(2)).filter(|&s| d.apply_move(Move::R3 { step: s }).is_ok()).collect()
}

/// A random applicable R2, R3 or kink-pair move, preferring R3 when one exists.
pub fn invariance_move<R: Rng>(rng: &mut R, d: &SliceDiagram) -> Move {
    let steps = d.word().len() + 1;
    loop {
        let step = rng.gen_range(0..steps);
        let width = d.levels()[step].len();
        match rng.gen_range(0..3) {
            0 => {
                if let Some(&s) = r3_sites(d).choose(rng) {
                    return Move::R3 { step: s };
                }
            }
            1 if width >= 2 => {
                return Move::R2 { step, position: rng.gen_range(0..width - 1), positive_first: rng.gen() };
            }
            2 if width >= 1 => {
                return Move::KinkPair { step, position: rng.gen_range(0..width), positive_on_right: rng.gen() };
            }
            _ => {}
        }
    }
}

/// An exactly invertible `n x n` integer matrix: lower unitriangular times upper triangular with unit-ish diagonal.
pub fn invertible_matrix<R: Rng>(rng: &mut R, order: u32, n: usize) -> CycMatrix {
    let mut lower = CycMatrix::identity(order, n);
    let mut upper = CycMatrix::identity(order, n);
    for i in 0..n {
        for j in 0..n {
            let v = CycNum::from_int(order, rng.gen_range(-3..=3));
            if i > j {
                lower[(i, j)] = v;
            } else if i < j {
                upper[(i, j)] = v;
            } else {
                let d = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
                upper[(i, j)] = CycNum::from_int(order, d);
            }
        }
    }
    lower.mul(&upper).expect("square")
}

/// Random integer matrix with entries in `[-bound, bound]`.
pub fn int_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

/// Random symmetric integer matrix.
pub fn symmetric_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = int_matrix(rng, n, bound);
    for i in 0..n {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closures_are_closed_and_moves_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d = diagram(&mut rng, 4, 8);
            assert!(d.is_closed());
            let mv = invariance_move(&mut rng, &d);
            assert!(d.apply_move(mv).is_ok(), "{mv:?}");
        }
    }

    #[test]
    fn invertible_matrices_have_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert_eq!(invertible_matrix(&mut rng, 16, 3).rank(), 3);
        }
    }
}

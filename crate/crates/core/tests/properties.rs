use nalgebra::{DMatrix, Matrix3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tqft_core::algebra::quantum_integer;
use tqft_core::cyclotomic::{CycNum, Rational};
use tqft_core::diagram::{builtin, signature, FramedLink, SmoothMode};
use tqft_core::linalg::CycMatrix;
use tqft_core::random;
use tqft_core::skein::{SkeinEngine, Strategy as Resolution};
use tqft_core::surgery::{limit_rank, transfer_matrix};

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    let degree = CycNum::zero(order).degree();
    (prop::collection::vec(-20i64..=20, degree), 1i64..=5).prop_map(move |(cs, den)| {
        let coeffs: Vec<Rational> = cs.iter().map(|&c| Rational::new(c.into(), den.into())).collect();
        CycNum::from_coeffs(order, &coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(a in cyc(16), b in cyc(16), c in cyc(16)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn nonzero_elements_invert(a in cyc(20)) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in cyc(16), b in cyc(16)) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let z = (&a * &b).approx();
        let w = a.approx() * b.approx();
        prop_assert!((z - w).norm() <= 1e-9 * (1.0 + w.norm()));
    }
}

#[test]
fn signature_matches_eigenvalue_signs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..50 {
        let n = 1 + trial % 6;
        let m = random::symmetric_matrix(&mut rng, n, 4);
        let eig = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64).symmetric_eigenvalues();
        let expected = eig.iter().filter(|&&x| x > 1e-8).count() as i64 - eig.iter().filter(|&&x| x < -1e-8).count() as i64;
        assert_eq!(signature(&m).unwrap(), expected, "{m:?}");
    }
}

#[test]
fn limit_rank_counts_nonzero_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for trial in 0..50 {
        // every few trials, force a singular matrix with a repeated column
        let mut m = random::int_matrix(&mut rng, 3, 5);
        if trial % 3 == 0 {
            for row in m.iter_mut() {
                row[2] = row[0] - row[1];
            }
        }
        let f = Matrix3::from_fn(|i, j| m[i][j] as f64);
        // nonzero eigenvalues of a bounded integer matrix stay well away from 0
        let nonzero = f.complex_eigenvalues().iter().filter(|z| z.norm() > 1e-3).count();
        assert_eq!(limit_rank(&CycMatrix::from_ints(16, &m)), nonzero, "{m:?}");
    }
}

#[test]
fn limit_rank_is_invariant_under_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..30 {
        let n = 2 + trial % 3;
        let mut m = random::int_matrix(&mut rng, n, 3);
        if trial % 2 == 0 {
            m[0] = vec![0; n];
        }
        let m = CycMatrix::from_ints(16, &m);
        let a = random::invertible_matrix(&mut rng, 16, n);
        let conj = a.mul(&m).unwrap().mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(limit_rank(&conj), limit_rank(&m));
    }
}

#[test]
fn linking_matrix_survives_local_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..40 {
        let d = random::diagram(&mut rng, 4, 8);
        let l = FramedLink::blackboard(d).unwrap();
        let mv = random::invariance_move(&mut rng, l.diagram());
        let moved = l.apply_move(mv).unwrap();
        assert_eq!(moved.linking_matrix(), l.linking_matrix(), "{mv:?}");
    }
}

#[test]
fn switching_twice_is_the_identity_and_once_shifts_linking() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..40 {
        let d = random::diagram(&mut rng, 4, 8);
        let l = FramedLink::blackboard(d.clone()).unwrap();
        for step in d.crossing_steps() {
            let once = d.resolve(step, SmoothMode::Switch).unwrap();
            let twice = once.resolve(step, SmoothMode::Switch).unwrap();
            assert_eq!(twice, d);
            let topo = d.topology();
            let p = d.word()[step].position;
            let (a, b) = (topo.labels[step][p], topo.labels[step][p + 1]);
            let switched = FramedLink::with_framing(once, l.framing()).unwrap();
            if a != b {
                let before = l.linking_matrix().entry(a, b);
                assert_eq!(switched.linking_matrix().entry(a, b), before - d.crossing_sign(step));
            } else {
                assert_eq!(switched.linking_matrix(), l.linking_matrix());
            }
        }
    }
}

#[test]
fn smoothing_changes_component_count_by_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..40 {
        let d = random::diagram(&mut rng, 4, 8);
        for step in d.crossing_steps() {
            let s = d.resolve(step, SmoothMode::Smooth).unwrap();
            assert_eq!((s.component_count() as i64 - d.component_count() as i64).abs(), 1);
        }
    }
}

#[test]
fn cables_have_the_expected_component_counts() {
    let unknot = builtin("unknot").unwrap();
    let hopf = builtin("hopf").unwrap();
    for n in 1..=4 {
        assert_eq!(unknot.cable(&[n]).unwrap().component_count(), n);
        for m in 1..=3 {
            let c = hopf.cable(&[n, m]).unwrap();
            assert_eq!(c.component_count(), n + m);
            // a cable of a cable multiplies
            assert_eq!(c.cable(&vec![2; n + m]).unwrap().component_count(), 2 * (n + m));
        }
    }
}

#[test]
fn cable_of_a_framed_unknot() {
    let plus = FramedLink::with_framing(builtin("unknot").unwrap().into_diagram(), &[1]).unwrap();
    let c = plus.cable(&[2]).unwrap();
    assert_eq!(c.linking_matrix().entries(), &[vec![1, 1], vec![1, 1]]);
}

#[test]
fn hopf_switch_flips_linking() {
    let hopf = builtin("hopf").unwrap();
    assert_eq!(hopf.linking_matrix().entry(0, 1), 1);
    let step = hopf.diagram().crossing_steps()[0];
    let switched = FramedLink::with_framing(hopf.diagram().resolve(step, SmoothMode::Switch).unwrap(), hopf.framing()).unwrap();
    assert_eq!(switched.linking_matrix().entry(0, 1), 0);
    let both = hopf.diagram().crossing_steps();
    let mut d = hopf.diagram().clone();
    for s in both {
        d = d.resolve(s, SmoothMode::Switch).unwrap();
    }
    assert_eq!(FramedLink::blackboard(d).unwrap().linking_matrix().entry(0, 1), -1);
}

#[test]
fn split_link_transfer_matrix_is_an_outer_product() {
    let t = transfer_matrix(&builtin("unlink2").unwrap(), 4).unwrap();
    for i in 1..=3 {
        for j in 1..=3 {
            let dims = &quantum_integer(i, 4).unwrap() * &quantum_integer(j, 4).unwrap();
            assert_eq!(t.matrix[(j as usize - 1, i as usize - 1)], dims);
        }
    }
    assert_eq!(t.matrix.rank(), 1);
    assert_eq!(t.limit_rank(), 1);
}

#[test]
fn skein_value_does_not_depend_on_the_strategy() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let a = SkeinEngine::new(Resolution::FirstBad);
    let b = SkeinEngine::new(Resolution::LastBadReversed);
    for _ in 0..25 {
        let d = random::diagram(&mut rng, 4, 9);
        assert_eq!(a.skein_i(&d).unwrap(), b.skein_i(&d).unwrap());
    }
}

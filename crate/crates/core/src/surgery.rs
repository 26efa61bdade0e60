//! Surgery invariants `Z_L = b^n c^sigma sum_k [k] J_{L,k}`, genus-one transfer
//! matrices and the inductive limit of a periodic system `C^d -> C^d -> ...`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::QuantumAlgebra;
use crate::cyclotomic::{approx_constants, constants, CycNum};
use crate::diagram::{builtin, FramedLink};
use crate::error::InvariantError;
use crate::evaluator::{all_colorings, Evaluator};
use crate::linalg::CycMatrix;
use crate::par::{self, ExecMode};

/// A closed 3-manifold presented by surgery on a framed link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryPresentation {
    pub link: FramedLink,
    pub level: u32,
}

impl SurgeryPresentation {
    pub fn new(link: FramedLink, level: u32) -> Result<Self, InvariantError> {
        if level < 2 {
            return Err(InvariantError::BadLevel(level));
        }
        Ok(SurgeryPresentation { link, level })
    }

    /// `sum_k [k] J_{L,k}` over colors `1..r-1`, exact in Q(zeta_4r).
    pub fn colored_sum(&self, mode: ExecMode) -> Result<CycNum, InvariantError> {
        let ev = Evaluator::new(self.level)?.with_mode(mode);
        let alg = ev.algebra();
        let n = self.link.component_count();
        let colorings = all_colorings(n, self.level - 1);
        let terms = par::map_slice(mode, &colorings, |k| -> Result<CycNum, InvariantError> {
            let dim = k.iter().fold(CycNum::one(alg.order()), |acc, &c| &acc * &alg.quantum_integer(c as i64));
            Ok(&dim * &ev.evaluate_link(&self.link, k)?)
        });
        let mut sum = CycNum::zero(alg.order());
        for t in terms {
            sum = &sum + &t?;
        }
        Ok(sum)
    }

    fn sigma(&self) -> Result<i64, InvariantError> {
        self.link.linking_matrix().signature()
    }

    /// Exact value; level 4 only.
    pub fn z_exact(&self) -> Result<CycNum, InvariantError> {
        let k = constants(self.level)?;
        let n = self.link.component_count() as i64;
        let b = CycNum::from_rational(16, &k.b).pow(n)?;
        let c = k.c.pow(self.sigma()?)?;
        Ok(&(&b * &c) * &self.colored_sum(ExecMode::default())?)
    }

    /// Float value at any level: the colored sum is exact, `b` and `c` are floats.
    pub fn z_approx(&self) -> Result<Complex64, InvariantError> {
        let k = approx_constants(self.level)?;
        let n = self.link.component_count() as i32;
        let alpha = k.b.powi(n) * k.c.powi(self.sigma()? as i32);
        Ok(alpha * self.colored_sum(ExecMode::default())?.approx())
    }
}

/// `Z_L` at level 4, exactly.
pub fn z_invariant(sp: &SurgeryPresentation) -> Result<CycNum, InvariantError> {
    sp.z_exact()
}

/// The undetermined scalar of a cobordism map, kept apart from the matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    pub b_power: i64,
    pub c_power: i64,
    pub note: String,
}

impl Anomaly {
    /// `b^(n - g+) c^sigma` for an intermediate surgery link with `n` components.
    pub fn cobordism(n_link: i64, g_plus: i64, sigma: i64) -> Self {
        Anomaly {
            b_power: n_link - g_plus,
            c_power: sigma,
            note: "scalar prefactor up to a root of unity; excluded from rank and limit computations".into(),
        }
    }

    /// The tag of a genus-one cobordism with trivial intermediate link.
    pub fn genus_one() -> Self {
        Anomaly {
            b_power: 0,
            c_power: -3,
            note: "Z(X) = c^-3 M up to a root of unity; the scalar is excluded from rank and limit computations".into(),
        }
    }

    /// The scalar itself at level 4.
    pub fn scalar(&self) -> Result<CycNum, InvariantError> {
        let k = constants(4)?;
        Ok(&CycNum::from_rational(16, &k.b).pow(self.b_power)? * &k.c.pow(self.c_power)?)
    }
}

/// Square matrix over the torus coloring basis: `entry(j, i) = J_{L,(i,j)}`
/// with `i` the incoming color (first component) and `j` the outgoing color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferMatrix {
    pub level: u32,
    pub matrix: CycMatrix,
    pub anomaly: Anomaly,
}

impl TransferMatrix {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn limit_rank(&self) -> usize {
        limit_rank(&self.matrix)
    }
}

/// Builds the transfer matrix of a two-component link by direct evaluation.
pub fn transfer_matrix(l: &FramedLink, r: u32) -> Result<TransferMatrix, InvariantError> {
    transfer_matrix_with(l, r, ExecMode::default())
}

pub fn transfer_matrix_with(l: &FramedLink, r: u32, mode: ExecMode) -> Result<TransferMatrix, InvariantError> {
    if l.component_count() != 2 {
        return Err(InvariantError::NotTwoComponents(l.component_count()));
    }
    let ev = Evaluator::new(r)?.with_mode(mode);
    let d = (r - 1) as usize;
    let values = par::map_indices(mode, d * d, |idx| {
        let (j, i) = (idx / d, idx % d);
        ev.evaluate_link(l, &[i as u32 + 1, j as u32 + 1])
    });
    let mut m = CycMatrix::zeros(ev.order(), d, d);
    for (idx, v) in values.into_iter().enumerate() {
        m[(idx / d, idx % d)] = v?;
    }
    Ok(TransferMatrix { level: r, matrix: m, anomaly: Anomaly::genus_one() })
}

/// Rank of `M^d`, the dimension of the inductive limit `lim(C^d, M)`.
pub fn limit_rank(m: &CycMatrix) -> usize {
    assert!(m.is_square(), "limit rank needs a square matrix");
    if m.rows() == 0 {
        return 0;
    }
    m.pow(m.rows() as u32).expect("square matrix powers").rank()
}

/// The inductive system `Z(dK_0) -> Z(dK_1) -> ...` with one constant map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitSystem {
    pub transfer: TransferMatrix,
}

impl LimitSystem {
    /// `dim Z_inf`.
    pub fn dimension(&self) -> usize {
        self.transfer.limit_rank()
    }
}

/// Twist `theta_k = s^(k^2 - 1)` picked up by a color-`k` component per unit of framing.
pub fn twist(k: u32, r: u32) -> Result<CycNum, InvariantError> {
    let alg = QuantumAlgebra::shared(r)?;
    Ok(alg.s().pow(k as i64 * k as i64 - 1)?)
}

/// Framing used by the pipeline when none is given.
pub const DEFAULT_WHITEHEAD_FRAMING: [i64; 2] = [0, 0];

fn sqrt_minus_one() -> CycNum {
    CycNum::zeta(16, 4)
}

/// Target matrix for the Whitehead cobordism at level 4, rows indexed by the
/// color of the first component, columns by the second.
pub fn whitehead_target_matrix() -> CycMatrix {
    let s = CycNum::sqrt2(16);
    let i = sqrt_minus_one();
    let one = CycNum::one(16);
    let two = CycNum::from_int(16, 2);
    let rows = vec![
        vec![one.clone(), s.clone(), one.clone()],
        vec![s.clone(), &s * &(&one - &i), &(&two * &(&i * &s)) - &s],
        vec![one, &(&two - &(&two * &i)) - &s, &CycNum::from_int(16, -3) - &i.scale_int(4)],
    ];
    CycMatrix::from_rows(16, rows).expect("3x3")
}

/// `2 - 13 sqrt2 + (16 - 4 sqrt2) i`.
pub fn whitehead_target_determinant() -> CycNum {
    let s = CycNum::sqrt2(16);
    let re = &CycNum::from_int(16, 2) - &s.scale_int(13);
    let im = &CycNum::from_int(16, 16) - &s.scale_int(4);
    &re + &(&sqrt_minus_one() * &im)
}

/// The unique `k` with `a = zeta_16^k b`, if any.
fn phase_between(a: &CycMatrix, b: &CycMatrix) -> Option<u32> {
    (0..16u32).find(|&k| b.scale(&CycNum::zeta(16, k as i64)) == *a)
}

fn abs_squared(x: &CycNum) -> CycNum {
    x * &x.conj()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingCandidate {
    pub framing: [i64; 2],
    pub phase: u32,
    pub matched_entries: usize,
}

/// Result of scanning all framings modulo the twist period against the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingScan {
    pub period: i64,
    pub exact_matches: Vec<FramingCandidate>,
    pub best: FramingCandidate,
}

/// Scans `(f1, f2)` in `(Z/16)^2`, rescaling the framing-zero matrix by twists:
/// `M(f)[j][i] = theta_i^f1 theta_j^f2 M(0)[j][i]`.
pub fn scan_framings(m0: &CycMatrix) -> Result<FramingScan, InvariantError> {
    let target = whitehead_target_matrix().transpose();
    let thetas: Vec<CycNum> = (1..=3).map(|k| twist(k, 4)).collect::<Result<_, _>>()?;
    let phases: Vec<CycNum> = (0..16).map(|k| CycNum::zeta(16, k)).collect();
    let period = 16;
    let candidates: Vec<FramingCandidate> = par::map_indices(ExecMode::default(), (period * period) as usize, |idx| {
        let f = [idx as i64 / period, idx as i64 % period];
        let mut m = m0.clone();
        for j in 0..3 {
            for i in 0..3 {
                let tw = &thetas[i].pow(f[0]).expect("unit") * &thetas[j].pow(f[1]).expect("unit");
                m[(j, i)] = &tw * &m0[(j, i)];
            }
        }
        let (phase, matched) = phases
            .iter()
            .enumerate()
            .map(|(k, z)| (k as u32, m.entries().iter().zip(target.entries()).filter(|(a, b)| **a == z * *b).count()))
            .max_by_key(|&(k, n)| (n, std::cmp::Reverse(k)))
            .expect("16 phases");
        FramingCandidate { framing: f, phase, matched_entries: matched }
    });
    let centered = |f: i64| if f > period / 2 { f - period } else { f };
    let best = candidates
        .iter()
        .max_by_key(|c| {
            let size = centered(c.framing[0]).abs() + centered(c.framing[1]).abs();
            (c.matched_entries, std::cmp::Reverse(size), std::cmp::Reverse(c.framing))
        })
        .cloned()
        .expect("nonempty scan");
    let exact_matches = candidates.into_iter().filter(|c| c.matched_entries == 9).collect();
    Ok(FramingScan { period, exact_matches, best })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixSummary {
    pub framing: Vec<i64>,
    pub matrix: CycMatrix,
    pub determinant: CycNum,
    pub rank: usize,
    pub limit_rank: usize,
}

impl MatrixSummary {
    fn of(framing: &[i64], t: &TransferMatrix) -> Result<Self, InvariantError> {
        Ok(MatrixSummary {
            framing: framing.to_vec(),
            matrix: t.matrix.clone(),
            determinant: t.matrix.det()?,
            rank: t.matrix.rank(),
            limit_rank: t.limit_rank(),
        })
    }
}

/// Comparison of the computed matrix against the target, both in the
/// (outgoing, incoming) orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetComparison {
    pub target_matrix: CycMatrix,
    pub target_determinant: CycNum,
    pub matrix_phase: Option<u32>,
    pub determinant_phase: Option<u32>,
    pub abs_determinant_matches: bool,
    pub framing_scan: FramingScan,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WhiteheadReport {
    pub level: u32,
    pub framing: Vec<i64>,
    pub engine: &'static str,
    pub orientation: &'static str,
    pub matrix: CycMatrix,
    pub determinant: CycNum,
    pub determinant_approx: [f64; 2],
    pub rank: usize,
    pub limit_rank: usize,
    pub z_infinity_dim: usize,
    pub anomaly: Anomaly,
    pub anomaly_note: String,
    pub reference: MatrixSummary,
    pub comparison: Option<TargetComparison>,
}

/// Builds the Whitehead transfer matrix at the given framing and reads off `dim Z_inf`.
pub fn whitehead_pipeline(r: u32, framing: &[i64]) -> Result<WhiteheadReport, InvariantError> {
    let wh = builtin("whitehead")?.into_diagram();
    let link = FramedLink::with_framing(wh.clone(), framing)?;
    let t = transfer_matrix(&link, r)?;
    let zero = [0, 0];
    let reference = if framing == zero {
        MatrixSummary::of(&zero, &t)?
    } else {
        MatrixSummary::of(&zero, &transfer_matrix(&FramedLink::with_framing(wh, &zero)?, r)?)?
    };
    let det = t.matrix.det()?;
    let approx = det.approx();
    let comparison = if r == 4 {
        let target = whitehead_target_matrix();
        let target_det = whitehead_target_determinant();
        let matrix_phase = phase_between(&t.matrix, &target.transpose());
        let determinant_phase = (0..16u32).find(|&k| det == &CycNum::zeta(16, k as i64) * &target_det);
        Some(TargetComparison {
            target_matrix: target,
            abs_determinant_matches: abs_squared(&det) == abs_squared(&target_det),
            target_determinant: target_det,
            matrix_phase,
            determinant_phase,
            framing_scan: scan_framings(&reference.matrix)?,
        })
    } else {
        None
    };
    let limit = t.limit_rank();
    Ok(WhiteheadReport {
        level: r,
        framing: framing.to_vec(),
        engine: "evaluator",
        orientation: "rows: outgoing color j, columns: incoming color i",
        rank: t.matrix.rank(),
        determinant: det,
        determinant_approx: [approx.re, approx.im],
        limit_rank: limit,
        z_infinity_dim: limit,
        anomaly_note: t.anomaly.note.clone(),
        anomaly: t.anomaly.clone(),
        matrix: t.matrix,
        reference,
        comparison,
    })
}

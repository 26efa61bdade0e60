//! Seeded property suites shared by the CLI `selftest` command and the test targets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Gen, QuantumAlgebra, StrandModule};
use crate::cyclotomic::{CycNum, Rational};
use crate::diagram::{builtin, FramedLink, Generator, Orientation, SliceDiagram};
use crate::evaluator::{all_colorings, ColoredDiagram, Evaluator};
use crate::linalg::CycMatrix;
use crate::random;
use crate::skein::{colored_via_cabling, jones_from_skein, SkeinEngine, Strategy};
use crate::surgery::{limit_rank, SurgeryPresentation};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, passed: 0, failed: 0, failures: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn field_axioms(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 1);
    let mut res = SuiteResult::new("field_axioms");
    for order in [16u32, 20] {
        for _ in 0..50 {
            let (a, b, c) = (random::cycnum(&mut rng, order, 20), random::cycnum(&mut rng, order, 20), random::cycnum(&mut rng, order, 20));
            res.check(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity at order {order}: {a}, {b}, {c}"));
            res.check(&(&a + &b) * &c == &(&a * &c) + &(&b * &c), || format!("distributivity at order {order}"));
            res.check((&a * &b).conj() == &a.conj() * &b.conj(), || format!("conjugation at order {order}: {a}, {b}"));
            if !a.is_zero() {
                res.check((&a * &a.inv().expect("nonzero")).is_one(), || format!("inverse at order {order}: {a}"));
            }
        }
    }
    let s = &CycNum::zeta(16, 2) - &CycNum::zeta(16, 6);
    res.check(&s * &s == CycNum::from_int(16, 2), || "zeta^2 - zeta^6 squared".into());
    res
}

/// Products of up to 100 factors `p / |p|_1` with integer numerators bounded by 1000;
/// every embedding of such a factor has modulus at most 1, so an absolute tolerance applies.
pub fn approx_homomorphism(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 2);
    let mut res = SuiteResult::new("approx_homomorphism");
    for _ in 0..20 {
        let len = rng.gen_range(1..=100);
        let mut exact = CycNum::one(16);
        let mut float = num_complex::Complex64::new(1.0, 0.0);
        for _ in 0..len {
            let p: Vec<i64> = (0..8).map(|_| rng.gen_range(-1000..=1000)).collect();
            let norm = p.iter().map(|x| x.abs()).sum::<i64>().max(1);
            let coeffs: Vec<Rational> = p.iter().map(|&x| Rational::new(x.into(), norm.into())).collect();
            let a = CycNum::from_coeffs(16, &coeffs).expect("degree 8");
            float *= a.approx();
            exact = &exact * &a;
        }
        let err = (exact.approx() - float).norm();
        res.check(err <= 1e-10, || format!("{len} factors: error {err:e}"));
    }
    res
}

fn mods(colors: &[u32], duals: &[bool]) -> Vec<StrandModule> {
    colors.iter().zip(duals).map(|(&c, &d)| StrandModule::new(c, d)).collect()
}

pub fn yang_baxter(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("yang_baxter");
    let alg = QuantumAlgebra::shared(4).expect("level 4");
    for colors in all_colorings(3, 3) {
        for mask in 0..8u32 {
            let duals: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let m = mods(&colors, &duals);
            let (a, b, c) = (m[0], m[1], m[2]);
            let id = |x: StrandModule| CycMatrix::identity(alg.order(), x.dim());
            let br = |x: StrandModule, y: StrandModule| (*alg.braiding(x, y).expect("colors in range")).clone();
            let lhs = br(b, c)
                .kron(&id(a))
                .mul(&id(b).kron(&br(a, c)))
                .and_then(|p| p.mul(&br(a, b).kron(&id(c))));
            let rhs = id(c)
                .kron(&br(a, b))
                .mul(&br(a, c).kron(&id(b)))
                .and_then(|p| p.mul(&id(a).kron(&br(b, c))));
            res.check(lhs.is_ok() && lhs == rhs, || format!("colors {colors:?}, duals {duals:?}"));
        }
    }
    res
}

pub fn quasi_triangularity(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("quasi_triangularity");
    for r in [4u32, 5] {
        let alg = QuantumAlgebra::shared(r).expect("level");
        for k in 1..=r {
            let m = alg.module(k, false).expect("color");
            res.check(alg.relations_hold(&m), || format!("relations on V^{k} at level {r}"));
        }
        for k in 1..=3 {
            for l in 1..=3 {
                let (m1, m2) = (alg.module(k, false).expect("color"), alg.module(l, false).expect("color"));
                res.check(alg.quasi_triangular_on(&m1, &m2), || format!("R Delta R^-1 on V^{k} x V^{l} at level {r}"));
            }
        }
    }
    res
}

/// Dimension, quantum dimension and K-weight forms of `V^k x V^l = sum V^p`.
pub fn clebsch_gordan(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("clebsch_gordan");
    for r in [4u32, 5] {
        let alg = QuantumAlgebra::shared(r).expect("level");
        for k in 1..=r {
            for l in 1..=r {
                if k + l > r + 1 {
                    continue;
                }
                let ps: Vec<u32> = ((k as i64 - l as i64).unsigned_abs() as u32 + 1..=k + l - 1).step_by(2).collect();
                res.check((k * l) as u32 == ps.iter().sum::<u32>(), || format!("dimensions ({k},{l}) at level {r}"));
                let qdim = &alg.quantum_integer(k as i64) * &alg.quantum_integer(l as i64);
                let qsum = ps.iter().fold(CycNum::zero(alg.order()), |acc, &p| &acc + &alg.quantum_integer(p as i64));
                res.check(qdim == qsum, || format!("quantum dimensions ({k},{l}) at level {r}"));
                let (mk, ml) = (alg.module(k, false).expect("color"), alg.module(l, false).expect("color"));
                let kk = alg.coproduct(Gen::K, &mk, &ml);
                let mut got: Vec<CycNum> = (0..kk.rows()).map(|i| kk[(i, i)].clone()).collect();
                let mut want: Vec<CycNum> = ps
                    .iter()
                    .flat_map(|&p| {
                        let m = alg.module(p, false).expect("color");
                        (0..m.dim()).map(move |i| m.k[(i, i)].clone()).collect::<Vec<_>>()
                    })
                    .collect();
                let key = |x: &CycNum| x.root_of_unity_exponent();
                got.sort_by_key(key);
                want.sort_by_key(key);
                res.check(got == want, || format!("K-weights ({k},{l}) at level {r}"));
            }
        }
    }
    res
}

pub fn color_r_vanishing(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("color_r_vanishing");
    let ev = Evaluator::new(4).expect("level 4");
    for (name, l) in crate::diagram::corpus() {
        let n = l.component_count();
        for i in 0..n {
            for other in 1..=3 {
                let mut c = vec![other; n];
                c[i] = 4;
                let v = ev.evaluate_link(&l, &c);
                res.check(matches!(&v, Ok(x) if x.is_zero()), || format!("{name} colored {c:?}"));
            }
        }
    }
    res
}

fn random_coloring<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(1..=3)).collect()
}

/// Base diagrams for move checks: the corpus plus random braid closures.
fn base_diagram<R: Rng>(rng: &mut R) -> SliceDiagram {
    if rng.gen_bool(0.5) {
        let corpus = crate::diagram::corpus();
        corpus.choose(rng).expect("nonempty").1.diagram().clone()
    } else {
        random::diagram(rng, 3, 6)
    }
}

pub fn reidemeister(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 3);
    let mut res = SuiteResult::new("reidemeister");
    let ev = Evaluator::new(4).expect("level 4");
    for _ in 0..cases {
        let d = base_diagram(&mut rng);
        let mv = random::invariance_move(&mut rng, &d);
        let moved = d.apply_move(mv).expect("move chosen to apply");
        let c = random_coloring(&mut rng, d.component_count());
        let before = ColoredDiagram::new(d, c.clone()).and_then(|cd| Ok(ev.evaluate_closed(&cd)));
        let after = ColoredDiagram::new(moved, c.clone()).and_then(|cd| Ok(ev.evaluate_closed(&cd)));
        res.check(matches!((&before, &after), (Ok(Ok(a)), Ok(Ok(b))) if a == b), || format!("{mv:?} with colors {c:?}"));
    }
    res
}

fn random_braid_tangle<R: Rng>(rng: &mut R, bottom: &[Orientation], len: usize) -> SliceDiagram {
    let n = bottom.len();
    let word = (0..len).map(|_| Generator::crossing(rng.gen(), rng.gen_range(0..n - 1))).collect();
    SliceDiagram::from_word(bottom.to_vec(), word).expect("braid tangle")
}

pub fn functoriality(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 4);
    let mut res = SuiteResult::new("functoriality");
    let ev = Evaluator::new(4).expect("level 4");
    let eval = |d: &SliceDiagram, color: u32| {
        let cd = ColoredDiagram::new(d.clone(), vec![color; d.component_count()]).expect("uniform coloring");
        ev.evaluate(&cd).expect("evaluation")
    };
    for _ in 0..20 {
        let n = rng.gen_range(2..=3);
        let bottom: Vec<Orientation> =
            (0..n).map(|_| if rng.gen() { Orientation::Up } else { Orientation::Down }).collect();
        let color = rng.gen_range(1..=3);
        let (lt, ls) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let t = random_braid_tangle(&mut rng, &bottom, lt);
        let s = random_braid_tangle(&mut rng, t.top(), ls);
        let composed = s.compose(&t).expect("matching boundaries");
        let lhs = eval(&composed, color);
        let rhs = eval(&s, color).compose(&eval(&t, color));
        res.check(rhs.as_ref().map(|r| *r == lhs).unwrap_or(false), || format!("compose on {bottom:?}, color {color}"));
        let tensored = s.tensor(&t);
        res.check(eval(&tensored, color) == eval(&s, color).tensor(&eval(&t, color)), || format!("tensor on {bottom:?}"));
    }
    res
}

pub fn orientation_independence(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 5);
    let mut res = SuiteResult::new("orientation_independence");
    let ev = Evaluator::new(4).expect("level 4");
    for _ in 0..20 {
        let d = base_diagram(&mut rng);
        let n = d.component_count();
        let c = random_coloring(&mut rng, n);
        let comp = rng.gen_range(0..n);
        let rev = d.reverse_component(comp).expect("component exists");
        let a = ev.evaluate_closed(&ColoredDiagram::new(d, c.clone()).expect("coloring"));
        let b = ev.evaluate_closed(&ColoredDiagram::new(rev, c.clone()).expect("coloring"));
        res.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || format!("component {comp} with colors {c:?}"));
    }
    res
}

pub fn color_one_removal(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 6);
    let mut res = SuiteResult::new("color_one_removal");
    let ev = Evaluator::new(4).expect("level 4");
    for _ in 0..20 {
        let d = base_diagram(&mut rng);
        let n = d.component_count();
        let mut c = random_coloring(&mut rng, n);
        let comp = rng.gen_range(0..n);
        c[comp] = 1;
        let mut mult = vec![1; n];
        mult[comp] = 0;
        let reduced = d.cable(&mult).expect("deletion");
        let kept: Vec<u32> = c.iter().enumerate().filter(|&(i, _)| i != comp).map(|(_, &k)| k).collect();
        let a = ev.evaluate_closed(&ColoredDiagram::new(d, c.clone()).expect("coloring"));
        let b = ev.evaluate_closed(&ColoredDiagram::new(reduced, kept).expect("coloring"));
        res.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || format!("component {comp} of colors {c:?}"));
    }
    res
}

pub fn skein_strategies(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 7);
    let mut res = SuiteResult::new("skein_strategies");
    for _ in 0..30 {
        let d = random::diagram(&mut rng, 4, 10);
        let a = SkeinEngine::new(Strategy::FirstBad).skein_i(&d);
        let b = SkeinEngine::new(Strategy::LastBadReversed).skein_i(&d);
        res.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || format!("{} crossings", d.crossing_count()));
    }
    res
}

/// The corpus of the cross-engine check, with framings in {-1, 0, 1} per component
/// for every link that has a framing to vary.
pub fn framed_corpus() -> Vec<(String, FramedLink)> {
    let mut out = vec![];
    for name in ["unknot", "unlink2", "hopf", "trefoil", "whitehead"] {
        let l = builtin(name).expect("builtin");
        let n = l.component_count();
        for f in all_colorings(n, 3) {
            let framing: Vec<i64> = f.iter().map(|&x| x as i64 - 2).collect();
            let fl = FramedLink::with_framing(l.diagram().clone(), &framing).expect("framing");
            out.push((format!("{name}{framing:?}"), fl));
        }
    }
    out
}

pub fn cross_engine(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("cross_engine");
    let ev = Evaluator::new(4).expect("level 4");
    for (name, l) in framed_corpus() {
        let n = l.component_count();
        let a = ev.evaluate_link(&l, &vec![2; n]);
        let b = jones_from_skein(&l);
        res.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || name.clone());
    }
    res
}

pub fn cabling(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("cabling");
    let ev = Evaluator::new(4).expect("level 4");
    for name in ["hopf", "whitehead"] {
        let l = builtin(name).expect("builtin");
        for c in all_colorings(2, 3) {
            let a = ev.evaluate_link(&l, &c);
            let b = colored_via_cabling(&l, &c).map(|r| r.value);
            res.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || format!("{name} {c:?}"));
        }
    }
    res
}

/// Base links for the blow-up check.
pub fn blowup_bases() -> Vec<(&'static str, FramedLink)> {
    ["unknot", "unlink2", "hopf", "trefoil", "whitehead"].into_iter().map(|n| (n, builtin(n).expect("builtin"))).collect()
}

/// `Z(L + unknot(+-1)) = zeta^k Z(L)` for some 16th root of unity; `k` is reported on failure.
pub fn blowup(_seed: u64) -> SuiteResult {
    let mut res = SuiteResult::new("blowup");
    for (name, l) in blowup_bases() {
        let z = SurgeryPresentation::new(l.clone(), 4).and_then(|p| p.z_exact());
        for positive in [true, false] {
            let blown = l.apply_move(crate::diagram::Move::KirbyBlowup { positive }).expect("blow-up");
            let zb = SurgeryPresentation::new(blown, 4).and_then(|p| p.z_exact());
            let ok = match (&z, &zb) {
                (Ok(a), Ok(b)) if a.is_zero() => b.is_zero(),
                (Ok(a), Ok(b)) => b.checked_div(a).ok().and_then(|q| q.root_of_unity_exponent()).is_some(),
                _ => false,
            };
            res.check(ok, || format!("{name} with a {} blow-up", if positive { "+1" } else { "-1" }));
        }
    }
    res
}

pub fn limit_ranks(seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 8);
    let mut res = SuiteResult::new("limit_rank");
    for _ in 0..20 {
        let m = CycMatrix::from_ints(16, &random::int_matrix(&mut rng, 3, 5));
        let a = random::invertible_matrix(&mut rng, 16, 3);
        let b = random::invertible_matrix(&mut rng, 16, 3);
        let amb = a.mul(&m).and_then(|x| x.mul(&b)).expect("3x3");
        res.check(limit_rank(&amb) == limit_rank(&m), || format!("A M B with M = {:?}", m.to_rows()));
    }
    for n in 1..=4usize {
        // strictly upper triangular
        let mut m = CycMatrix::zeros(16, n, n);
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = CycNum::from_int(16, rng.gen_range(-5..=5));
            }
        }
        let p = random::invertible_matrix(&mut rng, 16, n);
        let conj = p.mul(&m).and_then(|x| x.mul(&p.inverse()?)).expect("square");
        res.check(limit_rank(&conj) == 0, || format!("nilpotent of size {n}"));
    }
    for _ in 0..10 {
        let u = CycMatrix::from_ints(16, &(0..3).map(|_| vec![rng.gen_range(-4..=4)]).collect::<Vec<_>>());
        let v = CycMatrix::from_ints(16, &[(0..3).map(|_| rng.gen_range(-4..=4)).collect()]);
        let m = u.mul(&v).expect("outer product");
        res.check(limit_rank(&m) <= 1, || format!("rank-one factorization {:?}", m.to_rows()));
    }
    res
}

/// Runs every suite with the given seed.
pub fn run(seed: u64) -> SelftestReport {
    let suites = vec![
        field_axioms(seed),
        approx_homomorphism(seed),
        yang_baxter(seed),
        quasi_triangularity(seed),
        clebsch_gordan(seed),
        color_r_vanishing(seed),
        reidemeister(seed, 100),
        functoriality(seed),
        orientation_independence(seed),
        color_one_removal(seed),
        skein_strategies(seed),
        cross_engine(seed),
        cabling(seed),
        blowup(seed),
        limit_ranks(seed),
    ];
    let passed = suites.iter().map(|s| s.passed).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    SelftestReport { seed, passed, failed, suites }
}

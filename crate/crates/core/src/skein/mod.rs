//! The skein invariant `I` with `I(L+) + I(L-) = sqrt2 I(L0)`, `I(unknot) = 1`
//! and `I(unknot + K) = sqrt2 I(K)`, its Arf reading, the color-2 bridge
//! `J = t^(3 L.L) sqrt2 I` and the cabling formula for higher colors.
//!
//! The recursion walks towards a descending diagram. Components are ordered
//! and given base points; a crossing is bad when it is first reached along
//! its under-strand. A bad crossing is resolved by
//! `I(L) = sqrt2 I(L0) - I(L')`, with `L'` the diagram with that crossing
//! switched. Switching makes the crossing good without touching any other
//! crossing's status, and smoothing removes a crossing, so the pair
//! (crossings, bad crossings) decreases lexicographically. A diagram without
//! bad crossings is an unlink.

mod pd;

use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use num_integer::binomial;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::cyclotomic::{constants, CycNum};
use crate::diagram::{FramedLink, SliceDiagram};
use crate::error::InvariantError;
use crate::par::{self, ExecMode};

pub use pd::Pd;

const ORDER: u32 = 16;

/// How the recursion picks the crossing to resolve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// Base points at the smallest incoming ports; resolve the first bad crossing.
    #[default]
    FirstBad,
    /// Base points at the largest incoming ports, components in reverse; resolve the last bad crossing.
    LastBadReversed,
}

/// `sqrt2^n` in Q(zeta_16).
pub fn sqrt2_pow(n: i64) -> CycNum {
    let s = CycNum::sqrt2(ORDER);
    s.pow(n).expect("sqrt2 is invertible")
}

pub struct SkeinEngine {
    strategy: Strategy,
    mode: ExecMode,
    memo: DashMap<String, CycNum>,
    steps: AtomicUsize,
}

/// Crossing count above which the two branches are explored concurrently.
const PARALLEL_CUTOFF: usize = 10;

impl SkeinEngine {
    pub fn new(strategy: Strategy) -> Self {
        SkeinEngine { strategy, mode: ExecMode::default(), memo: DashMap::new(), steps: AtomicUsize::new(0) }
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Number of resolution steps performed so far (memo hits excluded).
    pub fn steps(&self) -> usize {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn skein_i(&self, d: &SliceDiagram) -> Result<CycNum, InvariantError> {
        let pd = Pd::from_diagram(d)?;
        let n = pd.crossing_count();
        // depth bound from the lexicographic measure: each smoothing can reset
        // the bad count to at most the remaining crossing count
        let budget = n * (n + 1) / 2 + n + 1;
        self.eval(pd, 0, budget)
    }

    fn eval(&self, mut pd: Pd, depth: usize, budget: usize) -> Result<CycNum, InvariantError> {
        if depth > budget {
            return Err(InvariantError::RecursionBudget { budget });
        }
        pd.simplify();
        let loops = pd.free_loops as i64;
        pd.free_loops = 0;
        if pd.crossing_count() == 0 {
            return Ok(sqrt2_pow(loops - 1));
        }
        let factor = sqrt2_pow(loops);
        let key = pd.key();
        if let Some(v) = self.memo.get(&key) {
            return Ok(&factor * &*v);
        }
        let reversed = self.strategy == Strategy::LastBadReversed;
        let bad = pd.bad_crossings(reversed);
        let pick = if reversed { bad.last() } else { bad.first() };
        let value = match pick {
            None => sqrt2_pow(pd.strand_components() as i64 - 1),
            Some(&c) => {
                self.steps.fetch_add(1, Ordering::Relaxed);
                let mut smoothed = pd.clone();
                smoothed.smooth(c);
                let mut switched = pd.clone();
                switched.switch(c);
                let mode = if pd.crossing_count() > PARALLEL_CUTOFF { self.mode } else { ExecMode::Sequential };
                let (a, b) = par::join(
                    mode,
                    || self.eval(smoothed, depth + 1, budget),
                    || self.eval(switched, depth + 1, budget),
                );
                &(&CycNum::sqrt2(ORDER) * &a?) - &b?
            }
        };
        self.memo.entry(key).or_insert_with(|| value.clone());
        Ok(&factor * &value)
    }

    pub fn arf(&self, d: &SliceDiagram) -> Result<ArfReport, InvariantError> {
        let i = self.skein_i(d)?;
        let components = d.component_count();
        let unit = sqrt2_pow(components as i64 - 1);
        let arf = if i.is_zero() {
            Arf::NonProper
        } else if i == unit {
            Arf::Proper { epsilon: 0 }
        } else if i == -unit {
            Arf::Proper { epsilon: 1 }
        } else {
            return Err(InvariantError::ConventionAnomaly { value: i.to_string(), components });
        };
        Ok(ArfReport { i, components, arf })
    }

    /// `J_{L,2...2} = t^(3 L.L) sqrt2 I(L)` with `t = zeta_16`.
    pub fn jones(&self, l: &FramedLink) -> Result<CycNum, InvariantError> {
        let t = constants(4)?.t_bridge;
        let ll = l.linking_matrix().total();
        let i = self.skein_i(l.diagram())?;
        Ok(&(&t.pow(3 * ll)? * &CycNum::sqrt2(ORDER)) * &i)
    }

    /// `J_{L,k} = sum_j (-1)^|j| prod C(n_i - j_i, j_i) J(L^(n - 2j))`, `n = k - 1`.
    pub fn colored_via_cabling(&self, l: &FramedLink, coloring: &[u32]) -> Result<CablingReport, InvariantError> {
        let max = 3;
        if coloring.len() != l.component_count() {
            return Err(crate::error::DiagramError::ComponentCount { expected: l.component_count(), got: coloring.len() }.into());
        }
        if let Some(&color) = coloring.iter().find(|&&c| c < 1 || c > max) {
            return Err(InvariantError::ColorOutOfRange { color, max });
        }
        let ns: Vec<usize> = coloring.iter().map(|&k| k as usize - 1).collect();
        let mut js: Vec<Vec<usize>> = vec![vec![]];
        for &n in &ns {
            js = js.into_iter().flat_map(|j| (0..=n / 2).map(move |x| [j.clone(), vec![x]].concat())).collect();
        }
        let terms: Result<Vec<CablingTerm>, InvariantError> = par::map_slice(self.mode, &js, |j| {
            let mult: Vec<usize> = ns.iter().zip(j).map(|(n, j)| n - 2 * j).collect();
            let coefficient: i64 = ns.iter().zip(j).map(|(&n, &j)| binomial(n - j, j) as i64).product::<i64>()
                * if j.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
            let cabled = l.cable(&mult)?;
            let skein_i = self.skein_i(cabled.diagram())?;
            let jones = self.jones(&cabled)?;
            Ok(CablingTerm { multiplicities: mult, coefficient, linking_total: cabled.linking_matrix().total(), skein_i, jones })
        })
        .into_iter()
        .collect();
        let terms = terms?;
        let value = terms.iter().fold(CycNum::zero(ORDER), |acc, t| &acc + &t.jones.scale_int(t.coefficient));
        Ok(CablingReport { coloring: coloring.to_vec(), value, terms })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Arf {
    Proper { epsilon: u8 },
    NonProper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArfReport {
    #[serde(rename = "I")]
    pub i: CycNum,
    pub components: usize,
    pub arf: Arf,
}

/// One cabling in the color expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CablingTerm {
    pub multiplicities: Vec<usize>,
    pub coefficient: i64,
    pub linking_total: i64,
    #[serde(rename = "I")]
    pub skein_i: CycNum,
    #[serde(rename = "J")]
    pub jones: CycNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CablingReport {
    pub coloring: Vec<u32>,
    pub value: CycNum,
    pub terms: Vec<CablingTerm>,
}

static DEFAULT: Lazy<SkeinEngine> = Lazy::new(|| SkeinEngine::new(Strategy::FirstBad));

/// `I(L)` with the default engine.
pub fn skein_i(d: &SliceDiagram) -> Result<CycNum, InvariantError> {
    DEFAULT.skein_i(d)
}

pub fn arf(d: &SliceDiagram) -> Result<ArfReport, InvariantError> {
    DEFAULT.arf(d)
}

pub fn jones_from_skein(l: &FramedLink) -> Result<CycNum, InvariantError> {
    DEFAULT.jones(l)
}

pub fn colored_via_cabling(l: &FramedLink, coloring: &[u32]) -> Result<CablingReport, InvariantError> {
    DEFAULT.colored_via_cabling(l, coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;

    fn i_of(name: &str) -> CycNum {
        skein_i(builtin(name).unwrap().diagram()).unwrap()
    }

    #[test]
    fn base_values() {
        assert!(i_of("unknot").is_one());
        assert_eq!(i_of("unlink2"), CycNum::sqrt2(16));
        assert!(i_of("unknot_kink_pos").is_one());
        assert!(skein_i(&SliceDiagram::empty()).unwrap() == sqrt2_pow(-1));
    }

    #[test]
    fn hopf_is_not_proper() {
        assert!(i_of("hopf").is_zero());
        assert_eq!(arf(builtin("hopf").unwrap().diagram()).unwrap().arf, Arf::NonProper);
    }

    #[test]
    fn trefoil_has_arf_one() {
        let r = arf(builtin("trefoil").unwrap().diagram()).unwrap();
        assert_eq!(r.arf, Arf::Proper { epsilon: 1 });
    }

    #[test]
    fn whitehead_value() {
        assert_eq!(i_of("whitehead"), -CycNum::sqrt2(16));
        let r = arf(builtin("whitehead").unwrap().diagram()).unwrap();
        assert_eq!(r.arf, Arf::Proper { epsilon: 1 });
    }

    #[test]
    fn strategies_agree() {
        let a = SkeinEngine::new(Strategy::FirstBad);
        let b = SkeinEngine::new(Strategy::LastBadReversed);
        for name in ["hopf", "trefoil", "whitehead"] {
            let d = builtin(name).unwrap().into_diagram();
            assert_eq!(a.skein_i(&d).unwrap(), b.skein_i(&d).unwrap(), "{name}");
        }
    }

    #[test]
    fn jones_of_framed_unknots() {
        let u = builtin("unknot").unwrap();
        assert_eq!(jones_from_skein(&u).unwrap(), CycNum::sqrt2(16));
        let k = builtin("unknot_kink_pos").unwrap();
        assert_eq!(jones_from_skein(&k).unwrap(), &CycNum::zeta(16, 3) * &CycNum::sqrt2(16));
        let two = u.cable(&[2]).unwrap();
        assert_eq!(jones_from_skein(&two).unwrap(), CycNum::from_int(16, 2));
    }

    #[test]
    fn cabling_color_three_on_unknot() {
        let u = builtin("unknot").unwrap();
        let rep = colored_via_cabling(&u, &[3]).unwrap();
        assert!(rep.value.is_one());
        assert_eq!(rep.terms.len(), 2);
        assert!(colored_via_cabling(&u, &[4]).is_err());
    }

    #[test]
    fn bridge_matches_the_evaluator() {
        let ev = crate::evaluator::Evaluator::new(4).unwrap();
        for (name, l) in crate::diagram::corpus() {
            let n = l.component_count();
            assert_eq!(jones_from_skein(&l).unwrap(), ev.evaluate_link(&l, &vec![2; n]).unwrap(), "{name}");
            for c in crate::evaluator::all_colorings(n, 3) {
                let rep = colored_via_cabling(&l, &c).unwrap();
                assert_eq!(rep.value, ev.evaluate_link(&l, &c).unwrap(), "{name} {c:?}");
            }
        }
    }

    #[test]
    fn random_diagrams_agree_across_engines() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ev = crate::evaluator::Evaluator::new(4).unwrap();
        for _ in 0..30 {
            let d = crate::random::diagram(&mut rng, 4, 10);
            let a = SkeinEngine::new(Strategy::FirstBad).skein_i(&d).unwrap();
            let b = SkeinEngine::new(Strategy::LastBadReversed).skein_i(&d).unwrap();
            assert_eq!(a, b);
            let l = FramedLink::blackboard(d).unwrap();
            let n = l.component_count();
            assert_eq!(jones_from_skein(&l).unwrap(), ev.evaluate_link(&l, &vec![2; n]).unwrap());
        }
    }
}

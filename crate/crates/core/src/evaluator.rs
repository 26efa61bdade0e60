//! Evaluation of colored tangle diagrams to operators.
//!
//! The diagram is contracted slice by slice against a state vector indexed by
//! the modules of the current level, so memory is bounded by the widest level.
//! Open tangles are evaluated one domain basis vector at a time.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{signature_dim, CupCap, Operator, QuantumAlgebra, StrandModule};
use crate::cyclotomic::CycNum;
use crate::diagram::{ArcDirection, FramedLink, GeneratorKind, Orientation, SliceDiagram};
use crate::error::{DiagramError, InvariantError};
use crate::linalg::CycMatrix;
use crate::par::{self, ExecMode};

/// A diagram with one color per component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredDiagram {
    diagram: SliceDiagram,
    coloring: Vec<u32>,
}

impl ColoredDiagram {
    pub fn new(diagram: SliceDiagram, coloring: Vec<u32>) -> Result<Self, DiagramError> {
        let n = diagram.component_count();
        if coloring.len() != n {
            return Err(DiagramError::ComponentCount { expected: n, got: coloring.len() });
        }
        Ok(ColoredDiagram { diagram, coloring })
    }

    pub fn diagram(&self) -> &SliceDiagram {
        &self.diagram
    }

    pub fn coloring(&self) -> &[u32] {
        &self.coloring
    }

    /// Modules of every level: a downward strand carries `V^k`, an upward one its dual.
    pub fn level_modules(&self) -> Vec<Vec<StrandModule>> {
        let topo = self.diagram.topology();
        self.diagram
            .levels()
            .iter()
            .zip(&topo.labels)
            .map(|(lv, labels)| {
                lv.iter().zip(labels).map(|(o, c)| StrandModule::new(self.coloring[*c], *o == Orientation::Up)).collect()
            })
            .collect()
    }

    pub fn domain(&self) -> Vec<StrandModule> {
        self.level_modules().into_iter().next().unwrap_or_default()
    }

    pub fn codomain(&self) -> Vec<StrandModule> {
        self.level_modules().pop().unwrap_or_default()
    }
}

/// Local operator in row-sparse form: `rows[o]` lists the nonzero `(input, value)` pairs.
struct LocalOp {
    arity_in: usize,
    in_dim: usize,
    out_dim: usize,
    rows: Vec<Vec<(usize, CycNum)>>,
}

impl LocalOp {
    fn from_matrix(m: &CycMatrix, arity_in: usize) -> Self {
        let rows = (0..m.rows())
            .map(|o| m.row(o).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect())
            .collect();
        LocalOp { arity_in, in_dim: m.cols(), out_dim: m.rows(), rows }
    }
}

pub struct Evaluator {
    alg: Arc<QuantumAlgebra>,
    mode: ExecMode,
}

impl Evaluator {
    pub fn new(level: u32) -> Result<Self, InvariantError> {
        Ok(Evaluator { alg: QuantumAlgebra::shared(level)?, mode: ExecMode::default() })
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn level(&self) -> u32 {
        self.alg.level()
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    pub fn algebra(&self) -> &QuantumAlgebra {
        &self.alg
    }

    fn check_colors(&self, coloring: &[u32]) -> Result<(), InvariantError> {
        let max = self.level();
        match coloring.iter().find(|&&c| c < 1 || c > max) {
            Some(&color) => Err(InvariantError::ColorOutOfRange { color, max }),
            None => Ok(()),
        }
    }

    fn local_ops(&self, cd: &ColoredDiagram) -> Result<Vec<(usize, usize, LocalOp)>, InvariantError> {
        let mods = cd.level_modules();
        let word = cd.diagram.word();
        let mut ops = Vec::with_capacity(word.len());
        for (s, g) in word.iter().enumerate() {
            let p = g.position;
            let below = &mods[s];
            let above = &mods[s + 1];
            let (matrix, arity) = match g.kind {
                GeneratorKind::Identity => continue,
                GeneratorKind::PositiveCrossing => ((*self.alg.braiding(below[p], below[p + 1])?).clone(), 2),
                GeneratorKind::NegativeCrossing => ((*self.alg.braiding_inv(below[p + 1], below[p])?).clone(), 2),
                GeneratorKind::Cup(dir) => {
                    let kind = if dir == ArcDirection::LeftToRight { CupCap::N } else { CupCap::NCheck };
                    (self.alg.cupcap_matrix(kind, above[p].color)?, 0)
                }
                GeneratorKind::Cap(dir) => {
                    let kind = if dir == ArcDirection::LeftToRight { CupCap::E } else { CupCap::ECheck };
                    (self.alg.cupcap_matrix(kind, below[p].color)?, 2)
                }
            };
            ops.push((s, p, LocalOp::from_matrix(&matrix, arity)));
        }
        Ok(ops)
    }

    /// Pushes one state vector through all slices.
    fn run(&self, mods: &[Vec<StrandModule>], ops: &[(usize, usize, LocalOp)], mut state: Vec<CycNum>) -> Vec<CycNum> {
        let order = self.order();
        for (s, p, op) in ops {
            let dims = &mods[*s];
            let left: usize = dims[..*p].iter().map(StrandModule::dim).product();
            let right: usize = dims[p + op.arity_in..].iter().map(StrandModule::dim).product();
            let (in_dim, out_dim) = (op.in_dim, op.out_dim);
            let old = &state;
            state = par::map_indices(self.mode, left * out_dim * right, |idx| {
                let l = idx / (out_dim * right);
                let o = (idx / right) % out_dim;
                let rr = idx % right;
                let mut acc = CycNum::zero(order);
                for (i, v) in &op.rows[o] {
                    let x = &old[(l * in_dim + i) * right + rr];
                    if !x.is_zero() {
                        acc = &acc + &(v * x);
                    }
                }
                acc
            });
        }
        state
    }

    /// The operator of a colored diagram, from its bottom modules to its top modules.
    pub fn evaluate(&self, cd: &ColoredDiagram) -> Result<Operator, InvariantError> {
        self.check_colors(&cd.coloring)?;
        let ops = self.local_ops(cd)?;
        let mods = cd.level_modules();
        let (domain, codomain) = (mods[0].clone(), mods[mods.len() - 1].clone());
        let (n_in, n_out) = (signature_dim(&domain), signature_dim(&codomain));
        let order = self.order();
        let columns = par::map_indices(self.mode, n_in, |j| {
            let mut basis = vec![CycNum::zero(order); n_in];
            basis[j] = CycNum::one(order);
            self.run(&mods, &ops, basis)
        });
        let mut m = CycMatrix::zeros(order, n_out, n_in);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Operator::new(domain, codomain, m)
    }

    /// The scalar of a closed colored diagram.
    pub fn evaluate_closed(&self, cd: &ColoredDiagram) -> Result<CycNum, InvariantError> {
        if !cd.diagram.is_closed() {
            return Err(DiagramError::NotClosed { bottom: cd.diagram.bottom().len(), top: cd.diagram.top().len() }.into());
        }
        Ok(self.evaluate(cd)?.scalar().expect("closed diagram"))
    }

    /// `J_{L,k}` for a framed link and one coloring.
    pub fn evaluate_link(&self, link: &FramedLink, coloring: &[u32]) -> Result<CycNum, InvariantError> {
        let cd = ColoredDiagram::new(link.diagram().clone(), coloring.to_vec())?;
        self.evaluate_closed(&cd)
    }

    /// One scalar per coloring, in input order.
    pub fn evaluate_colored_link_family(
        &self,
        link: &FramedLink,
        colorings: &[Vec<u32>],
    ) -> Result<Vec<(Vec<u32>, CycNum)>, InvariantError> {
        par::map_slice(self.mode, colorings, |c| self.evaluate_link(link, c).map(|v| (c.clone(), v))).into_iter().collect()
    }
}

/// Evaluates a colored diagram at level `r`.
pub fn evaluate(cd: &ColoredDiagram, r: u32) -> Result<Operator, InvariantError> {
    Evaluator::new(r)?.evaluate(cd)
}

/// All colorings in `{1, ..., max}^n`, lexicographic with the first component most significant.
pub fn all_colorings(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|c| (1..=max).map(move |k| [c.clone(), vec![k]].concat())).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;

    fn ev() -> Evaluator {
        Evaluator::new(4).unwrap()
    }

    #[test]
    fn empty_diagram_is_one() {
        let cd = ColoredDiagram::new(SliceDiagram::empty(), vec![]).unwrap();
        assert!(ev().evaluate_closed(&cd).unwrap().is_one());
    }

    #[test]
    fn unknot_gives_quantum_dimensions() {
        let u = builtin("unknot").unwrap();
        let vals = ev().evaluate_colored_link_family(&u, &all_colorings(1, 4)).unwrap();
        let got: Vec<CycNum> = vals.into_iter().map(|(_, v)| v).collect();
        assert_eq!(got, vec![CycNum::one(16), CycNum::sqrt2(16), CycNum::one(16), CycNum::zero(16)]);
    }

    #[test]
    fn positive_kink_twists() {
        let k = builtin("unknot_kink_pos").unwrap();
        let e = ev();
        assert!(e.evaluate_link(&k, &[1]).unwrap().is_one());
        assert_eq!(e.evaluate_link(&k, &[2]).unwrap(), &CycNum::zeta(16, 3) * &CycNum::sqrt2(16));
        assert_eq!(e.evaluate_link(&k, &[3]).unwrap(), CycNum::from_int(16, -1));
    }

    #[test]
    fn whitehead_reference_values() {
        let wh = FramedLink::with_framing(builtin("whitehead").unwrap().into_diagram(), &[0, 0]).unwrap();
        let e = ev();
        assert!(e.evaluate_link(&wh, &[1, 1]).unwrap().is_one());
        assert!(e.evaluate_link(&wh, &[3, 1]).unwrap().is_one());
        assert_eq!(e.evaluate_link(&wh, &[1, 2]).unwrap(), CycNum::sqrt2(16));
        assert_eq!(e.evaluate_link(&wh, &[2, 2]).unwrap(), CycNum::from_int(16, -2));
    }

    #[test]
    fn open_tangle_operator() {
        // a single positive crossing on two downward strands is the braiding
        let d = SliceDiagram::from_word(
            vec![Orientation::Down, Orientation::Down],
            vec![crate::diagram::Generator::crossing(true, 0)],
        )
        .unwrap();
        let cd = ColoredDiagram::new(d, vec![2, 3]).unwrap();
        let op = ev().evaluate(&cd).unwrap();
        let expected = crate::algebra::braiding(2, 3, 4).unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn sequential_matches_parallel() {
        let wh = builtin("whitehead").unwrap();
        let a = ev().with_mode(ExecMode::Sequential).evaluate_link(&wh, &[3, 2]).unwrap();
        let b = ev().with_mode(ExecMode::Parallel).evaluate_link(&wh, &[3, 2]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_colors_are_rejected() {
        let u = builtin("unknot").unwrap();
        assert!(matches!(ev().evaluate_link(&u, &[5]), Err(InvariantError::ColorOutOfRange { color: 5, max: 4 })));
        assert!(ev().evaluate_link(&u, &[0]).is_err());
        assert!(ev().evaluate_link(&u, &[1, 1]).is_err());
    }
}

use super::{ArcDirection, FramedLink, Generator, GeneratorKind, Orientation, SliceDiagram};
use crate::error::DiagramError;

/// How to resolve a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothMode {
    /// Exchange over and under strands.
    Switch,
    /// Replace the crossing by its oriented smoothing.
    Smooth,
}

/// Local rewrites of a diagram. `step` indexes a level of the flattened word:
/// insertions go between `word[step - 1]` and `word[step]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// A positive curl and a negative curl on opposite sides of the strand at `position`.
    KinkPair { step: usize, position: usize, positive_on_right: bool },
    /// Two cancelling crossings between strands `position` and `position + 1`.
    R2 { step: usize, position: usize, positive_first: bool },
    /// Braid-like triangle move on `word[step..step + 3]`.
    R3 { step: usize },
    /// Adjoin a disjoint unknot with framing +1 or -1 on the right.
    KirbyBlowup { positive: bool },
}

impl SliceDiagram {
    /// `self` after `other`: `other` is read first (bottom), then `self`.
    pub fn compose(&self, other: &SliceDiagram) -> Result<SliceDiagram, DiagramError> {
        if other.top() != self.bottom() {
            return Err(DiagramError::Boundary(format!(
                "top of the lower diagram {:?} does not match bottom of the upper {:?}",
                other.top(),
                self.bottom()
            )));
        }
        let word = other.word().iter().chain(self.word()).copied().collect();
        SliceDiagram::from_word(other.bottom().to_vec(), word)
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &SliceDiagram) -> SliceDiagram {
        let shift = self.top().len();
        let word = self.word().iter().copied().chain(other.word().iter().map(|g| g.shifted(shift))).collect();
        let bottom = self.bottom().iter().chain(other.bottom()).copied().collect();
        SliceDiagram::from_word(bottom, word).expect("tensor of valid diagrams is valid")
    }

    /// Switches or smooths the crossing at word index `step`.
    pub fn resolve(&self, step: usize, mode: SmoothMode) -> Result<SliceDiagram, DiagramError> {
        let g = *self
            .word()
            .get(step)
            .filter(|g| g.is_crossing())
            .ok_or_else(|| DiagramError::MoveNotApplicable(format!("no crossing at step {step}")))?;
        let mut word = self.word().to_vec();
        match mode {
            SmoothMode::Switch => {
                word[step] = Generator::crossing(g.crossing_type() < 0, g.position);
            }
            SmoothMode::Smooth => {
                let lv = &self.levels()[step];
                let (l, r) = (lv[g.position], lv[g.position + 1]);
                let replacement = if l == r {
                    vec![]
                } else {
                    vec![
                        Generator::cap(ArcDirection::for_cap(l), g.position),
                        Generator::cup(ArcDirection::for_cup(r), g.position),
                    ]
                };
                word.splice(step..=step, replacement);
            }
        }
        SliceDiagram::from_word(self.bottom().to_vec(), word)
    }

    /// Switches the crossing at the `index`-th crossing (counting crossings only).
    pub fn resolve_crossing(&self, index: usize, mode: SmoothMode) -> Result<SliceDiagram, DiagramError> {
        let step = *self
            .crossing_steps()
            .get(index)
            .ok_or_else(|| DiagramError::MoveNotApplicable(format!("diagram has no crossing #{index}")))?;
        self.resolve(step, mode)
    }

    pub fn apply_move(&self, mv: Move) -> Result<SliceDiagram, DiagramError> {
        match mv {
            Move::KinkPair { step, position, positive_on_right } => {
                let lv = self.level_checked(step)?;
                if position >= lv.len() {
                    return Err(DiagramError::MoveNotApplicable(format!("no strand {position} at level {step}")));
                }
                let o = lv[position];
                let mut ins = curl(o, position, true, positive_on_right);
                ins.extend(curl(o, position, false, !positive_on_right));
                self.insert(step, ins)
            }
            Move::R2 { step, position, positive_first } => {
                let lv = self.level_checked(step)?;
                if position + 1 >= lv.len() {
                    return Err(DiagramError::MoveNotApplicable(format!("no strand pair at {position} on level {step}")));
                }
                self.insert(
                    step,
                    vec![Generator::crossing(positive_first, position), Generator::crossing(!positive_first, position)],
                )
            }
            Move::R3 { step } => {
                let w = self.word();
                let triple = w.get(step..step + 3).ok_or_else(|| DiagramError::MoveNotApplicable(format!("no three generators at step {step}")))?;
                if !triple.iter().all(Generator::is_crossing) {
                    return Err(DiagramError::MoveNotApplicable("R3 needs three crossings".into()));
                }
                let (p, q) = (triple[0].position, triple[1].position);
                let adjacent = triple[2].position == p && (q == p + 1 || p == q + 1);
                let (a, b, c) = (triple[0].crossing_type(), triple[1].crossing_type(), triple[2].crossing_type());
                if !adjacent || (a == c && a != b) {
                    return Err(DiagramError::MoveNotApplicable(format!("no triangle pattern at step {step}")));
                }
                let mut word = w.to_vec();
                word[step] = Generator::crossing(c > 0, q);
                word[step + 1] = Generator::crossing(b > 0, p);
                word[step + 2] = Generator::crossing(a > 0, q);
                SliceDiagram::from_word(self.bottom().to_vec(), word)
            }
            Move::KirbyBlowup { positive } => {
                let unknot = SliceDiagram::from_word(
                    vec![],
                    vec![
                        Generator::cup(ArcDirection::RightToLeft, 0),
                        Generator::cup(ArcDirection::RightToLeft, 1),
                        Generator::crossing(positive, 0),
                        Generator::cap(ArcDirection::LeftToRight, 1),
                        Generator::cap(ArcDirection::LeftToRight, 0),
                    ],
                )
                .expect("kinked unknot");
                Ok(self.tensor(&unknot))
            }
        }
    }

    fn level_checked(&self, step: usize) -> Result<&[Orientation], DiagramError> {
        self.levels()
            .get(step)
            .map(Vec::as_slice)
            .ok_or_else(|| DiagramError::MoveNotApplicable(format!("no level {step}")))
    }

    fn insert(&self, step: usize, gens: Vec<Generator>) -> Result<SliceDiagram, DiagramError> {
        let mut word = self.word().to_vec();
        word.splice(step..step, gens);
        SliceDiagram::from_word(self.bottom().to_vec(), word)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> SliceDiagram {
        let word = self
            .word()
            .iter()
            .map(|g| if g.is_crossing() { Generator::crossing(g.crossing_type() < 0, g.position) } else { *g })
            .collect();
        SliceDiagram::from_word(self.bottom().to_vec(), word).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of one component.
    pub fn reverse_component(&self, component: usize) -> Result<SliceDiagram, DiagramError> {
        let topo = self.topology();
        if component >= topo.n_components {
            return Err(DiagramError::ComponentCount { expected: topo.n_components, got: component + 1 });
        }
        let bottom = self
            .bottom()
            .iter()
            .enumerate()
            .map(|(i, o)| if topo.labels[0][i] == component { o.reversed() } else { *o })
            .collect();
        let word = self
            .word()
            .iter()
            .enumerate()
            .map(|(s, g)| match g.kind {
                GeneratorKind::Cup(dir) if topo.labels[s + 1][g.position] == component => Generator::cup(dir.flipped(), g.position),
                GeneratorKind::Cap(dir) if topo.labels[s][g.position] == component => Generator::cap(dir.flipped(), g.position),
                _ => *g,
            })
            .collect();
        SliceDiagram::from_word(bottom, word)
    }

    /// Replaces every strand of component `i` by `multiplicities[i]` parallel copies
    /// in the blackboard framing; multiplicity 0 deletes the component.
    pub fn cable(&self, multiplicities: &[usize]) -> Result<SliceDiagram, DiagramError> {
        let topo = self.topology();
        if multiplicities.len() != topo.n_components {
            return Err(DiagramError::ComponentCount { expected: topo.n_components, got: multiplicities.len() });
        }
        let mult = |s: usize, i: usize| multiplicities[topo.labels[s][i]];
        // start index of strand i at level s in the cabled diagram
        let start = |s: usize, i: usize| (0..i).map(|j| mult(s, j)).sum::<usize>();
        let mut word = Vec::new();
        for (s, g) in self.word().iter().enumerate() {
            let p = g.position;
            let at = start(s, p);
            match g.kind {
                GeneratorKind::Identity => {}
                GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => {
                    let (m, n) = (mult(s, p), mult(s, p + 1));
                    for k in (0..m).rev() {
                        for t in 0..n {
                            word.push(Generator::new(g.kind, at + k + t));
                        }
                    }
                }
                GeneratorKind::Cup(dir) => {
                    let m = multiplicities[topo.labels[s + 1][p]];
                    for k in 0..m {
                        word.push(Generator::cup(dir, at + k));
                    }
                }
                GeneratorKind::Cap(dir) => {
                    let m = mult(s, p);
                    for k in (0..m).rev() {
                        word.push(Generator::cap(dir, at + k));
                    }
                }
            }
        }
        let bottom = self
            .bottom()
            .iter()
            .enumerate()
            .flat_map(|(i, o)| std::iter::repeat(*o).take(mult(0, i)))
            .collect();
        SliceDiagram::from_word(bottom, word)
    }
}

/// A curl on a strand with orientation `o` at `position`, on its right or left side.
fn curl(o: Orientation, position: usize, right: bool, positive: bool) -> Vec<Generator> {
    // The crossing joins two parallel strands, so its sign equals its type.
    if right {
        vec![
            Generator::cup(ArcDirection::for_cup(o), position + 1),
            Generator::crossing(positive, position),
            Generator::cap(ArcDirection::for_cap(o), position + 1),
        ]
    } else {
        vec![
            Generator::cup(ArcDirection::for_cup(o.reversed()), position),
            Generator::crossing(positive, position + 1),
            Generator::cap(ArcDirection::for_cap(o.reversed()), position),
        ]
    }
}

pub(super) fn insert_kink_on_component(d: &SliceDiagram, component: usize, positive: bool) -> Result<SliceDiagram, DiagramError> {
    let topo = d.topology();
    let (step, position) = topo
        .labels
        .iter()
        .enumerate()
        .find_map(|(s, row)| row.iter().position(|&c| c == component).map(|p| (s, p)))
        .ok_or_else(|| DiagramError::ComponentCount { expected: topo.n_components, got: component + 1 })?;
    let o = d.levels()[step][position];
    d.insert(step, curl(o, position, true, positive))
}

impl FramedLink {
    /// Cabling in the blackboard framing of the materialized diagram.
    pub fn cable(&self, multiplicities: &[usize]) -> Result<FramedLink, DiagramError> {
        FramedLink::blackboard(self.diagram().cable(multiplicities)?)
    }

    /// Moves that preserve the framed isotopy class keep the framing vector.
    pub fn apply_move(&self, mv: Move) -> Result<FramedLink, DiagramError> {
        FramedLink::blackboard(self.diagram().apply_move(mv)?)
    }
}

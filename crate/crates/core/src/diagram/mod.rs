//! Framed oriented tangle diagrams written as words of horizontal slices.
//!
//! A diagram is read bottom to top. Every slice holds generators acting on
//! disjoint strand intervals; internally the slices are flattened into a word
//! of single generators (rightmost generator of a slice first), which is the
//! form every algorithm works on.
//!
//! Crossing convention: `x+` is the crossing whose over-strand runs from the
//! bottom-left to the top-right endpoint. With both strands oriented the same
//! way it is a positive crossing; with opposite orientations it is negative.

mod builtins;
mod linking;
mod notation;
mod ops;

use std::fmt;

use serde::Serialize;

use crate::error::DiagramError;

pub use builtins::{builtin, builtin_names, corpus};
pub use linking::{signature, LinkingMatrix};
pub use notation::{format_slice_notation, parse_slice_notation};
pub use ops::{Move, SmoothMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Up => 1,
            Orientation::Down => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Up => Orientation::Down,
            Orientation::Down => Orientation::Up,
        }
    }
}

/// Direction of travel along a cup or cap, read left to right.
///
/// `LeftToRight` cups have their left leg oriented down and right leg up;
/// `LeftToRight` caps take a left strand oriented up and a right strand oriented down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArcDirection {
    LeftToRight,
    RightToLeft,
}

impl ArcDirection {
    pub fn flipped(self) -> Self {
        match self {
            ArcDirection::LeftToRight => ArcDirection::RightToLeft,
            ArcDirection::RightToLeft => ArcDirection::LeftToRight,
        }
    }

    /// Orientations (left, right) of the two legs.
    pub fn cup_legs(self) -> (Orientation, Orientation) {
        match self {
            ArcDirection::LeftToRight => (Orientation::Down, Orientation::Up),
            ArcDirection::RightToLeft => (Orientation::Up, Orientation::Down),
        }
    }

    pub fn cap_legs(self) -> (Orientation, Orientation) {
        match self {
            ArcDirection::LeftToRight => (Orientation::Up, Orientation::Down),
            ArcDirection::RightToLeft => (Orientation::Down, Orientation::Up),
        }
    }

    pub fn for_cup(left: Orientation) -> Self {
        match left {
            Orientation::Down => ArcDirection::LeftToRight,
            Orientation::Up => ArcDirection::RightToLeft,
        }
    }

    pub fn for_cap(left: Orientation) -> Self {
        match left {
            Orientation::Up => ArcDirection::LeftToRight,
            Orientation::Down => ArcDirection::RightToLeft,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    Identity,
    PositiveCrossing,
    NegativeCrossing,
    Cup(ArcDirection),
    Cap(ArcDirection),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub position: usize,
}

impl Generator {
    pub fn new(kind: GeneratorKind, position: usize) -> Self {
        Generator { kind, position }
    }

    pub fn crossing(positive: bool, position: usize) -> Self {
        let kind = if positive { GeneratorKind::PositiveCrossing } else { GeneratorKind::NegativeCrossing };
        Generator { kind, position }
    }

    pub fn cup(dir: ArcDirection, position: usize) -> Self {
        Generator { kind: GeneratorKind::Cup(dir), position }
    }

    pub fn cap(dir: ArcDirection, position: usize) -> Self {
        Generator { kind: GeneratorKind::Cap(dir), position }
    }

    pub fn arity_in(&self) -> usize {
        match self.kind {
            GeneratorKind::Identity => 1,
            GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => 2,
            GeneratorKind::Cup(_) => 0,
            GeneratorKind::Cap(_) => 2,
        }
    }

    pub fn arity_out(&self) -> usize {
        match self.kind {
            GeneratorKind::Identity => 1,
            GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => 2,
            GeneratorKind::Cup(_) => 2,
            GeneratorKind::Cap(_) => 0,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing)
    }

    /// +1 for `x+`, -1 for `x-`, 0 otherwise.
    pub fn crossing_type(&self) -> i64 {
        match self.kind {
            GeneratorKind::PositiveCrossing => 1,
            GeneratorKind::NegativeCrossing => -1,
            _ => 0,
        }
    }

    fn shifted(self, by: usize) -> Self {
        Generator { position: self.position + by, ..self }
    }

    /// Applies the generator to the orientations of one level.
    fn apply(&self, level: &[Orientation]) -> Result<Vec<Orientation>, String> {
        let p = self.position;
        let a = self.arity_in();
        if p + a > level.len() || (a == 0 && p > level.len()) {
            return Err(format!("generator at position {p} does not fit {} strands", level.len()));
        }
        let mut out = level[..p].to_vec();
        match self.kind {
            GeneratorKind::Identity => out.push(level[p]),
            GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => {
                out.push(level[p + 1]);
                out.push(level[p]);
            }
            GeneratorKind::Cup(dir) => {
                let (l, r) = dir.cup_legs();
                out.push(l);
                out.push(r);
            }
            GeneratorKind::Cap(dir) => {
                let expected = dir.cap_legs();
                if (level[p], level[p + 1]) != expected {
                    return Err(format!(
                        "cap at position {p} expects orientations {:?}, found {:?}",
                        expected,
                        (level[p], level[p + 1])
                    ));
                }
            }
        }
        out.extend_from_slice(&level[p + a..]);
        Ok(out)
    }
}

/// A validated tangle diagram.
#[derive(Clone, Serialize)]
pub struct SliceDiagram {
    bottom: Vec<Orientation>,
    slices: Vec<Vec<Generator>>,
    #[serde(skip)]
    word: Vec<Generator>,
    #[serde(skip)]
    levels: Vec<Vec<Orientation>>,
}

/// Syntactic equality of normalized words.
impl PartialEq for SliceDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.bottom == other.bottom && self.word == other.word
    }
}

impl Eq for SliceDiagram {}

impl fmt::Debug for SliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_slice_notation(self))
    }
}

impl SliceDiagram {
    /// Builds a diagram from slices of generators acting on disjoint intervals.
    pub fn new(bottom: Vec<Orientation>, slices: Vec<Vec<Generator>>) -> Result<Self, DiagramError> {
        let mut word = Vec::new();
        let mut owner = Vec::new();
        let mut width = bottom.len();
        for (si, slice) in slices.iter().enumerate() {
            let mut gens: Vec<Generator> = slice.iter().copied().filter(|g| g.kind != GeneratorKind::Identity).collect();
            for g in slice {
                if g.kind == GeneratorKind::Identity && g.position >= width {
                    return Err(DiagramError::Invalid { slice: si, message: format!("identity at {} beyond {width} strands", g.position) });
                }
            }
            // rightmost first; at equal positions a cup sits left of the interval starting there
            gens.sort_by_key(|g| std::cmp::Reverse((g.position, g.arity_in() > 0)));
            let mut prev: Option<Generator> = None;
            for g in &gens {
                if let Some(q) = prev {
                    let clash = if g.arity_in() == 0 {
                        q.arity_in() == 0 && q.position == g.position
                    } else {
                        g.position + g.arity_in() > q.position
                    };
                    if clash {
                        return Err(DiagramError::Invalid { slice: si, message: "generators overlap".into() });
                    }
                }
                prev = Some(*g);
            }
            for g in gens {
                width = (width + g.arity_out()).saturating_sub(g.arity_in());
                word.push(g);
                owner.push(si);
            }
        }
        let levels = compute_levels(&bottom, &word).map_err(|(step, message)| DiagramError::Invalid {
            slice: owner.get(step).copied().unwrap_or(0),
            message,
        })?;
        Ok(SliceDiagram { bottom, slices, word, levels })
    }

    /// Builds a diagram from a word of single generators (one per slice).
    pub fn from_word(bottom: Vec<Orientation>, word: Vec<Generator>) -> Result<Self, DiagramError> {
        let word: Vec<Generator> = word.into_iter().filter(|g| g.kind != GeneratorKind::Identity).collect();
        let levels = compute_levels(&bottom, &word).map_err(|(step, message)| DiagramError::Invalid { slice: step, message })?;
        let slices = word.iter().map(|g| vec![*g]).collect();
        Ok(SliceDiagram { bottom, slices, word, levels })
    }

    pub fn empty() -> Self {
        SliceDiagram { bottom: vec![], slices: vec![], word: vec![], levels: vec![vec![]] }
    }

    /// Identity tangle on the given strands.
    pub fn identity(strands: Vec<Orientation>) -> Self {
        SliceDiagram { levels: vec![strands.clone()], bottom: strands, slices: vec![], word: vec![] }
    }

    pub fn bottom(&self) -> &[Orientation] {
        &self.bottom
    }

    pub fn top(&self) -> &[Orientation] {
        self.levels.last().expect("at least one level")
    }

    pub fn slices(&self) -> &[Vec<Generator>] {
        &self.slices
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    /// Orientations at each level; `levels()[s]` sits just below `word()[s]`.
    pub fn levels(&self) -> &[Vec<Orientation>] {
        &self.levels
    }

    pub fn is_closed(&self) -> bool {
        self.bottom.is_empty() && self.top().is_empty()
    }

    pub fn max_width(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn crossing_count(&self) -> usize {
        self.word.iter().filter(|g| g.is_crossing()).count()
    }

    /// Steps (word indices) holding crossings, in order.
    pub fn crossing_steps(&self) -> Vec<usize> {
        self.word.iter().enumerate().filter(|(_, g)| g.is_crossing()).map(|(i, _)| i).collect()
    }

    /// Oriented sign of the crossing at `step`.
    pub fn crossing_sign(&self, step: usize) -> i64 {
        let g = self.word[step];
        let lv = &self.levels[step];
        g.crossing_type() * lv[g.position].sign() * lv[g.position + 1].sign()
    }

    pub fn topology(&self) -> Topology {
        Topology::of(self)
    }

    pub fn component_count(&self) -> usize {
        self.topology().n_components
    }

    /// Blackboard writhe of each component (sum of signs of its self-crossings).
    pub fn writhe(&self) -> Vec<i64> {
        let topo = self.topology();
        let mut w = vec![0; topo.n_components];
        for step in self.crossing_steps() {
            let p = self.word[step].position;
            let (a, b) = (topo.labels[step][p], topo.labels[step][p + 1]);
            if a == b {
                w[a] += self.crossing_sign(step);
            }
        }
        w
    }
}

fn compute_levels(bottom: &[Orientation], word: &[Generator]) -> Result<Vec<Vec<Orientation>>, (usize, String)> {
    let mut levels = Vec::with_capacity(word.len() + 1);
    levels.push(bottom.to_vec());
    for (step, g) in word.iter().enumerate() {
        let next = g.apply(levels.last().unwrap()).map_err(|m| (step, m))?;
        levels.push(next);
    }
    Ok(levels)
}

/// Connectivity of the strands of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    pub n_components: usize,
    /// `labels[s][i]` is the component of strand `i` at level `s`.
    pub labels: Vec<Vec<usize>>,
    pub closed: Vec<bool>,
}

impl Topology {
    fn of(d: &SliceDiagram) -> Self {
        // node ids: level-major
        let mut offsets = Vec::with_capacity(d.levels.len());
        let mut total = 0;
        for lv in &d.levels {
            offsets.push(total);
            total += lv.len();
        }
        let mut uf = UnionFind::new(total);
        for (s, g) in d.word.iter().enumerate() {
            let (lo, hi) = (offsets[s], offsets[s + 1]);
            let width = d.levels[s].len();
            let p = g.position;
            let (ai, ao) = (g.arity_in(), g.arity_out());
            for i in 0..p {
                uf.union(lo + i, hi + i);
            }
            for i in p + ai..width {
                uf.union(lo + i, hi + i - ai + ao);
            }
            match g.kind {
                GeneratorKind::Identity => uf.union(lo + p, hi + p),
                GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => {
                    uf.union(lo + p, hi + p + 1);
                    uf.union(lo + p + 1, hi + p);
                }
                GeneratorKind::Cup(_) => uf.union(hi + p, hi + p + 1),
                GeneratorKind::Cap(_) => uf.union(lo + p, lo + p + 1),
            }
        }
        let mut ids = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(d.levels.len());
        for (s, lv) in d.levels.iter().enumerate() {
            let mut row = Vec::with_capacity(lv.len());
            for i in 0..lv.len() {
                let root = uf.find(offsets[s] + i);
                let next = ids.len();
                row.push(*ids.entry(root).or_insert(next));
            }
            labels.push(row);
        }
        let n = ids.len();
        let mut closed = vec![true; n];
        for &c in labels.first().into_iter().flatten().chain(labels.last().into_iter().flatten()) {
            closed[c] = false;
        }
        Topology { n_components: n, labels, closed }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A closed diagram whose blackboard writhe realizes the framing of each component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedLink {
    diagram: SliceDiagram,
    framing: Vec<i64>,
}

impl FramedLink {
    /// Uses the diagram's own blackboard framing.
    pub fn blackboard(diagram: SliceDiagram) -> Result<Self, DiagramError> {
        if !diagram.is_closed() {
            return Err(DiagramError::NotClosed { bottom: diagram.bottom.len(), top: diagram.top().len() });
        }
        let framing = diagram.writhe();
        Ok(FramedLink { diagram, framing })
    }

    /// Inserts kinks until each component's writhe equals the requested framing.
    pub fn with_framing(diagram: SliceDiagram, framing: &[i64]) -> Result<Self, DiagramError> {
        let base = Self::blackboard(diagram)?;
        if framing.len() != base.framing.len() {
            return Err(DiagramError::ComponentCount { expected: base.framing.len(), got: framing.len() });
        }
        let mut d = base.diagram;
        for (c, (&want, &have)) in framing.iter().zip(&base.framing).enumerate() {
            let delta = want - have;
            for _ in 0..delta.unsigned_abs() {
                d = ops::insert_kink_on_component(&d, c, delta > 0)?;
            }
        }
        Ok(FramedLink { diagram: d, framing: framing.to_vec() })
    }

    pub fn diagram(&self) -> &SliceDiagram {
        &self.diagram
    }

    pub fn framing(&self) -> &[i64] {
        &self.framing
    }

    pub fn component_count(&self) -> usize {
        self.framing.len()
    }

    pub fn into_diagram(self) -> SliceDiagram {
        self.diagram
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up_down() -> Vec<Orientation> {
        vec![Orientation::Up, Orientation::Down]
    }

    #[test]
    fn unknot_from_cup_and_cap() {
        let d = SliceDiagram::from_word(
            vec![],
            vec![Generator::cup(ArcDirection::RightToLeft, 0), Generator::cap(ArcDirection::LeftToRight, 0)],
        )
        .unwrap();
        assert!(d.is_closed());
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn mismatched_cap_names_the_slice() {
        let err = SliceDiagram::new(
            vec![],
            vec![
                vec![Generator::cup(ArcDirection::RightToLeft, 0)],
                vec![Generator::cap(ArcDirection::RightToLeft, 0)],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::Invalid { slice: 1, .. }));
    }

    #[test]
    fn parallel_generators_in_one_slice() {
        let d = SliceDiagram::new(
            vec![],
            vec![
                vec![Generator::cup(ArcDirection::RightToLeft, 0), Generator::cup(ArcDirection::RightToLeft, 0)],
            ],
        );
        assert!(d.is_err(), "two cups at the same slot are ambiguous");
        let d = SliceDiagram::new(
            up_down().into_iter().chain(up_down()).collect(),
            vec![vec![Generator::cap(ArcDirection::LeftToRight, 0), Generator::cap(ArcDirection::LeftToRight, 2)]],
        )
        .unwrap();
        assert!(d.top().is_empty());
        assert_eq!(d.word().len(), 2);
        assert_eq!(d.word()[0].position, 2);
    }

    #[test]
    fn crossing_sign_depends_on_orientations() {
        let par = SliceDiagram::from_word(vec![Orientation::Up, Orientation::Up], vec![Generator::crossing(true, 0)]).unwrap();
        assert_eq!(par.crossing_sign(0), 1);
        let anti = SliceDiagram::from_word(up_down(), vec![Generator::crossing(true, 0)]).unwrap();
        assert_eq!(anti.crossing_sign(0), -1);
        assert_eq!(anti.top(), &[Orientation::Down, Orientation::Up]);
    }
}

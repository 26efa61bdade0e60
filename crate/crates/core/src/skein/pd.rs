//! Planar diagram form of a closed link diagram: crossings with four ports and
//! edges between ports, plus a count of crossingless loops.
//!
//! Ports of crossing `c` are `4c + k` with `k = 0, 1, 2, 3` for bottom-left,
//! bottom-right, top-right, top-left, in counterclockwise order. The two strands
//! through a crossing join ports `0-2` and `1-3`.

use std::fmt::Write as _;

use crate::diagram::{GeneratorKind, Orientation, SliceDiagram};
use crate::error::DiagramError;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pd {
    /// Port at the other end of each port's edge; `NONE` for removed crossings.
    nbr: Vec<usize>,
    /// Whether the strand enters the crossing through this port.
    incoming: Vec<bool>,
    /// Whether ports 0 and 2 form the over-strand.
    over_even: Vec<bool>,
    alive: Vec<bool>,
    pub free_loops: usize,
}

pub fn opposite(p: usize) -> usize {
    (p & !3) | ((p + 2) & 3)
}

fn crossing_of(p: usize) -> usize {
    p >> 2
}

fn ccw_next(p: usize) -> usize {
    (p & !3) | ((p + 1) & 3)
}

impl Pd {
    pub fn from_diagram(d: &SliceDiagram) -> Result<Self, DiagramError> {
        if !d.is_closed() {
            return Err(DiagramError::NotClosed { bottom: d.bottom().len(), top: d.top().len() });
        }
        let n = d.crossing_count();
        // Nodes: ports first, then two virtual nodes per cup.
        let mut links: Vec<Vec<usize>> = vec![Vec::new(); 4 * n];
        let mut incoming = vec![false; 4 * n];
        let mut over_even = vec![false; n];
        let mut ends: Vec<usize> = Vec::new();
        fn link(links: &mut [Vec<usize>], a: usize, b: usize) {
            links[a].push(b);
            links[b].push(a);
        }
        let mut c = 0;
        for (s, g) in d.word().iter().enumerate() {
            let p = g.position;
            let lv = &d.levels()[s];
            match g.kind {
                GeneratorKind::Identity => {}
                GeneratorKind::PositiveCrossing | GeneratorKind::NegativeCrossing => {
                    let base = 4 * c;
                    link(&mut links, ends[p], base);
                    link(&mut links, ends[p + 1], base + 1);
                    // an upward strand enters at the bottom
                    incoming[base] = lv[p] == Orientation::Up;
                    incoming[base + 2] = lv[p] != Orientation::Up;
                    incoming[base + 1] = lv[p + 1] == Orientation::Up;
                    incoming[base + 3] = lv[p + 1] != Orientation::Up;
                    over_even[c] = g.kind == GeneratorKind::PositiveCrossing;
                    ends[p] = base + 3;
                    ends[p + 1] = base + 2;
                    c += 1;
                }
                GeneratorKind::Cup(_) => {
                    let a = links.len();
                    links.push(Vec::new());
                    links.push(Vec::new());
                    link(&mut links, a, a + 1);
                    ends.splice(p..p, [a, a + 1]);
                }
                GeneratorKind::Cap(_) => {
                    link(&mut links, ends[p], ends[p + 1]);
                    ends.drain(p..p + 2);
                }
            }
        }
        // contract virtual nodes
        let ports = 4 * n;
        let mut nbr = vec![NONE; ports];
        let mut seen = vec![false; links.len()];
        for start in 0..ports {
            if nbr[start] != NONE {
                continue;
            }
            let (mut prev, mut cur) = (start, links[start][0]);
            while cur >= ports {
                seen[cur] = true;
                let next = if links[cur][0] == prev { links[cur][1] } else { links[cur][0] };
                prev = cur;
                cur = next;
            }
            nbr[start] = cur;
            nbr[cur] = start;
        }
        let mut free_loops = 0;
        for v in ports..links.len() {
            if seen[v] {
                continue;
            }
            free_loops += 1;
            let (mut prev, mut cur) = (v, links[v][0]);
            seen[v] = true;
            while cur != v {
                seen[cur] = true;
                let next = if links[cur][0] == prev { links[cur][1] } else { links[cur][0] };
                prev = cur;
                cur = next;
            }
        }
        Ok(Pd { nbr, incoming, over_even, alive: vec![true; n], free_loops })
    }

    pub fn crossing_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&c| self.alive[c])
    }

    fn is_over(&self, p: usize) -> bool {
        self.over_even[crossing_of(p)] == (p & 1 == 0)
    }

    /// Oriented sign of crossing `c`: the cross product of the over and under directions.
    pub fn sign(&self, c: usize) -> i64 {
        const POS: [(i64, i64); 4] = [(-1, -1), (1, -1), (1, 1), (-1, 1)];
        let direction = |k: usize| {
            let (from, to) = if self.incoming[4 * c + k] { (k, (k + 2) % 4) } else { ((k + 2) % 4, k) };
            (POS[to].0 - POS[from].0, POS[to].1 - POS[from].1)
        };
        let (o, u) = if self.over_even[c] { (direction(0), direction(1)) } else { (direction(1), direction(0)) };
        (o.0 * u.1 - o.1 * u.0).signum()
    }

    pub fn switch(&mut self, c: usize) {
        self.over_even[c] = !self.over_even[c];
    }

    /// Removes ports `removed`, joining them internally through `through`, and
    /// reconnects the surviving ends. Internal cycles become free loops.
    fn excise(&mut self, removed: &[usize], through: impl Fn(usize) -> usize) {
        let inside = |p: usize| removed.contains(&p);
        let mut visited = Vec::new();
        let mut joins = Vec::new();
        for &p in removed {
            let x = self.nbr[p];
            if inside(x) || visited.contains(&p) {
                continue;
            }
            visited.push(p);
            let mut q = through(p);
            visited.push(q);
            while inside(self.nbr[q]) {
                let e = self.nbr[q];
                visited.push(e);
                q = through(e);
                visited.push(q);
            }
            joins.push((x, self.nbr[q]));
        }
        for &p in removed {
            if visited.contains(&p) {
                continue;
            }
            self.free_loops += 1;
            let mut q = p;
            loop {
                visited.push(q);
                let t = through(q);
                visited.push(t);
                q = self.nbr[t];
                if q == p {
                    break;
                }
            }
        }
        for &p in removed {
            self.nbr[p] = NONE;
        }
        for (a, b) in joins {
            self.nbr[a] = b;
            self.nbr[b] = a;
        }
        for &p in removed {
            self.alive[crossing_of(p)] = false;
        }
    }

    /// Oriented smoothing of crossing `c`.
    pub fn smooth(&mut self, c: usize) {
        let ports = [4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3];
        // incoming port of one strand joins the outgoing port of the other strand
        let incoming = self.incoming.clone();
        let partner = move |p: usize| {
            let other_strand = [ccw_next(p), opposite(ccw_next(p))];
            *other_strand.iter().find(|&&q| incoming[q] != incoming[p]).expect("one in, one out")
        };
        self.excise(&ports, partner);
    }

    /// Removes crossings, letting each strand pass straight through.
    fn remove_straight(&mut self, cs: &[usize]) {
        let ports: Vec<usize> = cs.iter().flat_map(|&c| 4 * c..4 * c + 4).collect();
        self.excise(&ports, opposite);
    }

    /// A crossing with an edge joining two of its own ports (a curl).
    pub fn find_curl(&self) -> Option<usize> {
        self.crossings().find(|&c| (4 * c..4 * c + 4).any(|p| crossing_of(self.nbr[p]) == c))
    }

    /// Two crossings bounding a bigon face with the same strand over at both.
    pub fn find_bigon(&self) -> Option<(usize, usize)> {
        for c in self.crossings() {
            for p in 4 * c..4 * c + 4 {
                // walk the face to the right of the edge leaving port p
                let q = self.nbr[p];
                let d = crossing_of(q);
                if d == c {
                    continue;
                }
                let p2 = ccw_next(q);
                let q2 = self.nbr[p2];
                if ccw_next(q2) == p && self.is_over(p) == self.is_over(q) {
                    return Some((c, d));
                }
            }
        }
        None
    }

    /// Applies curl and bigon removals until none remain.
    pub fn simplify(&mut self) {
        loop {
            if let Some(c) = self.find_curl() {
                self.remove_straight(&[c]);
            } else if let Some((c, d)) = self.find_bigon() {
                self.remove_straight(&[c, d]);
            } else {
                break;
            }
        }
    }

    /// Components through crossings, not counting free loops.
    pub fn strand_components(&self) -> usize {
        let mut seen = vec![false; self.nbr.len()];
        let mut count = 0;
        for c in self.crossings() {
            for p in 4 * c..4 * c + 4 {
                if seen[p] {
                    continue;
                }
                count += 1;
                let mut q = p;
                while !seen[q] {
                    seen[q] = true;
                    let o = opposite(q);
                    seen[o] = true;
                    q = self.nbr[o];
                }
            }
        }
        count
    }

    /// Traversal from base points: each component starts at its smallest (or largest)
    /// incoming port; components are ordered by that port. Returns the visits as
    /// `(crossing, over)` in order.
    pub fn traversal(&self, reversed: bool) -> Vec<(usize, bool)> {
        let mut seen = vec![false; self.nbr.len()];
        let mut order = Vec::new();
        let mut starts: Vec<usize> = self.crossings().flat_map(|c| 4 * c..4 * c + 4).filter(|&p| self.incoming[p]).collect();
        if reversed {
            starts.reverse();
        }
        for s in starts {
            if seen[s] {
                continue;
            }
            // mark the whole component, recording visits from the base point
            let mut p = s;
            loop {
                seen[p] = true;
                order.push((crossing_of(p), self.is_over(p)));
                let out = opposite(p);
                seen[out] = true;
                p = self.nbr[out];
                if p == s {
                    break;
                }
            }
        }
        order
    }

    /// Crossings whose first visit is as the under-strand, in traversal order.
    pub fn bad_crossings(&self, reversed: bool) -> Vec<usize> {
        let mut first = vec![false; self.alive.len()];
        let mut bad = Vec::new();
        for (c, over) in self.traversal(reversed) {
            if !first[c] {
                first[c] = true;
                if !over {
                    bad.push(c);
                }
            }
        }
        bad
    }

    /// Exact string code of the crossing structure (free loops excluded).
    pub fn key(&self) -> String {
        let mut s = String::new();
        for c in self.crossings() {
            let _ = write!(s, "{}{}", c, if self.over_even[c] { 'e' } else { 'o' });
            for p in 4 * c..4 * c + 4 {
                let _ = write!(s, ",{}{}", self.nbr[p], if self.incoming[p] { 'i' } else { 'u' });
            }
            s.push(';');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builtin;

    fn pd(name: &str) -> Pd {
        Pd::from_diagram(builtin(name).unwrap().diagram()).unwrap()
    }

    #[test]
    fn unknot_and_unlink_are_free_loops() {
        assert_eq!(pd("unknot").free_loops, 1);
        assert_eq!(pd("unlink2").free_loops, 2);
        assert_eq!(pd("unlink2").crossing_count(), 0);
    }

    #[test]
    fn signs_match_the_diagram() {
        for name in ["hopf", "trefoil", "whitehead", "unknot_kink_pos"] {
            let link = builtin(name).unwrap();
            let d = link.diagram();
            let pd = Pd::from_diagram(d).unwrap();
            let expected: Vec<i64> = d.crossing_steps().into_iter().map(|s| d.crossing_sign(s)).collect();
            let got: Vec<i64> = pd.crossings().map(|c| pd.sign(c)).collect();
            assert_eq!(got, expected, "{name}");
        }
    }

    #[test]
    fn curl_removal() {
        let mut k = pd("unknot_kink_pos");
        assert_eq!(k.find_curl(), Some(0));
        k.simplify();
        assert_eq!(k.crossing_count(), 0);
        assert_eq!(k.free_loops, 1);
    }

    #[test]
    fn smoothing_counts_loops() {
        let mut k = pd("unknot_kink_pos");
        k.smooth(0);
        assert_eq!(k.free_loops, 2);
        let mut h = pd("hopf");
        h.smooth(0);
        assert_eq!(h.crossing_count(), 1);
        h.simplify();
        assert_eq!((h.crossing_count(), h.free_loops), (0, 1));
    }

    #[test]
    fn hopf_has_no_reducible_bigon() {
        let h = pd("hopf");
        assert_eq!(h.find_curl(), None);
        assert_eq!(h.find_bigon(), None);
        let mut h2 = h.clone();
        h2.switch(0);
        assert!(h2.find_bigon().is_some());
        h2.simplify();
        assert_eq!((h2.crossing_count(), h2.free_loops), (0, 2));
    }

    #[test]
    fn components_and_traversal() {
        let w = pd("whitehead");
        assert_eq!(w.strand_components(), 2);
        assert_eq!(w.traversal(false).len(), 2 * w.crossing_count());
        let t = pd("trefoil");
        assert!(!t.bad_crossings(false).is_empty());
        let mut desc = t.clone();
        for c in t.bad_crossings(false) {
            desc.switch(c);
        }
        assert!(desc.bad_crossings(false).is_empty());
    }
}

//! The staircase-diagram data structure.
//!
//! A staircase diagram over a graph is a poset of nonempty connected vertex
//! sets ("blocks") such that
//!
//! 1. every block is connected, and the union of any covering pair is
//!    connected;
//! 2. the blocks containing a fixed vertex form a chain;
//! 3. for adjacent vertices `s ~ t` the blocks containing `s` or `t` form a
//!    chain in which both vertex chains sit as saturated subchains;
//! 4. every block is the minimum of some vertex chain and the maximum of
//!    some vertex chain.
//!
//! Diagrams are immutable after validation. The partial order is stored as
//! Hasse cover pairs plus a reachability closure; transitive edges in the
//! input are rejected rather than silently reduced so that canonical
//! encodings stay bit-exact.

use crate::error::{Error, Result};
use crate::graphs::DynkinGraph;
use crate::vertexset::VertexSet;
use serde::{Deserialize, Serialize};

pub type Block = VertexSet;

/// A single validation failure. `axiom_id` distinguishes the numbered
/// axioms from representation problems (bad indices, cycles, transitive
/// covers) and the no-containment consequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyBlock { block: usize },
    BlockOutOfRange { block: usize },
    DuplicateBlock { a: usize, b: usize },
    TooManyBlocks { count: usize },
    BadCoverIndex { cover: (usize, usize) },
    DuplicateCover { lower: usize, upper: usize },
    CyclicCovers,
    TransitiveCover { lower: usize, upper: usize },
    /// Axiom (1): a disconnected block.
    BlockDisconnected { block: usize },
    /// Axiom (1): a covering pair whose union is disconnected.
    CoverUnionDisconnected { lower: usize, upper: usize },
    /// Axiom (2): two blocks share a vertex but are incomparable.
    VertexChainBroken { vertex: usize, a: usize, b: usize },
    /// Axiom (3): blocks at adjacent vertices are incomparable.
    AdjacentChainBroken { s: usize, t: usize, a: usize, b: usize },
    /// Axiom (3): the chain at `s` is not saturated in the joint chain.
    NotSaturated { s: usize, t: usize },
    /// Axiom (4): a block that is the minimum of no vertex chain.
    NeverMinimal { block: usize },
    /// Axiom (4): a block that is the maximum of no vertex chain.
    NeverMaximal { block: usize },
    /// One block contains another.
    Containment { inner: usize, outer: usize },
}

impl Violation {
    pub fn axiom_id(&self) -> &'static str {
        use Violation::*;
        match self {
            EmptyBlock { .. }
            | BlockOutOfRange { .. }
            | DuplicateBlock { .. }
            | TooManyBlocks { .. }
            | BadCoverIndex { .. }
            | DuplicateCover { .. } => "representation",
            CyclicCovers => "poset",
            TransitiveCover { .. } => "representation",
            BlockDisconnected { .. } | CoverUnionDisconnected { .. } => "1",
            VertexChainBroken { .. } => "2",
            AdjacentChainBroken { .. } | NotSaturated { .. } => "3",
            NeverMinimal { .. } | NeverMaximal { .. } => "4",
            Containment { .. } => "containment",
        }
    }
}

/// A sealed, validated staircase diagram.
///
/// Blocks are held in canonical order (by minimum vertex, then size, then
/// contents); covers are `(lower, upper)` index pairs into that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StaircaseDiagram {
    blocks: Vec<Block>,
    covers: Vec<(usize, usize)>,
    /// `up[i]` has bit `j` set iff block `i` is `<=` block `j`.
    up: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    blocks: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
}

fn block_key(b: Block) -> (usize, usize, Vec<usize>) {
    (b.min().unwrap_or(0), b.len(), b.to_vec())
}

/// Reachability closure over cover edges; `None` if the edges are cyclic.
fn closure(n: usize, covers: &[(usize, usize)]) -> Option<Vec<u64>> {
    let mut direct = vec![0u64; n];
    let mut indeg = vec![0usize; n];
    for &(lo, hi) in covers {
        direct[lo] |= 1 << hi;
        indeg[hi] += 1;
    }
    // Kahn topological order; reachability accumulated in reverse.
    let mut order = Vec::with_capacity(n);
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut indeg2 = indeg;
    while let Some(i) = queue.pop() {
        order.push(i);
        let mut succ = direct[i];
        while succ != 0 {
            let j = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            indeg2[j] -= 1;
            if indeg2[j] == 0 {
                queue.push(j);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut up = vec![0u64; n];
    for &i in order.iter().rev() {
        let mut mask = 1u64 << i;
        let mut succ = direct[i];
        while succ != 0 {
            let j = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            mask |= up[j];
        }
        up[i] = mask;
    }
    Some(up)
}

/// Validate a candidate diagram against its host graph.
///
/// On success the diagram is sealed in canonical form. On failure every
/// detected violation is reported, not just the first; a cover cycle is the
/// exception since no partial order exists to check the axioms against.
pub fn validate(
    graph: &DynkinGraph,
    blocks: &[Block],
    covers: &[(usize, usize)],
) -> std::result::Result<StaircaseDiagram, Vec<Violation>> {
    let n = blocks.len();
    let mut violations = Vec::new();

    if n > 60 {
        return Err(vec![Violation::TooManyBlocks { count: n }]);
    }
    for (i, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            violations.push(Violation::EmptyBlock { block: i });
        }
        if !b.is_subset(graph.vertices()) {
            violations.push(Violation::BlockOutOfRange { block: i });
        }
        for (j, b2) in blocks.iter().enumerate().skip(i + 1) {
            if b == b2 {
                violations.push(Violation::DuplicateBlock { a: i, b: j });
            }
        }
    }
    for &(lo, hi) in covers {
        if lo >= n || hi >= n || lo == hi {
            violations.push(Violation::BadCoverIndex { cover: (lo, hi) });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let up = match closure(n, covers) {
        Some(up) => up,
        None => return Err(vec![Violation::CyclicCovers]),
    };
    let leq = |a: usize, b: usize| up[a] >> b & 1 == 1;

    // Reject transitive edges: a cover (lo, hi) with an intermediate block.
    for &(lo, hi) in covers {
        for mid in 0..n {
            if mid != lo && mid != hi && leq(lo, mid) && leq(mid, hi) {
                violations.push(Violation::TransitiveCover { lower: lo, upper: hi });
                break;
            }
        }
    }
    {
        let mut sorted = covers.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::DuplicateCover {
                    lower: w[0].0,
                    upper: w[0].1,
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    // Axiom (1).
    for (i, b) in blocks.iter().enumerate() {
        if !graph.is_connected_subset(*b).unwrap_or(false) {
            violations.push(Violation::BlockDisconnected { block: i });
        }
    }
    for &(lo, hi) in covers {
        if !graph
            .is_connected_subset(blocks[lo].union(blocks[hi]))
            .unwrap_or(false)
        {
            violations.push(Violation::CoverUnionDisconnected { lower: lo, upper: hi });
        }
    }

    // Axiom (2).
    for s in graph.vertices().iter() {
        let at_s: Vec<usize> = (0..n).filter(|&i| blocks[i].contains(s)).collect();
        for (k, &a) in at_s.iter().enumerate() {
            for &b in &at_s[k + 1..] {
                if !leq(a, b) && !leq(b, a) {
                    violations.push(Violation::VertexChainBroken { vertex: s, a, b });
                }
            }
        }
    }

    // Axiom (3).
    for &(s, t, _) in graph.edges() {
        let at_s: Vec<usize> = (0..n).filter(|&i| blocks[i].contains(s)).collect();
        let at_t: Vec<usize> = (0..n).filter(|&i| blocks[i].contains(t)).collect();
        let mut joint: Vec<usize> = at_s.clone();
        for &i in &at_t {
            if !joint.contains(&i) {
                joint.push(i);
            }
        }
        let mut chain_ok = true;
        for (k, &a) in joint.iter().enumerate() {
            for &b in &joint[k + 1..] {
                if !leq(a, b) && !leq(b, a) {
                    violations.push(Violation::AdjacentChainBroken { s, t, a, b });
                    chain_ok = false;
                }
            }
        }
        if chain_ok {
            let mut sorted = joint.clone();
            sorted.sort_by(|&a, &b| {
                if a == b {
                    std::cmp::Ordering::Equal
                } else if leq(a, b) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
            for (vertex, other, members) in [(s, t, &at_s), (t, s, &at_t)] {
                let positions: Vec<usize> = sorted
                    .iter()
                    .enumerate()
                    .filter(|(_, i)| members.contains(i))
                    .map(|(p, _)| p)
                    .collect();
                if let (Some(&first), Some(&last)) = (positions.first(), positions.last()) {
                    if last - first + 1 != positions.len() {
                        violations.push(Violation::NotSaturated { s: vertex, t: other });
                    }
                }
            }
        }
    }

    // Axiom (4) and the no-containment consequence.
    for i in 0..n {
        let is_min_somewhere = blocks[i].iter().any(|s| {
            (0..n).all(|j| !blocks[j].contains(s) || leq(i, j))
        });
        let is_max_somewhere = blocks[i].iter().any(|s| {
            (0..n).all(|j| !blocks[j].contains(s) || leq(j, i))
        });
        if !is_min_somewhere {
            violations.push(Violation::NeverMinimal { block: i });
        }
        if !is_max_somewhere {
            violations.push(Violation::NeverMaximal { block: i });
        }
        for j in 0..n {
            if i != j && blocks[i].is_strict_subset(blocks[j]) {
                violations.push(Violation::Containment { inner: i, outer: j });
            }
        }
    }

    if !violations.is_empty() {
        return Err(violations);
    }
    Ok(StaircaseDiagram::seal(blocks.to_vec(), covers.to_vec()))
}

impl StaircaseDiagram {
    /// The empty diagram: zero blocks, representing the identity element.
    pub fn empty() -> Self {
        StaircaseDiagram {
            blocks: Vec::new(),
            covers: Vec::new(),
            up: Vec::new(),
        }
    }

    /// Canonicalize a known-valid diagram (internal).
    fn seal(blocks: Vec<Block>, covers: Vec<(usize, usize)>) -> Self {
        let n = blocks.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| block_key(blocks[i]));
        let mut pos = vec![0usize; n];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let blocks: Vec<Block> = idx.iter().map(|&i| blocks[i]).collect();
        let mut covers: Vec<(usize, usize)> =
            covers.iter().map(|&(lo, hi)| (pos[lo], pos[hi])).collect();
        covers.sort();
        let up = closure(n, &covers).expect("sealed diagram must be acyclic");
        StaircaseDiagram { blocks, covers, up }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> Block {
        self.blocks[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `block_i <= block_j` in the diagram order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Index of the block equal to `b`, if present.
    pub fn find_block(&self, b: Block) -> Option<usize> {
        self.blocks.iter().position(|&x| x == b)
    }

    /// Indices of blocks containing vertex `s`, ascending in the order.
    pub fn chain_at_vertex(&self, s: usize) -> Vec<usize> {
        self.chain_at(VertexSet::singleton(s))
    }

    /// Indices of blocks containing every vertex of `j`, ascending in the
    /// order. `j` must be nonempty.
    pub fn chain_at(&self, j: VertexSet) -> Vec<usize> {
        assert!(!j.is_empty(), "chain_at requires a nonempty vertex set");
        let mut members: Vec<usize> = (0..self.blocks.len())
            .filter(|&i| j.is_subset(self.blocks[i]))
            .collect();
        members.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        members
    }

    pub fn min_block_at(&self, s: usize) -> Option<usize> {
        self.chain_at_vertex(s).first().copied()
    }

    pub fn max_block_at(&self, s: usize) -> Option<usize> {
        self.chain_at_vertex(s).last().copied()
    }

    /// Right and left boundary sets of a block:
    /// `J_R(B) = { s in B : B != min(D_s) }` and symmetrically for `J_L`.
    pub fn boundary_sets(&self, i: usize) -> (VertexSet, VertexSet) {
        (self.j_r(i), self.j_l(i))
    }

    pub fn j_r(&self, i: usize) -> VertexSet {
        VertexSet::from_iter(
            self.blocks[i]
                .iter()
                .filter(|&s| self.min_block_at(s) != Some(i)),
        )
    }

    pub fn j_l(&self, i: usize) -> VertexSet {
        VertexSet::from_iter(
            self.blocks[i]
                .iter()
                .filter(|&s| self.max_block_at(s) != Some(i)),
        )
    }

    /// Diagram descent sets `(D_L, D_R)`:
    /// `D_R = { s : min(D_s) <= min(D_t) for all t ~ s }`, and `D_L` dually.
    pub fn diagram_descents(&self, graph: &DynkinGraph) -> (VertexSet, VertexSet) {
        let mut d_l = VertexSet::empty();
        let mut d_r = VertexSet::empty();
        for s in self.support().iter() {
            let min_s = self.min_block_at(s).unwrap();
            let max_s = self.max_block_at(s).unwrap();
            let mut right = true;
            let mut left = true;
            for t in graph.neighbours(s).iter() {
                if let Some(min_t) = self.min_block_at(t) {
                    if !self.leq(min_s, min_t) {
                        right = false;
                    }
                }
                if let Some(max_t) = self.max_block_at(t) {
                    if !self.leq(max_t, max_s) {
                        left = false;
                    }
                }
            }
            if right {
                d_r.insert(s);
            }
            if left {
                d_l.insert(s);
            }
        }
        (d_l, d_r)
    }

    /// Vertices contained in exactly one block.
    pub fn critical_points(&self) -> VertexSet {
        VertexSet::from_iter(
            self.support()
                .iter()
                .filter(|&s| self.chain_at_vertex(s).len() == 1),
        )
    }

    /// Whether every critical point is a leaf of the induced support
    /// subgraph (with the rank-3 type-D branch-vertex convention).
    pub fn is_elementary(&self, graph: &DynkinGraph) -> bool {
        self.critical_points()
            .is_subset(graph.leaves_of(self.support()))
    }

    pub fn support(&self) -> VertexSet {
        self.blocks
            .iter()
            .fold(VertexSet::empty(), |acc, b| acc.union(*b))
    }

    pub fn is_fully_supported(&self, graph: &DynkinGraph) -> bool {
        self.support() == graph.vertices()
    }

    pub fn maximal_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.up[i] == 1 << i)
            .collect()
    }

    pub fn minimal_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| (0..self.blocks.len()).all(|j| j == i || !self.leq(j, i)))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.blocks.len())
            .all(|i| (0..self.blocks.len()).all(|j| self.comparable(i, j)))
    }

    /// The diagram with the reverse partial order.
    pub fn flip(&self) -> StaircaseDiagram {
        let covers = self.covers.iter().map(|&(lo, hi)| (hi, lo)).collect();
        StaircaseDiagram::seal(self.blocks.clone(), covers)
    }

    /// Induced subdiagram on a set of block indices. The subset must be
    /// saturated in the order (subdiagrams are; callers uphold this).
    pub fn subdiagram(&self, keep: &[usize]) -> StaircaseDiagram {
        let mut pos = vec![usize::MAX; self.blocks.len()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let blocks: Vec<Block> = keep.iter().map(|&i| self.blocks[i]).collect();
        // Recompute covers of the induced order rather than filtering Hasse
        // edges, since removing blocks can merge cover chains.
        let n = keep.len();
        let leq_sub = |a: usize, b: usize| self.leq(keep[a], keep[b]);
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq_sub(a, b) {
                    let direct = (0..n)
                        .all(|m| m == a || m == b || !(leq_sub(a, m) && leq_sub(m, b)));
                    if direct {
                        covers.push((a, b));
                    }
                }
            }
        }
        StaircaseDiagram::seal(blocks, covers)
    }

    /// Connected components as subdiagrams, in canonical order.
    pub fn connected_components(&self, graph: &DynkinGraph) -> Vec<StaircaseDiagram> {
        let n = self.blocks.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0usize;
        for i in 0..n {
            if comp[i] != usize::MAX {
                continue;
            }
            comp[i] = next;
            let mut stack = vec![i];
            while let Some(a) = stack.pop() {
                for b in 0..n {
                    if comp[b] == usize::MAX && graph.sets_touch(self.blocks[a], self.blocks[b]) {
                        comp[b] = next;
                        stack.push(b);
                    }
                }
            }
            next += 1;
        }
        (0..next)
            .map(|c| {
                let keep: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
                self.subdiagram(&keep)
            })
            .collect()
    }

    /// Deterministic byte encoding: equal encodings iff equal diagrams.
    /// The empty diagram encodes to the fixed sentinel `b"SD0"`.
    pub fn canonical_encode(&self) -> Vec<u8> {
        if self.blocks.is_empty() {
            return b"SD0".to_vec();
        }
        let mut out = Vec::with_capacity(3 + 9 * self.blocks.len() + 2 * self.covers.len());
        out.extend_from_slice(b"SD1");
        out.push(self.blocks.len() as u8);
        for b in &self.blocks {
            out.extend_from_slice(&b.bits().to_le_bytes());
        }
        out.push(self.covers.len() as u8);
        for &(lo, hi) in &self.covers {
            out.push(lo as u8);
            out.push(hi as u8);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson {
            blocks: self.blocks.iter().map(|b| b.to_vec()).collect(),
            covers: self.covers.clone(),
        })
        .expect("diagram serialization cannot fail")
    }

    /// Parse and re-validate a diagram against its host graph.
    pub fn from_json(graph: &DynkinGraph, s: &str) -> Result<StaircaseDiagram> {
        let raw: DiagramJson = serde_json::from_str(s)
            .map_err(|e| Error::argument(format!("bad diagram JSON: {e}")))?;
        let blocks: Vec<Block> = raw
            .blocks
            .iter()
            .map(|vs| VertexSet::from_iter(vs.iter().copied()))
            .collect();
        validate(graph, &blocks, &raw.covers)
            .map_err(|v| Error::argument(format!("invalid diagram: {v:?}")))
    }

    /// A fixed linear extension: repeatedly emit the minimal block with the
    /// smallest `(min vertex, size, contents)` key.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.blocks.len();
        let mut emitted = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !emitted[i])
                .filter(|&i| {
                    (0..n).all(|j| emitted[j] || j == i || !self.lt(j, i))
                })
                .min_by_key(|&i| block_key(self.blocks[i]))
                .expect("acyclic poset always has a minimal element");
            emitted[next] = true;
            out.push(next);
        }
        out
    }

    /// All linear extensions (test support; exponential in general).
    pub fn all_linear_extensions(&self) -> Vec<Vec<usize>> {
        fn rec(
            d: &StaircaseDiagram,
            emitted: &mut Vec<bool>,
            acc: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = d.num_blocks();
            if acc.len() == n {
                out.push(acc.clone());
                return;
            }
            for i in 0..n {
                if !emitted[i] && (0..n).all(|j| emitted[j] || j == i || !d.lt(j, i)) {
                    emitted[i] = true;
                    acc.push(i);
                    rec(d, emitted, acc, out);
                    acc.pop();
                    emitted[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(self, &mut vec![false; self.num_blocks()], &mut Vec::new(), &mut out);
        out
    }
}

//! Coxeter-Dynkin graphs for the classical families, plus arbitrary
//! loop-free graphs with edge multiplicities.
//!
//! Vertices are contiguous integers `1..=rank`; the paper-style generator
//! `s_i` maps to the integer `i`. An absent edge means the Coxeter exponent
//! `m_st = 2` (the generators commute); stored edges carry `m_st >= 3`.

use crate::error::{Error, Result};
use crate::vertexset::VertexSet;
use serde::{Deserialize, Serialize};

/// Classical family tag. `Custom` graphs are accepted by the diagram and
/// enumeration machinery (the staircase axioms are graph-generic) but are
/// rejected by the Coxeter kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    Custom,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::Custom => "Custom",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "Custom" | "custom" => Ok(Family::Custom),
            other => Err(Error::argument(format!("unknown family {other:?}"))),
        }
    }
}

/// A finite loop-free graph with Coxeter exponents on its edges.
///
/// Immutable after construction; all queries are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    family: Family,
    rank: usize,
    /// Edges as `(u, v, m)` with `u < v`, sorted.
    edges: Vec<(usize, usize, u32)>,
    /// Neighbourhood masks indexed by vertex id.
    adj: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    family: String,
    rank: usize,
    edges: Vec<(usize, usize, u32)>,
}

/// Build a classical Dynkin graph.
///
/// * `A_n` (n >= 1): the path `1 - 2 - ... - n`, all exponents 3.
/// * `B_n`/`C_n` (n >= 1): the same path with exponent 4 on `{n-1, n}`.
/// * `D_n` (n >= 3): chain `3 - 4 - ... - n` with the two leaves `1` and `2`
///   attached to vertex `3`.
pub fn build_dynkin(family: Family, rank: usize) -> Result<DynkinGraph> {
    let min_rank = match family {
        Family::A | Family::B | Family::C => 1,
        Family::D => 3,
        Family::Custom => {
            return Err(Error::argument(
                "custom graphs must be built from an explicit edge list",
            ))
        }
    };
    if rank < min_rank || rank > 60 {
        return Err(Error::argument(format!(
            "rank {rank} out of range for family {}",
            family.as_str()
        )));
    }
    let mut edges = Vec::new();
    match family {
        Family::A => {
            for i in 1..rank {
                edges.push((i, i + 1, 3));
            }
        }
        Family::B | Family::C => {
            for i in 1..rank {
                let m = if i == rank - 1 { 4 } else { 3 };
                edges.push((i, i + 1, m));
            }
        }
        Family::D => {
            edges.push((1, 3, 3));
            edges.push((2, 3, 3));
            for i in 3..rank {
                edges.push((i, i + 1, 3));
            }
        }
        Family::Custom => unreachable!(),
    }
    DynkinGraph::new(family, rank, edges)
}

impl DynkinGraph {
    /// Build a graph from an explicit edge list. Rejects self-loops,
    /// duplicate edges, out-of-range vertices, and exponents below 3.
    pub fn new(family: Family, rank: usize, mut edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        if rank == 0 || rank > 60 {
            return Err(Error::argument(format!("rank {rank} out of range")));
        }
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        edges.sort();
        let mut adj = vec![VertexSet::empty(); rank + 1];
        for (i, &(u, v, m)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::argument(format!("self-loop at vertex {u}")));
            }
            if u < 1 || v > rank {
                return Err(Error::argument(format!("edge ({u},{v}) out of range")));
            }
            if m < 3 {
                return Err(Error::argument(format!(
                    "edge ({u},{v}) carries m={m}; m=2 pairs are implicit"
                )));
            }
            if i > 0 && (edges[i - 1].0, edges[i - 1].1) == (u, v) {
                return Err(Error::argument(format!("duplicate edge ({u},{v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(DynkinGraph {
            family,
            rank,
            edges,
            adj,
        })
    }

    pub fn custom(rank: usize, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        DynkinGraph::new(Family::Custom, rank, edges)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(1, self.rank)
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Coxeter exponent `m_st`; 1 on the diagonal, 2 for non-edges.
    pub fn coxeter_m(&self, s: usize, t: usize) -> u32 {
        if s == t {
            return 1;
        }
        let (u, v) = (s.min(t), s.max(t));
        match self.edges.binary_search_by_key(&(u, v), |&(a, b, _)| (a, b)) {
            Ok(i) => self.edges[i].2,
            Err(_) => 2,
        }
    }

    pub fn are_adjacent(&self, s: usize, t: usize) -> bool {
        self.adj[s].contains(t)
    }

    /// Whether two vertex sets touch: they share a vertex or some pair is
    /// adjacent.
    pub fn sets_touch(&self, a: VertexSet, b: VertexSet) -> bool {
        if a.intersects(b) {
            return true;
        }
        a.iter().any(|v| self.adj[v].intersects(b))
    }

    /// Vertices adjacent to (but outside) the set.
    pub fn boundary(&self, set: VertexSet) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in set.iter() {
            out = out.union(self.adj[v]);
        }
        out.difference(set)
    }

    /// Connectivity of the induced subgraph. The empty set is not connected
    /// (blocks are nonempty).
    pub fn is_connected_subset(&self, subset: VertexSet) -> Result<bool> {
        if !subset.is_subset(self.vertices()) {
            return Err(Error::argument(format!(
                "subset {subset:?} contains vertices outside the graph"
            )));
        }
        if subset.is_empty() {
            return Ok(false);
        }
        let start = subset.min().unwrap();
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersect(subset));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        Ok(seen == subset)
    }

    /// Leaves of the induced subgraph on `support`: vertices of induced
    /// degree at most one. For the rank-3 type-D graph the branch vertex 3
    /// also counts as a leaf; with that convention every type-D graph has
    /// three leaves.
    pub fn leaves_of(&self, support: VertexSet) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in support.iter() {
            if self.adj[v].intersect(support).len() <= 1 {
                out.insert(v);
            }
        }
        if self.family == Family::D && self.rank == 3 && support.contains(3) {
            out.insert(3);
        }
        out
    }

    /// The vertices of the unique path joining `t` and `r`, endpoints
    /// included. Errors if the component containing them has a cycle.
    pub fn path_between(&self, t: usize, r: usize) -> Result<Vec<usize>> {
        let all = self.vertices();
        if !all.contains(t) || !all.contains(r) {
            return Err(Error::argument(format!("path endpoints {t},{r} invalid")));
        }
        // BFS from t, recording parents; a revisit of a settled vertex via a
        // second route means a cycle.
        let mut parent = vec![usize::MAX; self.rank + 1];
        parent[t] = t;
        let mut queue = std::collections::VecDeque::from([t]);
        let mut seen = VertexSet::singleton(t);
        let mut edges_in_component = 0usize;
        let mut vertices_in_component = 0usize;
        while let Some(v) = queue.pop_front() {
            vertices_in_component += 1;
            for w in self.adj[v].iter() {
                edges_in_component += 1;
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if edges_in_component / 2 != vertices_in_component - 1 {
            return Err(Error::UnsupportedGraph(
                "path_between requires an acyclic component".into(),
            ));
        }
        if !seen.contains(r) {
            return Err(Error::argument(format!(
                "vertices {t} and {r} are in different components"
            )));
        }
        let mut path = vec![r];
        let mut cur = r;
        while cur != t {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Same as [`path_between`], returned as a set.
    pub fn interval(&self, t: usize, r: usize) -> Result<VertexSet> {
        Ok(VertexSet::from_iter(self.path_between(t, r)?))
    }

    /// All connected nonempty subsets of the vertex set, sorted.
    pub fn connected_subsets(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<VertexSet> = (1..=self.rank)
            .map(VertexSet::singleton)
            .collect();
        for s in &stack {
            seen.insert(*s);
        }
        while let Some(set) = stack.pop() {
            out.push(set);
            for v in self.boundary(set).iter() {
                let mut bigger = set;
                bigger.insert(v);
                if seen.insert(bigger) {
                    stack.push(bigger);
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            family: self.family.as_str().to_string(),
            rank: self.rank,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::argument(format!("bad graph JSON: {e}")))?;
        let family: Family = raw.family.parse()?;
        DynkinGraph::new(family, raw.rank, raw.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_shapes() {
        let a3 = build_dynkin(Family::A, 3).unwrap();
        assert_eq!(a3.edges(), &[(1, 2, 3), (2, 3, 3)]);

        let b3 = build_dynkin(Family::B, 3).unwrap();
        assert_eq!(b3.coxeter_m(2, 3), 4);
        assert_eq!(b3.coxeter_m(1, 2), 3);
        assert_eq!(b3.coxeter_m(1, 3), 2);

        let d4 = build_dynkin(Family::D, 4).unwrap();
        assert_eq!(d4.edges(), &[(1, 3, 3), (2, 3, 3), (3, 4, 3)]);

        assert!(build_dynkin(Family::D, 2).is_err());
        assert!(build_dynkin(Family::A, 0).is_err());
    }

    #[test]
    fn classical_graphs_are_trees() {
        for (fam, lo) in [(Family::A, 1), (Family::B, 1), (Family::D, 3)] {
            for n in lo..=8 {
                let g = build_dynkin(fam, n).unwrap();
                assert_eq!(g.edges().len(), n - 1);
                assert!(g.is_connected_subset(g.vertices()).unwrap());
            }
        }
    }

    #[test]
    fn connectivity() {
        let a5 = build_dynkin(Family::A, 5).unwrap();
        assert!(a5
            .is_connected_subset(VertexSet::from_iter([2, 3, 4]))
            .unwrap());
        assert!(!a5
            .is_connected_subset(VertexSet::from_iter([1, 3]))
            .unwrap());
        assert!(!a5.is_connected_subset(VertexSet::empty()).unwrap());
        assert!(a5.is_connected_subset(VertexSet::from_iter([7])).is_err());

        let d4 = build_dynkin(Family::D, 4).unwrap();
        assert!(!d4
            .is_connected_subset(VertexSet::from_iter([1, 2]))
            .unwrap());
        assert!(d4
            .is_connected_subset(VertexSet::from_iter([1, 2, 3]))
            .unwrap());
    }

    /// Brute-force union-find comparison over every subset, rank <= 6.
    #[test]
    fn connectivity_matches_union_find() {
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                p[x] = find(p, p[x]);
            }
            p[x]
        }
        for (fam, lo) in [(Family::A, 1), (Family::B, 1), (Family::D, 3)] {
            for n in lo..=6 {
                let g = build_dynkin(fam, n).unwrap();
                for mask in 0u64..(1 << n) {
                    let subset = VertexSet::from_iter((1..=n).filter(|i| (mask >> (i - 1)) & 1 == 1));
                    let mut parent: Vec<usize> = (0..=n).collect();
                    for &(u, v, _) in g.edges() {
                        if subset.contains(u) && subset.contains(v) {
                            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                            parent[ru] = rv;
                        }
                    }
                    let roots: std::collections::HashSet<_> =
                        subset.iter().map(|v| find(&mut parent, v)).collect();
                    let expect = roots.len() == 1;
                    assert_eq!(g.is_connected_subset(subset).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn paths() {
        let a5 = build_dynkin(Family::A, 5).unwrap();
        assert_eq!(a5.path_between(2, 4).unwrap(), vec![2, 3, 4]);
        assert_eq!(a5.path_between(3, 3).unwrap(), vec![3]);
        let d5 = build_dynkin(Family::D, 5).unwrap();
        assert_eq!(d5.path_between(1, 2).unwrap(), vec![1, 3, 2]);
        assert_eq!(d5.path_between(1, 5).unwrap(), vec![1, 3, 4, 5]);

        let cyc = DynkinGraph::custom(3, vec![(1, 2, 3), (2, 3, 3), (1, 3, 3)]).unwrap();
        assert!(matches!(
            cyc.path_between(1, 2),
            Err(Error::UnsupportedGraph(_))
        ));
    }

    #[test]
    fn path_reversal() {
        for (fam, lo) in [(Family::A, 1), (Family::D, 3)] {
            for n in lo..=7 {
                let g = build_dynkin(fam, n).unwrap();
                for t in 1..=n {
                    for r in 1..=n {
                        let mut p = g.path_between(t, r).unwrap();
                        p.reverse();
                        assert_eq!(p, g.path_between(r, t).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let d5 = build_dynkin(Family::D, 5).unwrap();
        let s = d5.to_json();
        assert_eq!(
            s,
            r#"{"family":"D","rank":5,"edges":[[1,3,3],[2,3,3],[3,4,3],[4,5,3]]}"#
        );
        assert_eq!(DynkinGraph::from_json(&s).unwrap(), d5);
    }

    #[test]
    fn leaves() {
        let d3 = build_dynkin(Family::D, 3).unwrap();
        assert_eq!(d3.leaves_of(d3.vertices()).to_vec(), vec![1, 2, 3]);
        let d5 = build_dynkin(Family::D, 5).unwrap();
        assert_eq!(d5.leaves_of(d5.vertices()).to_vec(), vec![1, 2, 5]);
        let a4 = build_dynkin(Family::A, 4).unwrap();
        assert_eq!(a4.leaves_of(VertexSet::range(2, 4)).to_vec(), vec![2, 4]);
        assert_eq!(a4.leaves_of(VertexSet::singleton(2)).to_vec(), vec![2]);
    }

    #[test]
    fn connected_subsets_counts() {
        // On the path A_n the connected subsets are the intervals.
        for n in 1..=8 {
            let g = build_dynkin(Family::A, n).unwrap();
            assert_eq!(g.connected_subsets().len(), n * (n + 1) / 2);
        }
    }
}

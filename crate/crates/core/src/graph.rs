//! Finite undirected simple graphs: the combinatorial data defining which
//! generator pairs commute.
//!
//! Vertices are the 1-based indices `1..=n`, standing for the generators
//! `a_1..a_n`; the index order is load-bearing (normal forms and component
//! orderings depend on it). Graphs are immutable once built and cheap to
//! clone at the sizes this crate targets.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Generator / vertex index, 1-based.
pub type Gen = u16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: Gen, n: Gen },
    #[error("loop at vertex {v} not allowed")]
    Loop { v: Gen },
    #[error("duplicate edge {{{i},{j}}}")]
    DuplicateEdge { i: Gen, j: Gen },
    #[error("vertex {v} must not belong to the queried set")]
    VertexInSet { v: Gen },
    #[error("operation requires a nonempty vertex set")]
    EmptyVertexSet,
    #[error("graph file line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// A subset of a graph's vertices, iterated in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VertexSet(BTreeSet<Gen>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: Gen) -> bool {
        self.0.insert(v)
    }

    pub fn contains(&self, v: Gen) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().copied()
    }

    pub fn smallest(&self) -> Option<Gen> {
        self.0.first().copied()
    }

    pub fn largest(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    /// Comma-separated indices, e.g. `1,3` — the machine-output rendering.
    pub fn plain(&self) -> String {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

impl FromIterator<Gen> for VertexSet {
    fn from_iter<T: IntoIterator<Item = Gen>>(iter: T) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    /// Generator-name rendering, e.g. `{a1,a3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "a{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph on vertices `1..=n`; no loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: Gen,
    edges: BTreeSet<(Gen, Gen)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n` is zero: every algebra
    /// here needs at least one generator.
    pub fn new(n: Gen) -> Self {
        assert!(n >= 1, "graph must have at least one vertex");
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn with_edges<I, T>(n: Gen, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = T>,
        T: std::borrow::Borrow<(Gen, Gen)>,
    {
        let mut g = Graph::new(n);
        for e in edges {
            let &(i, j) = e.borrow();
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: Gen) -> Self {
        let mut g = Graph::new(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn vertex_count(&self) -> Gen {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Gen> + '_ {
        1..=self.n
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Gen, Gen)> + '_ {
        self.edges.iter().copied()
    }

    fn check_vertex(&self, v: Gen) -> Result<(), GraphError> {
        if v < 1 || v > self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, i: Gen, j: Gen) -> Result<(), GraphError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(GraphError::Loop { v: i });
        }
        let e = (i.min(j), i.max(j));
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge { i: e.0, j: e.1 });
        }
        Ok(())
    }

    pub fn adjacent(&self, i: Gen, j: Gen) -> bool {
        i != j && self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Graph on the same vertices whose edges are exactly the non-edges.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if !self.edges.contains(&(i, j)) {
                    g.edges.insert((i, j));
                }
            }
        }
        g
    }

    /// Partition of the vertices into maximal connected sets, each labeled by
    /// its smallest vertex and listed in ascending label order.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n as usize + 1];
        let mut components = Vec::new();
        for start in 1..=self.n {
            if seen[start as usize] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for u in 1..=self.n {
                    if !seen[u as usize] && self.adjacent(v, u) {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Subgraph on `s`, re-indexed by ascending original index. The returned
    /// vector maps each new vertex `k` (1-based) to `map[k-1]`, its original
    /// index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Gen>), GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        let map: Vec<Gen> = s.iter().collect();
        let mut g = Graph::new(map.len() as Gen);
        for (new_i, &orig_i) in map.iter().enumerate() {
            for (new_j, &orig_j) in map.iter().enumerate().skip(new_i + 1) {
                if self.adjacent(orig_i, orig_j) {
                    g.edges.insert((new_i as Gen + 1, new_j as Gen + 1));
                }
            }
        }
        Ok((g, map))
    }

    /// True iff `i` is adjacent to every vertex of `s`; vacuously true for
    /// empty `s`. `i` must lie outside `s` (a vertex is never adjacent to
    /// itself, so membership would make the question degenerate).
    pub fn adjacent_to_all(&self, i: Gen, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_vertex(i)?;
        if s.contains(i) {
            return Err(GraphError::VertexInSet { v: i });
        }
        for v in s.iter() {
            self.check_vertex(v)?;
        }
        Ok(s.iter().all(|v| self.adjacent(i, v)))
    }

    /// All vertices outside `s` adjacent to every vertex of `s`.
    pub fn adjacency_hull(&self, s: &VertexSet) -> VertexSet {
        self.vertices()
            .filter(|&v| !s.contains(v) && s.iter().all(|u| self.adjacent(v, u)))
            .collect()
    }

    /// Parses the text graph format: first data line `n <count>`, then one
    /// `e <i> <j>` line per edge; `#` starts a comment; blank lines ignored.
    pub fn load(text: &str) -> Result<Graph, GraphError> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap();
            match (tag, &mut graph) {
                ("n", None) => {
                    let count: Gen = fields
                        .next()
                        .ok_or_else(|| GraphError::Format {
                            line: line_no,
                            msg: "expected `n <count>`".into(),
                        })?
                        .parse()
                        .map_err(|_| GraphError::Format {
                            line: line_no,
                            msg: "vertex count must be a positive integer".into(),
                        })?;
                    if count == 0 {
                        return Err(GraphError::Format {
                            line: line_no,
                            msg: "vertex count must be at least 1".into(),
                        });
                    }
                    if fields.next().is_some() {
                        return Err(GraphError::Format {
                            line: line_no,
                            msg: "trailing tokens after vertex count".into(),
                        });
                    }
                    graph = Some(Graph::new(count));
                }
                ("n", Some(_)) => {
                    return Err(GraphError::Format {
                        line: line_no,
                        msg: "repeated `n` line".into(),
                    });
                }
                ("e", Some(g)) => {
                    let mut endpoint = || -> Result<Gen, GraphError> {
                        fields
                            .next()
                            .ok_or_else(|| GraphError::Format {
                                line: line_no,
                                msg: "expected `e <i> <j>`".into(),
                            })?
                            .parse()
                            .map_err(|_| GraphError::Format {
                                line: line_no,
                                msg: "edge endpoints must be positive integers".into(),
                            })
                    };
                    let i = endpoint()?;
                    let j = endpoint()?;
                    if fields.next().is_some() {
                        return Err(GraphError::Format {
                            line: line_no,
                            msg: "trailing tokens after edge".into(),
                        });
                    }
                    g.add_edge(i, j).map_err(|e| GraphError::Format {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                }
                ("e", None) => {
                    return Err(GraphError::Format {
                        line: line_no,
                        msg: "edge before `n` line".into(),
                    });
                }
                (other, _) => {
                    return Err(GraphError::Format {
                        line: line_no,
                        msg: format!("unknown directive `{other}`"),
                    });
                }
            }
        }
        graph.ok_or(GraphError::Format {
            line: 0,
            msg: "missing `n` line".into(),
        })
    }

    /// Serializes back to the text format `load` accepts.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("e {i} {j}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vals: &[Gen]) -> VertexSet {
        vals.iter().copied().collect()
    }

    fn p3() -> Graph {
        Graph::with_edges(3, [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k2 = Graph::with_edges(2, [(1, 2)]).unwrap();
        assert_eq!(k2.complement(), Graph::new(2));
    }

    #[test]
    fn complement_of_p3_is_single_edge() {
        assert_eq!(p3().complement(), Graph::with_edges(3, [(1, 3)]).unwrap());
    }

    #[test]
    fn complement_of_empty3_is_k3() {
        assert_eq!(Graph::new(3).complement(), Graph::complete(3));
    }

    #[test]
    fn components_of_single_edge() {
        let g = Graph::with_edges(3, [(1, 3)]).unwrap();
        assert_eq!(g.connected_components(), vec![vs(&[1, 3]), vs(&[2])]);
    }

    #[test]
    fn components_of_k3_and_empty() {
        assert_eq!(Graph::complete(3).connected_components(), vec![vs(&[1, 2, 3])]);
        assert_eq!(
            Graph::new(2).connected_components(),
            vec![vs(&[1]), vs(&[2])]
        );
    }

    #[test]
    fn induced_subgraph_reindexes() {
        let (g, map) = p3().induced_subgraph(&vs(&[1, 3])).unwrap();
        assert_eq!(g, Graph::new(2));
        assert_eq!(map, vec![1, 3]);

        let (g, map) = p3().induced_subgraph(&vs(&[1, 2])).unwrap();
        assert_eq!(g, Graph::with_edges(2, [(1, 2)]).unwrap());
        assert_eq!(map, vec![1, 2]);

        let all = p3().all_vertices();
        let (g, _) = p3().induced_subgraph(&all).unwrap();
        assert_eq!(g, p3());
    }

    #[test]
    fn adjacent_to_all_cases() {
        let g = p3();
        assert_eq!(g.adjacent_to_all(2, &vs(&[1, 3])), Ok(true));
        assert_eq!(g.adjacent_to_all(1, &vs(&[3])), Ok(false));
        assert_eq!(g.adjacent_to_all(1, &VertexSet::new()), Ok(true));
        assert_eq!(
            g.adjacent_to_all(2, &vs(&[2, 3])),
            Err(GraphError::VertexInSet { v: 2 })
        );
    }

    #[test]
    fn adjacency_hull_examples() {
        let g = Graph::with_edges(3, [(1, 2)]).unwrap();
        assert_eq!(g.adjacency_hull(&vs(&[1])), vs(&[2]));
        assert_eq!(Graph::new(2).adjacency_hull(&vs(&[1])), vs(&[]));
        assert_eq!(Graph::complete(4).adjacency_hull(&vs(&[1, 2])), vs(&[3, 4]));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(2, 2), Err(GraphError::Loop { v: 2 }));
        g.add_edge(1, 2).unwrap();
        assert_eq!(g.add_edge(2, 1), Err(GraphError::DuplicateEdge { i: 1, j: 2 }));
        assert_eq!(
            g.add_edge(1, 9),
            Err(GraphError::VertexOutOfRange { v: 9, n: 3 })
        );
    }

    #[test]
    fn load_parses_format() {
        let text = "# path on three vertices\nn 3\ne 1 2   # first edge\n\ne 2 3\n";
        assert_eq!(Graph::load(text).unwrap(), p3());
    }

    #[test]
    fn load_round_trips() {
        let g = p3();
        assert_eq!(Graph::load(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn load_rejects_bad_input() {
        assert!(matches!(
            Graph::load("e 1 2\n"),
            Err(GraphError::Format { line: 1, .. })
        ));
        assert!(matches!(
            Graph::load("n 2\ne 1 1\n"),
            Err(GraphError::Format { line: 2, .. })
        ));
        assert!(matches!(
            Graph::load("n 2\ne 1 2\ne 2 1\n"),
            Err(GraphError::Format { line: 3, .. })
        ));
        assert!(matches!(
            Graph::load("n 2\ne 1 5\n"),
            Err(GraphError::Format { line: 2, .. })
        ));
        assert!(matches!(Graph::load("# nothing\n"), Err(GraphError::Format { .. })));
    }

    #[test]
    fn vertex_set_rendering() {
        assert_eq!(vs(&[1, 3]).to_string(), "{a1,a3}");
        assert_eq!(vs(&[1, 3]).plain(), "1,3");
        assert_eq!(VertexSet::new().to_string(), "{}");
    }
}

//! Finite undirected graphs and loop-free digraphs with at most one
//! arc per vertex pair, plus their edge-list text formats.

use std::collections::{BTreeSet, VecDeque};

use crate::graphs::GraphError;

/// Undirected graph on vertices `0..n`, no loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::MalformedGraph(format!("loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(GraphError::MalformedGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(FiniteGraph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        FiniteGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.insert((u, v));
            }
        }
        FiniteGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).len()
    }

    pub fn complement(&self) -> FiniteGraph {
        let mut edges = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.edges.contains(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
        FiniteGraph { n: self.n, edges }
    }

    /// Parses the `n` header line followed by one `u v` pair per line.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing vertex-count header".into()))?
            .parse()
            .map_err(|_| GraphError::Parse("bad vertex-count header".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line `{line}`")))?
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad edge line `{line}`")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line `{line}`")))?
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad edge line `{line}`")))?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("bad edge line `{line}`")));
            }
            edges.push((u, v));
        }
        FiniteGraph::new(n, edges)
    }

    pub fn print(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Directed graph on `0..n`: no loops, and an arc and its reverse
/// never coexist, so every underlying edge has a unique direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDigraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl FiniteDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u == v {
                return Err(GraphError::MalformedDigraph(format!("loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(GraphError::MalformedDigraph(format!(
                    "arc ({u},{v}) out of range for n={n}"
                )));
            }
            if set.contains(&(v, u)) {
                return Err(GraphError::MalformedDigraph(format!(
                    "arcs {u}->{v} and {v}->{u} cannot coexist"
                )));
            }
            set.insert((u, v));
        }
        Ok(FiniteDigraph { n, arcs: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Out-neighbourhood: targets of arcs starting in `v`.
    pub fn out_set(&self, v: usize) -> BTreeSet<usize> {
        self.arcs
            .iter()
            .filter(|&&(a, _)| a == v)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn underlying(&self) -> FiniteGraph {
        FiniteGraph::new(self.n, self.arcs.iter().copied()).expect("digraph invariants are stronger")
    }

    /// Reverses the arc `u -> v` in place.
    pub(crate) fn reverse_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if !self.arcs.remove(&(u, v)) {
            return Err(GraphError::MalformedDigraph(format!(
                "arc {u}->{v} not present"
            )));
        }
        self.arcs.insert((v, u));
        Ok(())
    }

    /// Vertices in a topological order, `None` when a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.n];
        for &(_, v) in &self.arcs {
            indegree[v] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(a, b) in &self.arcs {
                if a == v {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        queue.push_back(b);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices reachable from `v` by a finite directed path,
    /// including `v` itself.
    pub fn reachable_from(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in self.out_set(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Parses the `n` header line followed by one `u > v` arc per line.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing vertex-count header".into()))?
            .parse()
            .map_err(|_| GraphError::Parse("bad vertex-count header".into()))?;
        let mut arcs = Vec::new();
        for line in lines {
            let (u, v) = line
                .split_once('>')
                .ok_or_else(|| GraphError::Parse(format!("bad arc line `{line}`")))?;
            let u: usize = u
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad arc line `{line}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad arc line `{line}`")))?;
            arcs.push((u, v));
        }
        FiniteDigraph::new(n, arcs)
    }

    pub fn print(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.arcs {
            out.push_str(&format!("{u} > {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_rejects_loops_and_out_of_range() {
        assert!(FiniteGraph::new(3, [(0, 0)]).is_err());
        assert!(FiniteGraph::new(3, [(0, 3)]).is_err());
        assert!(FiniteGraph::new(3, [(2, 0)]).is_ok());
    }

    #[test]
    fn digraph_rejects_two_cycles() {
        assert!(matches!(
            FiniteDigraph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::MalformedDigraph(_))
        ));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(FiniteDigraph::new(2, [(1, 0)]).unwrap().is_acyclic());
        let d = FiniteDigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!d.is_acyclic());
    }

    #[test]
    fn format_round_trip() {
        let g = FiniteGraph::new(4, [(0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(FiniteGraph::parse(&g.print()).unwrap(), g);
        let d = FiniteDigraph::new(3, [(2, 0), (1, 0)]).unwrap();
        assert_eq!(FiniteDigraph::parse(&d.print()).unwrap(), d);
    }

    #[test]
    fn reachability_includes_start() {
        let d = FiniteDigraph::new(4, [(3, 1), (1, 0)]).unwrap();
        assert_eq!(d.reachable_from(3), BTreeSet::from([0, 1, 3]));
        assert_eq!(d.reachable_from(2), BTreeSet::from([2]));
    }
}

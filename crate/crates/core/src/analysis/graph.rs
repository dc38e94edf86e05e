use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// A dependency graph whose edges point from a head to the nodes its
/// clauses depend on, labelled negative when the dependency is under `~`.
#[derive(Debug, Clone, Default)]
pub struct DepGraph {
    pub names: Vec<String>,
    pub edges: Vec<Vec<(usize, bool)>>,
}

impl DepGraph {
    pub fn with_nodes(names: Vec<String>) -> Self {
        let edges = vec![Vec::new(); names.len()];
        DepGraph { names, edges }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, negative: bool) {
        if !self.edges[from].contains(&(to, negative)) {
            self.edges[from].push((to, negative));
        }
    }

    /// Strongly connected components. Component ids follow a reverse
    /// topological order, so every edge leads to a component with an id no
    /// larger than its source's.
    pub fn components(&self) -> Vec<usize> {
        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(self.names.len(), 0);
        for _ in &self.names {
            graph.add_node(());
        }
        for (from, out) in self.edges.iter().enumerate() {
            for &(to, _) in out {
                graph.add_edge(NodeIndex::new(from), NodeIndex::new(to), ());
            }
        }
        let mut comp = vec![0; self.names.len()];
        for (c, members) in tarjan_scc(&graph).into_iter().enumerate() {
            for v in members {
                comp[v.index()] = c;
            }
        }
        comp
    }

    /// Levels starting at 1 such that positive edges never go up and
    /// negative edges go strictly down, or the shortest cycle through a
    /// negative edge.
    pub fn stratify(&self) -> Result<Vec<usize>, Vec<String>> {
        let comp = self.components();
        let n_comps = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_comps];
        for (v, &c) in comp.iter().enumerate() {
            members[c].push(v);
        }
        let mut comp_level = vec![1usize; n_comps];
        for c in 0..n_comps {
            let mut level = 1;
            for &v in &members[c] {
                for &(w, negative) in &self.edges[v] {
                    if comp[w] == c {
                        if negative {
                            return Err(self.negative_cycle(&comp));
                        }
                    } else {
                        level = level.max(comp_level[comp[w]] + usize::from(negative));
                    }
                }
            }
            comp_level[c] = level;
        }
        Ok(comp.iter().map(|&c| comp_level[c]).collect())
    }

    fn negative_cycle(&self, comp: &[usize]) -> Vec<String> {
        let mut best: Option<Vec<(usize, bool)>> = None;
        for u in 0..self.names.len() {
            for &(v, negative) in &self.edges[u] {
                if !negative || comp[u] != comp[v] {
                    continue;
                }
                let Some(path) = self.shortest_path(v, u, comp) else {
                    continue;
                };
                if best.as_ref().is_some_and(|b| b.len() <= path.len() + 2) {
                    continue;
                }
                let mut cycle = vec![(u, false), (v, true)];
                cycle.extend(path);
                best = Some(cycle);
            }
        }
        best.expect("a negative edge inside a component lies on a cycle")
            .into_iter()
            .map(|(v, negative)| {
                if negative {
                    format!("~{}", self.names[v])
                } else {
                    self.names[v].clone()
                }
            })
            .collect()
    }

    /// Nodes after `from` on a shortest path to `to` inside one component,
    /// each with the sign of the edge used to reach it.
    fn shortest_path(&self, from: usize, to: usize, comp: &[usize]) -> Option<Vec<(usize, bool)>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; self.names.len()];
        let mut seen = vec![false; self.names.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &(y, negative) in &self.edges[x] {
                if seen[y] || comp[y] != comp[from] {
                    continue;
                }
                seen[y] = true;
                parent[y] = Some((x, negative));
                if y == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let (p, neg) = parent[cur].expect("reached through a parent");
                        path.push((cur, neg));
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
        None
    }
}

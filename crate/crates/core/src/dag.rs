//! Single-sink directed acyclic graphs.
//!
//! Vertices are stored in declaration order, which is the canonical vertex
//! order used by every search and serializer downstream. Predecessor lists are
//! sorted by that order as well.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::names::natural_cmp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DagError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex `{name}` declared twice")]
    DuplicateVertex { name: String, line: usize },
    #[error("line {line}: edge mentions undeclared vertex `{name}`")]
    UnknownVertex { name: String, line: usize },
    #[error("line {line}: edge {from} -> {to} declared twice")]
    DuplicateEdge { from: String, to: String, line: usize },
    #[error("line {line}: cycle detected through edge {from} -> {to}")]
    Cycle { from: String, to: String, line: usize },
    #[error("graph has {} sinks ({}), exactly one is required", .names.len(), .names.join(", "))]
    MultipleSinks { names: Vec<String> },
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    topo: Vec<usize>,
    sink: usize,
    max_indegree: usize,
}

impl Dag {
    /// Builds a DAG from vertex names and edges given by index. `lines`, when
    /// present, gives the source line of every vertex and edge for error
    /// reporting; otherwise positions in the input lists are used.
    fn assemble(
        names: Vec<String>,
        edges: Vec<(usize, usize)>,
        edge_lines: Option<Vec<usize>>,
    ) -> Result<Dag, DagError> {
        if names.is_empty() {
            return Err(DagError::Empty);
        }
        let n = names.len();
        let line_of = |k: usize| edge_lines.as_ref().map_or(k + 1, |l| l[k]);
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            if !seen.insert((a, b)) {
                return Err(DagError::DuplicateEdge {
                    from: names[a].clone(),
                    to: names[b].clone(),
                    line: line_of(k),
                });
            }
            if a == b {
                return Err(DagError::Cycle {
                    from: names[a].clone(),
                    to: names[b].clone(),
                    line: line_of(k),
                });
            }
            preds[b].push(a);
            succs[a].push(b);
        }
        for p in preds.iter_mut().chain(succs.iter_mut()) {
            p.sort_unstable();
        }

        // Kahn's algorithm; among ready vertices pick the smallest name.
        let mut indeg: Vec<usize> = preds.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<NameKey> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(|v| NameKey(names[v].clone(), v))
            .collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(key) = ready.pop_first() {
            let v = key.1;
            topo.push(v);
            for &w in &succs[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(NameKey(names[w].clone(), w));
                }
            }
        }
        if topo.len() < n {
            let placed: BTreeSet<usize> = topo.iter().copied().collect();
            let k = edges
                .iter()
                .position(|(a, b)| !placed.contains(a) && !placed.contains(b))
                .expect("a leftover vertex set after Kahn contains an edge");
            let (a, b) = edges[k];
            return Err(DagError::Cycle {
                from: names[a].clone(),
                to: names[b].clone(),
                line: line_of(k),
            });
        }

        let sinks: Vec<usize> = (0..n).filter(|&v| succs[v].is_empty()).collect();
        if sinks.len() != 1 {
            return Err(DagError::MultipleSinks {
                names: sinks.iter().map(|&v| names[v].clone()).collect(),
            });
        }
        let max_indegree = preds.iter().map(Vec::len).max().unwrap_or(0);
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Dag {
            names,
            index,
            edges,
            preds,
            succs,
            topo,
            sink: sinks[0],
            max_indegree,
        })
    }

    /// Builds a DAG from names and named edges.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Dag, DagError> {
        let mut index = HashMap::new();
        let mut names = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), names.len()).is_some() {
                return Err(DagError::DuplicateVertex { name: v, line: i + 1 });
            }
            names.push(v);
        }
        let mut idx_edges = Vec::new();
        for (k, (a, b)) in edges.iter().enumerate() {
            let lookup = |s: &S| {
                index.get(s.as_ref()).copied().ok_or(DagError::UnknownVertex {
                    name: s.as_ref().to_string(),
                    line: k + 1,
                })
            };
            idx_edges.push((lookup(a)?, lookup(b)?));
        }
        Dag::assemble(names, idx_edges, None)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn preds(&self, v: usize) -> &[usize] {
        &self.preds[v]
    }

    pub fn succs(&self, v: usize) -> &[usize] {
        &self.succs[v]
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.preds[v].is_empty()
    }

    pub fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.is_source(v))
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn max_indegree(&self) -> usize {
        self.max_indegree
    }

    /// Topological order; ties broken by natural name order.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// `below[u][v]` is true iff there is a directed path of length ≥ 1 from
    /// `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut below = vec![vec![false; n]; n];
        for &v in self.topo.iter().rev() {
            for &w in &self.succs[v] {
                below[v][w] = true;
                let (row_v, row_w) = if v < w {
                    let (lo, hi) = below.split_at_mut(w);
                    (&mut lo[v], &hi[0])
                } else {
                    let (lo, hi) = below.split_at_mut(v);
                    (&mut hi[0], &lo[w])
                };
                for (dst, &src) in row_v.iter_mut().zip(row_w.iter()) {
                    *dst |= src;
                }
            }
        }
        below
    }

    /// Text in the DAG file format; parsing it gives back an equal `Dag`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            let _ = writeln!(out, "v {name}");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "e {} {}", self.names[a], self.names[b]);
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
struct NameKey(String, usize);

impl PartialOrd for NameKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NameKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        natural_cmp(&self.0, &other.0).then(self.1.cmp(&other.1))
    }
}

/// Parses the line-oriented DAG format: `v <name>`, `e <from> <to>`, `#`
/// comments and blank lines.
pub fn parse_dag(text: &str) -> Result<Dag, DagError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            ["v", name] => {
                if index.contains_key(*name) {
                    return Err(DagError::DuplicateVertex {
                        name: name.to_string(),
                        line,
                    });
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
            }
            ["e", from, to] => {
                let get = |s: &str| {
                    index.get(s).copied().ok_or_else(|| DagError::UnknownVertex {
                        name: s.to_string(),
                        line,
                    })
                };
                edges.push((get(from)?, get(to)?));
                edge_lines.push(line);
            }
            _ => {
                return Err(DagError::Parse {
                    line,
                    msg: format!("expected `v <name>` or `e <from> <to>`, got `{content}`"),
                })
            }
        }
    }
    Dag::assemble(names, edges, Some(edge_lines))
}

/// Pyramid of height `h`: layer `k` (counted from the sink) has `k + 1`
/// vertices and vertex `i` of layer `k` has predecessors `i` and `i + 1` of
/// layer `k + 1`.
///
/// When the pyramid has at most 26 vertices they are named by the last
/// letters of the alphabet in declaration order (sources first), so height 2
/// gives `u v w | x y | z`. Larger pyramids use `p<layer>_<index>`.
pub fn build_pyramid(height: usize) -> Dag {
    let n = (height + 1) * (height + 2) / 2;
    let letters = n <= 26;
    let mut id = HashMap::new();
    let mut names = Vec::with_capacity(n);
    for layer in (0..=height).rev() {
        for i in 0..=layer {
            let name = if letters {
                char::from(b'z' - (n - 1 - names.len()) as u8).to_string()
            } else {
                format!("p{layer}_{i}")
            };
            id.insert((layer, i), names.len());
            names.push(name);
        }
    }
    let mut edges = Vec::new();
    for layer in (0..height).rev() {
        for i in 0..=layer {
            let v = id[&(layer, i)];
            edges.push((id[&(layer + 1, i)], v));
            edges.push((id[&(layer + 1, i + 1)], v));
        }
    }
    Dag::assemble(names, edges, None).expect("pyramids are single-sink DAGs")
}

/// Complete binary tree of height `h` with edges pointing at the root.
/// Vertices are named by their path from the root (`l`, `r`, `lr`, ...);
/// the root is `root`. Leaves are declared first.
pub fn build_binary_tree(height: usize) -> Dag {
    let mut levels: Vec<Vec<String>> = vec![vec![String::new()]];
    for d in 1..=height {
        let next = levels[d - 1]
            .iter()
            .flat_map(|p| [format!("{p}l"), format!("{p}r")])
            .collect();
        levels.push(next);
    }
    let label = |p: &str| if p.is_empty() { "root".to_string() } else { p.to_string() };
    let names: Vec<String> = levels.iter().rev().flatten().map(|p| label(p)).collect();
    let mut edges = Vec::new();
    for level in levels.iter().rev() {
        for p in level {
            if !p.is_empty() {
                edges.push((label(p), label(&p[..p.len() - 1])));
            }
        }
    }
    Dag::from_edges(&names, &edges).expect("binary trees are single-sink DAGs")
}

/// Path `v1 -> v2 -> ... -> vn`.
pub fn build_path(n: usize) -> Dag {
    assert!(n >= 1, "a path needs at least one vertex");
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Dag::assemble(names, edges, None).expect("paths are single-sink DAGs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyramid_two_matches_figure() {
        let g = build_pyramid(2);
        assert_eq!(g.names(), &["u", "v", "w", "x", "y", "z"]);
        let mut edges: Vec<(&str, &str)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (g.name(a), g.name(b)))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![
                ("u", "x"),
                ("v", "x"),
                ("v", "y"),
                ("w", "y"),
                ("x", "z"),
                ("y", "z")
            ]
        );
        assert_eq!(g.name(g.sink()), "z");
    }

    #[test]
    fn large_pyramids_use_layer_names() {
        let g = build_pyramid(6);
        assert_eq!(g.len(), 28);
        assert_eq!(g.name(g.sink()), "p0_0");
        assert_eq!(g.sources().count(), 7);
    }

    #[test]
    fn tree_names() {
        let g = build_binary_tree(1);
        assert_eq!(g.names(), &["l", "r", "root"]);
        assert_eq!(g.name(g.sink()), "root");
        let g = build_binary_tree(0);
        assert_eq!(g.len(), 1);
        assert_eq!(g.edges().len(), 0);
    }

    #[test]
    fn parse_reports_locations() {
        let err = parse_dag("v a\nv b\ne a b\ne b a").unwrap_err();
        assert!(matches!(err, DagError::Cycle { line: 3 | 4, .. }), "{err}");
        let err = parse_dag("v a\ne a c").unwrap_err();
        assert_eq!(
            err,
            DagError::UnknownVertex {
                name: "c".into(),
                line: 2
            }
        );
        let err = parse_dag("v a\n# comment\nv a").unwrap_err();
        assert_eq!(
            err,
            DagError::DuplicateVertex {
                name: "a".into(),
                line: 3
            }
        );
        let err = parse_dag("v a\nv b").unwrap_err();
        assert!(matches!(err, DagError::MultipleSinks { .. }));
        assert_eq!(parse_dag("# nothing").unwrap_err(), DagError::Empty);
        assert!(matches!(
            parse_dag("x a").unwrap_err(),
            DagError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn topo_ties_are_natural() {
        let g = parse_dag("v s10\nv s2\nv t\ne s10 t\ne s2 t").unwrap();
        let order: Vec<&str> = g.topo_order().iter().map(|&v| g.name(v)).collect();
        assert_eq!(order, vec!["s2", "s10", "t"]);
    }

    #[test]
    fn reachability_on_pyramid() {
        let g = build_pyramid(2);
        let r = g.reachability();
        let id = |s| g.vertex(s).unwrap();
        assert!(r[id("v")][id("z")]);
        assert!(r[id("u")][id("x")]);
        assert!(!r[id("u")][id("y")]);
        assert!(!r[id("z")][id("z")]);
    }
}

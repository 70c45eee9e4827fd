use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Display, Write};

use crate::tableau::{Tableau, TableauSet};

/// Vertices with an integer rank; each edge is stored as (lower, upper).
#[derive(Clone, Debug)]
pub struct RankedPoset<V> {
    vertices: Vec<V>,
    ranks: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl<V> RankedPoset<V> {
    /// Edges are reoriented so the lower-ranked end comes first.
    pub fn new(vertices: Vec<V>, ranks: Vec<i64>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        assert_eq!(vertices.len(), ranks.len());
        let mut adj = vec![vec![]; vertices.len()];
        let mut list = vec![];
        for (a, b) in edges {
            let (lo, hi) = if ranks[a] <= ranks[b] { (a, b) } else { (b, a) };
            if !adj[lo].contains(&hi) {
                adj[lo].push(hi);
                adj[hi].push(lo);
                list.push((lo, hi));
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        list.sort_unstable();
        RankedPoset { vertices, ranks, edges: list, adj }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn rank(&self, v: usize) -> i64 {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn min_rank(&self) -> Option<i64> {
        self.ranks.iter().copied().min()
    }

    /// Number of vertices at each rank, starting from the lowest.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let Some(lo) = self.min_rank() else { return vec![] };
        let hi = self.ranks.iter().copied().max().unwrap();
        let mut out = vec![0; (hi - lo + 1) as usize];
        for &r in &self.ranks {
            out[(r - lo) as usize] += 1;
        }
        out
    }

    /// Every edge joins consecutive ranks.
    pub fn is_graded(&self) -> bool {
        self.edges.iter().all(|&(a, b)| self.ranks[b] == self.ranks[a] + 1)
    }

    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                    queue.push_back(u);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs_order(0).len() == self.len()
    }

    pub fn map<W>(&self, f: impl FnMut(&V) -> W) -> RankedPoset<W> {
        RankedPoset {
            vertices: self.vertices.iter().map(f).collect(),
            ranks: self.ranks.clone(),
            edges: self.edges.clone(),
            adj: self.adj.clone(),
        }
    }

    /// DOT with one `rank=same` cluster per rank.
    pub fn to_dot(&self, label: impl Fn(&V) -> String) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        let mut by_rank: Vec<(i64, Vec<usize>)> = vec![];
        for v in 0..self.len() {
            match by_rank.iter_mut().find(|(r, _)| *r == self.ranks[v]) {
                Some((_, vs)) => vs.push(v),
                None => by_rank.push((self.ranks[v], vec![v])),
            }
        }
        by_rank.sort();
        for (r, vs) in &by_rank {
            let _ = writeln!(s, "  subgraph cluster_rank{} {{", r);
            let _ = writeln!(s, "    label=\"{}\"; rank=same;", r);
            for &v in vs {
                let _ = writeln!(s, "    v{} [label=\"{}\"];", v, label(&self.vertices[v]).replace('"', "\\\""));
            }
            s.push_str("  }\n");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [style=solid];", a, b);
        }
        s.push_str("}\n");
        s
    }
}

impl<V: Display> RankedPoset<V> {
    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.ranks[v], v));
        for v in order {
            let ups: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&u| self.ranks[u] > self.ranks[v])
                .map(|u| self.vertices[*u].to_string())
                .collect();
            let line = format!("[{}] {} -> {}", self.ranks[v], self.vertices[v], ups.join(" "));
            let _ = writeln!(s, "{}", line.trim_end());
        }
        s
    }
}

impl<V: Display> fmt::Display for RankedPoset<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// (S, <_cc): ranks are charges, edges are cyclage/cocyclage pairs inside
/// S. A set with non-partition evaluation is first carried to partition
/// evaluation by the sorting σ's.
pub fn build_poset(set: &TableauSet) -> RankedPoset<Tableau> {
    let sorted: Vec<Tableau> = set.iter().map(|t| t.sort_evaluation()).collect();
    let index: HashMap<&Tableau, usize> = sorted.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let ranks = sorted.iter().map(|t| t.charge() as i64).collect();
    let mut edges = vec![];
    for (i, t) in sorted.iter().enumerate() {
        for u in [t.cyclage(), t.cocyclage()].into_iter().flatten() {
            if let Some(&j) = index.get(&u) {
                edges.push((i, j));
            }
        }
    }
    RankedPoset::new(set.tableaux().to_vec(), ranks, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::generate_atom;
    use crate::partition::Partition;
    use crate::tableau::tabs;

    #[test]
    fn atom_32211_level_4() {
        let atom = generate_atom(&Partition::from(&[3, 2, 2, 1, 1][..]), 4).unwrap();
        let poset = build_poset(&atom);
        let names = |v: usize| poset.vertices()[v].to_string();
        let unordered = |a: String, b: String| if a < b { (a, b) } else { (b, a) };
        let mut got: Vec<(String, String)> =
            poset.edges().iter().map(|&(a, b)| unordered(names(a), names(b))).collect();
        got.sort();
        let mut want: Vec<(String, String)> = [
            ("3/225/11134", "4/3/225/1113"),
            ("3/225/11134", "4/3/22/11135"),
            ("4/3/225/1113", "4/33/225/111"),
            ("33/225/1114", "4/33/22/1115"),
            ("33/225/1114", "4/33/225/111"),
            ("4/3/22/11135", "5/4/3/22/1113"),
            ("4/33/22/1115", "5/4/33/22/111"),
            ("5/4/3/22/1113", "5/4/33/22/111"),
        ]
        .iter()
        .map(|(a, b)| unordered(a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(poset.rank_sizes(), vec![1, 3, 3, 1]);
        assert!(poset.is_graded());
        assert!(poset.is_connected());
    }

    #[test]
    fn singleton() {
        let p = build_poset(&TableauSet::new(tabs(&["2/13"])).unwrap());
        assert_eq!(p.len(), 1);
        assert!(p.edges().is_empty());
    }

    #[test]
    fn dot_has_clusters() {
        let p = build_poset(&TableauSet::new(tabs(&["2/11", "112"])).unwrap());
        let dot = p.to_dot(|t| t.shape().to_csv());
        assert!(dot.contains("cluster_rank0"));
        assert!(dot.contains("cluster_rank1"));
        assert_eq!(p.edges().len(), 1);
    }
}

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::{generate_atom, generate_h};
use crate::partition::Partition;
use crate::tableau::{canonical_cmp, Tableau, TableauSet};

use super::poset::{build_poset, RankedPoset};

/// A copy 𝔸_T^{(k)}: `members` has a Hasse diagram isomorphic to that of
/// 𝔸_{shape(T)}^{(k)}, with `index` at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copy {
    pub index: Tableau,
    pub charge: usize,
    pub members: TableauSet,
}

impl Copy {
    pub fn shape(&self) -> Partition {
        self.index.shape()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub copies: Vec<Copy>,
    /// Some extraction step admitted more than one image set.
    pub ambiguous: bool,
    /// Set when no exact cover was found; holds the tableau that could not
    /// be completed into a copy.
    pub stuck: Option<Tableau>,
    /// The search gave up after exhausting its step budget.
    pub exhausted: bool,
}

impl Decomposition {
    pub fn is_complete(&self) -> bool {
        self.stuck.is_none() && !self.exhausted
    }

    /// Number of copies per index shape.
    pub fn shape_counts(&self) -> HashMap<Partition, usize> {
        let mut out = HashMap::new();
        for c in &self.copies {
            *out.entry(c.shape()).or_insert(0) += 1;
        }
        out
    }

    pub fn find(&self, index: &Tableau) -> Option<&Copy> {
        self.copies.iter().find(|c| &c.index == index)
    }
}

/// Γ_λ^{(k)} with the root first in BFS order.
struct Template {
    shapes: Vec<Partition>,
    ranks: Vec<i64>,
    adj: Vec<Vec<usize>>,
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
}

impl Template {
    fn new(poset: &RankedPoset<Tableau>) -> Result<Template> {
        let n = poset.len();
        let root = (0..n)
            .min_by(|&a, &b| poset.rank(a).cmp(&poset.rank(b)).then(canonical_cmp(&poset.vertices()[a], &poset.vertices()[b])))
            .ok_or_else(|| Error::arith("empty atom"))?;
        let base = poset.rank(root);
        if (0..n).filter(|&v| poset.rank(v) == base).count() != 1 {
            return Err(Error::arith("atom has several minimal tableaux"));
        }
        let mut order = poset.bfs_order(root);
        let mut rest: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();
        rest.sort_by_key(|&v| poset.rank(v));
        order.extend(rest);
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let anchor = order
            .iter()
            .map(|&v| poset.neighbours(v).iter().copied().filter(|&u| pos[u] < pos[v]).min_by_key(|&u| pos[u]))
            .collect();
        Ok(Template {
            shapes: poset.vertices().iter().map(|t| t.shape()).collect(),
            ranks: (0..n).map(|v| poset.rank(v) - base).collect(),
            adj: (0..n).map(|v| poset.neighbours(v).to_vec()).collect(),
            order,
            anchor,
        })
    }
}

struct Graph {
    tableaux: Vec<Tableau>,
    shapes: Vec<Partition>,
    charges: Vec<i64>,
    adj: Vec<Vec<usize>>,
    by_rank_shape: HashMap<(i64, Partition), Vec<usize>>,
}

impl Graph {
    fn new(set: &TableauSet) -> Graph {
        let poset = build_poset(set);
        let mut tableaux: Vec<Tableau> = poset.vertices().to_vec();
        let mut order: Vec<usize> = (0..tableaux.len()).collect();
        order.sort_by(|&a, &b| poset.rank(a).cmp(&poset.rank(b)).then(canonical_cmp(&tableaux[a], &tableaux[b])));
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        tableaux = order.iter().map(|&v| tableaux[v].clone()).collect();
        let charges: Vec<i64> = order.iter().map(|&v| poset.rank(v)).collect();
        let adj: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| {
                let mut a: Vec<usize> = poset.neighbours(v).iter().map(|&u| pos[u]).collect();
                a.sort_unstable();
                a
            })
            .collect();
        let shapes: Vec<Partition> = tableaux.iter().map(|t| t.shape()).collect();
        let mut by_rank_shape: HashMap<(i64, Partition), Vec<usize>> = HashMap::new();
        for v in 0..tableaux.len() {
            by_rank_shape.entry((charges[v], shapes[v].clone())).or_default().push(v);
        }
        Graph { tableaux, shapes, charges, adj, by_rank_shape }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Search state for embedding one template.
struct Embedding<'a> {
    graph: &'a Graph,
    template: &'a Template,
    free: &'a [bool],
    map: Vec<usize>,
    inverse: HashMap<usize, usize>,
    found: Vec<Vec<usize>>,
    seen: BTreeSet<Vec<usize>>,
    limit: usize,
    budget: &'a mut u64,
}

impl Embedding<'_> {
    fn run(&mut self, step: usize) {
        if self.found.len() >= self.limit || *self.budget == 0 {
            return;
        }
        *self.budget -= 1;
        let t = self.template;
        if step == t.order.len() {
            let mut image: Vec<usize> = self.map.clone();
            image.sort_unstable();
            if self.seen.insert(image.clone()) {
                self.found.push(image);
            }
            return;
        }
        let v = t.order[step];
        let base = self.graph.charges[self.map[0]];
        let rank = base + t.ranks[v];
        let candidates: Vec<usize> = match t.anchor[step] {
            Some(u) => {
                let image = self.map[t.order.iter().position(|&x| x == u).unwrap()];
                self.graph.adj[image].clone()
            }
            None => self.graph.by_rank_shape.get(&(rank, t.shapes[v].clone())).cloned().unwrap_or_default(),
        };
        let mapped_neighbours: Vec<usize> =
            t.adj[v].iter().copied().filter(|u| self.inverse.values().any(|x| x == u)).collect();
        for c in candidates {
            if !self.free[c]
                || self.inverse.contains_key(&c)
                || self.graph.charges[c] != rank
                || self.graph.shapes[c] != t.shapes[v]
            {
                continue;
            }
            let image_neighbours = self.graph.adj[c].iter().filter(|g| self.inverse.contains_key(g)).count();
            if image_neighbours != mapped_neighbours.len() {
                continue;
            }
            if !mapped_neighbours.iter().all(|&u| {
                let g = self.map[t.order.iter().position(|&x| x == u).unwrap()];
                self.graph.adjacent(g, c)
            }) {
                continue;
            }
            self.map.push(c);
            self.inverse.insert(c, v);
            self.run(step + 1);
            self.map.pop();
            self.inverse.remove(&c);
        }
    }
}

/// Default number of search steps before a decomposition gives up.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

struct Decomposer<'a> {
    graph: Graph,
    k: usize,
    templates: HashMap<Partition, Arc<Template>>,
    atom: &'a dyn Fn(&Partition) -> Result<Arc<TableauSet>>,
    budget: u64,
    ambiguous: bool,
    stuck: Option<usize>,
}

impl Decomposer<'_> {
    fn template(&mut self, shape: &Partition) -> Result<Arc<Template>> {
        if let Some(t) = self.templates.get(shape) {
            return Ok(t.clone());
        }
        let atom = (self.atom)(shape)?;
        let t = Arc::new(Template::new(&build_poset(&atom))?);
        self.templates.insert(shape.clone(), t.clone());
        Ok(t)
    }

    fn images(&mut self, root: usize, free: &[bool]) -> Result<Vec<Vec<usize>>> {
        let template = self.template(&self.graph.shapes[root].clone())?;
        let mut search = Embedding {
            graph: &self.graph,
            template: &template,
            free,
            map: vec![root],
            inverse: HashMap::from([(root, template.order[0])]),
            found: vec![],
            seen: BTreeSet::new(),
            limit: 64,
            budget: &mut self.budget,
        };
        search.run(1);
        Ok(search.found)
    }

    /// Depth-first over extraction choices; returns the chosen image sets
    /// in extraction order.
    fn solve(&mut self, free: &mut Vec<bool>, chosen: &mut Vec<Vec<usize>>) -> Result<bool> {
        let Some(root) = (0..free.len()).find(|&v| free[v]) else {
            return Ok(true);
        };
        if !self.graph.shapes[root].is_bounded(self.k) {
            self.stuck.get_or_insert(root);
            return Ok(false);
        }
        let images = self.images(root, free)?;
        if images.len() > 1 {
            self.ambiguous = true;
        }
        if images.is_empty() {
            self.stuck.get_or_insert(root);
        }
        for image in images {
            if self.budget == 0 {
                return Ok(false);
            }
            for &v in &image {
                free[v] = false;
            }
            chosen.push(image.clone());
            if self.solve(free, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            for &v in &image {
                free[v] = true;
            }
        }
        Ok(false)
    }
}

/// Vertices are sorted by (charge, canonical order), so the first free
/// vertex is always a minimal-charge unassigned tableau.
fn decompose_with(set: &TableauSet, k: usize, budget: u64, atom: &dyn Fn(&Partition) -> Result<Arc<TableauSet>>) -> Result<Decomposition> {
    let mut d = Decomposer {
        graph: Graph::new(set),
        k,
        templates: HashMap::new(),
        atom,
        budget,
        ambiguous: false,
        stuck: None,
    };
    let mut free = vec![true; d.graph.tableaux.len()];
    let mut chosen = vec![];
    let ok = d.solve(&mut free, &mut chosen)?;
    let exhausted = !ok && d.budget == 0;
    let g = &d.graph;
    let copies = chosen
        .iter()
        .map(|image| {
            let index = image[0];
            Ok(Copy {
                index: g.tableaux[index].clone(),
                charge: g.charges[index] as usize,
                members: TableauSet::new(image.iter().map(|&v| g.tableaux[v].clone()).collect())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        copies,
        ambiguous: d.ambiguous,
        stuck: if ok { None } else { d.stuck.map(|v| g.tableaux[v].clone()) },
        exhausted,
    })
}

/// Partitions a set of tableaux into level-k copies.
pub fn decompose_set(set: &TableauSet, k: usize) -> Result<Decomposition> {
    decompose_set_with_budget(set, k, DEFAULT_BUDGET)
}

pub fn decompose_set_with_budget(set: &TableauSet, k: usize, budget: u64) -> Result<Decomposition> {
    decompose_with(set, k, budget, &|shape| generate_atom(shape, k))
}

/// Decomposition of ℍ_μ into copies 𝔸_T^{(k)}.
pub fn decompose_copies(mu: &Partition, k: usize) -> Result<Decomposition> {
    if !mu.is_bounded(k) {
        return Err(Error::NotBounded(mu.to_string(), k));
    }
    decompose_set(&generate_h(mu)?, k)
}

/// Splits a level-k copy into level-k2 copies.
pub fn refine_copies(copy: &TableauSet, k: usize, k2: usize) -> Result<Decomposition> {
    if k2 <= k {
        return Err(Error::invalid(format!("refinement level {} must exceed {}", k2, k)));
    }
    decompose_set(copy, k2)
}

/// Whether `set` is exactly one copy 𝔸_T^{(k)}.
pub fn is_copy(set: &TableauSet, k: usize) -> Result<bool> {
    let d = decompose_set(set, k)?;
    Ok(d.is_complete() && d.copies.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::tabs;

    fn p(v: &[usize]) -> Partition {
        Partition::from(v)
    }

    #[test]
    fn mu_equal_lambda_gives_the_atom_first() {
        let mu = p(&[2, 1, 1]);
        for k in 2..=4 {
            let d = decompose_copies(&mu, k).unwrap();
            assert!(d.is_complete());
            assert_eq!(&d.copies[0].members, &*generate_atom(&mu, k).unwrap());
        }
    }

    #[test]
    fn large_k_gives_singletons() {
        let d = decompose_copies(&p(&[2, 2, 1]), 5).unwrap();
        assert!(d.copies.iter().all(|c| c.members.len() == 1));
        assert_eq!(d.copies.len(), generate_h(&p(&[2, 2, 1])).unwrap().len());
    }

    #[test]
    fn atom_is_a_copy_of_itself() {
        let atom = generate_atom(&p(&[3, 2, 2, 1, 1]), 4).unwrap();
        assert!(is_copy(&atom, 4).unwrap());
        let hook = TableauSet::new(tabs(&["2/11", "112"])).unwrap();
        assert!(is_copy(&hook, 2).unwrap());
        assert!(!is_copy(&hook, 3).unwrap());
    }
}

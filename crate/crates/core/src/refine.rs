//! Individualisation/refinement search on vertex-coloured graphs.
//!
//! The first `points` vertices are the ones whose images define a mapping;
//! the remaining vertices only carry structure. Colourings are always dense
//! ranks of isomorphism-invariant keys, so two graphs refined in lock step
//! can be compared by certificate alone. Every candidate mapping reaching a
//! leaf is handed to a caller-supplied verifier, so hash collisions in the
//! certificates can only weaken pruning.

use crate::error::{Error, Result};
use crate::util::{combine, mix64, UnionFind};

#[derive(Clone, Debug)]
pub struct ColoredGraph {
    adj: Vec<Vec<u32>>,
    colors: Vec<u64>,
    points: usize,
}

impl ColoredGraph {
    /// `colors` are arbitrary invariant labels; vertices `0..points` are
    /// the mapped points.
    pub fn new(adj: Vec<Vec<u32>>, colors: Vec<u64>, points: usize) -> Self {
        assert_eq!(adj.len(), colors.len());
        assert!(points <= adj.len());
        Self {
            adj,
            colors,
            points,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn points(&self) -> usize {
        self.points
    }

    fn initial(&self) -> (Vec<u32>, u64) {
        let keys: Vec<(u64, u64)> = self.colors.iter().map(|&c| (c, 0)).collect();
        let (colors, cert) = relabel(&keys);
        let mut colors = colors;
        let c2 = self.refine(&mut colors);
        (colors, combine(cert, c2))
    }

    /// Refines to the coarsest equitable colouring reachable by hashed
    /// neighbour multisets; returns a certificate of the process.
    fn refine(&self, colors: &mut Vec<u32>) -> u64 {
        let mut cert = 0u64;
        let mut count = distinct(colors);
        loop {
            let keys: Vec<(u64, u64)> = self
                .adj
                .iter()
                .enumerate()
                .map(|(v, nb)| {
                    let h = nb.iter().fold(0u64, |acc, &u| {
                        acc.wrapping_add(mix64(u64::from(colors[u as usize])))
                    });
                    (u64::from(colors[v]), h)
                })
                .collect();
            let (next, c) = relabel(&keys);
            cert = combine(cert, c);
            let next_count = distinct(&next);
            *colors = next;
            if next_count == count {
                return cert;
            }
            count = next_count;
        }
    }

    fn individualize(&self, colors: &[u32], v: usize) -> Vec<u32> {
        let keys: Vec<(u64, u64)> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| (u64::from(c), u64::from(u == v)))
            .collect();
        relabel(&keys).0
    }

    /// Smallest-coloured non-singleton cell among the points.
    fn target_cell(&self, colors: &[u32]) -> Option<Vec<usize>> {
        let mut size = vec![0u32; colors.len()];
        for &c in &colors[..self.points] {
            size[c as usize] += 1;
        }
        let c = (0..size.len()).find(|&c| size[c] > 1)?;
        Some(
            (0..self.points)
                .filter(|&p| colors[p] as usize == c)
                .collect(),
        )
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Dense ranks of the keys plus a certificate of the (key, multiplicity) list.
fn relabel(keys: &[(u64, u64)]) -> (Vec<u32>, u64) {
    let mut sorted: Vec<(u64, u64)> = keys.to_vec();
    sorted.sort_unstable();
    let mut uniq: Vec<((u64, u64), u64)> = Vec::new();
    for k in sorted {
        match uniq.last_mut() {
            Some((last, n)) if *last == k => *n += 1,
            _ => uniq.push((k, 1)),
        }
    }
    let mut cert = uniq.len() as u64;
    for ((a, b), n) in &uniq {
        cert = combine(combine(combine(cert, *a), *b), *n);
    }
    let colors = keys
        .iter()
        .map(|k| {
            uniq.binary_search_by(|(u, _)| u.cmp(k))
                .expect("key present") as u32
        })
        .collect();
    (colors, cert)
}

#[derive(Clone, Debug)]
struct Level {
    coloring: Vec<u32>,
    cell: Vec<usize>,
    base: usize,
    cert_after: u64,
}

/// Leftmost path of the search tree of one graph.
#[derive(Clone, Debug)]
pub struct SearchTree<'g> {
    graph: &'g ColoredGraph,
    root: Vec<u32>,
    root_cert: u64,
    path: Vec<Level>,
    leaf: Vec<u32>,
}

pub struct Budget {
    nodes: u64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { nodes: 0, limit }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded(format!(
                "refinement search visited more than {} nodes",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Outcome of an automorphism computation: point permutations generating
/// the group and the orbit lengths along the base.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub generators: Vec<Vec<usize>>,
    pub orbit_lengths: Vec<usize>,
}

impl<'g> SearchTree<'g> {
    pub fn new(graph: &'g ColoredGraph) -> Self {
        let (root, root_cert) = graph.initial();
        let mut path = Vec::new();
        let mut c = root.clone();
        while let Some(cell) = graph.target_cell(&c) {
            let base = cell[0];
            let mut next = graph.individualize(&c, base);
            let cert_after = graph.refine(&mut next);
            path.push(Level {
                coloring: std::mem::take(&mut c),
                cell,
                base,
                cert_after,
            });
            c = next;
        }
        Self {
            graph,
            root,
            root_cert,
            path,
            leaf: c,
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.path.iter().map(|l| l.base).collect()
    }

    fn leaf_map(&self, other_leaf: &[u32]) -> Option<Vec<usize>> {
        let pts = self.graph.points;
        let mut by_color = vec![usize::MAX; other_leaf.len().max(1)];
        for (q, &c) in other_leaf[..pts].iter().enumerate() {
            let slot = by_color.get_mut(c as usize)?;
            if *slot != usize::MAX {
                return None;
            }
            *slot = q;
        }
        let mut map = Vec::with_capacity(pts);
        for &c in &self.leaf[..pts] {
            let q = *by_color.get(c as usize)?;
            if q == usize::MAX {
                return None;
            }
            map.push(q);
        }
        Some(map)
    }

    fn extend(
        &self,
        other: &ColoredGraph,
        level: usize,
        colors: Vec<u32>,
        allowed: Option<&[bool]>,
        verify: &mut dyn FnMut(&[usize]) -> bool,
        budget: &mut Budget,
    ) -> Result<Option<Vec<usize>>> {
        budget.tick()?;
        if level == self.path.len() {
            return Ok(self.leaf_map(&colors).filter(|m| verify(m)));
        }
        let lv = &self.path[level];
        let target = lv.coloring[lv.base];
        for w in 0..other.points {
            if colors[w] != target || allowed.is_some_and(|a| !a[w]) {
                continue;
            }
            let mut next = other.individualize(&colors, w);
            if other.refine(&mut next) != lv.cert_after {
                continue;
            }
            if let Some(m) = self.extend(other, level + 1, next, None, verify, budget)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Finds a point mapping from this graph to `other` accepted by `verify`.
    ///
    /// `first_level`, when given, restricts the image of the first base
    /// point; pass one representative per orbit of a known subgroup of
    /// `Aut(other)` to prune the search without losing completeness.
    pub fn find_isomorphism(
        &self,
        other: &ColoredGraph,
        first_level: Option<&[bool]>,
        verify: &mut dyn FnMut(&[usize]) -> bool,
        budget: &mut Budget,
    ) -> Result<Option<Vec<usize>>> {
        if other.vertex_count() != self.graph.vertex_count() || other.points != self.graph.points {
            return Ok(None);
        }
        let (root, cert) = other.initial();
        if cert != self.root_cert {
            return Ok(None);
        }
        self.extend(other, 0, root, first_level, verify, budget)
    }

    /// Generators and base orbit lengths of the group of verified
    /// automorphisms; the group order is the product of the orbit lengths.
    pub fn automorphisms(
        &self,
        verify: &mut dyn FnMut(&[usize]) -> bool,
        budget: &mut Budget,
    ) -> Result<AutResult> {
        let pts = self.graph.points;
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut orbit_lengths = vec![0usize; self.path.len()];
        for i in (0..self.path.len()).rev() {
            let lv = &self.path[i];
            let mut orbits = UnionFind::new(pts);
            for g in &generators {
                for (p, &q) in g.iter().enumerate() {
                    orbits.union(p, q);
                }
            }
            let mut failed: Vec<usize> = Vec::new();
            for &gamma in &lv.cell {
                if gamma == lv.base || orbits.find(gamma) == orbits.find(lv.base) {
                    continue;
                }
                let root = orbits.find(gamma);
                if failed.iter().any(|&f| orbits.find(f) == root) {
                    continue;
                }
                let mut next = self.graph.individualize(&lv.coloring, gamma);
                let found = if self.graph.refine(&mut next) == lv.cert_after {
                    self.extend(self.graph, i + 1, next, None, verify, budget)?
                } else {
                    None
                };
                match found {
                    Some(g) => {
                        for (p, &q) in g.iter().enumerate() {
                            orbits.union(p, q);
                        }
                        generators.push(g);
                    }
                    None => failed.push(gamma),
                }
            }
            let r = orbits.find(lv.base);
            orbit_lengths[i] = (0..pts).filter(|&p| orbits.find(p) == r).count();
        }
        Ok(AutResult {
            generators,
            orbit_lengths,
        })
    }

    #[allow(dead_code)]
    pub(crate) fn root_coloring(&self) -> &[u32] {
        &self.root
    }
}

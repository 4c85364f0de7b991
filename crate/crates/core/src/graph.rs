//! Multigraphs with ordered edges, and the exhaustive enumerations used as oracles.
//!
//! The position of an edge in the edge list is its id and also the index of its
//! variable `x_e` in every polynomial computed from the graph. Loops and parallel
//! edges are allowed. Loops are kept in cycle bases but never belong to a tree or
//! forest.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::smith_invariant_factors;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// A set of edge ids, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSubset(Vec<usize>);

impl EdgeSubset {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSubset(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(t, h) in edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: v, vertex_count });
                }
            }
        }
        Ok(Multigraph { vertex_count, edges: edges.iter().map(|&(tail, head)| Edge { tail, head }).collect() })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<Edge> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge { edge: e, edge_count: self.edges.len() })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::InvalidVertex { vertex: v, vertex_count: self.vertex_count });
        }
        Ok(())
    }

    pub fn first_loop(&self) -> Option<usize> {
        self.edges.iter().position(Edge::is_loop)
    }

    pub fn has_loops(&self) -> bool {
        self.first_loop().is_some()
    }

    /// Vertex partition into connected components. Parts are sorted internally
    /// and ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        let mut index = vec![usize::MAX; self.vertex_count];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = parts.len();
                parts.push(Vec::new());
            }
            parts[index[r]].push(v);
        }
        parts
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(Error::Disconnected { components }),
        }
    }

    /// Signed vertex-edge incidence matrix: column `e` is `head - tail`, zero for loops.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.edges.len()]; self.vertex_count];
        for (j, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                d[e.head][j] += 1;
                d[e.tail][j] -= 1;
            }
        }
        d
    }

    /// First Betti number `m - n + c`.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn is_bridge(&self, e: usize) -> Result<bool> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        Ok(self.delete_edge(e)?.component_count() > self.component_count())
    }

    /// The graph with edge `e` removed; later edges shift down by one.
    pub fn delete_edge(&self, e: usize) -> Result<Multigraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Multigraph { vertex_count: self.vertex_count, edges })
    }

    /// The graph with edge `e` contracted: its head is merged into its tail and
    /// vertices above the head shift down by one. Edges parallel to `e` become
    /// loops. Fails on a loop.
    pub fn contract_edge(&self, e: usize) -> Result<Multigraph> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Err(Error::EdgeIsLoop { edge: e });
        }
        let (keep, gone) = (edge.tail, edge.head);
        let relabel = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| Edge { tail: relabel(x.tail), head: relabel(x.head) })
            .collect();
        Ok(Multigraph { vertex_count: self.vertex_count - 1, edges })
    }

    /// Reorders edges: old edge `i` becomes edge `perm[i]`.
    pub fn permute_edges(&self, perm: &[usize]) -> Result<Multigraph> {
        let m = self.edges.len();
        if perm.len() != m {
            return Err(Error::Domain(format!("permutation of length {} for {m} edges", perm.len())));
        }
        let mut slots: Vec<Option<Edge>> = vec![None; m];
        for (i, &p) in perm.iter().enumerate() {
            if p >= m || slots[p].is_some() {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
            slots[p] = Some(self.edges[i]);
        }
        Ok(Multigraph { vertex_count: self.vertex_count, edges: slots.into_iter().map(Option::unwrap).collect() })
    }

    /// Same graph with every edge reversed where `flip[e]` is set.
    pub fn reorient(&self, flip: &[bool]) -> Multigraph {
        Multigraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .zip(flip.iter().chain(std::iter::repeat(&false)))
                .map(|(e, &f)| if f { Edge { tail: e.head, head: e.tail } } else { *e })
                .collect(),
        }
    }
}

#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if the two were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Backtracking search for acyclic edge sets of a fixed size in which no
/// component holds two marked vertices. Results come out in lexicographic order.
struct ForestSearch<'a> {
    graph: &'a Multigraph,
    target: usize,
    out: Vec<EdgeSubset>,
}

impl ForestSearch<'_> {
    fn run(&mut self, start: usize, chosen: &mut Vec<usize>, label: &[usize], marked: &[bool]) {
        if chosen.len() == self.target {
            self.out.push(EdgeSubset(chosen.clone()));
            return;
        }
        let m = self.graph.edges.len();
        for i in start..m {
            if chosen.len() + (m - i) < self.target {
                return;
            }
            let e = self.graph.edges[i];
            let (a, b) = (label[e.tail], label[e.head]);
            if a == b || (marked[a] && marked[b]) {
                continue;
            }
            let next: Vec<usize> = label.iter().map(|&l| if l == b { a } else { l }).collect();
            let mut next_marked = marked.to_vec();
            next_marked[a] = marked[a] || marked[b];
            chosen.push(i);
            self.run(i + 1, chosen, &next, &next_marked);
            chosen.pop();
        }
    }
}

fn search_forests(g: &Multigraph, target: usize, marked: Vec<bool>) -> Vec<EdgeSubset> {
    let mut search = ForestSearch { graph: g, target, out: Vec::new() };
    let label: Vec<usize> = (0..g.vertex_count).collect();
    search.run(0, &mut Vec::new(), &label, &marked);
    search.out
}

/// All spanning trees, each as a sorted set of `n - 1` edge ids, in lexicographic order.
pub fn enumerate_spanning_trees(g: &Multigraph) -> Result<Vec<EdgeSubset>> {
    g.require_connected()?;
    Ok(search_forests(g, g.vertex_count - 1, vec![false; g.vertex_count]))
}

/// All spanning forests with exactly one root from `roots` in each component.
pub fn enumerate_rooted_forests(g: &Multigraph, roots: &[usize]) -> Result<Vec<EdgeSubset>> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    let mut marked = vec![false; g.vertex_count];
    for &r in roots {
        g.check_vertex(r)?;
        marked[r] = true;
    }
    let s = marked.iter().filter(|&&b| b).count();
    Ok(search_forests(g, g.vertex_count - s, marked))
}

/// All labelled connected loopless multigraphs with at most `max_edges` edges.
///
/// Each graph is an edge multiset over vertex pairs `i < j`, oriented `i -> j`,
/// with edges listed in lexicographic order. Ordered by edge count, then vertex count.
pub fn connected_multigraph_corpus(max_edges: usize) -> Vec<Multigraph> {
    fn extend(
        pairs: &[(usize, usize)],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            extend(pairs, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut corpus = Vec::new();
    for m in 0..=max_edges {
        for n in 1..=m + 1 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut multisets = Vec::new();
            extend(&pairs, 0, m, &mut Vec::new(), &mut multisets);
            for edges in multisets {
                let g = Multigraph::new(n, &edges).expect("valid vertices");
                if g.is_connected() {
                    corpus.push(g);
                }
            }
        }
    }
    corpus
}

/// Random connected loopless multigraph: a random spanning tree plus random extra
/// edges, every edge randomly oriented, edges shuffled.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> Result<Multigraph> {
    if vertices == 0 || edges + 1 < vertices || (vertices == 1 && edges > 0) {
        return Err(Error::Domain(format!(
            "no connected loopless multigraph with {vertices} vertices and {edges} edges"
        )));
    }
    let mut list: Vec<(usize, usize)> = (1..vertices).map(|v| (rng.gen_range(0..v), v)).collect();
    while list.len() < edges {
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices - 1);
        list.push((a, if b >= a { b + 1 } else { b }));
    }
    for e in list.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    list.shuffle(rng);
    Multigraph::new(vertices, &list)
}

/// Integral cycle basis: column `j` is the signed edge vector of fundamental cycle `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    edge_count: usize,
    columns: Vec<Vec<i64>>,
    forest: EdgeSubset,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    /// The spanning forest the basis was built from.
    pub fn forest(&self) -> &EdgeSubset {
        &self.forest
    }

    /// The `m x h1` matrix `C`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.edge_count).map(|e| self.columns.iter().map(|c| c[e]).collect()).collect()
    }

    /// Checks `incidence * C = 0`.
    pub fn is_in_cycle_space(&self, g: &Multigraph) -> bool {
        let d = g.incidence_matrix();
        self.columns.iter().all(|col| d.iter().all(|row| row.iter().zip(col).map(|(a, b)| a * b).sum::<i64>() == 0))
    }

    pub fn smith_invariant_factors(&self) -> Vec<BigInt> {
        smith_invariant_factors(&self.matrix())
    }
}

/// Fundamental cycle basis with respect to the lexicographically first spanning forest.
pub fn fundamental_cycle_basis(g: &Multigraph) -> CycleBasis {
    let mut uf = UnionFind::new(g.vertex_count);
    let forest: Vec<usize> =
        g.edges.iter().enumerate().filter(|(_, e)| uf.union(e.tail, e.head)).map(|(i, _)| i).collect();
    build_cycle_basis(g, &EdgeSubset(forest))
}

/// Fundamental cycle basis with respect to a caller-chosen maximal spanning forest.
pub fn fundamental_cycle_basis_from_forest(g: &Multigraph, forest: &EdgeSubset) -> Result<CycleBasis> {
    let mut uf = UnionFind::new(g.vertex_count);
    for &e in forest.edges() {
        let edge = g.edge(e)?;
        if !uf.union(edge.tail, edge.head) {
            return Err(Error::NotSpanningForest(format!("edge {e} closes a cycle")));
        }
    }
    let expected = g.vertex_count - g.component_count();
    if forest.len() != expected {
        return Err(Error::NotSpanningForest(format!("{} edges, a maximal forest has {expected}", forest.len())));
    }
    Ok(build_cycle_basis(g, forest))
}

fn build_cycle_basis(g: &Multigraph, forest: &EdgeSubset) -> CycleBasis {
    let m = g.edges.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count];
    for &e in forest.edges() {
        let edge = g.edges[e];
        adj[edge.tail].push((edge.head, e));
        adj[edge.head].push((edge.tail, e));
    }
    let mut columns = Vec::new();
    for (j, edge) in g.edges.iter().enumerate() {
        if forest.contains(j) {
            continue;
        }
        let mut col = vec![0i64; m];
        col[j] = 1;
        if !edge.is_loop() {
            // Walk the forest from head back to tail.
            for (from, e) in forest_path(&adj, edge.head, edge.tail) {
                let fe = g.edges[e];
                col[e] += if fe.tail == from { 1 } else { -1 };
            }
        }
        columns.push(col);
    }
    CycleBasis { edge_count: m, columns, forest: forest.clone() }
}

/// Steps `(vertex left, edge used)` along the unique forest path from `start` to `goal`.
fn forest_path(adj: &[Vec<(usize, usize)>], start: usize, goal: usize) -> Vec<(usize, usize)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = std::collections::VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        if v == goal {
            break;
        }
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    let mut steps = Vec::new();
    let mut v = goal;
    while let Some((u, e)) = prev[v] {
        steps.push((u, e));
        v = u;
    }
    steps.reverse();
    steps
}

#[cfg(test)]
mod tests {
    #[test]
    fn corpus_size() {
        let sizes: Vec<usize> = (0..=4).map(|m| super::connected_multigraph_corpus(m).len()).collect();
        assert_eq!(sizes, vec![1, 2, 6, 30, 231]);
    }

    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(Multigraph::new(1, &[]).unwrap().connected_components(), vec![vec![0]]);
        assert_eq!(triangle().connected_components(), vec![vec![0, 1, 2]]);
        assert_eq!(Multigraph::new(2, &[]).unwrap().connected_components(), vec![vec![0], vec![1]]);
        let g = Multigraph::new(3, &[(2, 2), (0, 2)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn invalid_endpoint() {
        assert_eq!(Multigraph::new(2, &[(0, 2)]), Err(Error::InvalidVertex { vertex: 2, vertex_count: 2 }));
    }

    #[test]
    fn trees_small() {
        let g = Multigraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_spanning_trees(&g).unwrap(), vec![EdgeSubset::new(vec![0])]);
        let t = enumerate_spanning_trees(&triangle()).unwrap();
        let expect: Vec<EdgeSubset> = [[0, 1], [0, 2], [1, 2]].iter().map(|p| EdgeSubset::new(p.to_vec())).collect();
        assert_eq!(t, expect);
        assert_eq!(
            enumerate_spanning_trees(&Multigraph::new(2, &[]).unwrap()),
            Err(Error::Disconnected { components: 2 })
        );
    }

    #[test]
    fn loops_never_in_trees() {
        let g = Multigraph::new(2, &[(0, 0), (0, 1), (1, 1), (0, 1)]).unwrap();
        let t = enumerate_spanning_trees(&g).unwrap();
        assert_eq!(t, vec![EdgeSubset::new(vec![1]), EdgeSubset::new(vec![3])]);
    }

    #[test]
    fn rooted_forests_path() {
        let g = Multigraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(enumerate_rooted_forests(&g, &[0, 1]).unwrap(), vec![EdgeSubset::default()]);
        assert_eq!(enumerate_rooted_forests(&g, &[0]).unwrap(), vec![EdgeSubset::new(vec![0])]);
        assert_eq!(enumerate_rooted_forests(&g, &[]), Err(Error::EmptyRoots));
        assert!(enumerate_rooted_forests(&g, &[5]).is_err());
    }

    #[test]
    fn rooted_forests_single_root_are_trees() {
        let g = triangle();
        for r in 0..3 {
            assert_eq!(enumerate_rooted_forests(&g, &[r]).unwrap(), enumerate_spanning_trees(&g).unwrap());
        }
        // Two roots in a triangle: each forest is one edge not joining the roots.
        let f = enumerate_rooted_forests(&g, &[0, 1]).unwrap();
        assert_eq!(f, vec![EdgeSubset::new(vec![1]), EdgeSubset::new(vec![2])]);
    }

    #[test]
    fn cycle_basis_examples() {
        let path = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(fundamental_cycle_basis(&path).rank(), 0);

        let tri = triangle();
        let c = fundamental_cycle_basis(&tri);
        assert_eq!(c.rank(), 1);
        assert!(c.columns()[0].iter().all(|x| x.abs() == 1));
        assert!(c.is_in_cycle_space(&tri));
        // Edge 2 goes 0 -> 2; closing back 2 -> 1 -> 0 traverses both tree edges backwards.
        assert_eq!(c.columns()[0], vec![-1, -1, 1]);

        let lp = Multigraph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(fundamental_cycle_basis(&lp).matrix(), vec![vec![1]]);
    }

    #[test]
    fn cycle_basis_custom_forest() {
        let g = triangle();
        let c = fundamental_cycle_basis_from_forest(&g, &EdgeSubset::new(vec![1, 2])).unwrap();
        assert!(c.is_in_cycle_space(&g));
        assert_eq!(c.columns()[0][0], 1);
        assert!(fundamental_cycle_basis_from_forest(&g, &EdgeSubset::new(vec![1])).is_err());
        let lp = Multigraph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(fundamental_cycle_basis_from_forest(&lp, &EdgeSubset::new(vec![0, 1])).is_err());
    }

    #[test]
    fn contraction_and_deletion() {
        let g = triangle();
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edges(), &[Edge { tail: 0, head: 1 }, Edge { tail: 0, head: 1 }]);
        let d = g.delete_edge(0).unwrap();
        assert_eq!(d.edges(), &[Edge { tail: 1, head: 2 }, Edge { tail: 0, head: 2 }]);
        assert!(!g.is_bridge(0).unwrap());
        assert!(d.is_bridge(0).unwrap());
        let banana = Multigraph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(banana.contract_edge(0).unwrap().edges()[0].is_loop());
    }

    #[test]
    fn permutation_of_edges() {
        let g = triangle();
        let p = g.permute_edges(&[2, 0, 1]).unwrap();
        assert_eq!(p.edges()[2], g.edges()[0]);
        assert!(g.permute_edges(&[0, 0, 1]).is_err());
    }
}

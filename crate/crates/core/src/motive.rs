//! Kirchhoff polynomials of graphs and vertex-weighted Laplacians.
//!
//! The graph polynomial `Psi = sum_T prod_{e not in T} x_e` is computed three
//! ways: directly from the spanning trees, as the determinant of the quadratic
//! form `sum_e x_e (e^v)^2` restricted to an integral cycle basis, and as
//! `prod_e x_e` times a principal cofactor of the Laplacian with edge weights
//! `1 / x_e`.
//!
//! Vertex weights are given as `beta_v` with `alpha_v = beta_v^2`, so every
//! square root appearing in the symmetric Laplacian is rational. With
//! `B(v, e) = +-beta_u` (u the other endpoint of e) and `T = diag(w_e)`:
//!
//! ```text
//! Lsym = B T B^t,   Lsym(u, v) = -beta_u beta_v w_uv,   Lsym(v, v) = sum_{e = vz} w_e alpha_z
//! Lwalk = W^{-1/2} Lsym W^{1/2},   Lwalk(u, v) = -w_uv alpha_v,   rows of Lwalk sum to zero
//! ```

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{
    enumerate_rooted_forests, enumerate_spanning_trees, fundamental_cycle_basis, CycleBasis, EdgeSubset, Multigraph,
};
use crate::linalg::RatMatrix;
use crate::polynomial::{rational_charpoly, MPoly, ModPoly, PolyMatrix};
use crate::{int, Error, Rational, Result};

/// Default cap on `q^m` for brute-force point counting.
pub const POINT_COUNT_LIMIT: u128 = 10_000_000;

/// Largest vertex count accepted by the exhaustive forest comparison.
pub const FOREST_VERTEX_LIMIT: usize = 7;

const LOOP_HINT: &str = "the Laplacian route ignores loops; use the tree-sum or configuration route";

fn require_loopless(g: &Multigraph) -> Result<()> {
    match g.first_loop() {
        Some(edge) => Err(Error::LoopPresent { edge, hint: LOOP_HINT }),
        None => Ok(()),
    }
}

/// `Psi` as a sum over spanning trees of the complementary edge monomials.
pub fn psi_tree_sum(g: &Multigraph) -> Result<MPoly> {
    let m = g.edge_count();
    let trees = enumerate_spanning_trees(g)?;
    MPoly::from_terms(
        m,
        trees.iter().map(|t| {
            let e = (0..m).map(|i| u32::from(!t.contains(i))).collect();
            (e, Rational::one())
        }),
    )
}

/// `Psi` as `det(C^t diag(x) C)` for the default fundamental cycle basis `C`.
pub fn psi_config_det(g: &Multigraph) -> Result<MPoly> {
    g.require_connected()?;
    psi_config_det_with_basis(g, &fundamental_cycle_basis(g))
}

/// Configuration determinant for a caller-supplied cycle basis.
pub fn psi_config_det_with_basis(g: &Multigraph, basis: &CycleBasis) -> Result<MPoly> {
    let m = g.edge_count();
    if basis.edge_count() != m {
        return Err(Error::Shape(format!("cycle basis over {} edges for a graph with {m}", basis.edge_count())));
    }
    let h = basis.rank();
    let cols = basis.columns();
    let mut form = PolyMatrix::zeros(h, h, m);
    for i in 0..h {
        for j in i..h {
            let mut entry = MPoly::zero(m);
            for e in 0..m {
                let c = cols[i][e] * cols[j][e];
                if c != 0 {
                    entry = &entry + &MPoly::var(m, e).scale(&int(c));
                }
            }
            form.set(i, j, entry.clone());
            form.set(j, i, entry);
        }
    }
    form.det_fraction_free()
}

/// Laplacian in the reciprocal variables `y_e = 1/x_e`, optionally vertex-weighted,
/// with row and column `root` removed.
fn reciprocal_laplacian_cofactor(g: &Multigraph, beta: Option<&[Rational]>, root: usize) -> Result<MPoly> {
    g.require_connected()?;
    require_loopless(g)?;
    g.check_vertex(root)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let alpha = |v: usize| beta.map_or_else(Rational::one, |b| &b[v] * &b[v]);
    let cross = |u: usize, v: usize| beta.map_or_else(Rational::one, |b| &b[u] * &b[v]);
    let mut lap = PolyMatrix::zeros(n, n, m);
    for (e, edge) in g.edges().iter().enumerate() {
        let (a, b) = (edge.tail, edge.head);
        let y = MPoly::var(m, e);
        lap.add_to(a, a, &y.scale(&alpha(b)));
        lap.add_to(b, b, &y.scale(&alpha(a)));
        let off = y.scale(&-cross(a, b));
        lap.add_to(a, b, &off);
        lap.add_to(b, a, &off);
    }
    lap.minor_matrix(root, root).det_fraction_free()?.complement_monomials()
}

/// `Psi` as `prod_e x_e` times the principal cofactor at vertex 0 of the Laplacian
/// with edge weights `1/x_e`. Loops are rejected.
pub fn psi_laplacian(g: &Multigraph) -> Result<MPoly> {
    psi_laplacian_at(g, 0)
}

pub fn psi_laplacian_at(g: &Multigraph, root: usize) -> Result<MPoly> {
    reciprocal_laplacian_cofactor(g, None, root)
}

/// Which construction [`psi`] should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiRoute {
    Tree,
    Config,
    Laplacian,
}

pub fn psi(g: &Multigraph, route: PsiRoute) -> Result<MPoly> {
    match route {
        PsiRoute::Tree => psi_tree_sum(g),
        PsiRoute::Config => psi_config_det(g),
        PsiRoute::Laplacian => psi_laplacian(g),
    }
}

/// Combinatorial Laplacian with one row and column deleted; loops are ignored.
pub fn matrix_tree_count(g: &Multigraph) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    let lap = RatMatrix::from_i64(&plain_laplacian(g)).expect("square");
    let det = lap.minor_matrix(0, 0).det().expect("square");
    det.to_integer()
}

fn plain_laplacian(g: &Multigraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i64; n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        l[e.tail][e.tail] += 1;
        l[e.head][e.head] += 1;
        l[e.tail][e.head] -= 1;
        l[e.head][e.tail] -= 1;
    }
    l
}

/// Vertex weights `alpha_v = beta_v^2` and edge weights `w_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBundle {
    beta: Vec<Rational>,
    edge_weights: Vec<Rational>,
}

impl WeightBundle {
    pub fn new(beta: Vec<Rational>, edge_weights: Vec<Rational>) -> Result<Self> {
        if let Some(b) = beta.iter().find(|b| !b.is_positive()) {
            return Err(Error::InvalidWeights(format!("vertex weight {b} is not positive")));
        }
        if let Some(w) = edge_weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidWeights(format!("edge weight {w} is negative")));
        }
        Ok(WeightBundle { beta, edge_weights })
    }

    /// All weights equal to one.
    pub fn unit(g: &Multigraph) -> Self {
        WeightBundle {
            beta: vec![Rational::one(); g.vertex_count()],
            edge_weights: vec![Rational::one(); g.edge_count()],
        }
    }

    /// Given vertex weights `beta` and unit edge weights.
    pub fn with_beta(g: &Multigraph, beta: Vec<Rational>) -> Result<Self> {
        Self::new(beta, vec![Rational::one(); g.edge_count()])
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn edge_weights(&self) -> &[Rational] {
        &self.edge_weights
    }

    pub fn alpha(&self, v: usize) -> Rational {
        &self.beta[v] * &self.beta[v]
    }

    pub fn alpha_total(&self) -> Rational {
        (0..self.beta.len()).map(|v| self.alpha(v)).sum()
    }

    fn check(&self, g: &Multigraph) -> Result<()> {
        if self.beta.len() != g.vertex_count() || self.edge_weights.len() != g.edge_count() {
            return Err(Error::InvalidWeights(format!(
                "{} vertex and {} edge weights for a graph with {} vertices and {} edges",
                self.beta.len(),
                self.edge_weights.len(),
                g.vertex_count(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

/// The matrices attached to a weighted loopless graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianSuite {
    /// Unweighted Laplacian: degrees on the diagonal, minus edge multiplicities off it.
    pub plain: Vec<Vec<i64>>,
    /// Non-symmetric vertex-weighted Laplacian with zero row sums.
    pub walk: RatMatrix,
    /// Symmetric vertex-weighted Laplacian.
    pub symmetric: RatMatrix,
    /// `diag(alpha_v)`.
    pub vertex_weights: RatMatrix,
    /// Weighted incidence matrix, vertices by edges.
    pub incidence: RatMatrix,
    /// `diag(w_e)`.
    pub edge_weights: RatMatrix,
}

pub fn laplacian_suite(g: &Multigraph, wb: &WeightBundle) -> Result<LaplacianSuite> {
    require_loopless(g)?;
    wb.check(g)?;
    let (n, m) = (g.vertex_count(), g.edge_count());

    let mut incidence = RatMatrix::zeros(n, m);
    let mut symmetric = RatMatrix::zeros(n, n);
    let mut walk = RatMatrix::zeros(n, n);
    for (e, edge) in g.edges().iter().enumerate() {
        let w = &wb.edge_weights[e];
        for v in [edge.tail, edge.head] {
            let u = edge.other(v);
            // Row v carries the other endpoint's weight, positive when that endpoint
            // has the smaller index.
            let sign = if u < v { int(1) } else { int(-1) };
            incidence.set(v, e, sign * &wb.beta[u]);
            symmetric.add_to(v, v, &(w * wb.alpha(u)));
            walk.add_to(v, v, &(w * wb.alpha(u)));
            walk.add_to(v, u, &-(w * wb.alpha(u)));
        }
        let off = -(w * &wb.beta[edge.tail] * &wb.beta[edge.head]);
        symmetric.add_to(edge.tail, edge.head, &off);
        symmetric.add_to(edge.head, edge.tail, &off);
    }

    let vertex_weights = RatMatrix::diagonal(&(0..n).map(|v| wb.alpha(v)).collect::<Vec<_>>());
    let edge_weights = RatMatrix::diagonal(&wb.edge_weights);

    let product = incidence.mul(&edge_weights)?.mul(&incidence.transpose())?;
    if product != symmetric {
        return Err(Error::Domain("B T B^t does not reproduce the symmetric Laplacian".into()));
    }
    let inv_sqrt = RatMatrix::diagonal(&wb.beta.iter().map(|b| b.recip()).collect::<Vec<_>>());
    let sqrt = RatMatrix::diagonal(&wb.beta);
    if inv_sqrt.mul(&symmetric)?.mul(&sqrt)? != walk {
        return Err(Error::Domain("W^(-1/2) Lsym W^(1/2) does not reproduce Lwalk".into()));
    }

    Ok(LaplacianSuite { plain: plain_laplacian(g), walk, symmetric, vertex_weights, incidence, edge_weights })
}

/// Weight of a forest with every edge oriented toward its component's root:
/// the product over edges `x -> y` of `w_e * alpha_y`.
pub fn directed_forest_weight(g: &Multigraph, wb: &WeightBundle, forest: &EdgeSubset, roots: &[usize]) -> Rational {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in forest.edges() {
        let edge = g.edges()[e];
        adj[edge.tail].push((edge.head, e));
        adj[edge.head].push((edge.tail, e));
    }
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    for &r in roots {
        seen[r] = true;
    }
    let mut weight = Rational::one();
    while let Some(y) = queue.pop_front() {
        for &(x, e) in &adj[y] {
            if !seen[x] {
                seen[x] = true;
                weight *= &wb.edge_weights[e] * wb.alpha(y);
                queue.push_back(x);
            }
        }
    }
    weight
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTreeWeights {
    /// `k_v`: the sum over spanning trees of the weight of the tree rooted at `v`.
    pub per_root: Vec<Rational>,
    /// `k = sum_v k_v`.
    pub total: Rational,
}

pub fn rooted_tree_weights(g: &Multigraph, wb: &WeightBundle) -> Result<RootedTreeWeights> {
    require_loopless(g)?;
    wb.check(g)?;
    let trees = enumerate_spanning_trees(g)?;
    let per_root: Vec<Rational> =
        (0..g.vertex_count()).map(|v| trees.iter().map(|t| directed_forest_weight(g, wb, t, &[v])).sum()).collect();
    let total = per_root.iter().sum();
    Ok(RootedTreeWeights { per_root, total })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorIdentity {
    /// `(-1)^(u+v)` times the minor of the symmetric Laplacian without row u, column v.
    pub signed_cofactor: Rational,
    pub unsigned_minor: Rational,
    /// `beta_u beta_v k / sum_z alpha_z`.
    pub tree_side: Rational,
    pub holds: bool,
}

pub fn cofactor_tree_identity(g: &Multigraph, wb: &WeightBundle, u: usize, v: usize) -> Result<CofactorIdentity> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let suite = laplacian_suite(g, wb)?;
    let k = rooted_tree_weights(g, wb)?.total;
    let unsigned_minor = suite.symmetric.minor_matrix(u, v).det()?;
    let signed_cofactor = if (u + v).is_multiple_of(2) { unsigned_minor.clone() } else { -unsigned_minor.clone() };
    let tree_side = &wb.beta[u] * &wb.beta[v] * k / wb.alpha_total();
    Ok(CofactorIdentity { holds: signed_cofactor == tree_side, signed_cofactor, unsigned_minor, tree_side })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCoefficient {
    pub roots: usize,
    /// Coefficient of `lambda^s` in `det(lambda I - Lsym)`.
    pub coefficient: Rational,
    /// Sum over root sets of size `s` of the directed forest weights.
    pub forest_sum: Rational,
    /// `(-1)^(n - s)`.
    pub sign: i8,
    pub magnitude_matches: bool,
    pub sign_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCharpolyReport {
    /// `c_0, ..., c_n` of `det(lambda I - Lsym)`.
    pub charpoly: Vec<Rational>,
    pub rows: Vec<ForestCoefficient>,
}

impl ForestCharpolyReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.magnitude_matches && r.sign_matches)
    }
}

/// Size-`k` subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Compares each coefficient of the characteristic polynomial of the symmetric
/// Laplacian with the total weight of rooted spanning forests with `s` roots.
pub fn forest_charpoly_check(g: &Multigraph, wb: &WeightBundle) -> Result<ForestCharpolyReport> {
    let n = g.vertex_count();
    if n > FOREST_VERTEX_LIMIT {
        return Err(Error::GuardExceeded {
            what: "vertex count for forest enumeration",
            actual: n as u128,
            limit: FOREST_VERTEX_LIMIT as u128,
        });
    }
    g.require_connected()?;
    let suite = laplacian_suite(g, wb)?;
    let charpoly = rational_charpoly(&suite.symmetric)?;
    let mut rows = Vec::with_capacity(n);
    for s in 1..=n {
        let mut forest_sum = Rational::zero();
        for roots in combinations(n, s) {
            for f in enumerate_rooted_forests(g, &roots)? {
                forest_sum += directed_forest_weight(g, wb, &f, &roots);
            }
        }
        let sign: i8 = if (n - s).is_multiple_of(2) { 1 } else { -1 };
        let coefficient = charpoly[s].clone();
        let signed_sum = if sign == 1 { forest_sum.clone() } else { -forest_sum.clone() };
        rows.push(ForestCoefficient {
            roots: s,
            magnitude_matches: coefficient.abs() == forest_sum,
            sign_matches: coefficient == signed_sum,
            coefficient,
            forest_sum,
            sign,
        });
    }
    Ok(ForestCharpolyReport { charpoly, rows })
}

/// Vertex-weighted graph polynomial: `prod_e x_e` times the principal cofactor at
/// vertex 0 of the symmetric Laplacian with vertex weights `alpha` and edge
/// weights `1/x_e`. The bundle's own edge weights are not used.
pub fn weighted_psi(g: &Multigraph, wb: &WeightBundle) -> Result<MPoly> {
    weighted_psi_at(g, wb, 0)
}

pub fn weighted_psi_at(g: &Multigraph, wb: &WeightBundle, root: usize) -> Result<MPoly> {
    if wb.beta.len() != g.vertex_count() {
        return Err(Error::InvalidWeights(format!(
            "{} vertex weights for {} vertices",
            wb.beta.len(),
            g.vertex_count()
        )));
    }
    reciprocal_laplacian_cofactor(g, Some(&wb.beta), root)
}

/// Projective point counts of the hypersurface `Psi = 0` over the field with `q` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountProfile {
    pub q: u64,
    pub edges: usize,
    pub hypersurface: u128,
    pub complement: u128,
    /// `(q^m - 1)/(q - 1)`, the number of points of projective space.
    pub ambient: u128,
}

pub fn count_points(g: &Multigraph, q: u64) -> Result<PointCountProfile> {
    count_points_with_limit(g, q, POINT_COUNT_LIMIT)
}

pub fn count_points_with_limit(g: &Multigraph, q: u64, limit: u128) -> Result<PointCountProfile> {
    let m = g.edge_count();
    check_point_guard(q, m, limit)?;
    let psi = psi_tree_sum(g)?;
    count_projective_zeros(&psi, q, limit)
}

fn check_point_guard(q: u64, m: usize, limit: u128) -> Result<()> {
    let cost = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if cost > limit {
        return Err(Error::GuardExceeded { what: "point-count cost q^m", actual: cost, limit });
    }
    Ok(())
}

/// Counts zeros of a homogeneous polynomial on projective space over `F_q`,
/// visiting each point once through its representative whose first nonzero
/// coordinate is 1.
pub fn count_projective_zeros(p: &MPoly, q: u64, limit: u128) -> Result<PointCountProfile> {
    let m = p.nvars();
    check_point_guard(q, m, limit)?;
    let reduced = ModPoly::reduce(p, q)?;
    let qq = q as u128;
    let ambient = if m == 0 { 0 } else { (qq.pow(m as u32) - 1) / (qq - 1) };
    let hypersurface: u128 = (0..m)
        .map(|lead| {
            let free = m - 1 - lead;
            let count = q.pow(free as u32);
            (0..count)
                .into_par_iter()
                .map_init(
                    || vec![0u64; m],
                    |point, mut idx| {
                        point.iter_mut().for_each(|x| *x = 0);
                        point[lead] = 1;
                        for slot in point[lead + 1..].iter_mut() {
                            *slot = idx % q;
                            idx /= q;
                        }
                        u128::from(reduced.eval_unchecked(point) == 0)
                    },
                )
                .sum::<u128>()
        })
        .sum();
    Ok(PointCountProfile { q, edges: m, hypersurface, complement: ambient - hypersurface, ambient })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionContraction {
    pub psi: MPoly,
    /// `Psi(G/e) + x_e Psi(G - e)`, with variables realigned to the edges of `G`.
    pub recursion: MPoly,
    pub holds: bool,
}

pub fn deletion_contraction_check(g: &Multigraph, e: usize) -> Result<DeletionContraction> {
    let edge = g.edge(e)?;
    if edge.is_loop() {
        return Err(Error::EdgeIsLoop { edge: e });
    }
    g.require_connected()?;
    if g.is_bridge(e)? {
        return Err(Error::EdgeIsBridge { edge: e });
    }
    let m = g.edge_count();
    let psi = psi_tree_sum(g)?;
    let contracted = psi_tree_sum(&g.contract_edge(e)?)?.insert_var(e);
    let deleted = psi_tree_sum(&g.delete_edge(e)?)?.insert_var(e);
    let recursion = &contracted + &(&MPoly::var(m, e) * &deleted);
    Ok(DeletionContraction { holds: psi == recursion, psi, recursion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges).unwrap()
    }

    fn triangle() -> Multigraph {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn all_routes(g: &Multigraph) -> [String; 3] {
        [
            psi_tree_sum(g).unwrap().to_string(),
            psi_config_det(g).unwrap().to_string(),
            psi_laplacian(g).unwrap().to_string(),
        ]
    }

    #[test]
    fn psi_small_graphs() {
        assert_eq!(all_routes(&graph(2, &[(0, 1)])), ["1", "1", "1"]);
        assert_eq!(all_routes(&triangle()), ["x0 + x1 + x2"; 3]);
        let banana = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(all_routes(&banana), ["x0*x1 + x0*x2 + x1*x2"; 3]);
        assert_eq!(all_routes(&graph(2, &[(0, 1), (0, 1)])), ["x0 + x1"; 3]);
    }

    #[test]
    fn loops_handled_by_two_routes() {
        let lp = graph(1, &[(0, 0)]);
        assert_eq!(psi_tree_sum(&lp).unwrap().to_string(), "x0");
        assert_eq!(psi_config_det(&lp).unwrap().to_string(), "x0");
        assert!(matches!(psi_laplacian(&lp), Err(Error::LoopPresent { edge: 0, .. })));
    }

    #[test]
    fn disconnected_rejected() {
        let g = graph(3, &[(0, 1)]);
        for route in [PsiRoute::Tree, PsiRoute::Config, PsiRoute::Laplacian] {
            assert!(matches!(psi(&g, route), Err(Error::Disconnected { .. })));
        }
    }

    #[test]
    fn tree_counts() {
        let cycle = |n: usize| graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>());
        for n in 3..8 {
            assert_eq!(matrix_tree_count(&cycle(n)), BigInt::from(n));
        }
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(matrix_tree_count(&k4), BigInt::from(16));
        assert_eq!(matrix_tree_count(&graph(1, &[(0, 0)])), BigInt::from(1));
    }

    #[test]
    fn laplacian_path_and_unit() {
        let path = graph(2, &[(0, 1)]);
        let s = laplacian_suite(&path, &WeightBundle::unit(&path)).unwrap();
        assert_eq!(s.symmetric, RatMatrix::from_i64(&[vec![1, -1], vec![-1, 1]]).unwrap());
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 1)]);
        let s = laplacian_suite(&k4, &WeightBundle::unit(&k4)).unwrap();
        assert_eq!(s.symmetric, RatMatrix::from_i64(&s.plain).unwrap());
        assert_eq!(s.walk, s.symmetric);
    }

    #[test]
    fn laplacian_weighted_triangle() {
        let g = triangle();
        let wb = WeightBundle::with_beta(&g, vec![int(1), int(2), int(3)]).unwrap();
        let s = laplacian_suite(&g, &wb).unwrap();
        // Diagonal: sum of neighbour alphas. Off-diagonal: -beta_u beta_v.
        let expect = RatMatrix::from_i64(&[vec![13, -2, -3], vec![-2, 10, -6], vec![-3, -6, 5]]).unwrap();
        assert_eq!(s.symmetric, expect);
        for r in 0..3 {
            let sum: Rational = s.walk.row(r).iter().sum();
            assert!(sum.is_zero());
        }
        assert!(s.symmetric.is_symmetric());
    }

    #[test]
    fn weights_validation() {
        assert!(WeightBundle::new(vec![int(0)], vec![]).is_err());
        assert!(WeightBundle::new(vec![int(1)], vec![int(-1)]).is_err());
        let g = triangle();
        let wb = WeightBundle::new(vec![int(1)], vec![]).unwrap();
        assert!(matches!(laplacian_suite(&g, &wb), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn rooted_weights_examples() {
        let path = graph(2, &[(0, 1)]);
        let k = rooted_tree_weights(&path, &WeightBundle::unit(&path)).unwrap();
        assert_eq!(k.per_root, vec![int(1), int(1)]);
        assert_eq!(k.total, int(2));

        let k = rooted_tree_weights(&triangle(), &WeightBundle::unit(&triangle())).unwrap();
        assert_eq!(k.total, int(9));

        let wb = WeightBundle::with_beta(&path, vec![int(1), int(2)]).unwrap();
        let k = rooted_tree_weights(&path, &wb).unwrap();
        assert_eq!(k.per_root, vec![int(1), int(4)]);
        assert_eq!(k.total, int(5));
    }

    #[test]
    fn cofactor_identity_examples() {
        let path = graph(2, &[(0, 1)]);
        let c = cofactor_tree_identity(&path, &WeightBundle::unit(&path), 0, 1).unwrap();
        assert_eq!(c.signed_cofactor, int(1));
        assert_eq!(c.tree_side, int(1));
        assert!(c.holds);

        let tri = triangle();
        let c = cofactor_tree_identity(&tri, &WeightBundle::unit(&tri), 0, 0).unwrap();
        assert_eq!((c.signed_cofactor.clone(), c.tree_side.clone()), (int(3), int(3)));

        let wb = WeightBundle::with_beta(&tri, vec![rat(1, 2), int(3), rat(2, 5)]).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert!(cofactor_tree_identity(&tri, &wb, u, v).unwrap().holds);
            }
        }
        assert!(cofactor_tree_identity(&tri, &wb, 0, 3).is_err());
    }

    #[test]
    fn forest_charpoly_examples() {
        let path = graph(2, &[(0, 1)]);
        let r = forest_charpoly_check(&path, &WeightBundle::unit(&path)).unwrap();
        assert_eq!(r.charpoly, vec![int(0), int(-2), int(1)]);
        assert_eq!(r.rows[0].forest_sum, int(2));
        assert_eq!(r.rows[1].forest_sum, int(1));
        assert!(r.all_match());

        let tri = triangle();
        let r = forest_charpoly_check(&tri, &WeightBundle::unit(&tri)).unwrap();
        // lambda^3 - 6 lambda^2 + 9 lambda
        assert_eq!(r.charpoly, vec![int(0), int(9), int(-6), int(1)]);
        assert_eq!(r.rows[1].forest_sum, int(6));
        assert!(r.all_match());

        let big = graph(8, &(0..7).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(matches!(forest_charpoly_check(&big, &WeightBundle::unit(&big)), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn weighted_psi_examples() {
        let tri = triangle();
        assert_eq!(weighted_psi(&tri, &WeightBundle::unit(&tri)).unwrap(), psi_tree_sum(&tri).unwrap());
        // Single edge rooted at 0: the tree oriented toward 0 has weight alpha_0.
        let path = graph(2, &[(0, 1)]);
        let wb = WeightBundle::with_beta(&path, vec![int(1), int(2)]).unwrap();
        assert_eq!(weighted_psi(&path, &wb).unwrap(), MPoly::one(1));
        assert_eq!(weighted_psi_at(&path, &wb, 1).unwrap(), MPoly::constant(1, int(4)));
    }

    #[test]
    fn point_counts() {
        let tri = triangle();
        let p = count_points(&tri, 2).unwrap();
        assert_eq!((p.hypersurface, p.complement, p.ambient), (3, 4, 7));
        let p = count_points(&tri, 5).unwrap();
        assert_eq!((p.hypersurface, p.complement), (6, 25));
        let banana = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(count_points(&banana, 3).unwrap().hypersurface, 4);
        assert!(matches!(count_points(&tri, 4), Err(Error::NotPrime(4))));
        assert!(matches!(count_points_with_limit(&tri, 5, 100), Err(Error::GuardExceeded { actual: 125, .. })));
    }

    #[test]
    fn deletion_contraction_examples() {
        let tri = triangle();
        for e in 0..3 {
            let d = deletion_contraction_check(&tri, e).unwrap();
            assert!(d.holds, "{d:?}");
        }
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(deletion_contraction_check(&path, 0), Err(Error::EdgeIsBridge { edge: 0 }));
        let lp = graph(2, &[(0, 1), (1, 1)]);
        assert_eq!(deletion_contraction_check(&lp, 1), Err(Error::EdgeIsLoop { edge: 1 }));
    }

    #[test]
    fn combinations_order() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }
}

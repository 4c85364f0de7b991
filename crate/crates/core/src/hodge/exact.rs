//! Exactness bookkeeping: finite exact sequences, the Clemens-Schmid sequence,
//! monodromy weight gradeds and the four-term graded sequence.

use serde::{Deserialize, Serialize};

use crate::linalg::RatMatrix;
use crate::{Error, Result};

/// A finite sequence `0 -> V_0 -> V_1 -> ... -> V_n -> 0`.
///
/// `maps[i]` is `V_i -> V_(i+1)`, stored as a `dims[i+1] x dims[i]` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactChain {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub maps: Vec<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeVerdict {
    pub index: usize,
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composition_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeVerdict>,
    pub exact: bool,
}

impl ExactnessReport {
    pub fn failing_nodes(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| !n.exact).map(|n| n.index).collect()
    }
}

impl ExactChain {
    pub fn new(labels: Vec<String>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if labels.len() != dims.len() {
            return Err(Error::Shape(format!("{} labels for {} spaces", labels.len(), dims.len())));
        }
        if dims.is_empty() {
            return Err(Error::Shape("empty sequence".into()));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} maps for {} spaces", maps.len(), dims.len())));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return Err(Error::Shape(format!(
                    "map {i} ({} -> {}) is {}x{}, expected {}x{}",
                    labels[i],
                    labels[i + 1],
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(ExactChain { labels, dims, maps })
    }

    /// Unlabelled chain; spaces are named `V0`, `V1`, ...
    pub fn unlabelled(dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        let labels = (0..dims.len()).map(|i| format!("V{i}")).collect();
        Self::new(labels, dims, maps)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Exactness at every node, with zero spaces implied at both ends.
    pub fn check(&self) -> ExactnessReport {
        let ranks: Vec<usize> = self.maps.iter().map(RatMatrix::rank).collect();
        let nodes: Vec<NodeVerdict> = (0..self.len())
            .map(|i| {
                let rank_in = if i > 0 { ranks[i - 1] } else { 0 };
                let rank_out = ranks.get(i).copied().unwrap_or(0);
                let composition_zero = if i > 0 && i < self.maps.len() {
                    self.maps[i].mul(&self.maps[i - 1]).is_ok_and(|c| c.is_zero())
                } else {
                    true
                };
                let exact = composition_zero && rank_in + rank_out == self.dims[i];
                NodeVerdict {
                    index: i,
                    label: self.labels[i].clone(),
                    dim: self.dims[i],
                    rank_in,
                    rank_out,
                    composition_zero,
                    exact,
                }
            })
            .collect();
        let exact = nodes.iter().all(|n| n.exact);
        ExactnessReport { nodes, exact }
    }

    /// Adds a free dimension to node `i`: a new basis vector that maps to zero and
    /// is hit by nothing.
    pub fn with_extra_dimension(&self, i: usize) -> ExactChain {
        let mut out = self.clone();
        out.dims[i] += 1;
        if i > 0 {
            let m = &self.maps[i - 1];
            let mut grown = RatMatrix::zeros(m.rows() + 1, m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    grown.set(r, c, m.get(r, c).clone());
                }
            }
            out.maps[i - 1] = grown;
        }
        if i < self.maps.len() {
            let m = &self.maps[i];
            let mut grown = RatMatrix::zeros(m.rows(), m.cols() + 1);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    grown.set(r, c, m.get(r, c).clone());
                }
            }
            out.maps[i] = grown;
        }
        out
    }
}

/// One degree `m` of the Clemens-Schmid sequence:
/// `H_{2n+2-m}(X_0) -alpha-> H^m(X_0) -restrict-> H^m(X_t) -N-> H^m(X_t) -beta-> H_{2n-m}(X_0)`.
///
/// `beta` is absent on the final block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClemensSchmidBlock {
    pub degree: usize,
    pub homology_dim: usize,
    pub special_dim: usize,
    pub nearby_dim: usize,
    pub alpha: RatMatrix,
    pub restriction: RatMatrix,
    pub monodromy_log: RatMatrix,
    pub beta: Option<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClemensSchmidData {
    /// Relative dimension `n` of the family.
    pub relative_dim: usize,
    pub blocks: Vec<ClemensSchmidBlock>,
}

impl ClemensSchmidData {
    pub fn to_chain(&self) -> Result<ExactChain> {
        let mut labels = Vec::new();
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        let n = self.relative_dim as i64;
        for (j, b) in self.blocks.iter().enumerate() {
            let m = b.degree as i64;
            labels.push(format!("H_{}(X0)", 2 * n + 2 - m));
            labels.push(format!("H^{m}(X0)"));
            labels.push(format!("H^{m}(Xt)"));
            labels.push(format!("H^{m}(Xt)'"));
            dims.extend([b.homology_dim, b.special_dim, b.nearby_dim, b.nearby_dim]);
            maps.extend([b.alpha.clone(), b.restriction.clone(), b.monodromy_log.clone()]);
            let last = j + 1 == self.blocks.len();
            match (&b.beta, last) {
                (Some(beta), false) => maps.push(beta.clone()),
                (None, true) => {}
                (Some(_), true) => {
                    return Err(Error::Shape(format!("block H^{m}: final block has a beta map")));
                }
                (None, false) => {
                    return Err(Error::Shape(format!("block H^{m}: missing beta map")));
                }
            }
        }
        ExactChain::new(labels, dims, maps)
    }
}

pub fn clemens_schmid_check(data: &ClemensSchmidData) -> Result<ExactnessReport> {
    Ok(data.to_chain()?.check())
}

/// Dimensions of `Gr^W_k H^m(X_t)` for `k = 0..=2m`, from `dim Gr_k K`, `K = ker N`.
///
/// For `k <= m`, `Gr_k = sum_{j >= 0} Gr_{k-2j} K`; above the middle, `Gr_k = Gr_{2m-k}`.
pub fn monodromy_weight_gradeds(kernel_gradeds: &[i64], m: usize) -> Result<Vec<i64>> {
    if let Some(bad) = kernel_gradeds.iter().find(|&&d| d < 0) {
        return Err(Error::Domain(format!("negative graded dimension {bad}")));
    }
    let gr_k = |k: usize| kernel_gradeds.get(k).copied().unwrap_or(0);
    let below = |k: usize| -> i64 { (0..=k / 2).map(|j| gr_k(k - 2 * j)).sum() };
    Ok((0..=2 * m).map(|k| if k <= m { below(k) } else { below(2 * m - k) }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourTermReport {
    pub exactness: ExactnessReport,
    /// `dim A - dim B + dim C - dim D`; zero for any exact sequence.
    pub alternating_sum: i64,
    /// Whether the supplied isomorphism is square and of full rank.
    pub isomorphism: Option<bool>,
    pub holds: bool,
}

/// `0 -> A -f-> B -alpha-> C -g-> D -> 0`, with an optional claimed isomorphism.
pub fn graded_four_term_check(
    dims: [usize; 4],
    f: &RatMatrix,
    alpha: &RatMatrix,
    g: &RatMatrix,
    iso: Option<&RatMatrix>,
) -> Result<FourTermReport> {
    let labels = ["A", "B", "C", "D"].map(String::from).to_vec();
    let chain = ExactChain::new(labels, dims.to_vec(), vec![f.clone(), alpha.clone(), g.clone()])?;
    let exactness = chain.check();
    let alternating_sum = dims[0] as i64 - dims[1] as i64 + dims[2] as i64 - dims[3] as i64;
    let isomorphism = iso.map(|m| m.is_square() && m.rank() == m.rows());
    let holds = exactness.exact && alternating_sum == 0 && isomorphism.unwrap_or(true);
    Ok(FourTermReport { exactness, alternating_sum, isomorphism, holds })
}

/// Rank of the primitive part: `b_theta - b_J_lower`.
pub fn theta_primitive_rank(b_theta: u64, b_lower: u64) -> Result<u64> {
    b_theta
        .checked_sub(b_lower)
        .ok_or_else(|| Error::Domain(format!("b_theta = {b_theta} is smaller than b_lower = {b_lower}")))
}

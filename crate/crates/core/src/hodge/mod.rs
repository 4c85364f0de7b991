//! Linear algebra for mixed Hodge bookkeeping.
//!
//! Only dimensions and ranks are in scope, so every space is a `Q^d` and every
//! map an exact rational matrix. The double complex uses the anticommuting sign
//! convention `dh dv + dv dh = 0`, which makes `D = dh + dv` square to zero on
//! the total complex.

mod exact;
pub mod fixtures;
mod ncd;

pub use exact::{
    clemens_schmid_check, graded_four_term_check, monodromy_weight_gradeds, theta_primitive_rank, ClemensSchmidBlock,
    ClemensSchmidData, ExactChain, ExactnessReport, FourTermReport, NodeVerdict,
};
pub use ncd::{ncd_betti, steenbrink_e1, NcdCohomology, NcdDegree, SteenbrinkE1, SteenbrinkTerm, StrataData};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{span_dim, RatMatrix};
use crate::{Error, Rational, Result};

/// Dimensions indexed `[p][q]`.
pub type Grid = Vec<Vec<usize>>;

/// A first-quadrant double complex of finite-dimensional rational spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: Grid,
    /// `horizontal[p][q]`: `(p, q) -> (p + 1, q)`, defined for `p + 1 < width`.
    horizontal: Vec<Vec<RatMatrix>>,
    /// `vertical[p][q]`: `(p, q) -> (p, q + 1)`, defined for `q + 1 < height`.
    vertical: Vec<Vec<RatMatrix>>,
}

impl DoubleComplex {
    /// Builds and validates a double complex. Differentials not listed are zero.
    ///
    /// `dims` may be ragged; missing entries are zero-dimensional.
    pub fn new(
        dims: Grid,
        horizontal: BTreeMap<(usize, usize), RatMatrix>,
        vertical: BTreeMap<(usize, usize), RatMatrix>,
    ) -> Result<Self> {
        let width = dims.len();
        let height = dims.iter().map(Vec::len).max().unwrap_or(0);
        let dims: Grid = dims
            .into_iter()
            .map(|mut col| {
                col.resize(height, 0);
                col
            })
            .collect();
        let dim = |p: usize, q: usize| dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0);

        let build = |maps: BTreeMap<(usize, usize), RatMatrix>, dp: usize, dq: usize| -> Result<Vec<Vec<RatMatrix>>> {
            let mut out: Vec<Vec<RatMatrix>> = (0..width)
                .map(|p| (0..height).map(|q| RatMatrix::zeros(dim(p + dp, q + dq), dim(p, q))).collect())
                .collect();
            for ((p, q), m) in maps {
                let inside = p + dp < width && q + dq < height;
                if !inside {
                    if m.is_zero() {
                        continue;
                    }
                    return Err(Error::ComplexInvariant { p, q, what: "differential leaves the grid".into() });
                }
                let (rows, cols) = (dim(p + dp, q + dq), dim(p, q));
                if m.rows() != rows || m.cols() != cols {
                    return Err(Error::ComplexInvariant {
                        p,
                        q,
                        what: format!("map is {}x{}, expected {rows}x{cols}", m.rows(), m.cols()),
                    });
                }
                out[p][q] = m;
            }
            Ok(out)
        };
        let horizontal = build(horizontal, 1, 0)?;
        let vertical = build(vertical, 0, 1)?;
        let dc = DoubleComplex { dims, horizontal, vertical };
        dc.validate()?;
        Ok(dc)
    }

    fn validate(&self) -> Result<()> {
        for p in 0..self.width() {
            for q in 0..self.height() {
                let violation = |what: &str| Error::ComplexInvariant { p, q, what: what.into() };
                if p + 2 < self.width() && !self.dh(p + 1, q).mul(self.dh(p, q))?.is_zero() {
                    return Err(violation("dh o dh != 0"));
                }
                if q + 2 < self.height() && !self.dv(p, q + 1).mul(self.dv(p, q))?.is_zero() {
                    return Err(violation("dv o dv != 0"));
                }
                if p + 1 < self.width() && q + 1 < self.height() {
                    let a = self.dv(p + 1, q).mul(self.dh(p, q))?;
                    let b = self.dh(p, q + 1).mul(self.dv(p, q))?;
                    if !a.add(&b)?.is_zero() {
                        return Err(violation("dh dv + dv dh != 0"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.dims.len()
    }

    pub fn height(&self) -> usize {
        self.dims.first().map_or(0, Vec::len)
    }

    pub fn dims(&self) -> &Grid {
        &self.dims
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    pub fn dh(&self, p: usize, q: usize) -> &RatMatrix {
        &self.horizontal[p][q]
    }

    pub fn dv(&self, p: usize, q: usize) -> &RatMatrix {
        &self.vertical[p][q]
    }

    /// Mirror image across the diagonal: `(p, q) -> (q, p)`, swapping the two differentials.
    pub fn transpose(&self) -> DoubleComplex {
        let (w, h) = (self.width(), self.height());
        let flip = |maps: &Vec<Vec<RatMatrix>>| -> Vec<Vec<RatMatrix>> {
            (0..h).map(|q| (0..w).map(|p| maps[p][q].clone()).collect()).collect()
        };
        DoubleComplex {
            dims: (0..h).map(|q| (0..w).map(|p| self.dims[p][q]).collect()).collect(),
            horizontal: flip(&self.vertical),
            vertical: flip(&self.horizontal),
        }
    }

    pub fn max_degree(&self) -> usize {
        (self.width() + self.height()).saturating_sub(2)
    }

    /// Positions `(p, q)` with `p + q = k`, in increasing `p`.
    fn antidiagonal(&self, k: usize) -> Vec<(usize, usize)> {
        (0..self.width()).filter(|&p| p <= k && k - p < self.height()).map(|p| (p, k - p)).collect()
    }

    fn offsets(&self, k: usize) -> (Vec<(usize, usize, usize)>, usize) {
        let mut out = Vec::new();
        let mut total = 0;
        for (p, q) in self.antidiagonal(k) {
            out.push((p, q, total));
            total += self.dim(p, q);
        }
        (out, total)
    }

    pub fn total_dim(&self, k: usize) -> usize {
        self.offsets(k).1
    }

    /// Total differential `C^k -> C^(k+1)`.
    pub fn total_differential(&self, k: usize) -> RatMatrix {
        let (src, n_src) = self.offsets(k);
        let (dst, n_dst) = self.offsets(k + 1);
        let offset_of = |p: usize, q: usize| dst.iter().find(|&&(a, b, _)| a == p && b == q).map(|t| t.2);
        let mut d = RatMatrix::zeros(n_dst, n_src);
        for &(p, q, col0) in &src {
            let mut place = |m: &RatMatrix, tp: usize, tq: usize| {
                if let Some(row0) = offset_of(tp, tq) {
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            d.set(row0 + r, col0 + c, m.get(r, c).clone());
                        }
                    }
                }
            };
            if p + 1 < self.width() {
                place(self.dh(p, q), p + 1, q);
            }
            if q + 1 < self.height() {
                place(self.dv(p, q), p, q + 1);
            }
        }
        d
    }

    /// Column index of every coordinate of `C^k`.
    fn coordinate_columns(&self, k: usize) -> Vec<usize> {
        let mut cols = Vec::new();
        for (p, q) in self.antidiagonal(k) {
            cols.extend(std::iter::repeat_n(p, self.dim(p, q)));
        }
        cols
    }

    /// Basis of `Z_s^p` in degree `k`: vectors in `F^p C^k` whose total
    /// differential lies in `F^(p+s) C^(k+1)`. `F^p` is the span of columns `>= p`.
    fn z_space(&self, k: usize, p: i64, s: i64) -> Vec<Vec<Rational>> {
        let src_cols = self.coordinate_columns(k);
        let n = src_cols.len();
        let in_f: Vec<usize> = (0..n).filter(|&i| src_cols[i] as i64 >= p).collect();
        if in_f.is_empty() {
            return Vec::new();
        }
        let dst_cols = self.coordinate_columns(k + 1);
        let low_rows: Vec<usize> = (0..dst_cols.len()).filter(|&i| (dst_cols[i] as i64) < p + s).collect();
        let d = self.total_differential(k);
        let constraint = d.select(&low_rows, &in_f);
        let kernel = if low_rows.is_empty() {
            (0..in_f.len())
                .map(|i| {
                    let mut v = vec![Rational::from_integer(0.into()); in_f.len()];
                    v[i] = Rational::from_integer(1.into());
                    v
                })
                .collect()
        } else {
            constraint.kernel_basis()
        };
        kernel
            .into_iter()
            .map(|v| {
                let mut full = vec![Rational::from_integer(0.into()); n];
                for (j, &i) in in_f.iter().enumerate() {
                    full[i] = v[j].clone();
                }
                full
            })
            .collect()
    }

    /// `dim E_r^{p,q}` for the column filtration.
    fn page_entry(&self, r: usize, p: usize, q: usize) -> usize {
        let k = p + q;
        let (pi, ri) = (p as i64, r as i64);
        let z = self.z_space(k, pi, ri);
        let mut denom = self.z_space(k, pi + 1, ri - 1);
        if k > 0 {
            let d = self.total_differential(k - 1);
            for v in self.z_space(k - 1, pi - ri + 1, ri - 1) {
                denom.push(d.mul_vec(&v).expect("shape"));
            }
        }
        let n = self.total_dim(k);
        span_dim(n, &z) - span_dim(n, &denom)
    }

    fn page(&self, r: usize) -> Grid {
        (0..self.width()).map(|p| (0..self.height()).map(|q| self.page_entry(r, p, q)).collect()).collect()
    }
}

/// Cohomology dimensions of the total complex, degrees `0..=width+height-2`.
pub fn total_cohomology(dc: &DoubleComplex) -> Vec<usize> {
    let top = dc.max_degree();
    let ranks: Vec<usize> = (0..=top).map(|k| dc.total_differential(k).rank()).collect();
    (0..=top).map(|k| dc.total_dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

/// Which filtration drives the spectral sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// `F^p = sum_{r >= p} A^{r, .}`: the first page takes vertical cohomology.
    #[default]
    Columns,
    /// Filtration by rows: the first page takes horizontal cohomology.
    Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub degree: usize,
    pub e2_total: usize,
    pub cohomology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPages {
    pub filtration: Filtration,
    /// `pages[r]` is `E_r` as dimensions indexed `[p][q]`.
    pub pages: Vec<Grid>,
    pub infinity: Grid,
    pub total_cohomology: Vec<usize>,
    /// Degrees where the antidiagonal sum of `E_2` differs from the cohomology.
    pub discrepancies: Vec<Discrepancy>,
}

impl SpectralPages {
    pub fn degenerates_at_e2(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn e(&self, r: usize) -> &Grid {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    pub fn antidiagonal_sums(grid: &Grid, degrees: usize) -> Vec<usize> {
        let mut out = vec![0; degrees];
        for (p, col) in grid.iter().enumerate() {
            for (q, &d) in col.iter().enumerate() {
                if p + q < degrees {
                    out[p + q] += d;
                }
            }
        }
        out
    }
}

/// Pages `E_0` through `E_inf` (dimensions), with the degeneration verdict.
///
/// `E_r^{p} = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1})` is evaluated directly on
/// the total complex, so no page relies on the previous one.
pub fn spectral_sequence(dc: &DoubleComplex, filtration: Filtration) -> SpectralPages {
    let work = match filtration {
        Filtration::Columns => dc.clone(),
        Filtration::Rows => dc.transpose(),
    };
    let last = work.width().max(2);
    let mut pages: Vec<Grid> = (0..=last).map(|r| work.page(r)).collect();
    let mut infinity = pages[last].clone();
    if filtration == Filtration::Rows {
        let back = |g: &Grid| -> Grid {
            let h = g.first().map_or(0, Vec::len);
            (0..h).map(|q| g.iter().map(|col| col[q]).collect()).collect()
        };
        pages = pages.iter().map(back).collect();
        infinity = back(&infinity);
    }
    let total = total_cohomology(dc);
    let e2 = SpectralPages::antidiagonal_sums(&pages[2], total.len());
    let discrepancies = total
        .iter()
        .zip(&e2)
        .enumerate()
        .filter(|(_, (t, e))| t != e)
        .map(|(degree, (&cohomology, &e2_total))| Discrepancy { degree, e2_total, cohomology })
        .collect();
    SpectralPages { filtration, pages, infinity, total_cohomology: total, discrepancies }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_by_one(x: i64) -> RatMatrix {
        RatMatrix::from_i64(&[vec![x]]).unwrap()
    }

    #[test]
    fn zero_differentials() {
        let dc = DoubleComplex::new(vec![vec![1, 2], vec![3, 0]], BTreeMap::new(), BTreeMap::new()).unwrap();
        assert_eq!(total_cohomology(&dc), vec![1, 5, 0]);
        let ss = spectral_sequence(&dc, Filtration::Columns);
        assert_eq!(ss.pages[0], ss.pages[2]);
        assert_eq!(ss.pages[1], ss.pages[2]);
        assert!(ss.degenerates_at_e2());
    }

    #[test]
    fn exact_pair_dies() {
        let dc = DoubleComplex::new(vec![vec![1], vec![1]], BTreeMap::from([((0, 0), one_by_one(1))]), BTreeMap::new())
            .unwrap();
        assert_eq!(total_cohomology(&dc), vec![0, 0]);
        let ss = spectral_sequence(&dc, Filtration::Columns);
        assert_eq!(ss.pages[1], vec![vec![1], vec![1]]);
        assert_eq!(ss.pages[2], vec![vec![0], vec![0]]);
        let rows = spectral_sequence(&dc, Filtration::Rows);
        assert_eq!(rows.pages[1], vec![vec![0], vec![0]]);
    }

    #[test]
    fn invariant_violations_located() {
        // dh dv + dv dh != 0 with everything equal to 1.
        let err = DoubleComplex::new(
            vec![vec![1, 1], vec![1, 1]],
            BTreeMap::from([((0, 0), one_by_one(1)), ((0, 1), one_by_one(1))]),
            BTreeMap::from([((0, 0), one_by_one(1)), ((1, 0), one_by_one(1))]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ComplexInvariant { p: 0, q: 0, .. }));

        let err =
            DoubleComplex::new(vec![vec![1], vec![2]], BTreeMap::from([((0, 0), one_by_one(1))]), BTreeMap::new())
                .unwrap_err();
        assert!(matches!(err, Error::ComplexInvariant { p: 0, q: 0, .. }));

        let err = DoubleComplex::new(
            vec![vec![1], vec![1], vec![1]],
            BTreeMap::from([((0, 0), one_by_one(1)), ((1, 0), one_by_one(1))]),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ComplexInvariant { p: 0, q: 0, .. }));
    }

    #[test]
    fn anticommuting_square_is_acyclic() {
        let dc = DoubleComplex::new(
            vec![vec![1, 1], vec![1, 1]],
            BTreeMap::from([((0, 0), one_by_one(1)), ((0, 1), one_by_one(1))]),
            BTreeMap::from([((0, 0), one_by_one(1)), ((1, 0), one_by_one(-1))]),
        )
        .unwrap();
        assert_eq!(total_cohomology(&dc), vec![0, 0, 0]);
        assert!(spectral_sequence(&dc, Filtration::Columns).degenerates_at_e2());
    }

    #[test]
    fn nonzero_d2_detected() {
        let dc = fixtures::zigzag_counterexample();
        let ss = spectral_sequence(&dc, Filtration::Columns);
        assert_eq!(ss.total_cohomology, vec![0, 0, 0, 0]);
        assert_eq!(ss.pages[2][0][1], 1);
        assert_eq!(ss.pages[2][2][0], 1);
        assert_eq!(ss.infinity[0][1], 0);
        assert!(!ss.degenerates_at_e2());
        let degrees: Vec<usize> = ss.discrepancies.iter().map(|d| d.degree).collect();
        assert_eq!(degrees, vec![1, 2]);
    }

    #[test]
    fn e1_is_vertical_cohomology() {
        for seed in 0..10 {
            let dc = fixtures::random_degenerate_complex(seed, 3, 3);
            let ss = spectral_sequence(&dc, Filtration::Columns);
            for p in 0..dc.width() {
                for q in 0..dc.height() {
                    let out_rank = if q + 1 < dc.height() { dc.dv(p, q).rank() } else { 0 };
                    let in_rank = if q > 0 { dc.dv(p, q - 1).rank() } else { 0 };
                    assert_eq!(ss.pages[1][p][q], dc.dim(p, q) - out_rank - in_rank);
                }
            }
        }
    }

    #[test]
    fn transposed_complex_same_cohomology() {
        for seed in 0..5 {
            let dc = fixtures::random_degenerate_complex(seed, 3, 2);
            assert_eq!(total_cohomology(&dc), total_cohomology(&dc.transpose()));
        }
    }
}

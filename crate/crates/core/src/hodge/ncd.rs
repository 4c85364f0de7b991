//! Normal crossing divisors: Mayer-Vietoris weights and the Steenbrink `E_1` page.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{spectral_sequence, DoubleComplex, Filtration, Grid};
use crate::linalg::RatMatrix;
use crate::Result;

/// Cohomology of the strata of a normal crossing divisor.
///
/// `betti[p][q] = dim H^q(D^(p+1))`, where `D^(k)` is the disjoint union of the
/// `k`-fold intersections. `restriction[(p, q)]` is the alternating restriction
/// `H^q(D^(p+1)) -> H^q(D^(p+2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataData {
    pub betti: Grid,
    pub restriction: BTreeMap<(usize, usize), RatMatrix>,
}

impl StrataData {
    pub fn new(betti: Grid, restriction: BTreeMap<(usize, usize), RatMatrix>) -> Self {
        StrataData { betti, restriction }
    }

    /// Strata Betti numbers only; restriction maps are zero.
    pub fn from_betti(betti: Grid) -> Self {
        StrataData { betti, restriction: BTreeMap::new() }
    }

    pub fn levels(&self) -> usize {
        self.betti.len()
    }

    /// `dim H^degree(D^(level))`; zero outside the table.
    pub fn betti_at(&self, level: i64, degree: i64) -> usize {
        if level < 1 || degree < 0 {
            return 0;
        }
        self.betti.get(level as usize - 1).and_then(|row| row.get(degree as usize)).copied().unwrap_or(0)
    }

    /// Strata of the disjoint union of two divisors.
    pub fn disjoint_union(&self, other: &StrataData) -> StrataData {
        let levels = self.levels().max(other.levels());
        let degrees = self.betti.iter().chain(&other.betti).map(Vec::len).max().unwrap_or(0);
        let betti: Grid = (0..levels)
            .map(|p| {
                (0..degrees)
                    .map(|q| self.betti_at(p as i64 + 1, q as i64) + other.betti_at(p as i64 + 1, q as i64))
                    .collect()
            })
            .collect();
        let mut restriction = BTreeMap::new();
        for p in 0..levels.saturating_sub(1) {
            for q in 0..degrees {
                let block = |s: &StrataData| {
                    s.restriction.get(&(p, q)).cloned().unwrap_or_else(|| {
                        RatMatrix::zeros(s.betti_at(p as i64 + 2, q as i64), s.betti_at(p as i64 + 1, q as i64))
                    })
                };
                let (a, b) = (block(self), block(other));
                let m = block_diagonal(&a, &b);
                if !m.is_zero() {
                    restriction.insert((p, q), m);
                }
            }
        }
        StrataData { betti, restriction }
    }

    /// The Mayer-Vietoris double complex: columns are strata levels, rows are degrees.
    pub fn double_complex(&self) -> Result<DoubleComplex> {
        DoubleComplex::new(self.betti.clone(), self.restriction.clone(), BTreeMap::new())
    }
}

fn block_diagonal(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcdDegree {
    pub degree: usize,
    pub dim: usize,
    /// `(weight, dim Gr^W_weight)`, nonzero parts only.
    pub weights: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcdCohomology {
    pub degrees: Vec<NcdDegree>,
    pub e2: Grid,
    pub degenerates_at_e2: bool,
}

/// Cohomology of the divisor with its weight grading: `Gr^W_q H^k = E_2^{k-q, q}`.
pub fn ncd_betti(strata: &StrataData) -> Result<NcdCohomology> {
    let dc = strata.double_complex()?;
    let ss = spectral_sequence(&dc, Filtration::Columns);
    let e2 = ss.pages[2].clone();
    let degrees = ss
        .total_cohomology
        .iter()
        .enumerate()
        .map(|(k, &dim)| {
            let weights = (0..=k)
                .filter_map(|q| {
                    let d = e2.get(k - q).and_then(|c| c.get(q)).copied().unwrap_or(0);
                    (d > 0).then_some((q, d))
                })
                .collect();
            NcdDegree { degree: k, dim, weights }
        })
        .collect();
    Ok(NcdCohomology { degrees, degenerates_at_e2: ss.degenerates_at_e2(), e2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenbrinkTerm {
    pub k: i64,
    pub level: i64,
    pub degree: i64,
    pub betti: usize,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteenbrinkE1 {
    pub r: i64,
    pub q: i64,
    pub dim: usize,
    pub terms: Vec<SteenbrinkTerm>,
}

/// `dim E_1^{-r, q+r} = sum_{k >= max(0, -r)} b_{q-r-2k}(D^(2k+r+1))`, each summand
/// Tate-twisted by `-r-k`. Terms outside the strata table contribute zero.
pub fn steenbrink_e1(strata: &StrataData, r: i64, q: i64) -> SteenbrinkE1 {
    let mut terms = Vec::new();
    let mut k = 0.max(-r);
    while q - r - 2 * k >= 0 {
        let level = 2 * k + r + 1;
        let degree = q - r - 2 * k;
        if level >= 1 && (level as usize) <= strata.levels() {
            terms.push(SteenbrinkTerm { k, level, degree, betti: strata.betti_at(level, degree), twist: -r - k });
        }
        k += 1;
    }
    SteenbrinkE1 { r, q, dim: terms.iter().map(|t| t.betti).sum(), terms }
}

//! Invariants of a singular curve obtained from a smooth curve and a modulus.
//!
//! A smooth curve `X` of genus `g` and a modulus `m = sum n_P P` with support `S`
//! give a curve `X'` in which all of `S` is collapsed to one singular point `Q`.
//! The local ring at `Q` is taken to be
//!
//! ```text
//! O'_Q = constants + { f : v_P(f) >= n_P for every P in S }
//! ```
//!
//! so that `delta = dim O_Q / O'_Q = deg m - 1`. For `m = 2P` this is the ordinary
//! cusp and for `m = P1 + P2` the ordinary node, both with `delta = 1`.
//!
//! Everything here is dimension bookkeeping; no function-field arithmetic is done.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::linalg::RatMatrix;
use crate::{Error, Rational, Result};

/// Largest modulus degree accepted by [`delta_oracle`].
pub const DELTA_ORACLE_MAX_DEGREE: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modulus {
    assignments: Vec<(String, u32)>,
}

impl Modulus {
    pub fn new(assignments: Vec<(String, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (place, n) in &assignments {
            if *n == 0 {
                return Err(Error::InvalidModulus(format!("place {place} has multiplicity 0")));
            }
            if !seen.insert(place.as_str()) {
                return Err(Error::InvalidModulus(format!("place {place} listed twice")));
            }
        }
        Ok(Modulus { assignments })
    }

    /// The zero modulus (smooth curve).
    pub fn zero() -> Self {
        Modulus { assignments: Vec::new() }
    }

    /// Convenience constructor from multiplicities, naming places `P1, P2, ...`.
    pub fn from_multiplicities(ns: &[u32]) -> Result<Self> {
        Self::new(ns.iter().enumerate().map(|(i, &n)| (format!("P{}", i + 1), n)).collect())
    }

    pub fn assignments(&self) -> &[(String, u32)] {
        &self.assignments
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = u32> + '_ {
        self.assignments.iter().map(|(_, n)| *n)
    }

    pub fn degree(&self) -> u32 {
        self.multiplicities().sum()
    }

    pub fn support_size(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_zero(&self) -> bool {
        self.assignments.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveProfile {
    /// Genus of the normalization.
    pub genus: u32,
    pub modulus: Modulus,
}

impl CurveProfile {
    pub fn new(genus: u32, modulus: Modulus) -> Self {
        CurveProfile { genus, modulus }
    }
}

pub fn delta(profile: &CurveProfile) -> u32 {
    profile.modulus.degree().saturating_sub(1)
}

/// `delta` by brute force on truncated jets.
///
/// At each place the jets `a_0 + a_1 t + ... + a_{N-1} t^{N-1}` with
/// `N = max n_P` are coordinates. Membership in `O'_Q` is the linear system
/// "`a_j = 0` for `1 <= j < n_P`, and all constant terms agree"; the codimension
/// of its solution space, found by exact rank, is `delta`.
pub fn delta_oracle(profile: &CurveProfile) -> Result<u32> {
    let m = &profile.modulus;
    let degree = m.degree();
    if degree > DELTA_ORACLE_MAX_DEGREE {
        return Err(Error::GuardExceeded {
            what: "modulus degree for the jet-space oracle",
            actual: degree as u128,
            limit: DELTA_ORACLE_MAX_DEGREE as u128,
        });
    }
    let places = m.support_size();
    let width = m.multiplicities().max().unwrap_or(0) as usize;
    let coords = places * width;
    let coord = |place: usize, j: usize| place * width + j;
    let mut conditions: Vec<Vec<Rational>> = Vec::new();
    for (place, n) in m.multiplicities().enumerate() {
        for j in 1..n as usize {
            let mut row = vec![Rational::from_integer(0.into()); coords];
            row[coord(place, j)] = Rational::from_integer(1.into());
            conditions.push(row);
        }
        if place > 0 {
            let mut row = vec![Rational::from_integer(0.into()); coords];
            row[coord(0, 0)] = Rational::from_integer(1.into());
            row[coord(place, 0)] = Rational::from_integer((-1).into());
            conditions.push(row);
        }
    }
    if conditions.is_empty() {
        return Ok(0);
    }
    let rank = RatMatrix::from_rows_with_cols(conditions, coords)?.rank();
    Ok(rank as u32)
}

/// Arithmetic genus `pi = g + delta`.
pub fn arithmetic_genus(profile: &CurveProfile) -> u32 {
    profile.genus + delta(profile)
}

/// Genus data of a plane curve of degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plucker {
    pub degree: u32,
    pub arithmetic_genus: i64,
}

impl Plucker {
    /// Geometric genus `1 - delta + d(d-3)/2` for a curve with the given `delta`.
    pub fn geometric_genus(&self, delta: u32) -> i64 {
        self.arithmetic_genus - i64::from(delta)
    }
}

pub fn plucker(d: u32) -> Result<Plucker> {
    if d < 3 {
        return Err(Error::Domain(format!("plane curve degree must be at least 3, got {d}")));
    }
    let d64 = i64::from(d);
    Ok(Plucker { degree: d, arithmetic_genus: 1 + d64 * (d64 - 3) / 2 })
}

/// Riemann-Roch on the singular curve: `l'(D) - i'(D) = deg D + 1 - pi`.
pub fn rr_expected(deg_d: i64, pi: i64) -> i64 {
    deg_d + 1 - pi
}

pub fn rr_check(l: i64, i: i64, deg_d: i64, pi: i64) -> bool {
    l - i == rr_expected(deg_d, pi)
}

/// `(l', i')` in the nonspecial range `deg D > 2 pi - 2`, where `i' = 0`.
pub fn rr_nonspecial(deg_d: i64, pi: i64) -> Option<(i64, i64)> {
    (deg_d > 2 * pi - 2).then(|| (rr_expected(deg_d, pi), 0))
}

/// Dimensions of `R_m = prod_P U_P / U_P^(n_P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnits {
    /// One multiplicative factor per place.
    pub torus_rank: u32,
    /// `sum (n_P - 1)`.
    pub unipotent_dim: u32,
    /// `dim R_m / G_m = deg m - 1`.
    pub quotient_dim: u32,
}

pub fn local_units_structure(m: &Modulus) -> Result<LocalUnits> {
    if m.is_zero() {
        return Err(Error::InvalidModulus("the zero modulus has no local unit group".into()));
    }
    Ok(LocalUnits {
        torus_rank: m.support_size() as u32,
        unipotent_dim: m.multiplicities().map(|n| n - 1).sum(),
        quotient_dim: m.degree() - 1,
    })
}

/// Dimension split of the generalized Jacobian as an extension of the Jacobian
/// of the normalization by a torus and a unipotent group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianProfile {
    #[serde(rename = "dim")]
    pub dim_total: u32,
    #[serde(rename = "abelian")]
    pub dim_abelian: u32,
    #[serde(rename = "torus")]
    pub torus_rank: u32,
    #[serde(rename = "unipotent")]
    pub unipotent_dim: u32,
}

pub fn jacobian_profile(profile: &CurveProfile) -> Result<JacobianProfile> {
    let g = profile.genus;
    if profile.modulus.is_zero() {
        return Ok(JacobianProfile { dim_total: g, dim_abelian: g, torus_rank: 0, unipotent_dim: 0 });
    }
    let units = local_units_structure(&profile.modulus)?;
    let j = JacobianProfile {
        dim_total: g + units.quotient_dim,
        dim_abelian: g,
        // The diagonal G_m is divided out.
        torus_rank: units.torus_rank - 1,
        unipotent_dim: units.unipotent_dim,
    };
    debug_assert_eq!(j.dim_total, j.dim_abelian + j.torus_rank + j.unipotent_dim);
    if j.dim_total != arithmetic_genus(profile) {
        return Err(Error::Domain(format!(
            "dim J_m = {} disagrees with arithmetic genus {}",
            j.dim_total,
            arithmetic_genus(profile)
        )));
    }
    Ok(j)
}

/// Dimensions in the analytic description `J_m = Omega(-m)^dual / H_1(X - S, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniformization {
    pub dim: u32,
    pub lattice_rank: u32,
    pub compact: bool,
}

pub fn uniformization_check(profile: &CurveProfile) -> Result<Uniformization> {
    let dim = jacobian_profile(profile)?.dim_total;
    let s = profile.modulus.support_size() as u32;
    let lattice_rank = 2 * profile.genus + s.saturating_sub(1);
    if lattice_rank > 2 * dim {
        return Err(Error::Domain(format!("lattice rank {lattice_rank} exceeds twice the dimension {dim}")));
    }
    Ok(Uniformization { dim, lattice_rank, compact: lattice_rank == 2 * dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaProfile {
    pub jacobian_dim: u32,
    pub theta_dim: u32,
    /// Smallest `n` with `sym^n X -> J_m` surjective.
    pub surjective_at: u32,
}

pub fn theta_profile(profile: &CurveProfile) -> Result<ThetaProfile> {
    let pi = jacobian_profile(profile)?.dim_total;
    if pi == 0 {
        return Err(Error::Domain("arithmetic genus 0: there is no theta divisor".into()));
    }
    Ok(ThetaProfile { jacobian_dim: pi, theta_dim: pi - 1, surjective_at: pi })
}

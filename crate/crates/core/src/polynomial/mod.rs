//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically, with `x0 > x1 > ...`. Zero coefficients are never stored, so
//! two equal polynomials always have identical representations and rendering is
//! stable across runs.

mod matrix;
mod modular;

pub use matrix::{rational_charpoly, PolyMatrix, COFACTOR_ORACLE_MAX};
pub use modular::{is_prime, ModPoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

/// One term of the JSON rendering: `[coefficient, [exponents]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm(pub String, pub Vec<u32>);

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable x{index} out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponents(exponents), c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch { left: nvars, right: e.len() });
            }
            p.add_term(Exponents(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial, `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                (e.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Exponents(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|e| e.degree() == d).then_some(d)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x <= 1))
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e.0[index] > 0)
    }

    fn check_vars(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponents(e), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with [`Error::InexactDivision`] when the divisor does not divide.
    /// Exact division in a monomial order only ever needs the leading term of the
    /// divisor to divide the leading term of the running remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check_vars(divisor)?;
        let (dlead_e, dlead_c) = divisor.leading().ok_or(Error::InexactDivision)?;
        let (dlead_e, dlead_c) = (dlead_e.clone(), dlead_c.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if !dlead_e.divides(re) {
                return Err(Error::InexactDivision);
            }
            let e: Vec<u32> = re.0.iter().zip(&dlead_e.0).map(|(a, b)| a - b).collect();
            let t = MPoly::monomial(self.nvars, e, rc / &dlead_c);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::PointArity { expected: self.nvars, actual: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Value at a point of the prime field with `q` elements.
    pub fn eval_mod_q(&self, point: &[u64], q: u64) -> Result<u64> {
        ModPoly::reduce(self, q)?.eval(point)
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> MPoly {
        MPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.extend(std::iter::repeat_n(0, extra));
                    (Exponents(v), c.clone())
                })
                .collect(),
        }
    }

    /// Inserts a fresh variable at position `index`, shifting later variables up.
    pub fn insert_var(&self, index: usize) -> MPoly {
        assert!(index <= self.nvars);
        MPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.insert(index, 0);
                    (Exponents(v), c.clone())
                })
                .collect(),
        }
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<MPoly> {
        if perm.len() != self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0; self.nvars];
            for (i, &k) in e.0.iter().enumerate() {
                v[perm[i]] = k;
            }
            out.add_term(Exponents(v), c.clone());
        }
        Ok(out)
    }

    /// Splits off variable `index`: returns `c_0, c_1, ...` with
    /// `self = sum_k c_k * x_index^k`, each `c_k` in the remaining variables.
    pub fn coefficients_in(&self, index: usize) -> Vec<MPoly> {
        assert!(index < self.nvars);
        let top = self.terms.keys().map(|e| e.0[index]).max().unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars - 1); top + 1];
        for (e, c) in &self.terms {
            let mut v = e.0.clone();
            let k = v.remove(index) as usize;
            out[k].add_term(Exponents(v), c.clone());
        }
        out
    }

    /// For a multilinear `p`, returns `(x_0 * ... * x_{n-1}) * p(1/x_0, ..., 1/x_{n-1})`.
    ///
    /// Each monomial `prod_{i in A} x_i` goes to `prod_{i not in A} x_i`.
    pub fn complement_monomials(&self) -> Result<MPoly> {
        if !self.is_multilinear() {
            return Err(Error::Domain("reciprocal substitution needs a multilinear polynomial".into()));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(Exponents(e.0.iter().map(|&k| 1 - k).collect()), c.clone());
        }
        Ok(out)
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms().map(|(e, c)| JsonTerm(c.to_string(), e.to_vec())).collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[JsonTerm]) -> Result<MPoly> {
        let parsed = terms
            .iter()
            .map(|JsonTerm(c, e)| {
                c.parse::<Rational>()
                    .map(|c| (e.clone(), c))
                    .map_err(|err| Error::Parse(format!("coefficient {c:?}: {err}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(nvars, parsed)
    }
}

fn render_monomial(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = render_monomial(e);
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.nvars, self)
    }
}

// Operator forms panic on a variable-count mismatch; the `checked_*` methods
// report it as an error instead.

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("MPoly addition")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("MPoly subtraction")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("MPoly multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

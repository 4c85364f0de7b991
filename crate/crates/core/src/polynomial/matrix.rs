use num_traits::Zero;

use super::MPoly;
use crate::linalg::RatMatrix;
use crate::{Error, Rational, Result};

/// Dense matrix of polynomials sharing one variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MPoly>,
}

/// Largest dimension accepted by the Laplace-expansion oracle.
pub const COFACTOR_ORACLE_MAX: usize = 6;

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![MPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, MPoly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::VariableMismatch { left: nvars, right: p.nvars() });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { rows: n, cols, nvars, entries })
    }

    /// Embeds a rational matrix as constant polynomials in `nvars` variables.
    pub fn from_rational(m: &RatMatrix, nvars: usize) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols(), nvars);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, MPoly::constant(nvars, m.get(r, c).clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &MPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: MPoly) {
        assert_eq!(p.nvars(), self.nvars, "entry variable count");
        self.entries[r * self.cols + c] = p;
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &MPoly) {
        let idx = r * self.cols + c;
        self.entries[idx] = &self.entries[idx] + p;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn minor_matrix(&self, row: usize, col: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for r in (0..self.rows).filter(|&r| r != row) {
            for c in (0..self.cols).filter(|&c| c != col) {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { rows: self.rows - 1, cols: self.cols - 1, nvars: self.nvars, entries }
    }

    /// Substitutes a rational point into every entry.
    pub fn eval(&self, point: &[Rational]) -> Result<RatMatrix> {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).eval(point)?);
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division performed is exact in the polynomial ring; a failed
    /// division would indicate a bug and is reported as an error rather than
    /// silently producing a wrong answer.
    pub fn det_fraction_free(&self) -> Result<MPoly> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(MPoly::one(self.nvars));
        }
        let mut a: Vec<Vec<MPoly>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = MPoly::one(self.nvars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // Prefer the sparsest available pivot.
                let Some(p) = (k + 1..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].num_terms()) else {
                    return Ok(MPoly::zero(self.nvars));
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = if prev.is_one() { num } else { num.div_exact(&prev)? };
                }
                a[i][k] = MPoly::zero(self.nvars);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinant by Laplace expansion along the first row.
    ///
    /// Factorial cost; this is the independent cross-check for
    /// [`PolyMatrix::det_fraction_free`] and refuses matrices larger than
    /// [`COFACTOR_ORACLE_MAX`].
    pub fn det_cofactor_oracle(&self) -> Result<MPoly> {
        self.require_square()?;
        if self.rows > COFACTOR_ORACLE_MAX {
            return Err(Error::GuardExceeded {
                what: "cofactor expansion dimension",
                actual: self.rows as u128,
                limit: COFACTOR_ORACLE_MAX as u128,
            });
        }
        Ok(self.laplace())
    }

    fn laplace(&self) -> MPoly {
        match self.rows {
            0 => MPoly::one(self.nvars),
            1 => self.get(0, 0).clone(),
            n => {
                let mut acc = MPoly::zero(self.nvars);
                for c in 0..n {
                    let a = self.get(0, c);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor_matrix(0, c).laplace();
                    acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Coefficients `c_0, ..., c_n` of `det(lambda * I - self) = sum_s c_s lambda^s`.
    ///
    /// `lambda` is adjoined as an extra variable and the determinant is taken with
    /// the same fraction-free engine; each `c_s` is a polynomial in the original
    /// variables.
    pub fn charpoly(&self) -> Result<Vec<MPoly>> {
        self.require_square()?;
        let n = self.rows;
        let nv = self.nvars + 1;
        let lambda = MPoly::var(nv, self.nvars);
        let mut m = Self::zeros(n, n, nv);
        for r in 0..n {
            for c in 0..n {
                let mut e = -self.get(r, c).extend_vars(1);
                if r == c {
                    e = &e + &lambda;
                }
                m.set(r, c, e);
            }
        }
        let det = m.det_fraction_free()?;
        let mut coeffs = det.coefficients_in(self.nvars);
        coeffs.resize(n + 1, MPoly::zero(self.nvars));
        Ok(coeffs)
    }
}

impl PolyMatrix {
    /// True when all entries are constants (degree zero).
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.as_constant().is_some())
    }

    pub fn to_rational(&self) -> Option<RatMatrix> {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).as_constant()?);
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MPoly::is_zero)
    }
}

/// Characteristic polynomial coefficients of a rational matrix.
pub fn rational_charpoly(m: &RatMatrix) -> Result<Vec<Rational>> {
    PolyMatrix::from_rational(m, 0)
        .charpoly()?
        .into_iter()
        .map(|p| p.as_constant().ok_or_else(|| Error::Domain("non-constant coefficient".into())))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().map(|c| if c.is_zero() { Rational::zero() } else { c }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MPoly {
        MPoly::constant(n, int(v))
    }

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::from_rows(1, vec![vec![x(1, 0), c(1, 1)], vec![c(1, 1), x(1, 0)]]).unwrap();
        assert_eq!(m.det_fraction_free().unwrap().to_string(), "x0^2 - 1");
        assert_eq!(m.det_cofactor_oracle().unwrap().to_string(), "x0^2 - 1");
    }

    #[test]
    fn identity_and_permutation() {
        assert!(PolyMatrix::identity(4, 2).det_fraction_free().unwrap().is_one());
        let p = PolyMatrix::from_rows(0, vec![vec![c(0, 0), c(0, 1)], vec![c(0, 1), c(0, 0)]]).unwrap();
        assert_eq!(p.det_fraction_free().unwrap(), c(0, -1));
        assert_eq!(p.det_cofactor_oracle().unwrap(), c(0, -1));
        let one = PolyMatrix::from_rows(2, vec![vec![&x(2, 0) + &x(2, 1)]]).unwrap();
        assert_eq!(one.det_cofactor_oracle().unwrap(), &x(2, 0) + &x(2, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(PolyMatrix::zeros(2, 3, 0).det_fraction_free(), Err(Error::NotSquare { .. })));
        assert!(matches!(PolyMatrix::identity(7, 0).det_cofactor_oracle(), Err(Error::GuardExceeded { .. })));
        assert!(PolyMatrix::zeros(1, 2, 0).charpoly().is_err());
    }

    #[test]
    fn pivoting_needed() {
        // Zero in the top-left corner forces a row swap.
        let m = PolyMatrix::from_rows(
            1,
            vec![vec![c(1, 0), x(1, 0), c(1, 1)], vec![c(1, 2), c(1, 0), x(1, 0)], vec![x(1, 0), c(1, 1), c(1, 0)]],
        )
        .unwrap();
        assert_eq!(m.det_fraction_free().unwrap(), m.det_cofactor_oracle().unwrap());
    }

    #[test]
    fn charpoly_examples() {
        let a = PolyMatrix::from_rows(1, vec![vec![x(1, 0)]]).unwrap();
        assert_eq!(a.charpoly().unwrap(), vec![-x(1, 0), c(1, 1)]);

        let l = RatMatrix::from_i64(&[vec![1, -1], vec![-1, 1]]).unwrap();
        assert_eq!(rational_charpoly(&l).unwrap(), vec![int(0), int(-2), int(1)]);

        // (l - 1)(l - 2)(l - 1/2) = l^3 - 7/2 l^2 + 7/2 l - 1
        let d = RatMatrix::diagonal(&[int(1), int(2), rat(1, 2)]);
        assert_eq!(rational_charpoly(&d).unwrap(), vec![int(-1), rat(7, 2), rat(-7, 2), int(1)]);
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::MPoly;
use crate::{Error, Result};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn residue(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// A polynomial reduced into the prime field with `q` elements, for fast evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    q: u64,
    nvars: usize,
    terms: Vec<(u64, Vec<u32>)>,
}

impl ModPoly {
    /// Reduces every coefficient modulo `q`.
    ///
    /// `q` must be prime and must not divide any coefficient denominator.
    pub fn reduce(p: &MPoly, q: u64) -> Result<ModPoly> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let mut terms = Vec::with_capacity(p.num_terms());
        for (e, c) in p.terms() {
            let den = residue(c.denom(), q);
            if den.is_zero() {
                return Err(Error::DenominatorDivisible(q));
            }
            let inv = pow_mod(den, q - 2, q);
            let value = mul_mod(residue(c.numer(), q), inv, q);
            if value != 0 {
                terms.push((value, e.to_vec()));
            }
        }
        Ok(ModPoly { q, nvars: p.nvars(), terms })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.nvars {
            return Err(Error::PointArity { expected: self.nvars, actual: point.len() });
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation without the arity check; coordinates are reduced modulo `q`.
    pub fn eval_unchecked(&self, point: &[u64]) -> u64 {
        let q = self.q;
        let mut total = 0u64;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (&x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = mul_mod(t, x % q, q);
                }
                if t == 0 {
                    break;
                }
            }
            total = (total + t) % q;
        }
        total
    }
}

//! Sparse multivariate polynomials with complex coefficients, keyed by
//! multi-indices. Coefficient maps are ordered so iteration (and therefore
//! numerical summation) is deterministic.

use std::collections::BTreeMap;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{CqsError, Result};
use crate::linalg::c64;

/// Hard cap on total degree; ladder constructions stay far below this.
pub const DEGREE_CAP: usize = 32;

/// Exponent vector, one entry per variable.
pub type MultiIndex = Vec<u8>;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: C64) -> Self {
        let mut p = Self::zero(nvars);
        if value != c64(0.0, 0.0) {
            p.terms.insert(vec![0; nvars], value);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, c64(1.0, 0.0))
    }

    /// The monomial `coeff * x_j`.
    pub fn linear(nvars: usize, j: usize, coeff: C64) -> Self {
        let mut p = Self::zero(nvars);
        if coeff != c64(0.0, 0.0) {
            let mut idx = vec![0u8; nvars];
            idx[j] = 1;
            p.terms.insert(idx, coeff);
        }
        p
    }

    /// The linear form `sum_j coeffs_j x_j`.
    pub fn linear_form(coeffs: &Array1<C64>) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (j, &cj) in coeffs.iter().enumerate() {
            if cj != c64(0.0, 0.0) {
                let mut idx = vec![0u8; coeffs.len()];
                idx[j] = 1;
                p.terms.insert(idx, cj);
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &[u8]) -> C64 {
        self.terms.get(idx).copied().unwrap_or(c64(0.0, 0.0))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.norm() <= tol)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|idx| idx.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn insert_term(&mut self, idx: MultiIndex, coeff: C64) {
        debug_assert_eq!(idx.len(), self.nvars);
        let entry = self.terms.entry(idx).or_insert(c64(0.0, 0.0));
        *entry += coeff;
    }

    /// Drop terms with negligible coefficients relative to the largest.
    pub fn prune(&mut self, tol: f64) {
        let scale = self.max_coeff_norm();
        if scale == 0.0 {
            self.terms.clear();
            return;
        }
        self.terms.retain(|_, c| c.norm() > tol * scale);
    }

    pub fn scale(&self, a: C64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= a;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (idx, &coeff) in other.terms.iter() {
            out.insert_term(idx.clone(), coeff);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c64(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.nvars, other.nvars);
        let deg = self.degree() + other.degree();
        if deg > DEGREE_CAP {
            return Err(CqsError::DegreeCap {
                degree: deg,
                cap: DEGREE_CAP,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (ia, &ca) in self.terms.iter() {
            for (ib, &cb) in other.terms.iter() {
                let idx: MultiIndex = ia.iter().zip(ib.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `j`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, &coeff) in self.terms.iter() {
            if idx[j] > 0 {
                let mut nidx = idx.clone();
                nidx[j] -= 1;
                out.insert_term(nidx, coeff * c64(idx[j] as f64, 0.0));
            }
        }
        out
    }

    /// Entrywise complex conjugation of coefficients (the polynomial of the
    /// conjugated function in real variables).
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (idx, &coeff) in self.terms.iter() {
            out.terms.insert(idx.clone(), coeff.conj());
        }
        out
    }

    pub fn eval(&self, x: &Array1<C64>) -> C64 {
        let mut acc = c64(0.0, 0.0);
        for (idx, &coeff) in self.terms.iter() {
            let mut term = coeff;
            for (j, &e) in idx.iter().enumerate() {
                for _ in 0..e {
                    term *= x[j];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_real(&self, x: &Array1<f64>) -> C64 {
        self.eval(&x.mapv(|v| c64(v, 0.0)))
    }

    /// Substitute each variable by an affine expression in a new variable
    /// set: `x_i -> offset_i + sum_j map[(i, j)] y_j`. Used to shift
    /// arguments and to embed a polynomial in a larger variable space.
    pub fn affine_substitute(
        &self,
        map: &Array2<C64>,
        offset: &Array1<C64>,
    ) -> Result<Self> {
        let (nin, nout) = (map.nrows(), map.ncols());
        debug_assert_eq!(nin, self.nvars);
        // Precompute the substituted linear form for each input variable.
        let mut subs: Vec<Polynomial> = Vec::with_capacity(nin);
        for i in 0..nin {
            let mut p = Polynomial::constant(nout, offset[i]);
            for j in 0..nout {
                p = p.add(&Polynomial::linear(nout, j, map[[i, j]]));
            }
            subs.push(p);
        }
        let mut out = Polynomial::zero(nout);
        for (idx, &coeff) in self.terms.iter() {
            let mut term = Polynomial::constant(nout, coeff);
            for (i, &e) in idx.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&subs[i])?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn mul_and_derivative() {
        // (x0 + 1)(x0 - 1) = x0^2 - 1
        let a = Polynomial::linear(1, 0, c64(1.0, 0.0)).add(&Polynomial::one(1));
        let b = Polynomial::linear(1, 0, c64(1.0, 0.0)).sub(&Polynomial::one(1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(&[2]), c64(1.0, 0.0));
        assert_eq!(p.coeff(&[0]), c64(-1.0, 0.0));
        assert_eq!(p.coeff(&[1]), c64(0.0, 0.0));
        let d = p.derivative(0);
        assert_eq!(d.coeff(&[1]), c64(2.0, 0.0));
    }

    #[test]
    fn affine_substitution_shift() {
        // p(x) = x^2 under x -> y - 1: (y - 1)^2
        let p = Polynomial::linear(1, 0, c64(1.0, 0.0))
            .mul(&Polynomial::linear(1, 0, c64(1.0, 0.0)))
            .unwrap();
        let map = array![[c64(1.0, 0.0)]];
        let off = array![c64(-1.0, 0.0)];
        let q = p.affine_substitute(&map, &off).unwrap();
        assert_eq!(q.coeff(&[2]), c64(1.0, 0.0));
        assert_eq!(q.coeff(&[1]), c64(-2.0, 0.0));
        assert_eq!(q.coeff(&[0]), c64(1.0, 0.0));
    }

    #[test]
    fn degree_cap_enforced() {
        let mut p = Polynomial::one(1);
        let x = Polynomial::linear(1, 0, c64(1.0, 0.0));
        for _ in 0..DEGREE_CAP {
            p = p.mul(&x).unwrap();
        }
        assert!(p.mul(&x).is_err());
    }

    #[test]
    fn eval_matches_terms() {
        let p = Polynomial::linear(2, 0, c64(2.0, 0.0))
            .mul(&Polynomial::linear(2, 1, c64(1.0, 0.0)))
            .unwrap()
            .add(&Polynomial::constant(2, c64(0.0, 1.0)));
        let v = p.eval(&array![c64(3.0, 0.0), c64(-1.0, 0.0)]);
        assert!((v - c64(-6.0, 1.0)).norm() < 1e-14);
    }
}

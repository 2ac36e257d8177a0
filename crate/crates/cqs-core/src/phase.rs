//! Phase-space vectors and the symplectic form.
//!
//! A phase vector packs momenta and coordinates as a single length-`2n`
//! array in `(P, Q)` block order: entries `0..n` are the momentum block,
//! entries `n..2n` the coordinate block. All matrices and file formats in
//! the crate use this layout.

use ndarray::{s, Array1, ArrayView1};
use num_complex::Complex64 as C64;

use crate::error::{CqsError, Result};
use crate::linalg::c64;

/// A real phase-space point `X = (P, Q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    data: Array1<f64>,
}

/// A complexified phase-space point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPhaseVector {
    data: Array1<C64>,
}

impl PhaseVector {
    /// Build from a raw length-`2n` array in `(P, Q)` block order.
    pub fn new(data: Array1<f64>) -> Result<Self> {
        if data.len() % 2 != 0 {
            return Err(CqsError::DimensionMismatch {
                expected: data.len() + 1,
                got: data.len(),
            });
        }
        Ok(Self { data })
    }

    pub fn from_pq(p: &[f64], q: &[f64]) -> Result<Self> {
        if p.len() != q.len() {
            return Err(CqsError::DimensionMismatch {
                expected: p.len(),
                got: q.len(),
            });
        }
        let data = Array1::from_iter(p.iter().chain(q.iter()).cloned());
        Ok(Self { data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            data: Array1::zeros(2 * n),
        }
    }

    /// Number of degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.data.len() / 2
    }

    pub fn as_array(&self) -> &Array1<f64> {
        &self.data
    }

    pub fn p(&self) -> ArrayView1<'_, f64> {
        self.data.slice(s![..self.n()])
    }

    pub fn q(&self) -> ArrayView1<'_, f64> {
        self.data.slice(s![self.n()..])
    }

    pub fn complexify(&self) -> ComplexPhaseVector {
        ComplexPhaseVector {
            data: self.data.mapv(|x| c64(x, 0.0)),
        }
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            data: self.data.mapv(|x| a * x),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: &self.data + &other.data,
        }
    }
}

impl ComplexPhaseVector {
    pub fn new(data: Array1<C64>) -> Result<Self> {
        if data.len() % 2 != 0 {
            return Err(CqsError::DimensionMismatch {
                expected: data.len() + 1,
                got: data.len(),
            });
        }
        Ok(Self { data })
    }

    pub fn from_pq(p: &[C64], q: &[C64]) -> Result<Self> {
        if p.len() != q.len() {
            return Err(CqsError::DimensionMismatch {
                expected: p.len(),
                got: q.len(),
            });
        }
        let data = Array1::from_iter(p.iter().chain(q.iter()).cloned());
        Ok(Self { data })
    }

    pub fn n(&self) -> usize {
        self.data.len() / 2
    }

    pub fn as_array(&self) -> &Array1<C64> {
        &self.data
    }

    pub fn p(&self) -> ArrayView1<'_, C64> {
        self.data.slice(s![..self.n()])
    }

    pub fn q(&self) -> ArrayView1<'_, C64> {
        self.data.slice(s![self.n()..])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            data: self.data.mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            data: self.data.mapv(|z| a * z),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: &self.data + &other.data,
        }
    }
}

/// The symplectic 2-form `omega(X, X') = sum_j (P_j Q'_j - P'_j Q_j)`.
///
/// Bilinear (no conjugation) and antisymmetric; returns an error on
/// mismatched ambient dimension.
pub fn symplectic_form(x: &ComplexPhaseVector, y: &ComplexPhaseVector) -> Result<C64> {
    if x.n() != y.n() {
        return Err(CqsError::DimensionMismatch {
            expected: 2 * x.n(),
            got: 2 * y.n(),
        });
    }
    Ok(symplectic_form_raw(
        x.as_array().view(),
        y.as_array().view(),
    ))
}

/// Real specialization of [`symplectic_form`].
pub fn symplectic_form_real(x: &PhaseVector, y: &PhaseVector) -> Result<f64> {
    if x.n() != y.n() {
        return Err(CqsError::DimensionMismatch {
            expected: 2 * x.n(),
            got: 2 * y.n(),
        });
    }
    let n = x.n();
    let mut acc = 0.0;
    for j in 0..n {
        acc += x.as_array()[j] * y.as_array()[n + j] - y.as_array()[j] * x.as_array()[n + j];
    }
    Ok(acc)
}

/// `omega` on raw length-2n arrays, without dimension checks.
pub(crate) fn symplectic_form_raw(x: ArrayView1<'_, C64>, y: ArrayView1<'_, C64>) -> C64 {
    let n = x.len() / 2;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..n {
        acc += x[j] * y[n + j] - y[j] * x[n + j];
    }
    acc
}

/// `(1/i) omega(x, conj(y))`: the Hermitian positivity form used in the
/// germ axioms. Positive definite on a valid germ.
pub fn positivity_form(x: &ComplexPhaseVector, y: &ComplexPhaseVector) -> Result<C64> {
    let w = symplectic_form(x, &y.conj())?;
    Ok(w / c64(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn canonical_pair() {
        // n = 1: omega(e_P, e_Q) = 1
        let ep = PhaseVector::from_pq(&[1.0], &[0.0]).unwrap();
        let eq = PhaseVector::from_pq(&[0.0], &[1.0]).unwrap();
        assert_eq!(symplectic_form_real(&ep, &eq).unwrap(), 1.0);
        assert_eq!(symplectic_form_real(&eq, &ep).unwrap(), -1.0);
    }

    #[test]
    fn antisymmetry_on_self() {
        let x = PhaseVector::new(array![0.3, -1.2, 2.0, 0.7]).unwrap();
        assert_eq!(symplectic_form_real(&x, &x).unwrap(), 0.0);
    }

    #[test]
    fn cross_block_vanishes() {
        // n = 2: omega(e_P1, e_Q2) = 0
        let ep1 = PhaseVector::from_pq(&[1.0, 0.0], &[0.0, 0.0]).unwrap();
        let eq2 = PhaseVector::from_pq(&[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(symplectic_form_real(&ep1, &eq2).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let x = PhaseVector::zeros(1);
        let y = PhaseVector::zeros(2);
        assert!(symplectic_form_real(&x, &y).is_err());
    }

    #[test]
    fn positivity_of_graph_vector() {
        // Y = (i, 1): (1/i) omega(Y, Y*) = 2
        let y = ComplexPhaseVector::from_pq(&[C64::new(0.0, 1.0)], &[C64::new(1.0, 0.0)])
            .unwrap();
        let v = positivity_form(&y, &y).unwrap();
        assert!((v - C64::new(2.0, 0.0)).norm() < 1e-15);
    }
}

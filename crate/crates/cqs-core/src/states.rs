//! Gaussian and quasi-Gaussian wave functions and the exact action of the
//! linear field operators on them.
//!
//! A Gaussian state is `c * exp(i/2 xi^T A xi + i b^T xi)` with complex
//! symmetric `A` and positive-definite `Im A`; a quasi-Gaussian state is a
//! polynomial multiple of one. The displacement `b` keeps the class closed
//! under the Weyl operators `e^{i Omega(X)}`.
//!
//! `Omega(P, Q) = sum_j (P_j xi_j - Q_j (1/i) d/dxi_j)` is the operator
//! attached to a phase vector; it satisfies
//! `e^{i Omega(X)} e^{i Omega(X')} = e^{i Omega(X + X')} e^{(i/2) omega(X, X')}`.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, Norm, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{CqsError, Result};
use crate::linalg::c64;
use crate::phase::{ComplexPhaseVector, PhaseVector};
use crate::poly::Polynomial;

/// `c * exp(i/2 xi^T A xi + i b^T xi)`.
#[derive(Debug, Clone)]
pub struct GaussianState {
    n: usize,
    a: Array2<C64>,
    b: Array1<C64>,
    c: C64,
}

/// Validated constructor for [`GaussianState`].
///
/// Rejects non-symmetric `A`, non-positive-definite `Im A` (the state would
/// not be normalizable) and zero amplitude.
pub fn make_gaussian(a: Array2<C64>, b: Array1<C64>, c: C64) -> Result<GaussianState> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(CqsError::InvalidGaussian(format!(
            "A must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if b.len() != n {
        return Err(CqsError::InvalidGaussian(format!(
            "b has length {}, expected {}",
            b.len(),
            n
        )));
    }
    let scale = a.norm_max().max(1.0);
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            asym = f64::max(asym, (a[[i, j]] - a[[j, i]]).norm());
        }
    }
    if asym > 1e-10 * scale {
        return Err(CqsError::InvalidGaussian(format!(
            "A is not symmetric: residual {asym:.3e}"
        )));
    }
    let im = a.mapv(|z| c64(z.im, 0.0));
    let (eigs, _) = im.eigh(UPLO::Lower)?;
    let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min_eig > 0.0) {
        return Err(CqsError::InvalidGaussian(format!(
            "Im A is not positive definite: min eigenvalue {min_eig:.3e}"
        )));
    }
    if c.norm() == 0.0 {
        return Err(CqsError::InvalidGaussian("amplitude c must be nonzero".into()));
    }
    Ok(GaussianState { n, a, b, c })
}

impl GaussianState {
    /// Ground-oscillator shape `c * exp(-|xi|^2 / 2)`: `A = i I`, `b = 0`.
    pub fn standard(n: usize, c: C64) -> Self {
        make_gaussian(
            Array2::eye(n).mapv(|x: f64| c64(0.0, x)),
            Array1::zeros(n),
            c,
        )
        .expect("standard Gaussian is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Array2<C64> {
        &self.a
    }

    pub fn b(&self) -> &Array1<C64> {
        &self.b
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn with_amplitude(&self, c: C64) -> Self {
        Self { c, ..self.clone() }
    }

    pub fn im_a(&self) -> Array2<f64> {
        self.a.mapv(|z| z.im)
    }

    /// Pointwise evaluation.
    pub fn eval(&self, xi: &Array1<f64>) -> C64 {
        let xic = xi.mapv(|x| c64(x, 0.0));
        let quad: C64 = xic.dot(&self.a.dot(&xic));
        let lin: C64 = self.b.dot(&xic);
        self.c * (c64(0.0, 0.5) * quad + c64(0.0, 1.0) * lin).exp()
    }

    pub fn to_quasi(&self) -> QuasiGaussianState {
        QuasiGaussianState {
            gaussian: self.clone(),
            poly: Polynomial::one(self.n),
        }
    }
}

/// `P(xi)` times a Gaussian.
#[derive(Debug, Clone)]
pub struct QuasiGaussianState {
    pub gaussian: GaussianState,
    pub poly: Polynomial,
}

impl QuasiGaussianState {
    pub fn new(gaussian: GaussianState, poly: Polynomial) -> Result<Self> {
        if poly.nvars() != gaussian.n() {
            return Err(CqsError::DimensionMismatch {
                expected: gaussian.n(),
                got: poly.nvars(),
            });
        }
        Ok(Self { gaussian, poly })
    }

    pub fn n(&self) -> usize {
        self.gaussian.n()
    }

    /// True when the polynomial factor vanishes relative to `tol`.
    pub fn is_null(&self, tol: f64) -> bool {
        self.poly.is_zero(tol)
    }

    pub fn eval(&self, xi: &Array1<f64>) -> C64 {
        self.poly.eval_real(xi) * self.gaussian.eval(xi)
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            gaussian: self.gaussian.clone(),
            poly: self.poly.scale(a),
        }
    }

    /// Add a state sharing the same Gaussian core.
    pub fn add_same_core(&self, other: &Self, tol: f64) -> Result<Self> {
        let da = (&self.gaussian.a - &other.gaussian.a).norm_max();
        let db = (&self.gaussian.b - &other.gaussian.b).norm_l2();
        let dc = (self.gaussian.c - other.gaussian.c).norm();
        if da > tol || db > tol || dc > tol {
            return Err(CqsError::Decomposition(
                "states do not share a Gaussian core".into(),
            ));
        }
        Ok(Self {
            gaussian: self.gaussian.clone(),
            poly: self.poly.add(&other.poly),
        })
    }
}

/// Apply the first-order operator `Omega(Y)` exactly on the
/// polynomial-times-Gaussian class. The polynomial degree grows by at most
/// one.
///
/// On a core `exp(i/2 xi A xi + i b xi)` the action on the polynomial part
/// is `P -> [(P_Y - A Q_Y) . xi - Q_Y . b] P + i Q_Y . grad P`.
pub fn omega_op_apply(psi: &QuasiGaussianState, y: &ComplexPhaseVector) -> Result<QuasiGaussianState> {
    let n = psi.n();
    if y.n() != n {
        return Err(CqsError::DimensionMismatch {
            expected: n,
            got: y.n(),
        });
    }
    let a = psi.gaussian.a();
    let b = psi.gaussian.b();
    let py = y.p().to_owned();
    let qy = y.q().to_owned();
    let ell_coeffs = &py - &a.dot(&qy);
    let const_term = -qy.dot(b);
    let linear = Polynomial::linear_form(&ell_coeffs)
        .add(&Polynomial::constant(n, const_term));
    let mut poly = linear.mul(&psi.poly)?;
    for j in 0..n {
        let dj = psi.poly.derivative(j).scale(c64(0.0, 1.0) * qy[j]);
        poly = poly.add(&dj);
    }
    QuasiGaussianState::new(psi.gaussian.clone(), poly)
}

/// Apply the unitary Weyl operator `e^{i Omega(X)}` for real `X` exactly:
/// `[e^{i Omega(P, Q)} psi](xi) = e^{i P.xi - (i/2) P.Q} psi(xi - Q)`.
pub fn weyl_apply(psi: &QuasiGaussianState, x: &PhaseVector) -> Result<QuasiGaussianState> {
    let n = psi.n();
    if x.n() != n {
        return Err(CqsError::DimensionMismatch {
            expected: n,
            got: x.n(),
        });
    }
    let a = psi.gaussian.a().clone();
    let b = psi.gaussian.b().clone();
    let c = psi.gaussian.c();
    let p = x.p().mapv(|v| c64(v, 0.0));
    let q = x.q().mapv(|v| c64(v, 0.0));
    // A' = A, b' = b + P - A Q,
    // c' = c * exp{ (i/2) Q.(A Q) - i b.Q - (i/2) P.Q }.
    let aq = a.dot(&q);
    let new_b = &b + &p - &aq;
    let phase = c64(0.0, 0.5) * q.dot(&aq) - c64(0.0, 1.0) * b.dot(&q)
        - c64(0.0, 0.5) * p.dot(&q);
    let new_c = c * phase.exp();
    // polynomial shift: P(xi) -> P(xi - Q)
    let ident = Array2::eye(n).mapv(|v: f64| c64(v, 0.0));
    let poly = psi.poly.affine_substitute(&ident, &q.mapv(|z| -z))?;
    let gaussian = GaussianState {
        n,
        a,
        b: new_b,
        c: new_c,
    };
    QuasiGaussianState::new(gaussian, poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::symplectic_form_real;
    use ndarray::array;

    fn ground(n: usize) -> QuasiGaussianState {
        GaussianState::standard(n, c64(1.0, 0.0)).to_quasi()
    }

    #[test]
    fn make_gaussian_validation() {
        // A = i I is fine.
        assert!(make_gaussian(
            array![[c64(0.0, 1.0)]],
            array![c64(0.0, 0.0)],
            c64(1.0, 0.0)
        )
        .is_ok());
        // Real A has Im A = 0: rejected.
        assert!(matches!(
            make_gaussian(array![[c64(1.0, 0.0)]], array![c64(0.0, 0.0)], c64(1.0, 0.0)),
            Err(CqsError::InvalidGaussian(_))
        ));
        // Symmetric with off-diagonal real coupling: valid (Im A = I).
        let a = array![
            [c64(0.0, 1.0), c64(0.1, 0.0)],
            [c64(0.1, 0.0), c64(0.0, 1.0)]
        ];
        assert!(make_gaussian(a, Array1::zeros(2), c64(1.0, 0.0)).is_ok());
        // Zero amplitude rejected.
        assert!(make_gaussian(
            array![[c64(0.0, 1.0)]],
            array![c64(0.0, 0.0)],
            c64(0.0, 0.0)
        )
        .is_err());
    }

    #[test]
    fn omega_annihilates_germ_vector() {
        // Y = (i, 1) lies on the graph of A = i: Omega(Y) psi = 0.
        let psi = ground(1);
        let y = ComplexPhaseVector::from_pq(&[c64(0.0, 1.0)], &[c64(1.0, 0.0)]).unwrap();
        let out = omega_op_apply(&psi, &y).unwrap();
        assert!(out.is_null(1e-14));
    }

    #[test]
    fn omega_multiplication_operator() {
        // Y = e_P1 multiplies by xi_1.
        let psi = ground(1);
        let y = ComplexPhaseVector::from_pq(&[c64(1.0, 0.0)], &[c64(0.0, 0.0)]).unwrap();
        let out = omega_op_apply(&psi, &y).unwrap();
        assert_eq!(out.poly.coeff(&[1]), c64(1.0, 0.0));
        assert_eq!(out.poly.degree(), 1);
    }

    #[test]
    fn omega_commutator_sign() {
        // [Omega(Y), Omega(Y')] = -i omega(Y, Y') Id, exercised on a state.
        let psi = ground(1);
        let y = PhaseVector::from_pq(&[0.7], &[-0.2]).unwrap();
        let yp = PhaseVector::from_pq(&[-0.3], &[1.1]).unwrap();
        let w = symplectic_form_real(&y, &yp).unwrap();
        let yc = y.complexify();
        let ypc = yp.complexify();
        let ab = omega_op_apply(&omega_op_apply(&psi, &ypc).unwrap(), &yc).unwrap();
        let ba = omega_op_apply(&omega_op_apply(&psi, &yc).unwrap(), &ypc).unwrap();
        let comm = ab.poly.sub(&ba.poly);
        let expected = psi.poly.scale(c64(0.0, -w));
        assert!(comm.sub(&expected).is_zero(1e-12));
    }

    #[test]
    fn weyl_identity_and_group_law() {
        let psi = ground(2);
        let zero = PhaseVector::zeros(2);
        let same = weyl_apply(&psi, &zero).unwrap();
        assert!((same.gaussian.c() - psi.gaussian.c()).norm() < 1e-15);

        let x = PhaseVector::from_pq(&[0.4, -1.0], &[0.3, 0.8]).unwrap();
        let xp = PhaseVector::from_pq(&[-0.5, 0.2], &[1.2, -0.7]).unwrap();
        // applying X then X' equals applying X + X' with phase e^{(i/2) omega(X', X)}
        let seq = weyl_apply(&weyl_apply(&psi, &x).unwrap(), &xp).unwrap();
        let sum = weyl_apply(&psi, &x.add(&xp)).unwrap();
        let w = symplectic_form_real(&xp, &x).unwrap();
        let phase = (c64(0.0, 0.5) * w).exp();
        let grid = [
            array![0.0, 0.0],
            array![0.5, -0.3],
            array![-1.1, 0.9],
            array![0.2, 1.4],
        ];
        for point in grid.iter() {
            let lhs = seq.eval(point);
            let rhs = sum.eval(point) * phase;
            assert!((lhs - rhs).norm() < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn weyl_pure_shift_moves_center() {
        // X = (0, q): center moves by q, |c| unchanged.
        let psi = ground(1);
        let x = PhaseVector::from_pq(&[0.0], &[0.9]).unwrap();
        let shifted = weyl_apply(&psi, &x).unwrap();
        // pointwise: psi(xi - q), so the peak amplitude rides along unchanged
        for &t in &[0.0, 0.4, -1.3] {
            let lhs = shifted.eval(&array![t]);
            let rhs = psi.eval(&array![t - 0.9]);
            assert!((lhs - rhs).norm() < 1e-13);
        }
        assert!((shifted.eval(&array![0.9]).norm() - psi.eval(&array![0.0]).norm()).abs() < 1e-13);
    }
}

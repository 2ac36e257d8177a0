//! Measured subspaces of phase space: isotropic constraint planes, gauge
//! surfaces, skew-orthogonal complements, and measure Jacobians.
//!
//! A subspace carries a positive `measure_scale` `J`: the invariant measure
//! is `d mu = J dx_1 ... dx_m` in the coordinates of the *stored* basis.
//! Raw bases are orthonormalized on construction and `J` is rescaled so the
//! measure is preserved.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Determinant, SVD};
#[cfg(test)]
use ndarray_linalg::Norm;
use num_complex::Complex64 as C64;

use crate::error::{CqsError, Result};
use crate::linalg::{
    c64, complexify, concat_cols, lstsq, null_space, rank, DEFAULT_TOL, RANK_TOL,
};
use crate::phase::{symplectic_form_raw, ComplexPhaseVector, PhaseVector};

/// A real measured subspace of `R^{2n}`, stored with an orthonormal basis.
#[derive(Debug, Clone)]
pub struct RealSubspace {
    /// Orthonormal basis vectors as the columns of a `2n x m` matrix.
    basis: Array2<f64>,
    /// Density of the invariant measure in stored-basis coordinates.
    measure_scale: f64,
}

/// A complex measured subspace of `C^{2n}`.
#[derive(Debug, Clone)]
pub struct ComplexSubspace {
    basis: Array2<C64>,
    measure_scale: f64,
}

impl RealSubspace {
    /// Orthonormalize a raw basis (columns) and rescale the measure so that
    /// `d mu` is unchanged. Errors when the basis is rank-deficient.
    pub fn new(raw_basis: Array2<f64>, measure_scale: f64) -> Result<Self> {
        let m = raw_basis.ncols();
        if m == 0 {
            return Ok(Self {
                basis: raw_basis,
                measure_scale,
            });
        }
        let (u, sv, _) = complexify(&raw_basis).svd(true, false)?;
        let u = u.ok_or(CqsError::Singular)?;
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        let r = sv.iter().filter(|&&s| s > RANK_TOL * smax.max(1e-300)).count();
        if r < m {
            return Err(CqsError::RankDeficient { rank: r, dim: m });
        }
        // Coordinates transform by M = S V^T with |det M| = prod(s_i).
        let detm: f64 = sv.iter().take(m).product();
        let basis = u.mapv(|z| z.re);
        let basis = basis.slice(ndarray::s![.., ..m]).to_owned();
        Ok(Self {
            basis,
            measure_scale: measure_scale / detm,
        })
    }

    /// A subspace whose stored basis is already orthonormal.
    pub fn from_orthonormal(basis: Array2<f64>, measure_scale: f64) -> Self {
        Self {
            basis,
            measure_scale,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            basis: Array2::zeros((ambient_dim, 0)),
            measure_scale: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Ambient phase-space dimension `2n`.
    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Array2<f64> {
        &self.basis
    }

    pub fn basis_complex(&self) -> Array2<C64> {
        complexify(&self.basis)
    }

    pub fn measure_scale(&self) -> f64 {
        self.measure_scale
    }

    pub fn basis_vector(&self, j: usize) -> PhaseVector {
        PhaseVector::new(self.basis.column(j).to_owned()).expect("even length")
    }

    /// Max |omega(b_i, b_j)| over all basis pairs.
    pub fn isotropy_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let w = symplectic_form_raw(
                    complexify(&self.basis).column(i),
                    complexify(&self.basis).column(j),
                );
                worst = worst.max(w.norm());
            }
        }
        worst
    }

    pub fn is_isotropic(&self, tol: f64) -> bool {
        self.isotropy_residual() <= tol
    }

    pub fn complexify(&self) -> ComplexSubspace {
        ComplexSubspace {
            basis: self.basis_complex(),
            measure_scale: self.measure_scale,
        }
    }
}

impl ComplexSubspace {
    pub fn new(raw_basis: Array2<C64>, measure_scale: f64) -> Result<Self> {
        let m = raw_basis.ncols();
        if m == 0 {
            return Ok(Self {
                basis: raw_basis,
                measure_scale,
            });
        }
        if rank(&raw_basis, RANK_TOL)? < m {
            return Err(CqsError::RankDeficient {
                rank: rank(&raw_basis, RANK_TOL)?,
                dim: m,
            });
        }
        Ok(Self {
            basis: raw_basis,
            measure_scale,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Array2<C64> {
        &self.basis
    }

    pub fn measure_scale(&self) -> f64 {
        self.measure_scale
    }

    pub fn basis_vector(&self, j: usize) -> ComplexPhaseVector {
        ComplexPhaseVector::new(self.basis.column(j).to_owned()).expect("even length")
    }

    pub fn isotropy_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let w = symplectic_form_raw(self.basis.column(i), self.basis.column(j));
                worst = worst.max(w.norm());
            }
        }
        worst
    }

    pub fn is_isotropic(&self, tol: f64) -> bool {
        self.isotropy_residual() <= tol
    }
}

/// Predicate form of the isotropy check used by callers that work with a
/// generic complex subspace.
pub fn is_isotropic(s: &ComplexSubspace, tol: f64) -> bool {
    s.is_isotropic(tol)
}

/// A `k`-dimensional isotropic constraint plane `L_k` with its invariant
/// measure. The plane generates `k` commuting linear constraint operators.
#[derive(Debug, Clone)]
pub struct ConstraintPlane {
    space: RealSubspace,
}

impl ConstraintPlane {
    /// Validate isotropy and `k <= n` on top of [`RealSubspace::new`].
    pub fn new(raw_basis: Array2<f64>, measure_scale: f64, tol: f64) -> Result<Self> {
        let ambient = raw_basis.nrows();
        if ambient % 2 != 0 {
            return Err(CqsError::DimensionMismatch {
                expected: ambient + 1,
                got: ambient,
            });
        }
        if raw_basis.ncols() > ambient / 2 {
            return Err(CqsError::DimensionMismatch {
                expected: ambient / 2,
                got: raw_basis.ncols(),
            });
        }
        let space = RealSubspace::new(raw_basis, measure_scale)?;
        let residual = space.isotropy_residual();
        if residual > tol {
            return Err(CqsError::NotIsotropic { residual });
        }
        Ok(Self { space })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            space: RealSubspace::zero(2 * n),
        }
    }

    pub fn k(&self) -> usize {
        self.space.dim()
    }

    pub fn n(&self) -> usize {
        self.space.ambient() / 2
    }

    pub fn space(&self) -> &RealSubspace {
        &self.space
    }

    pub fn basis(&self) -> &Array2<f64> {
        self.space.basis()
    }

    pub fn basis_complex(&self) -> Array2<C64> {
        self.space.basis_complex()
    }

    pub fn measure_scale(&self) -> f64 {
        self.space.measure_scale()
    }

    /// Momentum block of the basis (`n x k`).
    pub fn p_block(&self) -> Array2<f64> {
        let n = self.n();
        self.space.basis().slice(ndarray::s![..n, ..]).to_owned()
    }

    /// Coordinate block of the basis (`n x k`).
    pub fn q_block(&self) -> Array2<f64> {
        let n = self.n();
        self.space.basis().slice(ndarray::s![n.., ..]).to_owned()
    }

    /// Skew-orthogonal complement `L^{omega}` as a real subspace.
    pub fn skew_complement(&self) -> Result<RealSubspace> {
        skew_complement_real(&self.space)
    }
}

/// Compute the skew-orthogonal complement `{Y : omega(Y, s) = 0}` of a
/// complex subspace. The result has dimension `2n - dim s` and unit
/// measure in its stored basis.
pub fn skew_complement(s: &ComplexSubspace, tol: f64) -> Result<ComplexSubspace> {
    let ambient = s.ambient();
    if s.dim() == 0 {
        return ComplexSubspace::new(Array2::eye(ambient), 1.0);
    }
    if rank(s.basis(), tol)? < s.dim() {
        return Err(CqsError::RankDeficient {
            rank: rank(s.basis(), tol)?,
            dim: s.dim(),
        });
    }
    // omega(Y, b_j) = Y^T Jc b_j = 0  ->  rows (Jc b_j)^T.
    let jc = jc_matrix(ambient / 2);
    let mut rows = Array2::zeros((s.dim(), ambient));
    for j in 0..s.dim() {
        let col = jc.dot(&s.basis().column(j).to_owned());
        for i in 0..ambient {
            rows[[j, i]] = col[i];
        }
    }
    let kernel = null_space(&rows, tol)?;
    ComplexSubspace::new(kernel, 1.0)
}

/// Real specialization of [`skew_complement`].
pub fn skew_complement_real(s: &RealSubspace) -> Result<RealSubspace> {
    let c = skew_complement(&s.complexify(), RANK_TOL)?;
    RealSubspace::new(c.basis().mapv(|z| z.re), 1.0)
}

/// The matrix of omega: `omega(x, y) = x^T Jc y` with `Jc = [[0, I], [-I, 0]]`.
pub fn jc_matrix(n: usize) -> Array2<C64> {
    let mut jc = Array2::zeros((2 * n, 2 * n));
    for j in 0..n {
        jc[[j, n + j]] = c64(1.0, 0.0);
        jc[[n + j, j]] = c64(-1.0, 0.0);
    }
    jc
}

pub fn jc_matrix_real(n: usize) -> Array2<f64> {
    jc_matrix(n).mapv(|z| z.re)
}

/// An isotropic gauge surface `G_k` dual to a constraint plane: the stored
/// basis satisfies `omega(X_a, Y_b) = delta_ab` against the plane's stored
/// basis, and omega is nondegenerate on `L + G`.
#[derive(Debug, Clone)]
pub struct GaugeSurface {
    plane: ConstraintPlane,
    /// Dual basis as columns; *not* orthonormalized, so the duality pairing
    /// stays exact. `d sigma = J dy` in these coordinates.
    basis: Array2<f64>,
    measure_scale: f64,
}

impl GaugeSurface {
    /// Wrap an explicit dual basis, validating duality and isotropy.
    pub fn new(
        plane: ConstraintPlane,
        basis: Array2<f64>,
        measure_scale: f64,
        tol: f64,
    ) -> Result<Self> {
        let k = plane.k();
        if basis.ncols() != k || basis.nrows() != 2 * plane.n() {
            return Err(CqsError::DimensionMismatch {
                expected: k,
                got: basis.ncols(),
            });
        }
        let g = Self {
            plane,
            basis,
            measure_scale,
        };
        let dual = g.duality_residual();
        if dual > tol {
            return Err(CqsError::NotDual { residual: dual });
        }
        let iso = RealSubspace::from_orthonormal(g.basis.clone(), 1.0).isotropy_residual();
        if iso > tol {
            return Err(CqsError::NotIsotropic { residual: iso });
        }
        Ok(g)
    }

    pub fn plane(&self) -> &ConstraintPlane {
        &self.plane
    }

    pub fn k(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Array2<f64> {
        &self.basis
    }

    pub fn measure_scale(&self) -> f64 {
        self.measure_scale
    }

    /// Max |omega(X_a, Y_b) - delta_ab|.
    pub fn duality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        let xb = self.plane.basis_complex();
        let yb = complexify(&self.basis);
        for a in 0..self.plane.k() {
            for b in 0..self.k() {
                let w = symplectic_form_raw(xb.column(a), yb.column(b));
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((w - c64(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Construct a gauge surface for an isotropic plane: solve the duality
/// conditions on the Euclidean complement of `L`, then restore isotropy of
/// the result by adding vectors of `L` (which leaves the duality pairing
/// untouched).
pub fn find_gauge_surface(plane: &ConstraintPlane) -> Result<GaugeSurface> {
    let k = plane.k();
    let n = plane.n();
    if k == 0 {
        return GaugeSurface::new(plane.clone(), Array2::zeros((2 * n, 0)), 1.0, DEFAULT_TOL);
    }
    if !plane.space().is_isotropic(DEFAULT_TOL) {
        return Err(CqsError::NotIsotropic {
            residual: plane.space().isotropy_residual(),
        });
    }
    // Euclidean complement of L as candidate space.
    let lbasis = plane.basis_complex();
    let lrows = {
        let mut rows = Array2::zeros((k, 2 * n));
        for a in 0..k {
            for i in 0..2 * n {
                rows[[a, i]] = lbasis[[i, a]].conj();
            }
        }
        rows
    };
    let complement = null_space(&lrows, RANK_TOL)?; // 2n x (2n - k)
    // Pairing of constraints against candidates: A_{ac} = omega(X_a, E_c).
    let mut pairing = Array2::zeros((k, complement.ncols()));
    for a in 0..k {
        for c in 0..complement.ncols() {
            pairing[[a, c]] = symplectic_form_raw(lbasis.column(a), complement.column(c));
        }
    }
    let mut dual = Array2::<f64>::zeros((2 * n, k));
    for b in 0..k {
        let mut rhs = Array1::zeros(k);
        rhs[b] = c64(1.0, 0.0);
        let w = lstsq(&pairing, &rhs, RANK_TOL)?;
        let y = complement.dot(&w);
        for i in 0..2 * n {
            dual[[i, b]] = y[i].re;
        }
    }
    // Isotropy restoration: Y_a += sum_b alpha_ab X_b with
    // alpha_ab = -omega(Y_a, Y_b)/2.
    let dual_c = complexify(&dual);
    let mut alpha = Array2::<f64>::zeros((k, k));
    for a in 0..k {
        for b in 0..k {
            let w = symplectic_form_raw(dual_c.column(a), dual_c.column(b));
            alpha[[a, b]] = -0.5 * w.re;
        }
    }
    let corrected = &dual + &plane.basis().dot(&alpha.t());
    GaugeSurface::new(plane.clone(), corrected, 1.0, DEFAULT_TOL)
}

/// Result of splitting a vector along `L + G + (L+G)^{perp omega}`.
#[derive(Debug, Clone)]
pub struct TripleDecomposition {
    pub l_part: PhaseVector,
    pub g_part: PhaseVector,
    pub w_part: PhaseVector,
    pub l_coords: Array1<f64>,
    pub g_coords: Array1<f64>,
    pub w_coords: Array1<f64>,
}

/// Unique decomposition `v = l + g + w` with `l` in `L`, `g` in `G` and `w`
/// skew-orthogonal to both.
pub fn triple_decompose(
    v: &PhaseVector,
    plane: &ConstraintPlane,
    gauge: &GaugeSurface,
) -> Result<TripleDecomposition> {
    if gauge.duality_residual() > DEFAULT_TOL {
        return Err(CqsError::NotDual {
            residual: gauge.duality_residual(),
        });
    }
    let two_n = 2 * plane.n();
    if v.as_array().len() != two_n {
        return Err(CqsError::DimensionMismatch {
            expected: two_n,
            got: v.as_array().len(),
        });
    }
    let lg = concat_cols(&[
        plane.basis_complex().view(),
        complexify(gauge.basis()).view(),
    ]);
    let w_space = skew_complement(&ComplexSubspace::new(lg.clone(), 1.0)?, RANK_TOL)?;
    let full = concat_cols(&[lg.view(), w_space.basis().view()]);
    let rhs = v.as_array().mapv(|x| c64(x, 0.0));
    let coeffs = lstsq(&full, &rhs, RANK_TOL)?;
    let k = plane.k();
    let wdim = w_space.dim();
    let l_coords = coeffs.slice(ndarray::s![..k]).mapv(|z| z.re);
    let g_coords = coeffs.slice(ndarray::s![k..2 * k]).mapv(|z| z.re);
    let w_coords = coeffs.slice(ndarray::s![2 * k..2 * k + wdim]).mapv(|z| z.re);
    let l_part = PhaseVector::new(plane.basis().dot(&l_coords))?;
    let g_part = PhaseVector::new(gauge.basis().dot(&g_coords))?;
    let w_part = PhaseVector::new(w_space.basis().mapv(|z| z.re).dot(&w_coords))?;
    Ok(TripleDecomposition {
        l_part,
        g_part,
        w_part,
        l_coords,
        g_coords,
        w_coords,
    })
}

/// Jacobian `Delta(P) = |det P| * J_codomain / J_domain` of a linear map
/// between measured spaces, written in their stored bases.
pub fn linear_map_jacobian(
    matrix: &Array2<C64>,
    domain_measure: f64,
    codomain_measure: f64,
) -> Result<f64> {
    if matrix.nrows() != matrix.ncols() {
        return Err(CqsError::DimensionMismatch {
            expected: matrix.nrows(),
            got: matrix.ncols(),
        });
    }
    if matrix.ncols() == 0 {
        return Ok(codomain_measure / domain_measure);
    }
    if rank(matrix, RANK_TOL)? < matrix.ncols() {
        return Err(CqsError::Singular);
    }
    let det = matrix.det()?;
    Ok(det.norm() * codomain_measure / domain_measure)
}

/// The constant `Delta` with
/// `int dmu(X) int dsigma(Y) rho(Y) e^{i omega(X, Y)} = rho(0) * Delta`
/// for dual-normalized bases: `(2 pi)^k J_mu J_sigma`.
pub fn pairing_constant(plane: &ConstraintPlane, gauge: &GaugeSurface) -> Result<f64> {
    let k = plane.k();
    if k == 0 {
        return Ok(1.0);
    }
    let dual = gauge.duality_residual();
    if dual > DEFAULT_TOL {
        return Err(CqsError::NotDual { residual: dual });
    }
    Ok((2.0 * std::f64::consts::PI).powi(k as i32)
        * plane.measure_scale()
        * gauge.measure_scale())
}

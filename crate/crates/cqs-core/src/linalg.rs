//! Dense linear-algebra helpers used throughout the crate: rank and null
//! spaces via SVD, span comparisons, branch-consistent square roots of
//! determinants, and matrix exponentials.

use ndarray::{s, Array1, Array2, Axis};
use ndarray_linalg::{Eig, Norm, SVD};
use num_complex::Complex64 as C64;

use crate::error::{CqsError, Result};

/// Relative singular-value cutoff: values below `RANK_TOL * s_max` count as zero.
pub const RANK_TOL: f64 = 1e-10;

/// Default tolerance for the `is_*` predicates and residual checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Promote a real matrix to complex entries.
pub fn complexify(m: &Array2<f64>) -> Array2<C64> {
    m.mapv(|x| c64(x, 0.0))
}

pub fn conj_m(m: &Array2<C64>) -> Array2<C64> {
    m.mapv(|z| z.conj())
}

pub fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    conj_m(m).reversed_axes().as_standard_layout().to_owned()
}

/// Rank of a complex matrix by SVD with a relative cutoff.
pub fn rank(m: &Array2<C64>, tol: f64) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    let (_, sv, _) = m.svd(false, false)?;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * smax).count())
}

/// Orthonormal basis of the column space (columns of the result).
pub fn column_space(m: &Array2<C64>, tol: f64) -> Result<Array2<C64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Array2::zeros((m.nrows(), 0)));
    }
    let (u, sv, _) = m.svd(true, false)?;
    let u = u.ok_or(CqsError::Singular)?;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let r = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > tol * smax).count()
    };
    Ok(u.slice(s![.., ..r]).to_owned())
}

/// Orthonormal basis of the null space of `m` (columns of the result).
pub fn null_space(m: &Array2<C64>, tol: f64) -> Result<Array2<C64>> {
    let ncols = m.ncols();
    if m.nrows() == 0 || ncols == 0 {
        return Ok(Array2::eye(ncols));
    }
    let (_, sv, vh) = m.svd(false, true)?;
    let vh = vh.ok_or(CqsError::Singular)?;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let r = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > tol * smax).count()
    };
    // Rows r.. of V^H span the kernel; return their conjugate transpose.
    let vker = vh.slice(s![r.., ..]);
    let mut out = Array2::zeros((ncols, ncols - r));
    for (j, row) in vker.outer_iter().enumerate() {
        for i in 0..ncols {
            out[[i, j]] = row[i].conj();
        }
    }
    Ok(out)
}

/// Real-matrix null space helper.
pub fn null_space_real(m: &Array2<f64>, tol: f64) -> Result<Array2<f64>> {
    let k = null_space(&complexify(m), tol)?;
    Ok(k.mapv(|z| z.re))
}

/// Spectral distance between the spans of two sets of columns:
/// the 2-norm of the difference of orthogonal projectors.
pub fn span_distance(a: &Array2<C64>, b: &Array2<C64>, tol: f64) -> Result<f64> {
    let qa = column_space(a, tol)?;
    let qb = column_space(b, tol)?;
    let pa = qa.dot(&adjoint(&qa));
    let pb = qb.dot(&adjoint(&qb));
    let diff = &pa - &pb;
    let (_, sv, _) = diff.svd(false, false)?;
    Ok(sv.iter().cloned().fold(0.0, f64::max))
}

/// True when the columns of `a` span a subspace of the column span of `b`.
pub fn span_contained(a: &Array2<C64>, b: &Array2<C64>, tol: f64) -> Result<bool> {
    let rb = rank(b, tol)?;
    let stacked = concat_cols(&[b.view(), a.view()]);
    Ok(rank(&stacked, tol)? == rb)
}

pub fn concat_cols(parts: &[ndarray::ArrayView2<C64>]) -> Array2<C64> {
    let nonempty: Vec<_> = parts.iter().filter(|p| p.ncols() > 0).cloned().collect();
    if nonempty.is_empty() {
        let rows = parts.first().map(|p| p.nrows()).unwrap_or(0);
        return Array2::zeros((rows, 0));
    }
    ndarray::concatenate(Axis(1), &nonempty).expect("column concat")
}

pub fn concat_cols_real(parts: &[ndarray::ArrayView2<f64>]) -> Array2<f64> {
    let nonempty: Vec<_> = parts.iter().filter(|p| p.ncols() > 0).cloned().collect();
    if nonempty.is_empty() {
        let rows = parts.first().map(|p| p.nrows()).unwrap_or(0);
        return Array2::zeros((rows, 0));
    }
    ndarray::concatenate(Axis(1), &nonempty).expect("column concat")
}

/// Least-squares solve via SVD pseudo-inverse: minimizes |a x - b|.
pub fn lstsq(a: &Array2<C64>, b: &Array1<C64>, tol: f64) -> Result<Array1<C64>> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Array1::zeros(a.ncols()));
    }
    let (u, sv, vh) = a.svd(true, true)?;
    let u = u.ok_or(CqsError::Singular)?;
    let vh = vh.ok_or(CqsError::Singular)?;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let mut x = Array1::zeros(a.ncols());
    for (i, &s) in sv.iter().enumerate() {
        if smax > 0.0 && s > tol * smax {
            let ui = u.column(i);
            let coeff: C64 = ui.iter().zip(b.iter()).map(|(u, b)| u.conj() * b).sum();
            let coeff = coeff / s;
            for j in 0..a.ncols() {
                x[j] += vh[[i, j]].conj() * coeff;
            }
        }
    }
    Ok(x)
}

/// Solve a x = b for square complex `a`, erroring on rank deficiency.
pub fn solve(a: &Array2<C64>, b: &Array1<C64>) -> Result<Array1<C64>> {
    if rank(a, RANK_TOL)? < a.ncols() {
        return Err(CqsError::Singular);
    }
    lstsq(a, b, RANK_TOL)
}

/// Inverse of a square complex matrix through the SVD pseudo-inverse,
/// erroring when the matrix is numerically singular.
pub fn inverse(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.ncols();
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    if rank(a, RANK_TOL)? < n {
        return Err(CqsError::Singular);
    }
    let (u, sv, vh) = a.svd(true, true)?;
    let u = u.ok_or(CqsError::Singular)?;
    let vh = vh.ok_or(CqsError::Singular)?;
    let mut sinv = Array2::zeros((n, n));
    for i in 0..n {
        sinv[[i, i]] = c64(1.0 / sv[i], 0.0);
    }
    Ok(adjoint(&vh).dot(&sinv).dot(&adjoint(&u)))
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &Array2<C64>) -> Result<Array1<C64>> {
    if m.ncols() == 0 {
        return Ok(Array1::zeros(0));
    }
    let (vals, _) = m.eig()?;
    Ok(vals)
}

/// `det(M)^{-1/2}` for complex symmetric `M` whose Hermitian part is
/// positive semi-definite, using the principal square root of each
/// eigenvalue. This is the limit of the absolutely convergent Gaussian
/// integral under the regularization `M + eps*I`, `eps -> 0+`.
pub fn det_inv_sqrt_psd(m: &Array2<C64>, tol: f64) -> Result<C64> {
    let n = m.ncols();
    if n == 0 {
        return Ok(c64(1.0, 0.0));
    }
    let vals = eigenvalues(m)?;
    let scale = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut out = c64(1.0, 0.0);
    for &lam in vals.iter() {
        if lam.norm() <= tol * scale.max(1.0) {
            return Err(CqsError::Singular);
        }
        if lam.re < -tol * scale.max(1.0) {
            return Err(CqsError::OracleNonConvergent(format!(
                "quadratic form has an eigenvalue with negative real part: {lam}"
            )));
        }
        // principal branch; eigenvalues sit in the closed right half-plane
        out /= lam.sqrt();
    }
    Ok(out)
}

/// Matrix exponential by scaling-and-squaring with a Pade(6) approximant.
/// Accurate to machine precision for the moderate norms used here.
pub fn expm_real(a: &Array2<f64>) -> Result<Array2<f64>> {
    let e = expm(&complexify(a))?;
    Ok(e.mapv(|z| z.re))
}

pub fn expm(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.ncols();
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    let norm = a.norm_max() * n as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scale = 2f64.powi(-(squarings as i32));
    let a_s = a.mapv(|z| z * scale);

    // Pade(6,6) on the scaled matrix.
    let coeffs = [
        1.0,
        0.5,
        5.0 / 44.0,
        1.0 / 66.0,
        1.0 / 792.0,
        1.0 / 15840.0,
        1.0 / 665280.0,
    ];
    let eye: Array2<C64> = Array2::eye(n);
    let mut pow = eye.clone();
    let mut u = eye.mapv(|z| z * coeffs[0]); // even + odd accumulate
    let mut v: Array2<C64> = Array2::zeros((n, n));
    for (k, &ck) in coeffs.iter().enumerate().skip(1) {
        pow = pow.dot(&a_s);
        let term = pow.mapv(|z| z * ck);
        if k % 2 == 0 {
            u = u + &term;
        } else {
            v = v + &term;
        }
    }
    let p = &u + &v;
    let q = &u - &v;
    // q^{-1} p column by column
    let qinv = inverse(&q)?;
    let mut r = qinv.dot(&p);
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    Ok(r)
}

/// Gram-Schmidt with respect to an arbitrary Hermitian positive-definite
/// form given by its Gram matrix callback. Returns the coefficient matrix
/// `T` such that the new vectors are `old * T` and the form is the identity.
pub fn gram_orthonormalize(gram: &Array2<C64>) -> Result<Array2<C64>> {
    let n = gram.ncols();
    // Cholesky of the Gram matrix: gram = L L^H, new basis = old * (L^H)^{-1}.
    let mut l: Array2<C64> = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..=i {
            let mut sum = gram[[i, j]];
            for k in 0..j {
                sum -= l[[i, k]] * l[[j, k]].conj();
            }
            if i == j {
                if sum.re <= 0.0 {
                    return Err(CqsError::InvalidGerm(
                        "positivity form is not positive definite".into(),
                    ));
                }
                l[[i, j]] = c64(sum.re.sqrt(), 0.0);
            } else {
                l[[i, j]] = sum / l[[j, j]];
            }
        }
    }
    // T = (L^H)^{-1}: back substitution on the upper-triangular L^H.
    let lh = adjoint(&l);
    let mut t: Array2<C64> = Array2::zeros((n, n));
    for col in 0..n {
        let mut e: Array1<C64> = Array1::zeros(n);
        e[col] = c64(1.0, 0.0);
        for i in (0..n).rev() {
            let mut sum = e[i];
            for k in (i + 1)..n {
                sum -= lh[[i, k]] * t[[k, col]];
            }
            t[[i, col]] = sum / lh[[i, i]];
        }
    }
    Ok(t)
}

/// Pairwise (cascade) summation over a slice: deterministic and more
/// accurate than naive left-to-right accumulation.
pub fn pairwise_sum(xs: &[C64]) -> C64 {
    match xs.len() {
        0 => c64(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn null_space_dims() {
        let m = array![[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]];
        let k = null_space(&m, RANK_TOL).unwrap();
        assert_eq!(k.ncols(), 2);
        for col in k.columns() {
            assert!(m.dot(&col.to_owned())[0].norm() < 1e-12);
        }
    }

    #[test]
    fn det_inv_sqrt_matches_scalar() {
        // 1x1: M = [2i] -> det^{-1/2} = 1/sqrt(2i) = e^{-i pi/4}/sqrt(2)
        let m = array![[c64(0.0, 2.0)]];
        let v = det_inv_sqrt_psd(&m, 1e-12).unwrap();
        let expect = c64(0.0, 2.0).sqrt().inv();
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn expm_rotation() {
        let g = array![[0.0, -1.0], [1.0, 0.0]];
        let r = expm_real(&(g.mapv(|x| x * std::f64::consts::PI / 2.0))).unwrap();
        assert!((r[[0, 0]]).abs() < 1e-12);
        assert!((r[[0, 1]] + 1.0).abs() < 1e-12);
        let full = expm_real(&(g.mapv(|x| x * 2.0 * std::f64::consts::PI))).unwrap();
        assert!((full[[0, 0]] - 1.0).abs() < 1e-10 && full[[0, 1]].abs() < 1e-10);
    }

    #[test]
    fn gram_orthonormalize_identity_form() {
        let gram = array![[c64(4.0, 0.0), c64(0.0, 1.0)], [c64(0.0, -1.0), c64(2.0, 0.0)]];
        let t = gram_orthonormalize(&gram).unwrap();
        let check = adjoint(&t).dot(&gram).dot(&t);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((check[[i, j]] - c64(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}

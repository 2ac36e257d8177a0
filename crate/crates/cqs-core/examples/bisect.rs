use cqs_core::*;
use ndarray::{array, Array2};
use num_complex::Complex64 as C64;
fn c64(re: f64, im: f64) -> C64 { C64::new(re, im) }
fn plane(n: usize, rows: &[Vec<f64>]) -> ConstraintPlane {
    let mut basis = Array2::zeros((2 * n, rows.len()));
    for (j, r) in rows.iter().enumerate() {
        for i in 0..2 * n { basis[[i, j]] = r[i]; }
    }
    ConstraintPlane::new(basis, 1.0, 1e-10).unwrap()
}
fn main() {
    eprintln!("step 1: k=0");
    let a = array![[c64(0.4, 0.8)]];
    let g = h_germ(&a, &ConstraintPlane::empty(1)).unwrap();
    eprintln!("  h_germ ok");
    let a2 = h_germ_to_matrix(&g, &ConstraintPlane::empty(1)).unwrap();
    eprintln!("  to_matrix ok: {a2:?}");
    eprintln!("step 2: n=1 k=1");
    let l = plane(1, &[vec![1.0, 0.0]]);
    let aii = array![[c64(0.0, 1.0)]];
    let g = h_germ(&aii, &l).unwrap();
    eprintln!("  h_germ ok");
    let a2 = h_germ_to_matrix(&g, &l).unwrap();
    eprintln!("  to_matrix ok: {a2:?}");
}

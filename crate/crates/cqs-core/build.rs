// Link the system OpenBLAS, which bundles BLAS, CBLAS and LAPACK. We bypass
// the ndarray-linalg backend crates so no vendored BLAS is ever built.
fn main() {
    println!("cargo:rustc-link-search=native=/usr/lib/x86_64-linux-gnu");
    println!("cargo:rustc-link-lib=dylib=openblas");
}

//! Count zeros of polynomials in the unit disk by Cohn reduction and compare
//! with the simultaneous-iteration root finder.
//!
//! cargo run --example zero_counting

use harmconv::schur_cohn::{
    classify_roots, count_zeros_in_disk, roots_oracle, theorem43_cubic, Theorem43Case,
    BOUNDARY_TOL,
};
use harmconv::{Complex, Polynomial};

fn main() -> Result<(), harmconv::Error> {
    let cubic = theorem43_cubic(0.5, 0.2, Theorem43Case::MinusOne)?;
    let t = cubic.polynomial();
    println!("t(z) coefficients (constant first): {:.3?}", t.coeffs());
    let report = count_zeros_in_disk(&t);
    println!(
        "Cohn: inside {}, boundary {}, outside {} (deflated {})",
        report.zeros_inside, report.zeros_on_boundary, report.zeros_outside, report.deflated
    );
    for (i, step) in report.trace.iter().enumerate() {
        println!(
            "  step {i}: degree {}, |a0| = {:.4}, |an| = {:.4}",
            step.polynomial.degree(),
            step.constant_modulus,
            step.leading_modulus
        );
    }
    let roots = roots_oracle(&t)?;
    println!("oracle roots: {roots:.6?}");
    println!("oracle classification: {:?}", classify_roots(&roots, BOUNDARY_TOL));

    // a reflected pair r, 1/conj(r) forces the deflation path
    let r = Complex::new(0.3, 0.4);
    let p = Polynomial::from_roots(&[r, 1.0 / r.conj(), Complex::new(-0.5, 0.0)]);
    let report = count_zeros_in_disk(&p);
    println!(
        "reflected pair: inside {}, boundary {}, outside {}, deflated {}",
        report.zeros_inside, report.zeros_on_boundary, report.zeros_outside, report.deflated
    );
    Ok(())
}

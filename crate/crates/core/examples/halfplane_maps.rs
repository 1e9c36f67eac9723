//! Build the right half-plane map `f₀`, a canonical slanted half-plane map,
//! and a member of the same class with a different dilatation, then sample
//! their images.
//!
//! cargo run --example halfplane_maps

use harmconv::canonical::{
    halfplane_member, right_halfplane_f0, slanted_halfplane_canonical,
    slanted_halfplane_closed_form,
};
use harmconv::{Complex, DilatationSpec, Sign, SlantParams};

fn main() -> Result<(), harmconv::Error> {
    let f0 = right_halfplane_f0(400);
    println!("f0: h = {:.3?}", &f0.h().coeffs()[..5]);
    println!("    g = {:.3?}", &f0.g().coeffs()[..5]);

    let p = SlantParams::new(Complex::new(0.3, -0.4), 0.8)?;
    println!(
        "a = {}, gamma = {}: a' = {:.6}, gamma_a = {:.6}",
        p.a, p.gamma, p.a_prime, p.gamma_a
    );
    let f = slanted_halfplane_canonical(&p, 400);
    let z = Complex::new(0.3, 0.5);
    let (h, g) = slanted_halfplane_closed_form(&p, z);
    println!(
        "f(z) from series {:.12}, closed form {:.12}",
        f.evaluate(z)?,
        h + g.conj()
    );

    // same class, dilatation e^{2iT}(a' + z e^{0.4i}) / (1 + a' z e^{0.4i})
    let w = DilatationSpec::moebius(2.0 * p.total_angle(), p.a_prime, 0.4, Sign::Plus)?;
    let m = halfplane_member(&p, &w, 400)?;
    for k in 0..8 {
        let z = Complex::from_polar(0.9, k as f64 * std::f64::consts::FRAC_PI_4);
        let wz = m.evaluate(z)?;
        // the image lies in Re(e^{iγ} w / (1 + a)) > −1/2
        let s = (harmconv::cis(p.gamma) * wz / (1.0 + p.a)).re;
        println!("z = {z:.3}  f(z) = {wz:.4}  Re(e^(i gamma) f/(1+a)) = {s:.4}");
    }
    Ok(())
}

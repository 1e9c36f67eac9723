//! Strip mappings, members of `F^a_{λ,δ}`, and convex combinations.
//!
//! cargo run --example strip_and_flambda

use harmconv::canonical::{convex_combination, f_lambda_delta_member, strip_member};
use harmconv::geometry::{local_univalence, strip_membership, DiskGrid};
use harmconv::{Complex, DilatationSpec, FLambdaDeltaParams, Sign, StripParams};
use std::f64::consts::FRAC_PI_3;

fn main() -> Result<(), harmconv::Error> {
    let grid = DiskGrid::geometric(16, 0.05, 0.98, 128)?;
    let order = grid.recommended_order();

    let p = StripParams::new(Complex::new(0.5, 0.0), FRAC_PI_3)?;
    let w = DilatationSpec::moebius(2.0 * p.gamma_b, p.b_prime, 0.3, Sign::Minus)?;
    let f = strip_member(&p, &w, order)?;
    let (lo, hi) = p.walls();
    let (m_lo, m_hi) = strip_membership(&f, p.b, p.beta, &grid)?;
    println!("strip walls for Re(w/(1+b)): ({lo:.6}, {hi:.6})");
    println!("margins on the grid: lower {m_lo:.4e}, upper {m_hi:.4e}");

    let q = FLambdaDeltaParams::from_angles(Complex::new(0.1, 0.2), 2.2, 0.5)?;
    let members = [0.0, 1.3, 2.9]
        .iter()
        .map(|&inner| {
            let w = DilatationSpec::moebius(2.0 * (0.5 + q.gamma_a), q.a_prime, inner, Sign::Plus)?;
            f_lambda_delta_member(&q, &w, order)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let combo = convex_combination(&members, &[0.5, 0.3, 0.2])?;
    let u = local_univalence(&combo, &grid);
    println!(
        "combination of three F members: min J = {:.3e}, max |w| = {:.6}, locally univalent: {}",
        u.min_jacobian,
        u.max_dilatation_modulus,
        u.passes()
    );
    Ok(())
}

//! Describe maps as JSON, build them, and serialize the coefficients back
//! into a spec that rebuilds the same map.
//!
//! cargo run --example mapspec_json

use harmconv::harness::MapSpec;

fn main() -> Result<(), harmconv::harness::HarnessError> {
    let text = r#"{
        "type": "convex_combination",
        "weights": [0.25, 0.75],
        "maps": [
            {"type": "right_halfplane_f0"},
            {"type": "rotation", "theta": 0.5,
             "map": {"type": "strip_member", "b": {"re": 0.0, "im": 0.0}, "beta": 1.2,
                     "dilatation": {"kind": "monomial", "theta": 0.0, "n": 2}}}
        ],
        "order": 12
    }"#;
    let spec = MapSpec::from_json(text)?;
    let f = spec.build(64)?;
    let out = MapSpec::from_map(&f).to_json_pretty();
    let back = MapSpec::from_json(&out)?.build(64)?;
    println!("order {}, class {:?}, rebuilt identically: {}", f.order(), f.class_tag(), back == f);

    match MapSpec::from_json(r#"{"type": "slanted_halfplane_canonical", "a": {"re": 1.0, "im": 0.0}, "gamma": 0}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("|a| = 1 is outside the disk"),
    }
    Ok(())
}

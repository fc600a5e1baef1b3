//! Boundary representations of the automorphism group of a regular or
//! biregular tree: fixed vectors, surjectivity of the restriction map, first
//! cohomology, and a finite check of the density relation.
//!
//! ```bash
//! cargo run --example boundary_reps
//! ```

use gogkit::boundary::{h1_table, iota_surjectivity, truncated_check, Orbits, RepClass, RepDescriptor, SParam};
use gogkit::rational::fmt_q;

fn main() -> gogkit::error::Result<()> {
    for (label, dim) in h1_table(3)? {
        println!("{label:<26} dim H^1 = {dim}");
    }

    for s in ["1/2", "1/3", "0.5+2.86i"] {
        let s: SParam = s.parse()?;
        let d = RepDescriptor::new(Orbits::Two, 3, Some(4), RepClass::Spherical(s.clone()))?;
        let r = iota_surjectivity(&d)?;
        println!("s = {:<10} lambda = {:<34} det = {:<34} onto: {}", s.to_string(), r.lambda.to_string(), r.determinant.to_string(), r.surjective);
    }

    let t = truncated_check(2, 3, 3)?;
    println!(
        "(3,4)-biregular ball: {} vertices, orbits {}/{}/{}, density ratio {} (expected {})",
        t.ball_size,
        t.stab_a_orbits,
        t.stab_e_orbits,
        t.stab_b_orbits,
        fmt_q(&t.density_ratio),
        fmt_q(&t.expected_ratio)
    );
    Ok(())
}

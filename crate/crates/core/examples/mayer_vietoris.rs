//! First cohomology of a fundamental group with coefficients in a finite
//! dimensional rational module, and the exact sequence that computes it from
//! vertex and edge data.
//!
//! ```bash
//! cargo run --example mayer_vietoris
//! ```

use gogkit::corpus;
use gogkit::mvcoh::{check_exactness, h1, iota_matrix, semidirect_criterion, validate_module};

fn main() -> gogkit::error::Result<()> {
    // Z/2 * Z/2 acting on Q^4 by the regular representation of Z/2 x Z/2.
    let doc = corpus::example("dihedral")?;
    let gog = doc.gog()?;
    let m = doc.module(&gog, "regular")?;
    println!("module valid: {}", validate_module(&gog, &m).is_valid());
    let h = h1(&gog, &m);
    println!("Z^1 = {}, B^1 = {}, H^1 = {}", h.dim_z, h.dim_b, h.dim_h);
    let iota = iota_matrix(&gog, &m)?;
    println!("iota: {} -> {}, rank {}, cokernel {}", iota.domain_dim(), iota.codomain_dim(), iota.rank(), iota.cokernel_dim());

    let r = check_exactness(&gog, &m)?;
    println!(
        "exact at M^G: {}, at vertices: {}, at edges: {}, at H^1: {}, H^1 = coker: {:?}",
        r.delta_injective, r.exact_at_vertices, r.exact_at_edges, r.exact_at_h1, r.h1_equals_cokernel
    );

    // Z/3 x| Z with t acting on Q^2 by a rotation with rational entries.
    let doc = corpus::example("z3-semidirect")?;
    let gog = doc.gog()?;
    for name in ["rotation", "trivial"] {
        let m = doc.module(&gog, name)?;
        let v = semidirect_criterion(&gog, &m)?;
        println!(
            "{name:<8} dim M^Gamma = {}, 1 is an eigenvalue of t: {:<5} H^1 = {} (prediction holds: {})",
            v.dim_fixed, v.one_is_eigenvalue, v.h1_dim, v.agrees
        );
    }
    Ok(())
}

//! First l2-Betti numbers from indices of edge groups, the vanishing
//! classifier, and higher degrees from asserted edge data.
//!
//! ```bash
//! cargo run --example l2_betti
//! ```

use std::collections::BTreeMap;

use gogkit::corpus;
use gogkit::l2betti::{beta1, beta_higher, classify_beta1, BettiCase};
use gogkit::rational::fmt_q;

fn main() -> gogkit::error::Result<()> {
    for name in ["dihedral", "pslz", "free2", "z3-semidirect", "theta", "bs-amalgam", "higman-shape"] {
        let gog = corpus::example(name)?.gog()?;
        let b = beta1(&gog)?;
        let case = classify_beta1(&gog)?;
        let witness = match case {
            BettiCase::Nonzero(w) => format!(" ({:?} at {})", w.kind, gog.graph.edge(w.edge).id),
            _ => String::new(),
        };
        println!("{name:<14} beta1 = {:<5} {}{witness}", fmt_q(&b), case.name());
    }

    // Degrees above one need every vertex group to be l2-acyclic up to that
    // degree; edge groups contribute their own Betti numbers shifted by one.
    let gog = corpus::example("higman-shape")?.gog()?;
    let empty = BTreeMap::new();
    for i in 2..=4 {
        println!("higman-shape beta{i} = {}", fmt_q(&beta_higher(&gog, i, &empty)?));
    }
    Ok(())
}

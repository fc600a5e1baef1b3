//! The cocycle `b(g) = 1_{g x0} - 1_{x0}` on oriented edges of the tree, its
//! norm, and its recovery from the edge vectors `ω_e` by the connecting map.
//!
//! ```bash
//! cargo run --example haagerup_cocycle
//! ```

use gogkit::corpus;
use gogkit::cover::build_ball;
use gogkit::fundgrp::{parse_word, Pi1};
use gogkit::haagerup::{haagerup_cocycle, omega_family, verify_lemma_omega};
use gogkit::rational::fmt_q;

fn main() -> gogkit::error::Result<()> {
    let gog = corpus::example("free2")?.gog()?;
    let pi = Pi1::new(&gog)?;
    let ball = build_ball(&pi, 6)?;

    let words: Vec<_> = ["t1", "t1 * t2^-1", "t1 * t1 * t2 * t1^-1", "t2 * t2^-1"]
        .iter()
        .map(|s| parse_word(&gog, s))
        .collect::<Result<_, _>>()?;
    for w in &words {
        let b = haagerup_cocycle(&pi, &ball, w)?;
        let d = pi.path_form(w)?.steps.len();
        // Each edge of [x0, g x0] carries +1, its reverse -1.
        println!("{:<22} |b|^2 = {:<3} 2 d(x0, g x0) = {}", w.display(&gog), fmt_q(&b.norm_sq()), 2 * d);
    }

    let fam = omega_family(&pi, &ball)?;
    println!("omega vectors fixed by their edge groups: {}", fam.invariant);
    let report = verify_lemma_omega(&pi, &ball, &words)?;
    for c in report.generators.iter().chain(&report.words) {
        println!("  connecting map agrees on {:<22} {}", c.item, c.pass);
    }
    println!("all pass: {}", report.all_pass());
    Ok(())
}

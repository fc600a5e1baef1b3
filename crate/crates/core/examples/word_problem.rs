//! Presentations and the word problem in the fundamental group.
//!
//! ```bash
//! cargo run --example word_problem
//! ```

use gogkit::corpus;
use gogkit::fundgrp::{parse_word, presentation, Pi1};

fn main() -> gogkit::error::Result<()> {
    let doc = corpus::example("pslz")?;
    let gog = doc.gog()?;
    let pres = presentation(&gog)?;
    println!("{}", pres.simplified());

    let pi = Pi1::new(&gog)?;
    let words = [
        "a:(1,2) * a:(1,2)",
        "b:(1,2,3) * b:(1,2,3) * b:(1,2,3)",
        "a:(1,2) * b:(1,2,3) * a:(1,2) * b:(1,3,2)",
        "a:(1,2) * b:(1,2,3) * b:(1,3,2) * a:(1,2)",
    ];
    for s in words {
        let w = parse_word(&gog, s)?;
        let nf = pi.britton_reduce(&w)?;
        println!("{s:<45} -> {:<30} identity: {}", nf.word.display(&gog), nf.is_identity);
    }

    // Two spellings of the same element.
    let u = parse_word(&gog, "b:(1,2,3) * b:(1,2,3)")?;
    let v = parse_word(&gog, "b:(1,3,2)")?;
    println!("b^2 == b^-1: {}", pi.equals(&u, &v)?);

    // Normal forms in an HNN extension: t x t^-1 = x^-1.
    let doc = corpus::example("z3-semidirect")?;
    let gog = doc.gog()?;
    let pi = Pi1::new(&gog)?;
    let w = parse_word(&gog, "t * v:(1,2,3) * t^-1 * v:(1,2,3)")?;
    let nf = pi.britton_reduce(&w)?;
    println!("{} reduces to {}", w.display(&gog), nf.word.display(&gog));
    Ok(())
}

//! Elliptic and hyperbolic elements, translation lengths, and the type of
//! the action of a finitely generated subgroup.
//!
//! ```bash
//! cargo run --example isometries
//! ```

use gogkit::corpus;
use gogkit::cover::{classify_action, isometry_report, translation_length_squared_formula, verify_classification, Verdict};
use gogkit::fundgrp::{parse_word, Pi1};

fn main() -> gogkit::error::Result<()> {
    let gog = corpus::example("pslz")?.gog()?;
    let pi = Pi1::new(&gog)?;
    for s in ["a:(1,2)", "a:(1,2) * b:(1,2,3)", "a:(1,2) * b:(1,2,3) * a:(1,2) * b:(1,3,2)"] {
        let w = parse_word(&gog, s)?;
        let r = isometry_report(&pi, &w)?;
        let check = translation_length_squared_formula(&pi, &r.element.path);
        println!(
            "{s:<42} {:?}  length {} (via w^2: {check})  displacement {}",
            r.kind, r.translation_length, r.displacement
        );
    }

    for (name, gens) in [
        ("free2", vec!["t1", "t2"]),
        ("dihedral", vec!["a:(1,2)", "b:(1,2)"]),
        ("pslz", vec!["b:(1,2,3)"]),
        ("pslz", vec!["a:(1,2) * b:(1,2,3)", "b:(1,2,3) * a:(1,2)"]),
    ] {
        let gog = corpus::example(name)?.gog()?;
        let pi = Pi1::new(&gog)?;
        let gens: Vec<_> = gens.iter().map(|s| parse_word(&gog, s)).collect::<Result<_, _>>()?;
        let c = classify_action(&pi, &gens, 12)?;
        let detail = match &c.verdict {
            Verdict::FixedVertex(v) => format!("fixes {}", v.label(&pi)),
            Verdict::ElementaryEndPair { h, .. } => format!("axis of {}", h.display(&gog)),
            Verdict::NonElementary(pp) => format!("ping-pong with powers {} and {}", pp.power_h, pp.power_h_conj),
            Verdict::Inconclusive { budget } => format!("gave up at {budget}"),
        };
        println!("{name:<9} {:<18} {detail}  verified: {}", c.name(), verify_classification(&pi, &gens, &c)?);
    }
    Ok(())
}

//! Reading and writing graph-of-groups documents, with modules and a finite
//! quotient used to cross-check the word problem.
//!
//! ```bash
//! cargo run --example documents
//! cargo run --example documents -- path/to/doc.json
//! ```

use gogkit::corpus;
use gogkit::doc::Document;
use gogkit::fundgrp::{parse_word, Pi1};

fn main() -> gogkit::error::Result<()> {
    let doc = match std::env::args().nth(1) {
        Some(path) => Document::load(path)?,
        None => corpus::example("z3-semidirect")?,
    };
    if let Some(d) = &doc.description {
        println!("{d}");
    }
    let gog = doc.gog()?;
    println!("groups: {:?}", doc.groups.keys().collect::<Vec<_>>());
    println!("modules: {:?}", doc.modules.keys().collect::<Vec<_>>());

    // Serialization is stable: parsing the output gives back the same document.
    let text = doc.to_json();
    assert_eq!(Document::from_json(&text)?, doc);
    println!("round trip ok ({} bytes)", text.len());

    // A homomorphism to a permutation group: words trivial in the group must
    // map to the identity permutation.
    let Some(quot) = doc.quotient(&gog)? else {
        return Ok(());
    };
    let pi = Pi1::new(&gog)?;
    let letters: Vec<String> = gog.graph.edges().iter().map(|e| e.id.clone()).collect();
    println!("quotient on {} points, edges {:?}", quot.points, letters);
    for s in ["t * v:(1,2,3) * t^-1 * v:(1,2,3)", "t * v:(1,2,3) * t^-1 * v:(1,3,2)"] {
        let Ok(w) = parse_word(&gog, s) else { continue };
        println!(
            "{s:<36} trivial in the group: {:<5} image is identity: {}",
            pi.is_identity(&w)?,
            quot.image(&w).is_identity()
        );
    }
    Ok(())
}

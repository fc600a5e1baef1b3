//! A ball in the Bass-Serre tree, the action of a word on it, and a DOT
//! rendering.
//!
//! ```bash
//! cargo run --example cover_ball
//! cargo run --example cover_ball -- dot > ball.dot
//! ```

use gogkit::corpus;
use gogkit::cover::{build_ball, tree_distance};
use gogkit::fundgrp::{parse_word, Pi1};

fn main() -> gogkit::error::Result<()> {
    let gog = corpus::example("pslz")?.gog()?;
    let pi = Pi1::new(&gog)?;
    let ball = build_ball(&pi, 3)?;
    if std::env::args().nth(1).as_deref() == Some("dot") {
        print!("{}", ball.to_dot(&pi));
        return Ok(());
    }

    // The tree is (2,3)-biregular: vertices of kind a have degree 2,
    // kind b degree 3. Only the sphere is cut off.
    let mut by_depth = [0usize; 4];
    for (i, v) in ball.vertices().iter().enumerate() {
        by_depth[v.depth()] += 1;
        if v.depth() < 3 {
            assert_eq!(ball.degree(i), if v.kind(&pi) == 0 { 2 } else { 3 });
        }
    }
    println!("{} vertices, {} edges, per depth {:?}", ball.len(), ball.edges(&pi).len(), by_depth);

    let w = parse_word(&gog, "a:(1,2) * b:(1,2,3)")?;
    let pf = pi.path_form(&w)?;
    for v in ball.vertices().iter().take(6) {
        let image = gogkit::cover::act(&pi, &pf, v);
        println!("{:>14} -> {:<14} moved {}", v.label(&pi), image.label(&pi), tree_distance(v, &image));
    }
    Ok(())
}

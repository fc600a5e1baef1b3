//! Build a graph of groups by hand, validate it, and contract the edges whose
//! edge map is onto.
//!
//! ```bash
//! cargo run --example graph_of_groups
//! ```

use gogkit::fingrp::FiniteGroup;
use gogkit::gog::{EdgeMap, GraphOfGroups, GroupRef};
use gogkit::graph::{epsilon, Graph};

fn main() -> gogkit::error::Result<()> {
    // S3 at `a`, Z/2 at `b`, joined along Z/2. The map into `b` is onto, so
    // the segment is not reduced.
    let s3 = FiniteGroup::symmetric(3);
    let swap = s3.element("(1,2)").expect("transposition");
    let z2 = GroupRef::enumerated("Z2", FiniteGroup::cyclic(2));
    let graph = Graph::new(&["a", "b"], &[("e", "a", "b", "e~"), ("e~", "b", "a", "e")])?;
    let gog = GraphOfGroups::new(
        graph,
        vec![GroupRef::enumerated("S3", s3), z2.clone()],
        vec![z2.clone(), z2],
        vec![EdgeMap::Table(vec![0, 1]), EdgeMap::Table(vec![0, swap])],
        None,
        None,
        None,
    )?;

    let report = gog.validate();
    println!("valid: {}  violations: {:?}", report.is_valid(), report.violations);
    for e in gog.oriented_edges() {
        println!("index of {} in its head: {:?}", gog.graph.edge(e).id, gog.index(e)?);
    }

    let check = gog.is_reduced()?;
    println!("reduced: {} (witness edge {:?})", check.reduced, check.witness.map(|e| &gog.graph.edge(e).id));

    let (reduced, log) = gog.reduce()?;
    for c in &log {
        println!("contracted {}: {} merged into {}", c.edge, c.removed_vertex, c.merged_into);
    }
    println!(
        "after reduction: {} vertex, group {}",
        reduced.graph.vertex_count(),
        reduced.vertex_groups[0].name
    );

    // The orientation sign of an edge along the tree path between two vertices.
    let g = &gog.graph;
    let e = g.edge_index("e")?;
    let sign = epsilon(g, &gog.tree, g.vertex("a")?, g.vertex("b")?, e)?;
    println!("epsilon(a, b; e) = {sign}");
    Ok(())
}

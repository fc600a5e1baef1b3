//! The bundled example documents.

use crate::doc::Document;
use crate::error::{Error, Result};

const SOURCES: [(&str, &str); 7] = [
    ("dihedral", include_str!("../data/dihedral.json")),
    ("pslz", include_str!("../data/pslz.json")),
    ("free2", include_str!("../data/free2.json")),
    ("bs-amalgam", include_str!("../data/bs-amalgam.json")),
    ("higman-shape", include_str!("../data/higman-shape.json")),
    ("z3-semidirect", include_str!("../data/z3-semidirect.json")),
    ("theta", include_str!("../data/theta.json")),
];

pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

/// The raw JSON text of a bundled example.
pub fn source(name: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))
}

pub fn example(name: &str) -> Result<Document> {
    Document::from_json(source(name)?)
}

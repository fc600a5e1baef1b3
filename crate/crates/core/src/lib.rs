//! Computations with finite graphs of groups: fundamental groups, Bass-Serre
//! trees, the Haagerup cocycle, first cohomology through the Mayer-Vietoris
//! sequence, first l2-Betti numbers and boundary representations of
//! semi-homogeneous trees.

pub mod boundary;
pub mod cli;
pub mod corpus;
pub mod cover;
pub mod doc;
pub mod error;
pub mod fingrp;
pub mod fundgrp;
pub mod gog;
pub mod gmodule;
pub mod graph;
pub mod haagerup;
pub mod l2betti;
pub mod linalg;
pub mod mvcoh;
pub mod rational;

pub use error::{Error, Result};

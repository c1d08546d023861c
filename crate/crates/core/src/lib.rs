//! Integer sequences, shell-filling orders, property-induced partial orders
//! and hierarchical-clustering topologies on the chemical elements.

pub mod chemotopology;
pub mod cli;
pub mod element_data;
pub mod error;
pub mod patterns;
pub mod posets;
pub mod sequences;
pub mod shell_orders;

pub use error::{Error, Result};

//! Writes the Chevalley structure constants used by the seeded Lie-product
//! scenarios as `GFLIE v1` files.
//!
//! Usage: `cargo run --example chevalley_tables [output-dir]` (default
//! `fixtures/chevalley`).

use std::path::PathBuf;

use modlie::gfla::Field;
use modlie::liealg::{chevalley_algebra, write_structure_constants};
use modlie::roots::parse_type_label;
use modlie::Result;

pub const TABLES: &[(&str, u32)] = &[("A1", 7), ("A1", 11), ("A2", 7), ("A2", 11), ("G2", 7), ("G2", 11)];

pub fn file_name(label: &str, p: u32) -> String {
    format!("{}_p{}.lie", label, p)
}

pub fn table(label: &str, p: u32) -> Result<String> {
    let (ty, rank) = parse_type_label(label)?;
    let cb = chevalley_algebra(ty, rank, &Field::prime(p)?)?;
    Ok(write_structure_constants(&cb.algebra))
}

#[allow(dead_code)]
fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures/chevalley"));
    std::fs::create_dir_all(&dir)?;
    for &(label, p) in TABLES {
        std::fs::write(dir.join(file_name(label, p)), table(label, p)?)?;
    }
    Ok(())
}

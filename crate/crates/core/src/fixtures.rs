//! Worked example graphs shipped with the crate.

use crate::io::{parse, GraphDocument};

pub const FIG1: &str = include_str!("../../../fixtures/fig1.json");
pub const FIG1_LEFT: &str = include_str!("../../../fixtures/fig1_left.json");
pub const FIG1_RIGHT: &str = include_str!("../../../fixtures/fig1_right.json");
pub const FIG2: &str = include_str!("../../../fixtures/fig2.json");
pub const FIG4: &str = include_str!("../../../fixtures/fig4.json");
pub const FIG5: &str = include_str!("../../../fixtures/fig5.json");

/// All fixtures by file stem.
pub const ALL: [(&str, &str); 6] = [
    ("fig1", FIG1),
    ("fig1_left", FIG1_LEFT),
    ("fig1_right", FIG1_RIGHT),
    ("fig2", FIG2),
    ("fig4", FIG4),
    ("fig5", FIG5),
];

pub fn load(text: &str) -> GraphDocument {
    parse(text).expect("bundled fixture parses")
}

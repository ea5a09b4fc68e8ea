//! Templates bundled with the crate.

use crate::error::Result;
use crate::format::parse;
use crate::template::OrigamiTemplate;

pub const S2: &str = include_str!("../corpus/s2.json");
pub const S4: &str = include_str!("../corpus/s4.json");
pub const S6: &str = include_str!("../corpus/s6.json");
pub const CP2: &str = include_str!("../corpus/cp2.json");
pub const HIRZEBRUCH: &str = include_str!("../corpus/hirzebruch.json");
pub const TORUS: &str = include_str!("../corpus/torus.json");
pub const CHAIN3: &str = include_str!("../corpus/chain3.json");
pub const ODDCYCLE3: &str = include_str!("../corpus/oddcycle3.json");
pub const RP2: &str = include_str!("../corpus/rp2.json");

/// `(name, json)` for every bundled template.
pub const ALL: [(&str, &str); 9] = [
    ("s2", S2),
    ("s4", S4),
    ("s6", S6),
    ("cp2", CP2),
    ("hirzebruch", HIRZEBRUCH),
    ("torus", TORUS),
    ("chain3", CHAIN3),
    ("oddcycle3", ODDCYCLE3),
    ("rp2", RP2),
];

pub fn load(name: &str) -> Option<Result<OrigamiTemplate>> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, text)| parse(text))
}

/// The template for the sphere of real dimension `2n`, for `n` in `1..=3`.
pub fn sphere(n: usize) -> Option<OrigamiTemplate> {
    let text = match n {
        1 => S2,
        2 => S4,
        3 => S6,
        _ => return None,
    };
    parse(text).ok()
}

//! Example programs shipped with the crate.

use crate::ast::{FnRef, Program};
use crate::eval::Bindings;
use crate::parser::parse;

pub const SWAP: &str = include_str!("../programs/swap.rvl");
pub const ADD: &str = include_str!("../programs/add.rvl");
pub const MAP: &str = include_str!("../programs/map.rvl");

/// `(name, entry function, source)` for every bundled program.
pub const BUNDLED: [(&str, &str, &str); 3] = [("swap", "swap", SWAP), ("add", "add", ADD), ("map", "map", MAP)];

/// Source of a bundled program by name.
pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _, _)| *n == name).map(|(_, _, src)| *src)
}

/// Parses a bundled program; the sources are fixed, so this cannot fail.
pub fn bundled(name: &str) -> Option<Program> {
    source(name).map(|src| parse(src).expect("bundled programs parse"))
}

/// Entry function of a bundled program.
pub fn entry(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _, _)| *n == name).map(|(_, f, _)| *f)
}

/// Function-parameter bindings a bundled program runs with by default:
/// `map` maps `inc`.
pub fn default_bindings(name: &str) -> Bindings {
    match name {
        "map" => Bindings::from([("g".to_string(), FnRef::new("inc"))]),
        _ => Bindings::new(),
    }
}

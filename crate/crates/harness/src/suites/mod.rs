//! Property suites, one module per area.

pub mod algebroid;
pub mod atiyah;
pub mod bundle;
pub mod derivations;
pub mod grassmann;
pub mod groupoid;
pub mod lattice;
pub mod unitary;
pub mod wstar;

use crate::runner::Property;

/// The properties of a named suite; empty for an unknown name.
pub fn properties(suite: &str) -> Vec<Property> {
    match suite {
        "wstar" => wstar::properties(),
        "lattice" => lattice::properties(),
        "groupoid" => groupoid::properties(),
        "bundle" => bundle::properties(),
        "algebroid" => algebroid::properties(),
        "unitary" => unitary::properties(),
        "atiyah" => atiyah::properties(),
        "derivations" => derivations::properties(),
        "grassmann" => grassmann::properties(),
        _ => Vec::new(),
    }
}

use super::Topology;
use crate::error::{Error, Result};

/// Bundled device graphs as `(name, edge-list text)`.
pub const DEVICES: [(&str, &str); 5] = [
    ("valencia", include_str!("../../data/valencia.edges")),
    ("yorktown", include_str!("../../data/yorktown.edges")),
    ("melbourne", include_str!("../../data/melbourne.edges")),
    ("johannesburg", include_str!("../../data/johannesburg.edges")),
    ("singapore", include_str!("../../data/singapore.edges")),
];

pub(super) fn named(name: &str) -> Result<Topology> {
    let unknown = || Error::UnknownTopology(name.to_string());
    if let Some((_, text)) = DEVICES.iter().find(|(n, _)| *n == name) {
        return Ok(Topology::from_edge_text(text)?.with_name(name));
    }
    let (kind, size) = name.split_once('-').ok_or_else(unknown)?;
    let count = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match kind {
        "line" => Topology::line(count(size)?),
        "ring" => Topology::ring(count(size)?),
        "complete" => Topology::complete(count(size)?),
        "grid" => {
            let (r, c) = size.split_once('x').ok_or_else(unknown)?;
            Topology::grid(count(r)?, count(c)?)
        }
        _ => Err(unknown()),
    }
}

use std::collections::HashSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::ir::MixedPhasePolynomial;
use crate::synthesis::{synthesize, Method, QubitMapping, SynthResult};
use crate::topology::Topology;

/// Reverse Traversal with a deterministic inner method.
///
/// Alternates forward syntheses of `p` with syntheses of its inverse, each
/// starting from the previous output mapping, and returns the best forward
/// result (earliest on ties). `iterations` counts forward syntheses.
pub fn reverse_traversal(
    p: &MixedPhasePolynomial,
    topo: &Topology,
    iterations: usize,
    inner: Method,
) -> Result<SynthResult> {
    // A deterministic inner method revisits its orbit once a start repeats.
    let mut seen = HashSet::new();
    traverse(p, iterations, |poly, map, _| synthesize(poly, topo, inner, map), |map| {
        !seen.insert(map.clone())
    })
}

/// Reverse Traversal with an arbitrary inner synthesis; `inner` receives
/// the polynomial, the input mapping and the step index.
pub fn reverse_traversal_with<F>(
    p: &MixedPhasePolynomial,
    iterations: usize,
    inner: F,
) -> Result<SynthResult>
where
    F: FnMut(&MixedPhasePolynomial, &QubitMapping, usize) -> Result<SynthResult>,
{
    traverse(p, iterations, inner, |_| false)
}

fn traverse<F, S>(
    p: &MixedPhasePolynomial,
    iterations: usize,
    mut inner: F,
    mut revisited: S,
) -> Result<SynthResult>
where
    F: FnMut(&MixedPhasePolynomial, &QubitMapping, usize) -> Result<SynthResult>,
    S: FnMut(&QubitMapping) -> bool,
{
    if iterations == 0 {
        return Err(Error::InvalidConfig("reverse traversal needs at least one iteration".into()));
    }
    let start = Instant::now();
    let inverse = p.reverse();
    let mut map = QubitMapping::identity(p.n());
    let mut best: Option<SynthResult> = None;
    for k in 0..iterations {
        if revisited(&map) {
            break;
        }
        let forward = inner(p, &map, 2 * k)?;
        let next_start = forward.output_mapping.clone();
        if best.as_ref().is_none_or(|b| forward.cnot_count < b.cnot_count) {
            best = Some(forward);
        }
        if k + 1 < iterations {
            map = inner(&inverse, &next_start, 2 * k + 1)?.output_mapping;
        }
    }
    let mut best = best.expect("at least one forward pass ran");
    best.elapsed = start.elapsed();
    Ok(best)
}

//! Realizing a random CNOT circuit's parity matrix on a device, up to a
//! permutation of registers.
//!
//! ```text
//! cargo run --example permrowcol -- melbourne
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zxroute::synthesis::permrowcol;
use zxroute::{Gate, ParityMatrix, Topology};

fn main() -> zxroute::Result<()> {
    let device = std::env::args().nth(1).unwrap_or_else(|| "valencia".into());
    let topo = Topology::named(&device)?;
    let n = topo.n();

    // a CNOT circuit that ignores connectivity
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cnots: Vec<(usize, usize)> = (0..4 * n)
        .map(|_| {
            let s = rand::seq::index::sample(&mut rng, n, 2);
            (s.index(0), s.index(1))
        })
        .collect();
    let m = ParityMatrix::from_cnots(n, cnots.iter().copied())?;

    let (gates, sigma) = permrowcol(&m, &topo)?;
    let replay = ParityMatrix::from_cnots(
        n,
        gates.iter().map(|g| match *g {
            Gate::Cnot { control, target } => (control, target),
            _ => unreachable!("only CNOTs"),
        }),
    )?;
    let expected = ParityMatrix::from_permutation(sigma.as_slice()).mul(&m)?;
    println!("input circuit: {} unrestricted CNOTs", cnots.len());
    println!("routed:        {} CNOTs on {device} edges", gates.len());
    println!("permutation:   {sigma}");
    println!("replay matches: {}", replay == expected);
    Ok(())
}

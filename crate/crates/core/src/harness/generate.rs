use std::f64::consts::FRAC_PI_4;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::ir::{Basis, MixedPhasePolynomial, PhaseGadget};

/// Angle distribution for generated gadgets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AngleMode {
    /// Uniform over `kπ/4` for `k = 1..=7`.
    #[default]
    Discrete,
    /// Uniform over `(0, 2π)`.
    Continuous,
}

/// `m` random gadgets on `n` qubits with an identity tail.
///
/// Each gadget has a uniformly drawn leg count in `[round(√n), n]`, a
/// uniform leg subset of that size and a uniform basis.
pub fn random_circuit(n: usize, m: usize, seed: u64) -> Result<MixedPhasePolynomial> {
    random_circuit_with(n, m, seed, AngleMode::Discrete)
}

pub fn random_circuit_with(
    n: usize,
    m: usize,
    seed: u64,
    angles: AngleMode,
) -> Result<MixedPhasePolynomial> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidConfig(format!(
            "random circuits need n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_legs = min_legs(n);
    let mut p = MixedPhasePolynomial::new(n);
    for _ in 0..m {
        let k = rng.gen_range(min_legs..=n);
        let legs = BitVec::from_indices(n, sample(&mut rng, n, k))?;
        let basis = if rng.gen_bool(0.5) { Basis::Z } else { Basis::X };
        let angle = match angles {
            AngleMode::Discrete => f64::from(rng.gen_range(1..=7u8)) * FRAC_PI_4,
            AngleMode::Continuous => loop {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                if a > 0.0 {
                    break a;
                }
            },
        };
        p.push_gadget(PhaseGadget::new(basis, legs, angle)?)?;
    }
    Ok(p)
}

/// `round(√n)`.
pub fn min_legs(n: usize) -> usize {
    (n as f64).sqrt().round() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leg_counts_respect_the_floor() {
        assert_eq!(min_legs(5), 2);
        assert_eq!(min_legs(9), 3);
        assert_eq!(min_legs(14), 4);
        for (n, seed) in [(5, 1), (9, 2), (20, 3)] {
            let p = random_circuit(n, 200, seed).unwrap();
            assert_eq!(p.len(), 200);
            assert!(p.tail().is_identity());
            for g in p.gadgets() {
                assert!((min_legs(n)..=n).contains(&g.weight()));
                let k = (g.angle() / FRAC_PI_4).round();
                assert!((1.0..=7.0).contains(&k));
                assert!((g.angle() - k * FRAC_PI_4).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(random_circuit(5, 30, 7).unwrap(), random_circuit(5, 30, 7).unwrap());
        assert_ne!(random_circuit(5, 30, 7).unwrap(), random_circuit(5, 30, 8).unwrap());
        let c = random_circuit_with(6, 30, 7, AngleMode::Continuous).unwrap();
        assert_eq!(c, random_circuit_with(6, 30, 7, AngleMode::Continuous).unwrap());
    }

    #[test]
    fn both_bases_appear() {
        let p = random_circuit(5, 100, 11).unwrap();
        let z = p.gadgets().iter().filter(|g| g.basis() == Basis::Z).count();
        assert!(z > 20 && z < 80);
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(random_circuit(1, 3, 0).is_err());
        assert!(random_circuit(4, 0, 0).is_err());
    }
}

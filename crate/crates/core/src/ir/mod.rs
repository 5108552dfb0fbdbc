//! Mixed ZX-phase polynomials.
//!
//! A polynomial is an ordered list of Z- and X-phase gadgets followed by a
//! linear section (a CNOT network, stored as its parity matrix). CNOTs can be
//! pushed through the gadget list from the front: the gate is emitted before
//! the polynomial and its conjugated copy joins the linear section.

mod text;

use std::f64::consts::TAU;
use std::fmt;

use crate::error::{check_pair, Error, Result};
use crate::gf2::{BitVec, ParityMatrix};

/// Angles closer than this to a multiple of 2π count as zero.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// Reduces an angle into `[0, 2π)`, snapping values within
/// [`ANGLE_TOLERANCE`] of a multiple of 2π to exactly zero.
pub fn normalize_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r < ANGLE_TOLERANCE || TAU - r < ANGLE_TOLERANCE {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Z,
    X,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "Z",
            Basis::X => "X",
        })
    }
}

/// The unitary `exp(-i·angle/2·P)` where `P` is a tensor product of the
/// basis Pauli on every leg and identity elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGadget {
    basis: Basis,
    legs: BitVec,
    angle: f64,
}

impl PhaseGadget {
    pub fn new(basis: Basis, legs: BitVec, angle: f64) -> Result<Self> {
        if legs.is_zero() {
            return Err(Error::EmptyGadget);
        }
        Ok(PhaseGadget {
            basis,
            legs,
            angle: normalize_angle(angle),
        })
    }

    pub fn z(legs: BitVec, angle: f64) -> Result<Self> {
        Self::new(Basis::Z, legs, angle)
    }

    pub fn x(legs: BitVec, angle: f64) -> Result<Self> {
        Self::new(Basis::X, legs, angle)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn legs(&self) -> &BitVec {
        &self.legs
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn weight(&self) -> usize {
        self.legs.weight()
    }

    /// Rewrites the gadget as `CNOT · g · CNOT`.
    ///
    /// Z gadgets add the target leg onto the control leg; X gadgets add the
    /// control leg onto the target leg.
    #[inline]
    pub fn conjugate_cnot(&mut self, control: usize, target: usize) {
        match self.basis {
            Basis::Z => {
                if self.legs.get(target) {
                    self.legs.flip(control);
                }
            }
            Basis::X => {
                if self.legs.get(control) {
                    self.legs.flip(target);
                }
            }
        }
    }

    /// For a weight-one gadget, the equivalent single-qubit rotation.
    pub fn as_rotation(&self) -> Option<Gate> {
        if self.weight() != 1 {
            return None;
        }
        let qubit = self.legs.first_one()?;
        Some(match self.basis {
            Basis::Z => Gate::Rz {
                qubit,
                angle: self.angle,
            },
            Basis::X => Gate::Rx {
                qubit,
                angle: self.angle,
            },
        })
    }

    /// Topology-oblivious decomposition: a CNOT ladder collecting the parity
    /// on the highest-index leg, the rotation, and the mirrored ladder.
    pub fn naive_circuit(&self) -> Vec<Gate> {
        let legs: Vec<usize> = self.legs.ones().collect();
        let ladder: Vec<Gate> = legs
            .windows(2)
            .map(|w| match self.basis {
                Basis::Z => Gate::cnot(w[0], w[1]),
                Basis::X => Gate::cnot(w[1], w[0]),
            })
            .collect();
        let root = *legs.last().expect("gadgets have at least one leg");
        let rotation = match self.basis {
            Basis::Z => Gate::Rz {
                qubit: root,
                angle: self.angle,
            },
            Basis::X => Gate::Rx {
                qubit: root,
                angle: self.angle,
            },
        };
        let mut out = ladder.clone();
        out.push(rotation);
        out.extend(ladder.into_iter().rev());
        out
    }

    /// Moves leg `q` to position `perm[q]`.
    pub(crate) fn relabel(&self, perm: &[usize]) -> PhaseGadget {
        let mut legs = BitVec::zeros(self.n());
        for q in self.legs.ones() {
            legs.set(perm[q], true);
        }
        PhaseGadget { legs, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Rz { qubit: usize, angle: f64 },
    Rx { qubit: usize, angle: f64 },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    pub fn max_qubit(&self) -> usize {
        match *self {
            Gate::Cnot { control, target } => control.max(target),
            Gate::Rz { qubit, .. } | Gate::Rx { qubit, .. } => qubit,
        }
    }
}

pub fn cnot_count(gates: &[Gate]) -> usize {
    gates.iter().filter(|g| g.is_cnot()).count()
}

/// A maximal run of same-basis gadgets.
#[derive(Clone, Copy, Debug)]
pub struct Region<'a> {
    pub basis: Basis,
    pub gadgets: &'a [PhaseGadget],
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedPhasePolynomial {
    n: usize,
    gadgets: Vec<PhaseGadget>,
    tail: ParityMatrix,
    global_phase: f64,
}

impl MixedPhasePolynomial {
    pub fn new(n: usize) -> Self {
        MixedPhasePolynomial {
            n,
            gadgets: Vec::new(),
            tail: ParityMatrix::identity(n),
            global_phase: 0.0,
        }
    }

    pub fn from_gadgets(n: usize, gadgets: impl IntoIterator<Item = PhaseGadget>) -> Result<Self> {
        let mut p = Self::new(n);
        for g in gadgets {
            p.push_gadget(g)?;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gadgets(&self) -> &[PhaseGadget] {
        &self.gadgets
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    pub fn tail(&self) -> &ParityMatrix {
        &self.tail
    }

    /// Scalar phase of pruned zero-leg terms. Ignored by equivalence checks.
    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn push_gadget(&mut self, gadget: PhaseGadget) -> Result<()> {
        if gadget.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: gadget.n(),
            });
        }
        if gadget.angle != 0.0 {
            self.gadgets.push(gadget);
        }
        Ok(())
    }

    /// Appends a gadget, folding a zero-leg term into the global phase.
    pub fn add_term(&mut self, basis: Basis, legs: BitVec, angle: f64) -> Result<()> {
        if legs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: legs.len(),
            });
        }
        if legs.is_zero() {
            self.global_phase = normalize_angle(self.global_phase - angle / 2.0);
            return Ok(());
        }
        self.push_gadget(PhaseGadget::new(basis, legs, angle)?)
    }

    pub fn set_tail(&mut self, tail: ParityMatrix) -> Result<()> {
        if tail.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: tail.n(),
            });
        }
        if !tail.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        self.tail = tail;
        Ok(())
    }

    pub(crate) fn set_global_phase(&mut self, phase: f64) {
        self.global_phase = normalize_angle(phase);
    }

    /// Pushes `CNOT(control, target)` through the polynomial from the front.
    ///
    /// Afterwards the circuit `CNOT(control, target); self` has the same
    /// unitary as the polynomial had before. Applying the same push twice
    /// restores the polynomial exactly.
    pub fn push_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_pair(control, target, self.n)?;
        for g in &mut self.gadgets {
            g.conjugate_cnot(control, target);
            // Conjugation is a bijection on leg vectors, so legs stay nonzero.
            debug_assert!(!g.legs.is_zero());
        }
        self.tail.prepend_cnot(control, target)?;
        Ok(())
    }

    pub fn commuting_regions(&self) -> Vec<Region<'_>> {
        self.gadgets
            .chunk_by(|a, b| a.basis == b.basis)
            .map(|run| Region {
                basis: run[0].basis,
                gadgets: run,
            })
            .collect()
    }

    /// Length of the first commuting region.
    pub fn first_region_len(&self) -> usize {
        match self.gadgets.first() {
            None => 0,
            Some(first) => self
                .gadgets
                .iter()
                .take_while(|g| g.basis == first.basis)
                .count(),
        }
    }

    /// Removes weight-one gadgets from the first commuting region, returning
    /// them as rotations in list order. Repeats while the (possibly merged)
    /// first region still contains any.
    pub fn extract_leading_singles(&mut self) -> Vec<Gate> {
        let mut out = Vec::new();
        loop {
            let end = self.first_region_len();
            let before = out.len();
            let mut idx = 0;
            self.gadgets.retain(|g| {
                let in_region = idx < end;
                idx += 1;
                if in_region {
                    if let Some(rot) = g.as_rotation() {
                        out.push(rot);
                        return false;
                    }
                }
                true
            });
            if out.len() == before {
                return out;
            }
        }
    }

    /// The polynomial of the inverse unitary.
    ///
    /// With `U = T · G_m ⋯ G_1`, the inverse is rewritten as
    /// `T⁻¹ · (T G_1⁻¹ T⁻¹) ⋯ (T G_m⁻¹ T⁻¹)`: gadgets reversed, angles
    /// negated, Z legs mapped by `T⁻ᵀ` and X legs by `T`.
    pub fn reverse(&self) -> MixedPhasePolynomial {
        let inv = self
            .tail
            .invert()
            .expect("tail of a polynomial is always invertible");
        let gadgets = self
            .gadgets
            .iter()
            .rev()
            .map(|g| {
                let legs = match g.basis {
                    Basis::Z => inv.left_apply(&g.legs),
                    Basis::X => self.tail.apply(&g.legs),
                };
                PhaseGadget {
                    basis: g.basis,
                    legs,
                    angle: normalize_angle(-g.angle),
                }
            })
            .collect();
        MixedPhasePolynomial {
            n: self.n,
            gadgets,
            tail: inv,
            global_phase: normalize_angle(-self.global_phase),
        }
    }

    /// Renames qubit `q` to `perm[q]` throughout, giving the polynomial
    /// `P U P⁻¹`.
    pub fn relabel(&self, perm: &[usize]) -> MixedPhasePolynomial {
        debug_assert_eq!(perm.len(), self.n);
        let mut tail = ParityMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in self.tail.row(i).ones() {
                tail.set(perm[i], perm[j], true);
            }
        }
        MixedPhasePolynomial {
            n: self.n,
            gadgets: self.gadgets.iter().map(|g| g.relabel(perm)).collect(),
            tail,
            global_phase: self.global_phase,
        }
    }

    /// Topology-oblivious circuit: each gadget's naive ladder followed by an
    /// unconstrained CNOT realization of the tail.
    pub fn naive_circuit(&self) -> Vec<Gate> {
        let mut gates: Vec<Gate> = self.gadgets.iter().flat_map(|g| g.naive_circuit()).collect();
        let tail = self
            .tail
            .cnot_decomposition()
            .expect("tail of a polynomial is always invertible");
        gates.extend(tail.into_iter().map(|(c, t)| Gate::cnot(c, t)));
        gates
    }

    pub(crate) fn gadgets_mut(&mut self) -> &mut Vec<PhaseGadget> {
        &mut self.gadgets
    }
}

/// Fuses gadgets with identical legs inside one commuting region.
///
/// Angles are summed mod 2π and gadgets that cancel are dropped. The order
/// of first occurrence is kept.
pub fn merge_region(gadgets: &[PhaseGadget]) -> Result<Vec<PhaseGadget>> {
    let Some(first) = gadgets.first() else {
        return Ok(Vec::new());
    };
    if gadgets.iter().any(|g| g.basis != first.basis) {
        return Err(Error::MixedBasis);
    }
    let mut out: Vec<PhaseGadget> = Vec::with_capacity(gadgets.len());
    for g in gadgets {
        match out.iter_mut().find(|o| o.legs == g.legs) {
            Some(o) => o.angle = normalize_angle(o.angle + g.angle),
            None => out.push(g.clone()),
        }
    }
    out.retain(|g| g.angle != 0.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bits(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    fn worked_example() -> MixedPhasePolynomial {
        MixedPhasePolynomial::from_gadgets(
            3,
            [
                PhaseGadget::z(bits("111"), 0.3).unwrap(),
                PhaseGadget::x(bits("011"), 0.7).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn push_rules_follow_the_worked_example() {
        let mut p = worked_example();
        p.push_cnot(0, 1).unwrap();
        assert_eq!(p.gadgets()[0].legs().to_string(), "011");
        assert_eq!(p.gadgets()[1].legs().to_string(), "011");
        p.push_cnot(1, 2).unwrap();
        assert_eq!(p.gadgets()[0].legs().to_string(), "001");
        assert_eq!(p.gadgets()[1].legs().to_string(), "010");
    }

    #[test]
    fn push_twice_is_identity() {
        let mut p = worked_example();
        p.push_cnot(2, 0).unwrap();
        p.push_cnot(2, 0).unwrap();
        assert_eq!(p, worked_example());
        assert!(p.push_cnot(1, 1).is_err());
        assert!(p.push_cnot(0, 4).is_err());
    }

    #[test]
    fn regions_are_runs() {
        let g = |b| PhaseGadget::new(b, bits("110"), 1.0).unwrap();
        let p = MixedPhasePolynomial::from_gadgets(
            3,
            [g(Basis::Z), g(Basis::Z), g(Basis::X), g(Basis::Z)],
        )
        .unwrap();
        let shape: Vec<_> = p
            .commuting_regions()
            .iter()
            .map(|r| (r.basis, r.gadgets.len()))
            .collect();
        assert_eq!(shape, vec![(Basis::Z, 2), (Basis::X, 1), (Basis::Z, 1)]);
        assert!(MixedPhasePolynomial::new(3).commuting_regions().is_empty());
        assert_eq!(worked_example().commuting_regions().len(), 2);
    }

    #[test]
    fn merge_sums_angles() {
        let z = |s, a| PhaseGadget::z(bits(s), a).unwrap();
        let merged = merge_region(&[z("110", PI / 4.0), z("110", PI / 4.0)]).unwrap();
        assert_eq!(merged.len(), 1);
        assert!((merged[0].angle() - PI / 2.0).abs() < 1e-15);
        assert!(merge_region(&[z("101", PI), z("101", PI)]).unwrap().is_empty());
        let mixed = [z("101", PI), PhaseGadget::x(bits("101"), PI).unwrap()];
        assert!(matches!(merge_region(&mixed), Err(Error::MixedBasis)));
    }

    #[test]
    fn merge_preserves_angle_multiset() {
        use rand::{Rng, SeedableRng};
        use std::collections::HashMap;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let region: Vec<PhaseGadget> = (0..12)
                .map(|_| {
                    let legs = BitVec::from_indices(3, [rng.gen_range(0..3)]).unwrap();
                    let mut legs = legs;
                    if rng.gen_bool(0.5) {
                        legs.flip((legs.first_one().unwrap() + 1) % 3);
                    }
                    PhaseGadget::z(legs, f64::from(rng.gen_range(1..8)) * PI / 4.0).unwrap()
                })
                .collect();
            let mut oracle: HashMap<String, f64> = HashMap::new();
            for g in &region {
                *oracle.entry(g.legs().to_string()).or_default() += g.angle();
            }
            let merged = merge_region(&region).unwrap();
            assert!(merged.len() <= region.len());
            for (legs, total) in &oracle {
                let expect = normalize_angle(*total);
                let got = merged.iter().find(|g| &g.legs().to_string() == legs);
                match got {
                    Some(g) => assert!((g.angle() - expect).abs() < 1e-9),
                    None => assert_eq!(expect, 0.0),
                }
            }
        }
    }

    #[test]
    fn singles_come_from_the_first_region() {
        let mut p = MixedPhasePolynomial::from_gadgets(
            3,
            [
                PhaseGadget::z(bits("001"), 0.3).unwrap(),
                PhaseGadget::x(bits("010"), 0.7).unwrap(),
            ],
        )
        .unwrap();
        let gates = p.extract_leading_singles();
        assert_eq!(
            gates,
            vec![
                Gate::Rz {
                    qubit: 2,
                    angle: 0.3
                },
                Gate::Rx {
                    qubit: 1,
                    angle: 0.7
                }
            ]
        );
        assert!(p.is_empty());

        let mut q = worked_example();
        assert!(q.extract_leading_singles().is_empty());
        assert_eq!(q, worked_example());

        let mut w2 = MixedPhasePolynomial::from_gadgets(3, [PhaseGadget::z(bits("011"), 1.0).unwrap()]).unwrap();
        assert!(w2.extract_leading_singles().is_empty());
    }

    #[test]
    fn reverse_simple_cases() {
        let p = MixedPhasePolynomial::from_gadgets(3, [PhaseGadget::z(bits("110"), 1.0).unwrap()]).unwrap();
        let r = p.reverse();
        assert_eq!(r.gadgets()[0].legs().to_string(), "110");
        assert!((r.gadgets()[0].angle() - (TAU - 1.0)).abs() < 1e-15);
        assert!(r.tail().is_identity());
        assert_eq!(MixedPhasePolynomial::new(4).reverse(), MixedPhasePolynomial::new(4));
    }

    #[test]
    fn naive_ladder_shape() {
        let g = PhaseGadget::z(bits("111"), 0.3).unwrap();
        assert_eq!(
            g.naive_circuit(),
            vec![
                Gate::cnot(0, 1),
                Gate::cnot(1, 2),
                Gate::Rz {
                    qubit: 2,
                    angle: 0.3
                },
                Gate::cnot(1, 2),
                Gate::cnot(0, 1),
            ]
        );
        let single = PhaseGadget::x(bits("0100"), 0.3).unwrap();
        assert_eq!(cnot_count(&single.naive_circuit()), 0);
        for k in 1..=6 {
            let legs = BitVec::from_indices(6, 0..k).unwrap();
            assert_eq!(cnot_count(&PhaseGadget::x(legs, 1.0).unwrap().naive_circuit()), 2 * (k - 1));
        }
    }

    #[test]
    fn angles_are_canonical() {
        assert_eq!(normalize_angle(TAU), 0.0);
        assert_eq!(normalize_angle(-1e-13), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 3.0 * PI / 2.0).abs() < 1e-15);
        assert!(PhaseGadget::z(BitVec::zeros(3), 1.0).is_err());
    }
}

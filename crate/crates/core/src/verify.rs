//! Dense-unitary equivalence oracle for small registers.
//!
//! Basis states are indexed little-endian: qubit `q` is bit `q` of the index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf2::ParityMatrix;
use crate::ir::{Basis, Gate, MixedPhasePolynomial, PhaseGadget};
use crate::synthesis::QubitMapping;

pub const MAX_QUBITS: usize = 12;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// A `2^n × 2^n` matrix stored column-major; column `j` is `U|j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let dim = 1usize << n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for j in 0..dim {
            data[j * dim + j] = Complex64::new(1.0, 0.0);
        }
        Ok(DenseUnitary { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry `⟨row|U|col⟩`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim() + row]
    }

    fn columns_mut(&mut self) -> impl Iterator<Item = &mut [Complex64]> {
        let dim = self.dim();
        self.data.chunks_mut(dim)
    }

    /// Left-multiplies by `gate`.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let n = self.n;
        match *gate {
            Gate::Cnot { control, target } => {
                crate::error::check_pair(control, target, n)?;
                let (c, t) = (1usize << control, 1usize << target);
                for col in self.columns_mut() {
                    for x in 0..col.len() {
                        if x & c != 0 && x & t == 0 {
                            col.swap(x, x | t);
                        }
                    }
                }
            }
            Gate::Rz { qubit, angle } => {
                crate::error::check_index(qubit, n)?;
                let legs = 1usize << qubit;
                self.apply_z_phase(legs, angle);
            }
            Gate::Rx { qubit, angle } => {
                crate::error::check_index(qubit, n)?;
                self.apply_x_rotation(1 << qubit, angle);
            }
        }
        Ok(())
    }

    pub fn apply_gadget(&mut self, g: &PhaseGadget) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.n(),
            });
        }
        let legs = g.legs().ones().fold(0usize, |m, q| m | 1 << q);
        match g.basis() {
            Basis::Z => self.apply_z_phase(legs, g.angle()),
            Basis::X => self.apply_x_rotation(legs, g.angle()),
        }
        Ok(())
    }

    /// `exp(-iα/2 · Z^legs)`.
    fn apply_z_phase(&mut self, legs: usize, angle: f64) {
        let even = Complex64::from_polar(1.0, -angle / 2.0);
        let odd = even.conj();
        for col in self.columns_mut() {
            for (x, amp) in col.iter_mut().enumerate() {
                *amp *= if (x & legs).count_ones().is_multiple_of(2) { even } else { odd };
            }
        }
    }

    /// `exp(-iα/2 · X^legs) = cos(α/2)·I − i·sin(α/2)·X^legs`.
    fn apply_x_rotation(&mut self, legs: usize, angle: f64) {
        let c = Complex64::new((angle / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(angle / 2.0).sin());
        let high = 1usize << (usize::BITS - 1 - legs.leading_zeros());
        for col in self.columns_mut() {
            for x in 0..col.len() {
                // visit each {x, x^legs} pair once
                if x & high == 0 {
                    let y = x ^ legs;
                    let (a, b) = (col[x], col[y]);
                    col[x] = c * a + s * b;
                    col[y] = s * a + c * b;
                }
            }
        }
    }

    /// Left-multiplies by the linear reversible map `|x⟩ ↦ |Mx⟩`.
    pub fn apply_linear(&mut self, m: &ParityMatrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        let masks: Vec<usize> = m
            .rows()
            .iter()
            .map(|r| r.ones().fold(0usize, |acc, q| acc | 1 << q))
            .collect();
        let image: Vec<usize> = (0..self.dim())
            .map(|x| {
                masks
                    .iter()
                    .enumerate()
                    .fold(0, |y, (i, &mask)| y | (((x & mask).count_ones() as usize & 1) << i))
            })
            .collect();
        self.permute_basis(&image);
        Ok(())
    }

    /// Left-multiplies by the permutation `|x⟩ ↦ |image[x]⟩`.
    fn permute_basis(&mut self, image: &[usize]) {
        let mut buf = vec![Complex64::new(0.0, 0.0); image.len()];
        for col in self.columns_mut() {
            for (x, &y) in image.iter().enumerate() {
                buf[y] = col[x];
            }
            col.copy_from_slice(&buf);
        }
    }

    /// Left-multiplies by `P_π`, where `P_π|x⟩ = |y⟩` with `y[π(q)] = x[q]`.
    pub fn apply_mapping(&mut self, map: &QubitMapping) -> Result<()> {
        if map.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: map.n(),
            });
        }
        let image = mapping_image(map, self.dim());
        self.permute_basis(&image);
        Ok(())
    }

    /// Right-multiplies by `P_π`.
    pub fn then_mapping_first(&mut self, map: &QubitMapping) -> Result<()> {
        if map.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: map.n(),
            });
        }
        // (U·P)|x⟩ = U|P x⟩: column x of the product is column image[x] of U
        let image = mapping_image(map, self.dim());
        let dim = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for (x, &y) in image.iter().enumerate() {
            data[x * dim..(x + 1) * dim].copy_from_slice(&self.data[y * dim..(y + 1) * dim]);
        }
        self.data = data;
        Ok(())
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let dim = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for col in 0..dim {
            for row in 0..dim {
                data[row * dim + col] = self.data[col * dim + row].conj();
            }
        }
        DenseUnitary { n: self.n, data }
    }

    /// `self · other` (other acts first).
    pub fn mul(&self, other: &DenseUnitary) -> Result<DenseUnitary> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let dim = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for j in 0..dim {
            let out = &mut data[j * dim..(j + 1) * dim];
            for k in 0..dim {
                let b = other.data[j * dim + k];
                if b.norm_sqr() == 0.0 {
                    continue;
                }
                for (o, a) in out.iter_mut().zip(&self.data[k * dim..(k + 1) * dim]) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseUnitary { n: self.n, data })
    }

    /// Frobenius distance to `other` after the best global phase alignment.
    pub fn phase_distance(&self, other: &DenseUnitary) -> f64 {
        assert_eq!(self.n, other.n);
        let overlap: Complex64 = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = if overlap.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            overlap / overlap.norm()
        };
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * phase - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of `U·U† − I`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.mul(&self.adjoint()).expect("same size");
        let id = DenseUnitary::identity(self.n).expect("size already validated");
        prod.data
            .iter()
            .zip(&id.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn mapping_image(map: &QubitMapping, dim: usize) -> Vec<usize> {
    (0..dim)
        .map(|x| {
            map.as_slice()
                .iter()
                .enumerate()
                .fold(0, |y, (q, &p)| y | ((x >> q) & 1) << p)
        })
        .collect()
}

/// Product of the gate matrices, first gate applied first.
pub fn unitary_of_gates(gates: &[Gate], n: usize) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(n)?;
    for g in gates {
        u.apply_gate(g)?;
    }
    Ok(u)
}

/// Gadgets in list order, then the tail, times the stored global phase.
pub fn unitary_of_polynomial(p: &MixedPhasePolynomial) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(p.n())?;
    for g in p.gadgets() {
        u.apply_gadget(g)?;
    }
    u.apply_linear(p.tail())?;
    if p.global_phase() != 0.0 {
        let phase = Complex64::from_polar(1.0, p.global_phase());
        u.data.iter_mut().for_each(|a| *a *= phase);
    }
    Ok(u)
}

/// Whether a circuit `b`, reading logical qubit `q` from register
/// `in_map[q]` and leaving it on register `out_map[q]`, implements `a`:
/// `P_out⁻¹ · b · P_in ≈ e^{iθ}·a` in Frobenius norm.
pub fn equivalent(
    a: &DenseUnitary,
    b: &DenseUnitary,
    in_map: &QubitMapping,
    out_map: &QubitMapping,
    tol: f64,
) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let mut logical = b.clone();
    logical.then_mapping_first(in_map)?;
    logical.apply_mapping(&out_map.inverse())?;
    Ok(a.phase_distance(&logical) <= tol)
}

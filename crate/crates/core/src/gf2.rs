//! Bit vectors and square matrices over GF(2).
//!
//! Rows are packed into 64-bit words; every row operation is a word-wise XOR.
//! A [`ParityMatrix`] row `i` is the parity (a linear combination of input
//! bits) held by register `i` after some CNOT network.

use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::error::{check_index, check_pair, Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: smallvec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in indices {
            check_index(i, len)?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics when `index >= len`, like slice indexing.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit {index} out of range for length {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    pub fn try_get(&self, index: usize) -> Result<bool> {
        check_index(index, self.len)?;
        Ok(self.get(index))
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit {index} out of range for length {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit {index} out of range for length {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * WORD + bit)
                }
            })
        })
    }

    /// Swaps the values at two positions.
    pub fn swap_bits(&mut self, a: usize, b: usize) {
        let (va, vb) = (self.get(a), self.get(b));
        self.set(a, vb);
        self.set(b, va);
    }
}

/// Big-endian 0/1 string: index 0 is the leftmost character.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Square matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParityMatrix {
    rows: Vec<BitVec>,
}

impl ParityMatrix {
    pub fn identity(n: usize) -> Self {
        ParityMatrix {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        ParityMatrix {
            rows: vec![BitVec::zeros(n); n],
        }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(ParityMatrix { rows })
    }

    /// Builds the parity matrix of a CNOT sequence applied in order.
    pub fn from_cnots(n: usize, cnots: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut m = Self::identity(n);
        for (c, t) in cnots {
            m.apply_cnot(c, t)?;
        }
        Ok(m)
    }

    /// Permutation matrix with `row perm[c] = e_c`, i.e. register `perm[c]`
    /// holds input bit `c`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut rows = vec![BitVec::zeros(n); n];
        for (c, &r) in perm.iter().enumerate() {
            rows[r].set(c, true);
        }
        ParityMatrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value)
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    pub fn add_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let (d, s) = if dst < src {
            let (lo, hi) = self.rows.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        d.xor_assign(s);
    }

    /// Appends `CNOT(control, target)` after the network: the target register
    /// now also holds the control's parity.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_pair(control, target, self.n())?;
        self.add_row(target, control);
        Ok(())
    }

    /// Prepends `CNOT(control, target)` before the network (column operation
    /// `col[control] ^= col[target]`).
    pub fn prepend_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_pair(control, target, self.n())?;
        for row in &mut self.rows {
            if row.get(target) {
                row.flip(control);
            }
        }
        Ok(())
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.n());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Row vector product `vᵀ M`: XOR of the rows selected by `v`.
    pub fn left_apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.n());
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    /// Product `self · other`; as networks, `other` runs first.
    pub fn mul(&self, other: &ParityMatrix) -> Result<ParityMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(ParityMatrix {
            rows: self.rows.iter().map(|r| other.left_apply(r)).collect(),
        })
    }

    pub fn transpose(&self) -> ParityMatrix {
        let n = self.n();
        let mut out = Self::zeros(n);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.weight() == 1 && r.get(i))
    }

    /// If this is a permutation matrix, returns `perm` with
    /// `row perm[c] = e_c`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut perm = vec![usize::MAX; n];
        for (r, row) in self.rows.iter().enumerate() {
            if row.weight() != 1 {
                return None;
            }
            let c = row.first_one()?;
            if perm[c] != usize::MAX {
                return None;
            }
            perm[c] = r;
        }
        Some(perm)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let n = self.n();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n()
    }

    /// Inverse by Gauss-Jordan elimination with first-set-bit pivoting.
    pub fn invert(&self) -> Result<ParityMatrix> {
        let n = self.n();
        let mut left = self.rows.clone();
        let mut right = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| left[r].get(col))
                .ok_or(Error::SingularMatrix)?;
            left.swap(col, p);
            right.swap(col, p);
            let (lp, rp) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r != col && left[r].get(col) {
                    left[r].xor_assign(&lp);
                    right[r].xor_assign(&rp);
                }
            }
        }
        Ok(ParityMatrix { rows: right })
    }

    /// A CNOT sequence which, applied in order to the identity, yields this
    /// matrix. Ignores connectivity.
    pub fn cnot_decomposition(&self) -> Result<Vec<(usize, usize)>> {
        // Reduce the inverse to the identity with row operations E_1..E_k;
        // then self = E_k ⋯ E_1, i.e. the network E_1, …, E_k in order.
        let mut work = self.invert()?;
        let n = self.n();
        let mut ops = Vec::new();
        for col in 0..n {
            if !work.get(col, col) {
                let p = (col + 1..n)
                    .find(|&r| work.get(r, col))
                    .ok_or(Error::SingularMatrix)?;
                work.add_row(col, p);
                ops.push((p, col));
            }
            for r in 0..n {
                if r != col && work.get(r, col) {
                    work.add_row(r, col);
                    ops.push((col, r));
                }
            }
        }
        debug_assert!(work.is_identity());
        Ok(ops)
    }
}

impl fmt::Debug for ParityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| r.to_string())).finish()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_invertible(n: usize, rng: &mut impl Rng) -> ParityMatrix {
        let mut m = ParityMatrix::identity(n);
        for _ in 0..(4 * n * n) {
            let c = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            if c != t {
                m.apply_cnot(c, t).unwrap();
            }
        }
        m
    }

    fn elementary(n: usize, control: usize, target: usize) -> Vec<Vec<u8>> {
        let mut e: Vec<Vec<u8>> = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        e[target][control] = 1;
        e
    }

    fn dense(m: &ParityMatrix) -> Vec<Vec<u8>> {
        (0..m.n())
            .map(|i| (0..m.n()).map(|j| u8::from(m.get(i, j))).collect())
            .collect()
    }

    fn dense_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, k| acc ^ (a[i][k] & b[k][j])))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_base_cases() {
        assert_eq!(dense(&ParityMatrix::identity(1)), vec![vec![1]]);
        let id3 = ParityMatrix::identity(3);
        for i in 0..3 {
            assert_eq!(id3.row(i), &BitVec::unit(3, i));
        }
        for n in 1..20 {
            assert!(ParityMatrix::identity(n).is_invertible());
        }
    }

    #[test]
    fn cnot_updates_target_row() {
        let mut m = ParityMatrix::identity(2);
        m.apply_cnot(0, 1).unwrap();
        assert_eq!(m.row(0).to_string(), "10");
        assert_eq!(m.row(1).to_string(), "11");
        m.apply_cnot(0, 1).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn cnot_rejects_bad_indices() {
        let mut m = ParityMatrix::identity(3);
        assert!(matches!(m.apply_cnot(1, 1), Err(Error::SameQubit(1))));
        assert!(matches!(
            m.apply_cnot(0, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn cnot_matches_elementary_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_invertible(6, &mut rng);
        let mut after = m.clone();
        after.apply_cnot(2, 5).unwrap();
        assert_eq!(dense(&after), dense_mul(&elementary(6, 2, 5), &dense(&m)));

        let mut before = m.clone();
        before.prepend_cnot(2, 5).unwrap();
        assert_eq!(dense(&before), dense_mul(&dense(&m), &elementary(6, 2, 5)));
    }

    #[test]
    fn invert_known_cases() {
        let id5 = ParityMatrix::identity(5);
        assert_eq!(id5.invert().unwrap(), id5);
        let cx = ParityMatrix::from_cnots(3, [(0, 1)]).unwrap();
        assert_eq!(cx.invert().unwrap(), cx);
        assert!(matches!(
            ParityMatrix::zeros(3).invert(),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn invert_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = random_invertible(8, &mut rng);
            let inv = m.invert().unwrap();
            assert!(m.mul(&inv).unwrap().is_identity());
            assert!(inv.mul(&m).unwrap().is_identity());
        }
    }

    #[test]
    fn rank_known_row_space() {
        assert_eq!(ParityMatrix::identity(4).rank(), 4);
        assert_eq!(ParityMatrix::zeros(4).rank(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 0..=6 {
            let basis = random_invertible(6, &mut rng);
            let mut rows: Vec<BitVec> = basis.rows()[..k].to_vec();
            while rows.len() < 6 {
                let mut combo = BitVec::zeros(6);
                for r in &basis.rows()[..k] {
                    if rng.gen_bool(0.5) {
                        combo.xor_assign(r);
                    }
                }
                rows.push(combo);
            }
            let pos = rng.gen_range(0..6);
            rows.swap(0, pos);
            assert_eq!(ParityMatrix::from_rows(rows).unwrap().rank(), k);
        }
    }

    #[test]
    fn bitvec_basics() {
        let v = BitVec::from_indices(70, [0, 3, 64, 69]).unwrap();
        assert_eq!(v.weight(), 4);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 3, 64, 69]);
        assert_eq!(v.first_one(), Some(0));
        assert!(v.try_get(70).is_err());
        assert_eq!(BitVec::from_bools(&[false, true, true]).to_string(), "011");
    }

    #[test]
    fn decomposition_replays() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..10 {
            let m = random_invertible(n, &mut rng);
            let ops = m.cnot_decomposition().unwrap();
            assert_eq!(ParityMatrix::from_cnots(n, ops).unwrap(), m);
        }
    }

    fn arb_cnots(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
        prop::collection::vec((0..n, 0..n), 0..40)
            .prop_map(|v| v.into_iter().filter(|(c, t)| c != t).collect())
    }

    proptest! {
        #[test]
        fn cnot_is_an_involution(ops in arb_cnots(7), c in 0usize..7, t in 0usize..7) {
            prop_assume!(c != t);
            let m = ParityMatrix::from_cnots(7, ops).unwrap();
            let mut twice = m.clone();
            twice.apply_cnot(c, t).unwrap();
            twice.apply_cnot(c, t).unwrap();
            prop_assert_eq!(&twice, &m);
            prop_assert_eq!(m.rank(), 7);
        }

        #[test]
        fn inverse_is_an_involution(ops in arb_cnots(6)) {
            let m = ParityMatrix::from_cnots(6, ops).unwrap();
            prop_assert_eq!(m.invert().unwrap().invert().unwrap(), m);
        }
    }
}

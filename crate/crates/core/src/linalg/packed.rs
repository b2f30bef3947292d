//! Bit-packed vectors over F_2, 64 coordinates per word.

use super::FqVector;
use crate::error::{Error, Result};
use crate::gf::Elem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> BitVector {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Packs a vector over F_2. Other fields are rejected.
    pub fn from_fq(v: &FqVector) -> Result<BitVector> {
        if v.field().q() != 2 {
            return Err(Error::UnsupportedOrder(v.field().q()));
        }
        let mut out = BitVector::zeros(v.len());
        for (i, c) in v.coords().iter().enumerate() {
            if !c.is_zero() {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn to_fq(&self, field: &crate::gf::Field) -> FqVector {
        let coords = (0..self.len)
            .map(|i| if self.get(i) { Elem::ONE } else { Elem::ZERO })
            .collect();
        FqVector::from_raw(field, coords)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn lowest_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Rank over F_2 by XOR elimination on packed rows.
pub fn packed_rank(rows: &[BitVector]) -> usize {
    let mut basis: Vec<(usize, BitVector)> = Vec::new();
    for r in rows {
        let mut w = r.clone();
        for (p, b) in &basis {
            if w.get(*p) {
                w.xor_assign(b);
            }
        }
        if let Some(p) = w.lowest_set() {
            basis.push((p, w));
        }
    }
    basis.len()
}

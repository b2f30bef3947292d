//! Linear [n,k,d] codes over F_q.
//!
//! Two independent minimum-distance algorithms are provided and
//! cross-checked in tests: exhaustive codeword enumeration
//! ([`LinearCode::min_distance`]) and the parity-check column criterion
//! ([`LinearCode::min_distance_at_least`]): d >= D iff every D-1 columns of H
//! are linearly independent.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::combin::ColexSubsets;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{basis_indices, packed_rank, BitVector, FqMatrix, FqVector};

/// Default cap on the number of codewords enumerated by `min_distance`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Minimum distance of a code. The zero code has no nonzero codeword and gets
/// the `Infinite` sentinel, written as `0` in reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_at_least(self, d: usize) -> bool {
        match self {
            Distance::Finite(x) => x >= d,
            Distance::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "0"),
        }
    }
}

/// Outcome of the column-independence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnCheck {
    pub holds: bool,
    /// A linearly dependent set of parity-check columns when `holds` is false.
    pub witness: Option<Vec<usize>>,
}

/// Whether an [n,k,d] code is allowed by the Singleton bound k + d <= n + 1.
pub fn singleton_ok(n: usize, k: usize, d: usize) -> bool {
    k + d <= n + 1
}

/// An [n,k] linear code with full-rank generator and parity-check matrices.
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    gen: FqMatrix,
    pchk: FqMatrix,
    d_known: OnceLock<Distance>,
    d_lower: AtomicUsize,
}

impl Clone for LinearCode {
    fn clone(&self) -> LinearCode {
        let d_known = OnceLock::new();
        if let Some(d) = self.d_known.get() {
            let _ = d_known.set(*d);
        }
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            gen: self.gen.clone(),
            pchk: self.pchk.clone(),
            d_known,
            d_lower: AtomicUsize::new(self.d_lower()),
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("q", &self.field.q())
            .field("n", &self.n)
            .field("k", &self.k)
            .field("d_known", &self.d_known.get())
            .field("d_lower", &self.d_lower())
            .finish()
    }
}

impl LinearCode {
    /// The code {x : H x^T = 0}. Dependent rows of H are dropped from the
    /// stored parity-check matrix.
    pub fn from_parity_check(h: &FqMatrix) -> LinearCode {
        let rows = basis_indices(&h.row_vectors()).expect("rows share a field and length");
        let pchk = h.select_rows(&rows);
        let kernel = h.kernel_basis();
        let gen = FqMatrix::from_rows(h.field(), h.cols(), &kernel).expect("kernel vectors fit");
        LinearCode::from_parts(gen, pchk)
    }

    /// The row space of G. Dependent rows of G are dropped.
    pub fn from_generator(g: &FqMatrix) -> LinearCode {
        let rows = basis_indices(&g.row_vectors()).expect("rows share a field and length");
        let gen = g.select_rows(&rows);
        let kernel = g.kernel_basis();
        let pchk = FqMatrix::from_rows(g.field(), g.cols(), &kernel).expect("kernel vectors fit");
        LinearCode::from_parts(gen, pchk)
    }

    fn from_parts(gen: FqMatrix, pchk: FqMatrix) -> LinearCode {
        LinearCode {
            field: gen.field().clone(),
            n: gen.cols(),
            k: gen.rows(),
            gen,
            pchk,
            d_known: OnceLock::new(),
            d_lower: AtomicUsize::new(1),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.gen
    }

    pub fn parity_check(&self) -> &FqMatrix {
        &self.pchk
    }

    /// The exact minimum distance, if it has been computed.
    pub fn d_known(&self) -> Option<Distance> {
        self.d_known.get().copied()
    }

    /// Best certified lower bound on the minimum distance.
    pub fn d_lower(&self) -> usize {
        let lower = self.d_lower.load(Ordering::Relaxed);
        match self.d_known() {
            Some(Distance::Finite(d)) => lower.max(d),
            _ => lower,
        }
    }

    /// Whether `x` is a codeword.
    pub fn contains(&self, x: &FqVector) -> Result<bool> {
        Ok(self.pchk.mul_vec(x)?.is_zero())
    }

    /// Checks G H^T = 0 and the ranks of both matrices.
    pub fn is_consistent(&self) -> bool {
        let prod = self.gen.mul(&self.pchk.transpose()).expect("shapes agree");
        prod.is_zero() && self.gen.rank() == self.k && self.pchk.rank() == self.n - self.k
    }

    /// Number of codewords, q^k, if it fits in a u128.
    pub fn size(&self) -> Option<u128> {
        (self.field.q() as u128).checked_pow(self.k as u32)
    }

    /// All codewords, in message counter order.
    pub fn codewords(&self, budget: u128) -> Result<Vec<FqVector>> {
        let needed = self.size().unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let f = &self.field;
        let q = f.q();
        let mut out = Vec::with_capacity(needed as usize);
        let mut digits = vec![0usize; self.k];
        loop {
            let mut cw = FqVector::zero(f, self.n);
            for (i, &d) in digits.iter().enumerate() {
                if d != 0 {
                    cw.add_scaled_assign(Elem::from_code(d as u8), &self.gen.row(i));
                }
            }
            out.push(cw);
            let Some(pos) = digits.iter().position(|&d| d + 1 < q) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
        Ok(out)
    }

    /// Exact minimum distance by enumerating all q^k - 1 nonzero codewords.
    /// The result is cached.
    pub fn min_distance(&self, budget: u128) -> Result<Distance> {
        if let Some(d) = self.d_known() {
            return Ok(d);
        }
        if self.k == 0 {
            return Ok(*self.d_known.get_or_init(|| Distance::Infinite));
        }
        let needed = self.size().unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let d = if self.field.q() == 2 {
            min_weight_binary(&self.gen)
        } else {
            min_weight_general(&self.gen)
        };
        Ok(*self.d_known.get_or_init(|| Distance::Finite(d)))
    }

    /// Whether d >= `d`, decided from the parity-check columns alone.
    ///
    /// Subsets of at most d-1 columns are scanned smallest size first and in
    /// colexicographic order within a size; the first dependent subset is
    /// returned as the witness.
    pub fn min_distance_at_least(&self, d: usize) -> ColumnCheck {
        let cols = self.pchk.columns();
        let max_size = d.saturating_sub(1).min(self.n);
        let binary = self.field.q() == 2;
        let packed: Vec<BitVector> = if binary {
            cols.iter()
                .map(|c| BitVector::from_fq(c).expect("binary field"))
                .collect()
        } else {
            Vec::new()
        };
        let dependent = |subset: &Vec<usize>| -> bool {
            if binary {
                let rows: Vec<BitVector> = subset.iter().map(|&i| packed[i].clone()).collect();
                packed_rank(&rows) < subset.len()
            } else {
                let vs: Vec<FqVector> = subset.iter().map(|&i| cols[i].clone()).collect();
                crate::linalg::rank_of(&vs).expect("columns share a shape") < subset.len()
            }
        };
        const BATCH: usize = 4096;
        for size in 1..=max_size {
            let mut it = ColexSubsets::new(self.n, size);
            loop {
                let batch: Vec<Vec<usize>> = it.by_ref().take(BATCH).collect();
                if batch.is_empty() {
                    break;
                }
                if let Some(w) = batch.par_iter().find_first(|s| dependent(s)) {
                    return ColumnCheck {
                        holds: false,
                        witness: Some(w.clone()),
                    };
                }
            }
        }
        self.d_lower.fetch_max(d, Ordering::Relaxed);
        ColumnCheck {
            holds: true,
            witness: None,
        }
    }
}

/// Splits the k message digits into a parallel prefix (the top digits) and a
/// sequential suffix.
fn prefix_len(k: usize, q: usize) -> usize {
    let mut s = 0;
    let mut count = 1usize;
    while s < k && count < 256 {
        count *= q;
        s += 1;
    }
    s
}

fn min_weight_binary(gen: &FqMatrix) -> usize {
    let k = gen.rows();
    let n = gen.cols();
    let rows: Vec<BitVector> = gen
        .row_vectors()
        .iter()
        .map(|r| BitVector::from_fq(r).expect("binary field"))
        .collect();
    let top = prefix_len(k, 2);
    let low = k - top;
    (0u64..1 << top)
        .into_par_iter()
        .map(|prefix| {
            let mut cw = BitVector::zeros(n);
            for b in 0..top {
                if prefix >> b & 1 == 1 {
                    cw.xor_assign(&rows[low + b]);
                }
            }
            let mut best = if prefix == 0 { usize::MAX } else { cw.weight() };
            // Gray code over the low digits: step i flips bit trailing_zeros(i)
            for i in 1u64..1 << low {
                cw.xor_assign(&rows[i.trailing_zeros() as usize]);
                best = best.min(cw.weight());
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn min_weight_general(gen: &FqMatrix) -> usize {
    let f = gen.field();
    let q = f.q();
    let k = gen.rows();
    let n = gen.cols();
    // scaled[i][c] = c * row_i, as raw codes
    let scaled: Vec<Vec<Vec<u8>>> = (0..k)
        .map(|i| {
            (0..q)
                .map(|c| {
                    let row = f.mul_row(c as u8);
                    gen.row_slice(i).iter().map(|e| row[e.code() as usize]).collect()
                })
                .collect()
        })
        .collect();
    // step[i][c] = (c+1)*row_i - c*row_i, wrapping at c = q-1
    let step: Vec<Vec<Vec<u8>>> = (0..k)
        .map(|i| {
            (0..q)
                .map(|c| {
                    let next = (c + 1) % q;
                    (0..n)
                        .map(|j| f.add_code(scaled[i][next][j], f.neg_code(scaled[i][c][j])))
                        .collect()
                })
                .collect()
        })
        .collect();
    let top = prefix_len(k, q);
    let low = k - top;
    let prefixes = q.pow(top as u32);
    (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let mut cw = vec![0u8; n];
            let mut p = prefix;
            for row in &scaled[low..k] {
                let c = p % q;
                p /= q;
                for (x, &y) in cw.iter_mut().zip(&row[c]) {
                    *x = f.add_code(*x, y);
                }
            }
            let weight = |cw: &[u8]| cw.iter().filter(|&&x| x != 0).count();
            let mut best = if prefix == 0 { usize::MAX } else { weight(&cw) };
            let mut digits = vec![0usize; low];
            while let Some(pos) = digits.iter().position(|&d| d + 1 < q) {
                for i in 0..pos {
                    // digit i wraps from q-1 to 0
                    for (x, &y) in cw.iter_mut().zip(&step[i][q - 1]) {
                        *x = f.add_code(*x, y);
                    }
                    digits[i] = 0;
                }
                for (x, &y) in cw.iter_mut().zip(&step[pos][digits[pos]]) {
                    *x = f.add_code(*x, y);
                }
                digits[pos] += 1;
                best = best.min(weight(&cw));
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn repetition_code() {
        let g = FqMatrix::from_codes(&f2(), &[vec![1, 1, 1, 1, 1]]).unwrap();
        let c = LinearCode::from_generator(&g);
        assert_eq!((c.n(), c.k()), (5, 1));
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), Distance::Finite(5));
        assert!(c.is_consistent());
        assert!(c.min_distance_at_least(5).holds);
        assert!(!c.min_distance_at_least(6).holds);
    }

    #[test]
    fn identity_generator_is_whole_space() {
        let f3 = Field::prime(3).unwrap();
        let c = LinearCode::from_generator(&FqMatrix::identity(&f3, 4));
        assert_eq!(c.k(), 4);
        assert_eq!(c.parity_check().rows(), 0);
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), Distance::Finite(1));
        assert_eq!(c.min_distance_at_least(2).witness, Some(vec![0]));
    }

    #[test]
    fn identity_parity_check_is_zero_code() {
        let c = LinearCode::from_parity_check(&FqMatrix::identity(&f2(), 4));
        assert_eq!((c.n(), c.k()), (4, 0));
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), Distance::Infinite);
        assert_eq!(Distance::Infinite.to_string(), "0");
        assert!(c.is_consistent());
    }

    #[test]
    fn rank_deficient_parity_check_drops_rows() {
        let h = FqMatrix::from_codes(&f2(), &[vec![1, 1, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let c = LinearCode::from_parity_check(&h);
        assert_eq!(c.parity_check().rows(), 2);
        assert_eq!(c.k(), 1);
        assert!(c.is_consistent());
    }

    #[test]
    fn zero_column_is_a_dependent_singleton() {
        let h = FqMatrix::from_codes(&f2(), &[vec![1, 0, 1], vec![0, 0, 1]]).unwrap();
        let c = LinearCode::from_parity_check(&h);
        let check = c.min_distance_at_least(2);
        assert!(!check.holds);
        assert_eq!(check.witness, Some(vec![1]));
    }

    #[test]
    fn budget_is_enforced() {
        let f5 = Field::prime(5).unwrap();
        let c = LinearCode::from_generator(&FqMatrix::identity(&f5, 3));
        assert_eq!(
            c.min_distance(100).unwrap_err(),
            Error::BudgetExceeded { needed: 125, budget: 100 }
        );
    }

    #[test]
    fn singleton() {
        assert!(singleton_ok(8, 2, 5));
        assert!(!singleton_ok(5, 2, 5));
        assert!(singleton_ok(7, 7, 1));
    }

    #[test]
    fn lower_bound_is_recorded() {
        let g = FqMatrix::from_codes(&f2(), &[vec![1, 1, 1, 1, 1, 1]]).unwrap();
        let c = LinearCode::from_generator(&g);
        assert_eq!(c.d_lower(), 1);
        assert!(c.min_distance_at_least(4).holds);
        assert_eq!(c.d_lower(), 4);
        c.min_distance(DEFAULT_BUDGET).unwrap();
        assert_eq!(c.d_lower(), 6);
    }

    #[test]
    fn ternary_hamming_code() {
        // [4,2,3] ternary Hamming code
        let f3 = Field::prime(3).unwrap();
        let h = FqMatrix::from_codes(&f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let c = LinearCode::from_parity_check(&h);
        assert_eq!(c.k(), 2);
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), Distance::Finite(3));
        assert_eq!(c.codewords(100).unwrap().len(), 9);
    }
}

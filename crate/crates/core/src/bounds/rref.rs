//! Exhaustive search over all k-dimensional codes of length n.
//!
//! Every k-dimensional subspace of F_q^n has exactly one generator matrix in
//! reduced row echelon form, so enumerating pivot patterns and the free
//! entries to the right of each pivot visits each code once. The total is the
//! Gaussian binomial [n choose k]_q.

use rayon::prelude::*;

use crate::combin::{gaussian_binomial, LexSubsets};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::FqMatrix;

/// Outcome of a search for an [n,k,>=d] code over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Number of RREF generator matrices examined when none qualifies.
    pub candidates: u128,
    /// The first qualifying generator matrix, in pivot-pattern order.
    pub found: Option<FqMatrix>,
}

impl Certificate {
    pub fn proves_nonexistence(&self) -> bool {
        self.found.is_none()
    }
}

/// Looks for an [n,k] code over `field` with minimum distance at least `d`.
pub fn search_code(field: &Field, n: usize, k: usize, d: usize, budget: u128) -> Result<Certificate> {
    let q = field.q();
    if k == 0 || k > n {
        return Err(Error::PreconditionViolated(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let candidates = gaussian_binomial(n, k, q);
    if candidates > budget {
        return Err(Error::BudgetExceeded {
            needed: candidates,
            budget,
        });
    }
    let patterns: Vec<Vec<usize>> = LexSubsets::new(n, k).collect();
    let found = patterns
        .par_iter()
        .find_map_first(|pivots| search_pattern(field, n, pivots, d));
    let found = found.map(|rows| {
        let rows: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| c as usize).collect())
            .collect();
        FqMatrix::from_codes(field, &rows).expect("codes below q")
    });
    Ok(Certificate {
        q,
        n,
        k,
        d,
        candidates,
        found,
    })
}

/// Runs through all RREF matrices with the given pivot columns.
fn search_pattern(field: &Field, n: usize, pivots: &[usize], d: usize) -> Option<Vec<Vec<u8>>> {
    let k = pivots.len();
    let q = field.q() as u8;
    // free positions: right of the row's pivot and not a pivot column
    let free: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| {
            (pivots[i] + 1..n)
                .filter(|j| !pivots.contains(j))
                .map(move |j| (i, j))
        })
        .collect();
    let mut rows = vec![vec![0u8; n]; k];
    for (i, &p) in pivots.iter().enumerate() {
        rows[i][p] = 1;
    }
    loop {
        if min_weight_at_least(field, &rows, d) {
            return Some(rows);
        }
        // odometer over the free entries, last position fastest
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            let (i, j) = free[pos];
            rows[i][j] += 1;
            if rows[i][j] < q {
                break;
            }
            rows[i][j] = 0;
        }
    }
}

/// Whether every nonzero codeword has weight >= d. Only messages whose first
/// nonzero digit is 1 are tried, since scaling keeps the weight.
fn min_weight_at_least(field: &Field, rows: &[Vec<u8>], d: usize) -> bool {
    let k = rows.len();
    let n = rows[0].len();
    let q = field.q();
    if q == 2 && n <= 64 {
        let masks: Vec<u64> = rows
            .iter()
            .map(|r| r.iter().enumerate().fold(0u64, |m, (j, &c)| m | (c as u64) << j))
            .collect();
        let mut cw = 0u64;
        for i in 1u64..1 << k {
            cw ^= masks[i.trailing_zeros() as usize];
            if (cw.count_ones() as usize) < d {
                return false;
            }
        }
        return true;
    }
    let mut cw = vec![0u8; n];
    for lead in 0..k {
        // messages (0,..,0,1,m_{lead+1},..,m_{k-1})
        for mut m in 0..q.pow((k - lead - 1) as u32) {
            cw.copy_from_slice(&rows[lead]);
            for row in &rows[lead + 1..] {
                let c = (m % q) as u8;
                m /= q;
                if c != 0 {
                    let mul = field.mul_row(c);
                    for (x, &g) in cw.iter_mut().zip(row) {
                        *x = field.add_code(*x, mul[g as usize]);
                    }
                }
            }
            if cw.iter().filter(|&&x| x != 0).count() < d {
                return false;
            }
        }
    }
    true
}

//! Exhaustive search for a largest S_h-linear set in a small space.

use super::{size_bound, Mode};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::FqVector;

/// Largest q^r the search accepts.
pub const SEARCH_SPACE_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSearch {
    pub size: usize,
    /// The first largest set met in DFS order, elements in encoding order.
    pub witness: Vec<FqVector>,
    /// Number of DFS nodes visited.
    pub nodes: u64,
}

/// Vectors of F_q^r as base-q integers, first coordinate most significant.
struct Space {
    field: Field,
    r: usize,
    q: u32,
}

impl Space {
    fn digits(&self, mut x: u32) -> Vec<u8> {
        let mut d = vec![0u8; self.r];
        for c in d.iter_mut().rev() {
            *c = (x % self.q) as u8;
            x /= self.q;
        }
        d
    }

    fn undigits(&self, d: &[u8]) -> u32 {
        d.iter().fold(0u32, |acc, &c| acc * self.q + c as u32)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.q == 2 {
            return a ^ b;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u8> = x.iter().zip(&y).map(|(&u, &v)| self.field.add_code(u, v)).collect();
        self.undigits(&s)
    }

    fn scale(&self, c: u8, a: u32) -> u32 {
        let row = self.field.mul_row(c);
        let d: Vec<u8> = self.digits(a).iter().map(|&x| row[x as usize]).collect();
        self.undigits(&d)
    }
}

/// An S_h-linear set under construction, with every t-combination value
/// kept so a new element can be tested against the current set.
pub(crate) struct Incremental {
    space: Space,
    h: usize,
    mode: Mode,
    chosen: Vec<u32>,
    /// lower[t] holds the values of all t-combinations, t < h.
    lower: Vec<Vec<u32>>,
    /// Occupancy of h-combination values.
    top: Vec<bool>,
    top_log: Vec<u32>,
}

pub(crate) struct Mark {
    lower: Vec<usize>,
    log: usize,
}

impl Incremental {
    /// Empty set in F_q^r; the caller enforces the space cap.
    pub(crate) fn new(field: &Field, r: usize, h: usize, mode: Mode) -> Incremental {
        let q = field.q() as u32;
        let total = (q as usize).pow(r as u32);
        let mut lower = vec![Vec::new(); h];
        lower[0].push(0);
        Incremental {
            space: Space {
                field: field.clone(),
                r,
                q,
            },
            h,
            mode,
            chosen: Vec::new(),
            lower,
            top: vec![false; total],
            top_log: Vec::new(),
        }
    }

    pub(crate) fn total(&self) -> u32 {
        self.top.len() as u32
    }

    pub(crate) fn chosen(&self) -> &[u32] {
        &self.chosen
    }

    fn coefs(&self, x: u32) -> Vec<u8> {
        if x == 0 || self.mode == Mode::Plain {
            vec![1]
        } else {
            (1..self.space.q as u8).collect()
        }
    }

    /// Adds `x` if the set stays S_h and returns the undo mark.
    pub(crate) fn push(&mut self, x: u32) -> Option<Mark> {
        let multiples: Vec<u32> = self.coefs(x).iter().map(|&c| self.space.scale(c, x)).collect();
        let log = self.top_log.len();
        for &w in &self.lower[self.h - 1] {
            for &m in &multiples {
                let v = self.space.add(m, w) as usize;
                if self.top[v] {
                    for u in self.top_log.drain(log..) {
                        self.top[u as usize] = false;
                    }
                    return None;
                }
                self.top[v] = true;
                self.top_log.push(v as u32);
            }
        }
        let lower: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        for t in (1..self.h).rev() {
            let (lo, hi) = self.lower.split_at_mut(t);
            for &y in &lo[t - 1][..lower[t - 1]] {
                for &m in &multiples {
                    hi[0].push(self.space.add(m, y));
                }
            }
        }
        self.chosen.push(x);
        Some(Mark { lower, log })
    }

    pub(crate) fn pop(&mut self, mark: Mark) {
        self.chosen.pop();
        for (level, &m) in self.lower.iter_mut().zip(&mark.lower) {
            level.truncate(m);
        }
        for u in self.top_log.drain(mark.log..) {
            self.top[u as usize] = false;
        }
    }
}

struct Dfs {
    set: Incremental,
    cap: usize,
    best: Vec<u32>,
    nodes: u64,
}

impl Dfs {
    fn run(&mut self, start: u32) -> bool {
        self.nodes += 1;
        let size = self.set.chosen().len();
        if size > self.best.len() {
            self.best = self.set.chosen().to_vec();
            if self.best.len() >= self.cap {
                return true;
            }
        }
        let total = self.set.total();
        for x in start..total {
            if size + (total - x) as usize <= self.best.len() {
                break;
            }
            if let Some(mark) = self.set.push(x) {
                let done = self.run(x + 1);
                self.set.pop(mark);
                if done {
                    return true;
                }
            }
        }
        false
    }
}

/// Size of a largest S_h-linear (or, in plain mode, S_h) set in F_q^r, with
/// the first such set found by a depth-first search over vectors in encoding
/// order. With `must_contain_zero` the search is restricted to sets holding 0.
pub fn exhaustive_max_sh_set(
    field: &Field,
    r: usize,
    h: usize,
    must_contain_zero: bool,
    mode: Mode,
) -> Result<MaxSearch> {
    if h == 0 {
        return Err(Error::HZero);
    }
    let size = (field.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > SEARCH_SPACE_CAP {
        return Err(Error::SpaceTooLarge { size });
    }
    let total = size as u32;
    let cap = if h >= 2 && mode == Mode::Linear {
        // largest integer strictly below the bound; a set found without
        // forcing 0 may still contain it, and that bound is the larger one
        let b = size_bound(field.q(), r, h, true);
        (b.ceil() as usize).saturating_sub(1).min(total as usize)
    } else {
        total as usize
    };
    let mut dfs = Dfs {
        set: Incremental::new(field, r, h, mode),
        cap,
        best: Vec::new(),
        nodes: 0,
    };
    if must_contain_zero {
        dfs.set.push(0).expect("a single element is always S_h");
        dfs.run(1);
    } else {
        dfs.run(0);
    }
    let witness = dfs
        .best
        .iter()
        .map(|&x| FqVector::decode(field, r, x as u128))
        .collect();
    Ok(MaxSearch {
        size: dfs.best.len(),
        witness,
        nodes: dfs.nodes,
    })
}

//! Naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use shlin::io::{load_matrix, load_vectors};
use shlin::{Field, FqMatrix, FqVector, ShSetCandidate};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_set(name: &str, h: usize) -> ShSetCandidate {
    let vf = load_vectors(fixture(name)).unwrap();
    ShSetCandidate::new(&vf.field, vf.r, vf.vectors, h).unwrap()
}

pub fn load_mat(name: &str) -> FqMatrix {
    load_matrix(fixture(name)).unwrap()
}

/// Schoolbook arithmetic on element codes: digits base p are polynomial
/// coefficients, products are reduced by long division.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub p: usize,
    pub m: usize,
    pub q: usize,
    pub modulus: Vec<usize>,
}

impl Oracle {
    pub fn of(field: &Field) -> Oracle {
        Oracle {
            p: field.p(),
            m: field.m(),
            q: field.q(),
            modulus: field.modulus().iter().map(|&c| c as usize).collect(),
        }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.undigits(&s)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.m == 1 {
            return a * b % self.p;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0usize; 2 * self.m - 1];
        for i in 0..self.m {
            for j in 0..self.m {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for top in (self.m..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            for i in 0..=self.m {
                let t = top - self.m + i;
                prod[t] = (prod[t] + self.p * self.p - lead * self.modulus[i]) % self.p;
            }
        }
        self.undigits(&prod[..self.m])
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn add_vec(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn scale_vec(&self, c: usize, a: &[usize]) -> Vec<usize> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// Every vector of length `len`, first coordinate slowest.
    pub fn all_vectors(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.q).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

pub fn codes(v: &FqVector) -> Vec<usize> {
    v.coords().iter().map(|c| c.code() as usize).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Every value of an h-combination (distinct indices, nonzero coefficients)
/// with its multiplicity.
pub fn h_values(a: &ShSetCandidate, h: usize) -> BTreeMap<Vec<usize>, usize> {
    let o = Oracle::of(a.field());
    let elems: Vec<Vec<usize>> = a.elems().iter().map(codes).collect();
    let mut out = BTreeMap::new();
    let coef_tuples = {
        let mut t = vec![Vec::new()];
        for _ in 0..h {
            t = t
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (1..o.q).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        t
    };
    for s in subsets(elems.len(), h) {
        for cs in &coef_tuples {
            let mut acc = vec![0; a.r()];
            for (&i, &c) in s.iter().zip(cs) {
                acc = o.add_vec(&acc, &o.scale_vec(c, &elems[i]));
            }
            *out.entry(acc).or_insert(0) += 1;
        }
    }
    out
}

/// S_h-linear by definition, with the convention that the zero element's
/// coefficient is irrelevant: combinations differing only there coincide.
pub fn naive_sh_linear(a: &ShSetCandidate, h: usize) -> bool {
    let o = Oracle::of(a.field());
    let vals = h_values(a, h);
    let total: usize = vals.values().sum();
    let mut expected = total;
    if a.contains_zero() {
        // each combination using 0 is listed q-1 times
        let with_zero = subsets(a.len() - 1, h - 1).len() * (o.q - 1).pow(h as u32);
        expected = total - with_zero + with_zero / (o.q - 1);
    }
    vals.len() == expected
}

/// Sums of h distinct elements are pairwise distinct.
pub fn naive_sh_plain(a: &ShSetCandidate, h: usize) -> bool {
    let o = Oracle::of(a.field());
    let elems: Vec<Vec<usize>> = a.elems().iter().map(codes).collect();
    let mut seen = std::collections::BTreeSet::new();
    subsets(elems.len(), h).into_iter().all(|s| {
        let sum = s
            .iter()
            .fold(vec![0; a.r()], |acc, &i| o.add_vec(&acc, &elems[i]));
        seen.insert(sum)
    })
}

/// Codewords of the code with parity-check matrix `hm`, by testing all of
/// F_q^n.
pub fn kernel_brute(hm: &FqMatrix) -> Vec<Vec<usize>> {
    let o = Oracle::of(hm.field());
    let rows: Vec<Vec<usize>> = (0..hm.rows()).map(|i| codes(&hm.row(i))).collect();
    o.all_vectors(hm.cols())
        .into_iter()
        .filter(|x| {
            rows.iter().all(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| o.add(acc, o.mul(a, b)))
                    == 0
            })
        })
        .collect()
}

pub fn min_weight_brute(words: &[Vec<usize>]) -> Option<usize> {
    words
        .iter()
        .map(|w| w.iter().filter(|&&c| c != 0).count())
        .filter(|&w| w > 0)
        .min()
}

/// Rank by brute force: log_q of the size of the row span.
pub fn rank_brute(m: &FqMatrix) -> usize {
    let o = Oracle::of(m.field());
    let mut span = std::collections::BTreeSet::new();
    span.insert(vec![0; m.cols()]);
    for i in 0..m.rows() {
        let row = codes(&m.row(i));
        let mut next = span.clone();
        for v in &span {
            for c in 1..o.q {
                next.insert(o.add_vec(v, &o.scale_vec(c, &row)));
            }
        }
        span = next;
    }
    let mut r = 0;
    let mut size = 1;
    while size < span.len() {
        size *= o.q;
        r += 1;
    }
    assert_eq!(size, span.len());
    r
}

pub fn field(q: usize) -> Field {
    Field::from_order(q).unwrap()
}

pub fn vecs(f: &Field, rows: &[&[usize]]) -> Vec<FqVector> {
    rows.iter().map(|r| FqVector::from_codes(f, r).unwrap()).collect()
}

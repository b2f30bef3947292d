//! S_h-linear sets in F_q^r.
//!
//! An h-linear combination of A picks h distinct elements (indices ascending)
//! and nonzero coefficients. When 0 is in A its coefficient is fixed to 1, so
//! combinations that differ only there count once. A is S_h-linear when all
//! canonical combinations have pairwise distinct values; the plain S_h-set
//! notion restricts every coefficient to 1.
//!
//! Combinations are enumerated by index tuple in lexicographic order and then
//! by coefficient tuple with codes ascending.

mod search;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::ControlFlow;

pub use search::{exhaustive_max_sh_set, MaxSearch, SEARCH_SPACE_CAP};
pub(crate) use search::Incremental;

use crate::combin::{binomial, LexSubsets};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{is_linearly_independent, FqVector};

/// Coefficient rule for combinations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Any nonzero coefficients (S_h-linear sets).
    #[default]
    Linear,
    /// All coefficients 1 (S_h-sets).
    Plain,
}

/// An ordered, duplicate-free list of vectors of F_q^r together with h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShSetCandidate {
    field: Field,
    r: usize,
    elems: Vec<FqVector>,
    h: usize,
}

impl ShSetCandidate {
    pub fn new(field: &Field, r: usize, elems: Vec<FqVector>, h: usize) -> Result<ShSetCandidate> {
        for v in &elems {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: v.len(),
                });
            }
        }
        let mut seen = HashMap::with_capacity(elems.len());
        for (i, v) in elems.iter().enumerate() {
            if let Some(first) = seen.insert(v, i) {
                return Err(Error::DuplicateElement { first, second: i });
            }
        }
        if h == 0 {
            return Err(Error::HZero);
        }
        if h > elems.len() {
            return Err(Error::HTooLarge {
                h,
                size: elems.len(),
            });
        }
        Ok(ShSetCandidate {
            field: field.clone(),
            r,
            elems,
            h,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn elems(&self) -> &[FqVector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.elems.iter().any(FqVector::is_zero)
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.elems.iter().position(FqVector::is_zero)
    }

    /// The same elements with a different h.
    pub fn with_h(&self, h: usize) -> Result<ShSetCandidate> {
        ShSetCandidate::new(&self.field, self.r, self.elems.clone(), h)
    }

    /// The elements at `indices`, in that order, with the same h.
    pub fn subset(&self, indices: &[usize]) -> Result<ShSetCandidate> {
        let elems = indices.iter().map(|&i| self.elems[i].clone()).collect();
        ShSetCandidate::new(&self.field, self.r, elems, self.h)
    }

    /// Appends a zero coordinate to every element.
    pub fn embed(&self) -> ShSetCandidate {
        ShSetCandidate {
            field: self.field.clone(),
            r: self.r + 1,
            elems: self.elems.iter().map(FqVector::extend_zero).collect(),
            h: self.h,
        }
    }
}

/// h terms (index into the candidate, nonzero coefficient), indices strictly
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HCombination {
    pub terms: Vec<(usize, Elem)>,
}

impl HCombination {
    /// Indices ascending, coefficients nonzero, and coefficient 1 on the
    /// zero vector.
    pub fn is_canonical(&self, a: &ShSetCandidate) -> bool {
        self.terms.windows(2).all(|w| w[0].0 < w[1].0)
            && self.terms.iter().all(|&(i, c)| {
                i < a.len() && !c.is_zero() && (!a.elems[i].is_zero() || c == Elem::ONE)
            })
    }

    pub fn evaluate(&self, a: &ShSetCandidate) -> FqVector {
        let mut v = FqVector::zero(&a.field, a.r);
        for &(i, c) in &self.terms {
            v.add_scaled_assign(c, &a.elems[i]);
        }
        v
    }

    pub fn indices(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.0).collect()
    }
}

impl fmt::Display for HCombination {
    /// `coef*index + ...` with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (i, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", i + 1)?;
        }
        Ok(())
    }
}

/// Two distinct canonical combinations with the same value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionWitness {
    pub lhs: HCombination,
    pub rhs: HCombination,
    pub value: FqVector,
}

impl fmt::Display for CollisionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} = {:?}", self.lhs, self.value)?;
        write!(f, "{} = {:?}", self.rhs, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Collision(CollisionWitness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&CollisionWitness> {
        match self {
            Verdict::Ok => None,
            Verdict::Collision(w) => Some(w),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => write!(f, "OK"),
            Verdict::Collision(w) => write!(f, "{w}"),
        }
    }
}

/// Element rows pre-multiplied by every coefficient, as raw codes.
struct Prepared<'a> {
    a: &'a ShSetCandidate,
    scaled: Vec<Vec<Vec<u8>>>,
    coefs: Vec<Vec<u8>>,
}

impl<'a> Prepared<'a> {
    fn new(a: &'a ShSetCandidate, mode: Mode) -> Prepared<'a> {
        let f = &a.field;
        let q = f.q();
        let scaled = a
            .elems
            .iter()
            .map(|v| {
                (0..q)
                    .map(|c| {
                        let row = f.mul_row(c as u8);
                        v.coords().iter().map(|e| row[e.code() as usize]).collect()
                    })
                    .collect()
            })
            .collect();
        let coefs = a
            .elems
            .iter()
            .map(|v| {
                if v.is_zero() || mode == Mode::Plain {
                    vec![1]
                } else {
                    (1..q as u8).collect()
                }
            })
            .collect();
        Prepared { a, scaled, coefs }
    }

    /// Calls `visit(indices, coefficient codes, value)` on every canonical
    /// combination in enumeration order.
    fn walk<F>(&self, h: usize, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[u8], &[u8]) -> ControlFlow<()>,
    {
        let r = self.a.r;
        let mut partial = vec![vec![0u8; r]; h + 1];
        let mut coefs = vec![0u8; h];
        for idx in LexSubsets::new(self.a.len(), h) {
            self.walk_coefs(&idx, 0, &mut partial, &mut coefs, &mut visit)?;
        }
        ControlFlow::Continue(())
    }

    fn walk_coefs<F>(
        &self,
        idx: &[usize],
        depth: usize,
        partial: &mut [Vec<u8>],
        coefs: &mut [u8],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[u8], &[u8]) -> ControlFlow<()>,
    {
        if depth == idx.len() {
            return visit(idx, coefs, &partial[depth]);
        }
        let f = &self.a.field;
        let i = idx[depth];
        for &c in &self.coefs[i] {
            coefs[depth] = c;
            let (lo, hi) = partial.split_at_mut(depth + 1);
            for ((out, &x), &y) in hi[0].iter_mut().zip(&lo[depth]).zip(&self.scaled[i][c as usize]) {
                *out = f.add_code(x, y);
            }
            self.walk_coefs(idx, depth + 1, partial, coefs, visit)?;
        }
        ControlFlow::Continue(())
    }
}

fn make_combination(idx: &[usize], coefs: &[u8]) -> HCombination {
    HCombination {
        terms: idx
            .iter()
            .zip(coefs)
            .map(|(&i, &c)| (i, Elem::from_code(c)))
            .collect(),
    }
}

/// Every canonical h-combination with its value, in enumeration order.
pub fn enumerate_h_combinations(a: &ShSetCandidate) -> Vec<(HCombination, FqVector)> {
    enumerate_with_mode(a, Mode::Linear)
}

pub fn enumerate_with_mode(a: &ShSetCandidate, mode: Mode) -> Vec<(HCombination, FqVector)> {
    let prep = Prepared::new(a, mode);
    let mut out = Vec::new();
    let _ = prep.walk(a.h, |idx, coefs, value| {
        let v = FqVector::from_raw(&a.field, value.iter().map(|&c| Elem::from_code(c)).collect());
        out.push((make_combination(idx, coefs), v));
        ControlFlow::Continue(())
    });
    out
}

/// Number of canonical h-combinations:
/// (q-1)^h C(|A|,h) without 0, and
/// (q-1)^(h-1) C(|A|-1,h-1) + (q-1)^h C(|A|-1,h) with 0.
pub fn count_h_combinations(a: &ShSetCandidate) -> u128 {
    count_with_mode(a, Mode::Linear)
}

pub fn count_with_mode(a: &ShSetCandidate, mode: Mode) -> u128 {
    let n = a.len();
    let h = a.h;
    let s = match mode {
        Mode::Linear => a.field.q() as u128 - 1,
        Mode::Plain => 1,
    };
    if a.contains_zero() {
        s.pow(h as u32 - 1) * binomial(n - 1, h - 1) + s.pow(h as u32) * binomial(n - 1, h)
    } else {
        s.pow(h as u32) * binomial(n, h)
    }
}

/// The value set of all h-combinations.
pub fn h_span(a: &ShSetCandidate) -> BTreeSet<FqVector> {
    h_span_with_mode(a, Mode::Linear)
}

pub fn h_span_with_mode(a: &ShSetCandidate, mode: Mode) -> BTreeSet<FqVector> {
    enumerate_with_mode(a, mode).into_iter().map(|(_, v)| v).collect()
}

/// Whether `value` fits into a u128 key, i.e. q^r <= 2^128.
fn fits_u128(a: &ShSetCandidate) -> bool {
    let bits = (a.field.q() as f64).log2() * a.r as f64;
    bits <= 127.0
}

fn key_u128(q: u128, value: &[u8]) -> u128 {
    value.iter().fold(0u128, |acc, &c| acc * q + c as u128)
}

/// Verifies the S_h property.
///
/// On failure the witness is the earliest combination (in enumeration order)
/// whose value is shared, paired with the next combination taking that value.
pub fn verify(a: &ShSetCandidate, mode: Mode) -> Verdict {
    let q = a.field.q() as u128;
    if fits_u128(a) {
        verify_keyed(a, mode, |v| key_u128(q, v))
    } else {
        verify_keyed(a, mode, |v| v.to_vec())
    }
}

fn verify_keyed<K, F>(a: &ShSetCandidate, mode: Mode, key: F) -> Verdict
where
    K: Hash + Eq,
    F: Fn(&[u8]) -> K,
{
    let prep = Prepared::new(a, mode);
    let mut table: HashMap<K, (u64, Option<u64>)> = HashMap::new();
    let mut ordinal = 0u64;
    let _ = prep.walk(a.h, |_, _, value| {
        table
            .entry(key(value))
            .and_modify(|e| {
                if e.1.is_none() {
                    e.1 = Some(ordinal);
                }
            })
            .or_insert((ordinal, None));
        ordinal += 1;
        ControlFlow::Continue(())
    });
    let Some((first, second)) = table
        .values()
        .filter_map(|&(f, s)| s.map(|s| (f, s)))
        .min()
    else {
        return Verdict::Ok;
    };
    let mut found = (None, None);
    let mut ordinal = 0u64;
    let _ = prep.walk(a.h, |idx, coefs, _| {
        if ordinal == first {
            found.0 = Some(make_combination(idx, coefs));
        } else if ordinal == second {
            found.1 = Some(make_combination(idx, coefs));
            return ControlFlow::Break(());
        }
        ordinal += 1;
        ControlFlow::Continue(())
    });
    let (Some(lhs), Some(rhs)) = found else {
        unreachable!("ordinals come from the same enumeration");
    };
    let value = lhs.evaluate(a);
    Verdict::Collision(CollisionWitness { lhs, rhs, value })
}

/// Verdict only, stopping at the first repeated value.
pub fn holds(a: &ShSetCandidate, mode: Mode) -> bool {
    let q = a.field.q() as u128;
    let prep = Prepared::new(a, mode);
    if fits_u128(a) {
        let mut seen = std::collections::HashSet::new();
        prep.walk(a.h, |_, _, v| {
            if seen.insert(key_u128(q, v)) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        })
        .is_continue()
    } else {
        let mut seen = std::collections::HashSet::new();
        prep.walk(a.h, |_, _, v| {
            if seen.insert(v.to_vec()) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        })
        .is_continue()
    }
}

pub fn is_sh_linear(a: &ShSetCandidate) -> Verdict {
    verify(a, Mode::Linear)
}

pub fn is_sh_set(a: &ShSetCandidate) -> Verdict {
    verify(a, Mode::Plain)
}

/// Strict upper bound on the size of an S_h-linear set in F_q^r:
/// (q^r h!)^(1/h)/(q-1) + h - 1 without 0 and
/// (q^r h!/(q-1)^(h-1))^(1/h) + h - 1 with 0. Only meaningful for h >= 2.
pub fn size_bound(q: usize, r: usize, h: usize, contains_zero: bool) -> f64 {
    let qf = q as f64;
    let ln_fact: f64 = (2..=h).map(|i| (i as f64).ln()).sum();
    let ln_num = r as f64 * qf.ln() + ln_fact;
    let hf = h as f64;
    if contains_zero {
        ((ln_num - (hf - 1.0) * (qf - 1.0).ln()) / hf).exp() + hf - 1.0
    } else {
        (ln_num / hf).exp() / (qf - 1.0) + hf - 1.0
    }
}

/// The image of A under a -> v + alpha a.
pub fn translate_scale(a: &ShSetCandidate, v: &FqVector, alpha: Elem) -> Result<ShSetCandidate> {
    if alpha.is_zero() {
        return Err(Error::ScalarZero);
    }
    let elems = a
        .elems
        .iter()
        .map(|x| v.add(&x.scale(alpha)))
        .collect::<Result<Vec<_>>>()?;
    ShSetCandidate::new(&a.field, a.r, elems, a.h)
}

/// A with the zero vector appended, or A itself if it already contains 0.
pub fn adjoin_zero(a: &ShSetCandidate) -> ShSetCandidate {
    let mut out = a.clone();
    if !a.contains_zero() {
        out.elems.push(FqVector::zero(&a.field, a.r));
    }
    out
}

/// Checks that every 2h nonzero elements are linearly independent.
///
/// Returns `Ok(None)` if they are and `Ok(Some(indices))` for the first
/// dependent subset in lexicographic order. Requires 0 in A and 2h < r <= |A|.
pub fn check_2h_subsets_independent(a: &ShSetCandidate) -> Result<Option<Vec<usize>>> {
    if !a.contains_zero() {
        return Err(Error::PreconditionViolated("the set must contain 0".into()));
    }
    let need = 2 * a.h;
    if !(need < a.r && a.r <= a.len()) {
        return Err(Error::PreconditionViolated(format!(
            "need 2h < r <= |A|, got 2h={need}, r={}, |A|={}",
            a.r,
            a.len()
        )));
    }
    let nonzero: Vec<usize> = (0..a.len()).filter(|&i| !a.elems[i].is_zero()).collect();
    for sub in LexSubsets::new(nonzero.len(), need) {
        let vs: Vec<FqVector> = sub.iter().map(|&j| a.elems[nonzero[j]].clone()).collect();
        if !is_linearly_independent(&vs)? {
            return Ok(Some(sub.iter().map(|&j| nonzero[j]).collect()));
        }
    }
    Ok(None)
}

//! Conversions between codes with d >= 2h+1 and S_h-linear sets.
//!
//! The parity-check columns of an [n,k,d >= 2h+1] code together with 0 form
//! an S_h-linear set of n+1 elements in F_q^(n-k). Conversely the nonzero
//! elements of an S_h-linear set containing 0, used as the columns of H,
//! define a code with d >= 2h+1 and dimension t in [n-r, n-2h].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::code::{LinearCode, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{extract_basis, FqMatrix, FqVector};
use crate::shset::{adjoin_zero, holds, translate_scale, Incremental, Mode, ShSetCandidate, SEARCH_SPACE_CAP};
use crate::Elem;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    CodeToSet,
    SetToCode,
    Extend,
    RoundTrip,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::CodeToSet => "code-to-set",
            Direction::SetToCode => "set-to-code",
            Direction::Extend => "extend",
            Direction::RoundTrip => "round-trip",
        };
        f.write_str(s)
    }
}

/// One named verification step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// What a conversion did and which checks it ran.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub direction: Direction,
    /// Input and output parameters as key/value pairs.
    pub summary: Vec<(&'static str, String)>,
    pub checks: Vec<Check>,
    /// For round trips: column j of the rebuilt H is column `permutation[j]`
    /// of the original.
    pub permutation: Option<Vec<usize>>,
}

impl CorrespondenceReport {
    fn new(direction: Direction) -> CorrespondenceReport {
        CorrespondenceReport {
            direction,
            summary: Vec::new(),
            checks: Vec::new(),
            permutation: None,
        }
    }

    fn put(&mut self, key: &'static str, value: impl ToString) {
        self.summary.push((key, value.to_string()));
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "direction={}", self.direction)?;
        for (k, v) in &self.summary {
            writeln!(f, "{k}={v}")?;
        }
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "fail" };
            if c.detail.is_empty() {
                writeln!(f, "check.{}={status}", c.name)?;
            } else {
                writeln!(f, "check.{}={status} ({})", c.name, c.detail)?;
            }
        }
        if let Some(p) = &self.permutation {
            let p: Vec<String> = p.iter().map(|j| (j + 1).to_string()).collect();
            writeln!(f, "permutation={}", p.join(","))?;
        }
        write!(f, "valid={}", self.is_valid())
    }
}

/// A conversion result with its report.
#[derive(Clone, Debug)]
pub struct Conversion<T> {
    pub output: T,
    pub report: CorrespondenceReport,
}

/// Columns of the parity-check matrix of `c` plus the zero vector.
pub fn code_to_set(c: &LinearCode, h: usize) -> Result<Conversion<ShSetCandidate>> {
    if h == 0 {
        return Err(Error::HZero);
    }
    let cols = c.parity_check().columns();
    let mut seen: HashMap<&FqVector, usize> = HashMap::new();
    for (j, col) in cols.iter().enumerate() {
        if col.is_zero() {
            return Err(Error::DuplicateColumns { first: j, second: j });
        }
        if let Some(first) = seen.insert(col, j) {
            return Err(Error::DuplicateColumns { first, second: j });
        }
    }
    let redundancy = c.redundancy();
    if redundancy < 2 * h {
        return Err(Error::RedundancyTooSmall {
            redundancy,
            needed: 2 * h,
        });
    }
    let required = 2 * h + 1;
    let mut report = CorrespondenceReport::new(Direction::CodeToSet);
    report.put("q", c.field().q());
    report.put("n", c.n());
    report.put("k", c.k());
    report.put("h", h);
    if c.d_lower() < required {
        let check = c.min_distance_at_least(required);
        if let Some(w) = check.witness {
            return Err(Error::DistanceTooSmall {
                required,
                found: w.len(),
            });
        }
    }
    report.check("distance", true, format!("d>={}", c.d_lower()));
    let mut elems = cols;
    elems.push(FqVector::zero(c.field(), redundancy));
    let set = ShSetCandidate::new(c.field(), redundancy, elems, h)?;
    report.put("size", set.len());
    report.put("r", redundancy);
    if !report.check("sh_linear", holds(&set, Mode::Linear), "") {
        return Err(Error::NotShLinear);
    }
    Ok(Conversion {
        output: set,
        report,
    })
}

/// The code whose parity-check columns are the nonzero elements of A, after
/// making sure 0 is in A.
///
/// For q != 2 the zero vector is adjoined. Over F_2 it is adjoined when the
/// result stays S_h, and otherwise A is translated by its first element.
/// Columns appear in the canonical encoding order.
pub fn set_to_code(a: &ShSetCandidate) -> Result<Conversion<LinearCode>> {
    let h = a.h();
    let r = a.r();
    if !holds(a, Mode::Linear) {
        return Err(Error::NotShLinear);
    }
    let mut report = CorrespondenceReport::new(Direction::SetToCode);
    report.put("q", a.field().q());
    report.put("r", r);
    report.put("h", h);
    report.put("size", a.len());
    let with_zero = if a.contains_zero() {
        a.clone()
    } else {
        let b = adjoin_zero(a);
        if holds(&b, Mode::Linear) {
            report.put("zero", "adjoined");
            b
        } else if a.field().q() == 2 {
            report.put("zero", "translated");
            translate_scale(a, &a.elems()[0], Elem::ONE)?
        } else {
            return Err(Error::PreconditionViolated(
                "A with 0 adjoined is not S_h-linear".into(),
            ));
        }
    };
    report.check("sh_linear_with_zero", holds(&with_zero, Mode::Linear), "");
    let mut cols: Vec<FqVector> = with_zero.elems().iter().filter(|v| !v.is_zero()).cloned().collect();
    cols.sort();
    let n = cols.len();
    if n < 2 * h || r < 2 * h {
        return Err(Error::PreconditionViolated(format!(
            "need n >= 2h and r >= 2h, got n={n}, r={r}, h={h}"
        )));
    }
    let hm = FqMatrix::from_columns(a.field(), r, &cols)?;
    let code = LinearCode::from_parity_check(&hm);
    let t = code.k();
    let (low, high) = (n.saturating_sub(r), n - 2 * h);
    report.put("n", n);
    report.put("k", t);
    report.check("rank", true, format!("rank={}", n - t));
    let in_window = report.check("dimension_window", low <= t && t <= high, format!("{low}<=t<={high}"));
    if !in_window {
        return Err(Error::DimensionWindowViolated { t, low, high });
    }
    let dist = code.min_distance_at_least(2 * h + 1);
    let found = dist.witness.as_ref().map_or(0, Vec::len);
    if !report.check("distance", dist.holds, format!("d>={}", 2 * h + 1)) {
        return Err(Error::DistanceTooSmall {
            required: 2 * h + 1,
            found,
        });
    }
    Ok(Conversion {
        output: code,
        report,
    })
}

/// Adds each vector of `order` that keeps the set S_h-linear, skipping
/// vectors already present. The result starts with the elements of A.
pub fn extend_greedy(a: &ShSetCandidate, order: &[FqVector]) -> Result<ShSetCandidate> {
    let elems = greedy_vectors(a.field(), a.r(), a.h(), a.elems(), order)?;
    ShSetCandidate::new(a.field(), a.r(), elems, a.h())
}

/// [`extend_greedy`] on bare vectors, so the seed may have fewer than h
/// elements.
pub fn greedy_vectors(field: &Field, r: usize, h: usize, seed: &[FqVector], order: &[FqVector]) -> Result<Vec<FqVector>> {
    if h == 0 {
        return Err(Error::HZero);
    }
    let size = (field.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > SEARCH_SPACE_CAP {
        return Err(Error::SpaceTooLarge { size });
    }
    let mut inc = Incremental::new(field, r, h, Mode::Linear);
    let mut present = BTreeSet::new();
    for v in seed.iter().chain(order) {
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
    for v in seed {
        let x = v.encode() as u32;
        if !present.insert(x) || inc.push(x).is_none() {
            return Err(Error::NotShLinear);
        }
    }
    for v in order {
        let x = v.encode() as u32;
        if present.insert(x) {
            let _ = inc.push(x);
        }
    }
    Ok(inc
        .chosen()
        .iter()
        .map(|&x| FqVector::decode(field, r, x as u128))
        .collect())
}

/// Greedily adds vectors of F_q^r, in encoding order, while A stays S_h.
pub fn extend_to_maximal(a: &ShSetCandidate) -> Result<Conversion<ShSetCandidate>> {
    let field = a.field();
    let (r, h) = (a.r(), a.h());
    let size = (field.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > SEARCH_SPACE_CAP {
        return Err(Error::SpaceTooLarge { size });
    }
    let all: Vec<FqVector> = (0..size).map(|x| FqVector::decode(field, r, x)).collect();
    let m = extend_greedy(a, &all)?;

    let mut report = CorrespondenceReport::new(Direction::Extend);
    report.put("q", field.q());
    report.put("r", r);
    report.put("h", h);
    report.put("input_size", a.len());
    report.put("size", m.len());
    report.check("sh_linear", holds(&m, Mode::Linear), "");
    let rejected = is_maximal(&m);
    report.check("maximal", rejected, "");
    if 2 * h < r && r <= m.len() {
        if field.q() != 2 {
            report.check("contains_zero", m.contains_zero(), "");
        }
        let basis = extract_basis(m.elems())?;
        report.check("contains_basis", basis.len() == r, format!("rank={}", basis.len()));
    }
    Ok(Conversion { output: m, report })
}

/// Whether no vector outside M can be added, checked from scratch for each
/// candidate.
pub fn is_maximal(m: &ShSetCandidate) -> bool {
    let field = m.field();
    let total = (field.q() as u128).pow(m.r() as u32);
    let present: BTreeSet<u128> = m.elems().iter().map(FqVector::encode).collect();
    (0..total).into_par_iter().all(|x| {
        if present.contains(&x) {
            return true;
        }
        let mut elems = m.elems().to_vec();
        elems.push(FqVector::decode(field, m.r(), x));
        let bigger = ShSetCandidate::new(field, m.r(), elems, m.h()).expect("x is new");
        !holds(&bigger, Mode::Linear)
    })
}

/// Runs code -> set -> code and compares the two codes.
pub fn round_trip_check(c: &LinearCode, h: usize) -> Result<CorrespondenceReport> {
    let set = code_to_set(c, h)?;
    let back = set_to_code(&set.output)?;
    let d = &back.output;
    let mut report = CorrespondenceReport::new(Direction::RoundTrip);
    report.put("q", c.field().q());
    report.put("n", c.n());
    report.put("k", c.k());
    report.put("h", h);
    report.put("n_back", d.n());
    report.put("k_back", d.k());
    report.check("parameters", c.n() == d.n() && c.k() == d.k(), "");

    let original = c.parity_check().columns();
    let rebuilt = d.parity_check().columns();
    let index: HashMap<&FqVector, usize> = original.iter().enumerate().map(|(j, v)| (v, j)).collect();
    let perm: Option<Vec<usize>> = rebuilt.iter().map(|v| index.get(v).copied()).collect();
    let Some(perm) = perm.filter(|_| c.parity_check().rows() == d.parity_check().rows()) else {
        report.check("permutation", false, "rebuilt columns differ from the original");
        return Ok(report);
    };
    report.check("permutation", true, "");
    let ours: BTreeSet<FqVector> = c.codewords(DEFAULT_BUDGET)?.into_iter().collect();
    let theirs: BTreeSet<FqVector> = d
        .codewords(DEFAULT_BUDGET)?
        .into_iter()
        .map(|w| {
            let mut coords = vec![Elem::ZERO; w.len()];
            for (j, &p) in perm.iter().enumerate() {
                coords[p] = w.get(j);
            }
            FqVector::new(c.field(), coords).expect("codes share a field")
        })
        .collect();
    report.check("codewords", ours == theirs, format!("{} words", ours.len()));
    report.permutation = Some(perm);
    Ok(report)
}

//! Bounds derived from tables of known code parameters.
//!
//! A code-parameter snapshot is a CSV file of `q,n,k,d_low,d_up` lines, `#`
//! comments allowed: an [n,k,d_low] code over F_q is known to exist and no
//! [n,k,d] code exists for d > d_up. From such data this module computes
//!
//! * V̄_q(h,n), the least r in [2h, n) such that F_q^r holds an S_h-linear
//!   set of n+1 elements, which equals the least redundancy n-k of an
//!   [n,k,>=2h+1] code;
//! * log_q B_q(n,2h+1) = n - V̄_q(h,n);
//! * lower bounds on the largest S_h-linear set in F_q^r.
//!
//! Nonexistence claims missing from the snapshot can be settled by an
//! exhaustive search over RREF generator matrices.

mod rref;

use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

pub use rref::{search_code, Certificate};

use crate::code::singleton_ok;
use crate::error::{Error, Result};
use crate::gf::Field;

/// Environment variable naming a snapshot file to use instead of the bundled
/// one.
pub const SNAPSHOT_ENV: &str = "SHLIN_SNAPSHOT";

/// The snapshot compiled into the library.
pub const BUNDLED_SNAPSHOT: &str = include_str!("../../../../fixtures/codetables.csv");

/// Default cap on RREF candidates for exhaustive nonexistence checks.
pub const DEFAULT_SEARCH_BUDGET: u128 = 2_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeTableEntry {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub d_low: usize,
    pub d_up: usize,
}

impl CodeTableEntry {
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// The invariants 1 <= d_low <= d_up <= n-k+1 and k <= n.
    pub fn is_consistent(&self) -> bool {
        self.k <= self.n && 1 <= self.d_low && self.d_low <= self.d_up && singleton_ok(self.n, self.k, self.d_up)
    }
}

impl fmt::Display for CodeTableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.q, self.n, self.k, self.d_low, self.d_up)
    }
}

/// Parses a snapshot. Lines repeating a (q,n,k) triple are merged, keeping
/// the largest d_low and the smallest d_up.
pub fn parse_table(text: &str) -> Result<Vec<CodeTableEntry>> {
    let mut entries: Vec<(CodeTableEntry, usize)> = Vec::new();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != 5 {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!("expected 5 comma-separated fields, found {}", record.len()),
            });
        }
        let mut nums = [0usize; 5];
        for (i, slot) in nums.iter_mut().enumerate() {
            let field = record[i].trim();
            *slot = field.parse().map_err(|_| Error::Parse {
                line,
                column: record.range(i).map_or(1, |r| r.start + i + 1),
                message: format!("expected an integer, found `{field}`"),
            })?;
        }
        let [q, n, k, d_low, d_up] = nums;
        let e = CodeTableEntry { q, n, k, d_low, d_up };
        if crate::gf::prime_power(q).is_none() || q > 256 {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!("{q} is not a supported field order"),
            });
        }
        if k > n || d_low == 0 || d_low > d_up {
            return Err(Error::Parse {
                line,
                column: 1,
                message: format!("inconsistent entry {e}"),
            });
        }
        if !singleton_ok(n, k, d_up) {
            return Err(Error::SingletonViolation { line, n, k, d: d_up });
        }
        match entries.iter_mut().find(|(o, _)| (o.q, o.n, o.k) == (q, n, k)) {
            Some((o, _)) => {
                o.d_low = o.d_low.max(d_low);
                o.d_up = o.d_up.min(d_up);
                if o.d_low > o.d_up {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: format!("entry conflicts with an earlier line for [{n},{k}]"),
                    });
                }
            }
            None => entries.push((e, line)),
        }
    }
    let mut out: Vec<CodeTableEntry> = entries.into_iter().map(|(e, _)| e).collect();
    out.sort();
    Ok(out)
}

pub fn ingest_table(path: impl AsRef<Path>) -> Result<Vec<CodeTableEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

pub fn bundled_snapshot() -> Vec<CodeTableEntry> {
    parse_table(BUNDLED_SNAPSHOT).expect("bundled snapshot is valid")
}

/// The snapshot named by `SHLIN_SNAPSHOT`, or the bundled one.
pub fn default_snapshot() -> Result<Vec<CodeTableEntry>> {
    match std::env::var_os(SNAPSHOT_ENV) {
        Some(path) => ingest_table(path),
        None => Ok(bundled_snapshot()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    VbarUpper,
    VbarExact,
    ShLower,
    BmaxLog,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(usize),
    AtMost(usize),
    AtLeast(usize),
    /// The value lies in `[low, high]`.
    Between(usize, usize),
    /// No qualifying table entry.
    X,
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => write!(f, "{v}"),
            BoundValue::AtMost(v) => write!(f, "<={v}"),
            BoundValue::AtLeast(v) => write!(f, ">={v}"),
            BoundValue::Between(l, h) => write!(f, "[{l},{h}]"),
            BoundValue::X => write!(f, "X"),
        }
    }
}

/// Evidence behind a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Table(CodeTableEntry),
    /// No [n,k,d] code exists because k + d > n + 1.
    Singleton { n: usize, k: usize, d: usize },
    Exhaustive(Certificate),
    /// The snapshot was scanned and held no [n, n-r, >= d] entry over F_q.
    NoEntry { q: usize, r: usize, d: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Table(e) => write!(f, "table {e}"),
            Provenance::Singleton { n, k, d } => write!(f, "singleton no [{n},{k},{d}]"),
            Provenance::Exhaustive(c) => match &c.found {
                None => write!(
                    f,
                    "exhaustive no [{},{},>={}] over F_{} ({} candidates)",
                    c.n, c.k, c.d, c.q, c.candidates
                ),
                Some(_) => write!(f, "exhaustive found [{},{},>={}] over F_{}", c.n, c.k, c.d, c.q),
            },
            Provenance::NoEntry { q, r, d } => write!(f, "no entry with n-k={r}, d>={d} over F_{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub value: BoundValue,
    pub provenance: Vec<Provenance>,
    pub note: Option<String>,
}

impl BoundResult {
    pub fn exact(&self) -> Option<usize> {
        match self.value {
            BoundValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

fn check_n(h: usize, n: usize) -> Result<()> {
    if h == 0 {
        return Err(Error::HZero);
    }
    if n <= 2 * h {
        return Err(Error::PreconditionViolated(format!("need n > 2h, got n={n}, h={h}")));
    }
    Ok(())
}

/// Upper bound on V̄_q(h,n): the least n-k >= 2h over entries of length n
/// with d_low >= 2h+1.
pub fn vbar_upper(entries: &[CodeTableEntry], q: usize, h: usize, n: usize) -> Result<BoundResult> {
    check_n(h, n)?;
    let best = entries
        .iter()
        .filter(|e| e.q == q && e.n == n && e.d_low > 2 * h && e.redundancy() >= 2 * h)
        .min_by_key(|e| (e.redundancy(), std::cmp::Reverse(e.d_low)))
        .ok_or(Error::NoWitness)?;
    Ok(BoundResult {
        kind: BoundKind::VbarUpper,
        value: BoundValue::AtMost(best.redundancy()),
        provenance: vec![Provenance::Table(*best)],
        note: None,
    })
}

/// V̄_q(h,n) with nonexistence evidence for every smaller redundancy.
///
/// An [n,k,>=d] code has [n,k-1,>=d] subcodes, so ruling out the dimension
/// k = n - upper + 1 rules out all larger ones. Evidence comes from a table
/// entry with d_up < 2h+1, the Singleton bound, or an RREF search of at most
/// `budget` candidates. A search that finds a code lowers the upper bound and
/// the loop continues. When the budget is too small the result is an
/// interval.
pub fn vbar_exact(entries: &[CodeTableEntry], q: usize, h: usize, n: usize, budget: u128) -> Result<BoundResult> {
    let up = vbar_upper(entries, q, h, n)?;
    let BoundValue::AtMost(mut upper) = up.value else {
        unreachable!("vbar_upper returns an upper bound");
    };
    let mut provenance = up.provenance;
    let d = 2 * h + 1;
    let field = Field::from_order(q)?;
    let mut note = None;
    let mut settled = true;
    while upper > 2 * h {
        let k = n - upper + 1;
        if let Some(e) = entries
            .iter()
            .find(|e| e.q == q && e.n == n && e.k <= k && e.d_up < d)
        {
            provenance.push(Provenance::Table(*e));
            break;
        }
        match search_code(&field, n, k, d, budget) {
            Ok(cert) => {
                let found = cert.found.is_some();
                provenance.push(Provenance::Exhaustive(cert));
                if !found {
                    break;
                }
                upper -= 1;
            }
            Err(Error::BudgetExceeded { needed, budget }) => {
                note = Some(format!(
                    "no evidence against an [{n},{k},>={d}] code: search needs {needed} candidates, budget is {budget}"
                ));
                settled = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if upper == 2 * h {
        provenance.push(Provenance::Singleton {
            n,
            k: n - 2 * h + 1,
            d,
        });
    }
    let value = if settled {
        BoundValue::Exact(upper)
    } else {
        BoundValue::Between(2 * h, upper)
    };
    Ok(BoundResult {
        kind: BoundKind::VbarExact,
        value,
        provenance,
        note,
    })
}

/// log_q B_q(n,2h+1) = n - V̄_q(h,n), from a V̄ result for the same n.
pub fn bmax_log_from(vbar: &BoundResult, n: usize) -> BoundResult {
    let value = match vbar.value {
        BoundValue::Exact(v) => BoundValue::Exact(n - v),
        BoundValue::AtMost(v) => BoundValue::AtLeast(n - v),
        BoundValue::AtLeast(v) => BoundValue::AtMost(n - v),
        BoundValue::Between(l, h) => BoundValue::Between(n - h, n - l),
        BoundValue::X => BoundValue::X,
    };
    BoundResult {
        kind: BoundKind::BmaxLog,
        value,
        provenance: vbar.provenance.clone(),
        note: vbar.note.clone(),
    }
}

pub fn bmax_log(entries: &[CodeTableEntry], q: usize, n: usize, h: usize, budget: u128) -> Result<BoundResult> {
    Ok(bmax_log_from(&vbar_exact(entries, q, h, n, budget)?, n))
}

/// Lower bound on the largest S_h-linear set in F_q^r: the largest n+1 over
/// entries with n-k = r and d_low >= 2h+1, or `X` without one.
pub fn sh_lower(entries: &[CodeTableEntry], q: usize, r: usize, h: usize) -> BoundResult {
    let d = 2 * h + 1;
    let best = entries
        .iter()
        .filter(|e| e.q == q && e.redundancy() == r && e.d_low >= d)
        .max_by_key(|e| (e.n, std::cmp::Reverse(e.d_low)));
    match best {
        Some(e) => BoundResult {
            kind: BoundKind::ShLower,
            value: BoundValue::AtLeast(e.n + 1),
            provenance: vec![Provenance::Table(*e)],
            note: None,
        },
        None => BoundResult {
            kind: BoundKind::ShLower,
            value: BoundValue::X,
            provenance: vec![Provenance::NoEntry { q, r, d }],
            note: None,
        },
    }
}

/// Grid of S_h lower bounds, one row per r and one column per h.
///
/// An S_h-linear set in F_q^r embeds in F_q^(r+1), so each column carries a
/// running maximum down the rows.
pub fn emit_table(
    entries: &[CodeTableEntry],
    q: usize,
    h_range: RangeInclusive<usize>,
    r_range: RangeInclusive<usize>,
) -> String {
    let hs: Vec<usize> = h_range.collect();
    let mut out = String::from("r");
    for h in &hs {
        out.push_str(&format!(",h={h}"));
    }
    out.push('\n');
    let mut running: Vec<Option<usize>> = vec![None; hs.len()];
    for r in r_range {
        out.push_str(&r.to_string());
        for (j, &h) in hs.iter().enumerate() {
            if let BoundValue::AtLeast(v) = sh_lower(entries, q, r, h).value {
                running[j] = Some(running[j].map_or(v, |w| w.max(v)));
            }
            match running[j] {
                Some(v) => out.push_str(&format!(",{v}")),
                None => out.push_str(",X"),
            }
        }
        out.push('\n');
    }
    out
}

/// Upper bounds on V̄_q(h,n) for each n in the range.
///
/// Shortening an [m,k,d] code gives an [m-1,k-1,>=d] code with the same
/// redundancy, so the bound at n is the least table redundancy over all
/// lengths m >= n present in the snapshot.
pub fn vbar_series(entries: &[CodeTableEntry], q: usize, h: usize, n_range: RangeInclusive<usize>) -> Vec<(usize, Option<usize>)> {
    let max_n = entries.iter().filter(|e| e.q == q).map(|e| e.n).max().unwrap_or(0);
    let mut direct = vec![None; max_n.max(*n_range.end()) + 2];
    for e in entries {
        if e.q == q && e.d_low > 2 * h && e.redundancy() >= 2 * h {
            let slot: &mut Option<usize> = &mut direct[e.n];
            *slot = Some(slot.map_or(e.redundancy(), |v| v.min(e.redundancy())));
        }
    }
    // suffix minimum
    for n in (0..direct.len() - 1).rev() {
        direct[n] = match (direct[n], direct[n + 1]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    n_range
        .filter(|&n| n > 2 * h)
        .map(|n| (n, direct[n].filter(|&v| v < n)))
        .collect()
}

/// CSV `n,h=..,..` with V̄ upper bounds for each h, blank where unknown.
pub fn emit_vbar_series(entries: &[CodeTableEntry], q: usize, h_range: RangeInclusive<usize>, n_range: RangeInclusive<usize>) -> String {
    let hs: Vec<usize> = h_range.collect();
    let series: Vec<Vec<(usize, Option<usize>)>> = hs
        .iter()
        .map(|&h| vbar_series(entries, q, h, n_range.clone()))
        .collect();
    let mut out = String::from("n");
    for h in &hs {
        out.push_str(&format!(",h={h}"));
    }
    out.push('\n');
    for n in n_range {
        out.push_str(&n.to_string());
        for s in &series {
            let v = s.iter().find(|(m, _)| *m == n).and_then(|(_, v)| *v);
            out.push(',');
            if let Some(v) = v {
                out.push_str(&v.to_string());
            }
        }
        out.push('\n');
    }
    out
}

/// Lengths n where consecutive known values of a V̄ series change by
/// something other than 0 or +1.
pub fn step_violations(series: &[(usize, Option<usize>)]) -> Vec<usize> {
    series
        .windows(2)
        .filter_map(|w| match (w[0], w[1]) {
            ((_, Some(a)), (n, Some(b))) if b != a && b != a + 1 => Some(n),
            _ => None,
        })
        .collect()
}

/// Re-checks every provenance item: table entries against their invariants,
/// Singleton claims arithmetically, and exhaustive certificates by running
/// the search again.
pub fn revalidate(result: &BoundResult) -> Result<bool> {
    for p in &result.provenance {
        let ok = match p {
            Provenance::Table(e) => e.is_consistent(),
            Provenance::Singleton { n, k, d } => !singleton_ok(*n, *k, *d),
            Provenance::Exhaustive(c) => {
                let field = Field::from_order(c.q)?;
                let again = search_code(&field, c.n, c.k, c.d, c.candidates)?;
                again.found.is_some() == c.found.is_some() && again.candidates == c.candidates
            }
            Provenance::NoEntry { .. } => true,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(!result.provenance.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(q: usize, n: usize, k: usize, d_low: usize, d_up: usize) -> CodeTableEntry {
        CodeTableEntry { q, n, k, d_low, d_up }
    }

    #[test]
    fn parse_lines() {
        let t = parse_table("# comment\n2,12,4,4,4\n\n# another\n5,12,4,7,7\n").unwrap();
        assert_eq!(t, vec![entry(2, 12, 4, 4, 4), entry(5, 12, 4, 7, 7)]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_table("2,5,1,5,5\n2,5,2,5,5\n").unwrap_err(),
            Error::SingletonViolation { line: 2, n: 5, k: 2, d: 5 }
        );
        assert!(matches!(parse_table("2,5,1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_table("2,5,x,5,5\n"),
            Err(Error::Parse { line: 1, column: 5, .. })
        ));
        assert!(matches!(parse_table("6,5,1,5,5\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_table("2,8,3,4,4\n2,8,3,5,5\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn merge_keeps_tightest() {
        let t = parse_table("2,8,2,4,6\n2,8,2,5,5\n").unwrap();
        assert_eq!(t, vec![entry(2, 8, 2, 5, 5)]);
    }

    #[test]
    fn bundled_snapshot_loads() {
        let t = bundled_snapshot();
        assert!(t.iter().all(CodeTableEntry::is_consistent));
        assert!(t.contains(&entry(2, 8, 3, 4, 4)));
    }

    #[test]
    fn vbar_upper_needs_a_witness() {
        let t = vec![entry(2, 8, 2, 5, 5)];
        assert_eq!(vbar_upper(&t, 2, 2, 8).unwrap().value, BoundValue::AtMost(6));
        assert_eq!(vbar_upper(&t, 2, 2, 9).unwrap_err(), Error::NoWitness);
        assert!(matches!(vbar_upper(&t, 2, 2, 4), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn small_budget_gives_interval() {
        let t = vec![entry(2, 8, 2, 5, 5)];
        let r = vbar_exact(&t, 2, 2, 8, 10).unwrap();
        assert_eq!(r.value, BoundValue::Between(4, 6));
        assert!(r.note.is_some());
        assert_eq!(bmax_log_from(&r, 8).value, BoundValue::Between(2, 4));
    }

    #[test]
    fn search_lowers_a_weak_upper_bound() {
        // only a repetition code is listed, the search finds [8,2,5]
        let t = vec![entry(2, 8, 1, 8, 8)];
        let r = vbar_exact(&t, 2, 2, 8, 1_000_000).unwrap();
        assert_eq!(r.value, BoundValue::Exact(6));
        assert!(revalidate(&r).unwrap());
    }

    #[test]
    fn grid_is_monotone() {
        let t = vec![entry(2, 5, 1, 5, 5), entry(2, 8, 2, 5, 5)];
        let csv = emit_table(&t, 2, 2..=3, 4..=7);
        assert_eq!(csv, "r,h=2,h=3\n4,6,X\n5,6,X\n6,9,X\n7,9,X\n");
    }

    #[test]
    fn steps() {
        let s = vec![(5, Some(4)), (6, Some(5)), (7, Some(5)), (8, Some(7)), (9, None)];
        assert_eq!(step_violations(&s), vec![8]);
    }
}

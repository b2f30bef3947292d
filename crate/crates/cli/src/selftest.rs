//! Randomized cross-checks between independent algorithms.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shlin::correspond::{code_to_set, extend_to_maximal, is_maximal, round_trip_check};
use shlin::sample::{random_candidate, random_code, random_sh_set};
use shlin::shset::{holds, verify};
use shlin::{Distance, Field, Mode};

use crate::{Outcome, EXIT_NEGATIVE, EXIT_OK};

const FIELDS: [usize; 5] = [2, 3, 4, 5, 7];

struct Tally {
    name: &'static str,
    run: usize,
    failed: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            run: 0,
            failed: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failed.push(what());
        }
    }
}

/// Both minimum-distance algorithms agree on a random code.
fn distance(rng: &mut ChaCha8Rng, t: &mut Tally) -> shlin::Result<()> {
    let q = *FIELDS[..4].choose(rng).unwrap();
    let f = Field::from_order(q)?;
    let n = rng.gen_range(3..=7);
    let k = rng.gen_range(1..n);
    let c = random_code(&f, n, k, rng);
    let by_words = c.min_distance(u128::MAX)?;
    let by_cols = match c.min_distance_at_least(c.n() - c.k() + 2).witness {
        Some(w) => Distance::Finite(w.len()),
        None => Distance::Infinite,
    };
    t.check(by_words == by_cols, || {
        format!("q={q} [{n},{}]: enumeration {by_words}, columns {by_cols}", c.k())
    });
    Ok(())
}

/// The early-exit check and the witness search give the same verdict, and a
/// witness is a genuine collision.
fn verdicts(rng: &mut ChaCha8Rng, t: &mut Tally) -> shlin::Result<()> {
    let q = *FIELDS.choose(rng).unwrap();
    let f = Field::from_order(q)?;
    let r = rng.gen_range(2..=4);
    let h = rng.gen_range(1..=3);
    let size = rng.gen_range(h..=h + 4).min(q.pow(r as u32) - 1);
    let a = random_candidate(&f, r, size, h, rng.gen_bool(0.3), rng)?;
    for mode in [Mode::Linear, Mode::Plain] {
        let v = verify(&a, mode);
        let genuine = v.witness().is_none_or(|w| {
            w.lhs != w.rhs && w.lhs.evaluate(&a) == w.value && w.rhs.evaluate(&a) == w.value
        });
        t.check(v.is_ok() == holds(&a, mode) && genuine, || {
            format!("q={q} r={r} h={h} {mode:?}: verify and holds disagree on {:?}", a.elems())
        });
    }
    Ok(())
}

/// Set to code to set and back, plus greedy maximality.
fn correspondence(rng: &mut ChaCha8Rng, t: &mut Tally) -> shlin::Result<()> {
    let q = *FIELDS[..4].choose(rng).unwrap();
    let f = Field::from_order(q)?;
    let h = rng.gen_range(1..=2);
    let r = rng.gen_range(2 * h..=4);
    if q.pow(r as u32) > 1 << 10 {
        return Ok(());
    }
    let a = random_sh_set(&f, r, h, None, false, rng)?;
    let m = extend_to_maximal(&a)?;
    t.check(m.report.is_valid() && is_maximal(&m.output), || {
        format!("q={q} r={r} h={h}: greedy extension not maximal")
    });
    if let Ok(conv) = shlin::correspond::set_to_code(&m.output) {
        let c = &conv.output;
        // the round trip compares codeword sets, so keep it to small codes
        let back_ok = match c.size() {
            Some(s) if s <= 1 << 16 => round_trip_check(c, h)?.is_valid(),
            _ => true,
        };
        let d_ok = c.min_distance_at_least(2 * h + 1).holds;
        let set_ok = code_to_set(c, h).is_ok_and(|s| holds(&s.output, Mode::Linear));
        t.check(conv.report.is_valid() && back_ok && d_ok && set_ok, || {
            format!("q={q} r={r} h={h}: round trip through [{},{}] failed", c.n(), c.k())
        });
    }
    Ok(())
}

pub(crate) fn run(seed: u64, trials: usize, out: &mut dyn Write) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies = [Tally::new("distance"), Tally::new("verdicts"), Tally::new("correspondence")];
    for _ in 0..trials {
        distance(&mut rng, &mut tallies[0])?;
        verdicts(&mut rng, &mut tallies[1])?;
        correspondence(&mut rng, &mut tallies[2])?;
    }
    writeln!(out, "seed={seed}")?;
    writeln!(out, "trials={trials}")?;
    let mut failures = 0;
    for t in &tallies {
        writeln!(out, "{}.checks={}", t.name, t.run)?;
        writeln!(out, "{}.failures={}", t.name, t.failed.len())?;
        for f in &t.failed {
            writeln!(out, "# {f}")?;
        }
        failures += t.failed.len();
    }
    writeln!(out, "verdict={}", if failures == 0 { "ok" } else { "fail" })?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}


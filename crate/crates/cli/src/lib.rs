//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code: 0 on success or a positive verdict, 1 on
//! a negative verdict (collision, distance too small, bound violated), 2 on
//! usage, parse and I/O errors.

mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use shlin::bounds::{
    bmax_log_from, default_snapshot, emit_table, emit_vbar_series, ingest_table, step_violations, vbar_exact,
    vbar_series, vbar_upper, CodeTableEntry, DEFAULT_SEARCH_BUDGET,
};
use shlin::code::DEFAULT_BUDGET;
use shlin::correspond::{code_to_set, extend_to_maximal, set_to_code};
use shlin::io::{format_vectors, load_matrix, load_vectors, save_matrix, save_vectors};
use shlin::shset::{count_with_mode, exhaustive_max_sh_set, h_span_with_mode, size_bound, verify};
use shlin::{CollisionWitness, Distance, Error, Field, FqVector, HCombination, LinearCode, ShSetCandidate, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "shlin", version, about = "S_h-linear sets and linear codes over finite fields")]
struct Cli {
    /// Worker threads for parallel searches (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether a set is S_h-linear (or an S_h-set with --mode plain).
    Verify(SetArgs),
    /// Print the values of all h-combinations of a set.
    Hspan {
        #[command(flatten)]
        set: SetArgs,
        /// Write the values as a vector file instead of printing them.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of a code given by a parity-check or generator matrix.
    Mindist {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Role::Parity)]
        role: Role,
        /// Only decide d >= D, by the column-independence test.
        #[arg(long, value_name = "D")]
        at_least: Option<usize>,
        /// Largest number of codewords to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Columns of a parity-check matrix plus 0, as an S_h-linear set.
    ToSet {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Role::Parity)]
        role: Role,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parity-check matrix of the code built from an S_h-linear set.
    ToCode {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedily extend an S_h-linear set to a maximal one.
    Extend {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a largest S_h-linear set in F_q^r.
    SearchMax {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        h: usize,
        /// Only consider sets containing the zero vector.
        #[arg(long)]
        zero: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds derived from a code-parameter snapshot.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Randomized consistency checks between independent algorithms.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// V̄_q(h,n) and log_q B_q(n,2h+1).
    Vbar {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
        /// Settle the value, searching for codes when the snapshot is silent.
        #[arg(long)]
        exact: bool,
        /// Largest RREF enumeration used for nonexistence evidence.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Lower bounds on S_h-linear set sizes as a CSV grid.
    Table {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        h_min: usize,
        #[arg(long, default_value_t = 8)]
        h_max: usize,
        #[arg(long)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Upper bounds on V̄_q(h,n) over a range of n as CSV.
    Series {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        h_min: usize,
        #[arg(long, default_value_t = 4)]
        h_max: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Validate a snapshot file and print it normalized.
    Ingest {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SetArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    h: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order.
    #[arg(long)]
    q: usize,
    /// Modulus coefficients c_0,...,c_m for an extension field.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u8>>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Role {
    Parity,
    Generator,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Linear,
    Plain,
}

impl From<ModeArg> for shlin::Mode {
    fn from(m: ModeArg) -> shlin::Mode {
        match m {
            ModeArg::Linear => shlin::Mode::Linear,
            ModeArg::Plain => shlin::Mode::Plain,
        }
    }
}

fn range(lo: usize, hi: usize, name: &str) -> Result<RangeInclusive<usize>, Failure> {
    if lo > hi {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("empty {name} range {lo}..{hi}"),
        });
    }
    Ok(lo..=hi)
}

fn emit(text: &str, dest: Option<&Path>, out: &mut dyn Write) -> std::io::Result<()> {
    match dest {
        Some(p) => {
            std::fs::write(p, text)?;
            writeln!(out, "out={}", p.display())
        }
        None => out.write_all(text.as_bytes()),
    }
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotShLinear
            | Error::DistanceTooSmall { .. }
            | Error::DuplicateColumns { .. }
            | Error::RedundancyTooSmall { .. }
            | Error::DimensionWindowViolated { .. }
            | Error::SingletonViolation { .. } => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (program name first), writing reports to `out` and
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    let res = pool.install(|| dispatch(cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match res {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Hspan { set, out: path } => cmd_hspan(&set, path.as_deref(), out),
        Command::Mindist {
            matrix,
            role,
            at_least,
            budget,
        } => cmd_mindist(&matrix, role, at_least, budget, out),
        Command::ToSet {
            matrix,
            role,
            h,
            out: path,
        } => cmd_to_set(&matrix, role, h, path.as_deref(), out),
        Command::ToCode { set, h, out: path } => cmd_to_code(&set, h, path.as_deref(), out),
        Command::Extend { set, h, out: path } => cmd_extend(&set, h, path.as_deref(), out),
        Command::SearchMax {
            field,
            r,
            h,
            zero,
            mode,
            out: path,
        } => cmd_search_max(&field, r, h, zero, mode, path.as_deref(), out),
        Command::Bounds(b) => cmd_bounds(b, out),
        Command::Selftest { seed, trials } => selftest::run(seed, trials, out),
    }
}

fn load_set(path: &Path, h: usize) -> Result<ShSetCandidate, Failure> {
    let vf = load_vectors(path)?;
    Ok(ShSetCandidate::new(&vf.field, vf.r, vf.vectors, h)?)
}

fn load_code(path: &Path, role: Role) -> Result<LinearCode, Failure> {
    let m = load_matrix(path)?;
    Ok(match role {
        Role::Parity => LinearCode::from_parity_check(&m),
        Role::Generator => LinearCode::from_generator(&m),
    })
}

fn set_summary(a: &ShSetCandidate, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "q={}", a.field().q())?;
    writeln!(out, "r={}", a.r())?;
    writeln!(out, "size={}", a.len())?;
    writeln!(out, "h={}", a.h())
}

/// The witness written out with the vectors themselves.
fn write_identity(a: &ShSetCandidate, w: &CollisionWitness, out: &mut dyn Write) -> std::io::Result<()> {
    let side = |c: &HCombination| {
        c.terms
            .iter()
            .map(|&(i, k)| format!("{k}*{:?}", a.elems()[i]))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    writeln!(out)?;
    writeln!(out, "  {}", side(&w.lhs))?;
    writeln!(out, "= {}", side(&w.rhs))?;
    writeln!(out, "= {:?}", w.value)
}

fn cmd_verify(args: &SetArgs, out: &mut dyn Write) -> Outcome {
    let a = load_set(&args.set, args.h)?;
    let v = verify(&a, args.mode.into());
    match &v {
        Verdict::Ok => writeln!(out, "OK")?,
        Verdict::Collision(w) => {
            writeln!(out, "{w}")?;
            write_identity(&a, w, out)?;
        }
    }
    Ok(if v.is_ok() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_hspan(args: &SetArgs, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let a = load_set(&args.set, args.h)?;
    let mode = args.mode.into();
    let span = h_span_with_mode(&a, mode);
    let count = count_with_mode(&a, mode);
    set_summary(&a, out)?;
    writeln!(out, "combinations={count}")?;
    writeln!(out, "distinct={}", span.len())?;
    let values: Vec<FqVector> = span.into_iter().collect();
    match path {
        Some(p) => {
            save_vectors(p, a.field(), a.r(), &values)?;
            writeln!(out, "out={}", p.display())?;
        }
        None => {
            writeln!(out)?;
            out.write_all(format_vectors(a.field(), a.r(), &values).as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_mindist(path: &Path, role: Role, at_least: Option<usize>, budget: u128, out: &mut dyn Write) -> Outcome {
    let c = load_code(path, role)?;
    writeln!(out, "q={}", c.field().q())?;
    writeln!(out, "n={}", c.n())?;
    writeln!(out, "k={}", c.k())?;
    if let Some(d) = at_least {
        let check = c.min_distance_at_least(d);
        writeln!(out, "d>={d}: {}", check.holds)?;
        if let Some(cols) = check.witness {
            let cols: Vec<String> = cols.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "witness.columns={}", cols.join(","))?;
        }
        return Ok(if check.holds { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let d = match c.min_distance(budget) {
        Ok(d) => d,
        // too many codewords: the smallest dependent column set gives d
        Err(Error::BudgetExceeded { .. }) => match c.min_distance_at_least(c.n() - c.k() + 2).witness {
            Some(w) => Distance::Finite(w.len()),
            None => Distance::Infinite,
        },
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "d={d}")?;
    Ok(EXIT_OK)
}

fn cmd_to_set(path: &Path, role: Role, h: usize, dest: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let c = load_code(path, role)?;
    let conv = code_to_set(&c, h)?;
    writeln!(out, "{}", conv.report)?;
    let a = &conv.output;
    match dest {
        Some(p) => save_vectors(p, a.field(), a.r(), a.elems())?,
        None => out.write_all(format_vectors(a.field(), a.r(), a.elems()).as_bytes())?,
    }
    Ok(if conv.report.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_to_code(path: &Path, h: usize, dest: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let a = load_set(path, h)?;
    let conv = set_to_code(&a)?;
    writeln!(out, "{}", conv.report)?;
    let hm = conv.output.parity_check();
    match dest {
        Some(p) => save_matrix(p, hm)?,
        None => out.write_all(shlin::io::format_matrix(hm).as_bytes())?,
    }
    Ok(if conv.report.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_extend(path: &Path, h: usize, dest: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let a = load_set(path, h)?;
    let conv = extend_to_maximal(&a)?;
    writeln!(out, "{}", conv.report)?;
    let m = &conv.output;
    match dest {
        Some(p) => save_vectors(p, m.field(), m.r(), m.elems())?,
        None => out.write_all(format_vectors(m.field(), m.r(), m.elems()).as_bytes())?,
    }
    Ok(if conv.report.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_search_max(
    field: &FieldArgs,
    r: usize,
    h: usize,
    zero: bool,
    mode: ModeArg,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let f = Field::with_modulus(field.q, field.poly.as_deref())?;
    let res = exhaustive_max_sh_set(&f, r, h, zero, mode.into())?;
    writeln!(out, "q={}", f.q())?;
    writeln!(out, "r={r}")?;
    writeln!(out, "h={h}")?;
    writeln!(out, "size={}", res.size)?;
    writeln!(out, "nodes={}", res.nodes)?;
    if h >= 2 && mode == ModeArg::Linear {
        writeln!(out, "bound={:.3}", size_bound(f.q(), r, h, true))?;
    }
    match dest {
        Some(p) => save_vectors(p, &f, r, &res.witness)?,
        None => {
            writeln!(out)?;
            out.write_all(format_vectors(&f, r, &res.witness).as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn snapshot(path: Option<&Path>) -> Result<Vec<CodeTableEntry>, Failure> {
    Ok(match path {
        Some(p) => ingest_table(p)?,
        None => default_snapshot()?,
    })
}

fn cmd_bounds(cmd: BoundsCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        BoundsCommand::Vbar {
            q,
            h,
            n,
            exact,
            budget,
            snapshot: s,
        } => {
            let t = snapshot(s.as_deref())?;
            let res = if exact {
                vbar_exact(&t, q, h, n, budget)?
            } else {
                vbar_upper(&t, q, h, n)?
            };
            writeln!(out, "q={q}")?;
            writeln!(out, "h={h}")?;
            writeln!(out, "n={n}")?;
            writeln!(out, "vbar={}", res.value)?;
            writeln!(out, "log_b={}", bmax_log_from(&res, n).value)?;
            for p in &res.provenance {
                writeln!(out, "evidence={p}")?;
            }
            if let Some(note) = &res.note {
                writeln!(out, "note={note}")?;
            }
            Ok(EXIT_OK)
        }
        BoundsCommand::Table {
            q,
            h_min,
            h_max,
            r_min,
            r_max,
            out: dest,
            snapshot: s,
        } => {
            let t = snapshot(s.as_deref())?;
            let text = emit_table(&t, q, range(h_min, h_max, "h")?, range(r_min, r_max, "r")?);
            emit(&text, dest.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        BoundsCommand::Series {
            q,
            h_min,
            h_max,
            n_min,
            n_max,
            out: dest,
            snapshot: s,
        } => {
            let t = snapshot(s.as_deref())?;
            let (hs, ns) = (range(h_min, h_max, "h")?, range(n_min, n_max, "n")?);
            emit(&emit_vbar_series(&t, q, hs.clone(), ns.clone()), dest.as_deref(), out)?;
            for h in hs {
                let jumps = step_violations(&vbar_series(&t, q, h, ns.clone()));
                if !jumps.is_empty() {
                    let jumps: Vec<String> = jumps.iter().map(usize::to_string).collect();
                    writeln!(out, "# h={h}: steps other than 0 or 1 at n={}", jumps.join(","))?;
                }
            }
            Ok(EXIT_OK)
        }
        BoundsCommand::Ingest { file } => {
            let t = ingest_table(&file)?;
            writeln!(out, "# entries={}", t.len())?;
            for e in &t {
                writeln!(out, "{e}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

//! The `shiftlab` command line: argument parsing, named systems and JSON reports.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when a node budget runs out.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::budget::{Limits, DEFAULT_MAX_NODES};
use crate::chessboard::{self as cb, Grid, Symmetry};
use crate::counts::CountSequence;
use crate::dyck::{self, DyckWord, Side};
use crate::error::{Error, Result};
use crate::factorize::count_sequence_factorizations;
use crate::perron::{self, FactorBounds, PerronNumber};
use crate::poly::IntPoly;
use crate::rotations::{self as rot, FiniteRotation};
use crate::sft::{self, Equivalence, SftSpec, Sublattice, TorusConfiguration};
use crate::zeta::{self, TransferMatrix};

#[derive(Debug, Parser)]
#[command(name = "shiftlab", version, about = "Exact computations for symbolic dynamics")]
struct Cli {
    /// Node budget for every search.
    #[arg(long, env = "SHIFTLAB_MAX_NODES", default_value_t = DEFAULT_MAX_NODES, global = true)]
    max_nodes: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SystemArg {
    /// Named system: full(n,d), chessboard(d), goldenmean, dyck(N); `*` forms products.
    #[arg(long, conflicts_with = "spec")]
    system: Option<String>,
    /// SFT specification file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fixed-point counts for every sublattice of an index, or one lattice.
    Count {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long, required_unless_present = "lattice")]
        index: Option<u64>,
        /// Generators, e.g. "2,0;1,3".
        #[arg(long)]
        lattice: Option<String>,
        /// Also list the configurations.
        #[arg(long)]
        enumerate: bool,
    },
    /// Compare fixed-point counts of two systems up to an index.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        horizon: u64,
    },
    /// Box-count entropy estimates.
    Entropy {
        #[command(flatten)]
        system: SystemArg,
        /// Box radii; the box side is 2n+1.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        radius: Vec<u64>,
    },
    /// Zeta-function coefficients of a one-dimensional system.
    Zeta {
        #[command(flatten)]
        system: SystemArg,
        /// Transfer matrix such as "1 1; 1 0", instead of a system.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Perron roots, membership tests, products and factorizations
    #[command(subcommand)]
    Perron(PerronCmd),
    /// Search for splittings of a periodic-point count sequence.
    CertifyPrime {
        /// Count file: one count per line, or `period count` pairs.
        #[arg(long, conflicts_with = "system")]
        counts: Option<PathBuf>,
        /// A one-dimensional named system whose counts are used.
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        horizon: u64,
    },
    /// Height functions of proper 3-colorings
    #[command(subcommand)]
    Chessboard(ChessCmd),
    /// Periodic points, measures and primeness of Dyck shifts
    #[command(subcommand)]
    Dyck(DyckCmd),
    /// Orbit censuses and factorizations of finite rotations
    #[command(subcommand)]
    Rotations(RotCmd),
    /// Run the invariant suites.
    Verify {
        /// all, sft, zeta, perron, chessboard, dyck or rotations.
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
enum PerronCmd {
    /// Certified spectral radius of a nonnegative irreducible matrix.
    Root {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        matrix: Option<String>,
        /// Interval width: `1e-9`, `0.001` or `1/1000`.
        #[arg(long, default_value = "1e-9")]
        width: String,
    },
    /// Whether the largest real root of a monic irreducible polynomial is Perron.
    Check {
        #[arg(long)]
        poly: String,
        /// Root selector `lo,hi`; defaults to the largest real root.
        #[arg(long)]
        root: Option<String>,
    },
    /// Product of two Perron numbers given by their minimal polynomials.
    Multiply {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Factorizations into irreducible Perron numbers within bounds.
    Factor {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 50)]
        max_height: i64,
    },
}

#[derive(Debug, Subcommand)]
enum ChessCmd {
    /// Height function of a proper coloring of a box.
    Lift {
        #[arg(long)]
        grid: PathBuf,
        /// Height at the first cell; defaults to its color.
        #[arg(long)]
        base: Option<i64>,
    },
    /// Height cocycle of a periodic coloring given by one fundamental domain.
    Cocycle {
        #[arg(long)]
        torus: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        displacement: String,
    },
    /// Max-slope periodic points for a sublattice.
    Maxslope {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Use `period · Z^d`.
        #[arg(long, default_value_t = 3, conflicts_with = "lattice")]
        period: i64,
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Periodic proper coloring extending a box pattern.
    Extend {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        period: Option<usize>,
    },
    /// Cut-and-paste along the last axis.
    Glue {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cut: i64,
    },
    /// Slope sign of a color symmetry composed with a shift.
    Aut {
        /// identity, rot1, rot2, neg, negrot1, negrot2.
        #[arg(long)]
        symmetry: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum DyckCmd {
    /// Periodic-point counts by bracket excess.
    Count {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long)]
        period: u64,
        #[arg(long, allow_hyphen_values = true)]
        excess: Option<i64>,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Cylinder measure of a word.
    Cylinder {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "plus")]
        side: Side,
    },
    /// Monoid normal form of a word.
    Reduce {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long)]
        word: String,
    },
    /// Primeness certificate from the graded counts.
    Certify {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Sample a word from the plus measure.
    Sample {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Growth of the periodic-point counts.
    Growth {
        #[arg(long, default_value_t = 2)]
        n_brackets: u32,
        #[arg(long, default_value_t = 14)]
        n_max: u64,
    },
}

#[derive(Debug, Subcommand)]
enum RotCmd {
    /// Orbit census of `x -> σ^shift(x) + step` on a finite abelian group.
    Census {
        /// e.g. "Z5^4" or "Z2xZ3".
        #[arg(long)]
        group: String,
        #[arg(long)]
        step: String,
        /// Cyclic rotation of the coordinates applied before adding the step.
        #[arg(long, default_value_t = 0)]
        shift: usize,
    },
    /// Decompose F_p[x]/(x^n - 1) into summands.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Coprime factors to split along, e.g. "x^2-1,x^2+1"; defaults to the primary split.
        #[arg(long)]
        split: Option<String>,
    },
    /// Direct factorizations of the rotation by 1 on a product of prime cycles.
    Factorize {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Finite truncations of the odometer.
    Odometer {
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
}

/// What `run` produces: the JSON report for stdout, a human summary for
/// stderr and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub human: String,
    pub code: i32,
}

struct Done {
    result: Value,
    notes: Vec<String>,
    human: String,
    failed: bool,
}

impl Done {
    fn new(result: Value, human: impl Into<String>) -> Self {
        Done { result, notes: Vec::new(), human: human.into(), failed: false }
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

/// Parse and execute one command line (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        1
                    } else {
                        0
                    }
                }
                _ => 1,
            };
            let json = if code == 0 {
                String::new()
            } else {
                pretty(&json!({ "command": echo, "error": { "kind": "usage", "message": e.to_string().trim() } }))
            };
            return Outcome { json, human: e.to_string(), code };
        }
    };
    let limits = Limits::new(cli.max_nodes, cli.jobs);
    let start = Instant::now();
    let res = dispatch(cli.command, &limits);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match res {
        Ok(done) => {
            let report = json!({
                "command": echo,
                "result": done.result,
                "notes": done.notes,
                "timing": { "elapsed_ms": elapsed },
            });
            Outcome { json: pretty(&report), human: done.human, code: i32::from(done.failed) }
        }
        Err(e) => {
            let code = if e.is_budget() { 2 } else { 1 };
            let report = json!({
                "command": echo,
                "error": { "kind": error_kind(&e), "message": e.to_string() },
                "timing": { "elapsed_ms": elapsed },
            });
            Outcome { json: pretty(&report), human: format!("error: {e}"), code }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BudgetExceeded { .. } => "budget",
        Error::DimensionMismatch { .. } => "dimension",
        Error::UnsupportedDimension(_) => "unsupported-dimension",
        Error::Parity { .. } => "parity",
        Error::ImproperColoring { .. } => "improper-coloring",
        Error::Reducible(_) => "reducible-polynomial",
        Error::ReducibleMatrix => "reducible-matrix",
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::Internal(_) => "internal",
    }
}

/// A system named on the command line.
#[derive(Debug, Clone)]
pub enum NamedSystem {
    Sft(SftSpec),
    Dyck(u32),
}

fn parse_args<const K: usize>(key: &str, inner: &str) -> Result<[usize; K]> {
    let vals: Vec<usize> = inner
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::invalid(format!("unknown system key `{key}`")))?;
    vals.try_into().map_err(|_| Error::invalid(format!("unknown system key `{key}`")))
}

impl NamedSystem {
    /// Resolve `full(n,d)`, `chessboard(d)`, `goldenmean`, `dyck(N)` or a
    /// `*`-separated product of SFT keys.
    pub fn resolve(key: &str) -> Result<Self> {
        let parts: Vec<&str> = key.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let mut acc: Option<SftSpec> = None;
            for p in parts {
                let NamedSystem::Sft(s) = NamedSystem::resolve(p)? else {
                    return Err(Error::invalid("dyck(N) cannot appear in a product"));
                };
                acc = Some(match acc {
                    None => s,
                    Some(a) => sft::product_sft(&a, &s)?,
                });
            }
            return Ok(NamedSystem::Sft(acc.expect("nonempty product")));
        }
        let unknown = || Error::invalid(format!("unknown system key `{key}`"));
        if key == "goldenmean" {
            return Ok(NamedSystem::Sft(sft::golden_mean()));
        }
        let (name, rest) = key.split_once('(').ok_or_else(unknown)?;
        let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
        match name {
            "full" => {
                let [n, d] = parse_args::<2>(key, inner)?;
                if !(1..=3).contains(&d) {
                    return Err(Error::UnsupportedDimension(d));
                }
                Ok(NamedSystem::Sft(sft::full_shift(n, d)?))
            }
            "chessboard" => {
                let [d] = parse_args::<1>(key, inner)?;
                if !(1..=3).contains(&d) {
                    return Err(Error::UnsupportedDimension(d));
                }
                Ok(NamedSystem::Sft(sft::chessboard(d)?))
            }
            "dyck" => {
                let [n] = parse_args::<1>(key, inner)?;
                if n < 2 {
                    return Err(Error::invalid("dyck(N) needs N >= 2"));
                }
                Ok(NamedSystem::Dyck(n as u32))
            }
            _ => Err(unknown()),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_system(s: &SystemArg) -> Result<NamedSystem> {
    match (&s.system, &s.spec) {
        (Some(k), _) => NamedSystem::resolve(k),
        (None, Some(p)) => Ok(NamedSystem::Sft(SftSpec::parse(&read_file(p)?)?)),
        (None, None) => Err(Error::invalid("give --system or --spec")),
    }
}

fn load_sft(s: &SystemArg) -> Result<SftSpec> {
    match load_system(s)? {
        NamedSystem::Sft(x) => Ok(x),
        NamedSystem::Dyck(_) => Err(Error::invalid("dyck(N) is not a shift of finite type; use `shiftlab dyck`")),
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::parse(format!("bad integer list `{text}`"))))
        .collect()
}

fn parse_lattice(text: &str) -> Result<Sublattice> {
    let gens: Vec<Vec<i64>> = text.split(';').map(parse_ints).collect::<Result<_>>()?;
    let d = gens.first().map(Vec::len).unwrap_or(0);
    Sublattice::from_generators(d, &gens)
}

/// `a/b`, decimals and scientific notation, all exact.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::parse(format!("bad rational `{text}`"));
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let (a, b): (BigInt, BigInt) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn dispatch(cmd: Command, limits: &Limits) -> Result<Done> {
    match cmd {
        Command::Count { system, index, lattice, enumerate } => cmd_count(&system, index, lattice, enumerate, limits),
        Command::Equiv { left, right, horizon } => {
            let get = |k: &str| match NamedSystem::resolve(k)? {
                NamedSystem::Sft(s) => Ok(s),
                NamedSystem::Dyck(_) => Err(Error::invalid("dyck(N) is not a shift of finite type")),
            };
            let (x, y) = (get(&left)?, get(&right)?);
            let verdict = sft::periodically_equivalent(&x, &y, horizon, limits)?;
            let (result, human) = match verdict {
                Equivalence::UpToHorizon { horizon, sublattices_checked } => (
                    json!({ "equivalent": true, "horizon": horizon, "sublattices_checked": sublattices_checked }),
                    format!("equal counts on all {sublattices_checked} sublattices of index <= {horizon}"),
                ),
                Equivalence::Counterexample { lattice, left, right } => (
                    json!({ "equivalent": false, "lattice": lattice.rows(), "left": left.to_string(), "right": right.to_string() }),
                    format!("counts differ on {:?}: {left} vs {right}", lattice.rows()),
                ),
            };
            Ok(Done::new(result, human))
        }
        Command::Entropy { system, radius } => {
            if let NamedSystem::Dyck(n) = load_system(&system)? {
                let rows = dyck::growth_rate_table(n, radius.iter().copied().max().unwrap_or(8));
                let out: Vec<Value> = rows.iter().map(|r| json!({ "n": r.n, "count": r.count.to_string(), "rate": r.rate })).collect();
                return Ok(Done::new(json!({ "periodic_growth": out, "limit": ((n + 1) as f64).ln() }), "periodic-point growth rates")
                    .note("the Dyck shift is not of finite type; growth of periodic points is reported instead"));
            }
            let x = load_sft(&system)?;
            let mut out = Vec::new();
            let mut human = String::new();
            for n in radius {
                let count = sft::box_pattern_count(&x, n, limits)?;
                let est = sft::entropy_box_estimate(&x, n, limits)?;
                human.push_str(&format!("n={n}: {est:.6}\n"));
                out.push(json!({ "radius": n, "patterns": count.to_string(), "estimate": est }));
            }
            Ok(Done::new(json!({ "estimates": out }), human).note("estimates are upper bounds nonincreasing in the radius"))
        }
        Command::Zeta { system, matrix, order } => {
            let a = match matrix {
                Some(m) => TransferMatrix::parse(&m)?,
                None => zeta::to_transfer_matrix(&load_sft(&system)?, limits)?,
            };
            let coeffs = zeta::zeta_series(&a, order)?;
            let by_det = zeta::zeta_series_by_determinant(&a, order);
            if coeffs != by_det {
                return Err(Error::Internal("Newton and determinant series disagree".into()));
            }
            let traces = a.traces(order);
            let result = json!({
                "transfer_matrix": a.to_json(),
                "traces": strings(&traces),
                "coefficients": strings(&coeffs),
                "inverse_zeta": strings(&zeta::inverse_zeta_polynomial(&a)),
            });
            Ok(Done::new(result, format!("zeta coefficients: {}", strings(&coeffs).join(", "))))
        }
        Command::Perron(p) => cmd_perron(p, limits),
        Command::CertifyPrime { counts, system, horizon } => {
            let (seq, source) = match (counts, system) {
                (Some(f), _) => (CountSequence::parse(&read_file(&f)?)?, f.display().to_string()),
                (None, Some(k)) => {
                    let x = match NamedSystem::resolve(&k)? {
                        NamedSystem::Sft(x) if x.dim() == 1 => x,
                        NamedSystem::Sft(x) => return Err(Error::DimensionMismatch { expected: 1, found: x.dim() }),
                        NamedSystem::Dyck(_) => return Err(Error::invalid("use `shiftlab dyck certify` for dyck(N)")),
                    };
                    (sft::periodic_count_sequence(&x, horizon, limits)?, k)
                }
                (None, None) => return Err(Error::invalid("give --counts or --system")),
            };
            let res = count_sequence_factorizations(&seq, horizon, limits)?;
            let human = if res.only_trivial() {
                format!("{source}: only trivial splittings up to period {horizon}")
            } else {
                format!("{source}: {} nontrivial splittings", res.nontrivial().count())
            };
            Ok(Done::new(res.to_json(), human).note("a certificate covers only the periods given"))
        }
        Command::Chessboard(c) => cmd_chess(c, limits),
        Command::Dyck(c) => cmd_dyck(c, limits),
        Command::Rotations(c) => cmd_rot(c, limits),
        Command::Verify { suite } => {
            let report = crate::verify::run_suite(&suite, limits)?;
            let failed = !report.passed();
            let mut done = Done::new(report.to_json(), report.summary());
            done.failed = failed;
            Ok(done)
        }
    }
}

fn cmd_count(system: &SystemArg, index: Option<u64>, lattice: Option<String>, enumerate: bool, limits: &Limits) -> Result<Done> {
    let x = match load_system(system)? {
        NamedSystem::Sft(x) => x,
        NamedSystem::Dyck(n) => {
            let k = index.ok_or_else(|| Error::invalid("dyck(N) counts need --index (the period)"))?;
            let c = dyck::periodic_count_total(n, k);
            return Ok(Done::new(json!({ "period": k, "count": c.to_string() }), format!("count {c}")));
        }
    };
    let lattices = match (lattice, index) {
        (Some(l), _) => {
            let l = parse_lattice(&l)?;
            if l.dim() != x.dim() {
                return Err(Error::DimensionMismatch { expected: x.dim(), found: l.dim() });
            }
            vec![l]
        }
        (None, Some(k)) => sft::sublattices_of_index(x.dim(), k)?,
        (None, None) => return Err(Error::invalid("give --index or --lattice")),
    };
    let mode = if enumerate { sft::Mode::Enumerate } else { sft::Mode::Count };
    let mut rows = Vec::new();
    let mut distinct: Vec<BigUint> = Vec::new();
    for l in &lattices {
        let fp = sft::fixed_points(&x, l, mode, limits)?;
        if !distinct.contains(&fp.count) {
            distinct.push(fp.count.clone());
        }
        let mut row = json!({ "lattice": l.rows(), "count": fp.count.to_string() });
        if let Some(cfgs) = fp.configurations {
            row["configurations"] = json!(cfgs.iter().map(|c| c.values.iter().map(|&v| x.alphabet()[v as usize].clone()).collect::<Vec<_>>()).collect::<Vec<_>>());
        }
        rows.push(row);
    }
    let count = (distinct.len() == 1).then(|| distinct[0].to_string());
    let human = match &count {
        Some(c) => format!("count {c} on each of {} sublattice(s)", lattices.len()),
        None => format!("counts vary across {} sublattices", lattices.len()),
    };
    Ok(Done::new(json!({ "count": count, "sublattices": rows }), human))
}

fn cmd_perron(cmd: PerronCmd, _limits: &Limits) -> Result<Done> {
    match cmd {
        PerronCmd::Root { system, matrix, width } => {
            let a = match matrix {
                Some(m) => TransferMatrix::parse(&m)?,
                None => zeta::to_transfer_matrix(&load_sft(&system)?, _limits)?,
            };
            let w = parse_rational(&width)?;
            if w <= BigRational::zero() {
                return Err(Error::invalid("width must be positive"));
            }
            let lam = perron::perron_root(&a, &w)?;
            let entropy = lam.approx().ln();
            Ok(Done::new(json!({ "root": lam.to_json(), "entropy": entropy }), format!("λ = {lam}, h = {entropy:.9}")))
        }
        PerronCmd::Check { poly, root } => {
            let p = IntPoly::parse(&poly)?;
            let sel = match root {
                Some(r) => {
                    let (lo, hi) = r.split_once(',').ok_or_else(|| Error::parse("root selector must be `lo,hi`"))?;
                    Some(crate::poly::RootInterval { lo: parse_rational(lo)?, hi: parse_rational(hi)? })
                }
                None => None,
            };
            let ok = perron::is_perron(&p, sel.as_ref())?;
            Ok(Done::new(json!({ "poly": p.to_string(), "is_perron": ok }), format!("{p}: {}", if ok { "Perron" } else { "not Perron" })))
        }
        PerronCmd::Multiply { a, b } => {
            let x = PerronNumber::from_poly(&IntPoly::parse(&a)?)?;
            let y = PerronNumber::from_poly(&IntPoly::parse(&b)?)?;
            for (z, src) in [(&x, &a), (&y, &b)] {
                if !perron::is_perron(z.min_poly(), None)? {
                    return Err(Error::invalid(format!("{src} does not define a Perron number")));
                }
            }
            let prod = perron::perron_multiply(&x, &y)?;
            Ok(Done::new(json!({ "a": x.to_json(), "b": y.to_json(), "product": prod.to_json() }), format!("product {prod}")))
        }
        PerronCmd::Factor { poly, max_degree, max_height } => {
            let p = IntPoly::parse(&poly)?;
            let lam = PerronNumber::from_poly(&p)?;
            if !perron::is_perron(lam.min_poly(), None)? {
                return Err(Error::invalid(format!("{p} does not define a Perron number")));
            }
            let f = perron::perron_factorizations(&lam, FactorBounds { max_degree, max_height })?;
            let human = if f.irreducible {
                "irreducible within bounds".to_string()
            } else {
                f.signatures().iter().map(|s| s.join(" · ")).collect::<Vec<_>>().join("\n")
            };
            Ok(Done::new(f.to_json(), human).note("factors are searched among rational integers and algebraic integers of the same field"))
        }
    }
}

fn read_grid(path: &PathBuf) -> Result<Grid> {
    Grid::parse(&read_file(path)?, None)
}

fn grid_to_torus(g: &Grid) -> Result<TorusConfiguration> {
    let d = g.dim();
    let rows: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| if i == j { g.shape[i] as i64 } else { 0 }).collect()).collect();
    let lattice = Sublattice::from_hnf(rows)?;
    let values = lattice
        .cells()
        .iter()
        .map(|c| {
            let v = g.get(c).expect("cell inside the fundamental box");
            u8::try_from(v).ok().filter(|&v| v < 3).ok_or_else(|| Error::invalid(format!("color {v} is not in {{0,1,2}}")))
        })
        .collect::<Result<Vec<_>>>()?;
    TorusConfiguration::new(lattice, values.into_iter().map(Into::into).collect())
}

fn torus_grid(x: &TorusConfiguration) -> Grid {
    let diag = x.lattice.diagonal();
    let d = diag.len();
    let side: Vec<usize> = if x.lattice.rows().iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| i == j || v == 0)) {
        diag.iter().map(|&v| v as usize).collect()
    } else {
        vec![x.lattice.index() as usize; d]
    };
    Grid::from_fn(side, vec![0; d], |c| x.at(c) as i64)
}

fn cmd_chess(cmd: ChessCmd, limits: &Limits) -> Result<Done> {
    match cmd {
        ChessCmd::Lift { grid, base } => {
            let g = read_grid(&grid)?;
            let b = base.unwrap_or(g.values[0]);
            let h = cb::lift_height(&g, b)?;
            Ok(Done::new(json!({ "coloring": g.to_json(), "heights": h.to_json() }), h.to_text()))
        }
        ChessCmd::Cocycle { torus, displacement } => {
            let x = grid_to_torus(&read_grid(&torus)?)?;
            let n = parse_ints(&displacement)?;
            if n.len() != x.lattice.dim() {
                return Err(Error::DimensionMismatch { expected: x.lattice.dim(), found: n.len() });
            }
            let v = cb::height_cocycle(&x, &n)?;
            let slopes = cb::torus_slopes(&x)?;
            Ok(Done::new(json!({ "displacement": n, "value": v, "generator_slopes": slopes }), format!("Ht = {v}"))
                .note("convention: Ht(x, n) is the height at n minus the height at 0"))
        }
        ChessCmd::Maxslope { dim, period, lattice } => {
            let l = match lattice {
                Some(t) => parse_lattice(&t)?,
                None => Sublattice::scaled(dim, period)?,
            };
            let pts = cb::max_slope_points(&l, limits)?;
            let grids: Vec<String> = pts.iter().map(|x| torus_grid(x).to_text()).collect();
            Ok(Done::new(json!({ "lattice": l.rows(), "count": pts.len(), "points": grids }), format!("{} max-slope points", pts.len())))
        }
        ChessCmd::Extend { grid, period } => {
            let g = read_grid(&grid)?;
            let e = cb::periodic_extension(&g, period, limits)?;
            Ok(Done::new(e.to_json(), format!("period {}", e.period)))
        }
        ChessCmd::Glue { grid, cut } => {
            let g = read_grid(&grid)?;
            let (y, z) = cb::glue(&g, cut)?;
            let ok = cb::is_proper(&y) && cb::is_proper(&z) && cb::increments_along_last_axis(&z);
            Ok(Done::new(json!({ "y": y.to_json(), "z": z.to_json(), "proper": ok }), y.to_text()))
        }
        ChessCmd::Aut { symmetry, dim, shift } => {
            let s = match shift {
                Some(t) => parse_ints(&t)?,
                None => vec![0; dim],
            };
            let psi = Symmetry::named(&symmetry, s)?;
            let sign = cb::aut_slope_sign(&psi, dim, limits)?;
            Ok(Done::new(json!({ "symmetry": symmetry, "perm": psi.perm, "sign": sign }), format!("u = {sign:+}")))
        }
    }
}

fn cmd_dyck(cmd: DyckCmd, limits: &Limits) -> Result<Done> {
    match cmd {
        DyckCmd::Count { n_brackets, period, excess, oracle } => {
            if n_brackets < 2 {
                return Err(Error::invalid("need at least 2 bracket types"));
            }
            if period == 0 {
                return Err(Error::invalid("period must be positive"));
            }
            let brute = if oracle { Some(dyck::periodic_count_oracle(n_brackets, period, limits)?) } else { None };
            let js: Vec<i64> = match excess {
                Some(j) => vec![j],
                None => (-(period as i64)..=period as i64).step_by(2).collect(),
            };
            let mut rows = Vec::new();
            let mut agree = true;
            for &j in &js {
                let c = dyck::periodic_count_closed_form(n_brackets, period, j)?;
                let mut row = json!({ "excess": j, "count": c.to_string() });
                if let Some(b) = &brute {
                    let o = b.get(&j).cloned().unwrap_or_default();
                    agree &= o == c;
                    row["oracle"] = json!(o.to_string());
                }
                rows.push(row);
            }
            let total = dyck::periodic_count_total(n_brackets, period);
            let mut result = json!({ "n_brackets": n_brackets, "period": period, "by_excess": rows, "total": total.to_string() });
            if excess.is_some() {
                result["count"] = rows[0]["count"].clone();
            }
            if brute.is_some() {
                result["oracle_agrees"] = json!(agree);
            }
            let human = match excess {
                Some(_) => format!("count {}", rows[0]["count"].as_str().unwrap_or("")),
                None => format!("total {total}"),
            };
            let mut done = Done::new(result, human);
            done.failed = !agree;
            Ok(done)
        }
        DyckCmd::Cylinder { n_brackets, word, side } => {
            let w = DyckWord::parse(n_brackets, &word)?;
            let mu = dyck::mu_cylinder(&w, side);
            let (ub, ua) = dyck::unmatched_counts(&w);
            let mut result = json!({
                "word": w.to_string(),
                "side": format!("{side:?}").to_lowercase(),
                "measure": mu.to_string(),
                "unmatched_beta": ub,
                "unmatched_alpha": ua,
            });
            if dyck::is_periodic_admissible(&w) {
                result["local_entropy"] = dyck::local_entropy(&w)?.to_json();
            }
            Ok(Done::new(result, format!("μ = {mu}")))
        }
        DyckCmd::Reduce { n_brackets, word } => {
            let w = DyckWord::parse(n_brackets, &word)?;
            let r = dyck::reduce(&w);
            let result = json!({ "word": w.to_string(), "reduced": r.to_json(), "periodic_admissible": dyck::is_periodic_admissible(&w) });
            Ok(Done::new(result, format!("{:?}", r)))
        }
        DyckCmd::Certify { n_brackets, kmax } => {
            let c = dyck::dyck_prime_certificate(n_brackets, kmax, limits)?;
            let human = format!("certificate {}", if c.holds { "holds" } else { "fails" });
            let mut done = Done::new(c.to_json(), human).note("the certificate covers the periods N^k for k up to kmax");
            done.failed = !c.holds;
            Ok(done)
        }
        DyckCmd::Sample { n_brackets, length, seed } => {
            let w = dyck::sample_mu_plus(n_brackets, length, seed)?;
            Ok(Done::new(json!({ "n_brackets": n_brackets, "seed": seed, "word": w.to_string() }), w.to_string())
                .note("closers unmatched inside the window receive uniformly random types"))
        }
        DyckCmd::Growth { n_brackets, n_max } => {
            let rows = dyck::growth_rate_table(n_brackets, n_max);
            let target = ((n_brackets + 1) as f64).ln();
            let out: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "n": r.n, "count": r.count.to_string(), "rate": r.rate, "gap": (r.rate - target).abs() }))
                .collect();
            let human = rows.iter().map(|r| format!("{:>3} {:>24} {:.6}", r.n, r.count, r.rate)).collect::<Vec<_>>().join("\n");
            Ok(Done::new(json!({ "rows": out, "log_n_plus_1": target }), human))
        }
    }
}

/// Reference note for the summand `F_5[x]/(x^2 + 1)` of `F_5[x]/(x^4 - 1)`.
fn reference_note(p: u64, n: u64, limits: &Limits) -> Result<Option<String>> {
    if p != 5 || n != 4 {
        return Ok(None);
    }
    let m = rot::CyclicModule::summand(5, 4, vec![1, 0, 1])?;
    let c = rot::orbit_census(&m, limits)?;
    Ok(Some(format!(
        "flagged: the reference figure for F_5[x]/(x^2+1) is 1 fixed point and 10 orbits of length 4, \
         which carries 41 points, not 25; the exhaustive census is {c} (suspected erratum)"
    )))
}

fn parse_fp_poly(text: &str, p: u64) -> Result<rot::FpPoly> {
    let q = IntPoly::parse(text)?;
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = q
        .coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            r.to_u64().expect("reduced coefficient")
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

fn cmd_rot(cmd: RotCmd, limits: &Limits) -> Result<Done> {
    match cmd {
        RotCmd::Census { group, step, shift } => {
            let moduli = FiniteRotation::parse_group(&group)?;
            let step: Vec<u64> = parse_ints(&step)?.into_iter().zip(&moduli).map(|(s, &m)| s.rem_euclid(m as i64) as u64).collect();
            let r = FiniteRotation::new(moduli, step, shift)?;
            let c = rot::orbit_census(&r, limits)?;
            let result = json!({ "group": group, "step": r.step, "coordinate_shift": shift, "order": r.order(), "census": c.to_json() });
            Ok(Done::new(result, format!("census {c}")))
        }
        RotCmd::Decompose { p, n, split } => {
            let d = match split {
                Some(s) => {
                    let parts = s.split(',').map(|t| parse_fp_poly(t, p)).collect::<Result<Vec<_>>>()?;
                    rot::decompose_with(p, n, parts, limits)?
                }
                None => rot::module_decompose(p, n, limits)?,
            };
            let human = d
                .summands
                .iter()
                .map(|(m, c)| format!("F_{}[x]/({}): {c}", m.p, rot::fp_to_string(&m.modulus)))
                .collect::<Vec<_>>()
                .join("\n");
            let mut done = Done::new(d.to_json(), human);
            if let Some(n) = reference_note(p, n, limits)? {
                done = done.note(n);
            }
            done.failed = !d.reassembles;
            Ok(done)
        }
        RotCmd::Factorize { primes } => {
            let fs = rot::rotation_factorizations(&primes, limits)?;
            let bell = crate::numtheory::bell(primes.len());
            let result = json!({ "primes": primes, "factorizations": fs, "count": fs.len(), "bell_number": bell.to_string() });
            Ok(Done::new(result, format!("{} factorizations", fs.len())))
        }
        RotCmd::Odometer { max_prime } => {
            let rows: Vec<Value> = rot::odometer_truncations(max_prime)
                .iter()
                .map(|r| {
                    json!({
                        "bound": r.bound,
                        "primes": r.primes,
                        "order": r.order.to_string(),
                        "finest_blocks": r.finest_blocks,
                        "factorizations": r.factorizations.to_string(),
                    })
                })
                .collect();
            Ok(Done::new(json!({ "truncations": rows }), "odometer truncations")
                .note("the number of irreducible blocks grows with the bound, so the limit admits no finite factorization into primes"))
        }
    }
}

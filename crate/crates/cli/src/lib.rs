//! The `rsabel` command line: sequence output, complexity tables, extremal
//! words, kernels, samples of `lambda`, box-dimension reports and the
//! verification batteries.
//!
//! Exit codes: 0 success, 1 a verification found violations, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rudin_abelian::boxdim::{dimension_report, BoxCountReport, RESCALE_TOLERANCE};
use rudin_abelian::complexity::{build_extremal, delta_m, max_sum, min_sum, rho, BruteForce, FactorOracle, Flavor};
use rudin_abelian::lambda::{lambda_exact, Quad4};
use rudin_abelian::regularity::{
    guess_linear_representation, kernel_closure, synthesize_dfao, verify_linear_representation,
};
use rudin_abelian::rudin::{r, r_prime, s_prefix};
use rudin_abelian::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rsabel", version, about = "Abelian complexity of the Rudin-Shapiro sequence")]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    R,
    Rprime,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    W,
    Wtilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelSeq {
    #[value(name = "deltaM")]
    DeltaM,
    R,
    Rprime,
    #[value(name = "M")]
    M,
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Brute,
    /// The window-sum identities.
    #[value(name = "lemma4")]
    SumIdentities,
    Extremal,
    Automaton,
    Kernel,
    Endpoint,
    Selfsim,
    Holder,
    Mahler,
    Lambda,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::All => Suite::All,
            SuiteArg::Brute => Suite::Brute,
            SuiteArg::SumIdentities => Suite::SumIdentities,
            SuiteArg::Extremal => Suite::Extremal,
            SuiteArg::Automaton => Suite::Automaton,
            SuiteArg::Kernel => Suite::Kernel,
            SuiteArg::Endpoint => Suite::Endpoint,
            SuiteArg::Selfsim => Suite::Selfsim,
            SuiteArg::Holder => Suite::Holder,
            SuiteArg::Mahler => Suite::Mahler,
            SuiteArg::Lambda => Suite::Lambda,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of r, r' (as + and -) or of the fixed point s.
    Rs {
        #[arg(long, value_enum)]
        seq: SeqArg,
        #[arg(long)]
        count: u64,
    },
    /// CSV of n, M(n), m(n), rho(n), Delta M(n).
    Complexity {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Measure M, m and rho by exhaustive window scan of r.
        #[arg(long)]
        brute: bool,
    },
    /// Build an extremal word and check it.
    Words {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "w")]
        flavor: FlavorArg,
    },
    /// Kernel closure, and for M and rho a guessed linear representation.
    Kernel {
        #[arg(long, value_enum)]
        seq: KernelSeq,
        #[arg(long, default_value_t = 2, value_parser = parse_base)]
        base: u32,
        #[arg(long, default_value_t = 4096)]
        prefix: usize,
        /// Largest number of kernel nodes or generators explored.
        #[arg(long, default_value_t = 256)]
        cap: usize,
        /// Check the guessed relations up to this index.
        #[arg(long, default_value_t = 100_000)]
        verify_to: u64,
    },
    /// CSV of x, lambda(x) on a 4-adic grid.
    Lambda {
        #[arg(long, value_parser = parse_quad4)]
        from: Quad4,
        #[arg(long, value_parser = parse_quad4)]
        to: Quad4,
        #[arg(long, value_parser = parse_quad4)]
        step: Quad4,
        /// Significant digits.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
        precision: u32,
    },
    /// Box-counting dimension of the graph of lambda.
    Boxdim {
        #[arg(long, value_parser = parse_quad4)]
        alpha: Quad4,
        #[arg(long, value_parser = parse_quad4)]
        beta: Quad4,
        #[arg(long, default_value_t = 3)]
        jmin: u32,
        #[arg(long, default_value_t = 7)]
        jmax: u32,
        /// Print only `delta,count` rows.
        #[arg(long)]
        csv: bool,
    },
    /// Run a verification battery.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 512)]
        n: u64,
    },
}

fn parse_base(s: &str) -> Result<u32, String> {
    match s {
        "2" => Ok(2),
        "4" => Ok(4),
        _ => Err(format!("base must be 2 or 4, got {s}")),
    }
}

fn parse_quad4(s: &str) -> Result<Quad4, String> {
    s.parse().map_err(|e: rudin_abelian::Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let code = dispatch(&cli.command, &mut w);
                code.and_then(|c| w.flush().map(|_| c).map_err(Failure::Io))
            }
            Err(e) => Err(Failure::Io(e)),
        },
        None => dispatch(&cli.command, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<rudin_abelian::Error> for Failure {
    fn from(e: rudin_abelian::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Rs { seq, count } => rs(*seq, *count, out),
        Command::Complexity { from, to, brute } => complexity(*from, *to, *brute, out),
        Command::Words { n, flavor } => words(*n, *flavor, out),
        Command::Kernel {
            seq,
            base,
            prefix,
            cap,
            verify_to,
        } => kernel(*seq, *base, *prefix, *cap, *verify_to, out),
        Command::Lambda {
            from,
            to,
            step,
            precision,
        } => lambda(from, to, step, *precision as usize, out),
        Command::Boxdim {
            alpha,
            beta,
            jmin,
            jmax,
            csv,
        } => boxdim(alpha, beta, *jmin, *jmax, *csv, out),
        Command::Verify { suite, n } => verify(suite.suite(), *n, out),
    }
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

fn rs(seq: SeqArg, count: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    match seq {
        SeqArg::R => (0..count).try_for_each(|n| writeln!(out, "{}", sign_char(r(n))))?,
        SeqArg::Rprime => (0..count).try_for_each(|n| writeln!(out, "{}", sign_char(r_prime(n))))?,
        SeqArg::S => {
            let len = usize::try_from(count).map_err(|_| Failure::Usage("count too large".into()))?;
            if len > 1 << 30 {
                return Err(Failure::Usage(format!("--count {count} exceeds 2^30 letters")));
            }
            if len > 0 {
                for l in s_prefix(len).letters() {
                    writeln!(out, "{}", l.as_char())?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn complexity(from: u64, to: u64, brute: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if from > to {
        return Err(Failure::Usage(format!("--from {from} exceeds --to {to}")));
    }
    writeln!(out, "n,M,m,rho,deltaM")?;
    if !brute {
        for n in from..=to {
            writeln!(out, "{n},{},{},{},{}", max_sum(n), min_sum(n), rho(n), delta_m(n))?;
        }
        return Ok(EXIT_OK);
    }
    if from == 0 {
        return Err(Failure::Usage("--brute needs --from 1 or more".into()));
    }
    let mut b = BruteForce::new(rudin_abelian::rudin::SignSeq::R);
    let mut cur = b.extrema(from)?;
    for n in from..=to {
        let next = b.extrema(n + 1)?;
        writeln!(out, "{n},{},{},{},{}", cur.max, cur.min, cur.rho, next.max - cur.max)?;
        cur = next;
    }
    Ok(EXIT_OK)
}

fn words(n: u64, flavor: FlavorArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let flavor = match flavor {
        FlavorArg::W => Flavor::W,
        FlavorArg::Wtilde => Flavor::WTilde,
    };
    let w = build_extremal(n, flavor)?;
    let check = FactorOracle::default().check(&w, max_sum(n) as i64);
    writeln!(out, "word: {}", w.word)?;
    writeln!(out, "length: {}", w.word.len())?;
    writeln!(out, "sum: {}", flavor.coding().weight(&w.word))?;
    writeln!(out, "M: {}", max_sum(n))?;
    writeln!(out, "factor of s: {}", check.factor_ok)?;
    writeln!(out, "boundary letter: {}", check.boundary_ok)?;
    writeln!(out, "extension in s: {}", check.extension_ok)?;
    let verdict = check.passed();
    writeln!(out, "verdict: {}", if verdict { "pass" } else { "fail" })?;
    Ok(if verdict { EXIT_OK } else { EXIT_VIOLATION })
}

fn kernel(
    seq: KernelSeq,
    base: u32,
    prefix: usize,
    cap: usize,
    verify_to: u64,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let f: Box<dyn Fn(u64) -> i64> = match seq {
        KernelSeq::DeltaM => Box::new(|n| delta_m(n) as i64),
        KernelSeq::R => Box::new(|n| r(n) as i64),
        KernelSeq::Rprime => Box::new(|n| r_prime(n) as i64),
        KernelSeq::M => Box::new(|n| max_sum(n) as i64),
        KernelSeq::Rho => Box::new(|n| rho(n) as i64),
    };
    let c = kernel_closure(&*f, base, prefix, cap)?;
    writeln!(out, "base: {base}")?;
    writeln!(out, "prefix: {prefix}")?;
    writeln!(out, "nodes: {}", c.node_count())?;
    writeln!(out, "closed: {}", c.closed)?;
    let ok = match seq {
        KernelSeq::M | KernelSeq::Rho => {
            let gen_cap = cap.min(prefix / 2).max(1);
            match guess_linear_representation(&*f, base, prefix.max(2 * gen_cap), gen_cap) {
                Ok(rep) => {
                    let verified = verify_linear_representation(&rep, &*f, verify_to.max(prefix as u64));
                    writeln!(out, "rank: {}", rep.rank())?;
                    let basis: Vec<String> = rep.basis.iter().map(|(e, c)| format!("({e},{c})")).collect();
                    writeln!(out, "basis: {}", basis.join(" "))?;
                    writeln!(out, "verified to: {}", verify_to.max(prefix as u64))?;
                    writeln!(out, "verdict: {}", if verified { "pass" } else { "fail" })?;
                    verified
                }
                Err(e) => {
                    writeln!(out, "rank: not found ({e})")?;
                    writeln!(out, "verdict: fail")?;
                    false
                }
            }
        }
        _ => {
            if c.closed {
                let a = synthesize_dfao(&c)?;
                writeln!(out, "automaton states: {}", a.num_states())?;
                writeln!(out, "minimal states: {}", a.minimize().num_states())?;
            }
            writeln!(out, "verdict: {}", if c.closed { "pass" } else { "fail" })?;
            c.closed
        }
    };
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

/// `P/4^K;decimal`, or the bare integer.
pub fn format_x(x: &Quad4) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        format!("{x};{}", x.decimal())
    }
}

fn lambda(from: &Quad4, to: &Quad4, step: &Quad4, precision: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    if from > to {
        return Err(Failure::Usage(format!("--from {from} exceeds --to {to}")));
    }
    let k = from.scale().max(to.scale()).max(step.scale());
    let at = |x: &Quad4| {
        x.numerator_at(k)
            .ok_or_else(|| Failure::Usage(format!("{x} does not fit the common scale 4^{k}")))
    };
    let (a, b, s) = (at(from)?, at(to)?, at(step)?);
    let rows = (b - a) / s + 1;
    if rows > 1 << 24 {
        return Err(Failure::Usage(format!("{rows} rows exceed the limit of 2^24")));
    }
    writeln!(out, "x,lambda")?;
    for i in 0..rows {
        let x = Quad4::new(a + i * s, k)?;
        let v = lambda_exact(&x, precision)?;
        writeln!(out, "{},{}", format_x(&x), v.decimal)?;
    }
    Ok(EXIT_OK)
}

fn write_table(out: &mut dyn Write, label: &str, rep: &BoxCountReport) -> io::Result<()> {
    writeln!(
        out,
        "{label}: [{}, {}] sampled at 4^-{}",
        rep.alpha, rep.beta, rep.sample_depth
    )?;
    writeln!(out, "  delta      count")?;
    for e in &rep.entries {
        writeln!(out, "  4^-{:<7} {}", e.j, e.count)?;
    }
    writeln!(out, "  slope {:.6}  r2 {:.6}", rep.fit.slope, rep.fit.r2)
}

fn boxdim(alpha: &Quad4, beta: &Quad4, jmin: u32, jmax: u32, csv: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = dimension_report(alpha, beta, jmin, jmax)?;
    if csv {
        writeln!(out, "delta,count")?;
        for e in &report.main.entries {
            writeln!(out, "{},{}", Quad4::new(1, e.j)?.decimal(), e.count)?;
        }
        return Ok(EXIT_OK);
    }
    write_table(out, "graph", &report.main)?;
    write_table(out, "rescaled", &report.rescaled)?;
    writeln!(
        out,
        "  rescale gap {:.6} ({} at tolerance {RESCALE_TOLERANCE})",
        report.rescale_gap(),
        if report.rescale_ok() { "ok" } else { "exceeded" }
    )?;
    write_table(out, "refined", &report.refined)?;
    writeln!(out, "  refinement gap {:.6}", report.refinement_gap())?;
    writeln!(out, "slope: {:.6}", report.slope())?;
    writeln!(out, "r2: {:.6}", report.main.fit.r2)?;
    Ok(EXIT_OK)
}

fn verify(suite: Suite, n: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let reports = run_suite(suite, n)?;
    let mut failed = false;
    for rep in &reports {
        writeln!(
            out,
            "{:<10} bound {:<8} checks {:<10} violations {}",
            rep.suite.to_string(),
            rep.bound,
            rep.checks,
            rep.violations
        )?;
        for s in &rep.samples {
            writeln!(out, "  {s}")?;
        }
        failed |= !rep.passed();
    }
    writeln!(out, "{}", if failed { "FAIL" } else { "OK" })?;
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}

//! Command-line front end. [`run_from`] parses arguments and dispatches;
//! exit status is 0 on success, 1 when a verification fails and 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::abacus::BarAbacus;
use crate::barcomb::{
    bar_lengths, bar_sign, enumerate_bar_partitions, enumerate_p_bar_cores, enumerate_partitions,
    BarPartition, SignedBarClass,
};
use crate::congruence::{search_congruences, verify_families, Counter, Statement};
use crate::error::Error;
use crate::identities::{all_checks, jtp_check, pnt_check, qpi_check, SignedMonomial};
use crate::qseries::Sign;
use crate::spincounts::{enumerated_records, series_records, spin_degree_with_defects, write_csv};

const MAX_PARTITION_N: usize = 80;
const MAX_BAR_N: usize = 150;

#[derive(Debug, Parser)]
#[command(
    name = "spinchar",
    version,
    about = "Spin character counts, bar partitions and congruence checks"
)]
pub struct Cli {
    /// Suppress the informational header line in text output.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Largest truncation order any command may request.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of a generating function.
    Series(SeriesArgs),
    /// List partitions, bar partitions or p-bar-cores of n.
    Enumerate(EnumerateArgs),
    /// Draw the p-bar abacus of a bar partition.
    Abacus(AbacusArgs),
    /// Spin character degree and p-defects of a bar partition.
    Degree(DegreeArgs),
    /// Check congruence statements on progressions.
    Verify(VerifyArgs),
    /// Search for vanishing progressions.
    Search(SearchArgs),
    /// Check the product-to-sum identities.
    Identities(IdentitiesArgs),
    /// Table of spin character and core counts.
    Counts(CountsArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// One of p, f-shat, f-ahat, f-pbar, f-pbar-plus, f-pbar-minus,
    /// f0-shat, f0-ahat, fplus-shat, fplus-ahat.
    #[arg(long)]
    pub function: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Bar,
    PbarCore,
    Partition,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    pub kind: EnumerateKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AbacusArgs {
    /// Distinct parts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub partition: Vec<usize>,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub partition: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all`, a statement id, or a numbered alias such as corollary-3.3.
    #[arg(long, default_value = "all")]
    pub source: String,
    /// Primes for the per-prime statements; defaults depend on the statement.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    #[arg(long, default_value_t = 200)]
    pub n_max: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub counter: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 25)]
    pub a_max: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub moduli: Vec<u64>,
    #[arg(long, default_value_t = 200)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    All,
    Pnt,
    Jtp,
    Qpi,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, value_enum, default_value_t = IdentityKind::All)]
    pub check: IdentityKind,
    #[arg(long, default_value_t = 1000)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountSource {
    Enumeration,
    Series,
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = CountSource::Series)]
    pub source: CountSource,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            }
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => match out.flush() {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn check_order(cli: &Cli, order: u64) -> std::result::Result<usize, Failure> {
    if order > cli.max_order as u64 {
        return Err(usage(format!(
            "order {order} exceeds --max-order {}",
            cli.max_order
        )));
    }
    Ok(order as usize)
}

fn header(cli: &Cli, out: &mut dyn Write, text: &str) -> io::Result<()> {
    if !cli.quiet {
        writeln!(out, "# {text}")?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Series(a) => series(cli, a, out),
        Command::Enumerate(a) => enumerate(cli, a, out),
        Command::Abacus(a) => abacus(cli, a, out),
        Command::Degree(a) => degree(cli, a, out),
        Command::Verify(a) => verify(cli, a, out),
        Command::Search(a) => search(cli, a, out),
        Command::Identities(a) => identities(cli, a, out),
        Command::Counts(a) => counts(cli, a, out),
    }
}

fn series(cli: &Cli, a: &SeriesArgs, out: &mut dyn Write) -> Outcome {
    let counter = Counter::parse(&a.function, a.p)?;
    let order = check_order(cli, a.order as u64)?;
    let s = counter.series(order)?;
    match a.format {
        Format::Text => {
            header(cli, out, &format!("{counter} coefficients 0..={order}"))?;
            for (n, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{n} {c}")?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&s)?)?,
        Format::Csv => {
            writeln!(out, "n,coeff")?;
            for (n, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{n},{c}")?;
            }
        }
    }
    Ok(0)
}

fn parts_csv(parts: &[usize]) -> String {
    parts
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

fn enumerate(cli: &Cli, a: &EnumerateArgs, out: &mut dyn Write) -> Outcome {
    let lists: Vec<Vec<usize>> = match (a.kind, a.p) {
        (EnumerateKind::PbarCore, Some(p)) => enumerate_p_bar_cores(a.n, p)?
            .into_iter()
            .map(|l| l.parts().to_vec())
            .collect(),
        (EnumerateKind::PbarCore, None) => return Err(usage("--kind pbar-core needs --p")),
        (_, Some(_)) => return Err(usage("--p is only used with --kind pbar-core")),
        (EnumerateKind::Bar, None) => {
            if a.n > MAX_BAR_N {
                return Err(usage(format!(
                    "bar partitions are listed up to n = {MAX_BAR_N}"
                )));
            }
            enumerate_bar_partitions(a.n)
                .into_iter()
                .map(|l| l.parts().to_vec())
                .collect()
        }
        (EnumerateKind::Partition, None) => {
            if a.n > MAX_PARTITION_N {
                return Err(usage(format!(
                    "partitions are listed up to n = {MAX_PARTITION_N}"
                )));
            }
            enumerate_partitions(a.n)
                .into_iter()
                .map(|l| l.parts().to_vec())
                .collect()
        }
    };
    match a.format {
        Format::Text => {
            let what = match a.kind {
                EnumerateKind::Bar => "bar partitions".to_string(),
                EnumerateKind::PbarCore => format!("{}-bar-cores", a.p.unwrap_or_default()),
                EnumerateKind::Partition => "partitions".to_string(),
            };
            header(cli, out, &format!("{} {what} of {}", lists.len(), a.n))?;
            for parts in &lists {
                let body: Vec<String> = parts.iter().map(usize::to_string).collect();
                let mut line = format!("({})", body.join(","));
                if a.kind != EnumerateKind::Partition {
                    let lambda = BarPartition::new(parts.clone())?;
                    let sign = match bar_sign(&lambda) {
                        SignedBarClass::Positive => '+',
                        SignedBarClass::Negative => '-',
                    };
                    line.push(' ');
                    line.push(sign);
                }
                writeln!(out, "{line}")?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&lists)?)?,
        Format::Csv => {
            writeln!(out, "parts")?;
            for parts in &lists {
                writeln!(out, "{}", parts_csv(parts))?;
            }
        }
    }
    Ok(0)
}

fn bar_partition(parts: &[usize]) -> std::result::Result<BarPartition, Failure> {
    Ok(BarPartition::from_unsorted(parts.to_vec())?)
}

fn abacus(cli: &Cli, a: &AbacusArgs, out: &mut dyn Write) -> Outcome {
    let lambda = bar_partition(&a.partition)?;
    let ab = BarAbacus::from_bar_partition(&lambda, a.p)?;
    match a.format {
        Format::Text => {
            header(cli, out, &format!("{}-bar abacus of {lambda}", a.p))?;
            write!(out, "{}", ab.render())?;
            let verdict = if ab.validate_bar_core() { "yes" } else { "no" };
            writeln!(out, "{}-bar-core: {verdict}", a.p)?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&ab)?)?,
        Format::Csv => return Err(usage("abacus supports text and json output")),
    }
    Ok(0)
}

fn degree(cli: &Cli, a: &DegreeArgs, out: &mut dyn Write) -> Outcome {
    let lambda = bar_partition(&a.partition)?;
    let d = spin_degree_with_defects(&lambda, &a.primes)?;
    match a.format {
        Format::Text => {
            header(cli, out, &format!("spin character of {lambda}"))?;
            let rows: Vec<String> = bar_lengths(&lambda)
                .rows()
                .iter()
                .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(out, "bar lengths: {}", rows.join(" | "))?;
            writeln!(out, "degree: {}", d.degree)?;
            for (p, defect) in &d.defects {
                writeln!(out, "defect p={p}: {defect}")?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&d)?)?,
        Format::Csv => {
            writeln!(out, "lambda,degree,p,defect")?;
            for (p, defect) in &d.defects {
                writeln!(
                    out,
                    "{},{},{p},{defect}",
                    parts_csv(lambda.parts()),
                    d.degree
                )?;
            }
        }
    }
    Ok(0)
}

fn verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let statements: Vec<Statement> = if a.source == "all" {
        Statement::ALL.to_vec()
    } else {
        vec![Statement::parse(&a.source)?]
    };
    let mut families = Vec::new();
    for st in &statements {
        if !st.takes_primes() && !a.p.is_empty() && statements.len() == 1 {
            return Err(usage(format!("{} does not take --p", st.id())));
        }
        let primes: Vec<u64> = match st {
            // with several statements, keep only primes each statement accepts
            Statement::SpinSParityFamily | Statement::SpinAParityFamily
                if statements.len() > 1 && !a.p.is_empty() =>
            {
                let ok: Vec<u64> =
                    a.p.iter()
                        .copied()
                        .filter(|p| matches!(p % 24, 5 | 11))
                        .collect();
                if ok.is_empty() {
                    continue;
                }
                ok
            }
            _ if st.takes_primes() => a.p.clone(),
            _ => Vec::new(),
        };
        families.extend(st.families(&primes)?);
    }
    for f in &families {
        check_order(cli, f.max_index(a.n_max))?;
    }
    let reports = verify_families(&families, a.n_max)?;
    for r in &reports {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(if reports.iter().all(|r| r.holds) {
        0
    } else {
        1
    })
}

fn search(cli: &Cli, a: &SearchArgs, out: &mut dyn Write) -> Outcome {
    let counter = Counter::parse(&a.counter, a.p)?;
    check_order(cli, a.a_max.saturating_mul(a.n_max + 1))?;
    let found = search_congruences(counter, a.a_max, &a.moduli, a.n_max)?;
    match a.format {
        Format::Text => {
            header(
                cli,
                out,
                &format!(
                    "{} candidate progressions for {counter}, A <= {}, n <= {} (not proofs)",
                    found.len(),
                    a.a_max,
                    a.n_max
                ),
            )?;
            for f in &found {
                writeln!(out, "{f}")?;
            }
        }
        Format::Json => {
            for f in &found {
                let line = serde_json::json!({
                    "counter": f.counter.to_string(),
                    "A": f.a,
                    "B": f.b,
                    "M": f.modulus,
                    "n_max": a.n_max,
                    "status": f.source,
                });
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "counter,A,B,M,n_max")?;
            for f in &found {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    f.counter, f.a, f.b, f.modulus, a.n_max
                )?;
            }
        }
    }
    Ok(0)
}

fn identities(cli: &Cli, a: &IdentitiesArgs, out: &mut dyn Write) -> Outcome {
    let order = check_order(cli, a.order as u64)?;
    let checks = match a.check {
        IdentityKind::All => all_checks(order)?,
        IdentityKind::Pnt => vec![pnt_check(order)],
        IdentityKind::Jtp => [
            (Sign::Minus, 0),
            (Sign::Plus, 0),
            (Sign::Minus, 1),
            (Sign::Plus, 1),
        ]
        .into_iter()
        .map(|(s, e)| jtp_check(s, e, order))
        .collect::<crate::Result<_>>()?,
        IdentityKind::Qpi => [Sign::Minus, Sign::Plus]
            .into_iter()
            .flat_map(|s| [Sign::Minus, Sign::Plus].map(|t| (s, t)))
            .map(|(s, t)| qpi_check(SignedMonomial::new(s, 1), t, order))
            .collect::<crate::Result<_>>()?,
    };
    header(
        cli,
        out,
        &format!("{} identity checks at order {order}", checks.len()),
    )?;
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    Ok(if checks.iter().all(|c| c.matches) {
        0
    } else {
        1
    })
}

fn counts(cli: &Cli, a: &CountsArgs, out: &mut dyn Write) -> Outcome {
    check_order(cli, a.n_max as u64)?;
    let records = match a.source {
        CountSource::Enumeration => enumerated_records(a.n_max, &a.primes)?,
        CountSource::Series => series_records(a.n_max, &a.primes)?,
    };
    match a.format {
        Format::Csv => write_csv(&records, &a.primes, &mut *out)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&records)?)?,
        Format::Text => return Err(usage("counts supports csv and json output")),
    }
    Ok(0)
}

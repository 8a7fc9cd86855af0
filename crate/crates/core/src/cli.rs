//! The `psinv` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::BoundWorkspace;
use crate::deflation::{deflate, deflation_oracle, Order};
use crate::error::{Error, Result};
use crate::experiments::{self, Experiment};
use crate::ext::Ext;
use crate::io::{load_polynomial_f64, load_series_f64, CoeffFile};
use crate::precision::PrecisionContext;
use crate::pseudozero::{pseudozero_grid, Rect};
use crate::quadratic::{invert_quadratic, quadratic_rel_bounds, QuadSign, QuadraticCase};
use crate::report::{error_report, fmt_f64, Bound};
use crate::series::{invert, NamedSeries, PowerSeries};

pub const ORACLE_DIGITS_ENV: &str = "PSINV_ORACLE_DIGITS";

#[derive(Debug, Parser)]
#[command(name = "psinv", version, about = "Power-series inversion, deflation and their rounding-error bounds")]
pub struct Cli {
    /// Decimal digits of the extended-precision oracle (at least 100).
    #[arg(long, global = true, env = ORACLE_DIGITS_ENV, default_value_t = 100)]
    pub oracle_digits: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invert a series with unit constant term to order n.
    Invert(InvertArgs),
    /// Divide a monic polynomial by (x - a).
    Deflate(DeflateArgs),
    /// Inverse series of x^2 + b x + 1 or x^2 + b x - 1.
    Quadratic(QuadraticArgs),
    /// Actual binary64 inversion errors next to the a-priori bounds.
    Bounds(BoundsArgs),
    /// Pseudozero indicator |p(z)| / |p|(|z|) on a grid.
    Pseudozeros(PseudozeroArgs),
    /// Reproduce one of the figures.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SeriesSource {
    /// JSON coefficient file.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Built-in series: exp, cos, log, geom, randn[:seed].
    #[arg(long)]
    pub named: Option<String>,
}

impl SeriesSource {
    fn load(&self, n: usize, seed: u64) -> Result<PowerSeries<f64>> {
        match (&self.series, &self.named) {
            (Some(path), _) => load_series_f64(path, n),
            (None, Some(tag)) => Ok(NamedSeries::parse(tag, seed)?.binary64(n)),
            (None, None) => Err(Error::InvalidArgument("give --series or --named".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub source: SeriesSource,
    #[arg(long)]
    pub n: usize,
    /// Seed for `--named randn`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Invert at the oracle precision instead of binary64.
    #[arg(long)]
    pub extended: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeflateArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// The root, as a decimal; rounded to binary64.
    #[arg(long, allow_hyphen_values = true)]
    pub root: String,
    #[arg(long, default_value = "forward")]
    pub order: Order,
    /// Fill the bound column.
    #[arg(long)]
    pub bounds: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuadraticArgs {
    /// Middle coefficient, as a decimal; rounded to binary64.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "plus")]
    pub sign: QuadSign,
    #[arg(long)]
    pub n: usize,
    /// Fill the relative bound column (plus case only).
    #[arg(long)]
    pub bounds: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: SeriesSource,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated subset of thm31, cond, stab, infnorm.
    #[arg(long, value_delimiter = ',', default_value = "thm31,cond,stab")]
    pub which: Vec<BoundKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Thm31,
    Cond,
    Stab,
    Infnorm,
}

#[derive(Debug, Args)]
pub struct PseudozeroArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// re_min,re_max,im_min,im_max
    #[arg(long, allow_hyphen_values = true)]
    pub rect: Rect,
    #[arg(long, default_value_t = 200)]
    pub res: usize,
    /// Contour levels; written to `<out stem>_contours.csv`.
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_parser = ["fig1a", "fig1b", "fig2", "fig3"])]
    pub name: String,
    /// fig2: well or ill; fig3: exp, cos, log, randn or randn:<seed>.
    #[arg(long)]
    pub variant: Option<String>,
    /// Seed for the random-normal series (replaces the default seeds 1, 2, 3).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pseudozero grid resolution per axis (fig2).
    #[arg(long)]
    pub res: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("psinv: {e}");
            e.exit_code()
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_f64(s: &str) -> Result<f64> {
    let v = Ext::parse(s, 192).map_err(|_| Error::InvalidArgument(format!("not a decimal number: '{s}'")))?;
    let x = v.to_f64();
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("'{s}' is out of binary64 range")));
    }
    Ok(x)
}

pub fn execute(cli: &Cli) -> Result<()> {
    let oracle = PrecisionContext::extended(cli.oracle_digits)?;
    match &cli.command {
        Command::Invert(a) => cmd_invert(a, &oracle),
        Command::Deflate(a) => cmd_deflate(a, &oracle),
        Command::Quadratic(a) => cmd_quadratic(a, &oracle),
        Command::Bounds(a) => cmd_bounds(a, &oracle),
        Command::Pseudozeros(a) => cmd_pseudozeros(a),
        Command::Experiment(a) => {
            let exp = Experiment::parse(&a.name, a.variant.as_deref(), a.seed, a.res)?;
            experiments::run(&exp, &oracle, &a.out).map(|_| ())
        }
    }
}

fn write_coeffs(values: Vec<String>, json: Option<CoeffFile>, format: Format, out: Option<&Path>) -> Result<()> {
    let mut w = output(out)?;
    match format {
        Format::Json => json.expect("json form").write(&mut w)?,
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["k", "coeff"])?;
            for (k, v) in values.iter().enumerate() {
                c.write_record([k.to_string(), v.clone()])?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_invert(a: &InvertArgs, oracle: &PrecisionContext) -> Result<()> {
    let p = a.source.load(a.n, a.seed)?;
    if a.extended {
        let q = invert(&p.to_ext(oracle), a.n)?;
        let strings = q.coeffs().iter().map(Ext::to_decimal).collect();
        write_coeffs(strings, Some(CoeffFile::from_ext(q.coeffs())), a.format, a.out.as_deref())
    } else {
        let q = invert(&p, a.n)?;
        let strings = q.coeffs().iter().map(|&x| fmt_f64(x)).collect();
        write_coeffs(strings, Some(CoeffFile::from_f64(q.coeffs())), a.format, a.out.as_deref())
    }
}

/// `k,coeff,oracle_coeff,abs_err,rel_err,bound`; relative cells are empty
/// where the oracle value is zero.
fn write_comparison(
    out: Option<&Path>,
    computed: &[f64],
    oracle: &[Ext],
    bound: Option<(Vec<Ext>, bool)>,
) -> Result<()> {
    let bounds = match &bound {
        Some((v, true)) => vec![Bound::Absolute("bound".into(), v.clone())],
        Some((v, false)) => vec![Bound::Relative("bound".into(), v.clone())],
        None => vec![],
    };
    let r = error_report("cmp", computed, oracle, bounds)?;
    let mut w = output(out)?;
    let mut c = csv::Writer::from_writer(&mut w);
    c.write_record(["k", "coeff", "oracle_coeff", "abs_err", "rel_err", "bound"])?;
    for i in 0..r.len() {
        let bound_cell = match &bound {
            Some((v, true)) => fmt_f64(v[i].to_f64_up()),
            Some((v, false)) if !r.excluded(i) => fmt_f64(v[i].to_f64_up()),
            _ => String::new(),
        };
        c.write_record([
            r.k[i].to_string(),
            fmt_f64(r.computed[i]),
            r.oracle[i].to_decimal(),
            fmt_f64(r.abs_err[i].to_f64_up()),
            r.rel_f64(i).map(fmt_f64).unwrap_or_default(),
            bound_cell,
        ])?;
    }
    c.flush()?;
    drop(c);
    w.flush()?;
    Ok(())
}

fn cmd_deflate(a: &DeflateArgs, oracle: &PrecisionContext) -> Result<()> {
    let p = load_polynomial_f64(&a.poly)?;
    let root = parse_f64(&a.root)?;
    let d = deflate(&p, &root, a.order, &PrecisionContext::binary64())?;
    let exact = deflation_oracle(&p, root, a.order, oracle)?;
    let bound = a.bounds.then(|| (d.bound.clone(), true));
    write_comparison(a.out.as_deref(), d.quotient.coeffs(), exact.coeffs(), bound)
}

fn cmd_quadratic(a: &QuadraticArgs, oracle: &PrecisionContext) -> Result<()> {
    let b = parse_f64(&a.b)?;
    if a.bounds && a.sign == QuadSign::Minus {
        return Err(Error::InvalidArgument("--bounds is only defined for --sign plus".into()));
    }
    let computed = invert_quadratic(&QuadraticCase { b, sign: a.sign, n: a.n });
    let exact = invert_quadratic(&QuadraticCase { b: Ext::from_f64(b, oracle.bits()), sign: a.sign, n: a.n });
    let bound = if a.bounds {
        // rows with F_k(b) = 0 are excluded anyway; any placeholder will do
        let v = quadratic_rel_bounds(b, a.n, &PrecisionContext::binary64())
            .into_iter()
            .map(|r| match r {
                Ok(v) => Ok(v),
                Err(Error::InfiniteRelativeBound(_)) => Ok(Ext::zero(64)),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        Some((v, false))
    } else {
        None
    };
    write_comparison(a.out.as_deref(), computed.coeffs(), exact.coeffs(), bound)
}

fn cmd_bounds(a: &BoundsArgs, oracle: &PrecisionContext) -> Result<()> {
    let p = a.source.load(a.n, a.seed)?;
    let computed = invert(&p, a.n)?;
    let ws = BoundWorkspace::new(&p, a.n, &PrecisionContext::binary64(), oracle)?;
    let mut bounds = Vec::new();
    for kind in [BoundKind::Thm31, BoundKind::Cond, BoundKind::Stab, BoundKind::Infnorm] {
        if !a.which.contains(&kind) {
            continue;
        }
        let (name, v) = match kind {
            BoundKind::Thm31 => ("thm31", ws.theorem31()?),
            BoundKind::Cond => ("cond", ws.condition()),
            BoundKind::Stab => ("stab", ws.stability()?),
            BoundKind::Infnorm => ("infnorm", vec![ws.infnorm()?; a.n + 1]),
        };
        bounds.push(Bound::Absolute(name.into(), v));
    }
    let r = error_report("bounds", computed.coeffs(), ws.oracle_inverse(), bounds)?;

    let mut names = vec!["thm31", "cond", "stab"];
    if a.which.contains(&BoundKind::Infnorm) {
        names.push("infnorm");
    }
    let mut w = output(a.out.as_deref())?;
    let mut c = csv::Writer::from_writer(&mut w);
    let mut header = vec!["k".to_string(), "c_k_oracle".into(), "rel_err_binary64".into()];
    header.extend(names.iter().map(|n| format!("{n}_rel")));
    c.write_record(&header)?;
    for i in 0..r.len() {
        let mut row = vec![r.k[i].to_string(), r.oracle[i].to_decimal(), r.rel_f64(i).map(fmt_f64).unwrap_or_default()];
        for n in &names {
            row.push(
                r.bound(n)
                    .and_then(|b| b.rel[i].as_ref())
                    .map(|v| fmt_f64(v.to_f64_up()))
                    .unwrap_or_default(),
            );
        }
        c.write_record(&row)?;
    }
    c.flush()?;
    drop(c);
    w.flush()?;
    Ok(())
}

fn cmd_pseudozeros(a: &PseudozeroArgs) -> Result<()> {
    let p = load_polynomial_f64(&a.poly)?;
    let grid = pseudozero_grid(&p, a.rect, a.res)?;
    if !a.eps.is_empty() {
        let Some(out) = &a.out else {
            return Err(Error::InvalidArgument("--eps needs --out to name the contour file".into()));
        };
        let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("pseudozeros");
        let path = out.with_file_name(format!("{stem}_contours.csv"));
        experiments::write_contours(&grid, &a.eps, std::io::BufWriter::new(std::fs::File::create(path)?))?;
    }
    let mut w = output(a.out.as_deref())?;
    experiments::write_grid(&grid, &mut w)?;
    w.flush()?;
    Ok(())
}

//! Reproduction of the four figures as error reports against the oracle.
//!
//! Every binary64 computation runs on binary64 input data; the oracle runs the
//! exact counterpart on the same data at extended precision, so the reported
//! error is rounding error only (except for the pseudozero figure, see
//! [`fig2`]).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use crate::complex::Cx;
use crate::deflation::{deflate_forward, deflation_oracle, Order};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::polynomial::{
    binomial_power, chebyshev, chebyshev_roots, clustered_roots, from_roots, well_separated_roots, Polynomial,
};
use crate::precision::{Mode, PrecisionContext};
use crate::pseudozero::{pseudozero_grid, PseudozeroGrid, Rect, RootAnalysis};
use crate::report::{error_report, fmt_f64, Bound, ErrorReport};
use crate::series::{invert, NamedSeries, PowerSeries};
use crate::thresholds;
use crate::bounds::BoundWorkspace;

/// Degree of the binomial power and of the Chebyshev polynomial.
pub const FIG1_DEGREE: usize = 100;
/// Order to which the Fig 3 series are inverted.
pub const FIG3_ORDER: usize = 100;
/// Order of the inverse series reported next to each pseudozero plot.
pub const FIG2_ORDER: usize = 100;
pub const FIG2_RESOLUTION: usize = 400;
/// Levels at which pseudozero contours are exported.
pub const FIG2_CONTOUR_LEVELS: [f64; 3] = [1e-16, 1e-12, 1e-8];
/// Default seeds for the random-normal series.
pub const RANDN_SEEDS: [u64; 3] = [1, 2, 3];
/// 1-based indices of the Chebyshev roots nearest 0 and nearest 1 used in Fig 1b.
pub const FIG1B_NEAR_ZERO_ROOT: usize = 53;
pub const FIG1B_NEAR_ONE_ROOT: usize = 3;

fn oracle_check(oracle: &PrecisionContext) -> Result<()> {
    if oracle.is_extended() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("experiments need an extended oracle precision".into()))
    }
}

fn sqrt2(oracle: &PrecisionContext) -> Ext {
    Ext::from_i64(2, oracle.bits() + 64).sqrt()
}

/// Drops the leading coefficient (exactly 1 for a monic result).
fn below_leading<T: Clone>(v: &[T]) -> Vec<T> {
    v[..v.len() - 1].to_vec()
}

/// `(x - sqrt2)^100` deflated forward by `fl(sqrt2)`, and the product of 99
/// factors `x - fl(sqrt2)`, both in binary64. Rows are `k = 0..98`.
pub fn fig1a(oracle: &PrecisionContext) -> Result<[ErrorReport; 2]> {
    oracle_check(oracle)?;
    let b64 = PrecisionContext::binary64();
    let root = sqrt2(oracle);
    let a = root.to_f64();

    let p: Polynomial<f64> = binomial_power(&root, FIG1_DEGREE, oracle)?;
    let d = deflate_forward(&p, &a, &b64)?;
    let exact = deflation_oracle(&p, a, Order::Forward, oracle)?;
    let deflation = error_report(
        "fig1a_deflation",
        &below_leading(d.quotient.coeffs()),
        &below_leading(exact.coeffs()),
        vec![Bound::Absolute("deflation".into(), below_leading(&d.bound))],
    )?;

    let n = FIG1_DEGREE - 1;
    let computed = from_roots(&vec![Cx::real(a); n])?;
    let ae = Ext::from_f64(a, oracle.bits());
    let exact = from_roots(&vec![Cx::real(ae); n])?;
    let product = error_report(
        "fig1a_product",
        &below_leading(computed.coeffs()),
        &below_leading(exact.coeffs()),
        vec![],
    )?;
    Ok([deflation, product])
}

/// Monic `T_100` (rounded to binary64) deflated forward by its root nearest 0
/// and by a root near 1, each against the exact quotient of the same data.
pub fn fig1b(oracle: &PrecisionContext) -> Result<[ErrorReport; 2]> {
    oracle_check(oracle)?;
    let b64 = PrecisionContext::binary64();
    let p: Polynomial<f64> = chebyshev(FIG1_DEGREE).monic(&b64)?;
    let roots = chebyshev_roots(FIG1_DEGREE, oracle)?;
    let run = |j: usize, label: &str| -> Result<ErrorReport> {
        let a = roots.roots[j - 1].re.to_f64();
        let d = deflate_forward(&p, &a, &b64)?;
        let exact = deflation_oracle(&p, a, Order::Forward, oracle)?;
        error_report(
            label,
            &below_leading(d.quotient.coeffs()),
            &below_leading(exact.coeffs()),
            vec![Bound::Absolute("deflation".into(), below_leading(&d.bound))],
        )
    };
    Ok([run(FIG1B_NEAR_ZERO_ROOT, "fig1b_near_zero")?, run(FIG1B_NEAR_ONE_ROOT, "fig1b_near_one")?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fig2Case {
    /// Roots `2^(i/2)`, `i = -3..9`.
    Well,
    /// Roots `i sqrt2`, `i = 1..13`.
    Ill,
}

impl Fig2Case {
    pub fn label(&self) -> &'static str {
        match self {
            Fig2Case::Well => "well",
            Fig2Case::Ill => "ill",
        }
    }

    /// Plot window; not stated for the original figure.
    pub fn rect(&self) -> Rect {
        match self {
            Fig2Case::Well => Rect { re_min: -2.0, re_max: 24.0, im_min: -6.0, im_max: 6.0 },
            Fig2Case::Ill => Rect { re_min: 0.0, re_max: 20.0, im_min: -6.0, im_max: 6.0 },
        }
    }
}

impl std::str::FromStr for Fig2Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "well" => Ok(Fig2Case::Well),
            "ill" => Ok(Fig2Case::Ill),
            _ => Err(Error::InvalidArgument(format!("unknown fig2 variant '{s}' (expected well or ill)"))),
        }
    }
}

/// Pseudozero grid of the degree-13 example, and the relative error of the
/// binary64 inverse of `p/p_0` against the inverse of the exact polynomial,
/// with the root-conditioning bound at `eps = u` in relative form.
///
/// Unlike the other figures the error includes the rounding of the input
/// coefficients, since that perturbation is what the bound describes.
pub fn fig2(case: Fig2Case, oracle: &PrecisionContext, resolution: usize) -> Result<(PseudozeroGrid, ErrorReport)> {
    oracle_check(oracle)?;
    let set = match case {
        Fig2Case::Well => well_separated_roots(oracle),
        Fig2Case::Ill => clustered_roots(oracle),
    };
    let p = set.polynomial()?;
    let p64 = p.to_f64()?;
    let grid = pseudozero_grid(&p64, case.rect(), resolution)?;

    let n = FIG2_ORDER;
    let normalized = p.normalized_series()?;
    let mut data: Vec<f64> = normalized.coeffs().iter().map(Ext::to_f64).collect();
    data.resize(n + 1, 0.0);
    let computed = invert(&PowerSeries::from_f64(&data)?, n)?;

    let mut exact = normalized.into_coeffs();
    exact.resize(n + 1, Ext::zero(oracle.bits()));
    let exact = invert(&PowerSeries::new(exact)?, n)?;

    let analysis = RootAnalysis::new(&p, &set)?;
    let q = analysis.inverse_coeffs(n)?;
    let kappa = analysis.kappa_bounds(n, bound_eps())?;
    let rel: Vec<Ext> = kappa.iter().zip(&q).map(|(b, qk)| b / &qk.abs()).collect();
    let report = error_report(
        &format!("fig2_{}", case.label()),
        computed.coeffs(),
        exact.coeffs(),
        vec![Bound::Relative("kappa".into(), rel)],
    )?;
    Ok((grid, report))
}

/// Relative size of the coefficient perturbation in the root-conditioning bound: binary64 `u`.
fn bound_eps() -> f64 {
    PrecisionContext::binary64().unit_roundoff_f64()
}

/// Binary64 inversion of a named series to order `n` against the oracle, with
/// the componentwise bound (`thm31`), the condition bound (`cond`) and the
/// stability bound (`stab`). Rows with an exactly zero inverse coefficient
/// (the odd terms of `sec`) are excluded.
pub fn fig3(series: NamedSeries, n: usize, oracle: &PrecisionContext) -> Result<ErrorReport> {
    oracle_check(oracle)?;
    let data = series.binary64(n);
    let computed = invert(&data, n)?;
    let ws = BoundWorkspace::new(&data, n, &PrecisionContext::binary64(), oracle)?;
    error_report(
        &format!("fig3_{}", series.label()),
        computed.coeffs(),
        ws.oracle_inverse(),
        vec![
            Bound::Absolute("thm31".into(), ws.theorem31()?),
            Bound::Absolute("cond".into(), ws.condition()),
            Bound::Absolute("stab".into(), ws.stability()?),
        ],
    )
}

/// Settings and provenance written next to the CSV files.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub experiment: String,
    pub precision: Mode,
    pub oracle_bits: usize,
    pub unit_roundoff: f64,
    pub rng: Option<&'static str>,
    pub seeds: Vec<u64>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub thresholds: BTreeMap<&'static str, f64>,
    /// Choices not fixed by the original figures.
    pub reconstructions: Vec<String>,
    pub files: Vec<String>,
}

impl Metadata {
    fn new(experiment: &str, oracle: &PrecisionContext) -> Self {
        Metadata {
            experiment: experiment.into(),
            precision: oracle.mode(),
            oracle_bits: oracle.bits(),
            unit_roundoff: PrecisionContext::binary64().unit_roundoff_f64(),
            rng: None,
            seeds: Vec::new(),
            parameters: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            reconstructions: Vec::new(),
            files: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, v: impl Serialize) {
        self.parameters.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }
}

/// Which experiment to run, with its variant selection.
#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Fig1a,
    Fig1b,
    Fig2 { cases: Vec<Fig2Case>, resolution: usize },
    Fig3 { series: Vec<NamedSeries> },
}

impl Experiment {
    /// `variant` picks one case (`well`/`ill` for fig2, a series tag for fig3);
    /// `seed` replaces the default random-normal seeds.
    pub fn parse(name: &str, variant: Option<&str>, seed: Option<u64>, resolution: Option<usize>) -> Result<Self> {
        let no_variant = |v: Option<&str>| match v {
            None => Ok(()),
            Some(v) => Err(Error::InvalidArgument(format!("{name} takes no variant, got '{v}'"))),
        };
        match name {
            "fig1a" => no_variant(variant).map(|_| Experiment::Fig1a),
            "fig1b" => no_variant(variant).map(|_| Experiment::Fig1b),
            "fig2" => Ok(Experiment::Fig2 {
                cases: match variant {
                    None => vec![Fig2Case::Well, Fig2Case::Ill],
                    Some(v) => vec![v.parse()?],
                },
                resolution: resolution.unwrap_or(FIG2_RESOLUTION),
            }),
            "fig3" => {
                let seeds = seed.map(|s| vec![s]).unwrap_or_else(|| RANDN_SEEDS.to_vec());
                let randn = || seeds.iter().map(|&s| NamedSeries::Randn(s));
                let series = match variant {
                    None => {
                        let mut v = vec![NamedSeries::Exp, NamedSeries::Cos];
                        v.extend(randn());
                        v.push(NamedSeries::Log);
                        v
                    }
                    Some("randn") => randn().collect(),
                    Some(v) => vec![NamedSeries::parse(v, seeds[0])?],
                };
                Ok(Experiment::Fig3 { series })
            }
            _ => Err(Error::InvalidArgument(format!("unknown experiment '{name}' (expected fig1a, fig1b, fig2 or fig3)"))),
        }
    }
}

fn create(dir: &Path, name: &str, meta: &mut Metadata) -> Result<BufWriter<File>> {
    meta.files.push(name.into());
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn write_report(dir: &Path, r: &ErrorReport, meta: &mut Metadata) -> Result<()> {
    let w = create(dir, &format!("{}.csv", r.label), meta)?;
    r.write_csv(w)
}

/// `re,im,indicator`, row-major.
pub fn write_grid<W: std::io::Write>(g: &PseudozeroGrid, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["re", "im", "indicator"])?;
    for row in 0..g.resolution {
        for col in 0..g.resolution {
            out.write_record([fmt_f64(g.re_at(col)), fmt_f64(g.im_at(row)), fmt_f64(g.value(row, col))])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `eps,re,im` for each level.
pub fn write_contours<W: std::io::Write>(g: &PseudozeroGrid, levels: &[f64], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["eps", "re", "im"])?;
    for &eps in levels {
        for (re, im) in g.contour(eps) {
            out.write_record([fmt_f64(eps), fmt_f64(re), fmt_f64(im)])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Runs the experiment, writes its CSV files and `<name>_metadata.json` into
/// `dir` (created if missing), and returns the metadata.
pub fn run(exp: &Experiment, oracle: &PrecisionContext, dir: &Path) -> Result<Metadata> {
    std::fs::create_dir_all(dir)?;
    let mut meta;
    match exp {
        Experiment::Fig1a => {
            meta = Metadata::new("fig1a", oracle);
            meta.param("degree", FIG1_DEGREE);
            meta.param("order", Order::Forward);
            meta.thresholds.insert("early_rel_max", thresholds::FIG1A_EARLY_REL_MAX);
            meta.thresholds.insert("growth_min", thresholds::FIG1A_GROWTH_MIN);
            meta.thresholds.insert("product_rel_max", thresholds::FIG1A_PRODUCT_REL_MAX);
            for r in fig1a(oracle)? {
                write_report(dir, &r, &mut meta)?;
            }
        }
        Experiment::Fig1b => {
            meta = Metadata::new("fig1b", oracle);
            meta.param("degree", FIG1_DEGREE);
            meta.param("near_zero_root_index", FIG1B_NEAR_ZERO_ROOT);
            meta.param("near_one_root_index", FIG1B_NEAR_ONE_ROOT);
            meta.thresholds.insert("near_one_rel_max", thresholds::FIG1B_NEAR_ONE_REL_MAX);
            meta.thresholds.insert("near_zero_rel_min", thresholds::FIG1B_NEAR_ZERO_REL_MIN);
            meta.reconstructions.push("Chebyshev degree 100 and the two root indices are not stated for the original figure".into());
            for r in fig1b(oracle)? {
                write_report(dir, &r, &mut meta)?;
            }
        }
        Experiment::Fig2 { cases, resolution } => {
            meta = Metadata::new("fig2", oracle);
            meta.param("order", FIG2_ORDER);
            meta.param("resolution", resolution);
            meta.param("contour_levels", FIG2_CONTOUR_LEVELS);
            meta.param("bound_eps", bound_eps());
            meta.thresholds.insert("ill_ratio_min", thresholds::FIG2_ILL_RATIO_MIN);
            meta.reconstructions.push("plot windows, grid resolution and contour levels are not stated for the original figure".into());
            for &case in cases {
                meta.param(&format!("{}_rect", case.label()), case.rect());
                let (grid, report) = fig2(case, oracle, *resolution)?;
                write_report(dir, &report, &mut meta)?;
                write_grid(&grid, create(dir, &format!("fig2_{}_grid.csv", case.label()), &mut meta)?)?;
                write_contours(
                    &grid,
                    &FIG2_CONTOUR_LEVELS,
                    create(dir, &format!("fig2_{}_contours.csv", case.label()), &mut meta)?,
                )?;
            }
        }
        Experiment::Fig3 { series } => {
            meta = Metadata::new("fig3", oracle);
            meta.param("order", FIG3_ORDER);
            meta.thresholds.insert("median_ratio_max", thresholds::FIG3_MEDIAN_RATIO_MAX);
            for s in series {
                match s {
                    NamedSeries::Randn(seed) => {
                        meta.rng = Some("ChaCha20 (rand_chacha), StandardNormal (rand_distr), seeded with seed_from_u64");
                        meta.seeds.push(*seed);
                    }
                    NamedSeries::Exp => meta.reconstructions.push("exp(x) stands in for an unnamed benign panel".into()),
                    _ => {}
                }
                write_report(dir, &fig3(*s, FIG3_ORDER, oracle)?, &mut meta)?;
            }
        }
    }
    let name = format!("{}_metadata.json", meta.experiment);
    meta.files.push(name.clone());
    let f = BufWriter::new(File::create(dir.join(name))?);
    serde_json::to_writer_pretty(f, &meta)?;
    Ok(meta)
}

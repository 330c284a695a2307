//! Command-line front end.
//!
//! Settings are resolved as defaults < config file < `TEICH_*` environment
//! variables < flags. Every command writes to a `String` so output can be
//! compared byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::collar::{collar_decomposition, default_margulis, CollarParams, DEFAULT_EPS0, DEFAULT_EPS1};
use crate::error::{Error, Result};
use crate::extremal::{ComponentId, Estimator};
use crate::format::{parse_document, Document};
use crate::hyp2::{hyp_distance, UHPoint};
use crate::instability::{geometric_ladder, growth_rate_estimate, validate_ladder, SearchBudget, Space};
use crate::surface::{CurveId, FNPoint, Marking};
use crate::teich::{kerckhoff_distance_estimate, torus_family_estimate, CurveFamily, FamilyBounds, ProductRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Rows,
}

#[derive(Debug, Parser)]
#[command(name = "teich", version, about = "Fenchel-Nielsen geometry and extremal-length estimates")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, env = "TEICH_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "TEICH_EPS0")]
    pub eps0: Option<f64>,
    #[arg(long, global = true, env = "TEICH_EPS1")]
    pub eps1: Option<f64>,
    #[arg(long, global = true, env = "TEICH_MARGULIS")]
    pub margulis: Option<f64>,
    /// Largest intersection number in the default curve family.
    #[arg(long, global = true, env = "TEICH_FAMILY_I")]
    pub family_i: Option<u64>,
    /// Largest twist offset in the default curve family.
    #[arg(long, global = true, env = "TEICH_FAMILY_B")]
    pub family_b: Option<i64>,
    /// Family size for torus distances.
    #[arg(long, global = true, env = "TEICH_TORUS_N")]
    pub torus_n: Option<u32>,
    /// Largest allowed boundary length.
    #[arg(long, global = true, env = "TEICH_ELL0")]
    pub ell0: Option<f64>,
    #[arg(long, global = true, env = "TEICH_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "TEICH_SAMPLES")]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_enum, env = "TEICH_FORMAT")]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a marking file and summarise it.
    Validate { surface: PathBuf },
    /// Thin annuli and thick components of a point.
    Collar { surface: PathBuf, point: PathBuf },
    /// Extremal-length estimates for every curve in a file.
    Extremal {
        surface: PathBuf,
        point: PathBuf,
        curves: PathBuf,
    },
    /// Estimated distance between two points, or between two tori with `--torus`.
    Distance {
        #[arg(long)]
        torus: bool,
        /// Marking file, or the first torus modulus `x,y` with `--torus`.
        first: String,
        /// First point file, or the second torus modulus with `--torus`.
        second: String,
        third: Option<PathBuf>,
    },
    /// Estimated distance against the product-region distance.
    Product {
        surface: PathBuf,
        point1: PathBuf,
        point2: PathBuf,
        /// Comma-separated pinched curves.
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<String>,
    },
    /// Instability lower bounds along a ladder of scales.
    Instability {
        /// euclidean:N, supprod:N, hyp-product:K or pi-image:<marking file>
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Comma-separated scales.
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<f64>>,
    },
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: CollarParams,
    pub bounds: FamilyBounds,
    pub torus_n: u32,
    pub ell0: f64,
    pub budget: SearchBudget,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: CollarParams::default(),
            bounds: FamilyBounds::default(),
            torus_n: 50,
            ell0: 10.0,
            budget: SearchBudget::default(),
            format: OutputFormat::Table,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

fn parse_file(path: &Path) -> Result<Document> {
    let text = read(path)?;
    parse_document(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn set<T: std::str::FromStr>(slot: &mut Option<T>, key: &str, value: &str, line: usize) -> Result<()> {
    *slot = Some(
        value
            .parse()
            .map_err(|_| usage(format!("config line {line}: bad value {value:?} for {key}")))?,
    );
    Ok(())
}

/// Reads a config file into `options`, keeping values that are already set.
fn merge_config(options: &Options, text: &str) -> Result<Options> {
    let mut file = Options::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {line}: expected `key = value`")))?;
        let (k, v) = (k.trim().replace('-', "_"), v.trim());
        match k.as_str() {
            "eps0" => set(&mut file.eps0, &k, v, line)?,
            "eps1" => set(&mut file.eps1, &k, v, line)?,
            "margulis" => set(&mut file.margulis, &k, v, line)?,
            "family_i" => set(&mut file.family_i, &k, v, line)?,
            "family_b" => set(&mut file.family_b, &k, v, line)?,
            "torus_n" => set(&mut file.torus_n, &k, v, line)?,
            "ell0" => set(&mut file.ell0, &k, v, line)?,
            "seed" => set(&mut file.seed, &k, v, line)?,
            "samples" => set(&mut file.samples, &k, v, line)?,
            "format" => {
                file.format = Some(
                    OutputFormat::from_str(v, true)
                        .map_err(|_| usage(format!("config line {line}: bad format {v:?}")))?,
                )
            }
            _ => return Err(usage(format!("config line {line}: unknown key {k:?}"))),
        }
    }
    Ok(Options {
        config: options.config.clone(),
        eps0: options.eps0.or(file.eps0),
        eps1: options.eps1.or(file.eps1),
        margulis: options.margulis.or(file.margulis),
        family_i: options.family_i.or(file.family_i),
        family_b: options.family_b.or(file.family_b),
        torus_n: options.torus_n.or(file.torus_n),
        ell0: options.ell0.or(file.ell0),
        seed: options.seed.or(file.seed),
        samples: options.samples.or(file.samples),
        format: options.format.or(file.format),
    })
}

/// Applies the config file and defaults to command-line and environment values.
pub fn resolve_config(options: &Options) -> Result<RunConfig> {
    let o = match &options.config {
        Some(path) => merge_config(options, &read(path)?)?,
        None => options.clone(),
    };
    let d = RunConfig::default();
    let params = CollarParams::new(
        o.eps0.unwrap_or(DEFAULT_EPS0),
        o.eps1.unwrap_or(DEFAULT_EPS1),
        o.margulis.unwrap_or_else(default_margulis),
    )?;
    let bounds = FamilyBounds {
        i_max: o.family_i.unwrap_or(d.bounds.i_max),
        b_max: o.family_b.unwrap_or(d.bounds.b_max),
    };
    if bounds.i_max == 0 || bounds.b_max < 0 {
        return Err(usage("family bounds must be positive"));
    }
    let torus_n = o.torus_n.unwrap_or(d.torus_n);
    let ell0 = o.ell0.unwrap_or(d.ell0);
    if torus_n == 0 || !(ell0 > 0.0) {
        return Err(usage("torus-n and ell0 must be positive"));
    }
    Ok(RunConfig {
        params,
        bounds,
        torus_n,
        ell0,
        budget: SearchBudget {
            random_samples: o.samples.unwrap_or(d.budget.random_samples),
            seed: o.seed.unwrap_or(d.budget.seed),
            resolution: d.budget.resolution,
        },
        format: o.format.unwrap_or(d.format),
    })
}

/// `x` with six significant digits.
fn short(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..6).contains(&e) {
        format!("{:.*}", (5 - e) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

/// Tab-separated rows with a `#` header, or an aligned table.
struct Report {
    format: OutputFormat,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

enum Cell {
    Text(String),
    Num(f64),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl Report {
    fn new(format: OutputFormat, header: &[&'static str]) -> Self {
        Self {
            format,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<Cell>) {
        let f = self.format;
        self.rows.push(
            cells
                .into_iter()
                .map(|c| match c {
                    Cell::Text(s) => s,
                    Cell::Num(x) if f == OutputFormat::Rows => format!("{x:.16e}"),
                    Cell::Num(x) => short(x),
                })
                .collect(),
        );
    }

    fn render(&self, out: &mut String) {
        match self.format {
            OutputFormat::Rows => {
                let _ = writeln!(out, "#{}", self.header.join("\t"));
                for r in &self.rows {
                    let _ = writeln!(out, "{}", r.join("\t"));
                }
            }
            OutputFormat::Table => {
                let mut w: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (i, c) in r.iter().enumerate() {
                        w[i] = w[i].max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c:<width$}", width = w[i]))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_owned()
                };
                let _ = writeln!(out, "{}", line(self.header.clone()));
                for r in &self.rows {
                    let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
                }
            }
        }
    }
}

fn load_marking(path: &Path) -> Result<Marking> {
    parse_file(path)?.marking()
}

fn load_point(path: &Path, marking: &Marking, cfg: &RunConfig) -> Result<FNPoint> {
    let p = parse_file(path)?.fn_point(marking)?;
    for id in marking.decomposition().curve_ids() {
        if !marking.is_internal(id)? && p.lengths()[id.0] > cfg.ell0 {
            eprintln!(
                "warning: boundary curve {} has length {} above ell0 = {}",
                marking.curve_name(id),
                p.lengths()[id.0],
                cfg.ell0
            );
        }
    }
    Ok(p)
}

fn cmd_validate(surface: &Path, out: &mut String) -> Result<()> {
    let m = load_marking(surface)?;
    let d = m.decomposition();
    let n = d.curves().len();
    let _ = writeln!(
        out,
        "{n} {}, {} pants, χ={}",
        if n == 1 { "curve" } else { "curves" },
        d.pants().len(),
        m.euler_characteristic()
    );
    for id in d.internal_curves() {
        let (a, b) = d.adjacent_pants(id).expect("internal curve");
        let _ = writeln!(out, "{}: {} | {}", m.curve_name(id), d.pants()[a].name, d.pants()[b].name);
    }
    Ok(())
}

fn cmd_collar(surface: &Path, point: &Path, cfg: &RunConfig, out: &mut String) -> Result<()> {
    let m = load_marking(surface)?;
    let s = load_point(point, &m, cfg)?;
    let c = collar_decomposition(&m, &s, &cfg.params)?;
    let mut r = Report::new(cfg.format, &["component", "curve", "core_length", "modulus", "pants"]);
    for a in &c.thin {
        r.row(vec![
            (if a.peripheral { "peripheral" } else { "annulus" }).into(),
            m.curve_name(a.curve).into(),
            a.core_length.into(),
            a.modulus.into(),
            "-".into(),
        ]);
    }
    for (k, t) in c.thick.iter().enumerate() {
        let pants: Vec<&str> = t.pants.iter().map(|&p| m.decomposition().pants()[p].name.as_str()).collect();
        let cuffs: Vec<&str> = t.cuffs.iter().map(|&j| m.curve_name(j)).collect();
        r.row(vec![
            format!("thick{k}").into(),
            (if cuffs.is_empty() { "-".to_owned() } else { cuffs.join(",") }).into(),
            "-".into(),
            "-".into(),
            pants.join(",").into(),
        ]);
    }
    r.render(out);
    Ok(())
}

fn cmd_extremal(surface: &Path, point: &Path, curves: &Path, cfg: &RunConfig, out: &mut String) -> Result<()> {
    let m = load_marking(surface)?;
    let s = load_point(point, &m, cfg)?;
    let systems = parse_file(curves)?.curve_systems(&m)?;
    let est = Estimator::new(&m, &s, &cfg.params).map_err(Error::from)?;
    let mut r = Report::new(cfg.format, &["curve", "component", "kind", "value"]);
    for (name, beta) in &systems {
        let e = est.estimate(beta)?;
        for c in &e.breakdown {
            let (id, kind) = match c.component {
                ComponentId::Annulus(j) => (m.curve_name(j).to_owned(), "annulus"),
                ComponentId::Thick(k) => (format!("thick{k}"), "thick"),
            };
            r.row(vec![name.clone().into(), id.into(), kind.into(), c.value.into()]);
        }
        r.row(vec![name.clone().into(), "total".into(), "max".into(), e.value.into()]);
    }
    r.render(out);
    Ok(())
}

fn parse_modulus(s: &str) -> Result<UHPoint> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("expected a torus modulus `x,y`, found {s:?}")))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("bad number {t:?} in torus modulus")))
    };
    Ok(UHPoint::new(num(x)?, num(y)?)?)
}

fn cmd_distance(torus: bool, first: &str, second: &str, third: Option<&Path>, cfg: &RunConfig, out: &mut String) -> Result<()> {
    let mut r;
    if torus {
        if third.is_some() {
            return Err(usage("--torus takes exactly two moduli"));
        }
        let (z1, z2) = (parse_modulus(first)?, parse_modulus(second)?);
        r = Report::new(cfg.format, &["d_hat", "d_exact", "n"]);
        r.row(vec![
            torus_family_estimate(z1, z2, cfg.torus_n).into(),
            hyp_distance(z1, z2).into(),
            cfg.torus_n.to_string().into(),
        ]);
    } else {
        let third = third.ok_or_else(|| usage("distance needs a marking and two point files"))?;
        let m = load_marking(Path::new(first))?;
        let s = load_point(Path::new(second), &m, cfg)?;
        let t = load_point(third, &m, cfg)?;
        let family = CurveFamily::generate(&m, cfg.bounds)?;
        let d = kerckhoff_distance_estimate(&s, &t, &family, &m, &cfg.params)?;
        r = Report::new(cfg.format, &["d_hat", "family_size"]);
        r.row(vec![d.into(), family.len().to_string().into()]);
    }
    r.render(out);
    Ok(())
}

fn cmd_product(surface: &Path, p1: &Path, p2: &Path, gamma: &[String], cfg: &RunConfig, out: &mut String) -> Result<()> {
    let m = load_marking(surface)?;
    let s = load_point(p1, &m, cfg)?;
    let t = load_point(p2, &m, cfg)?;
    let mut ids = BTreeSet::new();
    for g in gamma {
        let id = m
            .decomposition()
            .find_curve(g.trim())
            .ok_or_else(|| usage(format!("no curve named {g:?}")))?;
        ids.insert(id);
    }
    let family = CurveFamily::generate(&m, cfg.bounds)?;
    let region = ProductRegion::new(&m, ids, cfg.params, cfg.bounds)?;
    let d = region.discrepancy(&s, &t, &family)?;
    if d.thin_warning {
        eprintln!("warning: a pinched curve is longer than eps1 in one of the points");
    }
    let mut r = Report::new(cfg.format, &["d_hat", "d_product", "discrepancy"]);
    r.row(vec![d.d_teich.into(), d.d_product.into(), d.discrepancy.into()]);
    r.render(out);
    Ok(())
}

fn parse_space(spec: &str) -> Result<Space> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("space must look like kind:arg, found {spec:?}")))?;
    let dim = || {
        arg.parse::<usize>()
            .map_err(|_| usage(format!("bad dimension {arg:?} in space {spec:?}")))
    };
    Ok(match kind {
        "euclidean" => Space::new_euclidean(dim()?)?,
        "supprod" => Space::new_sup(dim()?)?,
        "hyp-product" => Space::new_hyp(dim()?)?,
        "pi-image" => {
            let m = load_marking(Path::new(arg))?;
            let k = m.decomposition().internal_curves().count();
            Space::new_hyp(k)?
        }
        _ => return Err(usage(format!("unknown space kind {kind:?}"))),
    })
}

fn coords(p: &[f64]) -> String {
    p.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

fn cmd_instability(space: &str, delta: f64, ladder: Option<&[f64]>, cfg: &RunConfig, out: &mut String) -> Result<()> {
    let space = parse_space(space)?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(usage("delta must be nonnegative"));
    }
    let ladder = match ladder {
        Some(l) => l.to_vec(),
        None => geometric_ladder(1.0, 1e4, 9),
    };
    validate_ladder(&ladder)?;
    let g = growth_rate_estimate(&space, delta, &ladder, &cfg.budget)?;
    for l in &g.fit.excluded {
        eprintln!("warning: no betweenness witness at L = {l}; point excluded from the fit");
    }
    let mut r = Report::new(cfg.format, &["delta", "L", "s_lower", "slope", "witness"]);
    for row in &g.rows {
        let w = row
            .bound
            .witness
            .as_ref()
            .map(|w| format!("{};{};{}", coords(&w.x), coords(&w.y), coords(&w.z)))
            .unwrap_or_else(|| "-".to_owned());
        r.row(vec![delta.into(), row.l.into(), row.bound.value.into(), g.fit.slope.into(), w.into()]);
    }
    r.render(out);
    Ok(())
}

/// Runs a parsed command line and returns its standard output.
pub fn run(cli: &Cli) -> Result<String> {
    let cfg = resolve_config(&cli.options)?;
    let mut out = String::new();
    match &cli.command {
        Command::Validate { surface } => cmd_validate(surface, &mut out)?,
        Command::Collar { surface, point } => cmd_collar(surface, point, &cfg, &mut out)?,
        Command::Extremal { surface, point, curves } => cmd_extremal(surface, point, curves, &cfg, &mut out)?,
        Command::Distance { torus, first, second, third } => {
            cmd_distance(*torus, first, second, third.as_deref(), &cfg, &mut out)?
        }
        Command::Product { surface, point1, point2, gamma } => {
            cmd_product(surface, point1, point2, gamma, &cfg, &mut out)?
        }
        Command::Instability { space, delta, ladder } => {
            cmd_instability(space, *delta, ladder.as_deref(), &cfg, &mut out)?
        }
    }
    Ok(out)
}

/// Curve ids of `names`, for callers building product regions by name.
pub fn curve_ids(marking: &Marking, names: &[&str]) -> Result<BTreeSet<CurveId>> {
    names
        .iter()
        .map(|n| {
            marking
                .decomposition()
                .find_curve(n)
                .ok_or_else(|| usage(format!("no curve named {n:?}")))
        })
        .collect()
}

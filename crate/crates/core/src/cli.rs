//! The `opalab` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cases::{
    conjugate_partner_limit, conjugate_t_solve, jacobi_ode_residual, opposite_partner_values, real_zero_count,
    ConjugateCase,
};
use crate::error::Error;
use crate::output::{csv_string, json_string, record_layers, svg_string, Kind, Layer};
use crate::poly::{Complex, Poly};
use crate::sweep::{analyze_many, degree_range, run_sweep, Analysis, Source, SweepOptions, SweepRecord};
use crate::weight::{RationalAngle, WeightSpec};
use crate::MAX_DEGREE;

#[derive(Debug, Parser)]
#[command(name = "opalab", version, about = "Optimal polynomial approximants, Szegő polynomials and electrostatic partners")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the optimal approximant p_n.
    Opa(Common),
    /// Coefficients of the monic Szegő polynomial Phi_n.
    Opuc(Common),
    /// Zeros of Phi_n and p_n.
    Zeros(Common),
    /// Roots of the monic electrostatic partner S_n.
    Partner(Common),
    /// Norm of 1 - p_n f.
    Residual(Common),
    /// Full per-degree records.
    Sweep(Common),
    /// Closed-form checks for the worked scenarios.
    Case(CaseArgs),
    /// Data sets for the three reference figures.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WeightInput {
    /// Weight-spec JSON: {"zeros":[{"num":1,"den":3,"exp":1.0}]}
    #[arg(long, value_name = "FILE", conflicts_with = "poly")]
    pub weight: Option<PathBuf>,
    /// Coefficients of f as comma-separated re:im pairs, lowest degree first.
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Degrees {
    #[arg(long, conflicts_with_all = ["n_from", "n_to"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n_to")]
    pub n_from: Option<usize>,
    #[arg(long, requires = "n_from")]
    pub n_to: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    #[arg(long, default_value_t = 0.1)]
    pub spurious_delta: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub root_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub input: WeightInput,
    #[command(flatten)]
    pub degrees: Degrees,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    /// f = (1 - z)^a
    Jacobi,
    /// f = (1 - z)^a (1 + z)^b
    Opposite,
    /// zeros at e^{±ikπ/l}
    Conjugate,
}

#[derive(Debug, Clone, Args)]
pub struct CaseArgs {
    pub name: CaseName,
    #[arg(long, default_value_t = 1)]
    pub a: u32,
    #[arg(long, default_value_t = 3)]
    pub b: u32,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long, default_value_t = 3)]
    pub l: i64,
    #[command(flatten)]
    pub degrees: Degrees,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    pub which: FigureName,
    #[arg(long, value_name = "DIR")]
    pub outdir: PathBuf,
}

/// Resolved settings for the per-degree commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub degrees: Vec<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub options: SweepOptions,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::DegreeCap { .. }
            | Error::ZeroAtOrigin
            | Error::ZeroPolynomial
            | Error::DegreeTooLow { .. } => CliError::Usage(e.to_string()),
            Error::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse `re:im,re:im,...`; a bare `re` means a real coefficient.
pub fn parse_poly(text: &str) -> CliResult<Poly> {
    let mut coeffs = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let (re, im) = match item.split_once(':') {
            Some((re, im)) => (re, im),
            None => (item, "0"),
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("bad coefficient {item:?}")))
        };
        coeffs.push(Complex::new(parse(re)?, parse(im)?));
    }
    let p = Poly::try_new(coeffs).map_err(|e| CliError::Usage(e.to_string()))?;
    if p.is_zero() {
        return Err(CliError::Usage("f is the zero polynomial".into()));
    }
    Ok(p)
}

pub fn load_weight(path: &Path) -> CliResult<WeightSpec> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec: WeightSpec =
        serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    spec.validate()?;
    Ok(spec)
}

fn resolve_degrees(d: &Degrees) -> CliResult<Vec<usize>> {
    let ns = match (d.n, d.n_from, d.n_to) {
        (Some(n), _, _) => vec![n],
        (None, Some(a), Some(b)) => degree_range(a, b, d.step)?,
        _ => return Err(CliError::Usage("give --n or --n-from/--n-to".into())),
    };
    if let Some(&n) = ns.iter().find(|&&n| n > MAX_DEGREE) {
        return Err(CliError::Usage(format!("n = {n} exceeds the cap of {MAX_DEGREE}")));
    }
    Ok(ns)
}

impl RunConfig {
    pub fn from_common(c: &Common) -> CliResult<Self> {
        let source = match (&c.input.weight, &c.input.poly) {
            (Some(path), None) => Source::Weight(load_weight(path)?),
            (None, Some(text)) => Source::Poly(parse_poly(text)?),
            _ => return Err(CliError::Usage("exactly one of --weight or --poly is required".into())),
        };
        if !(c.tol.spurious_delta >= 0.0 && c.tol.spurious_delta < 1.0) {
            return Err(CliError::Usage("--spurious-delta must lie in [0, 1)".into()));
        }
        if !(c.tol.root_tol > 0.0) {
            return Err(CliError::Usage("--root-tol must be positive".into()));
        }
        Ok(RunConfig {
            source,
            degrees: resolve_degrees(&c.degrees)?,
            format: c.output.format,
            out: c.output.out.clone(),
            options: SweepOptions {
                delta: c.tol.spurious_delta,
                root_tol: c.tol.root_tol,
                electro: true,
            },
        })
    }
}

fn write_output(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn write_path(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Numeric(e.into()))?;
    s.push('\n');
    Ok(s)
}

fn no_svg(cmd: &str) -> CliError {
    CliError::Usage(format!("{cmd} supports only csv and json"))
}

#[derive(Serialize)]
struct Coefficients {
    n: usize,
    coefficients: Vec<Complex>,
}

fn coefficient_output(rows: &[(usize, Poly)], format: Format, cmd: &str) -> CliResult<String> {
    match format {
        Format::Csv => {
            let mut s = String::from("n,index,re,im\n");
            for (n, p) in rows {
                for (k, c) in p.coeffs().iter().enumerate() {
                    s.push_str(&format!("{n},{k},{:.16e},{:.16e}\n", c.re, c.im));
                }
            }
            Ok(s)
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(n, p)| Coefficients {
                    n: *n,
                    coefficients: p.coeffs().to_vec(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Svg => Err(no_svg(cmd)),
    }
}

fn records_layers(records: &[SweepRecord], kinds: &[Kind]) -> Vec<Layer> {
    let mut layers = Vec::new();
    for r in records {
        for layer in record_layers(r) {
            if kinds.iter().any(|k| k.name() == layer.name) {
                let name = format!("n{}-{}", r.n, layer.name);
                layers.push(Layer { name, ..layer });
            }
        }
    }
    layers
}

fn record_output(records: &[SweepRecord], kinds: &[Kind], format: Format) -> CliResult<String> {
    match format {
        Format::Csv => Ok(csv_string(records, kinds)),
        Format::Json => Ok(json_string(records)?),
        Format::Svg => Ok(svg_string(&records_layers(records, kinds))),
    }
}

fn run_common(cmd: &str, c: &Common, stdout: &mut dyn Write) -> CliResult<()> {
    let mut cfg = RunConfig::from_common(c)?;
    if matches!(cmd, "partner") && cfg.source.spec().is_none() {
        return Err(CliError::Usage("partner needs --weight (the singular points define A and B)".into()));
    }
    cfg.options.electro = matches!(cmd, "partner" | "sweep");
    let text = match cmd {
        "opa" | "opuc" => {
            let analyses = analyze_many(&cfg.source, &cfg.degrees, &cfg.options)?;
            let rows: Vec<(usize, Poly)> = analyses
                .iter()
                .map(|a: &Analysis| (a.n, if cmd == "opa" { a.p.clone() } else { a.phi.clone() }))
                .collect();
            coefficient_output(&rows, cfg.format, cmd)?
        }
        "residual" => {
            let analyses = analyze_many(&cfg.source, &cfg.degrees, &cfg.options)?;
            match cfg.format {
                Format::Csv => {
                    let mut s = String::from("n,residual_norm,degenerate\n");
                    for a in &analyses {
                        s.push_str(&format!("{},{:.16e},{}\n", a.n, a.residual_norm, a.degenerate));
                    }
                    s
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        n: usize,
                        residual_norm: f64,
                        degenerate: bool,
                    }
                    to_json(
                        &analyses
                            .iter()
                            .map(|a| Row {
                                n: a.n,
                                residual_norm: a.residual_norm,
                                degenerate: a.degenerate,
                            })
                            .collect::<Vec<_>>(),
                    )?
                }
                Format::Svg => return Err(no_svg(cmd)),
            }
        }
        _ => {
            let records = run_sweep(&cfg.source, &cfg.degrees, &cfg.options)?;
            let kinds: &[Kind] = match cmd {
                "zeros" => &[Kind::Phi, Kind::Opa],
                "partner" => &[Kind::Partner],
                _ => &Kind::ALL,
            };
            record_output(&records, kinds, cfg.format)?
        }
    };
    write_output(&cfg.out, &text, stdout)
}

#[derive(Serialize)]
struct JacobiRow {
    n: usize,
    a: u32,
    ode_residual: f64,
    van_vleck: Vec<Complex>,
    van_vleck_residual: f64,
    /// `-C_n / (n (a + 1))`
    van_vleck_ratio: Option<Complex>,
    phi_real_zeros: Vec<f64>,
    opa_real_zeros: Vec<f64>,
}

#[derive(Serialize)]
struct OppositeRow {
    n: usize,
    predicted: Option<f64>,
    computed: Vec<Complex>,
    error: Option<f64>,
}

#[derive(Serialize)]
struct ConjugateRow {
    #[serde(flatten)]
    case: ConjugateCase,
    limit: Option<f64>,
}

pub const REAL_TOL: f64 = 1e-8;

fn run_case(c: &CaseArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let ns = resolve_degrees(&c.degrees)?;
    if c.output.format == Format::Svg {
        return Err(no_svg("case"));
    }
    let csv = c.output.format == Format::Csv;
    let opts = SweepOptions::default();
    let text = match c.name {
        CaseName::Jacobi => {
            if c.a == 0 {
                return Err(CliError::Usage("--a must be at least 1".into()));
            }
            let src = Source::Weight(WeightSpec::from_triples(&[(0, 1, c.a as f64)])?);
            let rows: Vec<JacobiRow> = analyze_many(&src, &ns, &opts)?
                .iter()
                .map(|an| {
                    let pr = an.partner.as_ref();
                    let scale = an.n as f64 * (c.a as f64 + 1.0);
                    JacobiRow {
                        n: an.n,
                        a: c.a,
                        ode_residual: jacobi_ode_residual(&an.phi, c.a as f64),
                        van_vleck: pr.map(|p| p.cn.coeffs().to_vec()).unwrap_or_default(),
                        van_vleck_residual: pr.map(|p| p.division_residual).unwrap_or(f64::INFINITY),
                        van_vleck_ratio: pr.filter(|_| scale > 0.0).map(|p| -p.cn.coeff(0) / scale),
                        phi_real_zeros: real_zero_count(&an.phi_zeros, REAL_TOL).1,
                        opa_real_zeros: real_zero_count(&an.opa_zeros, REAL_TOL).1,
                    }
                })
                .collect();
            if csv {
                let mut s = String::from("n,a,ode_residual,van_vleck_residual,van_vleck_ratio_re,van_vleck_ratio_im,phi_real_zeros,opa_real_zeros\n");
                for r in &rows {
                    let ratio = r.van_vleck_ratio.unwrap_or(Complex::new(f64::NAN, f64::NAN));
                    s.push_str(&format!(
                        "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{},{}\n",
                        r.n,
                        r.a,
                        r.ode_residual,
                        r.van_vleck_residual,
                        ratio.re,
                        ratio.im,
                        r.phi_real_zeros.len(),
                        r.opa_real_zeros.len()
                    ));
                }
                s
            } else {
                to_json(&rows)?
            }
        }
        CaseName::Opposite => {
            let src = Source::Weight(WeightSpec::from_triples(&[(0, 1, c.a as f64), (1, 1, c.b as f64)])?);
            let rows: Vec<OppositeRow> = analyze_many(&src, &ns, &opts)?
                .iter()
                .map(|an| {
                    let predicted = opposite_partner_values(c.a as f64, c.b as f64, an.n);
                    let computed = an.partner.as_ref().map(|p| p.roots.clone()).unwrap_or_default();
                    let error = match (predicted, computed.as_slice()) {
                        (Some(v), [s]) => Some((s - Complex::new(v, 0.0)).norm()),
                        _ => None,
                    };
                    OppositeRow {
                        n: an.n,
                        predicted,
                        computed,
                        error,
                    }
                })
                .collect();
            if csv {
                let mut s = String::from("n,predicted,root_re,root_im,error\n");
                for r in &rows {
                    let root = r.computed.first().copied().unwrap_or(Complex::new(f64::NAN, f64::NAN));
                    s.push_str(&format!(
                        "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                        r.n,
                        r.predicted.unwrap_or(f64::NAN),
                        root.re,
                        root.im,
                        r.error.unwrap_or(f64::NAN)
                    ));
                }
                s
            } else {
                to_json(&rows)?
            }
        }
        CaseName::Conjugate => {
            let theta = RationalAngle::new(c.k, c.l)?;
            let rows = ns
                .iter()
                .map(|&n| {
                    Ok(ConjugateRow {
                        case: conjugate_t_solve(theta, n)?,
                        limit: conjugate_partner_limit(theta, n),
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            if csv {
                let mut s = String::from("n,n_mod_l,n_prime,t0,t1,t2,t3,sn_re,sn_im,limit\n");
                for r in &rows {
                    let sn = r.case.sn.unwrap_or(Complex::new(f64::INFINITY, 0.0));
                    s.push_str(&format!(
                        "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                        r.case.n,
                        r.case.n_mod_l,
                        r.case.n_prime,
                        r.case.t[0].re,
                        r.case.t[1].re,
                        r.case.t[2].re,
                        r.case.t[3].re,
                        sn.re,
                        sn.im,
                        r.limit.unwrap_or(f64::NAN)
                    ));
                }
                s
            } else {
                to_json(&rows)?
            }
        }
    };
    write_output(&c.output.out, &text, stdout)
}

fn fig1_weight() -> crate::Result<WeightSpec> {
    WeightSpec::from_triples(&[(0, 1, 1.0), (1, 1, 3.0)])
}

fn fig2_weight() -> crate::Result<WeightSpec> {
    WeightSpec::from_triples(&[(1, 3, 1.0), (-1, 3, 1.0)])
}

pub fn fig3_weight() -> crate::Result<WeightSpec> {
    WeightSpec::from_triples(&[(1, 3, 1.0), (2, 3, 1.0), (-1, 3, 1.0)])
}

/// Degrees of the third figure: `{20, 22, ..., 98}` restricted to `n ≡ 2 mod 6`.
pub fn fig3_degrees() -> Vec<usize> {
    (20..=98).step_by(2).filter(|n| n % 6 == 2).collect()
}

/// Writes the figure files and returns their names in creation order.
pub fn write_figure(which: FigureName, outdir: &Path) -> CliResult<Vec<String>> {
    fs::create_dir_all(outdir).map_err(|e| CliError::Io(format!("{}: {e}", outdir.display())))?;
    let opts = SweepOptions::default();
    let mut files = Vec::new();
    let mut put = |name: String, text: String| -> CliResult<()> {
        write_path(&outdir.join(&name), &text)?;
        files.push(name);
        Ok(())
    };
    match which {
        FigureName::Fig1 => {
            let recs = run_sweep(&Source::Weight(fig1_weight()?), &[100, 101], &opts)?;
            for r in &recs {
                let one = std::slice::from_ref(r);
                put(format!("fig1_n{}_phi.csv", r.n), csv_string(one, &[Kind::Phi]))?;
                put(format!("fig1_n{}_opa.csv", r.n), csv_string(one, &[Kind::Opa]))?;
            }
            put("fig1_partner.csv".into(), csv_string(&recs, &[Kind::Partner]))?;
            for r in &recs {
                put(format!("fig1_n{}.svg", r.n), svg_string(&record_layers(r)))?;
            }
            put("fig1.json".into(), json_string(&recs)?)?;
        }
        FigureName::Fig2 => {
            let recs = run_sweep(&Source::Weight(fig2_weight()?), &[120, 121, 122], &opts)?;
            for r in &recs {
                let one = std::slice::from_ref(r);
                put(format!("fig2_n{}.csv", r.n), csv_string(one, &Kind::ALL))?;
                let mut layers = record_layers(r);
                layers.push(Layer::new(
                    "reflected-spurious",
                    "#9467bd",
                    0.03,
                    r.spurious.iter().map(|z| z.conj().inv()).collect(),
                ));
                put(format!("fig2_n{}.svg", r.n), svg_string(&layers))?;
            }
            put("fig2.json".into(), json_string(&recs)?)?;
        }
        FigureName::Fig3 => {
            let recs = run_sweep(&Source::Weight(fig3_weight()?), &fig3_degrees(), &opts)?;
            put("fig3.csv".into(), csv_string(&recs, &[Kind::Spurious, Kind::Partner]))?;
            let mut m = String::from("n,pair,pair_re,pair_im,pair_abs,alt_re,alt_im,alt_abs\n");
            for r in &recs {
                for (k, (p, a)) in r.pair_metric.iter().zip(&r.alt_metric).enumerate() {
                    m.push_str(&format!(
                        "{},{k},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                        r.n,
                        p.re,
                        p.im,
                        p.norm(),
                        a.re,
                        a.im,
                        a.norm()
                    ));
                }
            }
            put("fig3_metrics.csv".into(), m)?;
            let spurious: Vec<Complex> = recs.iter().flat_map(|r| r.spurious.clone()).collect();
            let ghosts: Vec<Complex> = recs
                .iter()
                .flat_map(|r| r.partner_roots.iter().copied().filter(|s| s.norm() < 1.0))
                .collect();
            put(
                "fig3.svg".into(),
                svg_string(&[
                    Layer::new("spurious", "#d62728", 0.012, spurious),
                    Layer::new("partner", "#2ca02c", 0.012, ghosts),
                ]),
            )?;
            put("fig3.json".into(), json_string(&recs)?)?;
        }
    }
    Ok(files)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Opa(c) => run_common("opa", c, stdout),
        Command::Opuc(c) => run_common("opuc", c, stdout),
        Command::Zeros(c) => run_common("zeros", c, stdout),
        Command::Partner(c) => run_common("partner", c, stdout),
        Command::Residual(c) => run_common("residual", c, stdout),
        Command::Sweep(c) => run_common("sweep", c, stdout),
        Command::Case(c) => run_case(c, stdout),
        Command::Figure(f) => {
            for name in write_figure(f.which, &f.outdir)? {
                writeln!(stdout, "{}", f.outdir.join(name).display()).map_err(|e| CliError::Io(e.to_string()))?;
            }
            Ok(())
        }
    }
}

/// Parse, run and map the outcome to an exit status: 0 success, 1 usage,
/// 2 numerical failure, 3 I/O.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("opalab: {e}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_parsing() {
        let p = parse_poly("1:0, -1:0.5,2").unwrap();
        assert_eq!(p.coeffs(), &[Complex::new(1.0, 0.0), Complex::new(-1.0, 0.5), Complex::new(2.0, 0.0)]);
        assert!(matches!(parse_poly("1:x"), Err(CliError::Usage(_))));
        assert!(matches!(parse_poly("0,0"), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::DegreeCap { degree: 700, cap: 600 }).code(), 1);
        assert_eq!(CliError::from(Error::PartnerVanishes).code(), 2);
        assert_eq!(CliError::from(Error::Io(io::Error::other("x"))).code(), 3);
    }

    #[test]
    fn fig3_degree_set() {
        assert_eq!(fig3_degrees(), vec![20, 26, 32, 38, 44, 50, 56, 62, 68, 74, 80, 86, 92, 98]);
    }

    #[test]
    fn degrees_resolution() {
        let d = |n, a, b, step| Degrees {
            n,
            n_from: a,
            n_to: b,
            step,
        };
        assert_eq!(resolve_degrees(&d(Some(4), None, None, 1)).unwrap(), vec![4]);
        assert_eq!(resolve_degrees(&d(None, Some(2), Some(6), 2)).unwrap(), vec![2, 4, 6]);
        assert_eq!(resolve_degrees(&d(Some(601), None, None, 1)).unwrap_err().code(), 1);
        assert_eq!(resolve_degrees(&d(None, None, None, 1)).unwrap_err().code(), 1);
    }
}

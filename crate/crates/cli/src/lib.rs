//! `bracket-module`: brackets, filters, cascades, norms, verification and
//! lattice utilities from the command line.
//!
//! Exit codes: 0 on success, 2 on validation or usage errors, 3 on numeric
//! failures (periodization tail too large, divergent cascade, level window too
//! small for a test signal).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bracket_core::bracket::{bracket_fourier, bracket_time, spectra_of, FilterSeq};
use bracket_core::filters::{builtin, cascade, extract_filters, extract_filters_fourier, FilterBank};
use bracket_core::io::{self, artifact_json, Dtype, Provenance, SignalDoc, TorusDoc};
use bracket_core::modnorm::{norm_chain_check, norm_sweep, x_norm, y_norm, NormChain, NormReport};
use bracket_core::verify::{default_range, default_tests, verify, VerifyConfig, VerifyReport};
use bracket_core::{tol, AnalyticSignal, DilationMatrix, Domain, Embedding, Error, GridSignal, Signal, TorusFunction};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const THREADS_VAR: &str = "BRACKET_MODULE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bracket-module", version, about = "Bracket products and multiwavelet checks on R^d")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Torus grid size per axis.
    #[arg(long = "grid-m", global = true)]
    pub grid_m: Option<usize>,
    /// Samples per axis for grid signals.
    #[arg(long = "grid-n", global = true)]
    pub grid_n: Option<usize>,
    /// Half-width of the sampling box.
    #[arg(long = "box-l", global = true)]
    pub box_l: Option<f64>,
    /// Periodization shells `|k|_inf <= R`.
    #[arg(long = "trunc-r", global = true, default_value_t = tol::TRUNC_R as i64)]
    pub trunc_r: i64,
    /// Directory for artifacts; without it the result goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit CSV instead of JSON on stdout (both are written with `--out`).
    #[arg(long = "emit-csv", global = true)]
    pub emit_csv: bool,
    /// Also write binary sample payloads (requires `--out`).
    #[arg(long, global = true)]
    pub binary: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket product of two signals at an embedding or dilation level.
    Bracket(BracketArgs),
    /// Filter extraction and the cascade iteration.
    #[command(subcommand)]
    Filters(FiltersCommand),
    /// Cascade iteration (same as `filters cascade`).
    Cascade(CascadeArgs),
    /// Module norms, the norm chain and grid sweeps.
    Norms(NormsArgs),
    /// Orthonormal multiwavelet verification.
    Verify(VerifyArgs),
    /// Dilation matrices and coset digit sets.
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Best,
    Time,
    Fourier,
}

#[derive(Debug, Args)]
pub struct BracketArgs {
    /// First signal (JSON document or binary grid payload).
    #[arg(long)]
    pub f: PathBuf,
    /// Second signal; defaults to the first.
    #[arg(long)]
    pub g: Option<PathBuf>,
    /// Integer dilation matrix, e.g. "[[2]]".
    #[arg(long)]
    pub dilation: Option<String>,
    /// Level `n` of the dilation.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub level: i32,
    /// Real embedding matrix rows, e.g. "[[0.5]]"; overrides the level.
    #[arg(long)]
    pub embedding: Option<String>,
    #[arg(long, value_enum, default_value_t = Route::Best)]
    pub route: Route,
    /// Translation window `|gamma|_inf <= W` for the time route.
    #[arg(long)]
    pub window: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum FiltersCommand {
    /// Scaling and wavelet filters of a built-in or of signals from a file.
    Extract(ExtractArgs),
    /// Cascade iteration of a scaling filter.
    Cascade(CascadeArgs),
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// haar, shannon or db4.
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Wavelet description: {"dilation", "phi", "psi": [...]}.
    #[arg(long)]
    pub wavelets: Option<PathBuf>,
    /// Sample the filter symbols on the torus instead of computing taps.
    #[arg(long)]
    pub fourier: bool,
}

#[derive(Debug, Args)]
pub struct CascadeArgs {
    /// Built-in whose scaling filter is iterated.
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Filter as FilterSeq JSON; needs `--dilation`.
    #[arg(long)]
    pub filter: Option<PathBuf>,
    #[arg(long)]
    pub dilation: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub iters: usize,
    /// Iterate exact piecewise-constant signals instead of grid samples.
    #[arg(long)]
    pub analytic: bool,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    /// Signal file; without it a seeded random band-limited corpus is used.
    #[arg(long)]
    pub signal: Option<PathBuf>,
    /// Size of the random corpus.
    #[arg(long, default_value_t = 20)]
    pub random: usize,
    #[arg(long, default_value = "[[2]]")]
    pub dilation: String,
    /// Inclusive level range "a:b".
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    pub levels: String,
    /// Repeat each norm for M in {64, 128, 256, 512}.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Wavelet description: {"dilation", "psi": [...], "tests": [...]}.
    #[arg(long)]
    pub wavelets: Option<PathBuf>,
    /// Inclusive level range "a:b".
    #[arg(long = "n-range", allow_hyphen_values = true)]
    pub n_range: Option<String>,
    #[arg(long = "tol-ortho", default_value_t = tol::TOL_ORTHO)]
    pub tol_ortho: f64,
    #[arg(long = "tol-recon", default_value_t = tol::TOL_RECON)]
    pub tol_recon: f64,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Coset representatives of `D Z^d` in `Z^d`.
    Cosets {
        #[arg(long)]
        matrix: String,
    },
    /// Determinant, index and the level embedding.
    Info {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        level: i32,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Core(Error),
    /// A randomized check failed; carries the failing input for replay.
    Check(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(Error::Json(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric() => EXIT_NUMERIC,
            CliError::Check(_) => EXIT_NUMERIC,
            _ => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Check(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}

/// Resolved numeric parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub grid_m: usize,
    pub grid_n: usize,
    pub box_l: f64,
    pub trunc_r: i64,
    pub out: Option<PathBuf>,
    pub emit_csv: bool,
    pub binary: bool,
    pub seed: u64,
}

impl RunConfig {
    fn resolve(common: &Common, command: &str, m: usize, n: usize, l: f64) -> CliResult<Self> {
        let cfg = Self {
            command: command.into(),
            grid_m: common.grid_m.unwrap_or(m),
            grid_n: common.grid_n.unwrap_or(n),
            box_l: common.box_l.unwrap_or(l),
            trunc_r: common.trunc_r,
            out: common.out.clone(),
            emit_csv: common.emit_csv,
            binary: common.binary,
            seed: common.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        for (name, v) in [("grid-m", self.grid_m), ("grid-n", self.grid_n)] {
            if v < 2 || !v.is_power_of_two() {
                return invalid(format!("--{name} must be a power of two >= 2, got {v}"));
            }
        }
        if !(self.box_l > 0.0 && self.box_l.is_finite()) {
            return invalid(format!("--box-l must be positive, got {}", self.box_l));
        }
        if self.trunc_r < 1 {
            return invalid(format!("--trunc-r must be positive, got {}", self.trunc_r));
        }
        if self.binary && self.out.is_none() {
            return invalid("--binary needs --out");
        }
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Invalid(format!("cannot create {}: {e}", dir.display())))?;
            let probe = dir.join(".bracket-module-write-check");
            std::fs::write(&probe, b"")
                .map_err(|e| CliError::Invalid(format!("{} is not writable: {e}", dir.display())))?;
            let _ = std::fs::remove_file(probe);
        }
        Ok(())
    }

    fn provenance(&self) -> Provenance {
        let mut p = Provenance::new(&self.command);
        p.grid_m = Some(self.grid_m);
        p.grid_n = Some(self.grid_n);
        p.box_l = Some(self.box_l);
        p.trunc_r = Some(self.trunc_r);
        p.seed = Some(self.seed);
        p.tolerance("tail", tol::TAIL_TOL).tolerance("chain", tol::EPS_CHAIN).tolerance("norm", tol::EPS_NORM)
    }
}

struct Output {
    name: &'static str,
    json: String,
    csv: String,
    binary: Vec<(String, Vec<u8>)>,
    summary: String,
}

fn emit(cfg: &RunConfig, out: Output) -> CliResult<()> {
    match &cfg.out {
        Some(dir) => {
            std::fs::write(dir.join(format!("{}.json", out.name)), &out.json)?;
            if cfg.emit_csv {
                std::fs::write(dir.join(format!("{}.csv", out.name)), &out.csv)?;
            }
            for (file, bytes) in &out.binary {
                std::fs::write(dir.join(file), bytes)?;
            }
            println!("{}", out.summary);
        }
        None if cfg.emit_csv => print!("{}", out.csv),
        None => print!("{}", out.json),
    }
    Ok(())
}

/// Parses arguments, runs one subcommand and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
        }
    };
    match configure_threads().and_then(|_| dispatch(&cli)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = match raw.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return invalid(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        log::debug!("thread pool already configured: {e}");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Bracket(a) => cmd_bracket(&cli.common, a),
        Command::Filters(FiltersCommand::Extract(a)) => cmd_extract(&cli.common, a),
        Command::Filters(FiltersCommand::Cascade(a)) | Command::Cascade(a) => cmd_cascade(&cli.common, a),
        Command::Norms(a) => cmd_norms(&cli.common, a),
        Command::Verify(a) => cmd_verify(&cli.common, a),
        Command::Lattice(c) => cmd_lattice(&cli.common, c),
    }
}

pub fn parse_int_matrix(text: &str) -> CliResult<DilationMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)
        .map_err(|e| CliError::Invalid(format!("matrix {text:?} is not a JSON array of integer rows: {e}")))?;
    Ok(DilationMatrix::new(rows)?)
}

/// Inclusive range "a:b".
pub fn parse_range(text: &str) -> CliResult<(i32, i32)> {
    let parsed = text.split_once(':').and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some((a, b)) if a <= b => Ok((a, b)),
        _ => invalid(format!("level range {text:?} must look like \"a:b\" with a <= b")),
    }
}

/// JSON document or binary payload, told apart by the leading magic.
pub fn read_signal(path: &Path) -> CliResult<Signal> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    if bytes.starts_with(b"BRKT") {
        return Ok(Signal::Grid(io::read_grid_binary(&mut bytes.as_slice())?));
    }
    let doc: SignalDoc = serde_json::from_slice(&bytes)?;
    Ok(doc.into_signal(path.parent())?)
}

fn grid_bytes(g: &GridSignal) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    io::write_grid_binary(&mut buf, g, Dtype::Complex128)?;
    Ok(buf)
}

fn torus_bytes(t: &TorusFunction) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    io::write_torus_binary(&mut buf, t, Dtype::Complex128)?;
    Ok(buf)
}

fn torus_doc(t: &TorusFunction) -> TorusDoc {
    TorusDoc { kind: "torus".into(), m: t.grid().to_vec(), values: t.values().iter().map(|c| [c.re, c.im]).collect() }
}

#[derive(Serialize)]
struct BracketResult {
    route: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    taps: Option<FilterSeq>,
    #[serde(skip_serializing_if = "Option::is_none")]
    torus: Option<TorusDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<f64>,
}

fn cmd_bracket(common: &Common, a: &BracketArgs) -> CliResult<()> {
    let cfg = RunConfig::resolve(common, "bracket", tol::GRID_M, 1024, 8.0)?;
    let f = read_signal(&a.f)?;
    let g = match &a.g {
        Some(p) => read_signal(p)?,
        None => f.clone(),
    };
    let e = match (&a.embedding, &a.dilation) {
        (Some(rows), _) => {
            let rows: Vec<Vec<f64>> = serde_json::from_str(rows)
                .map_err(|e| CliError::Invalid(format!("embedding {rows:?} is not a JSON array of rows: {e}")))?;
            Embedding::from_rows(&rows)?
        }
        (None, Some(d)) => Embedding::level(&parse_int_matrix(d)?, a.level)?,
        (None, None) if a.level == 0 => Embedding::identity(f.dim()),
        (None, None) => return invalid("--level needs --dilation"),
    };
    let time = match a.route {
        Route::Time => true,
        Route::Fourier => false,
        Route::Best => f.domain() == Domain::Time && g.domain() == Domain::Time,
    };
    let mut binary = Vec::new();
    let (result, csv, summary) = if time {
        let taps = bracket_time(&f, &g, &e, a.window)?;
        let csv = io::filter_csv(&taps);
        let summary = format!("bracket: {} taps (time route)", taps.len());
        (BracketResult { route: "time", taps: Some(taps), torus: None, tail: None }, csv, summary)
    } else {
        let (p, q) = spectra_of(&f, &g);
        let b = bracket_fourier(p, q, &e, cfg.trunc_r, cfg.grid_m)?;
        if cfg.binary {
            binary.push(("bracket.bin".to_string(), torus_bytes(&b.values)?));
        }
        let csv = io::torus_csv(&b.values);
        let summary = format!("bracket: {} torus samples, tail {:.3e} (Fourier route)", b.values.len(), b.tail);
        (BracketResult { route: "fourier", taps: None, torus: Some(torus_doc(&b.values)), tail: Some(b.tail) }, csv, summary)
    };
    let json = artifact_json(&cfg.provenance(), &result)?;
    emit(&cfg, Output { name: "bracket", json, csv, binary, summary })
}

#[derive(Deserialize)]
struct WaveletFile {
    dilation: DilationMatrix,
    #[serde(default)]
    phi: Option<SignalDoc>,
    psi: Vec<SignalDoc>,
    #[serde(default)]
    tests: Option<Vec<SignalDoc>>,
    #[serde(default)]
    n_range: Option<(i32, i32)>,
}

struct Wavelets {
    dilation: DilationMatrix,
    phi: Option<Signal>,
    psi: Vec<Signal>,
    tests: Option<Vec<Signal>>,
    n_range: Option<(i32, i32)>,
    name: String,
}

fn load_wavelets(builtin_name: &Option<String>, dim: usize, file: &Option<PathBuf>) -> CliResult<Wavelets> {
    match (builtin_name, file) {
        (Some(name), None) => {
            let b = builtin(name, dim)?;
            Ok(Wavelets {
                dilation: b.bank.dilation.clone(),
                phi: Some(b.phi),
                psi: b.psi,
                tests: None,
                n_range: None,
                name: name.clone(),
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            let w: WaveletFile = serde_json::from_str(&text)?;
            let base = path.parent();
            let load = |d: SignalDoc| d.into_signal(base).map_err(CliError::from);
            Ok(Wavelets {
                dilation: w.dilation,
                phi: w.phi.map(load).transpose()?,
                psi: w.psi.into_iter().map(load).collect::<CliResult<_>>()?,
                tests: w.tests.map(|t| t.into_iter().map(load).collect::<CliResult<Vec<_>>>()).transpose()?,
                n_range: w.n_range,
                name: path.display().to_string(),
            })
        }
        _ => invalid("give exactly one of --builtin and --wavelets"),
    }
}

#[derive(Serialize)]
struct FourierFilters {
    dilation: DilationMatrix,
    h: TorusDoc,
    g: Vec<TorusDoc>,
}

fn cmd_extract(common: &Common, a: &ExtractArgs) -> CliResult<()> {
    let w = load_wavelets(&a.builtin, a.dim, &a.wavelets)?;
    let phi = w.phi.clone().ok_or_else(|| CliError::Invalid("the wavelet description needs \"phi\"".into()))?;
    let fourier = a.fourier || phi.domain() == Domain::Frequency;
    let default_m = if fourier { bracket_core::filters::SHANNON_TAPS } else { tol::GRID_M };
    let cfg = RunConfig::resolve(common, "filters extract", default_m, 1024, 8.0)?;
    if fourier {
        let (h, g) = extract_filters_fourier(&phi, &w.psi, &w.dilation, cfg.grid_m, cfg.trunc_r)?;
        let mut csv = String::from(if h.dim() == 1 { "zeta" } else { "zeta_0" });
        for k in 1..h.dim() {
            let _ = write!(csv, ",zeta_{k}");
        }
        csv.push_str(",h_re,h_im,h_abs");
        for i in 0..g.len() {
            let _ = write!(csv, ",g{i}_re,g{i}_im,g{i}_abs");
        }
        csv.push('\n');
        for j in 0..h.len() {
            let z: Vec<String> = h.point(j).iter().map(|v| v.to_string()).collect();
            csv.push_str(&z.join(","));
            for t in std::iter::once(&h).chain(&g) {
                let v = t.values()[j];
                let _ = write!(csv, ",{},{},{}", v.re, v.im, v.norm());
            }
            csv.push('\n');
        }
        let mut binary = Vec::new();
        if cfg.binary {
            binary.push(("filters_h.bin".to_string(), torus_bytes(&h)?));
            for (i, t) in g.iter().enumerate() {
                binary.push((format!("filters_g{i}.bin"), torus_bytes(t)?));
            }
        }
        let result = FourierFilters { dilation: w.dilation.clone(), h: torus_doc(&h), g: g.iter().map(torus_doc).collect() };
        let json = artifact_json(&cfg.provenance(), &result)?;
        let summary = format!("filters: symbols of {} on a {}-point torus grid", w.name, h.len());
        emit(&cfg, Output { name: "filters", json, csv, binary, summary })
    } else {
        let bank = extract_filters(&phi, &w.psi, &w.dilation, None)?;
        let json = artifact_json(&cfg.provenance(), &bank)?;
        let summary = format!("filters: h has {} taps, {} wavelet filters", bank.h.len(), bank.g.len());
        emit(&cfg, Output { name: "filters", json, csv: bank_csv(&bank), binary: Vec::new(), summary })
    }
}

fn bank_csv(bank: &FilterBank) -> String {
    let d = bank.h.dim();
    let idx = if d == 1 { "index".to_string() } else { (0..d).map(|k| format!("index_{k}")).collect::<Vec<_>>().join(",") };
    let mut out = format!("filter,{idx},re,im\n");
    let named = std::iter::once(("h".to_string(), &bank.h)).chain(bank.g.iter().enumerate().map(|(i, g)| (format!("g{i}"), g)));
    for (name, f) in named {
        for (k, c) in f.taps() {
            let k: Vec<String> = k.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{name},{},{},{}", k.join(","), c.re, c.im);
        }
    }
    out
}

#[derive(Serialize)]
struct CascadeResult {
    iterations: usize,
    step_norms: Vec<f64>,
    x0_norms: Vec<f64>,
    gram_defects: Vec<f64>,
    cauchy: bool,
    phi: SignalDoc,
}

fn cmd_cascade(common: &Common, a: &CascadeArgs) -> CliResult<()> {
    let cfg = RunConfig::resolve(common, "cascade", tol::GRID_M, 4096, 4.0)?;
    let (h, dil) = match (&a.builtin, &a.filter) {
        (Some(name), None) => {
            if name == "shannon" {
                return Err(Error::Unsupported("the Shannon scaling function is frequency-domain only".into()).into());
            }
            let b = builtin(name, a.dim)?;
            (b.bank.h, b.bank.dilation)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            let h: FilterSeq = serde_json::from_str(&text)?;
            let d = a.dilation.as_deref().ok_or_else(|| CliError::Invalid("--filter needs --dilation".into()))?;
            (h, parse_int_matrix(d)?)
        }
        _ => return invalid("give exactly one of --builtin and --filter"),
    };
    let d = dil.dim();
    let unit = AnalyticSignal::indicator(Domain::Time, &vec![0.0; d], &vec![1.0; d], 1.0);
    let init = if a.analytic {
        Signal::Analytic(unit)
    } else {
        Signal::Grid(GridSignal::sample(&unit, vec![cfg.box_l; d], vec![cfg.grid_n; d])?)
    };
    let run = cascade(&h, &dil, a.iters, &init)?;
    let mut binary = Vec::new();
    if let (true, Signal::Grid(g)) = (cfg.binary, &run.phi) {
        binary.push(("cascade_phi.bin".to_string(), grid_bytes(g)?));
    }
    let summary = format!(
        "cascade: {} iterations, last step {:.3e}, Gram defect {:.3e}, cauchy {}",
        run.step_norms.len(),
        run.step_norms.last().copied().unwrap_or(0.0),
        run.gram_defects.last().copied().unwrap_or(0.0),
        run.cauchy
    );
    let csv = io::cascade_csv(&run);
    let result = CascadeResult {
        iterations: run.step_norms.len(),
        step_norms: run.step_norms,
        x0_norms: run.x0_norms,
        gram_defects: run.gram_defects,
        cauchy: run.cauchy,
        phi: SignalDoc::from_signal(&run.phi),
    };
    let json = artifact_json(&cfg.provenance(), &result)?;
    emit(&cfg, Output { name: "cascade", json, csv, binary, summary })
}

#[derive(Serialize)]
struct NormRow {
    signal: usize,
    report: NormReport,
    y_norm: f64,
    chain: NormChain,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    sweep: Vec<NormReport>,
}

fn cmd_norms(common: &Common, a: &NormsArgs) -> CliResult<()> {
    let mut cfg = RunConfig::resolve(common, "norms", tol::GRID_M, 1024, 8.0)?;
    let dil = parse_int_matrix(&a.dilation)?;
    let (lo, hi) = parse_range(&a.levels)?;
    let signals = match &a.signal {
        Some(p) => vec![read_signal(p)?],
        None => {
            if a.random == 0 {
                return invalid("--random must be positive");
            }
            if dil.dim() != 1 {
                return invalid("the random corpus is one-dimensional; pass --signal for other dimensions");
            }
            bracket_core::testsig::bandlimited_corpus(cfg.seed, a.random)
        }
    };
    cfg.command = format!("norms {lo}:{hi}");
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for (k, f) in signals.iter().enumerate() {
        for n in lo..=hi {
            let report = x_norm(f, &dil, n, cfg.grid_m, cfg.trunc_r)?;
            if report.l2_norm > report.x_norm + tol::EPS_NORM {
                let replay = io::signal_to_json(f)?;
                return Err(CliError::Check(format!(
                    "||f||_2 = {} exceeds ||f||_X = {} at level {n}; failing input:\n{replay}",
                    report.l2_norm, report.x_norm
                )));
            }
            let y = y_norm(f, &dil, n, cfg.grid_m, cfg.trunc_r)?;
            let chain = norm_chain_check(f, &dil, n, cfg.grid_m, cfg.trunc_r)?;
            let sweep = if a.sweep { norm_sweep(f, &dil, n, &[64, 128, 256, 512], cfg.trunc_r)? } else { Vec::new() };
            table.push((report.clone(), y));
            rows.push(NormRow { signal: k, report, y_norm: y, chain, sweep });
        }
    }
    let mut p = cfg.provenance();
    p.n_range = Some((lo, hi));
    let json = artifact_json(&p, &rows)?;
    let chain_ok = rows.iter().filter(|r| r.chain.lower_ok && r.chain.upper_ok).count();
    let summary = format!("norms: {} rows, norm chain holds on {chain_ok}", rows.len());
    emit(&cfg, Output { name: "norms", json, csv: io::norms_csv(&table), binary: Vec::new(), summary })
}

fn cmd_verify(common: &Common, a: &VerifyArgs) -> CliResult<()> {
    let w = load_wavelets(&a.builtin, a.dim, &a.wavelets)?;
    let frequency = w.psi.iter().any(|p| p.domain() == Domain::Frequency);
    let key = match &a.builtin {
        Some(n) => n.as_str(),
        None if frequency => "shannon",
        None => "haar",
    };
    let default_m = if frequency { 4096 } else { tol::GRID_M };
    let cfg = RunConfig::resolve(common, "verify", default_m, 1024, 8.0)?;
    let n_range = match &a.n_range {
        Some(r) => parse_range(r)?,
        None => w.n_range.unwrap_or_else(|| default_range(key)),
    };
    let tests = w.tests.clone().unwrap_or_else(|| default_tests(key, w.dilation.dim()));
    let vcfg = VerifyConfig {
        n_range,
        grid_m: cfg.grid_m,
        trunc_r: cfg.trunc_r,
        tol_ortho: a.tol_ortho,
        tol_recon: a.tol_recon,
        ..VerifyConfig::default()
    };
    let report: VerifyReport = verify(&w.psi, &w.dilation, &tests, &vcfg)?;
    let mut p = cfg.provenance();
    p.n_range = Some(n_range);
    let p = p.tolerance("ortho", a.tol_ortho).tolerance("recon", a.tol_recon).tolerance("energy", vcfg.eps_energy);
    let json = artifact_json(&p, &report)?;
    let summary = format!(
        "verify {}: {:?}, ortho {:.3e}, recon {:?}",
        w.name,
        report.verdict,
        report.ortho_residual,
        report.recon_residuals.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>()
    );
    emit(&cfg, Output { name: "verify", json, csv: io::residual_csv(&report), binary: Vec::new(), summary })
}

#[derive(Serialize)]
struct CosetResult {
    dilation: DilationMatrix,
    index: u64,
    cosets: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct LatticeInfo {
    dilation: DilationMatrix,
    det: i64,
    index: u64,
    level: i32,
    embedding: Embedding,
}

fn cmd_lattice(common: &Common, c: &LatticeCommand) -> CliResult<()> {
    let cfg = RunConfig::resolve(common, "lattice", tol::GRID_M, 1024, 8.0)?;
    match c {
        LatticeCommand::Cosets { matrix } => {
            let d = parse_int_matrix(matrix)?;
            let cosets = d.coset_reps();
            let mut csv = (0..d.dim()).map(|k| format!("c_{k}")).collect::<Vec<_>>().join(",");
            csv.push('\n');
            for r in &cosets {
                csv.push_str(&r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                csv.push('\n');
            }
            let summary = format!("lattice: {} cosets", cosets.len());
            let json = artifact_json(&cfg.provenance(), &CosetResult { index: d.index_m(), dilation: d, cosets })?;
            emit(&cfg, Output { name: "cosets", json, csv, binary: Vec::new(), summary })
        }
        LatticeCommand::Info { matrix, level } => {
            let d = parse_int_matrix(matrix)?;
            let e = Embedding::level(&d, *level)?;
            let csv = format!("det,index,level\n{},{},{level}\n", d.det(), d.index_m());
            let summary = format!("lattice: det {}, index {}", d.det(), d.index_m());
            let info = LatticeInfo { det: d.det(), index: d.index_m(), level: *level, embedding: e, dilation: d };
            let json = artifact_json(&cfg.provenance(), &info)?;
            emit(&cfg, Output { name: "lattice", json, csv, binary: Vec::new(), summary })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2:2").unwrap(), (-2, 2));
        assert_eq!(parse_range(" 0 : 3 ").unwrap(), (0, 3));
        assert!(parse_range("3:1").is_err());
        assert!(parse_range("1..3").is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_int_matrix("[[1,1],[1,-1]]").unwrap().index_m(), 2);
        assert!(matches!(parse_int_matrix("[[1]]"), Err(CliError::Core(Error::NotExpanding { .. }))));
        assert!(matches!(parse_int_matrix("2"), Err(CliError::Invalid(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(Error::TailTooLarge { tail: 1.0, tol: 0.1 }).exit_code(), EXIT_NUMERIC);
        assert_eq!(CliError::Core(Error::UnknownName("x".into())).exit_code(), EXIT_INVALID);
        assert_eq!(CliError::Invalid("x".into()).exit_code(), EXIT_INVALID);
    }

    #[test]
    fn config_validation() {
        let common = Common {
            grid_m: Some(100),
            grid_n: None,
            box_l: None,
            trunc_r: 8,
            out: None,
            emit_csv: false,
            binary: false,
            seed: 0,
        };
        assert!(RunConfig::resolve(&common, "x", 256, 1024, 8.0).is_err());
        let ok = Common { grid_m: None, ..common };
        assert_eq!(RunConfig::resolve(&ok, "x", 256, 1024, 8.0).unwrap().grid_m, 256);
    }
}

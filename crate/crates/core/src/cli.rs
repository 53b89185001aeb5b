//! Command-line surface: evaluation, zero tables, dual-route radius,
//! oracle verification, parameter sweeps (CSV), and limit checks, with
//! optional on-disk zero-table caching and deterministic JSON output.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::oracle::oracle_radius;
use crate::qseries::{classical_bessel, jackson_qbessel, normalized_qbessel, QBesselParams, QKind};
use crate::radius::{uc_radius, DualRadius, FreshTables, RadiusOptions, TableSource};
use crate::wright::{normalized_wright, wright_phi, WrightParams};
use crate::zeros::{scan_and_refine, Family, TargetKind, ZeroTable, ZeroTarget};
use crate::Norm;

const SCHEMA: &str = "uc-radius/1";

/// Exit codes: 0 success, 1 invalid parameters, 2 numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Unsupported(_) => 1,
        _ => 2,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "uc-radius",
    version,
    about = "Radii of uniform convexity for normalized q-Bessel and Wright functions"
)]
pub struct Cli {
    /// Read the job from a JSON file instead of flags.
    #[arg(long, global = true)]
    pub job: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// A complete, serializable job description.
#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate a function (or one of its normalizations) at a real point.
    Eval(EvalArgs),
    /// Localize positive zeros of a target function.
    Zeros(ZerosArgs),
    /// Radius of uniform convexity by both routes.
    Radius(RadiusArgs),
    /// Cross-check the radius against the disk-sampling oracle.
    Verify(VerifyArgs),
    /// Radius over a parameter grid, emitted as CSV.
    Sweep(SweepArgs),
    /// q→1 classical-limit and Wright–Bessel identity error tables.
    LimitCheck(LimitArgs),
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct FamilySel {
    /// Function family: qbessel | wright.
    #[arg(long)]
    pub family: String,
    /// Jackson kind (2 or 3); qbessel only.
    #[arg(long)]
    pub kind: Option<u8>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
}

impl FamilySel {
    fn to_family(&self) -> Result<Family<f64>> {
        match self.family.as_str() {
            "qbessel" => {
                let kind = match self.kind {
                    Some(2) => QKind::Jackson2,
                    Some(3) => QKind::Jackson3,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "qbessel requires --kind 2 or 3, got {:?}",
                            other
                        )))
                    }
                };
                let nu = self
                    .nu
                    .ok_or_else(|| Error::InvalidParameter("qbessel requires --nu".into()))?;
                let q = self
                    .q
                    .ok_or_else(|| Error::InvalidParameter("qbessel requires --q".into()))?;
                Ok(Family::QBessel(QBesselParams::new(kind, nu, q)?))
            }
            "wright" => {
                let rho = self
                    .rho
                    .ok_or_else(|| Error::InvalidParameter("wright requires --rho".into()))?;
                let beta = self
                    .beta
                    .ok_or_else(|| Error::InvalidParameter("wright requires --beta".into()))?;
                Ok(Family::Wright(WrightParams { rho, beta }))
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown family '{}' (expected qbessel or wright)",
                other
            ))),
        }
    }
}

fn parse_norm(s: &str) -> Result<Norm> {
    match s {
        "f" => Ok(Norm::F),
        "g" => Ok(Norm::G),
        "h" => Ok(Norm::H),
        other => Err(Error::InvalidParameter(format!(
            "unknown norm '{}' (expected f, g or h)",
            other
        ))),
    }
}

fn parse_target(s: &str) -> Result<TargetKind> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| Error::InvalidParameter(format!("unknown zero target '{}'", s)))
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sel: FamilySel,
    /// Normalization f|g|h; omitted = the bare J (qbessel) or φ (wright).
    #[arg(long)]
    pub norm: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, default_value_t = 0)]
    pub deriv: u8,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ZerosArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sel: FamilySel,
    /// Target: function | derivative | alpha_comb | beta_comb | gamma_comb |
    /// delta_comb | psi_prime | g_prime | h_prime.
    #[arg(long)]
    pub which: String,
    #[arg(long, default_value_t = 12)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[arg(long)]
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct RadiusArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sel: FamilySel,
    #[arg(long)]
    pub norm: String,
    #[arg(long, default_value_t = 12)]
    pub zero_count: usize,
    #[arg(long)]
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub sel: FamilySel,
    #[arg(long)]
    pub norm: String,
    /// Maximum allowed |oracle − radius|.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Function family: qbessel | wright.
    #[arg(long)]
    pub family: String,
    /// Jackson kinds, e.g. 2,3 (qbessel only).
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub kinds: Vec<u8>,
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub nus: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub qs: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub rhos: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub betas: Vec<f64>,
    /// Norms, e.g. f,g,h.
    #[arg(long, value_delimiter = ',')]
    pub norms: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct LimitArgs {}

/// On-disk zero-table cache keyed by target descriptor, count and tolerance.
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    /// Cache directory from the flag or the UC_RADIUS_CACHE environment
    /// variable; `None` disables caching.
    pub fn from_flag(flag: &Option<PathBuf>) -> Option<Self> {
        flag.clone()
            .or_else(|| std::env::var_os("UC_RADIUS_CACHE").map(PathBuf::from))
            .map(Self::new)
    }

    fn key(target: &ZeroTarget<f64>, count: usize, tol: f64) -> Result<String> {
        let descriptor = serde_json::to_string(&(target, count, tol))?;
        let mut h = Sha256::new();
        h.update(descriptor.as_bytes());
        Ok(format!("{:x}", h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }
}

impl TableSource<f64> for DiskCache {
    fn table(
        &mut self,
        target: &ZeroTarget<f64>,
        count: usize,
        tol: f64,
    ) -> Result<ZeroTable<f64>> {
        let path = self.path(&Self::key(target, count, tol)?);
        if path.is_file() {
            let body = std::fs::read_to_string(&path)?;
            if let Ok(table) = serde_json::from_str::<ZeroTable<f64>>(&body) {
                return Ok(table);
            }
            // unreadable cache entry: fall through and rewrite it
        }
        let table = scan_and_refine(target, count, tol)?;
        std::fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&table)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(table)
    }
}

fn radius_with_source(
    family: &Family<f64>,
    norm: Norm,
    opts: &RadiusOptions<f64>,
    cache: Option<DiskCache>,
) -> Result<DualRadius<f64>> {
    match cache {
        Some(mut c) => uc_radius(family, norm, opts, &mut c),
        None => uc_radius(family, norm, opts, &mut FreshTables),
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(body: T) -> Result<()> {
    let out = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        body,
    })?;
    println!("{}", out);
    Ok(())
}

fn run_eval(a: &EvalArgs) -> Result<()> {
    let family = a.sel.to_family()?;
    let norm = a.norm.as_deref().map(parse_norm).transpose()?;
    let result = match (&family, norm) {
        (Family::QBessel(p), None) => jackson_qbessel(*p, a.z, a.deriv)?,
        (Family::QBessel(p), Some(n)) => normalized_qbessel::<f64>(*p, n, a.z, a.deriv)?,
        (Family::Wright(p), None) => wright_phi::<f64>(*p, a.z, a.deriv)?,
        (Family::Wright(p), Some(n)) => normalized_wright::<f64>(*p, n, a.z, a.deriv)?,
    };
    #[derive(Serialize)]
    struct Out {
        value: f64,
        abs_error_est: f64,
        terms_used: usize,
    }
    emit(Out {
        value: result.value,
        abs_error_est: result.abs_error_est,
        terms_used: result.terms_used,
    })
}

fn run_zeros(a: &ZerosArgs) -> Result<()> {
    let family = a.sel.to_family()?;
    let target = ZeroTarget::new(family, parse_target(&a.which)?)?;
    let table = match DiskCache::from_flag(&a.cache_dir) {
        Some(mut c) => c.table(&target, a.count, a.tol)?,
        None => scan_and_refine(&target, a.count, a.tol)?,
    };
    emit(table)
}

fn run_radius(a: &RadiusArgs) -> Result<()> {
    let family = a.sel.to_family()?;
    let norm = parse_norm(&a.norm)?;
    warn_soft_limits(&family);
    let opts = RadiusOptions {
        zero_count: a.zero_count,
        ..RadiusOptions::default()
    };
    let dual = radius_with_source(&family, norm, &opts, DiskCache::from_flag(&a.cache_dir))?;
    emit(dual)
}

fn run_verify(a: &VerifyArgs) -> Result<()> {
    let family = a.sel.to_family()?;
    let norm = parse_norm(&a.norm)?;
    let dual = radius_with_source(&family, norm, &RadiusOptions::default(), None)?;
    let oracle = oracle_radius(&family, norm)?;
    let disagreement = (oracle.radius - dual.direct.radius)
        .abs()
        .max((oracle.radius - dual.zero_sum.radius).abs());
    let pass = disagreement < a.tol && dual.agreement < a.tol;
    #[derive(Serialize)]
    struct Out {
        radius: DualRadius<f64>,
        oracle_radius: f64,
        disagreement: f64,
        tol: f64,
        pass: bool,
    }
    emit(Out {
        radius: dual,
        oracle_radius: oracle.radius,
        disagreement,
        tol: a.tol,
        pass,
    })?;
    if pass {
        Ok(())
    } else {
        Err(Error::NonConvergence { max_terms: 0 })
    }
}

fn warn_soft_limits(family: &Family<f64>) {
    if let Family::QBessel(p) = family {
        if p.q_above_soft_limit() {
            eprintln!(
                "warning: q = {} is above the soft operating limit {}; \
                 q-Pochhammer products converge slowly",
                p.q,
                crate::qseries::Q_SOFT_LIMIT
            );
        }
    }
}

fn run_sweep(a: &SweepArgs) -> Result<()> {
    let norms: Vec<Norm> = a
        .norms
        .iter()
        .map(|s| parse_norm(s))
        .collect::<Result<_>>()?;
    // grid rows in deterministic order
    let mut rows: Vec<(Family<f64>, Norm)> = Vec::new();
    match a.family.as_str() {
        "qbessel" => {
            if a.kinds.is_empty() || a.nus.is_empty() || a.qs.is_empty() {
                return Err(Error::InvalidParameter(
                    "qbessel sweep requires --kinds, --nus and --qs".into(),
                ));
            }
            for &k in &a.kinds {
                let kind = match k {
                    2 => QKind::Jackson2,
                    3 => QKind::Jackson3,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "unknown Jackson kind {}",
                            other
                        )))
                    }
                };
                for &nu in &a.nus {
                    for &q in &a.qs {
                        for &norm in &norms {
                            rows.push((Family::QBessel(QBesselParams::new(kind, nu, q)?), norm));
                        }
                    }
                }
            }
        }
        "wright" => {
            if a.rhos.is_empty() || a.betas.is_empty() {
                return Err(Error::InvalidParameter(
                    "wright sweep requires --rhos and --betas".into(),
                ));
            }
            for &rho in &a.rhos {
                for &beta in &a.betas {
                    for &norm in &norms {
                        rows.push((Family::Wright(WrightParams::new(rho, beta)?), norm));
                    }
                }
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family '{}' (expected qbessel or wright)",
                other
            )))
        }
    }

    let results: Vec<Result<DualRadius<f64>>> = rows
        .par_iter()
        .map(|(family, norm)| uc_radius(family, *norm, &RadiusOptions::default(), &mut FreshTables))
        .collect();

    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    writeln!(
        w,
        "family,kind,norm,nu|rho,q|beta,radius,residual,method_agreement,domain_upper"
    )?;
    let mut first_err: Option<Error> = None;
    for ((family, norm), res) in rows.iter().zip(results) {
        let (fam, kind, p1, p2) = match family {
            Family::QBessel(p) => (
                "qbessel",
                match p.kind {
                    QKind::Jackson2 => "2",
                    QKind::Jackson3 => "3",
                },
                p.nu,
                p.q,
            ),
            Family::Wright(p) => ("wright", "-", p.rho, p.beta),
        };
        match res {
            Ok(d) => writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                fam,
                kind,
                norm,
                p1,
                p2,
                d.direct.radius,
                d.direct.residual,
                d.agreement,
                d.direct.domain_upper
            )?,
            Err(e) => {
                writeln!(w, "{},{},{},{},{},error,{},,", fam, kind, norm, p1, p2, e)?;
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

fn run_limit_check(_a: &LimitArgs) -> Result<()> {
    println!("classical limit: J^(2)_nu((1-q)z; q) vs J_nu(z)");
    println!("nu      z       q       rel_error");
    for &nu in &[0.0_f64, 1.0] {
        for &z in &[0.5_f64, 1.0, 1.5] {
            for &q in &[0.9_f64, 0.95, 0.99] {
                let p = QBesselParams::new(QKind::Jackson2, nu, q)?;
                let scaled = jackson_qbessel(p, (1.0 - q) * z, 0)?.value;
                let classical = classical_bessel(nu, z)?.value;
                let rel = ((scaled - classical) / classical).abs();
                println!("{:<7} {:<7} {:<7} {:.6e}", nu, z, q, rel);
            }
        }
    }
    println!();
    println!("Wright-Bessel identity: phi(1, nu+1, -x^2/4) (x/2)^nu vs J_nu(x)");
    println!("nu      max_abs_error over x in (0,5]");
    for &nu in &[0.0_f64, 0.5, 1.0] {
        let p = WrightParams::new(1.0, nu + 1.0)?;
        let mut max_err = 0.0_f64;
        for i in 1..=100 {
            let x = 0.05 * i as f64;
            let phi = wright_phi::<f64>(p, -x * x / 4.0, 0)?.value;
            let lhs = phi * (x / 2.0).powf(nu);
            let rhs = classical_bessel(nu, x)?.value;
            max_err = max_err.max((lhs - rhs).abs());
        }
        println!("{:<7} {:.6e}", nu, max_err);
    }
    Ok(())
}

/// Dispatch a parsed job; returns the process exit code.
pub fn run(cmd: &Command) -> i32 {
    let res = match cmd {
        Command::Eval(a) => run_eval(a),
        Command::Zeros(a) => run_zeros(a),
        Command::Radius(a) => run_radius(a),
        Command::Verify(a) => run_verify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::LimitCheck(a) => run_limit_check(a),
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let cmd = if let Some(path) = &cli.job {
        match load_job(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}", e);
                return exit_code(&e);
            }
        }
    } else if let Some(c) = cli.command {
        c
    } else {
        eprintln!("error: no command given (use a subcommand or --job <path>)");
        return 1;
    };
    run(&cmd)
}

fn load_job(path: &Path) -> Result<Command> {
    let body = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&body)?)
}

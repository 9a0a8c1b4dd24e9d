mod output;

use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anomalyid::brauer::{bratteli_lattice, check_generator_relations, WalledBrauerDiagram};
use anomalyid::certification::{
    certify_primal, dual_gap_report, export_sdp, rational_string, rational_to_f64, success_probability_formula,
    tolerance::EQUALITY_TOL, DUAL_INSTANCE,
};
use anomalyid::combinatorics::f_coeff;
use anomalyid::protocol::{simulate, Mode, SimulationConfig};
use anomalyid::Error;
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Pow;

use output::{Format, OutputRecord};

/// Generator relations must hold to this accuracy for `brauer relations` to pass.
const RELATION_TOL: f64 = 1e-12;
/// Largest |z| a simulation may show before it is flagged.
const Z_BAND: f64 = 4.0;
const DEFAULT_NUS: [f64; 5] = [50.0, 100.0, 200.0, 400.0, 800.0];

#[derive(Parser)]
#[command(name = "anomalyid", version, about = "Zero-error identification of anomalous unitary devices")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact optimal success probability P_s(k, d).
    Formula {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        d: u32,
    },
    /// Monte Carlo run of the local parallel protocol.
    Simulate {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::RaoBlackwell)]
        mode: ModeArg,
    },
    /// Primal checks of the optimal parallel testers, optionally the dual certificate.
    Certify {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        dual: bool,
        #[arg(long, value_delimiter = ',', requires = "dual")]
        nu: Vec<f64>,
    },
    /// Walled Brauer diagram algebra.
    Brauer {
        #[command(subcommand)]
        op: BrauerOp,
    },
    /// Write the primal SDP in SDPA sparse format.
    ExportSdp {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Instance {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
}

impl Instance {
    fn triple(&self) -> (usize, usize, usize) {
        (self.n as usize, self.k as usize, self.d as usize)
    }
}

#[derive(Subcommand)]
enum BrauerOp {
    /// Compose two diagrams read from JSON files (`a` on top of `b`).
    Compose {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Evaluate every generator relation as a matrix identity.
    Relations {
        #[command(flatten)]
        size: BrauerSize,
    },
    /// Path counts on the Bratteli lattice of mixed irrep labels.
    Bratteli {
        #[command(flatten)]
        size: BrauerSize,
    },
}

#[derive(Args)]
struct BrauerSize {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    RaoBlackwell,
    Bernoulli,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::RaoBlackwell => Mode::RaoBlackwell,
            ModeArg::Bernoulli => Mode::Bernoulli,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|rec| rec.write(cli.format, &mut io::stdout().lock()).map(|_| rec.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<OutputRecord> {
    match command {
        Command::Formula { k, d } => formula(k as usize, d as usize),
        Command::Simulate { inst, trials, seed, mode } => {
            let (n, k, d) = inst.triple();
            let config = SimulationConfig { n, k, d, trials, seed, mode: mode.into() };
            let res = simulate(&config)?;
            let mut rec = OutputRecord::new("simulate")
                .param("n", n)
                .param("k", k)
                .param("d", d)
                .param("trials", trials)
                .param("seed", seed)
                .param("mode", config.mode);
            rec.result("estimate", res.estimate);
            rec.result("stderr", res.stderr);
            rec.rational("analytic", res.analytic.clone(), res.analytic_value);
            rec.result("z_score", res.z_score);
            rec.check(match res.z_score {
                Some(z) => z.abs() <= Z_BAND,
                None => (res.estimate - res.analytic_value).abs() <= EQUALITY_TOL,
            });
            Ok(rec)
        }
        Command::Certify { inst, dual, nu } => certify(inst.triple(), dual, nu),
        Command::Brauer { op } => brauer(op),
        Command::ExportSdp { inst, out } => {
            let (n, k, d) = inst.triple();
            let summary = export_sdp(n, k, d, &out)?;
            let mut rec = OutputRecord::new("export-sdp").param("n", n).param("k", k).param("d", d).param("out", &out);
            rec.result("path", &summary.path);
            rec.result("constraints", summary.constraints);
            rec.result("block_sizes", &summary.block_sizes);
            rec.rational("expected_optimum", summary.expected_optimum.clone(), summary.expected_optimum_value);
            Ok(rec)
        }
    }
}

fn formula(k: usize, d: usize) -> Result<OutputRecord> {
    let p = success_probability_formula(k, d)?;
    let mut rec = OutputRecord::new("formula").param("k", k).param("d", d);
    rec.rational("probability", rational_string(&p), rational_to_f64(&p));
    let table: Vec<_> = (0..=k).map(|m| serde_json::json!({ "m": m, "f": f_coeff(m, d).to_string() })).collect();
    rec.result("f_table", table);
    Ok(rec)
}

fn certify((n, k, d): (usize, usize, usize), dual: bool, nu: Vec<f64>) -> Result<OutputRecord> {
    if dual && (n, k, d) != DUAL_INSTANCE {
        let (dn, dk, dd) = DUAL_INSTANCE;
        return Err(Error::Unsupported(format!(
            "the dual certificate is implemented only at n={dn}, k={dk}, d={dd} (got n={n}, k={k}, d={d})"
        ))
        .into());
    }
    let report = certify_primal(n, k, d)?;
    let mut rec = OutputRecord::new("certify").param("n", n).param("k", k).param("d", d).param("dual", dual);
    rec.result("born", report.born);
    rec.rational("formula", report.formula.clone(), report.formula_value);
    rec.result("born_error", report.born_error);
    rec.result("zero_error_residual", report.zero_error_residual);
    rec.result("completeness_residual", report.completeness_residual);
    rec.result("min_eigenvalue", report.min_eigenvalue);
    rec.result("min_eigenvalue_method", report.min_eigenvalue_method);
    rec.result("representation", report.representation);
    rec.result("patterns", report.patterns);
    rec.check(report.pass);
    if dual {
        let nus = if nu.is_empty() { DEFAULT_NUS.to_vec() } else { nu };
        rec.params.insert("nu".into(), serde_json::to_value(&nus)?);
        let rows = dual_gap_report(&nus)?;
        for row in &rows {
            rec.check(row.feasible && row.dual_value >= report.formula_value - EQUALITY_TOL);
        }
        rec.result("dual", rows);
    }
    Ok(rec)
}

fn read_diagram(path: &PathBuf) -> Result<WalledBrauerDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing diagram {}", path.display()))
}

fn brauer(op: BrauerOp) -> Result<OutputRecord> {
    match op {
        BrauerOp::Compose { a, b } => {
            let (da, db) = (read_diagram(&a)?, read_diagram(&b)?);
            let product = da.compose(&db)?;
            let mut rec = OutputRecord::new("brauer compose").param("a", &a).param("b", &b);
            rec.result("diagram", &product.diagram);
            rec.result("loops", product.loop_count);
            rec.result("display", product.diagram.to_string());
            Ok(rec)
        }
        BrauerOp::Relations { size } => {
            let report = check_generator_relations(size.n, size.m, size.d)?;
            let mut rec =
                OutputRecord::new("brauer relations").param("n", size.n).param("m", size.m).param("d", size.d);
            rec.check(report.max_residual <= RELATION_TOL);
            rec.result("max_residual", report.max_residual);
            rec.result("relations", report.relations);
            Ok(rec)
        }
        BrauerOp::Bratteli { size } => {
            let lattice = bratteli_lattice(size.n, size.m, size.d)?;
            let levels: Vec<Vec<_>> = lattice
                .levels
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|(label, count)| serde_json::json!({ "label": label.to_string(), "paths": count.to_string() }))
                        .collect()
                })
                .collect();
            let sum = lattice.dimension_sum()?;
            let expected: BigUint = Pow::pow(BigUint::from(size.d), (size.n + size.m) as u32);
            let mut rec = OutputRecord::new("brauer bratteli").param("n", size.n).param("m", size.m).param("d", size.d);
            rec.result("levels", levels);
            rec.result("dimension_sum", sum.to_string());
            rec.result("expected_dimension", expected.to_string());
            rec.check(sum == expected);
            Ok(rec)
        }
    }
}

//! `cff`: construct, verify, convert, and exactly optimize cover-free
//! families and their biclique-cover certificates.
//!
//! Exit codes are stable for scripting: 0 = verified/constructed,
//! 1 = verification failure (a witness is printed), 2 = usage, parameter,
//! or I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cff_core::format::{self, CffDocument};
use cff_core::{
    cff_from_cover, cff_to_hadamard_attempt, construct_optimal_cff, cover_from_cff, graph_stats,
    hadamard_to_cff, kronecker, min_cover_size, paley_type1, sylvester, verify_cff,
    verify_hadamard, BicliqueCoverCert, HadamardAttempt, HadamardMatrix, HadamardVerdict,
    SearchStatus, VerificationReport, VerifyMode, DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "cff",
    about = "Cover-free family toolkit: optimal constructions, exhaustive \
             verification, biclique-cover certificates, Hadamard bridges, \
             and an exact search oracle",
    after_help = "Relative --out paths are resolved inside $CFF_OUT_DIR when \
                  that variable is set.\n\nEXIT CODES:\n  \
                  0  verified / constructed\n  \
                  1  verification failure (witness printed)\n  \
                  2  usage, parameter, or I/O error"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the optimal (r,w;d)-family on C(t,t') points
    Construct {
        r: usize,
        w: usize,
        t: usize,
        /// Profile maximizer to use (default: the smallest)
        #[arg(long)]
        tprime: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exhaustively check the cover-free property of an incidence matrix
    VerifyCff {
        path: PathBuf,
        r: usize,
        w: usize,
        d: u64,
        /// Require every residual to equal d instead of at least d
        #[arg(long)]
        exact: bool,
    },
    /// Print edge count, maximum biclique size, and the covering lower bound
    Bound { t: usize, r: usize, w: usize, d: u64 },
    /// Exact minimum d-biclique cover size by branch and bound
    Search {
        t: usize,
        r: usize,
        w: usize,
        d: u64,
        /// Node budget before the search downgrades to an upper bound
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Certificate file used as the initial incumbent
        #[arg(long)]
        seed: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hadamard matrix generation, verification, and the (1,1;d) bridge
    Hadamard {
        #[command(subcommand)]
        command: HadamardCommand,
    },
    /// Convert between incidence matrices and cover certificates
    Convert {
        #[command(subcommand)]
        command: ConvertCommand,
    },
}

#[derive(Subcommand)]
enum HadamardCommand {
    /// Generate a matrix
    #[command(subcommand_value_name = "GENERATOR")]
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Check all row pairs of a sign matrix for orthogonality
    Verify { path: PathBuf },
    /// Extract the (1,1;d)-family of an order-4d matrix
    ToCff {
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Attempt the bordered map from a t = n = 4d-1 instance back to a matrix
    FromCff {
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// Order 2^k by the doubling construction
    Sylvester {
        k: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Order q+1 by quadratic residues, for primes q = 3 mod 4
    Paley {
        q: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Kronecker product of two matrix files
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum ConvertCommand {
    /// Map each point of an instance to its biclique generator
    CffToCover {
        path: PathBuf,
        /// Demand d (defaults to the d recorded in the file header)
        #[arg(long)]
        d: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Unfold a cover certificate into an incidence matrix
    CoverToCff {
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArg {
    /// Emits a document to the chosen sink. Relative paths are resolved
    /// inside $CFF_OUT_DIR when set.
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => {
                let path = resolve_out_path(path);
                std::fs::write(&path, text)
                    .with_context(|| format!("failed to write {}", path.display()))?;
                eprintln!("wrote {}", path.display());
                Ok(())
            }
        }
    }
}

fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("CFF_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("failed to read {}", path.display()))
}

fn print_report(report: &VerificationReport) {
    println!(
        "verdict {}",
        if report.passed() { "pass" } else { "fail" }
    );
    println!("pairs {}", report.pairs_checked);
    println!("min-residual {}", report.min_residual);
    println!("max-residual {}", report.max_residual);
    if let Some(witness) = &report.witness {
        println!(
            "witness L={} M={} residual={}",
            witness.left, witness.right, witness.residual
        );
    }
}

fn report_exit(report: &VerificationReport) -> ExitCode {
    print_report(report);
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { r, w, t, tprime, out } => {
            let (instance, params) = construct_optimal_cff(r, w, t, tprime)?;
            let doc = CffDocument {
                instance,
                r,
                w,
                d: Some(params.d),
                t_prime: Some(params.t_prime),
            };
            out.emit(&format::write_cff(&doc))?;
            eprintln!(
                "constructed r={r} w={w} t={t} tprime={} d={} n={}",
                params.t_prime, params.d, params.t_double_prime
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCff { path, r, w, d, exact } => {
            let doc = format::read_cff(&read_to_string(&path)?)?;
            if doc.r != r || doc.w != w {
                eprintln!(
                    "note: file header says r={} w={}, checking r={r} w={w} as requested",
                    doc.r, doc.w
                );
            }
            let mode = if exact { VerifyMode::Exact } else { VerifyMode::AtLeast };
            let report = verify_cff(&doc.instance, r, w, d, mode)?;
            Ok(report_exit(&report))
        }
        Command::Bound { t, r, w, d } => {
            let stats = graph_stats(t, r, w)?;
            println!("edges {}", stats.edge_count);
            println!("max-biclique-edges {}", stats.max_biclique_edges);
            println!("lower-bound {}", stats.cover_lower_bound(d)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { t, r, w, d, budget, seed, out } => {
            let seed_cert = match seed {
                None => None,
                Some(path) => Some(format::read_cover(&read_to_string(&path)?)?),
            };
            let result = min_cover_size(t, r, w, d, budget, seed_cert.as_ref())?;
            println!("optimum {}", result.optimum);
            println!(
                "status {}",
                match result.status {
                    SearchStatus::ProvenOptimal => "proven-optimal",
                    SearchStatus::UpperBoundOnly => "upper-bound-only",
                }
            );
            println!("nodes {}", result.nodes_explored);
            out.emit(&format::write_cover(&result.certificate))?;
            Ok(match result.status {
                SearchStatus::ProvenOptimal => ExitCode::SUCCESS,
                SearchStatus::UpperBoundOnly => ExitCode::from(1),
            })
        }
        Command::Hadamard { command } => run_hadamard(command),
        Command::Convert { command } => run_convert(command),
    }
}

fn run_hadamard(command: HadamardCommand) -> Result<ExitCode> {
    match command {
        HadamardCommand::Gen { generator } => {
            let (matrix, out) = match generator {
                Generator::Sylvester { k, out } => (sylvester(k)?, out),
                Generator::Paley { q, out } => (paley_type1(q)?, out),
                Generator::Product { a, b, out } => {
                    let ha = HadamardMatrix::from_rows(format::read_sign_matrix(
                        &read_to_string(&a)?,
                    )?)?;
                    let hb = HadamardMatrix::from_rows(format::read_sign_matrix(
                        &read_to_string(&b)?,
                    )?)?;
                    (kronecker(&ha, &hb)?, out)
                }
            };
            out.emit(&format::write_sign_matrix(matrix.rows()))?;
            Ok(ExitCode::SUCCESS)
        }
        HadamardCommand::Verify { path } => {
            let rows = format::read_sign_matrix(&read_to_string(&path)?)?;
            match verify_hadamard(&rows)? {
                HadamardVerdict::Pass => {
                    println!("verdict pass");
                    println!("order {}", rows.len());
                    Ok(ExitCode::SUCCESS)
                }
                HadamardVerdict::Fail { row_a, row_b, dot } => {
                    println!("verdict fail");
                    println!("rows {row_a} {row_b} dot {dot}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        HadamardCommand::ToCff { path, out } => {
            let rows = format::read_sign_matrix(&read_to_string(&path)?)?;
            let matrix = HadamardMatrix::from_rows(rows)?;
            let (instance, d) = hadamard_to_cff(&matrix)?;
            let doc = CffDocument {
                instance,
                r: 1,
                w: 1,
                d: Some(d),
                t_prime: None,
            };
            out.emit(&format::write_cff(&doc))?;
            eprintln!("extracted t={} n={} d={d}", doc.instance.t(), doc.instance.n());
            Ok(ExitCode::SUCCESS)
        }
        HadamardCommand::FromCff { path, out } => {
            let doc = format::read_cff(&read_to_string(&path)?)?;
            let t = doc.instance.t();
            let derived = ((t + 1) / 4) as u64;
            let d = doc.d.unwrap_or(derived);
            if d != derived {
                anyhow::bail!(
                    "header d={d} disagrees with the derived d={derived} for t={t}"
                );
            }
            match cff_to_hadamard_attempt(&doc.instance, d)? {
                HadamardAttempt::Matrix(h) => {
                    out.emit(&format::write_sign_matrix(h.rows()))?;
                    eprintln!("recovered order {}", h.order());
                    Ok(ExitCode::SUCCESS)
                }
                HadamardAttempt::Failure { row_a, row_b, dot } => {
                    println!("verdict fail");
                    println!("rows {row_a} {row_b} dot {dot}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn run_convert(command: ConvertCommand) -> Result<ExitCode> {
    match command {
        ConvertCommand::CffToCover { path, d, out } => {
            let doc = format::read_cff(&read_to_string(&path)?)?;
            let d = d.or(doc.d).context(
                "the file header carries no d; pass --d explicitly",
            )?;
            let cert = cover_from_cff(&doc.instance, doc.r, doc.w, d)?;
            if cert.rejected_points() > 0 {
                eprintln!("rejected {} points with out-of-bounds signatures", cert.rejected_points());
            }
            out.emit(&format::write_cover(&cert))?;
            Ok(ExitCode::SUCCESS)
        }
        ConvertCommand::CoverToCff { path, out } => {
            let cert: BicliqueCoverCert = format::read_cover(&read_to_string(&path)?)?;
            let instance = cff_from_cover(&cert);
            let doc = CffDocument {
                instance,
                r: cert.r(),
                w: cert.w(),
                d: Some(cert.d()),
                t_prime: None,
            };
            out.emit(&format::write_cff(&doc))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

//! zetaval: zeta functions of varieties over finite fields, their special
//! values, and finitely generated abelian group utilities.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zetaval_cli::{abgrp, input, pipeline};
use pipeline::{Job, Subcommand as PipelineSub};
use zetaval_core::SizeGuard;

#[derive(Parser)]
#[command(name = "zetaval", version, about = "Exact zeta functions, special values, and abelian group algebra over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Point counts N_1..N_M.
    Count(RunArgs),
    /// Weil factorization with structural checks.
    Zeta(RunArgs),
    /// Pole order, exact leading value, and the predicted Euler
    /// characteristic at t = q^{-r}.
    Special(RunArgs),
    /// Everything, plus the cohomological cross-check and conjecture
    /// verdicts.
    Verify(RunArgs),
    /// Abelian group utilities.
    Abgrp(AbgrpArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Input document (sections [field], [variety], [run], ...).
    #[arg(long)]
    input: PathBuf,
    /// Override the base field, e.g. 5 or 2^3.
    #[arg(long)]
    q: Option<String>,
    /// Number of counts to report.
    #[arg(long)]
    terms: Option<u32>,
    /// Twist r for special/verify.
    #[arg(long)]
    r: Option<u32>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Size-guard override: maximum points visited per enumeration.
    #[arg(long, value_name = "N")]
    max_points: Option<u64>,
    /// Worker threads for point counting.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct AbgrpArgs {
    #[command(subcommand)]
    op: AbgrpOp,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum AbgrpOp {
    /// Smith normal form U*M*V = D of a row-major matrix ("a,b;c,d").
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Invariant factors of Z^rows / (column span of the matrix).
    Cyclic {
        #[arg(long)]
        matrix: String,
    },
    /// z(f) = [Ker f]/[Coker f] for a matrix between two groups.
    Zvalue {
        /// Source group, e.g. "Z^2 + Z/6".
        #[arg(long)]
        source: String,
        /// Target group.
        #[arg(long)]
        target: String,
        /// Matrix with target-coordinate rows and source-coordinate columns.
        #[arg(long)]
        matrix: String,
    },
    /// G/nG and the Tate module ranks.
    Quotient {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: String,
    },
    /// First Ulm subgroup, divisible part, and the structural identities.
    Ulm {
        #[arg(long)]
        group: String,
    },
    /// l-adic completion.
    Completion {
        #[arg(long)]
        group: String,
        #[arg(long)]
        l: u64,
    },
    /// Complement of a subgroup maximal among those meeting l^n N trivially.
    Complement {
        /// The ambient finite group N.
        #[arg(long)]
        group: String,
        /// Generators of M, vectors "a,b;c,d" in N's cyclic coordinates.
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u32,
        /// Enumeration cap for |N|.
        #[arg(long, default_value_t = zetaval_core::abelian::complement::DEFAULT_ORDER_CAP)]
        cap: u64,
    },
    /// Idempotent lift through the nil ideal p*R of Z/p^s matrices.
    Liftidem {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        matrix: String,
    },
    /// Exact inverse mod p^s of a matrix invertible mod p.
    Liftunit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        matrix: String,
    },
    /// Seeded randomized suites (kernel/cokernel indices, complements,
    /// lifts, class identities, pairings).
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Multiplies the per-suite case counts.
        #[arg(long, default_value_t = 1)]
        scale: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Count(args) => run_pipeline(args, PipelineSub::Count),
        Cmd::Zeta(args) => run_pipeline(args, PipelineSub::Zeta),
        Cmd::Special(args) => run_pipeline(args, PipelineSub::Special),
        Cmd::Verify(args) => run_pipeline(args, PipelineSub::Verify),
        Cmd::Abgrp(args) => run_abgrp(args),
    };
    ExitCode::from(code)
}

fn run_pipeline(args: RunArgs, sub: PipelineSub) -> u8 {
    let job = match build_job(&args) {
        Ok(job) => job,
        Err((code, msg)) => {
            eprintln!("error: {}", msg);
            return code;
        }
    };
    match pipeline::run(&job, sub) {
        Ok((report, exit)) => {
            if args.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", pipeline::render_text(&report));
            }
            exit as u8
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.exit_code as u8
        }
    }
}

fn build_job(args: &RunArgs) -> Result<Job, (u8, String)> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| (1u8, format!("cannot read {}: {}", args.input.display(), e)))?;
    let doc = input::parse_document(&text).map_err(|e| (2u8, e.to_string()))?;

    let (p, k) = match &args.q {
        Some(spec) => parse_q(spec).map_err(|m| (2u8, m))?,
        None => {
            let p = doc.p.ok_or((2u8, "missing [field] p".to_string()))?;
            let k = doc.k.unwrap_or(1);
            (p, k)
        }
    };
    let expr_text = doc
        .expr
        .clone()
        .ok_or((2u8, "missing [variety] expr".to_string()))?;
    // Locate the expr line for error positions.
    let expr_line = text
        .lines()
        .position(|l| l.trim_start().starts_with("expr"))
        .map(|i| i + 1)
        .unwrap_or(1);
    let col_base = text
        .lines()
        .nth(expr_line - 1)
        .and_then(|l| l.find('=').map(|i| i + 2))
        .unwrap_or(1);
    let variety =
        input::parse_expr(&expr_text, expr_line, col_base).map_err(|e| (2u8, e.to_string()))?;

    let frobenius = doc
        .frobenius
        .as_ref()
        .map(|polys| polys.iter().map(|c| input::poly_from_coeffs(c)).collect());
    let minimal_poly = doc.minimal_poly.as_ref().map(|c| input::poly_from_coeffs(c));

    Ok(Job {
        p,
        k,
        expr_text,
        variety,
        r: args.r.or(doc.r),
        terms: args.terms.or(doc.terms),
        max_points: args
            .max_points
            .or(doc.bounds)
            .unwrap_or(SizeGuard::DEFAULT_MAX_POINTS),
        threads: args.threads,
        frobenius,
        cycle_rank: doc.cycle_rank,
        minimal_poly,
    })
}

/// "5" or "2^3" -> (p, k).
fn parse_q(spec: &str) -> Result<(u64, u32), String> {
    let spec = spec.trim();
    if let Some((p, k)) = spec.split_once('^') {
        let p = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid prime in --q {:?}", spec))?;
        let k = k
            .trim()
            .parse()
            .map_err(|_| format!("invalid exponent in --q {:?}", spec))?;
        Ok((p, k))
    } else {
        let p = spec
            .parse()
            .map_err(|_| format!("invalid --q {:?}", spec))?;
        Ok((p, 1))
    }
}

fn run_abgrp(args: AbgrpArgs) -> u8 {
    let result = match &args.op {
        AbgrpOp::Snf { matrix } => abgrp::run_snf(matrix),
        AbgrpOp::Cyclic { matrix } => abgrp::run_cyclic(matrix),
        AbgrpOp::Zvalue {
            source,
            target,
            matrix,
        } => abgrp::run_zvalue(source, target, matrix),
        AbgrpOp::Quotient { group, n } => abgrp::run_quotient(group, n),
        AbgrpOp::Ulm { group } => abgrp::run_ulm(group),
        AbgrpOp::Completion { group, l } => abgrp::run_completion(group, *l),
        AbgrpOp::Complement {
            group,
            gens,
            l,
            n,
            cap,
        } => abgrp::run_complement(group, gens, *l, *n, *cap),
        AbgrpOp::Liftidem { p, s, matrix } => abgrp::run_liftidem(*p, *s, matrix),
        AbgrpOp::Liftunit { p, s, matrix } => abgrp::run_liftunit(*p, *s, matrix),
        AbgrpOp::Selftest { seed, scale } => abgrp::run_selftest(*seed, *scale),
    };
    match result {
        Ok(rendered) => {
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rendered.json).expect("json value")
                );
            } else {
                println!("{}", rendered.text);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.exit_code as u8
        }
    }
}

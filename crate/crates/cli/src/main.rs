use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nichols_rank2::admissibility::reconstruct_tree;
use nichols_rank2::braidedalg::Braiding;
use nichols_rank2::classify::{acceptance_matrix, classify_full, Caps, ClassificationReport};
use nichols_rank2::fbtree::parse_tree;
use nichols_rank2::nicholscore::{hilbert_prefix, verify_type, Verdict};
use nichols_rank2::{parse_scalar, Error};
use serde::Serialize;

const SCALAR_GRAMMAR: &str = "[-]<k>/<N>, meaning +-zeta_N^k (e.g. 1/3, -2/12, 0/1)";

#[derive(Parser)]
#[command(name = "nichols", about = "Rank two Nichols algebras of diagonal type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    degree_cap: u32,
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    weight_cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ScalarArgs {
    #[arg(long, allow_hyphen_values = true)]
    q11: String,
    #[arg(long, allow_hyphen_values = true)]
    q12: String,
    #[arg(long, allow_hyphen_values = true)]
    q21: String,
    #[arg(long, allow_hyphen_values = true)]
    q22: String,
}

#[derive(Subcommand)]
enum Command {
    /// Match the type conditions, grow the tree and verify it up to the caps
    Classify(ScalarArgs),
    /// Check that the PBW monomials of a given tree form a basis up to the degree cap
    Verify {
        #[command(flatten)]
        scalars: ScalarArgs,
        /// Tree in S-expression form, e.g. "(L L)"
        #[arg(long)]
        tree: String,
    },
    /// Reconstruct the tree of a braiding
    Tree(ScalarArgs),
    /// Dimensions of the homogeneous components up to the degree cap
    Dims(ScalarArgs),
    /// Run every fixture of the type table
    Fixtures,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } | Error::Unknown { .. } => Failure::Input(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl ScalarArgs {
    fn braiding(&self) -> Result<Braiding, Failure> {
        let get = |flag: &str, v: &str| {
            parse_scalar(v).map_err(|e| Failure::Input(format!("--{flag}: {e}\nscalar grammar: {SCALAR_GRAMMAR}")))
        };
        Braiding::new(get("q11", &self.q11)?, get("q12", &self.q12)?, get("q21", &self.q21)?, get("q22", &self.q22)?)
            .map_err(Failure::from)
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let types: Vec<String> = r.matches.iter().map(|(t, c)| format!("T{t} case {c}")).collect();
    out.push_str(&format!("type: {}\n", if types.is_empty() { "none".into() } else { types.join(", ") }));
    out.push_str(&format!("tree: {}\n", r.tree.as_deref().unwrap_or("-")));
    for p in &r.pbw {
        out.push_str(&format!("pbw: {} weight {} height {}\n", p.node, p.weight, p.height));
    }
    out.push_str(&format!("dimension: {}\n", serde_json::to_string(&r.dimension).unwrap().trim_matches('"')));
    out.push_str(&format!("verified_up_to: {}\n", r.verified_up_to));
    if let Some(a) = &r.admissibility {
        out.push_str(&format!("admissible up to {}: {}\n", a.degree, a.admissible));
    }
    for c in &r.candidates {
        out.push_str(&format!("candidate T{}: verified {} up to {}\n", c.type_id, c.verified, c.verified_up_to));
    }
    for rel in &r.relations {
        out.push_str(&format!("relation: {rel}\n"));
    }
    for rel in &r.relations_beyond_cap {
        out.push_str(&format!("relation beyond cap: {rel}\n"));
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

fn verdict_text(v: &Verdict) -> String {
    match (&v.failed_at, &v.diagnostic) {
        (None, _) => format!("verified up to degree {}", v.degree),
        (Some(m), d) => format!("fails at degree {m}: {}", d.as_deref().unwrap_or("")),
    }
}

#[derive(Serialize)]
struct TreeOutput<'a> {
    tree: String,
    non_root_nodes: &'a [String],
    min_formula_mismatches: &'a [String],
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let caps = Caps {
        degree_cap: cli.degree_cap,
        weight_cap: cli.weight_cap,
    };
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Classify(s) => {
            let r = classify_full(&s.braiding()?, caps)?;
            let ok = r.candidates.iter().all(|c| c.verified);
            Ok((if text { report_text(&r) } else { json(&r) }, ok))
        }
        Command::Verify { scalars, tree } => {
            let t = parse_tree(tree).map_err(|e| Failure::Input(format!("--tree: {e}")))?;
            let v = verify_type(&t, &scalars.braiding()?, cli.degree_cap)?;
            Ok((if text { verdict_text(&v) } else { json(&v) }, v.holds))
        }
        Command::Tree(s) => {
            let r = reconstruct_tree(&s.braiding()?, cli.weight_cap)?;
            let out = if text {
                r.tree.serialize()
            } else {
                json(&TreeOutput {
                    tree: r.tree.serialize(),
                    non_root_nodes: &r.non_root_nodes,
                    min_formula_mismatches: &r.min_formula_mismatches,
                })
            };
            Ok((out, true))
        }
        Command::Dims(s) => {
            let h = hilbert_prefix(&s.braiding()?, cli.degree_cap);
            Ok((serde_json::to_string(&h.dims).unwrap(), true))
        }
        Command::Fixtures => {
            let rows = acceptance_matrix(caps);
            let ok = rows.iter().all(|r| r.passed);
            let out = if text {
                let mut s = String::new();
                for r in &rows {
                    let checks: Vec<String> =
                        r.checks.iter().map(|(n, p)| format!("{n}={}", if *p { "ok" } else { "FAIL" })).collect();
                    s.push_str(&format!(
                        "{:<8} {} degree {:<2} {}\n",
                        r.name,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.degree,
                        checks.join(" ")
                    ));
                    for d in &r.details {
                        s.push_str(&format!("         {d}\n"));
                    }
                }
                s
            } else {
                json(&rows)
            };
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            println!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

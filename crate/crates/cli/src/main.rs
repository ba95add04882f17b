//! Batch CLI over the cubix library. All runs are deterministic: payloads
//! carry no timestamps and every map serializes in sorted key order.
//! Exit codes: 0 success, 1 verification failure, 2 usage/format error.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cubix::arith::{
    annihilator_bounds, bernoulli, cnpm_check, irregular_pairs, vanishing_ext, CnpmData, EMode,
    VandiverTable,
};
use cubix::cn::{alpha_well_defined, cn_structure};
use cubix::cubic::{is_cubic, multiextension_laws_check, theta_cocycle, CubicElement};
use cubix::json::{
    element_from_json, element_to_json, CubicCheckJson, ElementJson, LaurentJson, SymJson,
};
use cubix::sym::{
    build_phi, flat, phi_closed_form, taylor_chain, verify_identities,
};
use cubix::{enumeration_cap, Error, FiniteAbelianGroup, GroupRingElement};

#[derive(Parser)]
#[command(name = "cubix", version, about = "exact cubic-cocycle and annihilator arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cubic-element operations
    #[command(subcommand)]
    Cubic(CubicCmd),
    /// Symmetric-power calculus
    #[command(subcommand)]
    Sym(SymCmd),
    /// Symmetric powers of augmentation ideals
    #[command(subcommand)]
    Cn(CnCmd),
    /// Bernoulli and annihilator arithmetic
    #[command(subcommand)]
    Arith(ArithCmd),
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Check the cubic conditions of an element file
    Check {
        file: String,
        #[arg(long)]
        arity: usize,
        /// Also print the independent character-oracle verdict
        #[arg(long)]
        oracle: bool,
    },
    /// Build the coboundary cocycle of a normalized unit
    Theta {
        #[arg(long)]
        unit: String,
        #[arg(long)]
        arity: usize,
    },
    /// Lift an (n-1)-cubic element to an n-cubic one
    Induce { file: String },
    /// Apply the flat operator
    Flat { file: String },
    /// Full Taylor chain with the exponent ledger
    Taylor { file: String },
    /// Audit the multiextension composition laws
    Laws {
        file: String,
        #[arg(long)]
        arity: usize,
    },
    /// Evaluate alpha well-definedness on the defining relations
    Alpha { file: String },
}

#[derive(Subcommand)]
enum SymCmd {
    /// Print Phi(n) in pure-tensor form (or its Laurent closed form)
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        closed_form: bool,
        /// Cross-check the tensor expansion against the closed form
        #[arg(long)]
        verify: bool,
    },
    /// Verify the combinatorial identity suite
    Identities {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CnCmd {
    /// Invariant factors and free rank of C_n(A)
    Structure {
        /// Cyclic orders of A, comma separated (e.g. 2,2)
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Include the generator list and relation matrix
        #[arg(long)]
        presentation: bool,
    },
}

#[derive(Args)]
struct VandiverArgs {
    /// Path to a Kummer-Vandiver status file (JSON); bundled data otherwise
    #[arg(long)]
    vandiver_data: Option<String>,
}

#[derive(Subcommand)]
enum ArithCmd {
    /// Exact Bernoulli number B_k
    Bernoulli {
        #[arg(long)]
        k: u64,
    },
    /// Scan for irregular pairs (p, k) with p <= limit
    Irregular {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Annihilator integers and verdicts for a group and dimension
    Annihilator {
        /// Cyclic orders of G, comma separated
        #[arg(long)]
        group: String,
        #[arg(long)]
        dim: u64,
        /// strict | vandiver | table:<file>
        #[arg(long, default_value = "vandiver")]
        mode: String,
        #[arg(long)]
        genus: Option<u64>,
        #[command(flatten)]
        vandiver: VandiverArgs,
    },
    /// Vanishing verdict for the multiextension class group at (p, n)
    ExtVanishing {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        vandiver: VandiverArgs,
    },
    /// Check class-group tower data against the eigenspace conditions
    CnpmCheck {
        file: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
}

/// Failures that map to exit code 1 (the object fails verification) rather
/// than exit code 2 (unusable input).
fn is_verification_failure(e: &Error) -> bool {
    matches!(e, Error::NotAUnit | Error::NotCubic { .. } | Error::AugmentationNotOne)
}

fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": e.to_string() }).to_string()
}

fn read_element(path: &str) -> Result<GroupRingElement, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|io| Error::Malformed(format!("cannot read {path}: {io}")))?;
    element_from_json(&text)
}

fn parse_group(spec: &str) -> Result<FiniteAbelianGroup, Error> {
    let orders = spec
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Malformed(format!("bad order {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    FiniteAbelianGroup::new(orders)
}

fn load_vandiver(args: &VandiverArgs) -> Result<VandiverTable, Error> {
    match &args.vandiver_data {
        None => Ok(VandiverTable::bundled()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|io| Error::Malformed(format!("cannot read {path}: {io}")))?;
            VandiverTable::from_json_str(&text)
        }
    }
}

fn parse_mode(mode: &str) -> Result<EMode, Error> {
    match mode {
        "strict" => Ok(EMode::Strict),
        "vandiver" => Ok(EMode::Vandiver),
        other => {
            if let Some(path) = other.strip_prefix("table:") {
                let text = std::fs::read_to_string(path)
                    .map_err(|io| Error::Malformed(format!("cannot read {path}: {io}")))?;
                let table: BTreeMap<u64, Vec<(u64, u32)>> = serde_json::from_str(&text)
                    .map_err(|e| Error::Malformed(format!("table data: {e}")))?;
                Ok(EMode::Table(table))
            } else {
                Err(Error::Malformed(format!(
                    "unknown mode {other:?}; expected strict, vandiver or table:<file>"
                )))
            }
        }
    }
}

fn vandiver_notice() {
    eprintln!(
        "notice: odd-index e(n) values assume the Kummer-Vandiver property \
         (verified for all primes below the bundled bound); pass --mode strict to surface unknowns"
    );
}

/// Ok(false) = verification failure (exit 1).
fn run(cli: Cli) -> Result<bool, Error> {
    let cap = enumeration_cap();
    match cli.command {
        Command::Cubic(cmd) => run_cubic(cmd, cap),
        Command::Sym(cmd) => run_sym(cmd),
        Command::Cn(cmd) => run_cn(cmd, cap),
        Command::Arith(cmd) => run_arith(cmd),
    }
}

fn run_cubic(cmd: CubicCmd, cap: u128) -> Result<bool, Error> {
    match cmd {
        CubicCmd::Check { file, arity, oracle } => {
            let c = read_element(&file)?;
            let check = is_cubic(&c, arity)?;
            let mut payload = serde_json::to_value(CubicCheckJson::from_check(&check))
                .expect("report serializes");
            if oracle {
                let oracle_check = cubix::cubic::oracle_cubic_check(&c, arity, cap)?;
                payload["oracle_ok"] = serde_json::Value::Bool(oracle_check.ok);
            }
            println!("{}", serde_json::to_string_pretty(&payload).expect("payload"));
            Ok(check.ok)
        }
        CubicCmd::Theta { unit, arity } => {
            let u = read_element(&unit)?;
            let c = theta_cocycle(&u, arity)?;
            println!("{}", element_to_json(&c));
            Ok(true)
        }
        CubicCmd::Induce { file } => {
            let c = read_element(&file)?;
            let lifted = cubix::cubic::induce(&c)?;
            println!("{}", element_to_json(&lifted));
            Ok(true)
        }
        CubicCmd::Flat { file } => {
            let c = read_element(&file)?;
            let d = flat(&c)?;
            println!("{}", element_to_json(&d));
            Ok(true)
        }
        CubicCmd::Taylor { file } => {
            let c = read_element(&file)?;
            let chain = taylor_chain(&c)?;
            let payload = serde_json::json!({
                "elements": chain.elements.iter().map(ElementJson::from_element).collect::<Vec<_>>(),
                "exponents": chain.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "superfactorial": chain.superfactorial.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("payload"));
            Ok(true)
        }
        CubicCmd::Laws { file, arity } => {
            let c = read_element(&file)?;
            let verified = CubicElement::verify(c, arity)?;
            let report = multiextension_laws_check(&verified)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(report.all_pass)
        }
        CubicCmd::Alpha { file } => {
            let c = read_element(&file)?;
            let report = alpha_well_defined(&c, cap)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(report.pass)
        }
    }
}

fn run_sym(cmd: SymCmd) -> Result<bool, Error> {
    match cmd {
        SymCmd::Phi { n, closed_form, verify } => {
            if n < 2 {
                return Err(Error::ArityTooSmall { min: 2, got: n });
            }
            if verify {
                let tensor = build_phi(n).to_laurent();
                let closed = phi_closed_form(n);
                let agree = tensor == closed;
                let payload = serde_json::json!({
                    "n": n,
                    "representations_agree": agree,
                });
                println!("{}", serde_json::to_string_pretty(&payload).expect("payload"));
                return Ok(agree);
            }
            if closed_form {
                let poly = phi_closed_form(n);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&LaurentJson::from_poly(&poly)).expect("payload")
                );
            } else {
                let phi = build_phi(n);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&SymJson::from_sym(&phi)).expect("payload")
                );
            }
            Ok(true)
        }
        SymCmd::Identities { n } => {
            let report = verify_identities(n)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(report.all_pass)
        }
    }
}

fn run_cn(cmd: CnCmd, cap: u128) -> Result<bool, Error> {
    match cmd {
        CnCmd::Structure { group, n, presentation } => {
            let a = parse_group(&group)?;
            if presentation {
                let pres = cubix::cn::cn_presentation(&a, n, cap)?;
                let payload = serde_json::json!({
                    "structure": pres.structure(),
                    "generators": pres
                        .generators
                        .iter()
                        .map(|g| g.coords().to_vec())
                        .collect::<Vec<_>>(),
                    "relations": pres
                        .relations
                        .iter()
                        .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&payload).expect("payload"));
            } else {
                let s = cn_structure(&a, n, cap)?;
                println!("{}", serde_json::to_string_pretty(&s).expect("structure"));
            }
            Ok(true)
        }
    }
}

fn run_arith(cmd: ArithCmd) -> Result<bool, Error> {
    match cmd {
        ArithCmd::Bernoulli { k } => {
            let b = bernoulli(k);
            if b.is_integer() {
                println!("{}", b.numer());
            } else {
                println!("{}/{}", b.numer(), b.denom());
            }
            Ok(true)
        }
        ArithCmd::Irregular { limit, csv, jobs } => {
            let pairs = irregular_pairs(limit, jobs)?;
            if csv {
                let mut out = String::from("p,k\n");
                for (p, k) in &pairs {
                    out.push_str(&format!("{p},{k}\n"));
                }
                print!("{out}");
            } else {
                let payload: Vec<_> = pairs.iter().map(|(p, k)| serde_json::json!([p, k])).collect();
                println!("{}", serde_json::to_string_pretty(&payload).expect("pairs"));
            }
            Ok(true)
        }
        ArithCmd::Annihilator { group, dim, mode, genus, vandiver } => {
            let g = parse_group(&group)?;
            let mode = parse_mode(&mode)?;
            if mode == EMode::Vandiver {
                vandiver_notice();
            }
            let table = load_vandiver(&vandiver)?;
            let report = annihilator_bounds(&g, dim, &mode, &table, genus)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(true)
        }
        ArithCmd::ExtVanishing { p, n, vandiver } => {
            eprintln!(
                "notice: CONDITIONAL_VANISHES verdicts rely on the Kummer-Vandiver property \
                 for the given prime (bundled verification bound; override with --vandiver-data)"
            );
            let table = load_vandiver(&vandiver)?;
            let report = vanishing_ext(p, n, &table)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(true)
        }
        ArithCmd::CnpmCheck { file, p, n } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|io| Error::Malformed(format!("cannot read {file}: {io}")))?;
            let data: CnpmData = serde_json::from_str(&text)
                .map_err(|e| Error::Malformed(format!("cnpm data: {e}")))?;
            if data.p != p {
                return Err(Error::Malformed(format!(
                    "data declares p = {}, flag says {p}",
                    data.p
                )));
            }
            let report = cnpm_check(n, &data)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            Ok(report.accepted)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", error_json(&e));
            if is_verification_failure(&e) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

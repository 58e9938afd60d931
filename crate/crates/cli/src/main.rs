//! `cocyclic`: construct, check and classify cocyclic solutions from the shell.
//!
//! Exit status: 0 success, 1 a check came out negative (verification failed,
//! not isomorphic, oracle disagreement, no counterexample), 2 malformed input,
//! 3 a resource cap was hit.

mod document;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cocyclic::classify::{
    canonical_invariants, count_cocyclic, enumerate_all, level_coincidence,
    oracle_exhaustive_cyclic, refute_rump, table1, CocyclicInvariants, OracleConfig,
    DEFAULT_ORACLE_CAP,
};
use cocyclic::solution::{
    isomorphic_k, make_k, permutation_group, retract_times, retraction_sizes, Family, IsoSearch,
    KParams,
};
use document::SolutionDocument;

/// Environment variable overriding the oracle's size cap.
const ORACLE_CAP_VAR: &str = "COCYCLIC_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "cocyclic",
    version,
    about = "Indecomposable cocyclic Yang-Baxter solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Standard,
    Tilde4,
    Fourn,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Standard => Family::Standard,
            FamilyArg::Tilde4 => Family::Tilde4,
            FamilyArg::Fourn => Family::FourN,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a solution from parameters and print it as JSON.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value = "standard")]
        family: FamilyArg,
    },
    /// Check non-degeneracy, involutivity and the braid relation.
    Verify { file: PathBuf },
    /// Print the m-th retraction; sizes per step go to stderr.
    Retract {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: u32,
    },
    /// Describe the permutation group generated by the σ maps.
    Group { file: PathBuf },
    /// Test two solutions for isomorphism.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Largest carrier for the bijection search.
        #[arg(long, default_value_t = cocyclic::solution::iso::DEFAULT_ISO_CAP)]
        cap: usize,
    },
    /// Print the canonical invariants (n, t, a) and the socle index.
    Classify { file: PathBuf },
    /// List one representative per isomorphism class of order n.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Count classes of order n, with the breakdown over t.
    Count {
        #[arg(long)]
        n: u64,
    },
    /// Class counts at orders p^k for p in {2,3,5,7}, k in 2..=15, as CSV.
    Table1,
    /// Exhaustive search over cyclic-regular solutions, compared with `enumerate`.
    Oracle {
        #[arg(long)]
        n: u64,
        /// Permit order 9.
        #[arg(long)]
        allow_slow: bool,
    },
    /// Two non-isomorphic solutions sharing order and socle index.
    Refute {
        #[arg(long)]
        n: u64,
    },
    /// Compare levels of K(p^k, p^w, 1) and of the solution of B_{p^w}(p^k).
    ExperimentLevels {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// A single w; all 1 <= w <= k by default.
        #[arg(long)]
        w: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = match err.downcast_ref::<cocyclic::Error>() {
                Some(cocyclic::Error::Resource(_)) => 3,
                _ => 2,
            };
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}

fn out(text: impl AsRef<str>) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_ref().as_bytes())?;
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Construct { n, t, a, family } => {
            let p = KParams::new(family.into(), n, t, a)?;
            let s = make_k(&p)?;
            out(SolutionDocument::from_params(&p, &s).to_json() + "\n")?;
            Ok(0)
        }
        Command::Verify { file } => {
            let s = SolutionDocument::read(&file)?.table()?;
            let r = s.verify();
            out(format!(
                "non_degenerate: {}\ninvolutive: {}\nbraid: {}\n",
                r.non_degenerate, r.involutive, r.braid
            ))?;
            Ok(if r.all_pass() { 0 } else { 1 })
        }
        Command::Retract { file, steps } => {
            let s = SolutionDocument::read(&file)?.table()?;
            let r = retract_times(&s, steps);
            let sizes = retraction_sizes(&s);
            let shown: Vec<String> = sizes
                .iter()
                .take(steps as usize + 1)
                .map(ToString::to_string)
                .collect();
            eprintln!("sizes: {}", shown.join(" "));
            out(SolutionDocument::from_table(&r, None).to_json() + "\n")?;
            Ok(0)
        }
        Command::Group { file } => {
            let s = SolutionDocument::read(&file)?.table()?;
            let g = permutation_group(&s)?;
            out(format!(
                "order: {}\ncyclic: {}\ntransitive: {}\nregular: {}\n",
                g.order(),
                g.is_cyclic(),
                g.is_transitive(),
                g.is_regular()
            ))?;
            Ok(0)
        }
        Command::Iso {
            file1,
            file2,
            method,
            cap,
        } => {
            let d1 = SolutionDocument::read(&file1)?;
            let d2 = SolutionDocument::read(&file2)?;
            match method {
                Method::Brute => {
                    let (s1, s2) = (d1.table()?, d2.table()?);
                    match IsoSearch::with_cap(cap).find(&s1, &s2)? {
                        Some(phi) => {
                            out(format!("{phi}\n"))?;
                            Ok(0)
                        }
                        None => {
                            out("non-isomorphic\n")?;
                            Ok(1)
                        }
                    }
                }
                Method::Formula => {
                    let v = isomorphic_k(&d1.params()?, &d2.params()?)?;
                    if !v.isomorphic {
                        out("non-isomorphic\n")?;
                        return Ok(1);
                    }
                    let mut text = format!("isomorphic (a ≡ a' mod {})", v.modulus);
                    if let Some(w) = v.witness {
                        text.push_str(&format!(", h = {}, z = {}", w.h, w.z));
                    }
                    out(text + "\n")?;
                    Ok(0)
                }
            }
        }
        Command::Classify { file } => {
            let s = SolutionDocument::read(&file)?.table()?;
            let inv = canonical_invariants(&s)?;
            out(format!("{inv}\nsocle index: {}\n", inv.socle_index()))?;
            Ok(0)
        }
        Command::Enumerate { n, format } => {
            let report = enumerate_all(n)?;
            match format {
                Format::Json => out(enumeration_json(&report)? + "\n")?,
                Format::Csv => {
                    let mut text = String::from("n,t,a,socle_index,level,family\n");
                    for c in &report.classes {
                        text.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            c.n,
                            c.t,
                            c.a,
                            c.socle_index(),
                            c.level(),
                            c.to_kparams()?.family()
                        ));
                    }
                    out(text)?;
                }
            }
            Ok(0)
        }
        Command::Count { n } => {
            let report = count_cocyclic(n)?;
            let mut text = format!("{}\nt,classes\n", report.total);
            for (t, c) in &report.per_t {
                text.push_str(&format!("{t},{c}\n"));
            }
            out(text)?;
            Ok(0)
        }
        Command::Table1 => {
            out(table1().to_csv())?;
            Ok(0)
        }
        Command::Oracle { n, allow_slow } => {
            let cap = match std::env::var(ORACLE_CAP_VAR) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .with_context(|| format!("{ORACLE_CAP_VAR} must be a positive integer"))?,
                Err(_) => DEFAULT_ORACLE_CAP,
            };
            let r = oracle_exhaustive_cyclic(n, OracleConfig { cap, allow_slow })?;
            let mut text = format!(
                "order: {n}\nsurvivors: {}\noracle classes: {}\nenumerated classes: {}\n",
                r.survivors,
                r.class_count(),
                r.enumeration.total
            );
            for (i, m) in r.matched.iter().enumerate() {
                match m {
                    Some(c) => text.push_str(&format!("class {i}: {c}\n")),
                    None => text.push_str(&format!("class {i}: unmatched\n")),
                }
            }
            text.push_str(&format!("agree: {}\n", r.agrees()));
            out(text)?;
            Ok(if r.agrees() { 0 } else { 1 })
        }
        Command::Refute { n } => match refute_rump(n) {
            Ok(r) => {
                let report = RefutationJson {
                    n: r.n,
                    socle_index: r.socle_index,
                    predicted: r.predicted,
                    actual: r.actual,
                    first: ClassJson::new(&r.first)?,
                    second: ClassJson::new(&r.second)?,
                    exhaustive_search_nodes: r.certificate.exhaustive_nodes,
                    congruence_modulus: r.certificate.congruence_modulus,
                    first_solution: SolutionDocument::from_table(&r.first_table, None),
                    second_solution: SolutionDocument::from_table(&r.second_table, None),
                };
                out(serde_json::to_string_pretty(&report)? + "\n")?;
                Ok(0)
            }
            Err(cocyclic::Error::NoCounterexample { .. }) => {
                let p = cocyclic::classify::rump_prediction(n)?;
                out(format!(
                    "no counterexample at this order: predicted {}, actual {}\n",
                    p.predicted,
                    count_cocyclic(n)?.total
                ))?;
                Ok(1)
            }
            Err(e) => Err(e.into()),
        },
        Command::ExperimentLevels { p, k, w } => {
            let ws: Vec<u32> = match w {
                Some(w) => vec![w],
                None => (1..=k).collect(),
            };
            if k == 0 {
                bail!("k must be positive");
            }
            let mut text = String::from("p,k,w,solution_level,brace_level,coincide\n");
            let fmt = |l: Option<u32>| l.map_or("none".to_string(), |l| l.to_string());
            for w in ws {
                let c = level_coincidence(p, k, w)?;
                text.push_str(&format!(
                    "{p},{k},{w},{},{},{}\n",
                    fmt(c.solution_level),
                    fmt(c.brace_level),
                    c.coincide()
                ));
            }
            out(text)?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct ClassJson {
    n: u64,
    t: u64,
    a: u64,
    socle_index: u64,
    level: u32,
    family: String,
}

impl ClassJson {
    fn new(c: &CocyclicInvariants) -> Result<Self> {
        Ok(ClassJson {
            n: c.n,
            t: c.t,
            a: c.a,
            socle_index: c.socle_index(),
            level: c.level(),
            family: c.to_kparams()?.family().name().to_string(),
        })
    }
}

#[derive(Serialize)]
struct EnumerationJson {
    n: u64,
    total: u64,
    per_level: std::collections::BTreeMap<u32, u64>,
    classes: Vec<ClassJson>,
}

fn enumeration_json(r: &cocyclic::classify::EnumerationReport) -> Result<String> {
    let doc = EnumerationJson {
        n: r.n,
        total: r.total,
        per_level: r.per_level.clone(),
        classes: r
            .classes
            .iter()
            .map(ClassJson::new)
            .collect::<Result<_>>()?,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

#[derive(Serialize)]
struct RefutationJson {
    n: u64,
    socle_index: u64,
    predicted: u64,
    actual: u64,
    first: ClassJson,
    second: ClassJson,
    exhaustive_search_nodes: Option<u64>,
    congruence_modulus: u64,
    first_solution: SolutionDocument,
    second_solution: SolutionDocument,
}

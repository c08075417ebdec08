use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewcode::automorphism::enumerate_automorphisms;
use skewcode::code::ConvCode;
use skewcode::descriptor::{self, BuildOptions, CodeDescriptor};
use skewcode::distance::{self, DEFAULT_NODE_CAP, DEFAULT_STATE_CAP};
use skewcode::golden::{self, Fixtures, Status};
use skewcode::parse;
use skewcode::polymat::{strong_equivalence, EquivalenceCaps};
use skewcode::ring::Ring;
use skewcode::{Error, Result};

#[derive(Parser)]
#[command(name = "skewcode", version, about = "Sigma-cyclic convolutional codes over A[z; sigma]")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Largest state space the distance search may visit.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP, global = true)]
    state_cap: u128,
    /// z-degree cap for unit inverses.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor x^n - 1 and list the primitive idempotents.
    Factor {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the automorphisms of F[x]/(x^n - 1).
    Automorphisms {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
    },
    /// Build a code from a descriptor file ("-" for stdin).
    Build {
        #[arg(long)]
        recipe: String,
    },
    /// Free distance of a descriptor's code.
    Distance {
        #[arg(long)]
        recipe: String,
        /// Also run the branch-and-bound oracle up to this message degree.
        #[arg(long)]
        brute: Option<usize>,
    },
    /// Generalized Singleton and Griesmer bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        /// Largest Forney index.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Strong equivalence of two descriptors' codes.
    Equivalence {
        #[arg(long)]
        recipe: String,
        #[arg(long)]
        other: String,
    },
    /// Re-run the published example values.
    VerifyPaper {
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        fixtures: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let r = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| s = t)
    };
    r.map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Ok(s)
}

fn load(path: &str) -> Result<CodeDescriptor> {
    CodeDescriptor::from_json(&read_input(path)?)
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn ring(field: &str, n: usize) -> Result<Ring> {
    Ring::new(Arc::new(parse::field(field)?), n)
}

fn factor(field: &str, n: usize, fmt: Format) -> Result<String> {
    let r = ring(field, n)?;
    let f = r.field();
    let classes = r.degree_classes();
    if fmt == Format::Table {
        let mut rows = vec![vec!["k".into(), "pi_k".into(), "kappa_k".into(), "eps_k".into()]];
        for k in 1..=r.r() {
            rows.push(vec![
                k.to_string(),
                r.factor(k)?.format("x", f),
                r.kappa(k)?.to_string(),
                r.format(r.idempotent(k)?),
            ]);
        }
        let mut out = format!("x^{n}-1 over {} has {} factors\n", f.literal(), r.r());
        out.push_str(&table(&rows));
        for (t, c) in classes.iter().enumerate() {
            out.push_str(&format!("R^({}) = {:?}\n", t + 1, c));
        }
        return Ok(out);
    }
    let factors: Vec<Value> = (1..=r.r())
        .map(|k| {
            Ok(json!({
                "index": k,
                "factor": r.factor(k)?.format("x", f),
                "degree": r.kappa(k)?,
                "idempotent": r.format(r.idempotent(k)?),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(pretty(&json!({"field": f.literal(), "n": n, "r": r.r(), "factors": factors, "degree_classes": classes})))
}

fn automorphisms(field: &str, n: usize, fmt: Format) -> Result<String> {
    let r = Arc::new(ring(field, n)?);
    let all = enumerate_automorphisms(&r);
    let entry = |a: &skewcode::automorphism::Automorphism| -> Result<(String, String, usize, Vec<usize>)> {
        let orders = (1..=r.r()).map(|l| a.l_order(l)).collect::<Result<Vec<_>>>()?;
        Ok((r.format(a.image()), a.perm_string(), a.order(), orders))
    };
    let items = all.iter().map(entry).collect::<Result<Vec<_>>>()?;
    if fmt == Format::Table {
        let mut rows = vec![vec!["sigma(x)".into(), "Pi".into(), "order".into(), "o_l".into()]];
        for (img, perm, ord, o) in &items {
            rows.push(vec![img.clone(), perm.clone(), ord.to_string(), format!("{o:?}")]);
        }
        return Ok(format!("{} automorphisms\n{}", all.len(), table(&rows)));
    }
    let list: Vec<Value> = items
        .into_iter()
        .map(|(img, perm, ord, o)| json!({"image": img, "perm": perm, "order": ord, "l_orders": o}))
        .collect();
    Ok(pretty(&json!({"count": all.len(), "automorphisms": list})))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

fn build_table(d: &CodeDescriptor) -> String {
    let r = d.result.as_ref().expect("built");
    let mut out = format!(
        "code (n,k,delta) = ({},{},{})\nforney {:?}\nsupport {:?}\ngenerator {}\n",
        r.n, r.k, r.delta, r.forney, r.support, r.generator
    );
    out.push_str(&table(&r.matrix.entries));
    if let Some(dist) = &r.distance {
        out.push_str(&format!(
            "distance {} (singleton {}, griesmer {}, attains {})\n",
            dist.distance, dist.singleton, dist.griesmer, dist.attains
        ));
    }
    if let Some(c) = &r.complement {
        out.push_str(&format!("complement {c}\n"));
    }
    out
}

fn code_of(d: &CodeDescriptor) -> Result<ConvCode> {
    let skew = d.skew_ring()?;
    ConvCode::from_reduced(&skew, &d.generator_poly(&skew)?)
}

fn run(cli: &Cli) -> Result<(String, u8)> {
    let opts = BuildOptions { state_cap: cli.state_cap, degree_cap: cli.degree_cap };
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Factor { field, n } => Ok((factor(field, *n, fmt)?, 0)),
        Cmd::Automorphisms { field, n } => Ok((automorphisms(field, *n, fmt)?, 0)),
        Cmd::Build { recipe } => {
            let out = descriptor::build(&load(recipe)?, opts)?;
            let bad = out.mismatches();
            let text = if fmt == Format::Table { build_table(&out) } else { out.to_json() + "\n" };
            for m in &bad {
                eprintln!("mismatch: {m}");
            }
            Ok((text, if bad.is_empty() { 0 } else { 1 }))
        }
        Cmd::Distance { recipe, brute } => {
            let code = code_of(&load(recipe)?)?;
            let r = distance::free_distance(code.generator(), cli.state_cap)?;
            let oracle =
                brute.map(|d| distance::free_distance_bruteforce(code.generator(), d, DEFAULT_NODE_CAP)).transpose()?;
            let f = code.generator().field();
            let witness: Vec<String> = r.witness.iter().map(|p| p.format("z", f)).collect();
            if fmt == Format::Table {
                let mut s = format!(
                    "distance {}\nsingleton {}\ngriesmer {}\nattains {}\nwitness [{}]\n",
                    r.distance,
                    r.singleton,
                    r.griesmer,
                    r.attains,
                    witness.join(", ")
                );
                if let Some(b) = oracle {
                    s.push_str(&format!("bruteforce {b}\n"));
                }
                return Ok((s, 0));
            }
            let mut v = json!({
                "distance": r.distance, "singleton": r.singleton, "griesmer": r.griesmer,
                "attains": r.attains, "witness": witness,
            });
            if let Some(b) = oracle {
                v["bruteforce"] = json!(b);
            }
            Ok((pretty(&v), 0))
        }
        Cmd::Bounds { n, k, delta, m, q } => {
            let s = distance::singleton_bound(*n, *k, *delta)?;
            let g = match (m, q) {
                (Some(m), Some(q)) => Some(distance::griesmer_bound(*n, *k, *delta, *m, *q)?),
                (None, None) => None,
                _ => return Err(Error::BadParameters("griesmer needs both --m and --q".into())),
            };
            if fmt == Format::Table {
                let mut out = format!("singleton {s}\n");
                if let Some(g) = g {
                    out.push_str(&format!("griesmer {g}\n"));
                }
                return Ok((out, 0));
            }
            Ok((pretty(&json!({"singleton": s, "griesmer": g})), 0))
        }
        Cmd::Equivalence { recipe, other } => {
            let a = code_of(&load(recipe)?)?;
            let b = code_of(&load(other)?)?;
            let w = strong_equivalence(a.generator(), b.generator(), EquivalenceCaps::default())?;
            let f = a.generator().field().clone();
            let v = match &w {
                Some(eq) => json!({
                    "equivalent": true,
                    "perm": eq.perm,
                    "scale": eq.scale.iter().map(|c| f.format(*c)).collect::<Vec<_>>(),
                }),
                None => json!({"equivalent": false}),
            };
            if fmt == Format::Table {
                return Ok((
                    match w {
                        Some(eq) => format!("equivalent: perm {:?}, scale {}\n", eq.perm, v["scale"]),
                        None => "not equivalent\n".into(),
                    },
                    0,
                ));
            }
            Ok((pretty(&v), 0))
        }
        Cmd::VerifyPaper { only, fixtures } => {
            let fx = match fixtures {
                Some(p) => Fixtures::from_json(&read_input(p)?)?,
                None => Fixtures::embedded(),
            };
            let outcomes = golden::run(&fx, only.as_deref(), opts)?;
            let failed = outcomes.iter().filter(|o| o.failed()).count();
            let errata = outcomes.iter().filter(|o| matches!(o.status, Status::Erratum(_))).count();
            let passed = outcomes.len() - failed - errata;
            let text = if fmt == Format::Table {
                let mut rows = Vec::new();
                for o in &outcomes {
                    let (tag, detail) = match &o.status {
                        Status::Pass => ("PASS", String::new()),
                        Status::Fail(m) => ("FAIL", m.clone()),
                        Status::Erratum(m) => ("ERRATUM", m.clone()),
                    };
                    rows.push(vec![tag.to_string(), o.group.clone(), o.name.clone(), detail]);
                }
                format!("{}{passed} passed, {failed} failed, {errata} errata\n", table(&rows))
            } else {
                pretty(&json!({"passed": passed, "failed": failed, "errata": errata, "checks": outcomes}))
            };
            Ok((text, if failed == 0 { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

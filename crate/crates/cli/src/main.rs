use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ln4_core::autgrp::{self, image_map, omega_hat, tau_hat, Eigenspace};
use ln4_core::axioms::{self, CheckReport, ImageMap};
use ln4_core::conformal::{central_terms, GenId};
use ln4_core::loops::build_loop;
use ln4_core::modes::{self, export_table, verify_table, ExportFormat};
use ln4_core::scalars::set_default_order;
use ln4_core::{AutSpec, ConformalAlgebra, Error, GammaParam, Mat2, TableKind};

#[derive(Parser)]
#[command(name = "ln4", version, about = "Exact computations in the large N=4 conformal superalgebra")]
struct Cli {
    /// Order N of the scalar field Q(zeta_N).
    #[arg(long, global = true, env = "LN4_CYCLOTOMIC_ORDER", default_value_t = 4)]
    cyclotomic_order: u32,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, env = "LN4_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Axiom and homomorphism checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Automorphism group operations.
    #[command(subcommand)]
    Aut(AutCmd),
    /// Twisted loop algebras.
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Mode algebra tables.
    #[command(subcommand)]
    Modes(ModesCmd),
    /// Conformal algebra data.
    #[command(subcommand)]
    Conformal(ConformalCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Skew-symmetry and Jacobi over all generator pairs and triples.
    Axioms {
        #[arg(long, default_value = "centreless")]
        gamma: String,
    },
    /// Checks that an automorphism respects the lambda-bracket.
    Homomorphism {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value = "centreless")]
        gamma: String,
        /// How to extend to the central term: auto, none, hat or derive.
        #[arg(long, default_value = "auto")]
        lift: String,
    },
    /// Primary-vector identities for every generator.
    Primary,
}

#[derive(Args)]
struct SpecArg {
    /// Automorphism: omega, tau(f), theta(A,B), products with '*', or JSON.
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum AutCmd {
    /// Images of the generators; the `images` field feeds `aut recognize`.
    Apply(SpecArg),
    /// Normal form of left ∘ right.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Order of the automorphism, if at most --max.
    Order {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 12)]
        max: u32,
    },
    /// Recovers the normal form from generator images (JSON file, '-' for stdin).
    Recognize {
        #[arg(long)]
        images: PathBuf,
    },
    /// Eigenspaces of an automorphism of order m on the generators.
    Eigenspaces {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        order: u32,
    },
    /// Random automorphisms in normal form.
    Random {
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum LoopCmd {
    /// Graded generators of the twisted loop algebra.
    Build {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 1)]
        window: i64,
    },
}

#[derive(Args)]
struct TableArgs {
    /// untwisted-centreless, untwisted-gamma or twisted-omega.
    #[arg(long)]
    which: String,
    #[arg(long, default_value_t = 1)]
    window: u32,
    #[arg(long, default_value = "centreless")]
    gamma: String,
}

#[derive(Subcommand)]
enum ModesCmd {
    /// Verifies the relation table on a window and prints it.
    Table {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value = "json")]
        format: String,
        /// Also fail on lines flagged as suspect.
        #[arg(long)]
        strict: bool,
    },
    /// Super-Jacobi identity and antisymmetry on a window.
    Jacobi {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Writes the windowed table without verifying it.
    Export {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value = "latex")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConformalCmd {
    /// Central terms of the lambda-bracket, optionally re-derived from the mode table.
    CentralTerms {
        #[arg(long)]
        derive: bool,
    },
}

enum Failed {
    Usage(String),
    Check,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failed>;

fn emit(v: &Value) {
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn report(label: &str, r: &CheckReport) -> Outcome {
    emit(&serde_json::to_value(r).expect("json"));
    if r.passed {
        eprintln!("{label}: PASS ({} checks)", r.checked);
        Ok(())
    } else {
        let w = r.first_witness().map(|w| w.join(", ")).unwrap_or_default();
        eprintln!("{label}: FAIL ({} of {} checks), witness ({w})", r.failures.len(), r.checked);
        Err(Failed::Check)
    }
}

fn gamma_alg(gamma: &str) -> Result<ConformalAlgebra, Failed> {
    Ok(ConformalAlgebra::new(gamma.parse::<GammaParam>()?))
}

fn parse_spec(s: &str) -> Result<AutSpec, Failed> {
    Ok(s.parse::<AutSpec>()?)
}

fn lifted_images(spec: &AutSpec, alg: &ConformalAlgebra, lift: &str) -> Result<ImageMap, Failed> {
    let centreless = alg.gamma().as_rational().is_none();
    let lift = match lift {
        "auto" if centreless => "none",
        "auto" => "hat",
        other => other,
    };
    match lift {
        "none" => Ok(image_map(spec)),
        "hat" if *spec == AutSpec::omega() => Ok(omega_hat()),
        "hat" if spec.a == Mat2::identity() && spec.b == Mat2::identity() && !spec.eps => Ok(tau_hat(&spec.f)),
        "hat" => Err(Failed::Usage("a hat lift is only defined for omega and tau(f)".into())),
        "derive" => autgrp::derive_central_lift(alg, &image_map(spec)).ok_or_else(|| {
            eprintln!("no constant central correction makes this map a homomorphism");
            Failed::Check
        }),
        other => Err(Failed::Usage(format!("unknown lift {other:?}; expected auto, none, hat or derive"))),
    }
}

fn images_json(m: &ImageMap) -> Value {
    let map: serde_json::Map<String, Value> = GenId::ALL.iter().map(|g| (g.to_string(), Value::String(m.image(*g).to_string()))).collect();
    Value::Object(map)
}

fn eigen_json(spaces: &[Eigenspace]) -> Value {
    spaces
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "eigenvalue": s.eigenvalue.to_string(),
                "dim": s.basis.len(),
                "basis": s.basis.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn table_setup(t: &TableArgs) -> Result<(TableKind, GammaParam), Failed> {
    Ok((t.which.parse()?, t.gamma.parse()?))
}

fn run(cli: Cli) -> Outcome {
    let jobs = cli.jobs;
    match cli.command {
        Command::Verify(VerifyCmd::Axioms { gamma }) => {
            let alg = gamma_alg(&gamma)?;
            report("axioms", &axioms::axiom_sweep(&alg, jobs))
        }
        Command::Verify(VerifyCmd::Homomorphism { spec, gamma, lift }) => {
            let alg = gamma_alg(&gamma)?;
            let s = parse_spec(&spec)?;
            let phi = lifted_images(&s, &alg, &lift)?;
            report("homomorphism", &axioms::check_homomorphism(&alg, &phi)?)
        }
        Command::Verify(VerifyCmd::Primary) => {
            let reports: Vec<CheckReport> =
                GenId::V.iter().map(|g| axioms::check_primary(*g)).collect::<Result<_, _>>()?;
            report("primary", &CheckReport::merge(reports))
        }
        Command::Aut(AutCmd::Apply(a)) => {
            let m = image_map(&parse_spec(&a.spec)?);
            emit(&json!({"display": images_json(&m), "images": m}));
            Ok(())
        }
        Command::Aut(AutCmd::Compose { left, right }) => {
            let s = autgrp::compose(&parse_spec(&left)?, &parse_spec(&right)?);
            emit(&serde_json::to_value(&s).expect("json"));
            Ok(())
        }
        Command::Aut(AutCmd::Order { spec, max }) => {
            let order = autgrp::order_of(&parse_spec(&spec.spec)?, max);
            emit(&json!({ "order": order, "max": max }));
            match order {
                Some(k) => eprintln!("order {k}"),
                None => eprintln!("order exceeds {max} or is infinite"),
            }
            Ok(())
        }
        Command::Aut(AutCmd::Recognize { images }) => {
            let text = if images.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| Failed::Usage(e.to_string()))?
            } else {
                fs::read_to_string(&images).map_err(|e| Failed::Usage(format!("{}: {e}", images.display())))?
            };
            let mut doc: Value = serde_json::from_str(&text).map_err(|e| Failed::Usage(e.to_string()))?;
            if let Some(inner) = doc.get_mut("images") {
                doc = inner.take();
            }
            let map: ImageMap = serde_json::from_value(doc).map_err(|e| Failed::Usage(e.to_string()))?;
            match autgrp::recognize(&map) {
                Ok(s) => {
                    emit(&serde_json::to_value(&s).expect("json"));
                    Ok(())
                }
                Err(Error::NotAnAutomorphism(why)) => {
                    eprintln!("not an automorphism: {why}");
                    Err(Failed::Check)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Aut(AutCmd::Eigenspaces { spec, order }) => {
            let spaces = autgrp::eigenspaces(&parse_spec(&spec.spec)?, order)?;
            emit(&eigen_json(&spaces));
            Ok(())
        }
        Command::Aut(AutCmd::Random { count }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let specs: Vec<AutSpec> = (0..count).map(|_| AutSpec::random(&mut rng)).collect();
            emit(&serde_json::to_value(&specs).expect("json"));
            Ok(())
        }
        Command::Loop(LoopCmd::Build { sigma, order, window }) => {
            let lp = build_loop(&parse_spec(&sigma)?, order)?;
            let basis: Vec<Value> = lp
                .basis_window(window)
                .iter()
                .map(|b| json!({"eigenspace": b.eigenspace, "exponent": b.exponent, "elem": b.elem.to_string()}))
                .collect();
            emit(&json!({
                "sigma": lp.sigma,
                "order": lp.m,
                "eigenspaces": eigen_json(&lp.eigenbases),
                "window": window,
                "basis": basis,
            }));
            let dims: Vec<String> = lp.eigenbases.iter().map(|s| format!("{}:{}", s.index, s.basis.len())).collect();
            eprintln!("eigenspace dimensions {}", dims.join(" "));
            Ok(())
        }
        Command::Modes(ModesCmd::Table { table, format, strict }) => {
            let (kind, gamma) = table_setup(&table)?;
            let fmt: ExportFormat = format.parse()?;
            let rep = verify_table(kind, table.window, &gamma, jobs)?;
            let doc = export_table(kind, table.window, &gamma, &format)?;
            if fmt == ExportFormat::Json {
                let parsed: Value = serde_json::from_str(&doc).expect("json");
                emit(&json!({"report": rep, "table": parsed}));
            } else {
                let _ = io::stdout().lock().write_all(doc.as_bytes());
            }
            for m in rep.first_per_line() {
                let tag = if m.suspect { " (suspect)" } else { "" };
                eprintln!(
                    "line {}{tag}: [{}, {}] printed {} computed {}",
                    m.line, m.left, m.right, m.printed, m.computed
                );
            }
            for u in &rep.uncovered {
                eprintln!("no rule for {u}");
            }
            let ok = if strict { rep.passed } else { rep.failures_confined_to_suspects() };
            eprintln!(
                "{kind} window {}: {} ({} brackets, {} mismatches)",
                table.window,
                if ok { "PASS" } else { "FAIL" },
                rep.checked,
                rep.failures.len()
            );
            if ok {
                Ok(())
            } else {
                Err(Failed::Check)
            }
        }
        Command::Modes(ModesCmd::Jacobi { table }) => {
            let (kind, gamma) = table_setup(&table)?;
            report("jacobi", &modes::super_jacobi_window(kind, table.window, &gamma, jobs)?)
        }
        Command::Modes(ModesCmd::Export { table, format, output }) => {
            let (kind, gamma) = table_setup(&table)?;
            let doc = export_table(kind, table.window, &gamma, &format)?;
            match output {
                Some(p) => {
                    fs::write(&p, doc).map_err(|e| Failed::Usage(format!("{}: {e}", p.display())))?;
                    eprintln!("wrote {}", p.display());
                }
                None => {
                    let _ = io::stdout().lock().write_all(doc.as_bytes());
                }
            }
            Ok(())
        }
        Command::Conformal(ConformalCmd::CentralTerms { derive }) => {
            let shipped = central_terms();
            if !derive {
                emit(&serde_json::to_value(shipped).expect("json"));
                return Ok(());
            }
            let shipped: Vec<_> = shipped.iter().map(|t| t.canonical()).collect();
            let derived: Vec<_> = modes::derive_central_terms()?.iter().map(|t| t.canonical()).collect();
            let missing: Vec<_> = derived.iter().filter(|t| !shipped.contains(t)).collect();
            let extra: Vec<_> = shipped.iter().filter(|t| !derived.contains(t)).collect();
            let agree = missing.is_empty() && extra.is_empty();
            emit(&json!({"agree": agree, "derived": derived, "not_shipped": missing, "not_derived": extra}));
            eprintln!("central terms: {} derived, {}", derived.len(), if agree { "PASS" } else { "FAIL" });
            if agree {
                Ok(())
            } else {
                Err(Failed::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.cyclotomic_order == 0 || cli.cyclotomic_order % 4 != 0 {
        eprintln!("error: {}", Error::MissingImaginaryUnit(cli.cyclotomic_order));
        return ExitCode::from(2);
    }
    set_default_order(cli.cyclotomic_order);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed::Check) => ExitCode::from(1),
        Err(Failed::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

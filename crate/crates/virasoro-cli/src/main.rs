//! `virasoro`: exact computations in Verma modules over the Virasoro
//! algebra and their tensor products with intermediate series modules.

mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;

use virasoro::parse::{parse_env_elem, parse_tensor_state};
use virasoro::phi::{phi_eval, phi_poly, phi_symbolic};
use virasoro::rat::Rat;
use virasoro::tensor::{
    canonicalize, classify_isomorphism, simplicity, span_dimension, Filtration, ModuleParams,
    TensorModule, Verdict, Window,
};
use virasoro::verma::{
    maximal_submodule_generators, singular_vectors_at_level, GenStatus, HighestWeight,
    DEFAULT_LEVEL_CAP,
};
use virasoro::Error;

use report::{leaf, obj, Format, Report};

#[derive(Parser)]
#[command(
    name = "virasoro",
    version,
    about = "Exact Verma module and tensor weight module computations"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular vectors of M(c, h) at one level.
    Singular {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        #[arg(long)]
        level: u32,
    },
    /// Generators of the maximal proper submodule of M(c, h).
    Gens {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        /// Level cap; defaults to VIRASORO_LEVEL_CAP or 12.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// The phi functional of an element of U(Vir-).
    Phi {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta: Rat,
        /// Evaluate at one integer n.
        #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
        n: Option<i64>,
        /// Keep n, alpha, beta symbolic as n, a, b.
        #[arg(long)]
        symbolic: bool,
        /// Element in the d(-k) grammar, e.g. "3*d(-2)^2 + 5*d(-4)".
        #[arg(long)]
        elem: String,
    },
    /// Simplicity analysis of V(c, h) tensored with V'(alpha, beta).
    Simplicity {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta: Rat,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// The same analysis presented as the submodule chain.
    Filtration {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta: Rat,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Apply a generator d(m) to a tensor state read from a file.
    Act {
        /// Generator index m (any integer; 0 is the weight operator).
        #[arg(long, allow_hyphen_values = true)]
        gen: i64,
        /// File holding a state in the "c*d(-k)...@v(j) + ..." grammar.
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta: Rat,
        #[arg(long)]
        cap: Option<u32>,
        /// Verma level window bound; defaults to the cap.
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long, default_value_t = -40, allow_hyphen_values = true)]
        exp_min: i64,
        #[arg(long, default_value_t = 40, allow_hyphen_values = true)]
        exp_max: i64,
    },
    /// Decide isomorphism of two tensor modules from their parameters.
    Classify {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c1: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h1: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha1: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta1: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c2: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h2: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha2: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta2: Rat,
    },
    /// Casimir span probe on one tensor vacuum vector.
    CasimirProbe {
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        c: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        h: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        beta: Rat,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run the built-in golden checks.
    Selftest,
}

enum CliError {
    Usage(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok((report, math_caveat)) => {
            println!("{}", report.emit(cli.format, start.elapsed().as_millis()));
            if math_caveat {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse::<Rat>()
        .map_err(|_| format!("'{s}' is not a rational (use p or p/q)"))
}

fn resolve_cap(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(c) = flag {
        if c == 0 {
            return Err(CliError::Usage("--cap must be at least 1".into()));
        }
        return Ok(c);
    }
    match std::env::var("VIRASORO_LEVEL_CAP") {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|c| *c >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "VIRASORO_LEVEL_CAP value '{s}' is not a positive integer"
                ))
            }),
        Err(_) => Ok(DEFAULT_LEVEL_CAP),
    }
}

/// Maps a library parse failure to a usage error naming the offending token.
fn parse_failure(what: &str, input: &str, err: Error) -> CliError {
    match err {
        Error::Parse { position, message } => {
            let token: String = input.chars().skip(position).take(12).collect();
            let token = if token.is_empty() {
                "end of input".to_string()
            } else {
                format!("'{token}'")
            };
            CliError::Usage(format!(
                "{what} at position {position}: {message}; offending token {token}"
            ))
        }
        other => CliError::Usage(format!("{what}: {other}")),
    }
}

fn params_echo(
    raw_alpha: &Rat,
    raw_beta: &Rat,
    params: &ModuleParams,
) -> Vec<(&'static str, Value)> {
    vec![
        ("alpha", leaf(&params.alpha)),
        ("beta", leaf(&params.beta)),
        ("raw_alpha", leaf(raw_alpha)),
        ("raw_beta", leaf(raw_beta)),
    ]
}

fn filtration_value(f: &Filtration) -> Value {
    match f {
        Filtration::Empty => Value::Array(Vec::new()),
        Filtration::Infinite => leaf("infinite"),
        Filtration::Finite(steps) => Value::Array(
            steps
                .iter()
                .map(|s| {
                    obj(vec![
                        ("index", Value::from(s.index)),
                        ("quotient", leaf(&s.quotient)),
                    ])
                })
                .collect(),
        ),
    }
}

fn run(command: Command) -> Result<(Report, bool), CliError> {
    match command {
        Command::Singular { c, h, level } => {
            let w = HighestWeight::new(c.clone(), h.clone());
            let vecs = singular_vectors_at_level(&w, level);
            let report = Report {
                command: "singular",
                parameters: obj(vec![
                    ("c", leaf(&c)),
                    ("h", leaf(&h)),
                    ("level", Value::from(level)),
                ]),
                result: obj(vec![
                    ("count", Value::from(vecs.len())),
                    (
                        "vectors",
                        Value::Array(vecs.iter().map(|v| leaf(v.to_env())).collect()),
                    ),
                ]),
                caveats: Vec::new(),
            };
            Ok((report, false))
        }
        Command::Gens { c, h, cap } => {
            let cap = resolve_cap(cap)?;
            let w = HighestWeight::new(c.clone(), h.clone());
            let gens = maximal_submodule_generators(&w, cap);
            let mut caveats = Vec::new();
            match gens.status {
                GenStatus::VermaSimple => caveats.push(format!(
                    "no singular vectors at levels <= {}; more could exist above the cap",
                    gens.scanned_to
                )),
                GenStatus::SingleGenerator => caveats.push(format!(
                    "one generator at levels <= {}; a second could exist above the cap",
                    gens.scanned_to
                )),
                _ => {}
            }
            let report = Report {
                command: "gens",
                parameters: obj(vec![
                    ("c", leaf(&c)),
                    ("h", leaf(&h)),
                    ("cap", Value::from(cap)),
                ]),
                result: obj(vec![
                    ("status", leaf(gens.status)),
                    ("scanned_to", Value::from(gens.scanned_to)),
                    (
                        "generators",
                        Value::Array(
                            gens.generators()
                                .iter()
                                .map(|(l, q)| {
                                    obj(vec![("level", Value::from(*l)), ("element", leaf(q))])
                                })
                                .collect(),
                        ),
                    ),
                ]),
                caveats,
            };
            Ok((report, false))
        }
        Command::Phi {
            alpha,
            beta,
            n,
            symbolic,
            elem,
        } => {
            let e = parse_env_elem(&elem)
                .map_err(|err| parse_failure("cannot parse --elem", &elem, err))?;
            let params = ModuleParams::raw(alpha.clone(), beta.clone());
            let mut parameters = vec![("alpha", leaf(&alpha)), ("beta", leaf(&beta))];
            if let Some(n) = n {
                parameters.push(("n", Value::from(n)));
            }
            parameters.push(("elem", leaf(&e)));
            let result = if symbolic {
                obj(vec![("symbolic", leaf(phi_symbolic(&e)))])
            } else if let Some(n) = n {
                obj(vec![("value", leaf(phi_eval(&params, n, &e)))])
            } else {
                obj(vec![("polynomial_in_n", leaf(phi_poly(&params, &e)))])
            };
            let report = Report {
                command: "phi",
                parameters: obj(parameters),
                result,
                caveats: Vec::new(),
            };
            Ok((report, false))
        }
        Command::Simplicity {
            c,
            h,
            alpha,
            beta,
            cap,
        } => simplicity_report("simplicity", c, h, alpha, beta, cap, false),
        Command::Filtration {
            c,
            h,
            alpha,
            beta,
            cap,
        } => simplicity_report("filtration", c, h, alpha, beta, cap, true),
        Command::Act {
            gen,
            state,
            c,
            h,
            alpha,
            beta,
            cap,
            max_level,
            exp_min,
            exp_max,
        } => {
            let cap = resolve_cap(cap)?;
            let input = std::fs::read_to_string(&state).map_err(|e| {
                CliError::Usage(format!("cannot read state file {}: {e}", state.display()))
            })?;
            let raw = parse_tensor_state(input.trim())
                .map_err(|err| parse_failure("cannot parse state", input.trim(), err))?;
            let params = ModuleParams::raw(alpha.clone(), beta.clone());
            let canon = params.canonicalized();
            let window = Window::new(max_level.unwrap_or(cap), exp_min, exp_max);
            let mut parameters = vec![
                ("gen", Value::from(gen)),
                ("state", leaf(state.display())),
                ("c", leaf(&c)),
                ("h", leaf(&h)),
            ];
            parameters.extend(params_echo(&alpha, &beta, &canon));
            parameters.push(("cap", Value::from(cap)));
            parameters.push(("max_level", Value::from(window.max_level)));
            parameters.push(("exp_min", Value::from(window.exp_min)));
            parameters.push(("exp_max", Value::from(window.exp_max)));
            let outcome = (|| -> Result<(Value, Value), Error> {
                let module = TensorModule::new(
                    HighestWeight::new(c.clone(), h.clone()),
                    params,
                    cap,
                    window,
                )?;
                let v = module.vector(raw.clone())?;
                let out = module.apply(gen, &v)?;
                Ok((leaf(&v), leaf(&out)))
            })();
            let (result, caveats, math_caveat) = match outcome {
                Ok((input_v, output_v)) => (
                    obj(vec![("input", input_v), ("output", output_v)]),
                    Vec::new(),
                    false,
                ),
                Err(e) => (
                    obj(vec![("input", Value::Null), ("output", Value::Null)]),
                    vec![e.to_string()],
                    true,
                ),
            };
            let report = Report {
                command: "act",
                parameters: obj(parameters),
                result,
                caveats,
            };
            Ok((report, math_caveat))
        }
        Command::Classify {
            c1,
            h1,
            alpha1,
            beta1,
            c2,
            h2,
            alpha2,
            beta2,
        } => {
            let first = (
                HighestWeight::new(c1.clone(), h1.clone()),
                canonicalize(&alpha1, &beta1),
            );
            let second = (
                HighestWeight::new(c2.clone(), h2.clone()),
                canonicalize(&alpha2, &beta2),
            );
            let iso = classify_isomorphism(&first, &second);
            let tuple = |w: &HighestWeight, p: &ModuleParams| {
                obj(vec![
                    ("c", leaf(&w.c)),
                    ("h", leaf(&w.h)),
                    ("alpha", leaf(&p.alpha)),
                    ("beta", leaf(&p.beta)),
                ])
            };
            let report = Report {
                command: "classify",
                parameters: obj(vec![
                    ("first", tuple(&first.0, &first.1)),
                    ("second", tuple(&second.0, &second.1)),
                ]),
                result: obj(vec![("isomorphic", Value::Bool(iso))]),
                caveats: Vec::new(),
            };
            Ok((report, false))
        }
        Command::CasimirProbe {
            c,
            h,
            alpha,
            beta,
            j,
            max_n,
            cap,
        } => {
            let cap = resolve_cap(cap)?;
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            let params = ModuleParams::raw(alpha.clone(), beta.clone());
            let canon = params.canonicalized();
            let reach = max_n as i64 + 1;
            let window = Window::new(max_n + 1, j - reach, j + reach);
            let mut parameters = vec![("c", leaf(&c)), ("h", leaf(&h))];
            parameters.extend(params_echo(&alpha, &beta, &canon));
            parameters.push(("j", Value::from(j)));
            parameters.push(("max_n", Value::from(max_n)));
            parameters.push(("cap", Value::from(cap)));
            let outcome = (|| -> Result<(Value, Vec<Value>), Error> {
                let module = TensorModule::new(
                    HighestWeight::new(c.clone(), h.clone()),
                    params,
                    cap,
                    window,
                )?;
                let w = module.vacuum(j)?;
                let mut probes = Vec::new();
                let mut images = Vec::new();
                for k in 1..=max_n {
                    let im = module.casimir_apply(k, &w)?;
                    images.push(im.clone());
                    probes.push(obj(vec![
                        ("k", Value::from(k)),
                        ("image", leaf(&im)),
                        ("span_dimension", Value::from(span_dimension(&images))),
                    ]));
                }
                Ok((leaf(&w), probes))
            })();
            let (result, caveats, math_caveat) = match outcome {
                Ok((vacuum, probes)) => (
                    obj(vec![("vacuum", vacuum), ("probes", Value::Array(probes))]),
                    Vec::new(),
                    false,
                ),
                Err(e) => (
                    obj(vec![("vacuum", Value::Null), ("probes", Value::Null)]),
                    vec![e.to_string()],
                    true,
                ),
            };
            let report = Report {
                command: "casimir-probe",
                parameters: obj(parameters),
                result,
                caveats,
            };
            Ok((report, math_caveat))
        }
        Command::Selftest => {
            let (payload, all_passed) = selftest::run();
            let report = Report {
                command: "selftest",
                parameters: obj(Vec::new()),
                result: payload,
                caveats: Vec::new(),
            };
            Ok((report, !all_passed))
        }
    }
}

fn simplicity_report(
    command: &'static str,
    c: Rat,
    h: Rat,
    alpha: Rat,
    beta: Rat,
    cap: Option<u32>,
    chain_first: bool,
) -> Result<(Report, bool), CliError> {
    let cap = resolve_cap(cap)?;
    let w = HighestWeight::new(c.clone(), h.clone());
    let params = canonicalize(&alpha, &beta);
    let rep = simplicity(&w, &params, cap)
        .map_err(|e| CliError::Usage(format!("analysis failed: {e}")))?;
    let mut parameters = vec![("c", leaf(&c)), ("h", leaf(&h))];
    parameters.extend(params_echo(&alpha, &beta, &params));
    parameters.push(("cap", Value::from(cap)));
    let phi_roots = match &rep.phi_roots {
        Some(set) => leaf(set),
        None => Value::Null,
    };
    let minimal = match rep.minimal_submodule_index {
        Some(n) => Value::from(n),
        None => Value::Null,
    };
    let mut entries = vec![("verdict", leaf(rep.verdict))];
    if chain_first {
        entries.push(("filtration", filtration_value(&rep.filtration)));
        entries.push(("minimal_submodule_index", minimal));
        entries.push(("phi_roots", phi_roots));
    } else {
        entries.push(("phi_roots", phi_roots));
        entries.push(("minimal_submodule_index", minimal));
        entries.push(("filtration", filtration_value(&rep.filtration)));
    }
    entries.push(("generator_status", leaf(rep.gen_status)));
    entries.push(("scanned_to", Value::from(rep.scanned_to)));
    let math_caveat = rep.verdict == Verdict::Undetermined;
    let report = Report {
        command,
        parameters: obj(parameters),
        result: obj(entries),
        caveats: rep.caveats,
    };
    Ok((report, math_caveat))
}

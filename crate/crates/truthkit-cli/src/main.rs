use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};
use truthkit::dgm::{dgm_satisfies, factor_through_quotient, path_category, quotient_category, Equation, Graph};
use truthkit::fibered::{run_suite, SuiteConfig};
use truthkit::fol::{
    dataset_morphism_check, dataset_to_structure, frames_to_structure, structure_to_dataset, validate_structure,
};
use truthkit::io::{
    self, equation_json, equations_from_json, frames_from_json, to_value, CategoryJson, ClassificationJson, DatasetFunctorJson,
    DatasetJson, DiagramJson, EquationJson, FrameJson, GraphJson, LogicJson, StructureJson, TheoryJson, TypeMapJson,
};
use truthkit::theory::{closure_enumerate, dir_flow, entails, inv_flow, Sequent};
use truthkit::truth::{extent, intent, intent_enumerate, join_logic, nat_logic, satisfies, sum_normal_instances};
use truthkit::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "truthkit", version, about = "Classifications, theories, fibered laws, diagrams and FOL structures")]
struct Cli {
    /// Indented JSON instead of one line.
    #[arg(long, global = true)]
    pretty: bool,
    /// Print wall time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Wrap the result as {"verb", "status", "result", "wall_ms"}.
    #[arg(long, global = true)]
    report: bool,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Semantic closure of a theory, every entailed sequent listed.
    Close {
        #[arg(long)]
        thy: PathBuf,
    },
    /// Whether a theory entails the sequent lhs |- rhs.
    Entails {
        #[arg(long)]
        thy: PathBuf,
        #[arg(long, value_delimiter = ',')]
        lhs: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        rhs: Vec<String>,
    },
    /// Theory of a classification.
    Intent {
        #[arg(long)]
        cls: PathBuf,
        /// List every sequent instead of a generating set.
        #[arg(long)]
        enumerate: bool,
    },
    /// Classification of the subsets satisfying a theory.
    Extent {
        #[arg(long)]
        thy: PathBuf,
    },
    Satisfies {
        #[arg(long)]
        cls: PathBuf,
        #[arg(long)]
        thy: PathBuf,
    },
    /// Translate a theory along a type map.
    #[command(group(ArgGroup::new("direction").required(true).args(["direct", "inverse"])))]
    Flow {
        #[arg(long)]
        direct: bool,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        thy: PathBuf,
    },
    /// Sound logic pairing a logic's structure with the intent of its normal part.
    Join {
        #[arg(long)]
        logic: PathBuf,
    },
    /// Normal instances of a logic.
    Sum {
        #[arg(long)]
        logic: PathBuf,
    },
    /// Natural logic of a classification.
    Nat {
        #[arg(long)]
        cls: PathBuf,
    },
    /// Run law checks; exits 1 if any fails.
    Laws {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_types: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        bundles: usize,
    },
    #[command(subcommand)]
    Dgm(DgmVerb),
    #[command(subcommand)]
    Fol(FolVerb),
}

#[derive(Args, Debug)]
struct Cap {
    /// Longest path considered.
    #[arg(long, default_value_t = 16)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum DgmVerb {
    /// Free path category of a graph.
    Paths {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Which equations a diagram satisfies.
    Satisfies {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        equations: PathBuf,
    },
    /// Path category modulo the congruence generated by the equations.
    Quotient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        equations: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Factor a diagram through the quotient by the equations.
    Factor {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        equations: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
}

#[derive(Subcommand, Debug)]
enum FolVerb {
    Validate {
        #[arg(long)]
        structure: PathBuf,
    },
    FromFrames {
        #[arg(long)]
        frames: PathBuf,
        #[arg(long, default_value = "Entity", value_parser = clap::builder::NonEmptyStringValueParser::new())]
        entity_type: String,
    },
    ToDataset {
        #[arg(long)]
        structure: PathBuf,
    },
    FromDataset {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Whether a functor with a row map is a morphism between dataset states.
    CheckMorphism {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
}

impl Verb {
    fn name(&self) -> String {
        match self {
            Verb::Close { .. } => "close".into(),
            Verb::Entails { .. } => "entails".into(),
            Verb::Intent { .. } => "intent".into(),
            Verb::Extent { .. } => "extent".into(),
            Verb::Satisfies { .. } => "satisfies".into(),
            Verb::Flow { .. } => "flow".into(),
            Verb::Join { .. } => "join".into(),
            Verb::Sum { .. } => "sum".into(),
            Verb::Nat { .. } => "nat".into(),
            Verb::Laws { .. } => "laws".into(),
            Verb::Dgm(d) => format!(
                "dgm {}",
                match d {
                    DgmVerb::Paths { .. } => "paths",
                    DgmVerb::Satisfies { .. } => "satisfies",
                    DgmVerb::Quotient { .. } => "quotient",
                    DgmVerb::Factor { .. } => "factor",
                }
            ),
            Verb::Fol(f) => format!(
                "fol {}",
                match f {
                    FolVerb::Validate { .. } => "validate",
                    FolVerb::FromFrames { .. } => "from-frames",
                    FolVerb::ToDataset { .. } => "to-dataset",
                    FolVerb::FromDataset { .. } => "from-dataset",
                    FolVerb::CheckMorphism { .. } => "check-morphism",
                }
            ),
        }
    }
}

/// A successful run; `failed` marks a law failure (exit 1).
struct Outcome {
    result: Value,
    failed: bool,
}

fn ok(result: Value) -> truthkit::Result<Outcome> {
    Ok(Outcome { result, failed: false })
}

fn read<T: serde::de::DeserializeOwned>(path: &FsPath) -> truthkit::Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    io::parse(&text).map_err(|e| match e {
        Error::ParseError(m) => Error::ParseError(format!("{}: {m}", path.display())),
        Error::ValidationError { path: p, message } => Error::ValidationError { path: format!("{}: {p}", path.display()), message },
        other => other,
    })
}

/// A frames file holds one frame object or an array of them.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(FrameJson),
    Many(Vec<FrameJson>),
}

fn graph_and_equations(g: &Graph, path: &FsPath) -> truthkit::Result<Vec<Equation>> {
    equations_from_json(&read::<Vec<EquationJson>>(path)?, g)
}

fn run(verb: &Verb, limits: &Limits) -> truthkit::Result<Outcome> {
    match verb {
        Verb::Close { thy } => {
            let t = read::<TheoryJson>(thy)?.to_domain()?;
            ok(to_value(&TheoryJson::from_domain(&closure_enumerate(&t, limits)?)))
        }
        Verb::Entails { thy, lhs, rhs } => {
            let t = read::<TheoryJson>(thy)?.to_domain()?;
            let q = Sequent::named(t.types(), lhs, rhs)?;
            ok(json!({ "entails": entails(&t, &q, limits)? }))
        }
        Verb::Intent { cls, enumerate } => {
            let m = read::<ClassificationJson>(cls)?.to_domain()?;
            let t = if *enumerate { intent_enumerate(&m, limits)? } else { intent(&m, limits)? };
            ok(to_value(&TheoryJson::from_domain(&t)))
        }
        Verb::Extent { thy } => {
            let t = read::<TheoryJson>(thy)?.to_domain()?;
            ok(to_value(&ClassificationJson::from_domain(&extent(&t, limits)?)))
        }
        Verb::Satisfies { cls, thy } => {
            let m = read::<ClassificationJson>(cls)?.to_domain()?;
            let t = read::<TheoryJson>(thy)?.to_domain()?;
            ok(json!({ "satisfies": satisfies(&m, &t)? }))
        }
        Verb::Flow { direct, map, thy, .. } => {
            let f = read::<TypeMapJson>(map)?.to_domain()?;
            let t = read::<TheoryJson>(thy)?.to_domain()?;
            let out = if *direct { dir_flow(&f, &t)? } else { inv_flow(&f, &t, limits)? };
            ok(to_value(&TheoryJson::from_domain(&out)))
        }
        Verb::Join { logic } => {
            let l = read::<LogicJson>(logic)?.to_domain()?;
            ok(to_value(&LogicJson::from_domain(join_logic(&l, limits)?.logic())))
        }
        Verb::Sum { logic } => {
            let l = read::<LogicJson>(logic)?.to_domain()?;
            ok(to_value(&ClassificationJson::from_domain(&sum_normal_instances(&l))))
        }
        Verb::Nat { cls } => {
            let m = read::<ClassificationJson>(cls)?.to_domain()?;
            ok(to_value(&LogicJson::from_domain(nat_logic(&m, limits)?.logic())))
        }
        Verb::Laws { suite, max_types, seed, bundles } => {
            if *max_types > limits.closure_types {
                return Err(Error::SizeCapExceeded {
                    what: "types per law instance".into(),
                    size: *max_types as u128,
                    cap: limits.closure_types as u128,
                });
            }
            let cfg = SuiteConfig { seed: *seed, max_types: *max_types, bundles: *bundles };
            let reports = run_suite(suite, &cfg, limits)?;
            let failed = reports.iter().any(|r| !r.passed);
            Ok(Outcome { result: to_value(&reports), failed })
        }
        Verb::Dgm(d) => run_dgm(d),
        Verb::Fol(f) => run_fol(f),
    }
}

fn run_dgm(verb: &DgmVerb) -> truthkit::Result<Outcome> {
    match verb {
        DgmVerb::Paths { graph, cap } => {
            let g = read::<GraphJson>(graph)?.to_domain()?;
            ok(to_value(&CategoryJson::from_domain(&path_category(&g, cap.cap)?)))
        }
        DgmVerb::Satisfies { diagram, equations } => {
            let d = read::<DiagramJson>(diagram)?.to_domain()?;
            let eqs = graph_and_equations(d.graph(), equations)?;
            let each = eqs
                .iter()
                .map(|q| Ok(json!({ "equation": equation_json(q, d.graph()), "satisfies": dgm_satisfies(&d, q)? })))
                .collect::<truthkit::Result<Vec<_>>>()?;
            let all = each.iter().all(|v| v["satisfies"] == Value::Bool(true));
            ok(json!({ "satisfies": all, "equations": each }))
        }
        DgmVerb::Quotient { graph, equations, cap } => {
            let g = read::<GraphJson>(graph)?.to_domain()?;
            let eqs = graph_and_equations(&g, equations)?;
            let q = quotient_category(&g, &eqs, cap.cap)?;
            let ms = q.category.morphisms();
            let classes: BTreeMap<String, &str> =
                q.paths.iter().zip(&q.class_of).map(|(p, &c)| (p.id(&g), ms[c].id.as_str())).collect();
            ok(json!({ "category": CategoryJson::from_domain(&q.category), "classes": classes }))
        }
        DgmVerb::Factor { diagram, equations, cap } => {
            let d = read::<DiagramJson>(diagram)?.to_domain()?;
            let eqs = graph_and_equations(d.graph(), equations)?;
            let f = factor_through_quotient(&d, &eqs, cap.cap)?;
            let (qc, t) = (&f.quotient.category, d.target());
            let objects: BTreeMap<&str, &str> =
                qc.objects().iter().zip(&f.objects).map(|(o, &x)| (o.as_str(), t.objects()[x].as_str())).collect();
            let morphisms: BTreeMap<&str, &str> =
                qc.morphisms().iter().zip(&f.morphisms).map(|(m, &x)| (m.id.as_str(), t.morphisms()[x].id.as_str())).collect();
            ok(json!({ "quotient": CategoryJson::from_domain(qc), "objects": objects, "morphisms": morphisms }))
        }
    }
}

fn run_fol(verb: &FolVerb) -> truthkit::Result<Outcome> {
    match verb {
        FolVerb::Validate { structure } => {
            let a = read::<StructureJson>(structure)?.to_domain()?;
            let v = validate_structure(&a);
            ok(json!({ "valid": v.is_empty(), "violations": v }))
        }
        FolVerb::FromFrames { frames, entity_type } => {
            let fs = match read::<OneOrMany>(frames)? {
                OneOrMany::One(f) => frames_from_json(&[f])?,
                OneOrMany::Many(v) => frames_from_json(&v)?,
            };
            ok(to_value(&StructureJson::from_domain(&frames_to_structure(&fs, entity_type)?)))
        }
        FolVerb::ToDataset { structure } => {
            let a = read::<StructureJson>(structure)?.to_domain()?;
            ok(to_value(&DatasetJson::from_domain(&structure_to_dataset(&a)?)))
        }
        FolVerb::FromDataset { dataset } => {
            let f = read::<DatasetJson>(dataset)?.to_domain()?;
            ok(to_value(&StructureJson::from_domain(&dataset_to_structure(&f)?)))
        }
        FolVerb::CheckMorphism { functor, source, target } => {
            let h = read::<DatasetFunctorJson>(functor)?.to_domain();
            let f = read::<DatasetJson>(source)?.to_domain()?;
            let g = read::<DatasetJson>(target)?.to_domain()?;
            ok(json!({ "morphism": dataset_morphism_check(&h, &f, &g)? }))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.expect("JSON values always serialize")
}

fn fail(kind: &str, message: String, pretty: bool) -> ExitCode {
    eprintln!("{}", render(&json!({ "error": { "kind": kind, "message": message } }), pretty));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("UsageError", e.render().to_string().trim_end().to_string(), false),
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => return fail(e.kind(), e.to_string(), cli.pretty),
    };
    let start = Instant::now();
    let outcome = run(&cli.verb, &limits);
    let wall = start.elapsed();
    if cli.timing {
        eprintln!("{}: {:.3} ms", cli.verb.name(), wall.as_secs_f64() * 1e3);
    }
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return fail(e.kind(), e.to_string(), cli.pretty),
    };
    let status = u8::from(outcome.failed);
    let body = if cli.report {
        json!({ "verb": cli.verb.name(), "status": status, "result": outcome.result, "wall_ms": wall.as_secs_f64() * 1e3 })
    } else {
        outcome.result
    };
    let text = render(&body, cli.pretty);
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text + "\n") {
                return fail("IoError", format!("{}: {e}", p.display()), cli.pretty);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(out, "{text}");
        }
    }
    ExitCode::from(status)
}

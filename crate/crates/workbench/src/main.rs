use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use gis_core::congruence::{gamma, lambda_rho, quotient};
use gis_core::enumerate::{enumerate_semigroups, SemigroupClass};
use gis_core::format::{parse_semigroup, to_sgp, SemigroupJson};
use gis_core::madhavan::{build_m_rho, RhoRelation};
use gis_core::morita::{build_yamada, morita_product, tensor, theta_iso_check, yamada_decompose, SSet, Side, Tensor};
use gis_core::{Elem, FiniteSemigroup};
use gis_workbench::corpus::{enumerate_corpus, fixture_corpus, limits_from_env};
use gis_workbench::fixtures::YamadaSpec;
use gis_workbench::{run_suite, Suite, WorkbenchError};

/// Finite semigroup workbench: classification, Green's relations, quotients,
/// Yamada and Morita constructions, enumeration and property suites.
#[derive(Parser)]
#[command(name = "gis", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity and band-variety classification of a table.
    Classify { file: String },
    /// Green's relations L, R, H, D, J.
    Green { file: String },
    /// Quotient by γ, λ or ρ.
    Quotient {
        #[arg(long, value_enum)]
        rel: Relation,
        file: String,
    },
    /// Yamada semigroups.
    Yamada {
        #[command(subcommand)]
        command: YamadaCommand,
    },
    /// Tensor products of S-sets.
    Tensor {
        #[command(subcommand)]
        command: TensorCommand,
    },
    /// M_ρ(X) on {1, …, N}; αβ applies α first.
    Madhavan {
        #[arg(long)]
        size: usize,
        /// Blocks of ρ such as "1 2|3"; unlisted points are singletons.
        #[arg(long, default_value = "")]
        partition: String,
    },
    /// All semigroups of one order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Run a property suite over enumerated semigroups and fixtures.
    Suite {
        name: String,
        /// Largest corpus order.
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Subcommand)]
enum YamadaCommand {
    /// Build 𝒴(X, T, Y) from a {"T", "X", "Y"} JSON file.
    Build { spec: String },
    /// Rebuild a generalized inverse semigroup as a Yamada semigroup.
    Decompose { file: String },
}

#[derive(Subcommand)]
enum TensorCommand {
    /// Check θ for a Yamada spec, or tensor two S-sets given as JSON.
    Verify { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Gamma,
    Lambda,
    Rho,
}

fn read(path: &str) -> Result<String, WorkbenchError> {
    fs::read_to_string(path).map_err(|source| WorkbenchError::Io {
        path: path.to_string(),
        source,
    })
}

fn load_semigroup(path: &str) -> Result<FiniteSemigroup, WorkbenchError> {
    let text = read(path)?;
    parse_semigroup(&text).map_err(|e| WorkbenchError::from(e).in_file(path))
}

fn load_yamada_spec(path: &str, text: &str) -> Result<YamadaSpec, WorkbenchError> {
    YamadaSpec::parse(text).map_err(|e| e.in_file(path))
}

/// Writes to stdout; a closed pipe (`gis ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

/// Output of a successful command: text and its JSON counterpart.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn classify(file: &str) -> Result<Output, WorkbenchError> {
    let s = load_semigroup(file)?;
    let c = s.classify();
    Ok(Output::new(
        c.summary(),
        json!({ "order": s.order(), "summary": c.summary(), "classification": c }),
    ))
}

fn green(file: &str) -> Result<Output, WorkbenchError> {
    let s = load_semigroup(file)?;
    let g = s.green();
    let text = [("L", &g.l), ("R", &g.r), ("H", &g.h), ("D", &g.d), ("J", &g.j)]
        .iter()
        .map(|(n, p)| format!("{n}: {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::new(text, serde_json::to_value(&g)?))
}

fn quotient_cmd(rel: Relation, file: &str) -> Result<Output, WorkbenchError> {
    let s = load_semigroup(file)?;
    let c = match rel {
        Relation::Gamma => gamma(&s)?,
        Relation::Lambda => lambda_rho(&s)?.lambda,
        Relation::Rho => lambda_rho(&s)?.rho,
    };
    let (q, proj) = quotient(&s, &c);
    let text = format!("# classes: {}\n{}", c.partition(), to_sgp(&q));
    Ok(Output::new(
        text.trim_end().to_string(),
        json!({ "classes": c.partition().to_string(), "projection": proj, "quotient": SemigroupJson::from(&q) }),
    ))
}

fn yamada_build(path: &str) -> Result<Output, WorkbenchError> {
    let text = read(path)?;
    let (t, x, y) = load_yamada_spec(path, &text)?.into_parts()?;
    let ys = build_yamada(&t, &x, &y)?;
    let labels = ys.triples.iter().map(|(a, u, b)| format!("{a}:{u}:{b}")).collect();
    let s = ys.semigroup.clone().with_labels(labels)?;
    let c = s.classify();
    Ok(Output::new(
        format!("# {}\n# elements are x:t:y\n{}", c.summary(), to_sgp(&s)).trim_end().to_string(),
        json!({ "triples": ys.triples, "semigroup": SemigroupJson::from(&s), "classification": c }),
    ))
}

fn yamada_decompose_cmd(file: &str) -> Result<Output, WorkbenchError> {
    let s = load_semigroup(file)?;
    let d = yamada_decompose(&s)?;
    let y = &d.yamada;
    let spec = YamadaSpec::from_parts(&y.t, &y.x, &y.y);
    let image: Vec<(Elem, Elem, Elem)> = d.iso.iter().map(|&i| y.triples[i]).collect();
    let mut text = format!("|T| = {}, |X| = {}, |Y| = {}\n", y.t.order(), y.x.carrier_size(), y.y.carrier_size());
    for (u, (a, t, b)) in image.iter().enumerate() {
        text.push_str(&format!("{u} ↦ ({a}, {t}, {b})\n"));
    }
    text.push_str(&serde_json::to_string(&spec)?);
    Ok(Output::new(text, json!({ "spec": spec, "iso": image })))
}

/// An S-set side of a tensor spec.
#[derive(Deserialize)]
struct SSetJson {
    size: usize,
    /// `act[s][x]`.
    act: Vec<Vec<Elem>>,
}

#[derive(Deserialize)]
struct TensorSpec {
    semigroup: SemigroupJson,
    /// Right S-set `Q`.
    right: SSetJson,
    /// Left S-set `P`.
    left: SSetJson,
    /// `pairing[p][q] = ⟨p, q⟩`, optional.
    #[serde(default)]
    pairing: Option<Vec<Vec<Elem>>>,
}

fn tensor_json(t: &Tensor) -> Value {
    let classes: Vec<Vec<(Elem, Elem)>> = t
        .classes
        .classes()
        .iter()
        .map(|c| c.iter().map(|&i| (i / t.p_size, i % t.p_size)).collect())
        .collect();
    let table: Vec<Vec<usize>> = (0..t.q_size)
        .map(|q| (0..t.p_size).map(|p| t.class_of(q, p)).collect())
        .collect();
    json!({ "classes": classes, "class_table": table })
}

fn tensor_text(t: &Tensor) -> String {
    let mut out = format!("{} classes\n", t.num_classes());
    for (c, members) in t.classes.classes().iter().enumerate() {
        let pairs: Vec<String> = members
            .iter()
            .map(|&i| format!("{}⊗{}", i / t.p_size, i % t.p_size))
            .collect();
        out.push_str(&format!("{c}: {}\n", pairs.join(" ")));
    }
    out
}

fn tensor_verify(path: &str) -> Result<Output, WorkbenchError> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| WorkbenchError::from(e).in_file(path))?;
    if v.get("T").is_some() {
        let (t, x, y) = load_yamada_spec(path, &text)?.into_parts()?;
        let ys = build_yamada(&t, &x, &y)?;
        let data = theta_iso_check(&ys)?;
        let out = format!(
            "{}θ is an isomorphism 𝒴 → S_L ⊗ S_R ({} elements)",
            tensor_text(&data.tensor),
            ys.semigroup.order()
        );
        return Ok(Output::new(
            out,
            json!({
                "tensor": tensor_json(&data.tensor),
                "theta": data.theta,
                "morita": SemigroupJson::from(&data.morita),
                "order": ys.semigroup.order(),
            }),
        ));
    }
    let spec: TensorSpec = serde_json::from_value(v).map_err(|e| WorkbenchError::from(e).in_file(path))?;
    let s = spec.semigroup.into_semigroup()?;
    let flat = |j: SSetJson| (j.size, j.act.into_iter().flatten().collect::<Vec<_>>());
    let (qn, qa) = flat(spec.right);
    let (pn, pa) = flat(spec.left);
    let q = SSet::new(Side::Right, s.clone(), qn, qa)?;
    let p = SSet::new(Side::Left, s, pn, pa)?;
    let t = tensor(&q, &p)?;
    let mut out = tensor_text(&t);
    let mut j = json!({ "tensor": tensor_json(&t) });
    if let Some(pairing) = spec.pairing {
        let m = morita_product(&q, &p, &t, &pairing.concat())?;
        out.push_str(&format!("Morita product:\n{}", to_sgp(&m)));
        j["morita"] = serde_json::to_value(SemigroupJson::from(&m))?;
    }
    Ok(Output::new(out.trim_end().to_string(), j))
}

fn madhavan(size: usize, partition: &str) -> Result<Output, WorkbenchError> {
    let rho = RhoRelation::parse(size, partition)?;
    let m = build_m_rho(&rho)?;
    let mut text = format!("# M_ρ(X), X = {{1..{size}}}, ρ = {rho}; αβ applies α first\n");
    text.push_str(&to_sgp(&m.semigroup));
    for line in m.legend().lines() {
        text.push_str(&format!("# {line}\n"));
    }
    let legend: Vec<Value> = m
        .elements
        .iter()
        .enumerate()
        .map(|(i, f)| json!({ "id": i, "label": f.label(size), "map": f.describe(size) }))
        .collect();
    Ok(Output::new(
        text.trim_end().to_string(),
        json!({ "rho": rho.to_string(), "semigroup": SemigroupJson::from(&m.semigroup), "legend": legend }),
    ))
}

fn enumerate(order: usize, class: &str) -> Result<Output, WorkbenchError> {
    let class: SemigroupClass = class.parse()?;
    let all = enumerate_semigroups(order, class, limits_from_env()?)?;
    let mut text = format!("# {} semigroups of order {order} in class {}\n", all.len(), class.name());
    for (i, s) in all.iter().enumerate() {
        text.push_str(&format!("# {i}\n{}", to_sgp(s)));
    }
    let members: Vec<SemigroupJson> = all.iter().map(SemigroupJson::from).collect();
    Ok(Output::new(
        text.trim_end().to_string(),
        json!({ "order": order, "class": class.name(), "count": all.len(), "members": members }),
    ))
}

fn suite(name: &str, order: Option<usize>) -> Result<Output, WorkbenchError> {
    let suite: Suite = name.parse()?;
    let order = order.unwrap_or(suite.default_order());
    let mut corpus = enumerate_corpus(order, suite.class(), limits_from_env()?)?;
    corpus.extend(fixture_corpus());
    let report = run_suite(suite, &corpus);
    let mut text = format!(
        "suite {}: {} passed, {} failed, {} skipped over {} semigroups ({} ms)",
        report.suite,
        report.passed,
        report.failed,
        report.skipped,
        report.corpus_size,
        report.elapsed_ms
    );
    for f in report.failures() {
        text.push_str(&format!(
            "\nFAIL {} / {}: {}",
            f.subject,
            f.check,
            f.witness.clone().unwrap_or_default()
        ));
    }
    let ok = report.all_passed();
    let mut out = Output::new(text, serde_json::to_value(&report)?);
    out.ok = ok;
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output, WorkbenchError> {
    match &cli.command {
        Command::Classify { file } => classify(file),
        Command::Green { file } => green(file),
        Command::Quotient { rel, file } => quotient_cmd(*rel, file),
        Command::Yamada { command } => match command {
            YamadaCommand::Build { spec } => yamada_build(spec),
            YamadaCommand::Decompose { file } => yamada_decompose_cmd(file),
        },
        Command::Tensor {
            command: TensorCommand::Verify { spec },
        } => tensor_verify(spec),
        Command::Madhavan { size, partition } => madhavan(*size, partition),
        Command::Enumerate { order, class } => enumerate(*order, class),
        Command::Suite { name, order } => suite(name, *order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                print_json(&out.json);
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: SuiteFailed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                print_json(&json!({ "error": e.name(), "message": e.to_string() }));
            }
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

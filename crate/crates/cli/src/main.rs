//! Command-line front-end: reads JSON structures, runs one operation and
//! writes a JSON report.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use canram::canonical::{
    erc_search, find_canonical_witness, is_canonical_witness, verify_can_arrow, CanonicalWitness, Outcome, WitnessDoc,
};
use canram::category::{embedding_maps, Coloring, Embedding, HomSet};
use canram::diagram::{check_cocone, PosTransfer};
use canram::io::{structures_from_value, Indexing};
use canram::preadjunction::{MetPos, TightSet};
use canram::sweeps::{cpa_sweep, with_workers, CpaLimits};
use canram::transfers::{
    compress_signature, dagger, graph_digraph_iso, graph_tournament_iso, star, DigraphDirection, EncodedHypergraph,
    TournamentDirection, DEFAULT_QUASIORDER_CAP,
};
use canram::{CoreError, OrderedStructure, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "canram", version, about = "Canonical Ramsey toolkit for finite ordered structures")]
struct Cli {
    /// Input JSON file; repeat for several inputs. A file may hold one
    /// structure or an array of them.
    #[arg(long, short, global = true)]
    input: Vec<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Coloring budget for canonical-arrow verification.
    #[arg(long, global = true, env = "CANRAM_MAX_COLORINGS", default_value_t = 1_000_000)]
    max_colorings: u64,
    /// Cap on the number of points of a metric built from a poset.
    #[arg(long, global = true, default_value_t = 4096)]
    max_points: usize,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Index base of vertex indices in input files.
    #[arg(long, global = true, default_value = "0", value_parser = ["0", "1"])]
    indexing: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of every input structure.
    Validate,
    /// List the embeddings from the first input structure into the second.
    Hom,
    /// Apply a graph isomorphism functor to every input structure.
    Functor { name: FunctorName, direction: String },
    /// Encode a relational structure as a hypergraph, or decode one.
    Encode { mode: EncodeMode },
    /// Merge equal families of the order sum of the input hypergraphs.
    Compress,
    /// Canonical witnesses for A, B, C (three inputs).
    Can {
        mode: CanMode,
        /// Coloring of hom(A, C) as a JSON array of color ids.
        #[arg(long)]
        coloring: Option<String>,
        /// Witness as JSON {"w": {"map": [...]}, "positions": [...]}.
        #[arg(long)]
        witness: Option<String>,
        /// Include a witness for every coloring in `verify` reports.
        #[arg(long)]
        witnesses: bool,
    },
    /// Smallest n with a canonical arrow for chains of sizes k, m, n.
    Erc { k: usize, m: usize, n_max: usize },
    /// The metric/poset pre-adjunction over a tight scale.
    Preadj {
        mode: PreadjMode,
        /// Distances of the scale, e.g. "0,1,2" or "0,1/2,1".
        #[arg(long, value_delimiter = ',')]
        scale: Vec<Rational>,
        /// Embedding into the poset, as a JSON array, for `phi`.
        #[arg(long)]
        map: Option<String>,
    },
    /// Move colorings and witnesses from a digraph tip to its poset closure.
    Transfer { mode: TransferMode },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FunctorName {
    GraEdig,
    GraTour,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodeMode {
    Dagger,
    Star,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CanMode {
    Check,
    Search,
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PreadjMode {
    Fobj,
    Gobj,
    Phi,
    Sweep,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TransferMode {
    Demo,
}

/// Outcome class of a command, mapped to the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    VerificationFailed,
    BudgetExhausted,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } | CoreError::SizeCap { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = Result<(Value, Value, Status), Failure>;

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    budgets: Value,
    consumed: Value,
    result: Value,
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn load(cli: &Cli) -> Result<Vec<OrderedStructure>, Failure> {
    let indexing = if cli.indexing == "1" { Indexing::One } else { Indexing::Zero };
    let mut out = Vec::new();
    for path in &cli.input {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let value: Value = parse_json(&path.display().to_string(), &text)?;
        out.extend(structures_from_value(value, indexing).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?);
    }
    Ok(out)
}

fn structures(cli: &Cli, count: usize) -> Result<Vec<OrderedStructure>, Failure> {
    let out = load(cli)?;
    if count > 0 && out.len() != count {
        return Err(Failure::Input(format!("expected {count} input structures, got {}", out.len())));
    }
    for (i, s) in out.iter().enumerate() {
        s.validate().into_result().map_err(|e| Failure::Input(format!("input {i}: {e}")))?;
    }
    Ok(out)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn none() -> Value {
    json!({})
}

fn cmd_validate(cli: &Cli) -> Run {
    let inputs = load(cli)?;
    if inputs.is_empty() {
        return Err(Failure::Input("no input structures".into()));
    }
    let reports: Vec<Value> = inputs
        .iter()
        .map(|s| json!({"kind": s.kind(), "n": s.n(), "ok": s.is_valid(), "violations": s.validate().violations}))
        .collect();
    if let Some(v) = inputs.iter().flat_map(|s| s.validate().violations).next() {
        return Err(Failure::Input(format!("invalid structure: {}: {}", v.axiom, v.detail)));
    }
    Ok((json!({"structures": reports}), none(), Status::Ok))
}

fn cmd_hom(cli: &Cli) -> Run {
    let s = structures(cli, 2)?;
    let maps = embedding_maps(&s[0], &s[1])?;
    Ok((json!({"count": maps.len(), "embeddings": maps.iter().map(|m| json!({"map": m})).collect::<Vec<_>>()}), none(), Status::Ok))
}

fn cmd_functor(cli: &Cli, name: FunctorName, direction: &str) -> Run {
    let bad = || Failure::Input(format!("unknown direction {direction:?} for {name:?}"));
    let s = structures(cli, 0)?;
    let out: Vec<OrderedStructure> = match name {
        FunctorName::GraEdig => {
            let d = match direction {
                "to_digraph" => DigraphDirection::ToDigraph,
                "to_graph" => DigraphDirection::ToGraph,
                _ => return Err(bad()),
            };
            s.iter().map(|x| graph_digraph_iso(d, x)).collect::<Result<_, _>>()?
        }
        FunctorName::GraTour => {
            let d = match direction {
                "to_tournament" => TournamentDirection::ToTournament,
                "to_graph" => TournamentDirection::ToGraph,
                _ => return Err(bad()),
            };
            s.iter().map(|x| graph_tournament_iso(d, x)).collect::<Result<_, _>>()?
        }
    };
    Ok((json!({"structures": out}), none(), Status::Ok))
}

fn cmd_encode(cli: &Cli, mode: EncodeMode) -> Run {
    match mode {
        EncodeMode::Dagger => {
            let s = structures(cli, 0)?;
            let out: Vec<EncodedHypergraph> =
                s.iter().map(|a| dagger(a, DEFAULT_QUASIORDER_CAP)).collect::<Result<_, _>>()?;
            Ok((json!({"encoded": out}), none(), Status::Ok))
        }
        EncodeMode::Star => {
            let mut out = Vec::new();
            for path in &cli.input {
                let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let b: EncodedHypergraph = parse_json(&path.display().to_string(), &text)?;
                b.hypergraph.validate().into_result()?;
                out.push(star(&b)?);
            }
            Ok((json!({"structures": out}), none(), Status::Ok))
        }
    }
}

fn cmd_compress(cli: &Cli) -> Run {
    let s = structures(cli, 0)?;
    let c = compress_signature(&s)?;
    let g: serde_json::Map<String, Value> = c.g.iter().enumerate().map(|(i, r)| (i.to_string(), json!(r))).collect();
    Ok((json!({"kept": c.kept, "g": g, "union": c.union, "reducts": c.reducts}), none(), Status::Ok))
}

fn cmd_can(cli: &Cli, mode: CanMode, coloring: Option<&str>, witness: Option<&str>, all_witnesses: bool) -> Run {
    let s = structures(cli, 3)?;
    let (a, b, c) = (Arc::new(s[0].clone()), Arc::new(s[1].clone()), Arc::new(s[2].clone()));
    let read_coloring = |hom_ac: &HomSet| -> Result<Coloring, Failure> {
        let text = coloring.ok_or_else(|| Failure::Input("--coloring is required".into()))?;
        let labels: Vec<usize> = parse_json("coloring", text)?;
        let chi = Coloring::from_labels(&labels);
        chi.check_len(hom_ac.len())?;
        Ok(chi)
    };
    match mode {
        CanMode::Check => {
            let hom_ab = HomSet::new(a.clone(), b.clone())?;
            let hom_ac = HomSet::new(a, c.clone())?;
            let chi = read_coloring(&hom_ac)?;
            let text = witness.ok_or_else(|| Failure::Input("--witness is required".into()))?;
            let doc: WitnessDoc = parse_json("witness", text)?;
            let w = Embedding::new(b, c, doc.w.map)?;
            let wit = CanonicalWitness { w, positions: doc.positions };
            let ok = is_canonical_witness(&hom_ac, &chi, &wit, &hom_ab)?;
            let status = if ok { Status::Ok } else { Status::VerificationFailed };
            Ok((json!({"canonical": ok}), none(), status))
        }
        CanMode::Search => {
            let hom_ac = HomSet::new(a.clone(), c.clone())?;
            let chi = read_coloring(&hom_ac)?;
            let found = find_canonical_witness(&chi, &a, &b, &c)?;
            let status = if found.is_some() { Status::Ok } else { Status::VerificationFailed };
            Ok((json!({"witness": found.map(|w| w.to_doc())}), none(), status))
        }
        CanMode::Verify => {
            let v = verify_can_arrow(&a, &b, &c, cli.max_colorings, all_witnesses)?;
            let status = match v.outcome {
                Outcome::Holds => Status::Ok,
                Outcome::Fails => Status::VerificationFailed,
                Outcome::Inconclusive => Status::BudgetExhausted,
            };
            let consumed = json!({"colorings": v.stats.colorings_examined});
            Ok((to_value(&v), consumed, status))
        }
    }
}

fn cmd_erc(cli: &Cli, k: usize, m: usize, n_max: usize) -> Run {
    let r = erc_search(k, m, n_max, cli.max_colorings)?;
    let consumed = json!({"colorings": r.rows.iter().map(|row| row.colorings_examined).sum::<u64>()});
    let status = if r.budget_exhausted {
        Status::BudgetExhausted
    } else if r.n.is_none() {
        Status::VerificationFailed
    } else {
        Status::Ok
    };
    Ok((to_value(&r), consumed, status))
}

fn scale_of(values: &[Rational]) -> Result<TightSet, Failure> {
    if values.is_empty() {
        return Err(Failure::Input("--scale is required".into()));
    }
    Ok(TightSet::new(values.to_vec())?)
}

fn cmd_preadj(cli: &Cli, mode: PreadjMode, scale: &[Rational], map: Option<&str>) -> Run {
    match mode {
        PreadjMode::Sweep => {
            let scales = if scale.is_empty() {
                vec![TightSet::from_ints(&[0, 1])?, TightSet::from_ints(&[0, 1, 2])?]
            } else {
                vec![scale_of(scale)?]
            };
            let report = with_workers(cli.workers as usize, || cpa_sweep(&scales, CpaLimits::default()))??;
            let failed = report.scales.iter().any(|s| !s.failures.is_empty());
            Ok((to_value(&report), none(), if failed { Status::VerificationFailed } else { Status::Ok }))
        }
        _ => {
            let mut met = MetPos::new(scale_of(scale)?);
            met.max_points = cli.max_points;
            match mode {
                PreadjMode::Fobj => {
                    let out = structures(cli, 0)?.iter().map(|m| met.f_obj(m)).collect::<Result<Vec<_>, _>>()?;
                    Ok((json!({"structures": out}), none(), Status::Ok))
                }
                PreadjMode::Gobj => {
                    let out = structures(cli, 0)?.iter().map(|p| met.g_obj(p)).collect::<Result<Vec<_>, _>>()?;
                    let points: usize = out.iter().map(OrderedStructure::n).sum();
                    Ok((json!({"structures": out}), json!({"points": points}), Status::Ok))
                }
                PreadjMode::Phi => {
                    let s = structures(cli, 2)?;
                    let text = map.ok_or_else(|| Failure::Input("--map is required".into()))?;
                    let u: Vec<usize> = parse_json("map", text)?;
                    let m = Arc::new(s[0].clone());
                    let fm = Arc::new(met.f_obj(&m)?);
                    let p = Arc::new(s[1].clone());
                    let u = Embedding::new(fm, p.clone(), u)?;
                    let g = Arc::new(met.g_obj(&p)?);
                    match met.phi(&m, &u, &g) {
                        Ok(e) => Ok((json!({"map": e.map(), "tuples": e.map().iter().map(|&i| met.tuple_of(p.n(), i)).collect::<Vec<_>>()}), none(), Status::Ok)),
                        Err(CoreError::Inconsistency(msg)) => Ok((json!({"error": msg}), none(), Status::VerificationFailed)),
                        Err(e) => Err(e.into()),
                    }
                }
                PreadjMode::Sweep => unreachable!(),
            }
        }
    }
}

fn cmd_transfer(cli: &Cli) -> Run {
    let s = structures(cli, 0)?;
    let (a, b, c) = match s.len() {
        0 => (
            OrderedStructure::poset_chain(1),
            OrderedStructure::antichain(2),
            OrderedStructure::digraph(3, [(0, 0), (1, 1), (2, 2), (0, 1)]),
        ),
        3 => (s[0].clone(), s[1].clone(), s[2].clone()),
        n => return Err(Failure::Input(format!("expected 0 or 3 input structures, got {n}"))),
    };
    let t = match PosTransfer::new(a, b, c) {
        Ok(t) => t,
        Err(e @ (CoreError::NotAnEmbedding(_) | CoreError::Inconsistency(_))) => {
            return Ok((json!({"closure": {"ok": false, "reason": e.to_string()}}), none(), Status::VerificationFailed))
        }
        Err(e) => return Err(e.into()),
    };
    let mut rows = Vec::new();
    let mut status = Status::Ok;
    let mut examined = 0u64;
    for chi in canram::enumerate_colorings(t.hom_ad.len(), cli.max_colorings) {
        let chi = match chi {
            Ok(chi) => chi,
            Err(_) => {
                status = Status::BudgetExhausted;
                break;
            }
        };
        examined += 1;
        let out = t.run(&chi)?;
        let (witness_c, witness_d, valid) = match out.witnesses {
            Some((wc, wd, ok)) => (Some(wc.to_doc()), Some(wd.to_doc()), Some(ok)),
            None => (None, None, None),
        };
        if valid == Some(false) {
            status = Status::VerificationFailed;
        }
        rows.push(json!({
            "coloring": chi,
            "transferred": out.chi_prime.coloring,
            "witness_c": witness_c,
            "witness_d": witness_d,
            "valid": valid,
        }));
    }
    let result = json!({
        "diagram": t.diagram,
        "commutes": check_cocone(&t.diagram, &t.pos)?,
        "closure": {"ok": true, "tip": t.pos.tip.as_ref(), "legs": t.pos.legs.iter().map(|l| l.map().to_vec()).collect::<Vec<_>>()},
        "colorings": rows,
    });
    Ok((result, json!({"colorings": examined}), status))
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_owned()).unwrap_or_default()
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Validate => "validate".into(),
        Command::Hom => "hom".into(),
        Command::Functor { name, direction } => format!("functor {} {direction}", value_name(name)),
        Command::Encode { mode } => format!("encode {}", value_name(mode)),
        Command::Compress => "compress".into(),
        Command::Can { mode, .. } => format!("can {}", value_name(mode)),
        Command::Erc { k, m, n_max } => format!("erc {k} {m} {n_max}"),
        Command::Preadj { mode, .. } => format!("preadj {}", value_name(mode)),
        Command::Transfer { mode } => format!("transfer {}", value_name(mode)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Validate => cmd_validate(&cli),
        Command::Hom => cmd_hom(&cli),
        Command::Functor { name, direction } => cmd_functor(&cli, *name, direction),
        Command::Encode { mode } => cmd_encode(&cli, *mode),
        Command::Compress => cmd_compress(&cli),
        Command::Can { mode, coloring, witness, witnesses } => {
            with_workers(cli.workers as usize, || cmd_can(&cli, *mode, coloring.as_deref(), witness.as_deref(), *witnesses))
                .unwrap_or_else(|e| Err(e.into()))
        }
        Command::Erc { k, m, n_max } => {
            with_workers(cli.workers as usize, || cmd_erc(&cli, *k, *m, *n_max)).unwrap_or_else(|e| Err(e.into()))
        }
        Command::Preadj { mode, scale, map } => cmd_preadj(&cli, *mode, scale, map.as_deref()),
        Command::Transfer { .. } => cmd_transfer(&cli),
    };
    let (result, consumed, status) = match run {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            return ExitCode::from(3);
        }
    };
    let name = command_name(&cli.command);
    let report = Report {
        tool: "canram",
        version: env!("CARGO_PKG_VERSION"),
        command: &name,
        budgets: json!({"max_colorings": cli.max_colorings, "max_points": cli.max_points}),
        consumed,
        result,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::VerificationFailed => ExitCode::from(2),
        Status::BudgetExhausted => ExitCode::from(3),
    }
}

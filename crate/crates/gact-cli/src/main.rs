//! Single-binary front end: saturation, quantifier elimination, sentence
//! decision, evaluation, independence checks, Galois reports, configuration
//! enumeration, Boolean-ring instances and group utilities.
//!
//! Exit codes: 0 success, 1 domain errors (JSON error object on stderr),
//! 2 usage and formula syntax errors.

use clap::{Args, Parser, Subcommand};
use gact::boolring::{self, BooleanRing, TransformalIdeal};
use gact::config::{self, Entry, TermSet};
use gact::error::LogicError;
use gact::galois::{self, FiniteExtension, PermGroup};
use gact::generic::{
    saturate_empty, saturate_graph, SaturateOptions, SaturationState, TheoryKind,
};
use gact::group::{builtin, FiniteGroup, GroupHom};
use gact::independence::{
    check_axioms, indep, independence_theorem_check, sample_amalgamation_instance,
    AmalgamationInstance, IndepRelation, OrbitIndep, RawIntersectionIndep, SamplerConfig,
};
use gact::logic::{self, Formula, FormulaDisplay};
use gact::structure::GStructure;
use serde::Deserialize;
use serde_json::json;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gact", version, about = "Workbench for structures with a finite group action")]
struct Cli {
    /// Seed for all sampling (falls back to GACT_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a finite approximation of the generic model
    Saturate(SaturateArgs),
    /// Quantifier elimination for a formula
    Qe(FormulaArgs),
    /// Decide a sentence in the chosen model companion
    Decide(FormulaArgs),
    /// Evaluate a formula in a structure file
    Eval(EvalArgs),
    /// Independence of element sets in a structure file
    Indep(IndepArgs),
    /// Property suite for the independence axioms
    IndepAxioms(IndepAxiomsArgs),
    /// Type-amalgamation check (Independence Theorem instance)
    IndepAmalgam(IndepAmalgamArgs),
    /// Galois maps and reports over a structure file
    Galois(GaloisArgs),
    /// Configuration enumeration and consistency checking
    Config(ConfigArgs),
    /// G-transformal Boolean ring instances
    Boolring(BoolringArgs),
    /// Group utilities (subgroups, cosets, Frattini covers)
    Group(GroupArgs),
}

#[derive(Args)]
struct SaturateArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1)]
    rounds: usize,
    #[arg(long, default_value_t = 200)]
    cap: usize,
    #[arg(long, default_value_t = 1)]
    param_bound: usize,
    #[arg(long, default_value_t = 1)]
    witness_bound: usize,
    /// copies per subgroup (empty theory)
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    out: Option<String>,
    /// round log as JSON lines
    #[arg(long)]
    log: Option<String>,
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    group: String,
    #[arg(long)]
    formula: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    formula: String,
    /// assignment like "x=0,y=3" (element indices)
    #[arg(long, default_value = "")]
    assign: String,
}

#[derive(Args)]
struct IndepArgs {
    #[arg(long)]
    model: String,
    #[arg(long, default_value = "")]
    a: String,
    #[arg(long, default_value = "")]
    e: String,
    #[arg(long, default_value = "")]
    b: String,
}

#[derive(Args)]
struct IndepAxiomsArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value = "orbit")]
    relation: String,
    #[arg(long)]
    report: Option<String>,
}

#[derive(Args)]
struct IndepAmalgamArgs {
    #[arg(long)]
    theory: String,
    #[arg(long)]
    group: String,
    /// structure file; omitted means a sampled instance
    #[arg(long)]
    model: Option<String>,
    #[arg(long, default_value = "")]
    model_part: String,
    #[arg(long, default_value = "")]
    a: String,
    #[arg(long, default_value = "")]
    b: String,
    #[arg(long, default_value = "")]
    c1: String,
    #[arg(long, default_value = "")]
    c2: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct GaloisArgs {
    #[arg(value_parser = ["aut", "alpha", "beta", "check"])]
    op: String,
    #[arg(long)]
    model: String,
    #[arg(long, default_value = "")]
    base: String,
    /// whole set C; empty means the full universe
    #[arg(long, default_value = "")]
    whole: String,
    /// intermediate set for alpha
    #[arg(long, default_value = "")]
    inter: String,
    /// permutation generators for beta (position maps like "1,0,2")
    #[arg(long)]
    perm: Vec<String>,
    #[arg(long, default_value_t = 12)]
    bound: usize,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(value_parser = ["enumerate", "check"])]
    op: String,
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    nprime: usize,
    /// base literals "i,j,eq;i,j,r;i,j,nr"
    #[arg(long, default_value = "")]
    base: String,
    /// packed upper-triangle entries "eq,r,nr,..." for check
    #[arg(long, default_value = "")]
    entries: String,
}

#[derive(Args)]
struct BoolringArgs {
    #[arg(value_parser = ["diamond", "non-atom", "variety"])]
    op: String,
    #[arg(long, default_value_t = 2)]
    atoms: usize,
    #[arg(long)]
    group: String,
    /// atom permutation per non-identity generator name, "name:perm"
    #[arg(long)]
    atom_perm: Vec<String>,
    #[arg(long)]
    gens_i: Option<String>,
    #[arg(long)]
    gens_j: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// element literal for non-atom, e.g. "{1}"
    #[arg(long, default_value = "1")]
    r: String,
    #[arg(long, default_value_t = 1u64 << 20)]
    cap: u64,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(value_parser = ["info", "subgroups", "cosets", "frattini", "supplement"])]
    op: String,
    #[arg(long, default_value = "")]
    group: String,
    /// subgroup members "0,2"
    #[arg(long, default_value = "")]
    members: String,
    #[arg(long, default_value = "")]
    source: String,
    #[arg(long, default_value = "")]
    target: String,
    /// homomorphism images "0,1,0,1"
    #[arg(long, default_value = "")]
    map: String,
}

struct AppError {
    kind: String,
    message: String,
    exit: u8,
}

impl AppError {
    fn domain(kind: &str, message: impl fmt::Display) -> AppError {
        AppError { kind: kind.into(), message: message.to_string(), exit: 1 }
    }
    fn usage(kind: &str, message: impl fmt::Display) -> AppError {
        AppError { kind: kind.into(), message: message.to_string(), exit: 2 }
    }
}

macro_rules! domain {
    ($kind:expr) => {
        |e| AppError::domain($kind, e)
    };
}

fn resolve_group(spec: &str) -> Result<FiniteGroup, AppError> {
    if let Ok(g) = builtin::by_name(spec) {
        return Ok(g);
    }
    #[derive(Deserialize)]
    struct GroupFile {
        order: usize,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| AppError::usage("UnknownGroup", format!("{spec:?} is neither built-in nor readable: {e}")))?;
    let file: GroupFile =
        serde_json::from_str(&text).map_err(|e| AppError::domain("BadGroupFile", e))?;
    let g = FiniteGroup::new(file.names, file.table).map_err(|e| AppError::domain("BadGroupFile", e))?;
    if g.order != file.order {
        return Err(AppError::domain("BadGroupFile", "declared order does not match the table"));
    }
    Ok(g)
}

fn resolve_theory(spec: &str) -> Result<TheoryKind, AppError> {
    TheoryKind::parse(spec)
        .ok_or_else(|| AppError::usage("UnknownTheory", format!("theory must be graph or empty, got {spec:?}")))
}

fn load_model(path: &str) -> Result<GStructure, AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::usage("NoSuchFile", e))?;
    GStructure::from_json(&text).map_err(|e| AppError::domain("BadModelFile", e))
}

fn parse_index_list(s: &str) -> Result<Vec<usize>, AppError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| AppError::usage("BadIndexList", e)))
        .collect()
}

fn parse_index_set(s: &str) -> Result<BTreeSet<usize>, AppError> {
    Ok(parse_index_list(s)?.into_iter().collect())
}

fn parse_formula(text: &str, group: &FiniteGroup) -> Result<Formula, AppError> {
    logic::parse(text, group).map_err(|e| match e {
        LogicError::Syntax { .. } | LogicError::UnknownGroupElement(_) | LogicError::UnboundVariable(_) => {
            AppError::usage("SyntaxError", e)
        }
        other => AppError::domain("FormulaError", other),
    })
}

fn effective_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| std::env::var("GACT_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn write_or_print(path: &Option<String>, content: &str) -> Result<(), AppError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| AppError::domain("WriteFailed", e)),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = effective_seed(cli.seed);
    match run(cli.cmd, seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", json!({"error": err.kind, "message": err.message}));
            ExitCode::from(err.exit)
        }
    }
}

fn run(cmd: Cmd, seed: u64) -> Result<(), AppError> {
    match cmd {
        Cmd::Saturate(args) => {
            let theory = resolve_theory(&args.theory)?;
            let group = resolve_group(&args.group)?;
            let state = SaturationState::new(theory, group);
            let state = match theory {
                TheoryKind::EmptyG => {
                    let mut s = state;
                    for _ in 0..args.rounds {
                        s = saturate_empty(s, args.copies);
                    }
                    s
                }
                TheoryKind::GraphG => saturate_graph(
                    state,
                    &SaturateOptions {
                        rounds: args.rounds,
                        size_cap: args.cap,
                        param_bound: args.param_bound,
                        witness_bound: args.witness_bound,
                    },
                ),
            };
            if let Some(log_path) = &args.log {
                let lines: Vec<String> =
                    state.log.iter().map(|e| serde_json::to_string(e).unwrap()).collect();
                fs::write(log_path, lines.join("\n") + "\n")
                    .map_err(|e| AppError::domain("WriteFailed", e))?;
            }
            write_or_print(&args.out, &state.structure.to_canonical_json())?;
            if state.truncated {
                eprintln!("{}", json!({"warning": "size cap reached, approximation truncated"}));
            }
            Ok(())
        }
        Cmd::Qe(args) => {
            let theory = resolve_theory(&args.theory)?;
            let group = resolve_group(&args.group)?;
            let phi = parse_formula(&args.formula, &group)?;
            let result = logic::qe(&phi, &group, theory).map_err(domain!("QeError"))?;
            let text = format!("{}", FormulaDisplay { formula: &result.output, group: &group });
            if args.json {
                let cert: Vec<serde_json::Value> = result
                    .certificate
                    .iter()
                    .map(|step| {
                        json!({
                            "var": step.var,
                            "configs": step.configs.iter().map(|c| {
                                c.to_triples()
                            }).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "input": args.formula,
                        "output": text,
                        "certificate": cert,
                    })
                );
            } else {
                println!("{text}");
            }
            Ok(())
        }
        Cmd::Decide(args) => {
            let theory = resolve_theory(&args.theory)?;
            let group = resolve_group(&args.group)?;
            let phi = parse_formula(&args.formula, &group)?;
            let value = logic::decide_sentence(theory, &group, &phi).map_err(domain!("DecideError"))?;
            println!("{value}");
            Ok(())
        }
        Cmd::Eval(args) => {
            let m = load_model(&args.model)?;
            let phi = parse_formula(&args.formula, m.group())?;
            let mut asg = Vec::new();
            for part in args.assign.split(',').filter(|p| !p.trim().is_empty()) {
                let (var, val) = part
                    .split_once('=')
                    .ok_or_else(|| AppError::usage("BadAssignment", format!("expected var=index, got {part:?}")))?;
                let idx: usize =
                    val.trim().parse().map_err(|e| AppError::usage("BadAssignment", e))?;
                asg.push((var.trim().to_string(), idx));
            }
            let value = logic::eval(&m, &phi, &asg).map_err(domain!("EvalError"))?;
            println!("{value}");
            Ok(())
        }
        Cmd::Indep(args) => {
            let m = load_model(&args.model)?;
            let a = parse_index_set(&args.a)?;
            let e = parse_index_set(&args.e)?;
            let b = parse_index_set(&args.b)?;
            for &x in a.iter().chain(&e).chain(&b) {
                if x >= m.len() {
                    return Err(AppError::domain("UnknownElement", format!("index {x} out of range")));
                }
            }
            println!("{}", indep(&m, &a, &e, &b));
            Ok(())
        }
        Cmd::IndepAxioms(args) => {
            let theory = resolve_theory(&args.theory)?;
            let group = resolve_group(&args.group)?;
            let relation: Box<dyn IndepRelation> = match args.relation.as_str() {
                "orbit" => Box::new(OrbitIndep),
                "raw-intersection" => Box::new(RawIntersectionIndep),
                other => {
                    return Err(AppError::usage(
                        "UnknownRelation",
                        format!("relation must be orbit or raw-intersection, got {other:?}"),
                    ))
                }
            };
            let cfg = SamplerConfig {
                theory,
                group,
                group_name: args.group.clone(),
                trials: args.trials,
                seed,
            };
            let report = check_axioms(&cfg, relation.as_ref());
            let text = serde_json::to_string_pretty(&report).unwrap();
            write_or_print(&args.report, &text)?;
            Ok(())
        }
        Cmd::IndepAmalgam(args) => {
            let theory = resolve_theory(&args.theory)?;
            let group = resolve_group(&args.group)?;
            let (owned, model, a, b, c1, c2);
            match &args.model {
                Some(path) => {
                    owned = load_model(path)?;
                    model = parse_index_set(&args.model_part)?;
                    a = parse_index_list(&args.a)?;
                    b = parse_index_list(&args.b)?;
                    c1 = parse_index_list(&args.c1)?;
                    c2 = parse_index_list(&args.c2)?;
                }
                None => {
                    let sampled = sample_amalgamation_instance(theory, &group, seed);
                    owned = sampled.0;
                    model = sampled.1;
                    a = sampled.2;
                    b = sampled.3;
                    c1 = sampled.4;
                    c2 = sampled.5;
                }
            }
            let inst = AmalgamationInstance { ambient: &owned, model, a, b, c1, c2, theory };
            let outcome = independence_theorem_check(&inst).map_err(domain!("HypothesisViolated"))?;
            println!(
                "{}",
                json!({
                    "verified": outcome.verified,
                    "c": outcome.c,
                    "amalgam_size": outcome.structure.len(),
                })
            );
            if let Some(path) = &args.out {
                fs::write(path, outcome.structure.to_canonical_json())
                    .map_err(|e| AppError::domain("WriteFailed", e))?;
            }
            Ok(())
        }
        Cmd::Galois(args) => {
            let m = load_model(&args.model)?;
            let base = parse_index_set(&args.base)?;
            let whole: BTreeSet<usize> = if args.whole.trim().is_empty() {
                (0..m.len()).collect()
            } else {
                parse_index_set(&args.whole)?
            };
            let ext = FiniteExtension::new(&m, base, whole)
                .map_err(domain!("GaloisError"))?
                .with_bound(args.bound);
            match args.op.as_str() {
                "aut" => {
                    let aut = galois::aut_group(&ext).map_err(domain!("GaloisError"))?;
                    println!(
                        "{}",
                        json!({
                            "domain": aut.domain,
                            "order": aut.order(),
                            "generators": aut.generators,
                        })
                    );
                }
                "alpha" => {
                    let inter = parse_index_set(&args.inter)?;
                    let stab = galois::alpha(&ext, &inter).map_err(domain!("GaloisError"))?;
                    println!(
                        "{}",
                        json!({"order": stab.order(), "generators": stab.generators})
                    );
                }
                "beta" => {
                    let mut perms = Vec::new();
                    for p in &args.perm {
                        perms.push(parse_index_list(p)?);
                    }
                    let aut = galois::aut_group(&ext).map_err(domain!("GaloisError"))?;
                    let mut elements = perms;
                    elements.push((0..aut.domain.len()).collect());
                    // close the listed generators so any generating set works
                    let h = {
                        let mut closed: BTreeSet<Vec<usize>> = elements.iter().cloned().collect();
                        let mut frontier: Vec<Vec<usize>> = closed.iter().cloned().collect();
                        while let Some(p) = frontier.pop() {
                            for q in closed.clone() {
                                let comp: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                                if closed.insert(comp.clone()) {
                                    frontier.push(comp);
                                }
                            }
                        }
                        PermGroup::from_elements(aut.domain.clone(), closed.into_iter().collect())
                    };
                    let fixed = galois::beta(&ext, &h).map_err(domain!("GaloisError"))?;
                    println!("{}", json!({"fixed": fixed}));
                }
                "check" => {
                    let report = galois::galois_connection_check(&ext).map_err(domain!("GaloisError"))?;
                    println!(
                        "{}",
                        json!({
                            "connection_laws": report.aba_holds && report.bab_holds,
                            "alpha_beta_alpha": report.aba_holds,
                            "beta_alpha_beta": report.bab_holds,
                            "full_correspondence": report.full_correspondence,
                            "intermediates_checked": report.intermediates_checked,
                            "subgroups_checked": report.subgroups_checked,
                        })
                    );
                }
                _ => unreachable!(),
            }
            Ok(())
        }
        Cmd::Config(args) => {
            let group = resolve_group(&args.group)?;
            let terms = TermSet::new(group, args.n, args.nprime);
            let mut base = Vec::new();
            for part in args.base.split(';').filter(|p| !p.trim().is_empty()) {
                let bits: Vec<&str> = part.split(',').map(|s| s.trim()).collect();
                if bits.len() != 3 {
                    return Err(AppError::usage("BadBase", format!("expected i,j,entry got {part:?}")));
                }
                let i: usize = bits[0].parse().map_err(|e| AppError::usage("BadBase", e))?;
                let j: usize = bits[1].parse().map_err(|e| AppError::usage("BadBase", e))?;
                let entry = Entry::parse(bits[2])
                    .ok_or_else(|| AppError::usage("BadBase", format!("unknown entry {:?}", bits[2])))?;
                base.push((i, j, entry));
            }
            match args.op.as_str() {
                "enumerate" => {
                    let configs =
                        config::enumerate_extensions(&base, &terms).map_err(domain!("ConfigError"))?;
                    let out: Vec<_> = configs.iter().map(|c| c.to_triples()).collect();
                    println!("{}", serde_json::to_string(&out).unwrap());
                }
                "check" => {
                    let entries: Result<Vec<Entry>, AppError> = args
                        .entries
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| {
                            Entry::parse(p.trim()).ok_or_else(|| {
                                AppError::usage("BadEntries", format!("unknown entry {p:?}"))
                            })
                        })
                        .collect();
                    let q = config::Configuration::from_entries(terms, entries?)
                        .map_err(domain!("ConfigError"))?;
                    let report = config::is_consistent(&q);
                    println!(
                        "{}",
                        json!({
                            "consistent": report.consistent,
                            "violation": report.violation,
                            "witness_size": report.witness.as_ref().map(|w| w.len()),
                        })
                    );
                }
                _ => unreachable!(),
            }
            Ok(())
        }
        Cmd::Boolring(args) => {
            let group = resolve_group(&args.group)?;
            let mut atom_action: Vec<Vec<usize>> = vec![(0..args.atoms).collect(); group.order];
            for spec in &args.atom_perm {
                let (name, perm) = spec
                    .split_once(':')
                    .ok_or_else(|| AppError::usage("BadAtomPerm", format!("expected name:perm, got {spec:?}")))?;
                let g = group
                    .element_index(name.trim())
                    .ok_or_else(|| AppError::usage("BadAtomPerm", format!("unknown element {name:?}")))?;
                atom_action[g] = parse_index_list(perm)?;
            }
            let names = (1..=args.atoms).map(|i| i.to_string()).collect();
            let ring =
                BooleanRing::new(names, group.clone(), atom_action).map_err(domain!("RingError"))?;
            let load_gens = |path: &Option<String>| -> Result<TransformalIdeal, AppError> {
                let path = path
                    .as_ref()
                    .ok_or_else(|| AppError::usage("MissingIdeal", "generator file required"))?;
                let text = fs::read_to_string(path).map_err(|e| AppError::usage("NoSuchFile", e))?;
                let mut gens = Vec::new();
                for line in text.lines().filter(|l| !l.trim().is_empty()) {
                    gens.push(
                        boolring::parse_poly(&ring, group.order, args.n, line)
                            .map_err(domain!("PolyError"))?,
                    );
                }
                Ok(TransformalIdeal::new(gens))
            };
            match args.op.as_str() {
                "diamond" => {
                    let ideal_i = load_gens(&args.gens_i)?;
                    let ideal_j = load_gens(&args.gens_j)?;
                    let witness =
                        boolring::check_diamond_axiom(&ring, &ideal_i, &ideal_j, args.n, args.cap as u128)
                            .map_err(domain!("DiamondError"))?;
                    match witness {
                        Some(r) => {
                            let shown: Vec<String> =
                                r.iter().map(|&x| ring.elem_to_string(x)).collect();
                            println!("{}", json!({"witness": shown}));
                        }
                        None => println!("{}", json!({"witness": null})),
                    }
                }
                "variety" => {
                    let ideal = load_gens(&args.gens_i)?;
                    let points = boolring::variety_points(&ring, &ideal, args.n, args.cap as u128)
                        .map_err(domain!("VarietyError"))?;
                    let shown: Vec<Vec<String>> = points
                        .iter()
                        .map(|r| r.iter().map(|&x| ring.elem_to_string(x)).collect())
                        .collect();
                    println!("{}", serde_json::to_string(&shown).unwrap());
                }
                "non-atom" => {
                    let r = ring.parse_elem(&args.r).map_err(domain!("PolyError"))?;
                    let w = boolring::find_non_atom_witness(&ring, r).map_err(domain!("WitnessError"))?;
                    println!(
                        "{}",
                        json!({
                            "extended_atoms": w.extended.atom_names,
                            "r_image": w.extended.elem_to_string(w.r_image),
                            "y": w.extended.elem_to_string(w.y),
                        })
                    );
                }
                _ => unreachable!(),
            }
            Ok(())
        }
        Cmd::Group(args) => {
            match args.op.as_str() {
                "info" => {
                    let g = resolve_group(&args.group)?;
                    println!(
                        "{}",
                        json!({
                            "order": g.order,
                            "names": g.names,
                            "table": g.table,
                            "identity": g.identity,
                        })
                    );
                }
                "subgroups" => {
                    let g = resolve_group(&args.group)?;
                    let subs: Vec<Vec<usize>> =
                        g.subgroups().into_iter().map(|s| s.members).collect();
                    println!("{}", json!({"count": subs.len(), "subgroups": subs}));
                }
                "cosets" => {
                    let g = resolve_group(&args.group)?;
                    let members = parse_index_list(&args.members)?;
                    let h = g.subgroup(&members).map_err(domain!("GroupError"))?;
                    println!("{}", serde_json::to_string(&g.cosets(&h)).unwrap());
                }
                "frattini" => {
                    let source = resolve_group(&args.source)?;
                    let target = resolve_group(&args.target)?;
                    let map = parse_index_list(&args.map)?;
                    let hom =
                        GroupHom::new(source, target, map).map_err(domain!("GroupError"))?;
                    let result = gact::group::is_frattini_cover(&hom).map_err(domain!("GroupError"))?;
                    println!("{result}");
                }
                "supplement" => {
                    let g = resolve_group(&args.group)?;
                    let members = parse_index_list(&args.members)?;
                    let n = g.subgroup(&members).map_err(domain!("GroupError"))?;
                    let supp = g.exists_proper_supplement(&n).map_err(domain!("GroupError"))?;
                    println!("{}", json!({"supplement": supp.map(|s| s.members)}));
                }
                _ => unreachable!(),
            }
            Ok(())
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use khm_core::aut_search::{full_aut_group, AutSearchOptions, FullAutGroup};
use khm_core::catalog::{catalog, entry};
use khm_core::conjectures::conjecture_report;
use khm_core::constructions::{constructed_subgroup, induced_action_report, DEFAULT_CAP};
use khm_core::formats::{parse_blocks, parse_matrix, write_blocks, write_matrix};
use khm_core::khm_search::{search, CFilters, SearchLimits, SearchSpec, SearchStop};
use khm_core::kimura::{assemble, decompose, verify_blocks, KimuraBlocks};
use khm_core::matrix::SignMatrix;
use khm_core::shinoda_yamada::{is_admissible, sy_elements};
use khm_core::KhmError;

#[derive(Parser)]
#[command(name = "khm", version, about = "Kimura Hadamard matrices and their automorphism groups")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble a matrix from four group-ring elements.
    Build(BuildArgs),
    /// Check a matrix or blocks file, or `catalog:ID`.
    Verify { source: String },
    /// Automorphism group, constructed subgroup or full search.
    Auts(AutsArgs),
    /// Shinoda–Yamada elements for an admissible prime.
    Sy {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive block search.
    Search(SearchArgs),
    /// Conjecture checks on the full automorphism group.
    Conjectures {
        source: String,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// The embedded examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    c: String,
    #[arg(long)]
    d: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AutsArgs {
    source: String,
    #[arg(long, conflicts_with = "full")]
    constructed: bool,
    #[arg(long)]
    full: bool,
    /// Seconds.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    y_invariant: bool,
    /// Conditions to impose, e.g. `--c 1,2,5`.
    #[arg(long, value_delimiter = ',')]
    c: Vec<usize>,
    #[arg(long)]
    cap: Option<u64>,
    /// Seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Allow k ≥ 7 and unrestricted k = 5.
    #[arg(long)]
    force: bool,
    /// Directory for one blocks file per result and a verification summary.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get { id: String },
}

/// Failure with a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<KhmError> for Failure {
    fn from(e: KhmError) -> Self {
        let code = match e {
            KhmError::Parse { .. }
            | KhmError::NotSignMatrix { .. }
            | KhmError::NotBinary { .. }
            | KhmError::DimensionMismatch(_) => 4,
            KhmError::TimeBudgetExceeded { .. }
            | KhmError::SearchBudgetExceeded
            | KhmError::NodeCapExceeded { .. }
            | KhmError::CapExceeded { .. } => 3,
            KhmError::NotAdmissible { .. }
            | KhmError::NotKimuraForm(_)
            | KhmError::NotDihedralType { .. }
            | KhmError::HypothesisViolated(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

struct Source {
    k: usize,
    h: SignMatrix,
    blocks: Option<KimuraBlocks>,
}

fn load(source: &str) -> Result<Source, Failure> {
    if let Some(id) = source.strip_prefix("catalog:") {
        let e = entry(id)?;
        let blocks = e.blocks()?;
        return Ok(Source { k: e.k, h: assemble(&blocks), blocks: Some(blocks) });
    }
    let text = fs::read_to_string(source)?;
    if text.starts_with("KHM") {
        let (k, h) = parse_matrix(&text)?;
        let blocks = if k > 0 { Some(decompose(&h, k)?) } else { None };
        Ok(Source { k, h, blocks })
    } else {
        let blocks = parse_blocks(&text)?;
        Ok(Source { k: blocks.k(), h: assemble(&blocks), blocks: Some(blocks) })
    }
}

fn seconds(budget: Option<f64>) -> Result<Option<Duration>, Failure> {
    match budget {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure { code: 4, message: format!("budget must be positive, got {s}") }),
    }
}

fn blocks_json(b: &KimuraBlocks) -> Value {
    let [a, bb, c, d] = b.elements().map(|w| w.to_grammar().unwrap_or_default());
    json!({ "k": b.k(), "a": a, "b": bb, "c": c, "d": d })
}

fn emit(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_build(args: &BuildArgs, json_mode: bool) -> CmdResult {
    let blocks = KimuraBlocks::parse(args.k, &args.a, &args.b, &args.c, &args.d)?;
    let h = assemble(&blocks);
    fs::write(&args.out, write_matrix(&h, args.k))?;
    let hadamard = h.is_hadamard();
    let value = json!({ "out": args.out, "n": h.rows(), "is_hadamard": hadamard });
    emit(json_mode, &value, || format!("wrote {} ({}x{}), hadamard: {hadamard}\n", args.out.display(), h.rows(), h.rows()));
    Ok(0)
}

fn cmd_verify(source: &str, json_mode: bool) -> CmdResult {
    let src = match load(source) {
        Err(f) if f.code == 2 => {
            let value = json!({ "source": source, "pass": false, "error": f.message });
            emit(json_mode, &value, || format!("FAIL {}\n", f.message));
            return Ok(2);
        }
        other => other?,
    };
    let (pass, value, text) = match &src.blocks {
        Some(blocks) => {
            let report = verify_blocks(blocks);
            let pass = report.all_pass();
            let text = format!(
                "k={} n={}\nhadamard: {}\nequations: {} / {}\nNC1-NC4: {:?}\nbounds: {}\nC1-C5: {:?}\ny-invariant: {}\n{}\n",
                report.k,
                report.n,
                report.is_hadamard,
                report.eq1_ok,
                report.eq12_ok,
                report.nc_flags,
                report.bound_flags,
                report.c_flags,
                report.y_invariant,
                if pass { "PASS" } else { "FAIL" }
            );
            (pass, json!({ "source": source, "pass": pass, "report": to_value(&report) }), text)
        }
        None => {
            let pass = src.h.is_hadamard();
            let text = format!("n={}\nhadamard: {pass}\n{}\n", src.h.rows(), if pass { "PASS" } else { "FAIL" });
            (pass, json!({ "source": source, "pass": pass, "n": src.h.rows(), "is_hadamard": pass }), text)
        }
    };
    emit(json_mode, &value, || text);
    Ok(if pass { 0 } else { 2 })
}

fn run_full(h: &SignMatrix, budget: Option<f64>) -> Result<FullAutGroup, KhmError> {
    let mut options = AutSearchOptions::default();
    if let Some(b) = seconds(budget).map_err(|f| KhmError::UnsupportedParameter(f.message))? {
        options.time_budget = Some(b);
    }
    full_aut_group(h, &options)
}

fn cmd_auts(args: &AutsArgs, json_mode: bool) -> CmdResult {
    let src = load(&args.source)?;
    if !args.full {
        let blocks = src.blocks.as_ref().ok_or_else(|| Failure {
            code: 2,
            message: "the constructed subgroup needs a matrix in Kimura form".into(),
        })?;
        let report = constructed_subgroup(&src.h, blocks, DEFAULT_CAP)?.report();
        let value = json!({ "source": args.source, "mode": "constructed", "report": to_value(&report) });
        emit(json_mode, &value, || {
            let mut s = format!("constructed subgroup order {}\n", report.subgroup_order);
            for g in &report.generators {
                s.push_str(&format!("  {:?}: order {}, strong {}\n", g.tag, g.order, g.strong));
            }
            s
        });
        return Ok(0);
    }
    let (group, code) = match run_full(&src.h, args.budget) {
        Ok(g) => (g, 0),
        Err(KhmError::TimeBudgetExceeded { partial }) => (*partial, 3),
        Err(e) => return Err(e.into()),
    };
    let fingerprint = group.group.fingerprint();
    let induced = if src.k > 0 { Some(induced_action_report(&group.group, src.k)?) } else { None };
    let value = json!({
        "source": args.source,
        "mode": "full",
        "complete": group.complete,
        "order": group.group.order(),
        "basic_orbit_sizes": group.basic_orbit_sizes,
        "fingerprint": to_value(&fingerprint),
        "induced_action": induced.as_ref().map(to_value),
    });
    emit(json_mode, &value, || {
        let mut s = format!(
            "{} order {}\nbasic orbits {:?}\nfingerprint {:?}\n",
            if group.complete { "full group" } else { "partial group (budget exhausted)" },
            group.group.order(),
            group.basic_orbit_sizes,
            fingerprint.tuple()
        );
        if let Some(r) = &induced {
            s.push_str(&format!("row orbits {:?}\n", r.orbit_sizes()));
        }
        s
    });
    Ok(code)
}

fn cmd_sy(p: u64, out: Option<&Path>, json_mode: bool) -> CmdResult {
    let adm = is_admissible(p);
    if !adm.admissible {
        return Err(KhmError::NotAdmissible { p, reason: adm.reason.unwrap_or_default() }.into());
    }
    let sy = sy_elements(p)?;
    let h = assemble(&sy.blocks);
    if let Some(path) = out {
        fs::write(path, write_matrix(&h, p as usize))?;
    }
    let value = json!({
        "p": p,
        "q": sy.q,
        "field": { "characteristic": sy.field_characteristic, "degree": sy.field_degree, "modulus": sy.modulus },
        "normalization": to_value(&sy.normalization),
        "blocks": blocks_json(&sy.blocks),
        "n": h.rows(),
        "is_hadamard": h.is_hadamard(),
    });
    emit(json_mode, &value, || format!("q = {}\n{}", sy.q, write_blocks(&sy.blocks)));
    Ok(0)
}

fn cmd_search(args: &SearchArgs, json_mode: bool) -> CmdResult {
    let mut spec = SearchSpec::new(args.k);
    spec.require_y_invariant = args.y_invariant;
    spec.c_filters = CFilters::from_list(&args.c)?;
    spec.force = args.force;
    spec.limits = SearchLimits { node_cap: args.cap, time_budget: seconds(args.budget)? };
    let outcome = search(&spec)?;
    let mut results = outcome.results.clone();
    results.sort_by_cached_key(write_blocks);
    let reports: Vec<Value> = results
        .iter()
        .map(|b| {
            let r = verify_blocks(b);
            json!({ "blocks": blocks_json(b), "pass": r.all_pass(), "profile": to_value(&r.profile), "c_flags": r.c_flags, "y_invariant": r.y_invariant })
        })
        .collect();
    let stopped = outcome.stopped.map(|s| match s {
        SearchStop::NodeCap => "node_cap",
        SearchStop::TimeBudget => "time_budget",
    });
    let value = json!({
        "k": args.k,
        "complete": outcome.is_complete(),
        "stopped": stopped,
        "profiles_tried": outcome.profiles_tried,
        "count": results.len(),
        "results": reports,
    });
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        for (i, b) in results.iter().enumerate() {
            fs::write(dir.join(format!("k{}_{:04}.blocks", args.k, i)), write_blocks(b))?;
        }
        fs::write(dir.join("verification.json"), serde_json::to_string_pretty(&value).expect("serializable"))?;
    }
    emit(json_mode, &value, || {
        let mut s = format!(
            "{} results over {} profiles{}\n",
            results.len(),
            outcome.profiles_tried,
            stopped.map(|r| format!(" (stopped: {r})")).unwrap_or_default()
        );
        for b in &results {
            s.push_str(&write_blocks(b).replace('\n', " "));
            s.push('\n');
        }
        s
    });
    Ok(if outcome.is_complete() { 0 } else { 3 })
}

fn cmd_conjectures(source: &str, budget: Option<f64>, json_mode: bool) -> CmdResult {
    let src = load(source)?;
    if src.k == 0 {
        return Err(Failure { code: 2, message: "conjectures need a matrix in Kimura form".into() });
    }
    let group = run_full(&src.h, budget)?;
    let report = conjecture_report(&group.group, src.k);
    for v in &report.violations {
        eprintln!("CONJECTURE VIOLATION: {v}");
    }
    let value = json!({ "source": source, "holds": report.holds(), "report": to_value(&report) });
    emit(json_mode, &value, || {
        let f = &report.factorization;
        format!(
            "|Aut| = {} = 2^{} * 3^{} * {}{}\nprime divisors {:?}\nblock monomial: {}\n{}\n",
            report.order,
            f.r,
            f.s,
            report.k,
            if f.cofactor != 1 { format!(" * {}", f.cofactor) } else { String::new() },
            report.prime_divisors,
            report.block_monomial_all,
            if report.holds() { "all conjectures hold" } else { "VIOLATIONS FOUND" }
        )
    });
    Ok(0)
}

fn cmd_catalog(action: &CatalogAction, json_mode: bool) -> CmdResult {
    match action {
        CatalogAction::List => {
            let value = to_value(&catalog());
            emit(json_mode, &value, || {
                catalog()
                    .iter()
                    .map(|e| format!("{:<5} k={:<3} |Aut|={:<5} {}\n", e.id, e.k, e.expected_aut_order, e.source))
                    .collect()
            });
        }
        CatalogAction::Get { id } => {
            let e = entry(id)?;
            let value = to_value(e);
            emit(json_mode, &value, || {
                format!(
                    "{} ({})\nexpected |Aut| = {}\ny-invariant: {}\n{}",
                    e.id,
                    e.source,
                    e.expected_aut_order,
                    e.y_invariant,
                    e.blocks().map(|b| write_blocks(&b)).unwrap_or_default()
                )
            });
        }
    }
    Ok(0)
}

fn init_threads() {
    if let Some(n) = std::env::var("KHM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let json_mode = cli.json;
    let result = match &cli.command {
        Command::Build(args) => cmd_build(args, json_mode),
        Command::Verify { source } => cmd_verify(source, json_mode),
        Command::Auts(args) => cmd_auts(args, json_mode),
        Command::Sy { p, out } => cmd_sy(*p, out.as_deref(), json_mode),
        Command::Search(args) => cmd_search(args, json_mode),
        Command::Conjectures { source, budget } => cmd_conjectures(source, *budget, json_mode),
        Command::Catalog { action } => cmd_catalog(action, json_mode),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json_mode {
                println!("{}", json!({ "error": f.message, "exit_code": f.code }));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

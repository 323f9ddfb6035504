use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::{json, Value};
use thiserror::Error;
use weak_delta::bounds::{
    delta_bound_chain, eg_bound, es_lower, kr_lower, slice_base, slice_size_exact, slice_sunflower_bound,
    sunflower_base, weak_delta_base, BoundReport, CapacityEstimate,
};
use weak_delta::reductions::{find_dense_translate, lift, project, weight_slices, xor_translate};
use weak_delta::search::{
    build_instance_with_cap, capset_number, cube, max_free, slice, ternary_space, DensityReport, SearchConfig,
    SearchResult, SearchStatus,
};
use weak_delta::structures::{find_violation, is_free};
use weak_delta::{parse_family, AnyFamily, BinaryFamily, BinaryVector, Family, Point, StructureKind};

use crate::cache::{sha256_hex, Cache, CacheKey, Miss, DEFAULT_DIR};
use crate::cli::{Cli, Command, GlobalOpts, GroundSpec, Transform};
use crate::report::*;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FOUND: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_TIMEOUT: u8 = 3;

/// Largest `n` accepted by `bounds`; `binomial(n, n/3)` must fit in 128 bits.
const BOUNDS_MAX_N: u32 = 120;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Core(#[from] weak_delta::Error),
    #[error("{0}")]
    Usage(String),
}

pub struct Outcome {
    pub report: RunReport,
    pub human: String,
    pub exit: u8,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file, kind } => check(file, *kind),
        Command::Search { ground, kind, no_cache } => search(g, ground, *kind, *no_cache),
        Command::Bounds { n_min, n_max, kr_c } => bounds(g, *n_min, *n_max, *kr_c),
        Command::Lift(t) => lift_cmd(t),
        Command::Project(t) => project_cmd(t),
        Command::Slice(t) => slice_cmd(t),
        Command::Translate { io, by, toward } => translate_cmd(io, by.as_deref(), toward.as_deref()),
    }
}

fn read_family(path: &Path) -> Result<AnyFamily, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    parse_family(&text).map_err(|e| match e {
        weak_delta::Error::Parse { line, column, message } => CliError::Parse { path: shown, line, column, message },
        other => CliError::Core(other),
    })
}

fn read_binary(path: &Path) -> Result<BinaryFamily, CliError> {
    match read_family(path)? {
        AnyFamily::Binary(f) => Ok(f),
        AnyFamily::Ternary(_) => Err(CliError::Usage(format!("{}: expected a binary family", path.display()))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn path_value(p: Option<&Path>) -> Value {
    p.map_or(Value::Null, |p| json!(p.display().to_string()))
}

fn check(file: &Path, kind: StructureKind) -> Result<Outcome, CliError> {
    let family = read_family(file)?;
    let (size, cert) = match &family {
        AnyFamily::Binary(f) => (f.len(), find_violation(f, kind)?.map(|c| CertificatePayload::from(&c))),
        AnyFamily::Ternary(f) => (f.len(), find_violation(f, kind)?.map(|c| CertificatePayload::from(&c))),
    };
    let mut human = String::new();
    match &cert {
        None => writeln!(human, "free: {size} members, no {kind} triple").unwrap(),
        Some(c) => {
            writeln!(human, "violation: {kind}").unwrap();
            for row in &c.triple {
                writeln!(human, "  {row}").unwrap();
            }
            let evidence = match &c.evidence {
                EvidencePayload::CommonIntersection(s) => format!("common intersection size {s}"),
                EvidencePayload::CommonDistance(d) => format!("common distance {d}"),
                EvidencePayload::SunflowerCore(core) => format!("core {core}"),
                EvidencePayload::LineTrace(t) => format!("coordinate trace {t}"),
            };
            writeln!(human, "  {evidence}").unwrap();
        }
    }
    let exit = if cert.is_some() { EXIT_FOUND } else { EXIT_OK };
    let payload = CheckPayload { free: cert.is_none(), size, certificate: cert };
    let report = RunReport::new(
        "check",
        inputs(&[("file", json!(file.display().to_string())), ("kind", json!(kind.name()))]),
        to_value(&payload),
    );
    Ok(Outcome { report, human, exit })
}

enum Ground {
    Binary(BinaryFamily),
    Ternary(weak_delta::TernaryFamily),
}

impl Ground {
    fn load(spec: &GroundSpec) -> Result<(Ground, String), CliError> {
        Ok(match spec {
            GroundSpec::Cube(n) => (Ground::Binary(cube(*n)?), spec.to_string()),
            GroundSpec::Slice(n, k) => (Ground::Binary(slice(*n, *k)?), spec.to_string()),
            GroundSpec::Ternary(n) => (Ground::Ternary(ternary_space(*n)?), spec.to_string()),
            GroundSpec::File(path) => {
                let family = read_family(path)?.canonical();
                let descriptor = format!("file:{}", sha256_hex(family.to_fam().as_bytes()));
                let ground = match family {
                    AnyFamily::Binary(f) => Ground::Binary(f),
                    AnyFamily::Ternary(f) => Ground::Ternary(f),
                };
                (ground, descriptor)
            }
        })
    }

    fn dim(&self) -> usize {
        match self {
            Ground::Binary(f) => f.dim(),
            Ground::Ternary(f) => f.dim(),
        }
    }
}

fn search_config(g: &GlobalOpts) -> Result<SearchConfig, CliError> {
    let workers = if g.canonical {
        1
    } else {
        g.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    };
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let mut config = SearchConfig::with_workers(workers);
    if let Some(secs) = g.timeout_sec {
        let t =
            Duration::try_from_secs_f64(secs).map_err(|_| CliError::Usage(format!("invalid --timeout-sec {secs}")))?;
        config = config.timeout(t);
    }
    Ok(config)
}

fn search_payload<V: Point>(
    spec: &GroundSpec,
    ground: &Family<V>,
    kind: StructureKind,
    r: &SearchResult<V>,
) -> Result<SearchPayload, CliError> {
    let (n, k) = match spec {
        GroundSpec::Slice(n, k) => (*n, Some(*k)),
        _ => (ground.dim(), None),
    };
    let density = if kind == StructureKind::Equilateral && !ground.is_empty() {
        let d = DensityReport::new(ground.len(), r.extremal_size, r.status)?;
        Some(DensityPayload { numer: *d.delta.numer(), denom: *d.delta.denom(), decimal: d.decimal() })
    } else {
        None
    };
    Ok(SearchPayload {
        ground: spec.to_string(),
        kind: kind.name().into(),
        n,
        k,
        ground_size: ground.len(),
        extremal_size: r.extremal_size,
        status: match r.status {
            SearchStatus::Optimal => "optimal".into(),
            SearchStatus::TimedOut => "timeout".into(),
        },
        nodes_explored: r.nodes_explored,
        witness: r.witness.rows(),
        density,
    })
}

/// Checks a cached payload from scratch: the witness must parse, lie in
/// the ground set, have the claimed size and contain no violation.
fn verify_cached<V: Point>(ground: &Family<V>, kind: StructureKind, p: &SearchPayload) -> Result<(), String> {
    if p.kind != kind.name() || p.status != "optimal" {
        return Err("entry does not describe an optimal search of this kind".into());
    }
    if p.ground_size != ground.len() {
        return Err("ground size differs".into());
    }
    let witness = Family::<V>::from_rows(ground.dim(), &p.witness).map_err(|e| e.to_string())?;
    if witness.len() != p.extremal_size {
        return Err("witness size differs from the recorded extremal size".into());
    }
    if !witness.is_subset_of(ground) {
        return Err("witness leaves the ground set".into());
    }
    match is_free(&witness, kind) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("witness contains a {kind} triple")),
        Err(e) => Err(e.to_string()),
    }
}

fn solve<V: Point>(
    ground: &Family<V>,
    kind: StructureKind,
    config: &SearchConfig,
) -> Result<SearchResult<V>, CliError> {
    let instance = build_instance_with_cap(ground, kind, config.ground_cap)?;
    Ok(max_free(&instance, config)?)
}

fn search(g: &GlobalOpts, spec: &GroundSpec, kind: StructureKind, no_cache: bool) -> Result<Outcome, CliError> {
    let config = search_config(g)?;
    let (ground, descriptor) = Ground::load(spec)?;
    let key = CacheKey {
        kind: kind.name().into(),
        ground: descriptor,
        n: ground.dim(),
        k: match spec {
            GroundSpec::Slice(_, k) => Some(*k),
            _ => None,
        },
    };
    let report_inputs = inputs(&[
        ("ground", json!(spec.to_string())),
        ("kind", json!(kind.name())),
        ("n", json!(key.n)),
        ("k", json!(key.k)),
        ("workers", json!(config.workers)),
        ("canonical", json!(g.canonical)),
        ("timeout_sec", json!(g.timeout_sec)),
    ]);
    let cache = Cache::new(g.cache_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_DIR)));

    if !no_cache {
        match cache.load(&key) {
            Ok(cached) => {
                let checked = serde_json::from_value::<SearchPayload>(cached.result.clone())
                    .map_err(|e| e.to_string())
                    .and_then(|p| {
                        match &ground {
                            Ground::Binary(f) => verify_cached(f, kind, &p),
                            Ground::Ternary(f) => verify_cached(f, kind, &p),
                        }
                        .map(|_| p)
                    });
                match checked {
                    Ok(_) if g.canonical && !cached.deterministic => {
                        eprintln!("cache: entry is not canonical; recomputing");
                    }
                    Ok(mut payload) => {
                        // Same problem, possibly a different spelling of the ground.
                        payload.ground = spec.to_string();
                        let mut report = RunReport::new("search", report_inputs, to_value(&payload));
                        report.deterministic = cached.deterministic;
                        report.cache = true;
                        return Ok(Outcome { human: search_human(&payload, &report), report, exit: EXIT_OK });
                    }
                    Err(why) => eprintln!("cache: discarding {}: {why}", cache.path_for(&key).display()),
                }
            }
            Err(Miss::Corrupted(why)) => eprintln!("cache: discarding {}: {why}", cache.path_for(&key).display()),
            Err(Miss::Absent) => {}
        }
    }

    let (payload, deterministic) = match (&ground, spec, kind) {
        (Ground::Ternary(f), GroundSpec::Ternary(n), StructureKind::CapsetLine) => {
            let r = capset_number(*n, &config)?;
            (search_payload(spec, f, kind, &r)?, r.deterministic)
        }
        (Ground::Binary(f), _, _) => {
            let r = solve(f, kind, &config)?;
            (search_payload(spec, f, kind, &r)?, r.deterministic)
        }
        (Ground::Ternary(f), _, _) => {
            let r = solve(f, kind, &config)?;
            (search_payload(spec, f, kind, &r)?, r.deterministic)
        }
    };
    let mut report = RunReport::new("search", report_inputs, to_value(&payload));
    report.deterministic = deterministic;
    let timed_out = payload.status != "optimal";
    if !no_cache && !timed_out {
        if let Err(e) = cache.store(&key, &report) {
            eprintln!("cache: could not write to {}: {e}", cache.dir().display());
        }
    }
    let exit = if timed_out { EXIT_TIMEOUT } else { EXIT_OK };
    Ok(Outcome { human: search_human(&payload, &report), report, exit })
}

fn search_human(p: &SearchPayload, report: &RunReport) -> String {
    let mut s = String::new();
    let status = if p.status == "optimal" { "optimal" } else { "timeout (lower bound)" };
    writeln!(s, "ground         {} ({} points)", p.ground, p.ground_size).unwrap();
    writeln!(s, "kind           {}", p.kind).unwrap();
    writeln!(s, "extremal size  {}", p.extremal_size).unwrap();
    writeln!(s, "status         {status}").unwrap();
    writeln!(s, "nodes          {}", p.nodes_explored).unwrap();
    if let Some(d) = &p.density {
        writeln!(s, "density        {}/{} = {:.6}", d.numer, d.denom, d.decimal).unwrap();
    }
    writeln!(s, "deterministic  {}", report.deterministic).unwrap();
    writeln!(s, "cache          {}", if report.cache { "hit" } else { "miss" }).unwrap();
    writeln!(s, "witness").unwrap();
    for row in &p.witness {
        writeln!(s, "  {row}").unwrap();
    }
    s
}

fn bounds(g: &GlobalOpts, n_min: u32, n_max: u32, kr_c: Option<f64>) -> Result<Outcome, CliError> {
    if n_min == 0 || n_min > n_max || n_max > BOUNDS_MAX_N {
        return Err(CliError::Usage(format!("need 1 <= --n-min <= --n-max <= {BOUNDS_MAX_N}")));
    }
    let cap = match g.theta {
        Some(t) => CapacityEstimate::with_override(t)?,
        None => CapacityEstimate::ellenberg_gijswijt(),
    };
    let constants: Vec<BoundReport> = vec![eg_bound(), sunflower_base(), weak_delta_base(&cap)?, slice_base()];
    let mut chain = Vec::new();
    for n in n_min..=n_max {
        let report = delta_bound_chain(n, &cap)?;
        let k = n / 3;
        chain.push(ChainRow {
            n,
            k,
            slice_size: slice_size_exact(n, k)? as f64,
            slice_bound: slice_sunflower_bound(n, k, &cap)?.value,
            density_bound: report.inputs["density_bound"],
            size_bound: report.value,
            cube_size: 2f64.powi(n as i32),
            es_lower: if n >= 3 { Some(es_lower(f64::from(n))?) } else { None },
            kr_lower: match kr_c {
                Some(c) => Some(kr_lower(f64::from(n), 3.0, c)?),
                None => None,
            },
        });
    }

    let mut human = String::new();
    for c in &constants {
        writeln!(human, "{c}").unwrap();
    }
    writeln!(human).unwrap();
    write!(
        human,
        "{:>4} {:>4} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14}",
        "n", "k", "|B_k|", "slice bound", "density bound", "size bound", "2^n", "es_lower"
    )
    .unwrap();
    if kr_c.is_some() {
        write!(human, " {:>14}", "kr_lower k=3").unwrap();
    }
    writeln!(human).unwrap();
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"));
    for r in &chain {
        write!(
            human,
            "{:>4} {:>4} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14}",
            r.n,
            r.k,
            r.slice_size,
            r.slice_bound,
            r.density_bound,
            r.size_bound,
            r.cube_size,
            opt(r.es_lower)
        )
        .unwrap();
        if kr_c.is_some() {
            write!(human, " {:>14}", opt(r.kr_lower)).unwrap();
        }
        writeln!(human).unwrap();
    }
    writeln!(human, "k = floor(n/3); logarithms are natural").unwrap();

    let payload = BoundsPayload { constants: constants.iter().map(BoundPayload::from).collect(), chain };
    let report = RunReport::new(
        "bounds",
        inputs(&[("n_min", json!(n_min)), ("n_max", json!(n_max)), ("theta", json!(g.theta)), ("kr_c", json!(kr_c))]),
        to_value(&payload),
    );
    Ok(Outcome { report, human, exit: EXIT_OK })
}

fn family_payload(f: &AnyFamily) -> FamilyPayload {
    let (alphabet, rows) = match f {
        AnyFamily::Binary(f) => ("binary", f.rows()),
        AnyFamily::Ternary(f) => ("ternary", f.rows()),
    };
    FamilyPayload { alphabet: alphabet.into(), n: f.dim(), size: f.len(), rows }
}

/// Writes `family` to `-o` if given; otherwise it becomes the human output,
/// after `notes` rendered as `.fam` comments.
fn emit(
    command: &str,
    io: &Transform,
    family: &AnyFamily,
    notes: &[String],
    extra: &[(&str, Value)],
    result: Value,
) -> Result<Outcome, CliError> {
    let fam = family.canonical().to_fam();
    let mut human = String::new();
    for note in notes {
        writeln!(human, "# {note}").unwrap();
    }
    match &io.output {
        Some(path) => {
            write_file(path, &fam)?;
            writeln!(human, "# wrote {} members to {}", family.len(), path.display()).unwrap();
        }
        None => human.push_str(&fam),
    }
    let mut all = vec![("file", json!(io.file.display().to_string())), ("output", path_value(io.output.as_deref()))];
    all.extend(extra.iter().cloned());
    let report = RunReport::new(command, inputs(&all), result);
    Ok(Outcome { report, human, exit: EXIT_OK })
}

fn lift_cmd(io: &Transform) -> Result<Outcome, CliError> {
    let a = read_binary(&io.file)?;
    let lifted: AnyFamily = lift(&a)?.canonical().into();
    let result = to_value(&family_payload(&lifted));
    emit("lift", io, &lifted, &[], &[], result)
}

fn project_cmd(io: &Transform) -> Result<Outcome, CliError> {
    let t = match read_family(&io.file)? {
        AnyFamily::Ternary(t) => t,
        AnyFamily::Binary(_) => {
            return Err(CliError::Usage(format!("{}: expected a ternary family", io.file.display())))
        }
    };
    let projected: AnyFamily = project(&t).canonical().into();
    let result = to_value(&family_payload(&projected));
    emit("project", io, &projected, &[], &[], result)
}

fn slice_cmd(io: &Transform) -> Result<Outcome, CliError> {
    let a = read_binary(&io.file)?;
    let d = weight_slices(&a);
    let best: AnyFamily = d.best().canonical().into();
    let payload = SlicePayload {
        sizes: d.sizes(),
        best_weight: d.best_weight,
        pigeonhole_bound: d.pigeonhole_bound.to_string(),
        family: family_payload(&best),
    };
    let sizes: Vec<String> = payload.sizes.iter().map(|s| s.to_string()).collect();
    let notes = [
        format!("sizes by weight: {}", sizes.join(" ")),
        format!("best weight {}, pigeonhole bound {}", payload.best_weight, payload.pigeonhole_bound),
    ];
    emit("slice", io, &best, &notes, &[], to_value(&payload))
}

fn parse_row(row: &str, n: usize) -> Result<BinaryVector, CliError> {
    let v = BinaryVector::parse_row(row)
        .map_err(|(col, msg)| CliError::Usage(format!("--by {row}: column {}: {msg}", col + 1)))?;
    if v.dim() != n {
        return Err(weak_delta::Error::DimensionMismatch { left: n, right: v.dim() }.into());
    }
    Ok(v)
}

fn translate_cmd(io: &Transform, by: Option<&str>, toward: Option<&Path>) -> Result<Outcome, CliError> {
    let a = read_binary(&io.file)?;
    let extra = [("by", json!(by)), ("toward", path_value(toward))];
    match (by, toward) {
        (Some(row), _) => {
            let x = parse_row(row, a.dim())?;
            let image: AnyFamily = xor_translate(&x, &a)?.canonical().into();
            let payload =
                TranslatePayload { x: x.to_row(), overlap: None, average: None, family: family_payload(&image) };
            let notes = [format!("x = {}", x.to_row())];
            emit("translate", io, &image, &notes, &extra, to_value(&payload))
        }
        (None, Some(path)) => {
            let b = read_binary(path)?;
            let dense = find_dense_translate(&a, &b)?;
            let average = (a.len() * b.len()) as f64 / 2f64.powi(a.dim() as i32);
            let overlap = dense.intersection.len();
            let inter: AnyFamily = dense.intersection.into();
            let payload = TranslatePayload {
                x: dense.x.to_row(),
                overlap: Some(overlap),
                average: Some(average),
                family: family_payload(&inter),
            };
            let notes = [format!("x = {}", dense.x.to_row()), format!("overlap {overlap}, average {average}")];
            emit("translate", io, &inter, &notes, &extra, to_value(&payload))
        }
        (None, None) => Err(CliError::Usage("translate needs --by or --toward".into())),
    }
}

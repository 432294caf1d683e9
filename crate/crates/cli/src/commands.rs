use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use geon_core::billiard::config::parse_billiard;
use geon_core::billiard::oracle::grid_oracle;
use geon_core::billiard::{output, scaled_distance, solve_self_consistent, SolutionKind};
use geon_core::hilbert::{build_spin_lattice, check_isomorphic, Isomorphism};
use geon_core::lattice::io::{parse_lattice, write_dot, write_lattice};
use geon_core::lattice::{atoms, check_atomicity, check_covering, check_distributivity, check_orthomodularity, FiniteOrtholattice};
use geon_core::manifold::{generate_logic, verify_nonclassicality, UniverseConfig};
use geon_core::scalar::fmt12;
use serde_json::json;

use crate::manifest::{RunManifest, MANIFEST_FILE};
use crate::{Check, Cli, CliError, Command, Status, DEFAULT_OUT_DIR};

/// A command reduced to what the manifest records.
struct Invocation {
    command: String,
    config: PathBuf,
    overrides: BTreeMap<String, String>,
}

impl Invocation {
    fn from_command(cmd: &Command) -> Self {
        let mut overrides = BTreeMap::new();
        let (name, config) = match cmd {
            Command::Lattice { config, checks } => {
                if !checks.is_empty() {
                    let names: Vec<&str> = checks.iter().map(|c| c.name()).collect();
                    overrides.insert("checks".into(), names.join(","));
                }
                ("lattice", config)
            }
            Command::Geon { config } => ("geon", config),
            Command::Billiard { config, oracle, tolerance, grid } => {
                if *oracle {
                    overrides.insert("oracle".into(), "true".into());
                }
                if let Some(t) = tolerance {
                    overrides.insert("tolerance".into(), t.to_string());
                }
                if let Some(g) = grid {
                    overrides.insert("grid".into(), g.to_string());
                }
                ("billiard", config)
            }
            Command::Hilbert { config } => ("hilbert", config),
            Command::Replay { .. } => unreachable!("replay is resolved before dispatch"),
        };
        Invocation { command: name.into(), config: config.clone(), overrides }
    }

    fn override_as<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.overrides
            .get(key)
            .map(|v| v.parse().map_err(|_| CliError::Usage(format!("bad value `{v}` for {key}"))))
            .transpose()
    }
}

struct Outputs {
    dir: PathBuf,
}

impl Outputs {
    fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.to_owned(), source })?;
        Ok(Outputs { dir: dir.to_owned() })
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|source| CliError::Write { path, source })
    }
}

pub(crate) fn execute(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Replay { manifest } => {
            let m = RunManifest::read(manifest)?;
            let out = cli.out.clone().unwrap_or_else(|| m.out.clone());
            let inv = Invocation { command: m.command.clone(), config: m.config.clone(), overrides: m.overrides.clone() };
            run(&inv, &out, Some(&m.input_sha256))
        }
        cmd => {
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
            run(&Invocation::from_command(cmd), &out, None)
        }
    }
}

fn run(inv: &Invocation, out: &Path, expected_hash: Option<&str>) -> Result<Status, CliError> {
    let bytes = fs::read(&inv.config).map_err(|source| CliError::Read { path: inv.config.clone(), source })?;
    let manifest = RunManifest::new(&inv.command, &inv.config, &bytes, inv.overrides.clone(), out);
    if let Some(h) = expected_hash {
        if h != manifest.input_sha256 {
            return Err(CliError::input(&inv.config, "contents changed since the manifest was written"));
        }
    }
    let text = String::from_utf8(bytes).map_err(|e| CliError::input(&inv.config, e))?;
    let path = inv.config.as_path();
    let dest = Outputs::create(out)?;
    let status = match inv.command.as_str() {
        "lattice" => {
            let checks = match inv.overrides.get("checks") {
                None => Vec::new(),
                Some(s) => s
                    .split(',')
                    .map(|c| <Check as clap::ValueEnum>::from_str(c, false).map_err(CliError::Usage))
                    .collect::<Result<_, _>>()?,
            };
            lattice(&text, path, &checks, &dest)?
        }
        "geon" => geon(&text, path, &dest)?,
        "hilbert" => hilbert(&text, path, &dest)?,
        "billiard" => billiard(
            &text,
            path,
            inv.overrides.contains_key("oracle"),
            inv.override_as("tolerance")?,
            inv.override_as("grid")?,
            &dest,
        )?,
        other => return Err(CliError::Usage(format!("unknown command `{other}` in manifest"))),
    };
    dest.write(MANIFEST_FILE, &manifest.to_json())?;
    Ok(status)
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lattice(text: &str, path: &Path, checks: &[Check], dest: &Outputs) -> Result<Status, CliError> {
    let l = parse_lattice(text).map_err(|e| CliError::input(path, e))?;
    let mut checks = if checks.is_empty() {
        vec![Check::Orthomodular, Check::Distributive, Check::Atomic, Check::Covering]
    } else {
        checks.to_vec()
    };
    checks.sort();
    checks.dedup();

    let lab = |e| l.label(e).to_owned();
    let mut report = format!("lattice: {} elements, {} atoms\n", l.len(), atoms(&l).len());
    let mut results = serde_json::Map::new();
    let mut ok = true;
    for c in checks {
        let (pass, lines, violations): (bool, Vec<String>, Vec<serde_json::Value>) = match c {
            Check::Orthomodular => {
                let v = check_orthomodularity(&l);
                let lines = v.iter().map(|x| format!("a={} b={} a|(a'&b)={}", lab(x.a), lab(x.b), lab(x.got))).collect();
                let js = v.iter().map(|x| json!({"a": lab(x.a), "b": lab(x.b), "got": lab(x.got)})).collect();
                (v.is_empty(), lines, js)
            }
            Check::Distributive => {
                let v = check_distributivity(&l);
                let lines = v
                    .iter()
                    .map(|x| format!("({}, {}, {}) a&(b|c)={} (a&b)|(a&c)={}", lab(x.a), lab(x.b), lab(x.c), lab(x.lhs), lab(x.rhs)))
                    .collect();
                let js = v
                    .iter()
                    .map(|x| json!({"a": lab(x.a), "b": lab(x.b), "c": lab(x.c), "lhs": lab(x.lhs), "rhs": lab(x.rhs)}))
                    .collect();
                (v.is_empty(), lines, js)
            }
            Check::Atomic => (check_atomicity(&l), Vec::new(), Vec::new()),
            Check::Covering => {
                let v = check_covering(&l);
                let lines = v.iter().map(|x| format!("atom={} a={} a|atom={}", lab(x.atom), lab(x.a), lab(x.join))).collect();
                let js = v.iter().map(|x| json!({"atom": lab(x.atom), "a": lab(x.a), "join": lab(x.join)})).collect();
                (v.is_empty(), lines, js)
            }
        };
        ok &= pass;
        let count = if pass { String::new() } else { format!(", {} violations", lines.len()) };
        report.push_str(&format!("{}: {}{count}\n", c.name(), pass_fail(pass)));
        println!("{}: {}{count}", c.name(), pass_fail(pass));
        for line in &lines {
            report.push_str(&format!("  {line}\n"));
        }
        results.insert(c.name().into(), json!({"pass": pass, "violations": violations}));
    }
    dest.write("report.txt", &report)?;
    let mut js = serde_json::to_string_pretty(&serde_json::Value::Object(results)).expect("json");
    js.push('\n');
    dest.write("violations.json", &js)?;
    Ok(if ok { Status::Pass } else { Status::Fail })
}

fn universe(text: &str, path: &Path) -> Result<(UniverseConfig, geon_core::manifold::Universe), CliError> {
    let cfg = UniverseConfig::parse(text).map_err(|e| CliError::input(path, e.to_string().trim_end()))?;
    let u = cfg.build().map_err(|e| CliError::input(path, e))?;
    Ok((cfg, u))
}

fn geon(text: &str, path: &Path, dest: &Outputs) -> Result<Status, CliError> {
    let (_, u) = universe(text, path)?;
    let logic = generate_logic(&u).map_err(|e| CliError::input(path, e))?;
    let report = verify_nonclassicality(&u, &logic);
    let l = &logic.lattice;

    let mut s = format!(
        "universe: {} contexts, {} classes\nlogic: {} elements\n",
        u.contexts().len(),
        u.classes().len(),
        l.len()
    );
    for c in &report.clause {
        s.push_str(&format!("clause {}: {} {}\n  {}\n", c.id, pass_fail(c.pass), c.name, c.detail));
        println!("clause {}: {} {}", c.id, pass_fail(c.pass), c.detail);
    }
    dest.write("logic.toml", &write_lattice(l))?;
    dest.write("logic.dot", &write_dot(l, "logic"))?;
    dest.write("report.txt", &s)?;
    Ok(if report.all_pass() { Status::Pass } else { Status::Fail })
}

fn hilbert(text: &str, path: &Path, dest: &Outputs) -> Result<Status, CliError> {
    let (cfg, u) = universe(text, path)?;
    let logic = generate_logic(&u).map_err(|e| CliError::input(path, e))?;
    for c in &cfg.contexts {
        if c.outcomes.len() != 2 {
            return Err(CliError::input(path, format!("context `{}` is not binary; spin-1/2 needs two outcomes", c.id)));
        }
    }
    let (axes, names): (Vec<[f64; 3]>, Option<Vec<String>>) = match &cfg.hilbert {
        Some(h) => {
            let names = (h.axes.len() == cfg.contexts.len()).then(|| cfg.contexts.iter().map(|c| c.id.clone()).collect());
            (h.axes.clone(), names)
        }
        None => {
            let axes = cfg
                .contexts
                .iter()
                .map(|c| c.axis.ok_or_else(|| CliError::input(path, format!("context `{}` has no axis", c.id))))
                .collect::<Result<_, _>>()?;
            (axes, Some(cfg.contexts.iter().map(|c| c.id.clone()).collect()))
        }
    };
    let spin = build_spin_lattice(&axes, names.as_deref()).map_err(|e| CliError::input(path, e))?;
    let numeric: &FiniteOrtholattice = spin.lattice();
    let l = &logic.lattice;

    let mut s = format!(
        "logic: {} elements\nsubspace lattice: {} elements in C^{}\nsubspace orthomodular violations: {}\nsubspace distributive violations: {}\n",
        l.len(),
        numeric.len(),
        spin.ambient_dim(),
        check_orthomodularity(numeric).len(),
        check_distributivity(numeric).len(),
    );
    let iso = check_isomorphic(l, numeric);
    match &iso {
        Isomorphism::Found(map) => {
            s.push_str("isomorphism: found\n");
            for (i, m) in map.iter().enumerate() {
                s.push_str(&format!("  {} -> {}\n", l.labels()[i], numeric.label(*m)));
            }
            println!("isomorphism: found, {}-element bijection", map.len());
        }
        Isomorphism::Absent(reason) => {
            s.push_str(&format!("isomorphism: absent\n  {reason}\n"));
            println!("isomorphism: absent ({reason})");
        }
    }
    dest.write("certificate.txt", &s)?;
    dest.write("subspaces.toml", &spin.dump())?;
    Ok(if iso.is_found() { Status::Pass } else { Status::Fail })
}

fn billiard(
    text: &str,
    path: &Path,
    oracle: bool,
    tolerance: Option<f64>,
    grid: Option<usize>,
    dest: &Outputs,
) -> Result<Status, CliError> {
    let f = parse_billiard(text).map_err(|e| CliError::input(path, e))?;
    let mut opts = f.solver;
    if let Some(t) = tolerance {
        opts.tolerance = t;
    }
    if let Some(g) = grid {
        opts.grid = g;
    }
    opts.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let c = &f.config;
    let report = solve_self_consistent(c, &opts).map_err(|e| CliError::input(path, e))?;
    let sols = &report.solutions;

    let trivial = sols.iter().filter(|s| s.kind == SolutionKind::Trivial).count();
    println!("solutions: {} ({} trivial, {} self-interacting)", sols.len(), trivial, sols.len() - trivial);
    for (i, s) in sols.iter().enumerate() {
        let at = s.params.map(|p| format!(" exit_time={}", fmt12(p.exit_time))).unwrap_or_default();
        println!("  {i} {}{at} residual={}", s.kind.name(), fmt12(s.residual_norm));
    }
    println!("scan: {} cells, {} seeds, {} refinements failed", report.cells, report.seeds, report.failures.len());
    dest.write("solutions.csv", &output::solutions_csv(sols))?;
    dest.write("trajectories.csv", &output::trajectories_csv(sols))?;
    dest.write("events.txt", &output::event_log(sols))?;

    if !oracle {
        return Ok(Status::Pass);
    }
    let roots = grid_oracle(c, &opts).map_err(|e| CliError::input(path, e))?;
    dest.write("oracle.csv", &output::solutions_csv(&roots))?;
    let sc = c.scales();
    let key = |p: &geon_core::AnsatzParams| p.scaled(c.start_time(), &sc);
    let found: Vec<_> = sols.iter().filter(|s| s.kind == SolutionKind::SelfInteracting).filter_map(|s| s.params).collect();
    let near = |a: &geon_core::AnsatzParams, set: &[geon_core::AnsatzParams]| {
        set.iter().any(|b| scaled_distance(&key(a), &key(b)) <= opts.dedup_radius)
    };
    let oracle_params: Vec<_> = roots.iter().filter_map(|r| r.params).collect();
    let matched = found.len() == oracle_params.len()
        && oracle_params.iter().all(|p| near(p, &found))
        && found.iter().all(|p| near(p, &oracle_params));
    println!(
        "oracle: {} roots at grid {}, {}",
        roots.len(),
        2 * opts.grid,
        if matched { "matching the solver" } else { "MISMATCH with the solver" }
    );
    Ok(if matched { Status::Pass } else { Status::Fail })
}

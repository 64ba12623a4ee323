use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use biserial::decomp::lemma2_split;
use biserial::homology::{
    certified_iso, default_trials, hom_basis, projdim, syzygy_chain, IsoOutcome, PdOptions, Verdict,
};
use biserial::linalg::Field;
use biserial::paperlab::{radical_layers, verify, ClaimReport, FamilyConfig, Status, CLAIMS};
use biserial::presentation::{
    build_lambda, build_lambda1prime, emit_presentation, family_from_spec, parse_presentation, Presentation,
};
use biserial::repcore::{parse_modules, presentation_dot, representation_dot, Algebra, ModuleDef};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "biserial", version, about = "Syzygies and projective dimension over special biserial algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ground field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q")]
    field: Field,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest syzygy index examined by `pd`.
    #[arg(long, global = true, default_value_t = 12)]
    cutoff: usize,
    /// Random trials for isomorphism search; defaults depend on the field.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Line-delimited JSON output.
    #[arg(long, global = true)]
    structured: bool,
    /// Exit with status 3 on inconclusive results.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build, parse and inspect presentations.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Homological computations on modules read from module files.
    Module {
        #[command(subcommand)]
        op: ModuleOp,
    },
    /// Run claim checks over the family; `all` runs every claim.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyName {
    Lambda,
    Lambda1prime,
}

#[derive(Args, Clone)]
struct AlgebraSource {
    /// A `.alg` presentation file.
    file: Option<PathBuf>,
    /// `lambda:r=<r>,m=<m>`, `lambda1prime:r=<r>` or a path to a `.alg` file.
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Build a family member and summarize it.
    Build {
        #[command(flatten)]
        src: AlgebraSource,
        /// Print the presentation in the file format instead of a summary.
        #[arg(long)]
        emit: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a presentation file.
    Parse {
        #[command(flatten)]
        src: AlgebraSource,
    },
    /// Print a presentation in the file format.
    Emit {
        #[command(flatten)]
        src: AlgebraSource,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Dimensions and radical layers of the indecomposable projectives.
    Projectives {
        #[command(flatten)]
        src: AlgebraSource,
    },
    /// Graphviz drawing of the quiver.
    Dot {
        #[command(flatten)]
        src: AlgebraSource,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ModuleInput {
    /// Module files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Algebra to read every module over, overriding the names in the files.
    #[arg(long)]
    algebra: Option<String>,
    /// Only use the modules with these names.
    #[arg(long = "name")]
    names: Vec<String>,
}

#[derive(Subcommand)]
enum ModuleOp {
    /// Projective dimension.
    Pd {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Dimension vectors of the first syzygies.
    Syzygy {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, short, default_value_t = 3)]
        k: usize,
    },
    /// Dimension of Hom(M, N) for exactly two modules M, N.
    Hom {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Search for a certified isomorphism between exactly two modules.
    Iso {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Decompose a module over `Λ_1'` into `P(c2)` copies, `𝒳` modules and a `Λ_1` part.
    Split {
        #[command(flatten)]
        input: ModuleInput,
    },
    /// Graphviz drawing of the coefficient quiver.
    Dot {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim ids, or `all`.
    #[arg(required = true)]
    claims: Vec<String>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[arg(long, default_value_t = 3)]
    t_max: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 40)]
    max_dim: usize,
}

/// Writes text or JSON lines to stdout.
struct Out {
    structured: bool,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn text(&mut self, s: &str) -> Result<()> {
        if !self.structured {
            writeln!(self.stdout, "{s}")?;
        }
        Ok(())
    }

    fn record(&mut self, v: serde_json::Value) -> Result<()> {
        if self.structured {
            writeln!(self.stdout, "{}", serde_json::to_string(&v)?)?;
        }
        Ok(())
    }
}

/// Input errors that map to the usage exit status.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn resolve_spec(spec: &str, base: Option<&Path>) -> Result<Presentation> {
    if spec.ends_with(".alg") || spec.contains('/') {
        let path = match base {
            Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
            _ => PathBuf::from(spec),
        };
        let text = read(&path)?;
        return parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    family_from_spec(spec).map_err(|e| usage(e.to_string()))
}

fn load_presentation(src: &AlgebraSource) -> Result<Presentation> {
    let given = [src.file.is_some(), src.algebra.is_some(), src.family.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        bail!(usage("give exactly one of a presentation file, --algebra or --family"));
    }
    if let Some(path) = &src.file {
        let text = read(path)?;
        return parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    if let Some(spec) = &src.algebra {
        return resolve_spec(spec, None);
    }
    let p = match src.family.unwrap() {
        FamilyName::Lambda => build_lambda(src.r, src.m),
        FamilyName::Lambda1prime => build_lambda1prime(src.r),
    };
    p.map_err(|e| usage(e.to_string()))
}

fn write_or_print(out: &mut Out, text: &str, path: &Option<PathBuf>, record: serde_json::Value) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None if out.structured => out.record(record)?,
        None => write!(out.stdout, "{text}")?,
    }
    Ok(())
}

fn summary(p: &Presentation, alg: &Algebra) -> serde_json::Value {
    json!({
        "name": p.name(),
        "field": alg.field().label(),
        "vertices": p.vertex_count(),
        "arrows": p.arrow_count(),
        "relations": p.relations().len(),
        "dim": alg.dim(),
        "special_biserial": p.is_special_biserial(),
    })
}

fn summary_text(v: &serde_json::Value) -> String {
    format!(
        "{}: {} vertices, {} arrows, {} relations, dim {} over {}",
        v["name"].as_str().unwrap_or(""),
        v["vertices"],
        v["arrows"],
        v["relations"],
        v["dim"],
        v["field"].as_str().unwrap_or("")
    )
}

fn cmd_algebra(op: AlgebraOp, g: &Global, out: &mut Out) -> Result<u8> {
    match op {
        AlgebraOp::Build { src, emit, out: path } => {
            let p = load_presentation(&src)?;
            if emit {
                let text = emit_presentation(&p);
                write_or_print(out, &text, &path, json!({"name": p.name(), "field": g.field.label(), "text": text}))?;
            } else {
                let alg = Algebra::new(&p, g.field).map_err(|e| usage(e.to_string()))?;
                let v = summary(&p, &alg);
                write_or_print(out, &format!("{}\n", summary_text(&v)), &path, v)?;
            }
        }
        AlgebraOp::Parse { src } => {
            let p = load_presentation(&src)?;
            let alg = Algebra::new(&p, g.field).map_err(|e| usage(e.to_string()))?;
            let v = summary(&p, &alg);
            out.text(&summary_text(&v))?;
            if let Some(why) = p.special_biserial_violation() {
                out.text(&format!("not special biserial: {why}"))?;
            }
            out.record(v)?;
        }
        AlgebraOp::Emit { src, out: path } => {
            let p = load_presentation(&src)?;
            let text = emit_presentation(&p);
            write_or_print(out, &text, &path, json!({"name": p.name(), "field": g.field.label(), "text": text}))?;
        }
        AlgebraOp::Projectives { src } => {
            let p = load_presentation(&src)?;
            let alg = Algebra::new(&p, g.field).map_err(|e| usage(e.to_string()))?;
            out.text(&format!("# {} over {}", p.name(), g.field.label()))?;
            for (x, v) in p.vertices().iter().enumerate() {
                let proj = alg.projective(x);
                let layers = radical_layers(proj);
                let shown: Vec<String> = layers
                    .iter()
                    .map(|l| {
                        let names: Vec<String> =
                            l.iter().map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") }).collect();
                        names.join(" ")
                    })
                    .collect();
                out.text(&format!("P({v})\tdim {}\t{}", proj.total_dim(), shown.join(" | ")))?;
                out.record(json!({
                    "vertex": v,
                    "field": g.field.label(),
                    "dim": proj.total_dim(),
                    "layers": layers,
                }))?;
            }
        }
        AlgebraOp::Dot { src, out: path } => {
            let p = load_presentation(&src)?;
            let text = presentation_dot(&p);
            write_or_print(out, &text, &path, json!({"name": p.name(), "field": g.field.label(), "dot": text}))?;
        }
    }
    Ok(0)
}

fn load_modules(input: &ModuleInput, g: &Global) -> Result<Vec<ModuleDef>> {
    let forced = match &input.algebra {
        Some(spec) => Some(resolve_spec(spec, None)?),
        None => None,
    };
    let mut all = Vec::new();
    for path in &input.files {
        let text = read(path)?;
        let base = path.parent().map(Path::to_path_buf);
        let mut resolve = |name: &str| -> Result<Presentation, String> {
            match &forced {
                Some(p) => Ok(p.clone()),
                None => resolve_spec(name, base.as_deref()).map_err(|e| e.to_string()),
            }
        };
        let defs =
            parse_modules(&text, g.field, &mut resolve).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        all.extend(defs);
    }
    if !input.names.is_empty() {
        for n in &input.names {
            if !all.iter().any(|d| &d.name == n) {
                bail!(usage(format!("no module named '{n}'")));
            }
        }
        // keep the order the names were given in, so `hom --name M --name N` means Hom(M, N)
        all = input.names.iter().filter_map(|n| all.iter().find(|d| &d.name == n).cloned()).collect();
    }
    if all.is_empty() {
        bail!(usage("no modules given"));
    }
    Ok(all)
}

fn algebra_of(def: &ModuleDef, g: &Global) -> Result<Algebra> {
    Algebra::new(def.module.presentation(), g.field).map_err(|e| usage(e.to_string()))
}

fn dims_of(m: &biserial::repcore::Representation) -> serde_json::Value {
    json!(m.dim_vector().into_iter().filter(|(_, d)| *d > 0).collect::<std::collections::BTreeMap<_, _>>())
}

fn exactly_two(defs: Vec<ModuleDef>) -> Result<(ModuleDef, ModuleDef)> {
    if defs.len() != 2 {
        bail!(usage(format!("expected exactly two modules, got {}", defs.len())));
    }
    let mut it = defs.into_iter();
    Ok((it.next().unwrap(), it.next().unwrap()))
}

fn cmd_module(op: ModuleOp, g: &Global, out: &mut Out) -> Result<u8> {
    let trials = |f: Field| g.trials.unwrap_or_else(|| default_trials(f));
    let mut code = 0;
    match op {
        ModuleOp::Pd { input } => {
            for def in load_modules(&input, g)? {
                let alg = algebra_of(&def, g)?;
                let opts = PdOptions { cutoff: g.cutoff, trials: trials(g.field), seed: g.seed };
                let rep = projdim(&alg, &def.module, &opts);
                out.text(&format!("{}: {}", def.name, rep.verdict))?;
                let mut v = serde_json::to_value(&rep)?;
                v["module"] = json!(def.name);
                out.record(v)?;
                if matches!(rep.verdict, Verdict::Inconclusive { .. }) && g.strict {
                    code = EXIT_INCONCLUSIVE;
                }
            }
        }
        ModuleOp::Syzygy { input, k } => {
            for def in load_modules(&input, g)? {
                let alg = algebra_of(&def, g)?;
                let chain = syzygy_chain(&alg, &def.module, k);
                let dims: Vec<serde_json::Value> = chain.iter().map(dims_of).collect();
                out.text(&format!("{}:", def.name))?;
                for (i, d) in dims.iter().enumerate() {
                    out.text(&format!("  Ω^{i}: {d}"))?;
                }
                out.record(json!({"module": def.name, "field": g.field.label(), "syzygies": dims}))?;
            }
        }
        ModuleOp::Hom { input } => {
            let (a, b) = exactly_two(load_modules(&input, g)?)?;
            if **a.module.presentation() != **b.module.presentation() {
                bail!(usage("modules live over different algebras"));
            }
            let h = hom_basis(&a.module, &b.module);
            out.text(&format!("dim Hom({}, {}) = {}", a.name, b.name, h.dim()))?;
            out.record(json!({"source": a.name, "target": b.name, "field": g.field.label(), "dim": h.dim()}))?;
        }
        ModuleOp::Iso { input } => {
            let (a, b) = exactly_two(load_modules(&input, g)?)?;
            if **a.module.presentation() != **b.module.presentation() {
                bail!(usage("modules live over different algebras"));
            }
            let outcome = certified_iso(&a.module, &b.module, trials(g.field), g.seed);
            let (status, detail) = match &outcome {
                IsoOutcome::Iso { map, trial } => {
                    let mats: Vec<serde_json::Value> = map
                        .mats()
                        .iter()
                        .map(|m| json!(m.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>()))
                        .collect();
                    ("iso", json!({"trial": trial, "matrices": mats, "vertices": a.module.presentation().vertices()}))
                }
                IsoOutcome::NotIsomorphic(why) => ("not_isomorphic", json!(why)),
                IsoOutcome::NotFound { trials } => {
                    if g.strict {
                        code = EXIT_INCONCLUSIVE;
                    }
                    ("inconclusive", json!({"trials": trials}))
                }
            };
            match &outcome {
                IsoOutcome::Iso { map, trial } => {
                    out.text(&format!("{} ≅ {} (certified at trial {trial})", a.name, b.name))?;
                    for (x, v) in a.module.presentation().vertices().iter().enumerate() {
                        let m = map.at(x);
                        if m.rows() > 0 {
                            let rows: Vec<String> = (0..m.rows())
                                .map(|i| m.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
                                .collect();
                            out.text(&format!("  {v}: [{}]", rows.join("; ")))?;
                        }
                    }
                }
                IsoOutcome::NotIsomorphic(why) => out.text(&format!("{} ≇ {}: {why}", a.name, b.name))?,
                IsoOutcome::NotFound { trials } => {
                    out.text(&format!("inconclusive: no isomorphism found in {trials} trials"))?
                }
            }
            out.record(json!({
                "source": a.name, "target": b.name, "field": g.field.label(), "status": status, "detail": detail,
            }))?;
        }
        ModuleOp::Split { input } => {
            for def in load_modules(&input, g)? {
                let alg = algebra_of(&def, g)?;
                let split = lemma2_split(&alg, &def.module).map_err(|e| usage(e.to_string()))?;
                let rep = split.report();
                let ok = split.checks_pass() && split.mprime_on_lambda1;
                if !ok {
                    code = EXIT_FAIL;
                }
                out.text(&format!(
                    "{}: P(c2)^{} + X{:?} + M' with dims {}{}",
                    def.name,
                    rep.a,
                    rep.x_multiplicities,
                    serde_json::to_string(&rep.mprime_dims)?,
                    if ok { "" } else { " (certificate checks FAILED)" }
                ))?;
                out.text(&format!("  checksum {}", rep.checksum))?;
                let mut v = serde_json::to_value(&rep)?;
                v["module"] = json!(def.name);
                v["field"] = json!(g.field.label());
                v["ok"] = json!(ok);
                out.record(v)?;
            }
        }
        ModuleOp::Dot { input, out: path } => {
            let mut text = String::new();
            for def in load_modules(&input, g)? {
                text.push_str(&representation_dot(&def.name, &def.module));
            }
            write_or_print(out, &text, &path, json!({"field": g.field.label(), "dot": text}))?;
        }
    }
    Ok(code)
}

fn record(rep: &ClaimReport) -> Result<serde_json::Value> {
    use sha2::{Digest, Sha256};
    let evidence = serde_json::to_string(&rep.evidence)?;
    let digest = hex::encode(Sha256::digest(evidence.as_bytes()));
    let passed = rep.evidence.iter().filter(|c| c.ok == Some(true)).count();
    let open: Vec<_> = rep.evidence.iter().filter(|c| c.ok != Some(true)).collect();
    Ok(json!({
        "claim": rep.claim,
        "status": rep.status,
        "config": rep.config,
        "checks": rep.evidence.len(),
        "passed": passed,
        "evidence_digest": digest,
        "open": open,
    }))
}

fn cmd_verify(args: VerifyArgs, g: &Global, out: &mut Out) -> Result<u8> {
    let cfg = FamilyConfig {
        r: args.r,
        m_max: args.m_max,
        t_max: args.t_max,
        field: g.field,
        seed: g.seed,
        cutoff: g.cutoff,
        samples: args.samples,
        max_dim: args.max_dim,
    };
    cfg.validate().map_err(usage)?;
    let mut ids: Vec<&str> = Vec::new();
    for c in &args.claims {
        if c == "all" {
            ids.extend(CLAIMS);
        } else if let Some(known) = CLAIMS.iter().find(|k| **k == c.as_str()) {
            ids.push(known);
        } else {
            bail!(usage(format!("unknown claim '{c}'; known: {}", CLAIMS.join(", "))));
        }
    }
    let reports: Vec<Result<ClaimReport, String>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|id| s.spawn(|| verify(id, &cfg))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("claim panicked".into()))).collect()
    });
    let mut worst = Status::Pass;
    for (id, rep) in ids.iter().zip(reports) {
        let rep = rep.map_err(|e| anyhow!("{id}: {e}"))?;
        out.text(&rep.summary())?;
        out.record(record(&rep)?)?;
        worst = match (worst, rep.status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        };
    }
    Ok(match worst {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { structured: cli.global.structured, stdout: io::stdout().lock() };
    let result = match cli.command {
        Command::Algebra { op } => cmd_algebra(op, &cli.global, &mut out),
        Command::Module { op } => cmd_module(op, &cli.global, &mut out),
        Command::Verify(args) => cmd_verify(args, &cli.global, &mut out),
    };
    let _ = out.stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}

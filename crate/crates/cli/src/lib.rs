//! The `biaffine` command line: subcommands, exit codes and run manifests.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input error, 3 budget
//! exhausted (partial results and manifest are still written).

pub mod manifest;
pub mod suites;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use biaffine::algmerge::{algebraic_merging, build_generators, build_n5_1, build_n6, merging_census, Subgroup};
use biaffine::autgrp::{
    algebraic_automorphism_group, automorphism_group_with_budget, color_automorphism_group, is_schurian_with_budget, Budget,
};
use biaffine::biaffine::{build_merging, build_model_one, build_model_two, Merging, SchemeParameters};
use biaffine::catalog::{bosak_graph, certify, mms_graph, mms_valency, pappus_graph, wenger_graph, Claims, NamedGraph};
use biaffine::spectra::{dsrg_check, spectrum, DsrgParams, IntMatrix, SpectrumTemplate};
use biaffine::wl::wl_closure;
use biaffine::{compute_tensor, ColorGraph, Permutation};
use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::{FileDigest, RunManifest};
use suites::{run_suite, SuiteName};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "BIAFFINE_THREADS";

const DEFAULT_BUDGET_SECONDS: f64 = 600.0;

#[derive(Parser, Debug)]
#[command(name = "biaffine", version, about = "Biaffine coherent configurations: build, verify, analyze")]
pub struct Cli {
    /// Write the run manifest (JSON) to this file instead of standard error.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a scheme and write it in the text format.
    Build(BuildArgs),
    /// Coherent closure of a color graph.
    Closure(ClosureArgs),
    /// Automorphism group (colors fixed).
    Aut(GroupArgs),
    /// Color automorphism group.
    Caut(GroupArgs),
    /// Algebraic automorphism group of the intersection tensor.
    Aaut(GroupArgs),
    /// Algebraic merging of M(p) by a subgroup of AAut(M).
    Merge(MergeArgs),
    /// Census of algebraic mergings of M(p).
    Census(CensusArgs),
    /// Exact spectrum of a union of basic graphs.
    Spectrum(SpectrumArgs),
    /// Named graphs inside M(p).
    Catalog(CatalogArgs),
    /// Schurian test: scheme rank against the 2-orbit rank of Aut.
    Schurian(SchurianArgs),
    /// Recompute a table of published values, one PASS/FAIL line per row.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
pub enum Scheme {
    M,
    M1,
    M2,
    M3,
    M4,
    N6,
    N51,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Coordinates of points and lines.
    One,
    /// Vectors and dual vectors.
    Two,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, ignore_case = true)]
    pub scheme: Scheme,
    /// Model used for `M` itself.
    #[arg(long, value_enum, default_value = "one")]
    pub model: Model,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Label sidecar; defaults to `<out>.labels` when `--out` is given.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub budget: Option<f64>,
}

#[derive(Args, Debug)]
pub struct MergeArgs {
    #[arg(long)]
    pub p: u64,
    /// K1, K2, K3, K4, N6, or a file with one color permutation per line (images of 0..r−1).
    #[arg(long)]
    pub subgroup: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub budget: Option<f64>,
    /// Allow p ≥ 7 (hours-scale in the worst case).
    #[arg(long)]
    pub extended: bool,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Color ids whose union is the graph, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub color: Vec<u32>,
    /// Spectrum template to compare against.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogName {
    Pappus,
    Mms,
    Wenger,
    Bosak,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long, value_enum)]
    pub name: CatalogName,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SchurianArgs {
    #[arg(long, requires = "scheme", conflicts_with = "input")]
    pub p: Option<u64>,
    #[arg(long, value_enum, ignore_case = true, requires = "p")]
    pub scheme: Option<Scheme>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub budget: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Appendix1,
    Appendix3,
    N6,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Primes to run; defaults to the suite's desk-scale set.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    #[arg(long)]
    pub budget: Option<f64>,
}

/// How a command ended, before it is turned into an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
    Budget(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Budget(m) | Failure::Io(m) => m,
        }
    }
}

impl From<biaffine::Error> for Failure {
    fn from(e: biaffine::Error) -> Self {
        use biaffine::Error as E;
        match e {
            E::Budget { .. } => Failure::Budget(e.to_string()),
            E::Parse { .. } | E::NotOddPrime(_) | E::Structure(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Collects what a command reads and writes for the manifest.
struct Ctx<'a> {
    stdout: &'a mut dyn Write,
    parameters: BTreeMap<String, String>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    summary: Vec<String>,
    /// Set when a check failed but output was still produced.
    failed_checks: Vec<String>,
}

impl Ctx<'_> {
    fn param(&mut self, k: &str, v: impl ToString) {
        self.parameters.insert(k.to_string(), v.to_string());
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(FileDigest::of(&path.display().to_string(), text.as_bytes()));
        Ok(text)
    }

    fn read_graph(&mut self, path: &Path) -> Result<ColorGraph, Failure> {
        let text = self.read(path)?;
        Ok(ColorGraph::parse_text(&text)?)
    }

    /// Writes to `path`, or to standard output when `None`.
    fn write(&mut self, path: Option<&Path>, content: &str) -> Result<(), Failure> {
        match path {
            Some(p) => {
                std::fs::write(p, content).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display())))?;
                self.outputs.push(FileDigest::of(&p.display().to_string(), content.as_bytes()));
            }
            None => {
                self.stdout.write_all(content.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
                self.outputs.push(FileDigest::of("-", content.as_bytes()));
            }
        }
        Ok(())
    }

    fn say(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }
}

fn params_of(p: u64) -> Result<SchemeParameters, Failure> {
    let p32 = u32::try_from(p).map_err(|_| Failure::Usage(format!("p = {p} is too large")))?;
    Ok(SchemeParameters::new(p32)?)
}

fn budget_of(seconds: Option<f64>) -> Result<Budget, Failure> {
    match seconds {
        Some(s) if !(s > 0.0 && s.is_finite()) => Err(Failure::Usage(format!("budget must be a positive number of seconds, got {s}"))),
        Some(s) => Ok(Budget::seconds(s)),
        None => Ok(Budget::seconds(DEFAULT_BUDGET_SECONDS)),
    }
}

/// Thread count from the environment; 1 when unset.
pub fn threads_from_env() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("{THREADS_VAR} must be a positive integer, got {v:?}")),
        },
    }
}

fn scheme_graph(params: &SchemeParameters, scheme: Scheme, model: Model) -> Result<(ColorGraph, String), Failure> {
    let merging = |w| -> Result<(ColorGraph, String), Failure> {
        let (g, d) = build_merging(params, w)?;
        Ok((g, d.to_sidecar()))
    };
    match scheme {
        Scheme::M => {
            let (g, d) = match model {
                Model::One => build_model_one(params),
                Model::Two => build_model_two(params),
            };
            Ok((g, d.to_sidecar()))
        }
        Scheme::M1 => merging(Merging::M1),
        Scheme::M2 => merging(Merging::M2),
        Scheme::M3 => merging(Merging::M3),
        Scheme::M4 => merging(Merging::M4),
        Scheme::N6 => {
            let (g, d) = build_n6(params)?;
            Ok((g, d.to_sidecar()))
        }
        Scheme::N51 => {
            let n = build_n5_1(params)?;
            let sidecar: String = n.order.iter().enumerate().map(|(i, c)| format!("Λ{} = {c}\n", i + 1)).collect();
            Ok((n.graph, sidecar))
        }
    }
}

fn cmd_build(ctx: &mut Ctx, a: &BuildArgs) -> Result<(), Failure> {
    ctx.param("p", a.p);
    ctx.param("scheme", format!("{:?}", a.scheme));
    ctx.param("model", format!("{:?}", a.model));
    let params = params_of(a.p)?;
    let (g, sidecar) = scheme_graph(&params, a.scheme, a.model)?;
    ctx.write(a.out.as_deref(), &g.to_text())?;
    let side_path = a.sidecar.clone().or_else(|| a.out.as_ref().map(|o| PathBuf::from(format!("{}.labels", o.display()))));
    if let Some(sp) = side_path {
        ctx.write(Some(&sp), &sidecar)?;
    }
    ctx.say(format!("n {} rank {}", g.n(), g.rank()));
    Ok(())
}

fn cmd_closure(ctx: &mut Ctx, a: &ClosureArgs) -> Result<(), Failure> {
    let g = ctx.read_graph(&a.input)?;
    let (c, trace) = wl_closure(&g);
    ctx.write(a.out.as_deref(), &c.to_text())?;
    let hist: Vec<String> = trace.history.iter().map(|r| r.to_string()).collect();
    ctx.say(format!("rank {} -> {} in {} rounds (ranks {})", g.rank(), c.rank(), trace.rounds, hist.join(" ")));
    Ok(())
}

fn generator_lines(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

fn cmd_aut(ctx: &mut Ctx, a: &GroupArgs) -> Result<(), Failure> {
    let g = ctx.read_graph(&a.input)?;
    let aut = automorphism_group_with_budget(&g, budget_of(a.budget)?)?;
    let gens = aut.group.generators();
    let out = format!(
        "order {}\n2-orbit rank {}\nscheme rank {}\ngenerators {}\n{}",
        aut.order,
        aut.rank_of_group,
        g.rank(),
        gens.len(),
        generator_lines(gens)
    );
    ctx.write(None, &out)?;
    ctx.say(format!("|Aut| = {}, 2-orbit rank {}", aut.order, aut.rank_of_group));
    Ok(())
}

fn cmd_caut(ctx: &mut Ctx, a: &GroupArgs) -> Result<(), Failure> {
    let g = ctx.read_graph(&a.input)?;
    let c = color_automorphism_group(&g, budget_of(a.budget)?)?;
    let mut out = format!(
        "order {}\naut order {}\ncolor image order {}\ngenerators {}\n",
        c.order,
        c.aut_order,
        c.quotient_order(),
        c.generators.len()
    );
    for (s, psi) in &c.generators {
        out.push_str(&format!("{s} colors {psi}\n"));
    }
    ctx.write(None, &out)?;
    ctx.say(format!("|CAut| = {}", c.order));
    Ok(())
}

fn cmd_aaut(ctx: &mut Ctx, a: &GroupArgs) -> Result<(), Failure> {
    let g = ctx.read_graph(&a.input)?;
    let t = compute_tensor(&g)?;
    let aa = algebraic_automorphism_group(&t);
    let gens = aa.group.generators();
    ctx.write(None, &format!("order {}\ngenerators {}\n{}", aa.order, gens.len(), generator_lines(gens)))?;
    ctx.say(format!("|AAut| = {}", aa.order));
    Ok(())
}

fn cmd_merge(ctx: &mut Ctx, a: &MergeArgs) -> Result<(), Failure> {
    ctx.param("p", a.p);
    ctx.param("subgroup", &a.subgroup);
    let params = params_of(a.p)?;
    let (m, _) = build_model_one(&params);
    let gens = match a.subgroup.parse::<Subgroup>() {
        Ok(k) => k.generators(&build_generators(&params)?),
        Err(_) => {
            let text = ctx.read(Path::new(&a.subgroup))?;
            text.lines()
                .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(Permutation::parse_line)
                .collect::<biaffine::Result<Vec<_>>>()?
        }
    };
    if let Some(g) = gens.iter().find(|g| g.degree() != m.rank()) {
        return Err(Failure::Usage(format!("generator of degree {} for {} colors", g.degree(), m.rank())));
    }
    let (g, part) = algebraic_merging(&m, &gens)?;
    ctx.write(a.out.as_deref(), &g.to_text())?;
    ctx.say(format!("rank {} blocks {:?}", g.rank(), part.blocks()));
    Ok(())
}

fn cmd_census(ctx: &mut Ctx, a: &CensusArgs) -> Result<(), Failure> {
    ctx.param("p", a.p);
    ctx.param("extended", a.extended);
    if a.p >= 7 && !a.extended {
        return Err(Failure::Usage("census for p >= 7 needs --extended".into()));
    }
    let params = params_of(a.p)?;
    let c = merging_census(&params, budget_of(a.budget)?)?;
    let mut out = format!("p {}\npartitions {}\n{}\n", c.p, c.partitions, c.counts);
    for e in &c.entries {
        out.push_str(&format!(
            "rank {} {} partitions {} aut {} schurian {} transitive {} blocks {:?}\n",
            e.rank,
            if e.homogeneous { "AS" } else { "NCC" },
            e.partitions,
            e.aut_order.as_ref().map_or("-".to_string(), |o| o.to_string()),
            e.schurian.map_or("-".to_string(), |s| s.to_string()),
            e.aut_transitive.map_or("-".to_string(), |s| s.to_string()),
            e.partition.blocks()
        ));
    }
    ctx.write(None, &out)?;
    ctx.say(c.counts.to_string());
    if !c.complete {
        return Err(Failure::Budget(format!("census incomplete: {}", c.counts)));
    }
    Ok(())
}

fn cmd_spectrum(ctx: &mut Ctx, a: &SpectrumArgs) -> Result<(), Failure> {
    let g = ctx.read_graph(&a.input)?;
    ctx.param("color", a.color.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
    if let Some(&c) = a.color.iter().find(|&&c| c as usize >= g.rank()) {
        return Err(Failure::Usage(format!("color {c} out of range (rank {})", g.rank())));
    }
    let report = spectrum(&IntMatrix::adjacency(&g, &a.color));
    let mut out = report.to_string();
    let mut failed = None;
    if let Some(path) = &a.expect {
        let text = ctx.read(path)?;
        let t = SpectrumTemplate::parse_text(&path.display().to_string(), &text)?;
        let cmp = t.compare(&report.charpoly);
        out.push_str(if cmp.matches() { "template: match\n" } else { "template: MISMATCH\n" });
        for f in cmp.failures.iter().chain(&cmp.unspecified_failures) {
            out.push_str(&format!("  {f}\n"));
        }
        if !cmp.matches() {
            failed = Some(format!("spectrum differs from {}", path.display()));
        }
    }
    ctx.write(None, &out)?;
    ctx.say(format!("{} eigenvalue classes", report.entries.len()));
    if let Some(f) = failed {
        ctx.failed_checks.push(f);
    }
    Ok(())
}

fn cmd_catalog(ctx: &mut Ctx, a: &CatalogArgs) -> Result<(), Failure> {
    ctx.param("name", format!("{:?}", a.name));
    let need_p = || a.p.ok_or_else(|| Failure::Usage(format!("--p is required for {:?}", a.name)));
    let (g, claims): (NamedGraph, Claims) = match a.name {
        CatalogName::Pappus => {
            (pappus_graph(), Claims { n: Some(18), regular: Some(3), girth: Some(6), bipartite: Some(true), ..Claims::default() })
        }
        CatalogName::Bosak => (bosak_graph(), Claims { n: Some(18), regular: Some(4), ..Claims::default() }),
        CatalogName::Wenger => {
            let params = params_of(need_p()?)?;
            let p = params.p() as usize;
            (wenger_graph(&params), Claims { n: Some(2 * p * p), regular: Some(p), bipartite: Some(true), ..Claims::default() })
        }
        CatalogName::Mms => {
            let params = params_of(need_p()?)?;
            let p = params.p();
            let mut claims = Claims {
                n: Some(2 * (p * p) as usize),
                regular: Some(mms_valency(p)),
                diameter: Some(2),
                ..Claims::default()
            };
            if p == 5 {
                claims.girth = Some(5);
            }
            (mms_graph(&params)?, claims)
        }
    };
    if let Some(p) = a.p {
        ctx.param("p", p);
    }
    let body = match g.to_graph6() {
        Ok(s) => format!("{s}\n"),
        Err(_) => g.to_arc_list(),
    };
    ctx.write(a.out.as_deref(), &body)?;
    let cert = certify(&g, &claims);
    for line in cert.to_string().lines() {
        ctx.say(line);
    }
    if !cert.passed() {
        ctx.failed_checks.push(format!("{} certificate failed", g.name));
    }
    if !g.provenance_matches()? {
        ctx.failed_checks.push(format!("{} arc set differs from its relations {:?}", g.name, g.provenance));
    }
    if a.name == CatalogName::Bosak {
        match dsrg_check(&g.adjacency_matrix(), DsrgParams { n: 18, k: 4, t: 3, lambda: 0, mu: 1 }) {
            Ok(()) => ctx.say("dsrg(18,4,3,0,1) holds"),
            Err(v) => ctx.failed_checks.push(format!("dsrg(18,4,3,0,1) fails: {v:?}")),
        }
    }
    Ok(())
}

fn cmd_schurian(ctx: &mut Ctx, a: &SchurianArgs) -> Result<(), Failure> {
    let g = match (&a.input, a.p, a.scheme) {
        (Some(path), None, None) => ctx.read_graph(path)?,
        (None, Some(p), Some(s)) => {
            ctx.param("p", p);
            ctx.param("scheme", format!("{s:?}"));
            scheme_graph(&params_of(p)?, s, Model::One)?.0
        }
        _ => return Err(Failure::Usage("give either --input, or --p with --scheme".into())),
    };
    let cert = is_schurian_with_budget(&g, budget_of(a.budget)?)?;
    let line = if cert.is_schurian() {
        format!("Schurian: rank {} = group rank {}\n", cert.scheme_rank, cert.group_rank)
    } else {
        format!("Non-Schurian: rank {} < group rank {}\n", cert.scheme_rank, cert.group_rank)
    };
    ctx.write(None, &line)?;
    ctx.say(format!("{} (|Aut| = {})", line.trim_end(), cert.group_order));
    Ok(())
}

fn default_primes(suite: Suite) -> Vec<u64> {
    match suite {
        Suite::Paper | Suite::Appendix1 | Suite::Appendix3 => vec![3, 5, 7],
        Suite::N6 => vec![5, 7],
    }
}

fn cmd_reproduce(ctx: &mut Ctx, a: &ReproduceArgs) -> Result<(), Failure> {
    ctx.param("suite", format!("{:?}", a.suite));
    let primes = if a.p.is_empty() { default_primes(a.suite) } else { a.p.clone() };
    ctx.param("p", primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
    let budget = budget_of(a.budget)?;
    let suite = match a.suite {
        Suite::Paper => SuiteName::Headline,
        Suite::Appendix1 => SuiteName::Appendix1,
        Suite::Appendix3 => SuiteName::Appendix3,
        Suite::N6 => SuiteName::N6,
    };
    let mut out = String::new();
    let (mut pass, mut fail) = (0, 0);
    let mut budget_hit = None;
    for p in primes {
        let params = params_of(p)?;
        match run_suite(suite, &params, budget) {
            Ok(rows) => {
                for r in rows {
                    if r.pass {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                    out.push_str(&format!("{r}\n"));
                }
            }
            Err(biaffine::Error::Budget { nodes }) => {
                out.push_str(&format!("BUDGET p={p}: stopped after {nodes} search nodes\n"));
                budget_hit = Some(p);
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.push_str(&format!("{pass} passed, {fail} failed\n"));
    ctx.write(None, &out)?;
    ctx.say(format!("{pass} passed, {fail} failed"));
    if let Some(p) = budget_hit {
        return Err(Failure::Budget(format!("budget exhausted at p = {p}")));
    }
    if fail > 0 {
        ctx.failed_checks.push(format!("{fail} rows failed"));
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build(_) => "build",
        Command::Closure(_) => "closure",
        Command::Aut(_) => "aut",
        Command::Caut(_) => "caut",
        Command::Aaut(_) => "aaut",
        Command::Merge(_) => "merge",
        Command::Census(_) => "census",
        Command::Spectrum(_) => "spectrum",
        Command::Catalog(_) => "catalog",
        Command::Schurian(_) => "schurian",
        Command::Reproduce(_) => "reproduce",
    }
}

fn dispatch(ctx: &mut Ctx, c: &Command) -> Result<(), Failure> {
    match c {
        Command::Build(a) => cmd_build(ctx, a),
        Command::Closure(a) => cmd_closure(ctx, a),
        Command::Aut(a) => cmd_aut(ctx, a),
        Command::Caut(a) => cmd_caut(ctx, a),
        Command::Aaut(a) => cmd_aaut(ctx, a),
        Command::Merge(a) => cmd_merge(ctx, a),
        Command::Census(a) => cmd_census(ctx, a),
        Command::Spectrum(a) => cmd_spectrum(ctx, a),
        Command::Catalog(a) => cmd_catalog(ctx, a),
        Command::Schurian(a) => cmd_schurian(ctx, a),
        Command::Reproduce(a) => cmd_reproduce(ctx, a),
    }
}

fn emit_manifest(m: &RunManifest, path: Option<&Path>, stderr: &mut dyn Write) {
    let json = m.to_json();
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{json}\n")) {
                let _ = writeln!(stderr, "error: cannot write manifest {}: {e}", p.display());
            }
        }
        None => {
            let _ = writeln!(stderr, "{json}");
        }
    }
}

/// Runs one invocation and returns the exit code.
pub fn run(args: impl IntoIterator<Item = OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let usage_manifest = |summary: String, exit_code| RunManifest {
        command: "usage".into(),
        parameters: BTreeMap::new(),
        inputs: Vec::new(),
        outputs: Vec::new(),
        threads: 1,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        exit_code,
        complete: false,
        summary: vec![summary],
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stderr, "{e}");
            emit_manifest(&usage_manifest(e.kind().to_string(), 2), None, stderr);
            return 2;
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            emit_manifest(&usage_manifest(msg, 2), cli.manifest.as_deref(), stderr);
            return 2;
        }
    };

    let mut ctx = Ctx {
        stdout,
        parameters: BTreeMap::new(),
        inputs: Vec::new(),
        outputs: Vec::new(),
        summary: Vec::new(),
        failed_checks: Vec::new(),
    };
    let result = dispatch(&mut ctx, &cli.command);
    let _ = ctx.stdout.flush();
    let (exit_code, complete) = match &result {
        Ok(()) if ctx.failed_checks.is_empty() => (0, true),
        Ok(()) => (1, true),
        Err(f) => (f.exit_code(), false),
    };
    for f in &ctx.failed_checks {
        let _ = writeln!(stderr, "check failed: {f}");
        ctx.summary.push(format!("check failed: {f}"));
    }
    if let Err(f) = &result {
        let _ = writeln!(stderr, "error: {}", f.message());
        ctx.summary.push(format!("error: {}", f.message()));
    }
    let m = RunManifest {
        command: command_name(&cli.command).into(),
        parameters: ctx.parameters,
        inputs: ctx.inputs,
        outputs: ctx.outputs,
        threads,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        exit_code,
        complete,
        summary: ctx.summary,
    };
    emit_manifest(&m, cli.manifest.as_deref(), stderr);
    exit_code
}

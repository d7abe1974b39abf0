use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use girth_forge::basegen::{generate_base_graphs, BaseGenOptions};
use girth_forge::catalog::Catalog;
use girth_forge::excision::{complete_to_regular, excise, plan, Pattern};
use girth_forge::fixtures::{fixture_ids, load_fixture};
use girth_forge::graph::{parse_graph_file, SimpleGraph};
use girth_forge::group::{parse_group_spec, FiniteGroup};
use girth_forge::lift::lift;
use girth_forge::pregraph::Pregraph;
use girth_forge::runner::{load_jobs, run, BaseSource, JobSpec, Mode, RunOptions, Summary};
use girth_forge::search::{Problem, SearchConfig};
use girth_forge::verify::{classify, GraphReport, Lambda, Targets};
use girth_forge::voltage::VoltageAssignment;

#[derive(Parser)]
#[command(name = "girth-forge", version, about = "Search for small regular graphs of large girth")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate connected k-regular base pregraphs on n vertices.
    GenBase {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        no_semi: bool,
        #[arg(long)]
        no_loops: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search lifts of base graphs over groups.
    Search(SearchArgs),
    /// Remove a vertex pattern from a cage.
    Excise {
        #[arg(long)]
        pattern: Pattern,
        #[arg(long)]
        cage: PathBuf,
        #[arg(long)]
        k: usize,
        /// Anchor pair `u,v`.
        #[arg(long, value_parser = parse_pair)]
        anchor: Option<(usize, usize)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add edges until the graph is k-regular with the given girth.
    Complete {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Seconds.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Classify graphs from a graph6/sparse6 file.
    Verify(VerifyArgs),
    /// Lift a voltage assignment and write the graph as graph6.
    Lift {
        #[arg(long)]
        base: PathBuf,
        /// Group table file or spec such as `C5xD4`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        volt: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a job file into a catalog.
    Run {
        #[arg(long)]
        jobs: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        catalog: PathBuf,
    },
    /// Query a catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Check the shipped fixtures against their expectations.
    Fixtures {
        /// Include the largest cage.
        #[arg(long)]
        large: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Smallest order stored for a problem and how many graphs have it.
    Best {
        #[arg(long)]
        problem: Problem,
        #[arg(long, default_value = "catalog.jsonl")]
        catalog: PathBuf,
    },
    /// Re-verify every entry.
    Check {
        #[arg(long, default_value = "catalog.jsonl")]
        catalog: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Bta,
    Tabu,
    Hill,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    mode: SearchMode,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    girth: usize,
    /// Problem key; defaults to `cage(k,girth)`.
    #[arg(long)]
    problem: Option<Problem>,
    /// Pregraph records; bases are generated when absent.
    #[arg(long)]
    bases: Option<PathBuf>,
    /// Largest base order to generate when `--bases` is absent.
    #[arg(long, default_value_t = 2)]
    max_n: usize,
    /// Directory of group tables.
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Group specs, e.g. `C5`, `C2..C9`, `C3xD5`.
    #[arg(long = "group", num_args = 1..)]
    group_specs: Vec<String>,
    /// Base orders for hill climbing.
    #[arg(long, num_args = 1..)]
    vertices: Vec<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    stop_after: Option<usize>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    girth: Option<usize>,
    /// Require regular girth-cycle counts through vertices.
    #[arg(long)]
    vgr: bool,
    /// Require regular girth-cycle counts through edges.
    #[arg(long)]
    egr: bool,
    /// Require no cycle of length girth + 1.
    #[arg(long)]
    no_g1: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `u,v`")?;
    Ok((a.trim().parse().map_err(|_| "bad u")?, b.trim().parse().map_err(|_| "bad v")?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_graphs(path: &Path) -> Result<Vec<SimpleGraph>> {
    parse_graph_file(&read(path)?).map_err(|(line, e)| anyhow::anyhow!("{} line {line}: {e}", path.display()))
}

fn load_group(arg: &str) -> Result<FiniteGroup> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(FiniteGroup::parse(&read(p)?)?)
    } else {
        Ok(parse_group_spec(arg)?)
    }
}

fn print_summary(s: &Summary) -> Result<()> {
    write_out(None, &format!("{}\n", serde_json::to_string_pretty(s)?))
}

fn gen_base(k: usize, n: usize, no_semi: bool, no_loops: bool, output: Option<&Path>) -> Result<()> {
    let opts = BaseGenOptions { allow_semi: !no_semi, allow_loops: !no_loops, ..BaseGenOptions::default() };
    let gs = generate_base_graphs(k, n, &opts)?;
    let text: Vec<String> = gs.iter().map(Pregraph::to_text).collect();
    write_out(output, &text.join("\n"))?;
    eprintln!("{} base graphs", gs.len());
    Ok(())
}

fn search(a: SearchArgs) -> Result<bool> {
    let problem = a.problem.unwrap_or(Problem::Cage { k: a.k, g: a.girth });
    let mode = match a.mode {
        SearchMode::Bta => Mode::Bta,
        SearchMode::Tabu => Mode::Tabu,
        SearchMode::Hill => Mode::Hill,
    };
    let mut job = JobSpec::new(problem, mode);
    job.bases = Some(match a.bases {
        Some(p) => BaseSource::File(p),
        None => BaseSource::Generate { k: Some(a.k), n_min: 1, n_max: a.max_n, loops: true, semi: true },
    });
    job.group_dir = a.groups;
    job.groups = a.group_specs;
    job.vertices = a.vertices;
    job.stop_after = a.stop_after;
    let text = a.config.as_deref().map(read).transpose()?.unwrap_or_default();
    SearchConfig::with_girth(a.girth).apply(&text).context("config")?;
    job.config = config_map(&text);
    job.config.insert("g_min".into(), a.girth.into());
    fs::create_dir_all(&a.output)?;
    let cat = Mutex::new(Catalog::open(&a.output.join("catalog.jsonl"))?);
    let opts = RunOptions { workers: a.workers, ..RunOptions::default() }.with_env_seed().map_err(anyhow::Error::msg)?;
    let s = run(&[job], &opts, &cat)?;
    let cat = cat.into_inner().expect("catalog lock");
    let g6: String = cat.entries().iter().filter(|e| e.problem == problem).map(|e| format!("{}\n", e.graph6)).collect();
    fs::write(a.output.join("graphs.g6"), g6)?;
    print_summary(&s)?;
    Ok(s.jobs.iter().all(|j| j.errors.is_empty()))
}

/// Keys set in a config file, passed through to the job untouched.
fn config_map(text: &str) -> std::collections::BTreeMap<String, serde_json::Value> {
    text.lines()
        .filter_map(|l| l.split('#').next())
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), serde_json::Value::String(v.trim().to_string())))
        .collect()
}

fn excise_cmd(pattern: Pattern, cage: &Path, k: usize, anchor: Option<(usize, usize)>, output: Option<&Path>) -> Result<()> {
    let g = read_graphs(cage)?.into_iter().next().context("no graph in input")?;
    let p = plan(&g, pattern, k, anchor)?;
    let (h, _) = excise(&g, &p)?;
    let deficient = (0..h.n()).filter(|&v| h.degree(v) < k).count();
    eprintln!(
        "{pattern}: anchors {} {}, removed {} of {}, remainder {} vertices, {} deficient, connected {}",
        p.u,
        p.v,
        p.removed.len(),
        g.n(),
        h.n(),
        deficient,
        h.is_connected()
    );
    write_out(output, &format!("{}\n", h.to_graph6()))
}

fn complete_cmd(k: usize, girth: usize, limit: usize, budget: f64, input: &Path, output: &Path) -> Result<()> {
    let budget = Duration::try_from_secs_f64(budget).context("bad budget")?;
    fs::create_dir_all(output)?;
    let mut total = 0;
    for (i, g) in read_graphs(input)?.iter().enumerate() {
        let c = complete_to_regular(g, k, girth, limit, budget);
        let text: String = c.graphs.iter().map(|h| format!("{}\n", h.to_graph6())).collect();
        fs::write(output.join(format!("completions-{i}.g6")), text)?;
        eprintln!("input {i}: {} completions{}", c.graphs.len(), if c.exhausted { "" } else { " (search cut short)" });
        total += c.graphs.len();
    }
    eprintln!("{total} completions");
    Ok(())
}

fn lambda_text(l: Lambda) -> String {
    match l {
        Lambda::Regular(x) => x.to_string(),
        Lambda::Irregular => "irregular".into(),
        Lambda::Acyclic => "acyclic".into(),
        Lambda::NotComputed => "-".into(),
    }
}

fn verify_cmd(a: VerifyArgs) -> Result<bool> {
    let graphs = read_graphs(&a.input)?;
    let targets = Targets { lambda: true, g_plus_1: true, canonical: true };
    let mut all_ok = true;
    let mut reports: Vec<(GraphReport, Vec<String>)> = Vec::new();
    for g in &graphs {
        let r = classify(g, targets);
        let mut fails = Vec::new();
        if a.k.is_some_and(|k| r.k != Some(k)) {
            fails.push("degree");
        }
        if a.girth.is_some_and(|x| r.girth != Some(x)) {
            fails.push("girth");
        }
        if a.vgr && r.lambda_v.value().is_none() {
            fails.push("vgr");
        }
        if a.egr && r.lambda_e.value().is_none() {
            fails.push("egr");
        }
        if a.no_g1 && r.has_g_plus_1_cycle != Some(false) {
            fails.push("no-g1");
        }
        all_ok &= fails.is_empty();
        reports.push((r, fails.into_iter().map(String::from).collect()));
    }
    match a.report {
        ReportFormat::Json => {
            let v: Vec<serde_json::Value> = reports
                .iter()
                .map(|(r, f)| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["failed"] = serde_json::json!(f);
                    v
                })
                .collect();
            write_out(None, &format!("{}\n", serde_json::to_string_pretty(&v)?))?;
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for (i, (r, f)) in reports.iter().enumerate() {
                out += &format!(
                    "{i}: n={} k={} girth={} connected={} bipartite={} lambda_v={} lambda_e={} g+1={} {}{}\n",
                    r.n,
                    r.k.map_or("-".into(), |k| k.to_string()),
                    r.girth.map_or("inf".into(), |g| g.to_string()),
                    r.connected,
                    r.bipartite,
                    lambda_text(r.lambda_v),
                    lambda_text(r.lambda_e),
                    r.has_g_plus_1_cycle.map_or("-".into(), |b| b.to_string()),
                    r.canonical_digest.as_deref().unwrap_or(""),
                    if f.is_empty() { String::new() } else { format!(" FAILED {}", f.join(",")) }
                );
            }
            write_out(None, &out)?;
        }
    }
    Ok(all_ok)
}

fn lift_cmd(base: &Path, group: &str, volt: &Path, output: Option<&Path>) -> Result<()> {
    let g = Pregraph::parse(&read(base)?)?;
    let grp = load_group(group)?;
    let (alpha, _) = VoltageAssignment::parse(&read(volt)?, &g, &grp)?;
    let h = lift(&g, &grp, &alpha)?;
    write_out(output, &format!("{}\n", h.to_graph6()))
}

fn run_cmd(jobs: &Path, workers: usize, catalog: &Path) -> Result<bool> {
    let jobs = load_jobs(jobs)?;
    let cat = Mutex::new(Catalog::open(catalog)?);
    let opts = RunOptions { workers, ..RunOptions::default() }.with_env_seed().map_err(anyhow::Error::msg)?;
    let s = run(&jobs, &opts, &cat)?;
    print_summary(&s)?;
    Ok(s.jobs.iter().all(|j| j.errors.is_empty()))
}

fn fixtures_cmd(large: bool) -> Result<bool> {
    let mut ok = true;
    for id in fixture_ids() {
        if id == "cage-6-12" && !large {
            println!("{id}: skipped (use --large)");
            continue;
        }
        let f = load_fixture(&id)?;
        let (r, misses) = f.check()?;
        ok &= misses.is_empty();
        let status = if misses.is_empty() { "ok".to_string() } else { format!("MISMATCH {}", misses.join("; ")) };
        println!("{id}: n={} k={:?} girth={:?} bipartite={} {status}", r.n, r.k, r.girth, r.bipartite);
    }
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::GenBase { k, n, no_semi, no_loops, output } => gen_base(k, n, no_semi, no_loops, output.as_deref()).map(|_| true),
        Cmd::Search(a) => search(a),
        Cmd::Excise { pattern, cage, k, anchor, output } => excise_cmd(pattern, &cage, k, anchor, output.as_deref()).map(|_| true),
        Cmd::Complete { k, girth, limit, budget, input, output } => complete_cmd(k, girth, limit, budget, &input, &output).map(|_| true),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Lift { base, group, volt, output } => lift_cmd(&base, &group, &volt, output.as_deref()).map(|_| true),
        Cmd::Run { jobs, workers, catalog } => run_cmd(&jobs, workers, &catalog),
        Cmd::Catalog { cmd: CatalogCmd::Best { problem, catalog } } => Catalog::open(&catalog).map_err(Into::into).map(|c| {
            match c.best(problem) {
                Some((order, count)) => println!("{problem}: order {order}, {count} graph(s)"),
                None => println!("{problem}: none"),
            }
            true
        }),
        Cmd::Catalog { cmd: CatalogCmd::Check { catalog } } => (|| -> Result<bool> {
            let c = Catalog::open(&catalog)?;
            c.verify_all()?;
            println!("{} entries verified", c.len());
            Ok(true)
        })(),
        Cmd::Fixtures { large } => fixtures_cmd(large),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

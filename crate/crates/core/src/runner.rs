//! Job files, parallel execution over base and group pairs, and cataloging
//! of verified results.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::basegen::{generate_base_graphs, BaseGenOptions, DEFAULT_CAP};
use crate::catalog::{Catalog, CatalogEntry, CatalogError, Insert, Provenance};
use crate::excision::{complete_to_regular, excise, plan, Pattern};
use crate::graph::{parse_graph_file, SimpleGraph};
use crate::group::{cyclic, parse_group_spec, constructor_groups, FiniteGroup};
use crate::pregraph::Pregraph;
use crate::search::{bta, hill_climb, tabu_search, Found, Offer, Problem, SearchConfig, Sink, TabuMode};

pub const SEED_ENV: &str = "GIRTH_FORGE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bta,
    Tabu,
    Hill,
    Excise,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Bta => "bta",
            Mode::Tabu => "tabu",
            Mode::Hill => "hill",
            Mode::Excise => "excise",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSource {
    /// Blank-line separated pregraph records.
    File(PathBuf),
    /// Every k-regular base on `n_min..=n_max` vertices; `k` defaults to the
    /// problem's degree.
    Generate {
        #[serde(default)]
        k: Option<usize>,
        #[serde(default = "one")]
        n_min: usize,
        n_max: usize,
        #[serde(default = "yes")]
        loops: bool,
        #[serde(default = "yes")]
        semi: bool,
    },
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExciseSpec {
    /// graph6 or sparse6 file; the first graph is used.
    pub graph: PathBuf,
    pub pattern: Pattern,
    #[serde(default)]
    pub anchors: Option<(usize, usize)>,
    #[serde(default = "default_limit")]
    pub limit: usize,
    /// Seconds.
    #[serde(default = "default_budget")]
    pub budget: f64,
}

fn default_limit() -> usize {
    1000
}

fn default_budget() -> f64 {
    60.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub problem: Problem,
    pub mode: Mode,
    #[serde(default)]
    pub bases: Option<BaseSource>,
    /// Group specs such as `C5`, `C3xD5` or `C13:C9@3`; `C2..C6` expands to
    /// the cyclic groups of those orders.
    #[serde(default)]
    pub groups: Vec<String>,
    /// Directory of `*.tbl` group tables.
    #[serde(default)]
    pub group_dir: Option<PathBuf>,
    /// Adds every constructor group up to this order.
    #[serde(default)]
    pub groups_max_order: Option<usize>,
    /// Base sizes for hill climbing.
    #[serde(default)]
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub excise: Option<ExciseSpec>,
    /// `SearchConfig` keys; `g_min` defaults to the problem's girth.
    #[serde(default)]
    pub config: BTreeMap<String, serde_json::Value>,
    /// Stop the job after this many distinct accepted graphs.
    #[serde(default)]
    pub stop_after: Option<usize>,
}

#[derive(Debug, Error)]
pub enum JobsError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("job {index}: {source}")]
    Json { index: usize, source: serde_json::Error },
}

/// Reads a JSON array of jobs or one job object per line.
pub fn parse_jobs(text: &str) -> Result<Vec<JobSpec>, JobsError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|source| JobsError::Json { index: 0, source });
    }
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .enumerate()
        .map(|(index, l)| serde_json::from_str(l).map_err(|source| JobsError::Json { index, source }))
        .collect()
}

/// Reads a job file; relative paths inside it are resolved against its
/// directory.
pub fn load_jobs(path: &Path) -> Result<Vec<JobSpec>, JobsError> {
    let text = fs::read_to_string(path).map_err(|source| JobsError::Io { path: path.to_path_buf(), source })?;
    let mut jobs = parse_jobs(&text)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    for j in &mut jobs {
        j.resolve_paths(dir);
    }
    Ok(jobs)
}

impl JobSpec {
    pub fn new(problem: Problem, mode: Mode) -> Self {
        JobSpec {
            name: None,
            problem,
            mode,
            bases: None,
            groups: Vec::new(),
            group_dir: None,
            groups_max_order: None,
            vertices: Vec::new(),
            excise: None,
            config: BTreeMap::new(),
            stop_after: None,
        }
    }

    pub fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        if let Some(BaseSource::File(p)) = &mut self.bases {
            fix(p);
        }
        if let Some(p) = &mut self.group_dir {
            fix(p);
        }
        if let Some(e) = &mut self.excise {
            fix(&mut e.graph);
        }
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{} {}", self.mode.name(), self.problem))
    }

    pub fn search_config(&self) -> Result<SearchConfig, String> {
        let mut c = SearchConfig::with_girth(self.problem.girth());
        for (k, v) in &self.config {
            let v = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(_) | serde_json::Value::Bool(_) => v.to_string(),
                other => return Err(format!("config `{k}`: unsupported value {other}")),
            };
            c.set(k, &v).map_err(|e| format!("config: {e}"))?;
        }
        c.validate().map_err(|e| format!("config: {e}"))?;
        Ok(c)
    }

    fn load_bases(&self) -> Result<Vec<(String, Pregraph)>, String> {
        match self.bases {
            None => Err("job needs `bases`".into()),
            Some(BaseSource::File(ref p)) => {
                let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                let gs = Pregraph::parse_many(&text).map_err(|(i, e)| format!("{} record {i}: {e}", p.display()))?;
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                Ok(gs.into_iter().enumerate().map(|(i, g)| (format!("{stem}#{i}"), g)).collect())
            }
            Some(BaseSource::Generate { k, n_min, n_max, loops, semi }) => {
                let k = k.or(self.problem.degree()).ok_or("base generation needs `k` for girth problems")?;
                let opts = BaseGenOptions { cap: DEFAULT_CAP, allow_loops: loops, allow_semi: semi };
                let mut out = Vec::new();
                for n in n_min.max(1)..=n_max {
                    let gs = generate_base_graphs(k, n, &opts).map_err(|e| e.to_string())?;
                    out.extend(gs.into_iter().enumerate().map(|(i, g)| (format!("k{k}n{n}#{i}"), g)));
                }
                Ok(out)
            }
        }
    }

    fn load_groups(&self) -> Result<Vec<FiniteGroup>, String> {
        let mut out = Vec::new();
        for spec in &self.groups {
            if let Some((a, b)) = spec.split_once("..") {
                let num = |s: &str| s.trim().trim_start_matches('C').parse::<usize>().map_err(|_| format!("bad group range `{spec}`"));
                for n in num(a)?..=num(b)? {
                    out.push(cyclic(n).map_err(|e| e.to_string())?);
                }
            } else {
                out.push(parse_group_spec(spec).map_err(|e| e.to_string())?);
            }
        }
        if let Some(dir) = &self.group_dir {
            let rd = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            let mut files: Vec<PathBuf> = rd.filter_map(Result::ok).map(|e| e.path()).filter(|p| p.extension().is_some_and(|x| x == "tbl")).collect();
            files.sort();
            for f in files {
                let text = fs::read_to_string(&f).map_err(|e| format!("{}: {e}", f.display()))?;
                out.push(FiniteGroup::parse(&text).map_err(|e| format!("{}: {e}", f.display()))?);
            }
        }
        if let Some(m) = self.groups_max_order {
            out.extend(constructor_groups(m));
        }
        if out.is_empty() {
            return Err("job lists no groups".into());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobReport {
    pub index: usize,
    pub name: String,
    pub problem: Problem,
    pub mode: Mode,
    pub tasks: usize,
    pub offered: u64,
    /// Distinct graphs the problem accepted.
    pub accepted: u64,
    pub inserted: u64,
    pub duplicates: u64,
    /// True when every task searched its whole space.
    pub complete: bool,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestRecord {
    pub problem: Problem,
    pub order: usize,
    pub count: usize,
    pub previous: Option<(usize, usize)>,
}

impl BestRecord {
    pub fn improved(&self) -> bool {
        self.previous.is_none_or(|(o, _)| self.order < o)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub jobs: Vec<JobReport>,
    /// Best known order for every problem the run touched.
    pub best: Vec<BestRecord>,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub workers: usize,
    /// Replaces every job's `rng_seed`.
    pub seed: Option<u64>,
    /// Catalog entries re-verified before the run.
    pub spot_check: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { workers: 1, seed: None, spot_check: 10 }
    }
}

impl RunOptions {
    /// Reads the seed override from the environment.
    pub fn with_env_seed(mut self) -> Result<Self, String> {
        if let Ok(s) = std::env::var(SEED_ENV) {
            self.seed = Some(s.trim().parse().map_err(|_| format!("{SEED_ENV}=`{s}` is not an integer"))?);
        }
        Ok(self)
    }
}

struct JobState {
    problem: Problem,
    seed: u64,
    stop_after: Option<usize>,
    offered: AtomicU64,
    inserted: AtomicU64,
    duplicates: AtomicU64,
    digests: Mutex<HashSet<String>>,
    errors: Mutex<Vec<String>>,
    incomplete: AtomicUsize,
}

impl JobState {
    fn error(&self, msg: String) {
        self.errors.lock().expect("error lock").push(msg);
    }

    fn accepted(&self) -> usize {
        self.digests.lock().expect("digest lock").len()
    }
}

struct JobSink<'a> {
    job: &'a JobState,
    catalog: &'a Mutex<Catalog>,
    base_id: &'a str,
}

impl JobSink<'_> {
    fn offer_graph(&self, graph: &SimpleGraph, mode: &str, group: &str, assignment: String) -> Offer {
        let job = self.job;
        job.offered.fetch_add(1, Ordering::Relaxed);
        if !job.problem.accepts(graph) {
            return Offer::Uninteresting;
        }
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let prov = Provenance { mode: mode.into(), base: self.base_id.into(), group: group.into(), assignment, seed: job.seed, timestamp };
        let v = match CatalogEntry::verified(job.problem, graph, prov) {
            Ok(v) => v,
            Err(e) => {
                job.error(format!("{}: re-verification failed: {e}", self.base_id));
                return Offer::Uninteresting;
            }
        };
        let fresh = job.digests.lock().expect("digest lock").insert(v.entry().digest.clone());
        match self.catalog.lock().expect("catalog lock").insert(v) {
            Ok(Insert::Inserted) => {
                job.inserted.fetch_add(1, Ordering::Relaxed);
            }
            Ok(Insert::Duplicate) => {
                job.duplicates.fetch_add(1, Ordering::Relaxed);
            }
            Err(e) => job.error(e.to_string()),
        }
        if fresh {
            Offer::Emitted
        } else {
            Offer::Duplicate
        }
    }
}

impl Sink for JobSink<'_> {
    fn offer(&self, f: Found<'_>) -> Offer {
        let text = f.alpha.to_text(f.base, self.base_id, f.group);
        let assignment = hex::encode(Sha256::digest(text.as_bytes()));
        self.offer_graph(f.graph, f.mode, f.group.name(), assignment)
    }

    fn satisfied(&self) -> bool {
        self.job.stop_after.is_some_and(|n| self.job.accepted() >= n)
    }
}

enum Task {
    Lift { job: usize, base_id: String, base: Arc<Pregraph>, group: Arc<FiniteGroup> },
    Hill { job: usize, n: usize, group: Arc<FiniteGroup> },
    Excise { job: usize },
}

impl Task {
    fn job(&self) -> usize {
        match *self {
            Task::Lift { job, .. } | Task::Hill { job, .. } | Task::Excise { job } => job,
        }
    }
}

fn expand(index: usize, job: &JobSpec) -> Result<Vec<Task>, String> {
    match job.mode {
        Mode::Bta | Mode::Tabu => {
            let groups: Vec<Arc<FiniteGroup>> = job.load_groups()?.into_iter().map(Arc::new).collect();
            let bases = job.load_bases()?;
            let mut out = Vec::new();
            for (base_id, base) in bases {
                let base = Arc::new(base);
                for group in &groups {
                    out.push(Task::Lift { job: index, base_id: base_id.clone(), base: base.clone(), group: group.clone() });
                }
            }
            Ok(out)
        }
        Mode::Hill => {
            if job.vertices.is_empty() {
                return Err("hill job needs `vertices`".into());
            }
            let groups = job.load_groups()?;
            Ok(job
                .vertices
                .iter()
                .flat_map(|&n| groups.iter().map(move |g| Task::Hill { job: index, n, group: Arc::new(g.clone()) }))
                .collect())
        }
        Mode::Excise => {
            if job.excise.is_none() {
                return Err("excise job needs `excise`".into());
            }
            if job.problem.degree().is_none() {
                return Err("excise job needs a problem with a degree".into());
            }
            Ok(vec![Task::Excise { job: index }])
        }
    }
}

fn run_task(task: &Task, spec: &JobSpec, cfg: &SearchConfig, state: &JobState, catalog: &Mutex<Catalog>) -> Result<bool, String> {
    match task {
        Task::Lift { base_id, base, group, .. } => {
            let sink = JobSink { job: state, catalog, base_id };
            match spec.mode {
                Mode::Bta => {
                    let out = bta(base, group, cfg, &sink).map_err(|e| format!("{base_id} x {}: {e}", group.name()))?;
                    Ok(out.complete)
                }
                _ => {
                    let mode = match spec.problem {
                        Problem::Vgr { .. } | Problem::Egr { .. } => TabuMode::Regularity,
                        _ => TabuMode::Girth,
                    };
                    tabu_search(base, group, cfg, mode, &sink).map_err(|e| format!("{base_id} x {}: {e}", group.name()))?;
                    Ok(false)
                }
            }
        }
        Task::Hill { n, group, .. } => {
            let id = format!("edgeless{n}");
            let sink = JobSink { job: state, catalog, base_id: &id };
            let out = hill_climb(*n, group, spec.problem.girth(), cfg.t_hill, &sink);
            Ok(out.exhausted)
        }
        Task::Excise { .. } => {
            let ex = spec.excise.as_ref().expect("checked in expand");
            let text = fs::read_to_string(&ex.graph).map_err(|e| format!("{}: {e}", ex.graph.display()))?;
            let g = parse_graph_file(&text)
                .map_err(|(l, e)| format!("{} line {l}: {e}", ex.graph.display()))?
                .into_iter()
                .next()
                .ok_or_else(|| format!("{}: no graph", ex.graph.display()))?;
            let k = spec.problem.degree().expect("checked in expand");
            let p = plan(&g, ex.pattern, k, ex.anchors).map_err(|e| e.to_string())?;
            let (h, _) = excise(&g, &p).map_err(|e| e.to_string())?;
            let budget = Duration::try_from_secs_f64(ex.budget).map_err(|_| format!("bad budget {}", ex.budget))?;
            let done = complete_to_regular(&h, k, spec.problem.girth(), ex.limit, budget);
            let id = format!("{}:{}", ex.graph.display(), ex.pattern);
            let sink = JobSink { job: state, catalog, base_id: &id };
            for c in &done.graphs {
                sink.offer_graph(c, "excise", "", String::new());
            }
            Ok(done.exhausted)
        }
    }
}

/// Runs the jobs on up to `opts.workers` threads. A failing job or task is
/// recorded in its report and never stops the others.
pub fn run(jobs: &[JobSpec], opts: &RunOptions, catalog: &Mutex<Catalog>) -> Result<Summary, CatalogError> {
    {
        let cat = catalog.lock().expect("catalog lock");
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
        cat.spot_check(opts.spot_check, &mut rng)?;
    }
    let before: BTreeMap<String, (usize, usize)> = {
        let cat = catalog.lock().expect("catalog lock");
        cat.problems().map(|(p, o, c)| (p.to_string(), (o, c))).collect()
    };

    let mut configs = Vec::with_capacity(jobs.len());
    let mut states = Vec::with_capacity(jobs.len());
    let mut tasks = Vec::new();
    for (i, job) in jobs.iter().enumerate() {
        let cfg = job.search_config().map(|mut c| {
            if let Some(s) = opts.seed {
                c.rng_seed = s;
            }
            c
        });
        let state = JobState {
            problem: job.problem,
            seed: cfg.as_ref().map_or(0, |c| c.rng_seed),
            stop_after: job.stop_after,
            offered: AtomicU64::new(0),
            inserted: AtomicU64::new(0),
            duplicates: AtomicU64::new(0),
            digests: Mutex::new(HashSet::new()),
            errors: Mutex::new(Vec::new()),
            incomplete: AtomicUsize::new(0),
        };
        match cfg.clone().and_then(|_| expand(i, job)) {
            Ok(t) => tasks.extend(t),
            Err(e) => state.error(e),
        }
        configs.push(cfg.unwrap_or_default());
        states.push(state);
    }
    let task_counts: Vec<usize> = (0..jobs.len()).map(|j| tasks.iter().filter(|t| t.job() == j).count()).collect();

    let next = AtomicUsize::new(0);
    let workers = opts.workers.max(1).min(tasks.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(i) else { break };
                let j = task.job();
                let state = &states[j];
                if state.stop_after.is_some_and(|n| state.accepted() >= n) {
                    continue;
                }
                let res = catch_unwind(AssertUnwindSafe(|| run_task(task, &jobs[j], &configs[j], state, catalog)));
                match res {
                    Ok(Ok(true)) => {}
                    Ok(Ok(false)) => {
                        state.incomplete.fetch_add(1, Ordering::Relaxed);
                    }
                    Ok(Err(e)) => {
                        state.incomplete.fetch_add(1, Ordering::Relaxed);
                        state.error(e);
                    }
                    Err(p) => {
                        state.incomplete.fetch_add(1, Ordering::Relaxed);
                        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                        state.error(format!("task panicked: {}", msg.unwrap_or_default()));
                    }
                }
            });
        }
    });

    let mut summary = Summary::default();
    for (i, (job, st)) in jobs.iter().zip(&states).enumerate() {
        let errors = st.errors.lock().expect("error lock").clone();
        summary.jobs.push(JobReport {
            index: i,
            name: job.label(),
            problem: job.problem,
            mode: job.mode,
            tasks: task_counts[i],
            offered: st.offered.load(Ordering::Relaxed),
            accepted: st.accepted() as u64,
            inserted: st.inserted.load(Ordering::Relaxed),
            duplicates: st.duplicates.load(Ordering::Relaxed),
            complete: errors.is_empty() && st.incomplete.load(Ordering::Relaxed) == 0,
            errors,
        });
    }
    let cat = catalog.lock().expect("catalog lock");
    let touched: HashSet<Problem> = jobs.iter().map(|j| j.problem).collect();
    for (problem, order, count) in cat.problems() {
        if touched.contains(&problem) {
            summary.best.push(BestRecord { problem, order, count, previous: before.get(&problem.to_string()).copied() });
        }
    }
    Ok(summary)
}

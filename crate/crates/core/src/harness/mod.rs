//! Experiment harness: run heuristic combinations over generated graph
//! corpora and collect one CSV row per run.
//!
//! An [`ExperimentSpec`] names generator specs, heuristic combos, a page
//! range (explicit or adaptive), a repetition count and a master seed.
//! [`run_experiment`] derives every per-run seed from the master seed, so a
//! whole experiment, or any single record, can be reproduced exactly.
//! Graphs are relabeled with [`randomize_representation`] before each
//! repetition so heuristics never see the generator's construction order.

pub mod config;
pub mod report;

pub use config::{parse_config, parse_pages};

use std::fs::OpenOptions;
use std::io::{Read as _, Write as _};
use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use crate::generators::{randomize_representation, GeneratorError, GeneratorSpec};
use crate::heuristics::{run_combo, HeuristicCombo, LocalSearchParams, VoName};
use crate::local_search::ScheduleError;
use crate::seeds::{derive_seed, hash_name};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("experiment spec: {0}")]
    BadSpec(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("csv line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Page counts to evaluate: an explicit list or the adaptive sweep rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PageSpec {
    List(Vec<usize>),
    Adaptive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub graphs: Vec<GeneratorSpec>,
    pub combos: Vec<HeuristicCombo>,
    pub pages: PageSpec,
    pub reps: usize,
    pub master_seed: u64,
    pub ls_params: LocalSearchParams,
    /// Default CSV destination, if the config named one.
    pub out_path: Option<String>,
}

impl ExperimentSpec {
    pub fn new(graphs: Vec<GeneratorSpec>, combos: Vec<HeuristicCombo>, pages: PageSpec) -> Self {
        ExperimentSpec {
            graphs,
            combos,
            pages,
            reps: 200,
            master_seed: 0,
            ls_params: LocalSearchParams::default(),
            out_path: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.graphs.is_empty() {
            return Err(HarnessError::BadSpec("no graph specs".into()));
        }
        if self.combos.is_empty() {
            return Err(HarnessError::BadSpec("no heuristic combos".into()));
        }
        if self.reps < 1 {
            return Err(HarnessError::BadSpec(
                "repetitions must be at least 1".into(),
            ));
        }
        match &self.pages {
            PageSpec::List(ks) if ks.is_empty() => {
                Err(HarnessError::BadSpec("page list must not be empty".into()))
            }
            PageSpec::List(ks) if ks.contains(&0) => {
                Err(HarnessError::BadSpec("page counts start at 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One measured heuristic run; also one CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub graph_id: String,
    pub class: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub vo_name: String,
    pub pa_name: String,
    pub ls_name: String,
    pub crossings: u64,
    pub time_ms: f64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "graph_id,class,n,m,k,vo_name,pa_name,ls_name,crossings,time_ms,seed";

impl ResultRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3},{}",
            self.graph_id,
            self.class,
            self.n,
            self.m,
            self.k,
            self.vo_name,
            self.pa_name,
            self.ls_name,
            self.crossings,
            self.time_ms,
            self.seed
        )
    }

    pub fn from_csv_row(row: &str, line: usize) -> Result<Self, HarnessError> {
        let err = |msg: String| HarnessError::Csv { line, msg };
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 11 {
            return Err(err(format!("expected 11 fields, got {}", fields.len())));
        }
        macro_rules! num {
            ($idx:expr, $what:expr) => {
                fields[$idx]
                    .parse()
                    .map_err(|_| err(format!("bad {}: {:?}", $what, fields[$idx])))?
            };
        }
        Ok(ResultRecord {
            graph_id: fields[0].to_string(),
            class: fields[1].to_string(),
            n: num!(2, "n"),
            m: num!(3, "m"),
            k: num!(4, "k"),
            vo_name: fields[5].to_string(),
            pa_name: fields[6].to_string(),
            ls_name: fields[7].to_string(),
            crossings: num!(8, "crossings"),
            time_ms: num!(9, "time_ms"),
            seed: num!(10, "seed"),
        })
    }

    /// The `vo[-pa][:ls]` label this record was produced by.
    pub fn combo_label(&self) -> String {
        let mut s = self.vo_name.clone();
        if self.pa_name != "none" && self.pa_name != "builtin" {
            s.push('-');
            s.push_str(&self.pa_name);
        }
        if self.ls_name != "none" {
            s.push(':');
            s.push_str(&self.ls_name);
        }
        s
    }

    /// Graph label without the repetition suffix.
    pub fn graph_base(&self) -> &str {
        self.graph_id.split('#').next().unwrap_or(&self.graph_id)
    }
}

fn record_names(combo: &HeuristicCombo) -> (String, String, String) {
    let vo = combo.vo.to_string();
    let pa = match combo.pa {
        Some(p) => p.to_string(),
        None if combo.vo == VoName::ConGreedyPlus => "builtin".to_string(),
        None => "none".to_string(),
    };
    let ls = combo
        .ls
        .map_or_else(|| "none".to_string(), |l| l.to_string());
    (vo, pa, ls)
}

/// How the page counts for one generator spec were chosen.
#[derive(Debug, Clone)]
pub struct PagePlan {
    pub graph: String,
    pub pages: Vec<usize>,
    /// Present when the adaptive rule ran.
    pub sweep: Option<PageSweep>,
}

/// Adaptive sweep outcome: the pages probed and the best probe mean at each.
#[derive(Debug, Clone)]
pub struct PageSweep {
    pub pages: Vec<usize>,
    pub probe_means: Vec<f64>,
    pub probes: Vec<String>,
}

const ADAPTIVE_TARGET: f64 = 10.0;
const ADAPTIVE_CAP: usize = 20;
const ADAPTIVE_MAX_REPS: usize = 20;

fn probe_combos() -> Vec<HeuristicCombo> {
    vec![
        "conGreedy+".parse().expect("probe combo parses"),
        "conGreedy-ceilFloor".parse().expect("probe combo parses"),
    ]
}

/// Pages 2, 3, ... until the better of the probe heuristics drops below ten
/// mean crossings, capped at twenty pages. Probes run on their own derived
/// seed stream with at most [`ADAPTIVE_MAX_REPS`] repetitions.
pub fn adaptive_page_sweep(
    spec: &ExperimentSpec,
    gspec: &GeneratorSpec,
) -> Result<PageSweep, HarnessError> {
    let probes = probe_combos();
    let reps = spec.reps.clamp(1, ADAPTIVE_MAX_REPS);
    let base = derive_seed(
        derive_seed(spec.master_seed, hash_name("adaptive-probe")),
        hash_name(&gspec.label()),
    );
    let graphs: Vec<_> = (0..reps)
        .map(|rep| {
            let gseed = derive_seed(base, rep as u64);
            let raw = gspec.generate(derive_seed(gseed, 0))?;
            Ok((
                randomize_representation(&raw, derive_seed(gseed, 1)).0,
                gseed,
            ))
        })
        .collect::<Result<_, HarnessError>>()?;

    let mut pages = Vec::new();
    let mut probe_means = Vec::new();
    for k in 2..=ADAPTIVE_CAP {
        let mut best = f64::INFINITY;
        for combo in &probes {
            let mut total = 0u64;
            for (g, gseed) in &graphs {
                let run_seed = derive_seed(*gseed, hash_name(&format!("{k}|{}", combo.label())));
                let mut d = run_combo(g, k, run_seed, combo, &spec.ls_params)?;
                total += d.crossings();
            }
            best = best.min(total as f64 / graphs.len() as f64);
        }
        pages.push(k);
        probe_means.push(best);
        if best < ADAPTIVE_TARGET {
            break;
        }
    }
    Ok(PageSweep {
        pages,
        probe_means,
        probes: probes.iter().map(|c| c.label()).collect(),
    })
}

/// Everything an experiment produced: the records plus, per generator spec,
/// the page counts actually used.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub records: Vec<ResultRecord>,
    pub page_plans: Vec<PagePlan>,
}

/// Runs the full sweep: graphs x repetitions x pages x combos, in that
/// nesting order. Every seed is derived from the master seed, the generator
/// index, the repetition, and the (pages, combo) pair, so any single record
/// can be reproduced in isolation.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutput, HarnessError> {
    spec.validate()?;
    let mut records = Vec::new();
    let mut page_plans = Vec::new();
    for (gen_idx, gspec) in spec.graphs.iter().enumerate() {
        let (pages, sweep) = match &spec.pages {
            PageSpec::List(ks) => (ks.clone(), None),
            PageSpec::Adaptive => {
                let sweep = adaptive_page_sweep(spec, gspec)?;
                (sweep.pages.clone(), Some(sweep))
            }
        };
        page_plans.push(PagePlan {
            graph: gspec.label(),
            pages: pages.clone(),
            sweep,
        });

        let label = gspec.label();
        let class = gspec.class().to_string();
        let gen_seed = derive_seed(spec.master_seed, gen_idx as u64);
        for rep in 0..spec.reps {
            let gseed = derive_seed(gen_seed, rep as u64);
            let raw = gspec.generate(derive_seed(gseed, 0))?;
            let (g, _) = randomize_representation(&raw, derive_seed(gseed, 1));
            let graph_id = format!("{label}#r{rep:03}");
            for &k in &pages {
                for combo in &spec.combos {
                    let run_seed = derive_seed(gseed, hash_name(&format!("{k}|{}", combo.label())));
                    let start = Instant::now();
                    let mut d = run_combo(&g, k, run_seed, combo, &spec.ls_params)?;
                    let time_ms = start.elapsed().as_secs_f64() * 1e3;
                    let crossings = d.crossings();
                    let (vo_name, pa_name, ls_name) = record_names(combo);
                    records.push(ResultRecord {
                        graph_id: graph_id.clone(),
                        class: class.clone(),
                        n: g.n(),
                        m: g.m(),
                        k,
                        vo_name,
                        pa_name,
                        ls_name,
                        crossings,
                        time_ms,
                        seed: run_seed,
                    });
                }
            }
        }
    }
    Ok(ExperimentOutput {
        records,
        page_plans,
    })
}

/// Renders records as a CSV document with the fixed header.
pub fn render_csv(records: &[ResultRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.to_csv_row());
        s.push('\n');
    }
    s
}

pub fn parse_csv(text: &str) -> Result<Vec<ResultRecord>, HarnessError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        Some((_, h)) => {
            return Err(HarnessError::Csv {
                line: 1,
                msg: format!("unexpected header {h:?}"),
            })
        }
        None => {
            return Err(HarnessError::Csv {
                line: 1,
                msg: "empty input".into(),
            })
        }
    }
    lines
        .filter(|(_, row)| !row.is_empty())
        .map(|(i, row)| ResultRecord::from_csv_row(row, i + 1))
        .collect()
}

/// Appends rows to a CSV file, writing the header first when the file is new
/// or empty. Never rewrites existing content.
pub fn append_csv(path: &Path, records: &[ResultRecord]) -> Result<(), HarnessError> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let empty = file.metadata()?.len() == 0;
    let mut s = String::new();
    if empty {
        s.push_str(CSV_HEADER);
        s.push('\n');
    }
    for r in records {
        s.push_str(&r.to_csv_row());
        s.push('\n');
    }
    file.write_all(s.as_bytes())?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRecord>, HarnessError> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_csv(&text)
}

/// Canonical form for byte-exact comparisons: wall-clock timings are zeroed
/// (they never reproduce) and rows are sorted by every remaining field.
pub fn canonicalize(records: &mut [ResultRecord]) {
    for r in records.iter_mut() {
        r.time_ms = 0.0;
    }
    records.sort_by(|a, b| {
        (
            &a.graph_id,
            &a.class,
            a.n,
            a.m,
            a.k,
            &a.vo_name,
            &a.pa_name,
            &a.ls_name,
            a.crossings,
            a.seed,
        )
            .cmp(&(
                &b.graph_id,
                &b.class,
                b.n,
                b.m,
                b.k,
                &b.vo_name,
                &b.pa_name,
                &b.ls_name,
                b.crossings,
                b.seed,
            ))
    });
}

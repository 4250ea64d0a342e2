//! Text configuration for experiments.
//!
//! The format is flat `key = value` lines plus repeatable `[graph]` and
//! `[combo]` sections; `#` starts a comment. Example:
//!
//! ```text
//! reps = 50
//! seed = 7
//! pages = 2,3,4          # or: pages = adaptive
//! sa-iters = 2000        # annealing schedule overrides (optional)
//! sa-t0 = 5.0
//! sa-alpha = 0.995
//! max-rounds = 0         # 0 = run greedy local search to convergence
//! out = results.csv
//!
//! [graph]
//! class = ktree
//! n = 100
//! k = 3
//!
//! [combo]
//! label = conGreedy+
//!
//! [combo]
//! label = randDFS-eLen:greedyAlt
//! ```
//!
//! Top-level keys may appear in any order; later occurrences override
//! earlier ones. Each `[graph]` section needs `class` plus that class's
//! parameters, nothing more.

use std::collections::HashMap;

use super::{ExperimentSpec, HarnessError, PageSpec};
use crate::generators::{GeneratorSpec, GraphClass};
use crate::heuristics::HeuristicCombo;

fn cfg_err(line: usize, msg: impl Into<String>) -> HarnessError {
    HarnessError::Config {
        line,
        msg: msg.into(),
    }
}

/// Parses `"adaptive"` or a comma-separated page list like `"2,3,4"`.
pub fn parse_pages(s: &str) -> Result<PageSpec, HarnessError> {
    if s == "adaptive" {
        return Ok(PageSpec::Adaptive);
    }
    let ks = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| HarnessError::BadSpec(format!("bad page count {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PageSpec::List(ks))
}

struct SectionParams {
    line: usize,
    map: HashMap<String, String>,
}

impl SectionParams {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<String, HarnessError> {
        self.take(key)
            .ok_or_else(|| cfg_err(self.line, format!("missing key {key:?}")))
    }

    fn require_num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, HarnessError> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| cfg_err(self.line, format!("bad value for {key:?}: {raw:?}")))
    }

    fn finish(self) -> Result<(), HarnessError> {
        if let Some(key) = self.map.keys().next() {
            return Err(cfg_err(
                self.line,
                format!("unknown key {key:?} in section"),
            ));
        }
        Ok(())
    }
}

fn build_graph(mut p: SectionParams) -> Result<GeneratorSpec, HarnessError> {
    let line = p.line;
    let class_raw = p.require("class")?;
    let class: GraphClass = class_raw
        .parse()
        .map_err(|e| cfg_err(line, format!("{e}")))?;
    let spec = match class {
        GraphClass::RandomLinear => GeneratorSpec::RandomLinear {
            n: p.require_num("n")?,
            a: p.require_num("a")?,
        },
        GraphClass::RandomQuadratic => GeneratorSpec::RandomQuadratic {
            n: p.require_num("n")?,
            p: p.require_num("p")?,
        },
        GraphClass::PlanarTopological => GeneratorSpec::PlanarTopological {
            n: p.require_num("n")?,
        },
        GraphClass::OneplanarTopological => GeneratorSpec::OneplanarTopological {
            n: p.require_num("n")?,
        },
        GraphClass::KplanarGeometric => GeneratorSpec::KplanarGeometric {
            n: p.require_num("n")?,
            k: p.require_num("k")?,
        },
        GraphClass::Ktree => GeneratorSpec::Ktree {
            n: p.require_num("n")?,
            k: p.require_num("k")?,
        },
        GraphClass::Hypercube => GeneratorSpec::Hypercube {
            d: p.require_num("d")?,
        },
        GraphClass::Ccc => GeneratorSpec::Ccc {
            d: p.require_num("d")?,
        },
        GraphClass::Toroidal => GeneratorSpec::Toroidal {
            i: p.require_num("i")?,
            j: p.require_num("j")?,
        },
        GraphClass::Toroidal3 => GeneratorSpec::Toroidal3 {
            i: p.require_num("i")?,
            j: p.require_num("j")?,
            l: p.require_num("l")?,
        },
    };
    p.finish()?;
    Ok(spec)
}

fn build_combo(mut p: SectionParams) -> Result<HeuristicCombo, HarnessError> {
    let line = p.line;
    let label = p.require("label")?;
    let combo = label.parse().map_err(|e| cfg_err(line, format!("{e}")))?;
    p.finish()?;
    Ok(combo)
}

enum Section {
    Top,
    Graph(SectionParams),
    Combo(SectionParams),
}

pub fn parse_config(text: &str) -> Result<ExperimentSpec, HarnessError> {
    let mut spec = ExperimentSpec::new(Vec::new(), Vec::new(), PageSpec::List(vec![1]));
    let mut section = Section::Top;

    let close = |section: &mut Section, spec: &mut ExperimentSpec| -> Result<(), HarnessError> {
        match std::mem::replace(section, Section::Top) {
            Section::Top => {}
            Section::Graph(p) => spec.graphs.push(build_graph(p)?),
            Section::Combo(p) => spec.combos.push(build_combo(p)?),
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            close(&mut section, &mut spec)?;
            section = match name.trim() {
                "graph" => Section::Graph(SectionParams {
                    line: lineno,
                    map: HashMap::new(),
                }),
                "combo" => Section::Combo(SectionParams {
                    line: lineno,
                    map: HashMap::new(),
                }),
                other => return Err(cfg_err(lineno, format!("unknown section {other:?}"))),
            };
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| cfg_err(lineno, format!("expected key = value, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match &mut section {
            Section::Graph(p) | Section::Combo(p) => {
                p.map.insert(key.to_string(), value.to_string());
            }
            Section::Top => {
                let bad =
                    |what: &str| cfg_err(lineno, format!("bad value for {what:?}: {value:?}"));
                match key {
                    "reps" => spec.reps = value.parse().map_err(|_| bad("reps"))?,
                    "seed" => spec.master_seed = value.parse().map_err(|_| bad("seed"))?,
                    "pages" => {
                        spec.pages =
                            parse_pages(value).map_err(|e| cfg_err(lineno, format!("{e}")))?
                    }
                    "sa-iters" => {
                        spec.ls_params.schedule.iterations =
                            value.parse().map_err(|_| bad("sa-iters"))?
                    }
                    "sa-t0" => {
                        spec.ls_params.schedule.t0 = Some(value.parse().map_err(|_| bad("sa-t0"))?)
                    }
                    "sa-alpha" => {
                        spec.ls_params.schedule.alpha =
                            Some(value.parse().map_err(|_| bad("sa-alpha"))?)
                    }
                    "max-rounds" => {
                        spec.ls_params.max_rounds = value.parse().map_err(|_| bad("max-rounds"))?
                    }
                    "out" => spec.out_path = Some(value.to_string()),
                    other => return Err(cfg_err(lineno, format!("unknown key {other:?}"))),
                }
            }
        }
    }
    close(&mut section, &mut spec)?;
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "\
# experiment
reps = 5
seed = 99            # master seed
pages = 2,3
sa-iters = 500
sa-t0 = 4.5
sa-alpha = 0.99
max-rounds = 2
out = out.csv

[graph]
class = ktree
n = 12
k = 2

[graph]
class = toroidal
i = 4
j = 5

[combo]
label = conGreedy+

[combo]
label = randDFS-eLen:greedyAlt
";

    #[test]
    fn full_config_parses() {
        let spec = parse_config(FULL).unwrap();
        assert_eq!(spec.reps, 5);
        assert_eq!(spec.master_seed, 99);
        assert_eq!(spec.pages, PageSpec::List(vec![2, 3]));
        assert_eq!(spec.ls_params.schedule.iterations, 500);
        assert_eq!(spec.ls_params.schedule.t0, Some(4.5));
        assert_eq!(spec.ls_params.schedule.alpha, Some(0.99));
        assert_eq!(spec.ls_params.max_rounds, 2);
        assert_eq!(spec.out_path.as_deref(), Some("out.csv"));
        assert_eq!(
            spec.graphs,
            vec![
                GeneratorSpec::Ktree { n: 12, k: 2 },
                GeneratorSpec::Toroidal { i: 4, j: 5 },
            ]
        );
        assert_eq!(spec.combos.len(), 2);
        assert_eq!(spec.combos[0].label(), "conGreedy+");
        assert_eq!(spec.combos[1].label(), "randDFS-eLen:greedyAlt");
    }

    #[test]
    fn adaptive_pages_parse() {
        let spec = parse_config(
            "pages = adaptive\n[graph]\nclass = hypercube\nd = 3\n[combo]\nlabel = conCro-ceilFloor\n",
        )
        .unwrap();
        assert_eq!(spec.pages, PageSpec::Adaptive);
        assert_eq!(spec.reps, 200, "repetitions default to 200");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_config("reps = many\n").unwrap_err();
        assert!(matches!(err, HarnessError::Config { line: 1, .. }), "{err}");
        let err = parse_config("\n\nnonsense\n").unwrap_err();
        assert!(matches!(err, HarnessError::Config { line: 3, .. }));
        let err = parse_config("[mystery]\n").unwrap_err();
        assert!(matches!(err, HarnessError::Config { line: 1, .. }));
    }

    #[test]
    fn graph_sections_are_strict() {
        let missing = "[graph]\nclass = ktree\nn = 10\n[combo]\nlabel = conGreedy+\n";
        assert!(parse_config(missing).is_err(), "k is required for ktree");
        let unknown = "[graph]\nclass = hypercube\nd = 3\nzz = 1\n[combo]\nlabel = conGreedy+\n";
        assert!(parse_config(unknown).is_err());
        let badclass = "[graph]\nclass = octopus\nn = 3\n[combo]\nlabel = conGreedy+\n";
        assert!(parse_config(badclass).is_err());
    }

    #[test]
    fn combo_labels_are_validated() {
        let cfg = "[graph]\nclass = hypercube\nd = 3\n[combo]\nlabel = bogus-pa\n";
        let err = parse_config(cfg).unwrap_err();
        assert!(format!("{err}").contains("bogus"));
    }

    #[test]
    fn missing_sections_fail_validation() {
        assert!(parse_config("reps = 3\n").is_err());
        assert!(parse_config("[graph]\nclass = hypercube\nd = 3\n").is_err());
    }
}

//! Heuristic registry: canonical names, combo labels, and one-call dispatch.
//!
//! A combo label reads `vo[-pa][:ls]`, e.g. `conGreedy+-ceilFloor:greedyAlt`.
//! `conGreedy+` without a page strategy keeps the pages built during
//! construction; any other vertex heuristic without a page strategy puts all
//! edges on page 0.

pub mod con_greedy_plus;
pub mod page_assign;
pub mod vertex_order;

use crate::drawing::{BookDrawing, PageAssignment, VertexOrder};
use crate::graph::Graph;
use crate::local_search::{
    ls_greedy_alt, ls_greedy_plus, ls_simulated_annealing, AnnealingSchedule, ScheduleError,
};
use crate::seeds::derive_seed;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} name: {name:?}")]
pub struct NameError {
    kind: &'static str,
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VoName {
    SmlDgrDfs,
    RandDfs,
    TreeBfs,
    ConCro,
    ConGreedy,
    ConGreedyPlus,
}

impl VoName {
    pub const ALL: [VoName; 6] = [
        VoName::SmlDgrDfs,
        VoName::RandDfs,
        VoName::TreeBfs,
        VoName::ConCro,
        VoName::ConGreedy,
        VoName::ConGreedyPlus,
    ];

    fn as_str(self) -> &'static str {
        match self {
            VoName::SmlDgrDfs => "smlDgrDFS",
            VoName::RandDfs => "randDFS",
            VoName::TreeBfs => "treeBFS",
            VoName::ConCro => "conCro",
            VoName::ConGreedy => "conGreedy",
            VoName::ConGreedyPlus => "conGreedy+",
        }
    }
}

impl fmt::Display for VoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VoName {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, NameError> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| NameError {
                kind: "vertex-order heuristic",
                name: s.into(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PaName {
    CeilFloor,
    ELen,
    Circular,
    EarDecomp,
    Slope,
}

impl PaName {
    pub const ALL: [PaName; 5] = [
        PaName::CeilFloor,
        PaName::ELen,
        PaName::Circular,
        PaName::EarDecomp,
        PaName::Slope,
    ];

    fn as_str(self) -> &'static str {
        match self {
            PaName::CeilFloor => "ceilFloor",
            PaName::ELen => "eLen",
            PaName::Circular => "circular",
            PaName::EarDecomp => "earDecomp",
            PaName::Slope => "slope",
        }
    }
}

impl fmt::Display for PaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PaName {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, NameError> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| NameError {
                kind: "page-assignment heuristic",
                name: s.into(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LsName {
    GreedyAlt,
    GreedyPlus,
    Sa,
}

impl LsName {
    pub const ALL: [LsName; 3] = [LsName::GreedyAlt, LsName::GreedyPlus, LsName::Sa];

    fn as_str(self) -> &'static str {
        match self {
            LsName::GreedyAlt => "greedyAlt",
            LsName::GreedyPlus => "greedy+",
            LsName::Sa => "sa",
        }
    }
}

impl fmt::Display for LsName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LsName {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, NameError> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| NameError {
                kind: "local-search scheme",
                name: s.into(),
            })
    }
}

/// A full pipeline choice: spine heuristic, optional page heuristic, optional
/// local search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeuristicCombo {
    pub vo: VoName,
    pub pa: Option<PaName>,
    pub ls: Option<LsName>,
}

impl HeuristicCombo {
    pub fn new(vo: VoName, pa: Option<PaName>, ls: Option<LsName>) -> Self {
        HeuristicCombo { vo, pa, ls }
    }

    /// `vo[-pa][:ls]`.
    pub fn label(&self) -> String {
        let mut s = self.vo.to_string();
        if let Some(pa) = self.pa {
            s.push('-');
            s.push_str(pa.as_str());
        }
        if let Some(ls) = self.ls {
            s.push(':');
            s.push_str(ls.as_str());
        }
        s
    }
}

impl fmt::Display for HeuristicCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for HeuristicCombo {
    type Err = NameError;
    fn from_str(s: &str) -> Result<Self, NameError> {
        let (head, ls) = match s.split_once(':') {
            Some((head, ls)) => (head, Some(ls.parse()?)),
            None => (s, None),
        };
        // the vo name conGreedy+ contains no '-', so the first '-' separates
        let (vo, pa) = match head.split_once('-') {
            Some((vo, pa)) => (vo.parse()?, Some(pa.parse()?)),
            None => (head.parse()?, None),
        };
        Ok(HeuristicCombo { vo, pa, ls })
    }
}

/// Knobs forwarded to the optional local-search stage.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LocalSearchParams {
    pub schedule: AnnealingSchedule,
    /// Round/cycle cap for the greedy schemes, 0 = run to convergence.
    pub max_rounds: usize,
}

pub fn run_vo(name: VoName, g: &Graph, k: usize, seed: u64) -> VertexOrder {
    match name {
        VoName::SmlDgrDfs => vertex_order::vo_sml_dgr_dfs(g, seed),
        VoName::RandDfs => vertex_order::vo_rand_dfs(g, seed),
        VoName::TreeBfs => vertex_order::vo_tree_bfs(g, seed),
        VoName::ConCro => vertex_order::vo_con_cro(g, seed),
        VoName::ConGreedy => vertex_order::vo_con_greedy(g, seed),
        VoName::ConGreedyPlus => {
            let (_, vo, _) = con_greedy_plus::con_greedy_plus(g, k, seed).into_parts();
            vo
        }
    }
}

pub fn run_pa(name: PaName, g: &Graph, vo: &VertexOrder, k: usize) -> PageAssignment {
    match name {
        PaName::CeilFloor => page_assign::pa_ceil_floor(g, vo, k),
        PaName::ELen => page_assign::pa_elen(g, vo, k),
        PaName::Circular => page_assign::pa_circular(g, vo, k),
        PaName::EarDecomp => page_assign::pa_ear_decomp(g, vo, k),
        PaName::Slope => page_assign::pa_slope(g, vo, k),
    }
}

pub fn run_ls(
    name: LsName,
    d: BookDrawing,
    seed: u64,
    params: &LocalSearchParams,
) -> Result<BookDrawing, ScheduleError> {
    match name {
        LsName::GreedyAlt => Ok(ls_greedy_alt(d, seed, params.max_rounds)),
        LsName::GreedyPlus => Ok(ls_greedy_plus(d, seed, params.max_rounds)),
        LsName::Sa => ls_simulated_annealing(d, seed, &params.schedule),
    }
}

/// Runs a whole combo. The construction stage consumes one derived seed and
/// the local search another, so `vo`-only results agree between runs with and
/// without a search stage.
pub fn run_combo(
    g: &Graph,
    k: usize,
    seed: u64,
    combo: &HeuristicCombo,
    params: &LocalSearchParams,
) -> Result<BookDrawing, ScheduleError> {
    let build_seed = derive_seed(seed, 1);
    let ls_seed = derive_seed(seed, 2);
    let built = match (combo.vo, combo.pa) {
        (VoName::ConGreedyPlus, None) => con_greedy_plus::con_greedy_plus(g, k, build_seed),
        (vo_name, pa) => {
            let vo = run_vo(vo_name, g, k, build_seed);
            let pa = match pa {
                Some(pa_name) => run_pa(pa_name, g, &vo, k),
                None => PageAssignment::single_page(k, g.m()).expect("k >= 1"),
            };
            BookDrawing::new(g.clone(), vo, pa).expect("heuristic output fits the graph")
        }
    };
    match combo.ls {
        Some(ls) => run_ls(ls, built, ls_seed, params),
        None => Ok(built),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let combos = [
            "smlDgrDFS-ceilFloor",
            "randDFS-eLen:greedyAlt",
            "treeBFS-circular:sa",
            "conCro-earDecomp:greedy+",
            "conGreedy-slope",
            "conGreedy+",
            "conGreedy+:greedy+",
            "conGreedy+-ceilFloor:greedyAlt",
        ];
        for label in combos {
            let combo: HeuristicCombo = label.parse().unwrap();
            assert_eq!(combo.label(), label);
        }
    }

    #[test]
    fn bad_labels_are_rejected() {
        for label in [
            "",
            "bogus",
            "randDFS-bogus",
            "randDFS-eLen:bogus",
            "randDFS:eLen",
        ] {
            assert!(label.parse::<HeuristicCombo>().is_err(), "{label:?}");
        }
    }

    #[test]
    fn every_name_survives_a_parse_display_cycle() {
        for vo in VoName::ALL {
            assert_eq!(vo.to_string().parse::<VoName>().unwrap(), vo);
        }
        for pa in PaName::ALL {
            assert_eq!(pa.to_string().parse::<PaName>().unwrap(), pa);
        }
        for ls in LsName::ALL {
            assert_eq!(ls.to_string().parse::<LsName>().unwrap(), ls);
        }
    }

    #[test]
    fn combined_heuristic_spine_is_identical_with_and_without_page_recompute() {
        let g = Graph::complete(7);
        for seed in 0..5 {
            let builtin = run_combo(
                &g,
                2,
                seed,
                &"conGreedy+".parse().unwrap(),
                &LocalSearchParams::default(),
            )
            .unwrap();
            let repaged = run_combo(
                &g,
                2,
                seed,
                &"conGreedy+-ceilFloor".parse().unwrap(),
                &LocalSearchParams::default(),
            )
            .unwrap();
            assert_eq!(builtin.vo().order(), repaged.vo().order());
        }
    }

    #[test]
    fn every_combo_yields_a_valid_drawing() {
        let g = Graph::new(
            9,
            vec![
                (0, 3),
                (1, 4),
                (2, 5),
                (3, 6),
                (4, 7),
                (5, 8),
                (0, 8),
                (2, 7),
            ],
        )
        .unwrap();
        let params = LocalSearchParams {
            schedule: AnnealingSchedule {
                iterations: 5,
                ..Default::default()
            },
            max_rounds: 2,
        };
        for vo in VoName::ALL {
            for pa in std::iter::once(None).chain(PaName::ALL.into_iter().map(Some)) {
                for ls in std::iter::once(None).chain(LsName::ALL.into_iter().map(Some)) {
                    let combo = HeuristicCombo::new(vo, pa, ls);
                    let d = run_combo(&g, 2, 17, &combo, &params).unwrap();
                    assert_eq!(d.vo().len(), 9, "{combo}");
                    assert_eq!(d.pa().len(), 8, "{combo}");
                    assert_eq!(d.count(), d.cached_crossings().unwrap_or_else(|| d.count()));
                }
            }
        }
    }
}

//! Depth-first search for a winning line.

use crate::embedding::Embedding;
use crate::game::{
    canonicalize, is_injective, loss_witness, refine, shift_tokens, splits_something, tables, GameError,
    GameTables, Mode, Position, Status, Step,
};
use crate::rootset::RootSet;
use crate::weyl::WeylElement;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Splitting subsets tried as discretionary splits before falling back to token closures.
const MAX_DISCRETIONARY_CANDIDATES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingPolicy {
    /// Split along every qualifying subset before each move.
    #[default]
    Maximal,
    /// Never split.
    None,
    /// Splits are optional moves searched like any other.
    Discretionary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub mode: Mode,
    pub allow_merges: bool,
    /// 1-based copies whose roots may be used as move directions; `None` allows all.
    pub movable_copies: Option<Vec<usize>>,
    pub splitting_policy: SplittingPolicy,
    pub node_budget: u64,
    pub transposition_memo: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: Mode::TopDegree,
            allow_merges: false,
            movable_copies: None,
            splitting_policy: SplittingPolicy::Maximal,
            node_budget: 10_000_000,
            transposition_memo: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Doomed { witness: RootSet, tokens: usize, capacity: usize },
    Won { certificate: Vec<Step> },
    NotWinnable { explored: u64 },
    Unknown { explored: u64 },
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Doomed { .. } => VerdictKind::Doomed,
            Verdict::Won { .. } => VerdictKind::Won,
            Verdict::NotWinnable { .. } => VerdictKind::NotWinnable,
            Verdict::Unknown { .. } => VerdictKind::Unknown,
        }
    }

    pub fn is_won(&self) -> bool {
        matches!(self, Verdict::Won { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Doomed,
    Won,
    NotWinnable,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Doomed => "DOOMED",
            VerdictKind::Won => "WON",
            VerdictKind::NotWinnable => "NOT_WINNABLE",
            VerdictKind::Unknown => "UNKNOWN",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Doomed {
                witness,
                tokens,
                capacity,
            } => write!(f, "DOOMED witness={:?} tokens={tokens} capacity={capacity}", witness.to_vec()),
            Verdict::Won { certificate } => write!(f, "WON steps={}", certificate.len()),
            Verdict::NotWinnable { explored } => write!(f, "NOT_WINNABLE explored={explored}"),
            Verdict::Unknown { explored } => write!(f, "UNKNOWN explored={explored}"),
        }
    }
}

/// Solves the game for `pi` from its initial position.
pub fn solve(e: &Arc<Embedding>, pi: &WeylElement, cfg: &SolverConfig) -> Result<Verdict, GameError> {
    let p = Position::initial(e.clone(), pi, cfg.mode)?;
    Ok(solve_position(&p, cfg))
}

/// Solves from an arbitrary position; the certificate continues from it.
pub fn solve_position(p: &Position, cfg: &SolverConfig) -> Verdict {
    if let Status::Lost {
        witness,
        tokens,
        capacity,
    } = p.status()
    {
        if p.history().is_empty() {
            return Verdict::Doomed {
                witness,
                tokens,
                capacity,
            };
        }
        return Verdict::NotWinnable { explored: 0 };
    }
    let e = p.embedding();
    let t = tables(e).expect("tables exist for a constructed position");
    let n = e.target().len();
    let betas: Vec<usize> = (0..n)
        .filter(|&b| match &cfg.movable_copies {
            Some(c) => c.contains(&(e.target().root(b).component + 1)),
            None => true,
        })
        .collect();
    let copies = t.diag.as_ref().map(|d| d.copies).unwrap_or(0);
    let movable = |k: usize| cfg.movable_copies.as_ref().is_none_or(|c| c.contains(&(k + 1)));
    let label_groups = vec![
        (0..copies).filter(|&k| movable(k)).collect(),
        (0..copies).filter(|&k| !movable(k)).collect(),
    ];
    let mut s = Search {
        e,
        t,
        cfg,
        betas,
        label_groups,
        memo: FxHashSet::default(),
        path: Vec::new(),
        nodes: 0,
    };
    match s.dfs(p.regions().to_vec(), p.tokens()) {
        Ok(true) => Verdict::Won { certificate: s.path },
        Ok(false) => Verdict::NotWinnable { explored: s.nodes },
        Err(BudgetExceeded) => Verdict::Unknown { explored: s.nodes },
    }
}

/// Applies `cert` to the initial position and reports the final status.
pub fn replay(e: &Arc<Embedding>, pi: &WeylElement, mode: Mode, cert: &[Step]) -> Result<Status, ReplayError> {
    let p = Position::initial(e.clone(), pi, mode).map_err(|error| ReplayError { index: None, error })?;
    replay_from(&p, cert).map(|q| q.status())
}

/// Applies `cert` to `p`, returning the final position.
pub fn replay_from(p: &Position, cert: &[Step]) -> Result<Position, ReplayError> {
    let mut p = p.clone();
    for (i, step) in cert.iter().enumerate() {
        p = p.apply_step(step).map_err(|error| ReplayError { index: Some(i), error })?;
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}: {error}", match .index { Some(i) => format!("illegal step {i}"), None => "bad initial position".to_string() })]
pub struct ReplayError {
    /// Index of the failing step, or `None` when the initial position is invalid.
    pub index: Option<usize>,
    pub error: GameError,
}

struct BudgetExceeded;

#[derive(Clone)]
enum Child {
    Same(Step, RootSet),
    Split(Step, Vec<RootSet>),
}

struct Frame {
    mark: usize,
    memo_key: (Vec<RootSet>, RootSet),
    regions: Vec<RootSet>,
    tokens: RootSet,
    children: Vec<Child>,
    next: usize,
}

enum Enter {
    Won,
    Dead,
    Frame(Frame),
}

struct Search<'a> {
    e: &'a Embedding,
    t: &'a GameTables,
    cfg: &'a SolverConfig,
    betas: Vec<usize>,
    /// Copies split into movable and fixed, 0-based.
    label_groups: Vec<Vec<usize>>,
    memo: FxHashSet<(Vec<RootSet>, RootSet)>,
    path: Vec<Step>,
    nodes: u64,
}

impl Search<'_> {
    fn is_movable(&self, copy: usize) -> bool {
        self.label_groups[0].contains(&copy)
    }

    /// Relabels copies inside each region into a canonical order. Labels only
    /// matter through movability, and nothing ties them across regions.
    fn symmetric_key(&self, regions: &[RootSet], tokens: RootSet) -> RootSet {
        let Some(d) = &self.t.diag else {
            return tokens;
        };
        let mut out = RootSet::EMPTY;
        for r in regions {
            let inside = tokens.intersection(r);
            if inside.is_empty() {
                continue;
            }
            for group in &self.label_groups {
                let mut sets: Vec<RootSet> = group.iter().map(|&k| d.copy_tokens(&inside, k)).collect();
                sets.sort_unstable();
                for (&k, s) in group.iter().zip(&sets) {
                    out = out.union(&s.shl(k * d.n));
                }
            }
        }
        out
    }

    fn region_lost(&self, regions: &[RootSet], tokens: &RootSet) -> bool {
        let Some(d) = &self.t.diag else {
            return false;
        };
        if regions.len() < 2 {
            return false;
        }
        for r in regions {
            let inside = tokens.intersection(r);
            if inside.is_empty() {
                continue;
            }
            let src_region = d.copy_tokens(r, 0);
            let per: Vec<RootSet> = (0..d.copies).map(|k| d.copy_tokens(&inside, k)).collect();
            for a in &d.ideals {
                let ra = a.intersection(&src_region);
                let count: usize = per.iter().map(|p| p.intersection(&ra).len()).sum();
                if count > ra.len() {
                    return true;
                }
            }
        }
        false
    }

    /// Normalizes a freshly reached position and, unless it ends the line, returns its frame.
    fn enter(&mut self, mut regions: Vec<RootSet>, tokens: RootSet) -> Result<Enter, BudgetExceeded> {
        let mark = self.path.len();
        if self.cfg.splitting_policy == SplittingPolicy::Maximal {
            for (a, cap) in &self.t.splits {
                if tokens.intersection(a).len() == *cap as usize && splits_something(&regions, a) {
                    regions = refine(&regions, a);
                    self.path.push(Step::Split { ideal: *a });
                }
            }
        }
        if is_injective(self.e, self.t, &tokens) {
            return Ok(Enter::Won);
        }
        // Under forced splitting the regions are determined by the tokens: split
        // counts never decrease and a count above capacity is a loss.
        let key_regions = if self.cfg.splitting_policy == SplittingPolicy::Discretionary {
            regions.clone()
        } else {
            Vec::new()
        };
        let memo_key = (key_regions, self.symmetric_key(&regions, tokens));
        if self.memo.contains(&memo_key) {
            self.path.truncate(mark);
            return Ok(Enter::Dead);
        }
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            return Err(BudgetExceeded);
        }
        let children = self.children(&regions, tokens);
        if children.is_empty() {
            if self.cfg.transposition_memo {
                self.memo.insert(memo_key);
            }
            self.path.truncate(mark);
            return Ok(Enter::Dead);
        }
        self.memo.insert(memo_key.clone());
        Ok(Enter::Frame(Frame {
            mark,
            memo_key,
            regions,
            tokens,
            children,
            next: 0,
        }))
    }

    fn dfs(&mut self, regions: Vec<RootSet>, tokens: RootSet) -> Result<bool, BudgetExceeded> {
        let mut stack = match self.enter(regions, tokens)? {
            Enter::Won => return Ok(true),
            Enter::Dead => return Ok(false),
            Enter::Frame(f) => vec![f],
        };
        while let Some(top) = stack.last_mut() {
            if top.next < top.children.len() {
                let child = top.children[top.next].clone();
                top.next += 1;
                let (step, regions, tokens) = match child {
                    Child::Same(step, tokens) => (step, top.regions.clone(), tokens),
                    Child::Split(step, regions) => (step, regions, top.tokens),
                };
                self.path.push(step);
                match self.enter(regions, tokens)? {
                    Enter::Won => return Ok(true),
                    Enter::Dead => {
                        self.path.pop();
                    }
                    Enter::Frame(f) => stack.push(f),
                }
            } else {
                let f = stack.pop().expect("nonempty");
                if !self.cfg.transposition_memo {
                    self.memo.remove(&f.memo_key);
                }
                self.path.truncate(f.mark);
                if !stack.is_empty() {
                    self.path.pop();
                }
            }
        }
        Ok(false)
    }

    /// Successor positions in search order: merges, moves, then discretionary splits.
    fn children(&self, regions: &[RootSet], tokens: RootSet) -> Vec<Child> {
        let mut out = Vec::new();
        if loss_witness(self.t, &tokens).is_some() || self.region_lost(regions, &tokens) {
            return out;
        }
        let mut seen: FxHashSet<RootSet> = FxHashSet::default();
        seen.insert(tokens);
        if self.cfg.allow_merges {
            if let Some(d) = &self.t.diag {
                for (ri, r) in regions.iter().enumerate() {
                    let inside = tokens.intersection(r);
                    let per: Vec<RootSet> = (0..d.copies).map(|k| d.copy_tokens(&inside, k)).collect();
                    for from in 0..d.copies {
                        if per[from].is_empty() {
                            continue;
                        }
                        for to in 0..d.copies {
                            if to == from || !per[from].is_disjoint(&per[to]) {
                                continue;
                            }
                            // Giving up movability is dominated, and a relabel that
                            // keeps it changes nothing.
                            let (mf, mt) = (self.is_movable(from), self.is_movable(to));
                            if (mf && !mt) || (per[to].is_empty() && mf == mt) {
                                continue;
                            }
                            let next = tokens
                                .difference(&per[from].shl(from * d.n))
                                .union(&per[from].shl(to * d.n));
                            if seen.insert(next) {
                                let step = Step::Merge {
                                    region: ri,
                                    from_copy: from + 1,
                                    to_copy: to + 1,
                                };
                                out.push(Child::Same(step, next));
                            }
                        }
                    }
                }
            }
        }
        for (ri, r) in regions.iter().enumerate() {
            for &beta in &self.betas {
                let next = shift_tokens(&self.t.move_pairs[beta], r, &tokens);
                if seen.insert(next) {
                    out.push(Child::Same(Step::Move { beta, region: ri }, next));
                }
            }
        }
        if self.cfg.splitting_policy == SplittingPolicy::Discretionary {
            for a in self.discretionary_candidates(&tokens) {
                if !splits_something(regions, &a) {
                    continue;
                }
                let mut next = refine(regions, &a);
                canonicalize(&mut next);
                out.push(Child::Split(Step::Split { ideal: a }, next));
            }
        }
        out
    }

    fn discretionary_candidates(&self, tokens: &RootSet) -> Vec<RootSet> {
        if self.t.splits.len() <= MAX_DISCRETIONARY_CANDIDATES {
            return self.t.splits.iter().map(|(a, _)| *a).collect();
        }
        let rs = self.e.target();
        let mut out: Vec<RootSet> = tokens
            .iter()
            .map(|a| rs.closure(&RootSet::singleton(a)))
            .filter(|a| crate::game::is_splitting_subset(self.e, a).is_ok())
            .collect();
        out.sort_by_key(|a| (a.len(), *a));
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(e: &str, pi: &str) -> (Arc<Embedding>, WeylElement) {
        let e = Arc::new(Embedding::parse(e).unwrap());
        let pi = WeylElement::parse(e.target(), pi).unwrap();
        (e, pi)
    }

    #[test]
    fn budget_gives_unknown() {
        let (e, pi) = setup("diag(id:A3,id:A3,id:A3)", "1432;2314;2134");
        let cfg = SolverConfig {
            node_budget: 1,
            ..Default::default()
        };
        assert!(matches!(solve(&e, &pi, &cfg).unwrap(), Verdict::Unknown { .. }));
    }

    #[test]
    fn tampered_certificate_reports_index() {
        let (e, pi) = setup("diag(id:A4,id:A4,id:A4)", "21435;32154;24153");
        let cert = vec![Step::Move { beta: 1, region: 0 }, Step::Move { beta: 1, region: 7 }];
        let err = replay(&e, &pi, Mode::TopDegree, &cert).unwrap_err();
        assert_eq!(err.index, Some(1));
        assert_eq!(err.error, GameError::UnknownRegion(7));
    }

    #[test]
    fn memo_off_terminates_with_merges() {
        let (e, pi) = setup("diag(id:A2,id:A2,id:A2)", "213;213;132");
        let cfg = SolverConfig {
            allow_merges: true,
            transposition_memo: false,
            ..Default::default()
        };
        let v = solve(&e, &pi, &cfg).unwrap();
        let on = solve(&e, &pi, &SolverConfig { allow_merges: true, ..Default::default() }).unwrap();
        assert_eq!(v.kind(), on.kind());
    }
}

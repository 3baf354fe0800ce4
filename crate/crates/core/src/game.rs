//! Positions of the root game and its rules: splitting, moves, merges, status.

use crate::embedding::{Embedding, EmbeddingError, InjectivityWitness};
use crate::root_system::{RootId, RootSystemError};
use crate::rootset::RootSet;
use crate::weyl::{WeylElement, WeylError};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Upper bound on target order ideals enumerated for a non-diagonal embedding.
pub const MAX_TARGET_IDEALS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Token count equals the source dimension; splitting is forced.
    #[default]
    #[serde(rename = "top")]
    TopDegree,
    /// Any token count; splitting is optional.
    #[serde(rename = "free")]
    FreeDegree,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "top" => Ok(Mode::TopDegree),
            "free" => Ok(Mode::FreeDegree),
            _ => Err(format!("unknown mode `{s}` (expected top or free)")),
        }
    }
}

/// One action in a game. Copy indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    Split { ideal: RootSet },
    Move { beta: RootId, region: usize },
    Merge { region: usize, from_copy: usize, to_copy: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Status {
    Won,
    /// `tokens` tokens sit on the ideal `witness`, whose nonzero image has only `capacity` roots.
    Lost { witness: RootSet, tokens: usize, capacity: usize },
    Open,
}

impl Status {
    pub fn is_won(&self) -> bool {
        matches!(self, Status::Won)
    }

    pub fn is_lost(&self) -> bool {
        matches!(self, Status::Lost { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("not closed under raising")]
    NotIdeal,
    #[error("not a splitting subset: images of the set and its complement overlap")]
    NotSplitting,
    #[error("unknown region {0}")]
    UnknownRegion(usize),
    #[error("unknown root {0}")]
    UnknownRoot(usize),
    #[error("element has length {found}, top degree needs {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("merges need a diagonal embedding of identity factors")]
    MergeUnsupported,
    #[error("merge collision at source root {0}")]
    MergeCollision(RootId),
    #[error("unknown copy {0}")]
    UnknownCopy(usize),
    #[error("regions do not partition the positive roots")]
    BadPartition,
    #[error("too many order ideals in the target")]
    TooManyIdeals,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

impl GameError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            GameError::NotIdeal => "not_ideal",
            GameError::NotSplitting => "not_splitting",
            GameError::UnknownRegion(_) => "unknown_region",
            GameError::UnknownRoot(_) => "unknown_root",
            GameError::LengthMismatch { .. } => "length_mismatch",
            GameError::MergeUnsupported => "merge_unsupported",
            GameError::MergeCollision(_) => "merge_collision",
            GameError::UnknownCopy(_) => "unknown_copy",
            GameError::BadPartition => "bad_partition",
            GameError::TooManyIdeals => "too_many_ideals",
            GameError::Weyl(_) => "bad_element",
            GameError::Embedding(_) => "bad_embedding",
        }
    }
}

/// Precomputed rule data for one embedding.
#[derive(Debug)]
pub(crate) struct GameTables {
    /// For each β, pairs `(α, α+β)` ordered by decreasing height of α.
    pub move_pairs: Vec<Vec<(u8, u8)>>,
    /// Splitting subsets with the size of their nonzero image, ordered by size.
    pub splits: Vec<(RootSet, u32)>,
    /// Ideals to test for loss with their nonzero image size, ordered by size.
    pub loss: Vec<(RootSet, u32)>,
    pub diag: Option<DiagTables>,
}

#[derive(Debug)]
pub(crate) struct DiagTables {
    pub copies: usize,
    pub n: usize,
    /// Source ideals ordered by size.
    pub ideals: Vec<RootSet>,
}

impl DiagTables {
    #[inline]
    pub fn copy_tokens(&self, tokens: &RootSet, k: usize) -> RootSet {
        tokens.shr(k * self.n).intersection(&RootSet::full(self.n))
    }

    #[inline]
    pub fn replicate(&self, s: &RootSet) -> RootSet {
        let mut out = RootSet::EMPTY;
        for k in 0..self.copies {
            out = out.union(&s.shl(k * self.n));
        }
        out
    }
}

impl GameTables {
    fn build(e: &Embedding) -> Result<GameTables, GameError> {
        let rs = e.target();
        let n = rs.len();
        let mut move_pairs = Vec::with_capacity(n);
        for beta in 0..n {
            let mut pairs: Vec<(u8, u8)> = (0..n)
                .filter_map(|a| rs.add(a, beta).map(|b| (a as u8, b as u8)))
                .collect();
            pairs.sort_by(|x, y| {
                rs.height(y.0 as usize)
                    .cmp(&rs.height(x.0 as usize))
                    .then(y.0.cmp(&x.0))
            });
            move_pairs.push(pairs);
        }
        if e.is_identity_diagonal() {
            let mut ideals = e.source().factor_ideals(0);
            ideals.sort_by_key(|s| (s.len(), *s));
            let diag = DiagTables {
                copies: e.copies(),
                n: e.source().len(),
                ideals,
            };
            let lifted: Vec<(RootSet, u32)> = diag
                .ideals
                .iter()
                .map(|s| (diag.replicate(s), s.len() as u32))
                .collect();
            return Ok(GameTables {
                move_pairs,
                splits: lifted.clone(),
                loss: lifted,
                diag: Some(diag),
            });
        }
        let all = rs.all();
        let ideals = rs.collect_ideals(MAX_TARGET_IDEALS).map_err(|err| match err {
            RootSystemError::Budget(_) => GameError::TooManyIdeals,
            other => GameError::Embedding(other.into()),
        })?;
        let mut loss = Vec::with_capacity(ideals.len());
        let mut splits = Vec::new();
        for a in ideals {
            let img = e.image(&a);
            if img.is_disjoint(&e.image(&all.difference(&a))) {
                splits.push((a, img.len() as u32));
            }
            loss.push((a, img.len() as u32));
        }
        loss.sort_by_key(|(s, _)| (s.len(), *s));
        splits.sort_by_key(|(s, _)| (s.len(), *s));
        Ok(GameTables {
            move_pairs,
            splits,
            loss,
            diag: None,
        })
    }
}

pub(crate) fn tables(e: &Embedding) -> Result<&GameTables, GameError> {
    if let Some(t) = e.tables.get() {
        return Ok(t);
    }
    let t = GameTables::build(e)?;
    Ok(e.tables.get_or_init(|| t))
}

/// Sequential move: sources by decreasing height, each jumps up by β when the
/// target square in the region is free.
#[inline]
pub(crate) fn shift_tokens(pairs: &[(u8, u8)], region: &RootSet, tokens: &RootSet) -> RootSet {
    let mut t = *tokens;
    for &(a, b) in pairs {
        let (a, b) = (a as usize, b as usize);
        if t.contains(a) && !t.contains(b) && region.contains(a) && region.contains(b) {
            t.remove(a);
            t.insert(b);
        }
    }
    t
}

/// Splits every region along `a`, dropping empties.
pub(crate) fn refine(regions: &[RootSet], a: &RootSet) -> Vec<RootSet> {
    let mut out = Vec::with_capacity(regions.len() + 1);
    for r in regions {
        let inside = r.intersection(a);
        let outside = r.difference(a);
        if !inside.is_empty() {
            out.push(inside);
        }
        if !outside.is_empty() {
            out.push(outside);
        }
    }
    canonicalize(&mut out);
    out
}

pub(crate) fn canonicalize(regions: &mut [RootSet]) {
    regions.sort_by_key(|r| r.first());
}

/// First loss witness in size order, if any.
pub(crate) fn loss_witness(t: &GameTables, tokens: &RootSet) -> Option<(RootSet, usize, usize)> {
    if let Some(d) = &t.diag {
        let per: Vec<RootSet> = (0..d.copies).map(|k| d.copy_tokens(tokens, k)).collect();
        for a in &d.ideals {
            let count: usize = per.iter().map(|p| p.intersection(a).len()).sum();
            if count > a.len() {
                return Some((d.replicate(a), count, a.len()));
            }
        }
        return None;
    }
    for (a, cap) in &t.loss {
        let count = tokens.intersection(a).len();
        if count > *cap as usize {
            return Some((*a, count, *cap as usize));
        }
    }
    None
}

pub(crate) fn is_injective(e: &Embedding, t: &GameTables, tokens: &RootSet) -> bool {
    if let Some(d) = &t.diag {
        let mut seen = RootSet::EMPTY;
        for k in 0..d.copies {
            let p = d.copy_tokens(tokens, k);
            if !seen.is_disjoint(&p) {
                return false;
            }
            seen = seen.union(&p);
        }
        return true;
    }
    e.phat_injective(tokens).is_ok()
}

pub(crate) fn splits_something(regions: &[RootSet], a: &RootSet) -> bool {
    regions
        .iter()
        .any(|r| !r.is_disjoint(a) && !r.is_subset(a))
}

/// A game position. Every operation returns a new value.
#[derive(Debug, Clone)]
pub struct Position {
    embedding: Arc<Embedding>,
    regions: Vec<RootSet>,
    tokens: RootSet,
    mode: Mode,
    history: Vec<Step>,
}

/// JSON shape of a [`Position`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionRecord {
    pub embedding: String,
    pub regions: Vec<RootSet>,
    pub tokens: RootSet,
    pub mode: Mode,
    pub history: Vec<Step>,
}

impl Serialize for Position {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

impl PartialEq for Position {
    fn eq(&self, other: &Self) -> bool {
        self.embedding.spec() == other.embedding.spec()
            && self.regions == other.regions
            && self.tokens == other.tokens
            && self.mode == other.mode
            && self.history == other.history
    }
}

impl Position {
    /// Tokens on the inversion set of `pi`, all squares in one region.
    pub fn initial(e: Arc<Embedding>, pi: &WeylElement, mode: Mode) -> Result<Position, GameError> {
        let rs = e.target().clone();
        let pi = WeylElement::from_parts(&rs, pi.parts().to_vec())?;
        let tokens = pi.inversion_set(&rs);
        Position::from_tokens(e, tokens, mode)
    }

    /// Parses `pi` against the embedding's target and builds the initial position.
    pub fn initial_from_literal(e: Arc<Embedding>, pi: &str, mode: Mode) -> Result<Position, GameError> {
        let pi = WeylElement::parse(e.target(), pi)?;
        Position::initial(e, &pi, mode)
    }

    /// Initial position with an explicit token set.
    pub fn from_tokens(e: Arc<Embedding>, tokens: RootSet, mode: Mode) -> Result<Position, GameError> {
        let n = e.target().len();
        if let Some(bad) = tokens.iter().find(|&a| a >= n) {
            return Err(GameError::UnknownRoot(bad));
        }
        if mode == Mode::TopDegree && tokens.len() != e.source().len() {
            return Err(GameError::LengthMismatch {
                expected: e.source().len(),
                found: tokens.len(),
            });
        }
        tables(&e)?;
        Ok(Position {
            regions: vec![RootSet::full(n)],
            embedding: e,
            tokens,
            mode,
            history: Vec::new(),
        })
    }

    /// Rebuilds a position from its JSON record, checking the partition.
    pub fn from_record(rec: &PositionRecord) -> Result<Position, GameError> {
        let e = Arc::new(Embedding::parse(&rec.embedding)?);
        Position::with_embedding(e, rec)
    }

    pub fn with_embedding(e: Arc<Embedding>, rec: &PositionRecord) -> Result<Position, GameError> {
        let n = e.target().len();
        let mut seen = RootSet::EMPTY;
        for r in &rec.regions {
            if r.is_empty() || !seen.is_disjoint(r) {
                return Err(GameError::BadPartition);
            }
            seen = seen.union(r);
        }
        if seen != RootSet::full(n) {
            return Err(GameError::BadPartition);
        }
        if let Some(bad) = rec.tokens.iter().find(|&a| a >= n) {
            return Err(GameError::UnknownRoot(bad));
        }
        tables(&e)?;
        let mut regions = rec.regions.clone();
        canonicalize(&mut regions);
        Ok(Position {
            embedding: e,
            regions,
            tokens: rec.tokens,
            mode: rec.mode,
            history: rec.history.clone(),
        })
    }

    pub fn record(&self) -> PositionRecord {
        PositionRecord {
            embedding: self.embedding.spec().to_string(),
            regions: self.regions.clone(),
            tokens: self.tokens,
            mode: self.mode,
            history: self.history.clone(),
        }
    }

    pub fn embedding(&self) -> &Arc<Embedding> {
        &self.embedding
    }

    pub fn regions(&self) -> &[RootSet] {
        &self.regions
    }

    pub fn tokens(&self) -> RootSet {
        self.tokens
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    /// Region id containing root `a`.
    pub fn region_of(&self, a: RootId) -> Option<usize> {
        self.regions.iter().position(|r| r.contains(a))
    }

    fn tables(&self) -> &GameTables {
        tables(&self.embedding).expect("tables built at construction")
    }

    pub fn status(&self) -> Status {
        let t = self.tables();
        if is_injective(&self.embedding, t, &self.tokens) {
            return Status::Won;
        }
        match loss_witness(t, &self.tokens) {
            Some((witness, tokens, capacity)) => Status::Lost {
                witness,
                tokens,
                capacity,
            },
            None => Status::Open,
        }
    }

    /// Why the tokens are not yet injective, if they are not.
    pub fn injectivity(&self) -> Result<(), InjectivityWitness> {
        self.embedding.phat_injective(&self.tokens)
    }

    pub fn split(&self, a: &RootSet) -> Result<Position, GameError> {
        is_splitting_subset(&self.embedding, a)?;
        let mut p = self.clone();
        p.regions = refine(&self.regions, a);
        p.history.push(Step::Split { ideal: *a });
        Ok(p)
    }

    /// Splitting subsets whose token count equals their image size (excluding ∅ and everything).
    pub fn qualifying_splits(&self) -> Vec<RootSet> {
        let all = self.embedding.target().all();
        self.tables()
            .splits
            .iter()
            .filter(|(a, cap)| {
                !a.is_empty() && *a != all && self.tokens.intersection(a).len() == *cap as usize
            })
            .map(|(a, _)| *a)
            .collect()
    }

    /// Splits along every qualifying subset that refines the partition, recording each.
    pub fn split_maximally(&self) -> Position {
        let mut p = self.clone();
        for a in self.qualifying_splits() {
            if splits_something(&p.regions, &a) {
                p.regions = refine(&p.regions, &a);
                p.history.push(Step::Split { ideal: a });
            }
        }
        p
    }

    pub fn apply_move(&self, beta: RootId, region: usize) -> Result<Position, GameError> {
        if beta >= self.embedding.target().len() {
            return Err(GameError::UnknownRoot(beta));
        }
        let r = *self.regions.get(region).ok_or(GameError::UnknownRegion(region))?;
        let mut p = self.clone();
        p.tokens = shift_tokens(&self.tables().move_pairs[beta], &r, &self.tokens);
        p.history.push(Step::Move { beta, region });
        Ok(p)
    }

    /// Moves every copy-`from_copy` token in the region onto the same source root in copy `to_copy`.
    pub fn apply_merge(&self, region: usize, from_copy: usize, to_copy: usize) -> Result<Position, GameError> {
        let t = self.tables();
        let d = t.diag.as_ref().ok_or(GameError::MergeUnsupported)?;
        for k in [from_copy, to_copy] {
            if k == 0 || k > d.copies {
                return Err(GameError::UnknownCopy(k));
            }
        }
        let r = *self.regions.get(region).ok_or(GameError::UnknownRegion(region))?;
        let inside = self.tokens.intersection(&r);
        let moving = d.copy_tokens(&inside, from_copy - 1);
        let staying = d.copy_tokens(&inside, to_copy - 1);
        if from_copy != to_copy {
            if let Some(c) = moving.intersection(&staying).first() {
                return Err(GameError::MergeCollision(c));
            }
        }
        let mut p = self.clone();
        p.tokens = self
            .tokens
            .difference(&moving.shl((from_copy - 1) * d.n))
            .union(&moving.shl((to_copy - 1) * d.n));
        p.history.push(Step::Merge {
            region,
            from_copy,
            to_copy,
        });
        Ok(p)
    }

    pub fn apply_step(&self, step: &Step) -> Result<Position, GameError> {
        match step {
            Step::Split { ideal } => self.split(ideal),
            Step::Move { beta, region } => self.apply_move(*beta, *region),
            Step::Merge {
                region,
                from_copy,
                to_copy,
            } => self.apply_merge(*region, *from_copy, *to_copy),
        }
    }

    /// Moves that change the tokens, by region then β.
    pub fn legal_moves(&self) -> Vec<Step> {
        let t = self.tables();
        let mut out = Vec::new();
        for (ri, r) in self.regions.iter().enumerate() {
            for beta in 0..self.embedding.target().len() {
                if shift_tokens(&t.move_pairs[beta], r, &self.tokens) != self.tokens {
                    out.push(Step::Move { beta, region: ri });
                }
            }
        }
        out
    }

    /// Merges that are legal and change the tokens.
    pub fn legal_merges(&self) -> Vec<Step> {
        let Some(d) = &self.tables().diag else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (ri, r) in self.regions.iter().enumerate() {
            let inside = self.tokens.intersection(r);
            for from in 0..d.copies {
                let moving = d.copy_tokens(&inside, from);
                if moving.is_empty() {
                    continue;
                }
                for to in 0..d.copies {
                    if to != from && moving.is_disjoint(&d.copy_tokens(&inside, to)) {
                        out.push(Step::Merge {
                            region: ri,
                            from_copy: from + 1,
                            to_copy: to + 1,
                        });
                    }
                }
            }
        }
        out
    }

    /// ASCII board: each square shows its region letter and `●` for a token.
    pub fn render(&self) -> String {
        let rs = self.embedding.target();
        let (rows, cols) = rs.board_size();
        let mut grid = vec![vec!["   ".to_string(); cols]; rows];
        for id in 0..rs.len() {
            let sq = rs.square(id);
            let c = rs.board_col_offset(sq.component) + sq.col - 1;
            let region = self.region_of(id).unwrap_or(0);
            let letter = region_letter(region);
            let tok = if self.tokens.contains(id) { '●' } else { '·' };
            grid[sq.row - 1][c] = format!("{letter}{tok} ");
        }
        let mut out = String::new();
        for row in grid {
            out.push_str(row.concat().trim_end());
            out.push('\n');
        }
        out
    }

    /// Source board listing, per square, the copies holding a token there.
    /// Only meaningful for diagonal embeddings of identity factors.
    pub fn render_labels(&self) -> Option<String> {
        let d = self.tables().diag.as_ref()?;
        let src = self.embedding.source();
        let (rows, cols) = src.board_size();
        let width = d.copies.max(1) + 1;
        let mut grid = vec![vec![" ".repeat(width + 1); cols]; rows];
        for a in 0..src.len() {
            let sq = src.square(a);
            let labels: String = (0..d.copies)
                .filter(|&k| self.tokens.contains(k * d.n + a))
                .map(|k| char::from_digit((k + 1) as u32 % 36, 36).unwrap_or('?'))
                .collect();
            let region = self.region_of(a).unwrap_or(0);
            let mut cell = format!("{}{labels}", region_letter(region));
            cell.push_str(&" ".repeat(width + 1 - cell.chars().count()));
            grid[sq.row - 1][sq.col - 1] = cell;
        }
        let mut out = String::new();
        for row in grid {
            out.push_str(row.concat().trim_end());
            out.push('\n');
        }
        Some(out)
    }
}

fn region_letter(i: usize) -> char {
    let letters = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
    letters.get(i).map(|&b| b as char).unwrap_or('?')
}

/// Whether `a` is an ideal whose image meets the image of its complement only in zero.
pub fn is_splitting_subset(e: &Embedding, a: &RootSet) -> Result<(), GameError> {
    let rs = e.target();
    if let Some(bad) = a.iter().find(|&x| x >= rs.len()) {
        return Err(GameError::UnknownRoot(bad));
    }
    if !rs.is_ideal(a) {
        return Err(GameError::NotIdeal);
    }
    let rest = rs.all().difference(a);
    if !e.image(a).is_disjoint(&e.image(&rest)) {
        return Err(GameError::NotSplitting);
    }
    Ok(())
}

/// For a diagonal embedding of identity factors, the target set made of `s` in every copy.
pub fn replicate(e: &Embedding, s: &RootSet) -> Option<RootSet> {
    tables(e).ok()?.diag.as_ref().map(|d| d.replicate(s))
}

/// The sequential move with sources at equal height processed in the given
/// order instead of the default one.
pub fn sequential_shift_with_order(
    e: &Embedding,
    beta: RootId,
    region: &RootSet,
    tokens: &RootSet,
    order: &[RootId],
) -> RootSet {
    let rs = e.target();
    let mut sources: Vec<RootId> = order.iter().copied().filter(|&a| rs.add(a, beta).is_some()).collect();
    sources.sort_by_key(|&a| std::cmp::Reverse(rs.height(a)));
    let pairs: Vec<(u8, u8)> = sources
        .into_iter()
        .map(|a| (a as u8, rs.add(a, beta).unwrap() as u8))
        .collect();
    shift_tokens(&pairs, region, tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(e: &str, pi: &str) -> Position {
        Position::initial_from_literal(Arc::new(Embedding::parse(e).unwrap()), pi, Mode::TopDegree).unwrap()
    }

    #[test]
    fn mode_json() {
        assert_eq!(serde_json::to_string(&Mode::TopDegree).unwrap(), "\"top\"");
        assert_eq!(serde_json::to_string(&Mode::FreeDegree).unwrap(), "\"free\"");
    }

    #[test]
    fn step_json() {
        let s = Step::Merge { region: 1, from_copy: 2, to_copy: 1 };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"merge","region":1,"from_copy":2,"to_copy":1}"#);
        assert_eq!(serde_json::from_str::<Step>(&j).unwrap(), s);
        let m: Step = serde_json::from_str(r#"{"kind":"split","ideal":[3,1]}"#).unwrap();
        assert_eq!(m, Step::Split { ideal: [1, 3].into_iter().collect() });
    }

    #[test]
    fn length_mismatch_in_top_degree() {
        let e = Arc::new(Embedding::parse("diag(id:A2,id:A2)").unwrap());
        let err = Position::initial_from_literal(e.clone(), "123;123", Mode::TopDegree).unwrap_err();
        assert_eq!(err, GameError::LengthMismatch { expected: 3, found: 0 });
        let p = Position::initial_from_literal(e, "123;123", Mode::FreeDegree).unwrap();
        assert_eq!(p.status(), Status::Won);
    }

    #[test]
    fn merge_errors() {
        let p = pos("diag(id:A2,id:A2,id:A2)", "213;213;132");
        assert_eq!(p.apply_merge(0, 1, 2).unwrap_err(), GameError::MergeCollision(0));
        assert_eq!(p.apply_merge(0, 1, 4).unwrap_err(), GameError::UnknownCopy(4));
        let q = pos("diag(so-in-sl:5,id:B2)", "23154;-1,2");
        assert_eq!(q.apply_merge(0, 1, 2).unwrap_err(), GameError::MergeUnsupported);
    }

    #[test]
    fn record_roundtrip() {
        let p = pos("diag(id:A3,id:A3,id:A3)", "1432;2314;2134").split_maximally();
        let rec = p.record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: PositionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Position::from_record(&back).unwrap(), p);
        let mut bad = rec.clone();
        bad.regions.pop();
        assert_eq!(Position::from_record(&bad).unwrap_err(), GameError::BadPartition);
    }
}

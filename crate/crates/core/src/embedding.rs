//! Inclusions `G' ↪ G` seen through their positive roots.
//!
//! An [`Embedding`] records `φ̂: Δ₊(G) → Δ₊(G') ∪ {0}` and, for built-in
//! inclusions, the linear restriction of weights used by the oracle.

use crate::root_system::{Family, RootId, RootSystem, RootSystemError, SimpleType};
use crate::rootset::RootSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("diag() atoms must share one source, found {0} and {1}")]
    MismatchedSources(String, String),
    #[error("unsupported embedding: {0}")]
    Unsupported(String),
    #[error("invalid raw table: {0}")]
    RawTable(String),
}

/// A single inclusion of a simple group into a simple group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `id:<Simple>`.
    Id(SimpleType),
    /// `slk-in-sln:<k>,<n>`: `SL(k)` in the top-left corner of `SL(n)`.
    SlkInSln { k: usize, n: usize },
    /// `so-in-sl:<n>`: the orthogonal group preserving the antidiagonal form.
    SoInSl { n: usize },
    /// `sl3-in-g2`: `A2` as the long roots of `G2`.
    Sl3InG2,
    /// `A2` in `G2` with the two long simple roots swapped; used to test
    /// invariance under the diagram automorphism of `A2`.
    Sl3InG2Flipped,
}

impl Atom {
    fn parse(s: &str, pos: usize) -> Result<Atom, EmbeddingError> {
        let s = s.trim();
        let err = |msg: String| EmbeddingError::Parse { pos, msg };
        let num = |t: &str| -> Result<usize, EmbeddingError> {
            t.trim().parse().map_err(|_| err(format!("expected a number, found `{t}`")))
        };
        if let Some(g) = s.strip_prefix("id:") {
            return Ok(Atom::Id(g.parse()?));
        }
        if let Some(rest) = s.strip_prefix("slk-in-sln:") {
            let (k, n) = rest
                .split_once(',')
                .ok_or_else(|| err("slk-in-sln needs `<k>,<n>`".into()))?;
            let (k, n) = (num(k)?, num(n)?);
            if k < 2 || k > n {
                return Err(EmbeddingError::Unsupported(format!("slk-in-sln:{k},{n} needs 2 ≤ k ≤ n")));
            }
            SimpleType::new(Family::A, n - 1)?;
            return Ok(Atom::SlkInSln { k, n });
        }
        if let Some(rest) = s.strip_prefix("so-in-sl:") {
            let n = num(rest)?;
            if n < 5 {
                return Err(EmbeddingError::Unsupported(format!("so-in-sl:{n} needs n ≥ 5")));
            }
            SimpleType::new(Family::A, n - 1)?;
            return Ok(Atom::SoInSl { n });
        }
        match s {
            "sl3-in-g2" => Ok(Atom::Sl3InG2),
            "sl3-in-g2-flipped" => Ok(Atom::Sl3InG2Flipped),
            _ => Err(err(format!("unknown embedding atom `{s}`"))),
        }
    }

    pub fn source(&self) -> SimpleType {
        match *self {
            Atom::Id(t) => t,
            Atom::SlkInSln { k, .. } => SimpleType { family: Family::A, rank: k - 1 },
            Atom::SoInSl { n } if n % 2 == 0 => SimpleType { family: Family::D, rank: n / 2 },
            Atom::SoInSl { n } => SimpleType { family: Family::B, rank: n / 2 },
            Atom::Sl3InG2 | Atom::Sl3InG2Flipped => SimpleType { family: Family::A, rank: 2 },
        }
    }

    pub fn target(&self) -> SimpleType {
        match *self {
            Atom::Id(t) => t,
            Atom::SlkInSln { n, .. } | Atom::SoInSl { n } => SimpleType { family: Family::A, rank: n - 1 },
            Atom::Sl3InG2 | Atom::Sl3InG2Flipped => SimpleType { family: Family::G2, rank: 2 },
        }
    }

    /// `φ̂` on one target root vector, returning the source root vector.
    fn phat(&self, v: &[i32]) -> Option<Vec<i32>> {
        match *self {
            Atom::Id(_) => Some(v.to_vec()),
            Atom::SlkInSln { k, .. } => {
                let (i, j) = a_indices(v);
                (j <= k).then(|| diff_vec(k, i, j))
            }
            Atom::SoInSl { n } if n % 2 == 0 => {
                let m = n / 2;
                let (i, j) = a_indices(v);
                if i + j == n + 1 {
                    None
                } else if i + j > n + 1 && i <= m {
                    Some(sum_vec(m, m + 1 - i, j - m))
                } else if i + j <= n && j > m {
                    Some(sum_vec(m, j - m, m + 1 - i))
                } else if j <= m {
                    Some(diff_vec(m, m + 1 - j, m + 1 - i))
                } else {
                    Some(diff_vec(m, i - m, j - m))
                }
            }
            Atom::SoInSl { n } => {
                let m = n.div_ceil(2);
                let r = m - 1;
                let (i, j) = a_indices(v);
                if j == m {
                    Some(unit_vec(r, m - i))
                } else if i == m {
                    Some(unit_vec(r, j - m))
                } else if i + j == n + 1 {
                    None
                } else if i + j > n + 1 && i < m {
                    Some(sum_vec(r, m - i, j - m))
                } else if i + j <= n && j > m {
                    Some(sum_vec(r, j - m, m - i))
                } else if j < m {
                    Some(diff_vec(r, m - j, m - i))
                } else {
                    Some(diff_vec(r, i - m, j - m))
                }
            }
            Atom::Sl3InG2 | Atom::Sl3InG2Flipped => {
                let flipped = matches!(self, Atom::Sl3InG2Flipped);
                let (first, second) = if flipped { ((2, 3), (1, 2)) } else { ((1, 2), (2, 3)) };
                match (v[0], v[1]) {
                    (0, 1) => Some(diff_vec(3, first.0, first.1)),
                    (3, 1) => Some(diff_vec(3, second.0, second.1)),
                    (3, 2) => Some(diff_vec(3, 1, 3)),
                    _ => None,
                }
            }
        }
    }

    /// Image of target basis vector `e_k` in source coordinates.
    fn restrict_basis(&self, k: usize) -> Vec<Q> {
        let src = self.source().dim();
        let mut out = vec![Q::from_integer(0); src];
        let k1 = k + 1;
        match *self {
            Atom::Id(_) => out[k] = Q::from_integer(1),
            Atom::SlkInSln { k: kk, .. } => {
                if k1 <= kk {
                    out[k] = Q::from_integer(1);
                }
            }
            Atom::SoInSl { n } if n % 2 == 0 => {
                let m = n / 2;
                if k1 <= m {
                    out[m - k1] = Q::from_integer(-1);
                } else {
                    out[k1 - m - 1] = Q::from_integer(1);
                }
            }
            Atom::SoInSl { n } => {
                let m = n.div_ceil(2);
                if k1 < m {
                    out[m - k1 - 1] = Q::from_integer(-1);
                } else if k1 > m {
                    out[k1 - m - 1] = Q::from_integer(1);
                }
            }
            Atom::Sl3InG2 | Atom::Sl3InG2Flipped => {
                let flipped = matches!(self, Atom::Sl3InG2Flipped);
                let third = Q::new(1, 3);
                let sign = if flipped { -1 } else { 1 };
                let vals: [i64; 3] = if k == 0 {
                    [sign, -2 * sign, sign]
                } else if flipped {
                    [0, -1, 1]
                } else {
                    [-1, 1, 0]
                };
                for (o, v) in out.iter_mut().zip(vals) {
                    *o = if k == 0 { third * v } else { Q::from_integer(v) };
                }
            }
        }
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Id(t) => write!(f, "id:{t}"),
            Atom::SlkInSln { k, n } => write!(f, "slk-in-sln:{k},{n}"),
            Atom::SoInSl { n } => write!(f, "so-in-sl:{n}"),
            Atom::Sl3InG2 => f.write_str("sl3-in-g2"),
            Atom::Sl3InG2Flipped => f.write_str("sl3-in-g2-flipped"),
        }
    }
}

fn a_indices(v: &[i32]) -> (usize, usize) {
    let i = v.iter().position(|&x| x == -1).expect("type A root") + 1;
    let j = v.iter().position(|&x| x == 1).expect("type A root") + 1;
    (i, j)
}

fn diff_vec(dim: usize, i: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[i - 1] = -1;
    v[j - 1] = 1;
    v
}

fn sum_vec(dim: usize, i: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[i - 1] += 1;
    v[j - 1] += 1;
    v
}

fn unit_vec(dim: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[j - 1] = 1;
    v
}

/// Linear map from target weight coordinates to source weight coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    /// `blocks[c][k]` is the image of basis vector `k` of target factor `c`.
    blocks: Vec<Vec<Vec<Q>>>,
    source_dim: usize,
}

impl Restriction {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// Image of target basis vector `k` of component `c`.
    pub fn basis_image(&self, c: usize, k: usize) -> &[Q] {
        &self.blocks[c][k]
    }

    /// Restricts a weight of target component `c` given in its local coordinates.
    pub fn apply(&self, c: usize, v: &[i32]) -> Vec<Q> {
        let mut out = vec![Q::from_integer(0); self.source_dim];
        for (k, &x) in v.iter().enumerate() {
            if x != 0 {
                for (o, b) in out.iter_mut().zip(&self.blocks[c][k]) {
                    *o += *b * Q::from_integer(x as i64);
                }
            }
        }
        out
    }
}

/// Reason a token set is not `φ̂`-injective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InjectivityWitness {
    Zero { root: RootId },
    Collision { a: RootId, b: RootId },
}

/// An inclusion `G' ↪ G` as data on positive roots.
#[derive(Debug)]
pub struct Embedding {
    spec: String,
    source: Arc<RootSystem>,
    target: Arc<RootSystem>,
    phat: Vec<Option<RootId>>,
    restriction: Option<Restriction>,
    atoms: Vec<Atom>,
    identity_diagonal: bool,
    pub(crate) tables: OnceLock<crate::game::GameTables>,
}

/// JSON shape accepted by [`Embedding::from_raw_json`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawTable {
    pub source: String,
    pub target: String,
    /// Indexed by target root id; `null` means the root maps to zero.
    pub phat: Vec<Option<RootId>>,
}

impl Embedding {
    /// Parses `diag(e1,…,es)` or a single atom.
    pub fn parse(spec: &str) -> Result<Embedding, EmbeddingError> {
        let t = spec.trim();
        let lead = spec.len() - spec.trim_start().len();
        let atoms = if let Some(inner) = t.strip_prefix("diag(") {
            let inner = inner.strip_suffix(')').ok_or(EmbeddingError::Parse {
                pos: lead + t.len(),
                msg: "missing `)`".into(),
            })?;
            let mut pieces: Vec<(usize, String)> = Vec::new();
            let mut pos = lead + 5;
            for piece in inner.split(',') {
                let trimmed = piece.trim();
                if !trimmed.is_empty() && trimmed.bytes().all(|b| b.is_ascii_digit()) {
                    if let Some(last) = pieces.last_mut() {
                        last.1.push(',');
                        last.1.push_str(trimmed);
                        pos += piece.len() + 1;
                        continue;
                    }
                }
                pieces.push((pos, piece.to_string()));
                pos += piece.len() + 1;
            }
            if pieces.iter().all(|(_, p)| p.trim().is_empty()) {
                return Err(EmbeddingError::Parse {
                    pos: lead + 5,
                    msg: "diag() needs at least one atom".into(),
                });
            }
            pieces
                .iter()
                .map(|(p, s)| Atom::parse(s, *p))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            vec![Atom::parse(t, lead)?]
        };
        Embedding::from_atoms(&atoms, t.starts_with("diag("))
    }

    pub fn from_atoms(atoms: &[Atom], diag: bool) -> Result<Embedding, EmbeddingError> {
        let src = atoms[0].source();
        for a in atoms {
            if a.source() != src {
                return Err(EmbeddingError::MismatchedSources(src.to_string(), a.source().to_string()));
            }
        }
        let source = Arc::new(RootSystem::from_factors(&[src])?);
        let targets: Vec<SimpleType> = atoms.iter().map(|a| a.target()).collect();
        let target = Arc::new(RootSystem::from_factors(&targets)?);
        let mut phat = Vec::with_capacity(target.len());
        for r in target.roots() {
            let img = atoms[r.component].phat(&r.vector);
            phat.push(img.map(|v| source.id_of(0, &v).expect("φ̂ lands on a source root")));
        }
        let blocks = atoms
            .iter()
            .map(|a| (0..a.target().dim()).map(|k| a.restrict_basis(k)).collect())
            .collect();
        let body = atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        let spec = if diag || atoms.len() > 1 { format!("diag({body})") } else { body };
        Ok(Embedding {
            spec,
            identity_diagonal: atoms.iter().all(|a| matches!(a, Atom::Id(_))),
            source,
            target,
            phat,
            restriction: Some(Restriction {
                blocks,
                source_dim: src.dim(),
            }),
            atoms: atoms.to_vec(),
            tables: OnceLock::new(),
        })
    }

    /// `diag(id:X, …, id:X)` with `copies` copies.
    pub fn diagonal(kind: SimpleType, copies: usize) -> Result<Embedding, EmbeddingError> {
        Embedding::from_atoms(&vec![Atom::Id(kind); copies], true)
    }

    /// An arbitrary `φ̂` table without a restriction map.
    pub fn from_raw_table(
        source: &str,
        target: &str,
        phat: Vec<Option<RootId>>,
    ) -> Result<Embedding, EmbeddingError> {
        let source = Arc::new(RootSystem::parse(source)?);
        let target = Arc::new(RootSystem::parse(target)?);
        if phat.len() != target.len() {
            return Err(EmbeddingError::RawTable(format!(
                "expected {} entries, found {}",
                target.len(),
                phat.len()
            )));
        }
        if let Some(bad) = phat.iter().flatten().find(|&&s| s >= source.len()) {
            return Err(EmbeddingError::RawTable(format!("source root id {bad} out of range")));
        }
        Ok(Embedding {
            spec: format!("raw({}<-{})", target.spec(), source.spec()),
            source,
            target,
            phat,
            restriction: None,
            atoms: Vec::new(),
            identity_diagonal: false,
            tables: OnceLock::new(),
        })
    }

    pub fn from_raw_json(json: &str) -> Result<Embedding, EmbeddingError> {
        let raw: RawTable =
            serde_json::from_str(json).map_err(|e| EmbeddingError::RawTable(e.to_string()))?;
        Embedding::from_raw_table(&raw.source, &raw.target, raw.phat)
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn source(&self) -> &Arc<RootSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RootSystem> {
        &self.target
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn restriction(&self) -> Option<&Restriction> {
        self.restriction.as_ref()
    }

    /// Whether every atom is an identity, so the game is the intersection-number game.
    pub fn is_identity_diagonal(&self) -> bool {
        self.identity_diagonal
    }

    /// Number of target factors.
    pub fn copies(&self) -> usize {
        self.target.num_components()
    }

    #[inline]
    pub fn phat(&self, id: RootId) -> Option<RootId> {
        self.phat[id]
    }

    pub fn phat_table(&self) -> &[Option<RootId>] {
        &self.phat
    }

    /// `φ̂(S) ∖ {0}` as a set of source roots.
    pub fn image(&self, s: &RootSet) -> RootSet {
        s.iter().filter_map(|a| self.phat[a]).collect()
    }

    /// Target roots mapping to zero.
    pub fn kernel(&self) -> RootSet {
        (0..self.target.len()).filter(|&a| self.phat[a].is_none()).collect()
    }

    /// Checks that no token maps to zero and no two tokens share an image.
    pub fn phat_injective(&self, tokens: &RootSet) -> Result<(), InjectivityWitness> {
        let mut seen: Vec<Option<RootId>> = vec![None; self.source.len()];
        for a in tokens.iter() {
            match self.phat[a] {
                None => return Err(InjectivityWitness::Zero { root: a }),
                Some(s) => {
                    if let Some(b) = seen[s] {
                        return Err(InjectivityWitness::Collision { a: b, b: a });
                    }
                    seen[s] = Some(a);
                }
            }
        }
        Ok(())
    }

    /// The `φ̂` table drawn on the target board: each square shows its image.
    pub fn describe(&self) -> String {
        let rs = &self.target;
        let (rows, cols) = rs.board_size();
        let mut grid = vec![vec![String::new(); cols]; rows];
        let mut occupied = vec![vec![false; cols]; rows];
        for id in 0..rs.len() {
            let sq = rs.square(id);
            let c = rs.board_col_offset(sq.component) + sq.col - 1;
            occupied[sq.row - 1][c] = true;
            grid[sq.row - 1][c] = match self.phat[id] {
                Some(s) => self.source.name(s),
                None => "0".into(),
            };
        }
        let width = grid.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1).max(1);
        let mut out = format!("{}  ({} -> {})\n", self.spec, rs.spec(), self.source.spec());
        for r in 0..rows {
            let mut line = String::new();
            for c in 0..cols {
                let cell = if occupied[r][c] { grid[r][c].as_str() } else { "" };
                let pad = width - cell.chars().count();
                line.push_str(if occupied[r][c] { "[" } else { " " });
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
                line.push_str(if occupied[r][c] { "]" } else { " " });
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl std::str::FromStr for Embedding {
    type Err = EmbeddingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Embedding::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_roundtrip() {
        for s in ["diag(id:A4,id:A4,id:A4)", "so-in-sl:8", "diag(so-in-sl:5,id:B2)", "diag(slk-in-sln:2,4,id:A1)", "sl3-in-g2"] {
            let e = Embedding::parse(s).unwrap();
            assert_eq!(e.spec(), s);
            assert_eq!(Embedding::parse(e.spec()).unwrap().phat_table(), e.phat_table());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Embedding::parse("diag(id:A2,id:B2)"), Err(EmbeddingError::MismatchedSources(..))));
        assert!(matches!(Embedding::parse("diag(id:A2"), Err(EmbeddingError::Parse { .. })));
        assert!(matches!(Embedding::parse("foo:3"), Err(EmbeddingError::Parse { .. })));
        assert!(matches!(Embedding::parse("so-in-sl:4"), Err(EmbeddingError::Unsupported(_))));
        assert!(Embedding::parse("id:A12").is_err());
    }

    #[test]
    fn raw_table() {
        let e = Embedding::from_raw_json(r#"{"source":"A1","target":"A1xA1","phat":[0,null]}"#).unwrap();
        assert_eq!(e.phat(0), Some(0));
        assert_eq!(e.phat(1), None);
        assert!(e.restriction().is_none());
        assert!(Embedding::from_raw_json(r#"{"source":"A1","target":"A2","phat":[0]}"#).is_err());
    }
}

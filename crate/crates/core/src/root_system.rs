//! Finite crystallographic root systems of types A, B, C, D, G2 and their products.

use crate::rootset::{RootSet, MAX_ROOTS};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub type RootId = usize;

/// Largest supported rank of a single factor.
pub const MAX_RANK: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSystemError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported rank {rank} for type {family}")]
    UnsupportedRank { family: Family, rank: usize },
    #[error("{0} positive roots exceed the limit of {MAX_ROOTS}")]
    TooManyRoots(usize),
    #[error("unknown root `{0}`")]
    UnknownRoot(String),
    #[error("order-ideal enumeration exceeded its budget of {0}")]
    Budget(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
        };
        f.write_str(s)
    }
}

/// A simple factor, e.g. `A4` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => (1..=MAX_RANK).contains(&rank),
            Family::B | Family::C => (2..=MAX_RANK).contains(&rank),
            Family::D => (3..=MAX_RANK).contains(&rank),
            Family::G2 => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootSystemError::UnsupportedRank { family, rank })
        }
    }

    /// Number of ambient coordinates.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::G2 => 2,
            _ => self.rank,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::G2 => 6,
        }
    }

    fn parse_at(s: &str, base: usize) -> Result<Self, RootSystemError> {
        let err = |msg: &str| RootSystemError::Parse {
            pos: base,
            msg: msg.to_string(),
        };
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G2,
            _ => return Err(err(&format!("expected one of A,B,C,D,G in `{s}`"))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RootSystemError::Parse {
                pos: base + 1,
                msg: format!("expected a rank after `{}`", &s[..1]),
            });
        }
        let rank: usize = digits.parse().map_err(|_| RootSystemError::Parse {
            pos: base + 1,
            msg: format!("rank `{digits}` out of range"),
        })?;
        SimpleType::new(family, rank)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SimpleType::parse_at(s.trim(), 0)
    }
}

/// A positive root of one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub id: RootId,
    pub component: usize,
    /// Ambient coordinates; for G2, coefficients of (short simple, long simple).
    pub vector: Vec<i32>,
    pub height: u32,
}

/// Board coordinates of a root's square, 1-based within its component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub component: usize,
    pub row: usize,
    pub col: usize,
}

/// One simple factor with its positive roots in local order.
#[derive(Debug, Clone)]
pub struct Factor {
    pub kind: SimpleType,
    roots: Vec<Vec<i32>>,
    heights: Vec<u32>,
    coeffs: Vec<Vec<i32>>,
    simple: Vec<usize>,
    index: HashMap<Vec<i32>, usize>,
    gram: Vec<Vec<i32>>,
}

impl Factor {
    fn new(kind: SimpleType) -> Factor {
        let dim = kind.dim();
        let unit = |i: usize, c: i32| {
            let mut v = vec![0; dim];
            v[i] = c;
            v
        };
        let diff = |i: usize, j: usize| {
            let mut v = vec![0; dim];
            v[i] = -1;
            v[j] = 1;
            v
        };
        let sum = |i: usize, j: usize| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v[j] = 1;
            v
        };
        let mut roots = Vec::new();
        let mut simple_vecs = Vec::new();
        if kind.family == Family::G2 {
            for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)] {
                roots.push(vec![a, b]);
            }
            simple_vecs.push(vec![1, 0]);
            simple_vecs.push(vec![0, 1]);
        } else {
            let n = dim;
            for i in 0..n {
                for j in i + 1..n {
                    roots.push(diff(i, j));
                    if kind.family != Family::A {
                        roots.push(sum(i, j));
                    }
                }
            }
            match kind.family {
                Family::B => (0..n).for_each(|j| roots.push(unit(j, 1))),
                Family::C => (0..n).for_each(|j| roots.push(unit(j, 2))),
                _ => {}
            }
            for i in 0..n - 1 {
                simple_vecs.push(diff(i, i + 1));
            }
            match kind.family {
                Family::B => simple_vecs.push(unit(0, 1)),
                Family::C => simple_vecs.push(unit(0, 2)),
                Family::D => simple_vecs.push(sum(0, 1)),
                _ => {}
            }
        }
        let gram = if kind.family == Family::G2 {
            vec![vec![2, -3], vec![-3, 6]]
        } else {
            (0..dim).map(|i| unit(i, 1)).collect()
        };

        // Simple-root coefficients by peeling simple roots off.
        let set: HashMap<Vec<i32>, ()> = roots.iter().map(|r| (r.clone(), ())).collect();
        let mut coeff_map: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
        for (i, s) in simple_vecs.iter().enumerate() {
            let mut c = vec![0; simple_vecs.len()];
            c[i] = 1;
            coeff_map.insert(s.clone(), c);
        }
        while coeff_map.len() < roots.len() {
            let mut progress = false;
            for r in &roots {
                if coeff_map.contains_key(r) {
                    continue;
                }
                for (i, s) in simple_vecs.iter().enumerate() {
                    let d: Vec<i32> = r.iter().zip(s).map(|(a, b)| a - b).collect();
                    if set.contains_key(&d) {
                        if let Some(c) = coeff_map.get(&d) {
                            let mut c = c.clone();
                            c[i] += 1;
                            coeff_map.insert(r.clone(), c);
                            progress = true;
                            break;
                        }
                    }
                }
            }
            assert!(progress, "root coefficients did not converge");
        }
        let height_of = |r: &Vec<i32>| coeff_map[r].iter().sum::<i32>() as u32;
        roots.sort_by(|a, b| height_of(a).cmp(&height_of(b)).then_with(|| a.cmp(b)));
        let heights = roots.iter().map(height_of).collect();
        let coeffs = roots.iter().map(|r| coeff_map[r].clone()).collect();
        let index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let simple = simple_vecs.iter().map(|s| index[s]).collect();
        Factor {
            kind,
            roots,
            heights,
            coeffs,
            simple,
            index,
            gram,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    /// Local vector of the positive root with local index `i`.
    pub fn root(&self, i: usize) -> &[i32] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    /// Local index of the `i`-th simple root (0-based simple index).
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// Simple-root coefficients of local root `i`.
    pub fn coefficients(&self, i: usize) -> &[i32] {
        &self.coeffs[i]
    }

    pub fn height(&self, i: usize) -> u32 {
        self.heights[i]
    }

    /// Local index of a positive root vector.
    pub fn index_of(&self, v: &[i32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Classifies a vector as `Some((positive, local index))` when it is a root.
    pub fn classify(&self, v: &[i32]) -> Option<(bool, usize)> {
        if let Some(i) = self.index_of(v) {
            return Some((true, i));
        }
        let neg: Vec<i32> = v.iter().map(|x| -x).collect();
        self.index_of(&neg).map(|i| (false, i))
    }

    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub fn inner(&self, u: &[i32], v: &[i32]) -> i32 {
        let mut s = 0;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != 0 {
                    s += u[i] * g * v[j];
                }
            }
        }
        s
    }

    /// Cartan matrix entries `2(α_i, α_j)/(α_j, α_j)` over simple indices.
    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let (a, b) = (&self.roots[self.simple[i]], &self.roots[self.simple[j]]);
                        2 * self.inner(a, b) / self.inner(b, b)
                    })
                    .collect()
            })
            .collect()
    }

    /// Permutations of simple indices preserving the Cartan matrix, identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let c = self.cartan();
        let r = self.rank();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..r).collect();
        permutations(&mut perm, 0, &mut |p| {
            if (0..r).all(|i| (0..r).all(|j| c[p[i]][p[j]] == c[i][j])) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    /// Reflection of `v` in the root `alpha`.
    pub fn reflect(&self, alpha: &[i32], v: &[i32]) -> Vec<i32> {
        let num = 2 * self.inner(v, alpha);
        let den = self.inner(alpha, alpha);
        debug_assert_eq!(num % den, 0);
        let k = num / den;
        v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
    }

    /// Board size as (rows, cols).
    pub fn board_size(&self) -> (usize, usize) {
        let n = self.kind.rank;
        match self.kind.family {
            Family::A => (n + 1, n + 1),
            Family::B | Family::C => (2 * n + 1, n),
            Family::D => (2 * n, n),
            Family::G2 => (6, 1),
        }
    }

    /// 1-based (row, col) of local root `i`.
    pub fn square(&self, i: usize) -> (usize, usize) {
        let v = &self.roots[i];
        let n = self.kind.rank;
        match self.kind.family {
            Family::G2 => {
                let pos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
                    .iter()
                    .position(|&(a, b)| v[0] == a && v[1] == b)
                    .expect("G2 root");
                (6 - pos, 1)
            }
            _ => {
                let (shape, i, j) = classical_shape(v);
                match (self.kind.family, shape) {
                    (Family::A, Shape::Diff) => (i, j),
                    (Family::D, Shape::Diff) => (n + i, j),
                    (Family::D, Shape::Sum) => (n + 1 - i, j),
                    (_, Shape::Diff) => (n + 1 + i, j),
                    (_, Shape::Sum) => (n + 1 - i, j),
                    (_, Shape::Short) => (n + 1, j),
                }
            }
        }
    }

    /// Display name of local root `i`, e.g. `α_{1,3}` or `γ°_{2}`.
    pub fn name(&self, i: usize) -> String {
        let v = &self.roots[i];
        if self.kind.family == Family::G2 {
            return format!("{}*s+{}*l", v[0], v[1]);
        }
        let (shape, i, j) = classical_shape(v);
        let letter = match self.kind.family {
            Family::A => "α",
            Family::D => "β",
            _ => "γ",
        };
        match shape {
            Shape::Diff => format!("{letter}_{{{i},{j}}}"),
            Shape::Sum => format!("{letter}'_{{{i},{j}}}"),
            Shape::Short => format!("γ°_{{{j}}}"),
        }
    }

    /// Inverse of [`Factor::name`]; also accepts ASCII letters `a`, `b`, `g` and `go` for `γ°`.
    pub fn parse_name(&self, s: &str) -> Option<usize> {
        let dim = self.dim();
        if self.kind.family == Family::G2 {
            let (a, b) = s.split_once("*s+")?;
            let b = b.strip_suffix("*l")?;
            return self.index_of(&[a.trim().parse().ok()?, b.trim().parse().ok()?]);
        }
        let (head, rest) = s.split_once('_')?;
        let inner = rest.strip_prefix('{')?.strip_suffix('}')?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|t| t.trim().parse().ok())
            .collect::<Option<_>>()?;
        let (letter, shape) = match head {
            "α" | "a" => ('a', Shape::Diff),
            "β" | "b" => ('b', Shape::Diff),
            "β'" | "b'" => ('b', Shape::Sum),
            "γ" | "g" => ('g', Shape::Diff),
            "γ'" | "g'" => ('g', Shape::Sum),
            "γ°" | "go" | "g0" => ('g', Shape::Short),
            _ => return None,
        };
        let expected = match self.kind.family {
            Family::A => 'a',
            Family::D => 'b',
            _ => 'g',
        };
        if letter != expected {
            return None;
        }
        let mut v = vec![0; dim];
        match (shape, nums.as_slice()) {
            (Shape::Diff, &[i, j]) if 1 <= i && i < j && j <= dim => {
                v[i - 1] = -1;
                v[j - 1] = 1;
            }
            (Shape::Sum, &[i, j]) if 1 <= i && i < j && j <= dim => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            (Shape::Short, &[j]) if 1 <= j && j <= dim => {
                v[j - 1] = if self.kind.family == Family::C { 2 } else { 1 };
            }
            _ => return None,
        }
        self.index_of(&v)
    }
}

fn permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Diff,
    Sum,
    Short,
}

/// Decomposes a classical root vector into its shape and 1-based indices.
fn classical_shape(v: &[i32]) -> (Shape, usize, usize) {
    let nz: Vec<(usize, i32)> = v
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| (k + 1, x))
        .collect();
    match *nz.as_slice() {
        [(i, -1), (j, 1)] => (Shape::Diff, i, j),
        [(i, 1), (j, 1)] => (Shape::Sum, i, j),
        [(j, _)] => (Shape::Short, 0, j),
        _ => panic!("not a positive classical root: {v:?}"),
    }
}

/// A product of simple root systems with globally numbered positive roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: String,
    factors: Vec<Factor>,
    offsets: Vec<usize>,
    roots: Vec<Root>,
    sums: Vec<Option<u8>>,
    covers: Vec<RootSet>,
    up: Vec<RootSet>,
    col_offsets: Vec<usize>,
}

/// Columns between adjacent component boards.
pub const BOARD_GUTTER: usize = 1;

impl RootSystem {
    /// Parses `Simple ("x" Simple)*`, e.g. `A4xB2`.
    pub fn parse(spec: &str) -> Result<RootSystem, RootSystemError> {
        let mut kinds = Vec::new();
        let mut pos = 0;
        for part in spec.split('x') {
            let lead = part.len() - part.trim_start().len();
            if part.trim().is_empty() {
                return Err(RootSystemError::Parse {
                    pos,
                    msg: "empty factor".into(),
                });
            }
            kinds.push(SimpleType::parse_at(part.trim(), pos + lead)?);
            pos += part.len() + 1;
        }
        RootSystem::from_factors(&kinds)
    }

    pub fn from_factors(kinds: &[SimpleType]) -> Result<RootSystem, RootSystemError> {
        let total: usize = kinds.iter().map(|k| k.positive_root_count()).sum();
        if total > MAX_ROOTS {
            return Err(RootSystemError::TooManyRoots(total));
        }
        if kinds.is_empty() {
            return Err(RootSystemError::Parse {
                pos: 0,
                msg: "empty group".into(),
            });
        }
        let factors: Vec<Factor> = kinds.iter().map(|&k| Factor::new(k)).collect();
        let spec = kinds
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join("x");
        let mut offsets = Vec::new();
        let mut roots = Vec::new();
        let mut col_offsets = Vec::new();
        let mut col = 0;
        for (c, f) in factors.iter().enumerate() {
            offsets.push(roots.len());
            col_offsets.push(col);
            col += f.board_size().1 + BOARD_GUTTER;
            for i in 0..f.len() {
                roots.push(Root {
                    id: roots.len(),
                    component: c,
                    vector: f.roots[i].clone(),
                    height: f.heights[i],
                });
            }
        }
        let n = roots.len();
        let mut sums = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (&roots[a], &roots[b]);
                if ra.component != rb.component {
                    continue;
                }
                let f = &factors[ra.component];
                let v: Vec<i32> = ra.vector.iter().zip(&rb.vector).map(|(x, y)| x + y).collect();
                if let Some(i) = f.index_of(&v) {
                    sums[a * n + b] = Some((offsets[ra.component] + i) as u8);
                }
            }
        }
        let mut covers = vec![RootSet::EMPTY; n];
        for a in 0..n {
            let c = roots[a].component;
            let f = &factors[c];
            for &s in &f.simple {
                if let Some(t) = sums[a * n + offsets[c] + s] {
                    covers[a].insert(t as usize);
                }
            }
        }
        // Ids refine height, so processing downward sees every cover first.
        let mut up = vec![RootSet::EMPTY; n];
        for a in (0..n).rev() {
            let mut u = RootSet::singleton(a);
            for b in covers[a].iter() {
                u = u.union(&up[b]);
            }
            up[a] = u;
        }
        Ok(RootSystem {
            spec,
            factors,
            offsets,
            roots,
            sums,
            covers,
            up,
            col_offsets,
        })
    }

    /// Canonical spec string, e.g. `A4xB2`.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor(&self, component: usize) -> &Factor {
        &self.factors[component]
    }

    pub fn num_components(&self) -> usize {
        self.factors.len()
    }

    /// Number of positive roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn all(&self) -> RootSet {
        RootSet::full(self.len())
    }

    /// Global id of the first root of `component`.
    pub fn offset(&self, component: usize) -> usize {
        self.offsets[component]
    }

    /// Ids belonging to `component`.
    pub fn component_set(&self, component: usize) -> RootSet {
        let lo = self.offsets[component];
        RootSet::range(lo, lo + self.factors[component].len())
    }

    pub fn local_index(&self, id: RootId) -> usize {
        id - self.offsets[self.roots[id].component]
    }

    /// Global id of a positive root given by component and local vector.
    pub fn id_of(&self, component: usize, v: &[i32]) -> Option<RootId> {
        self.factors
            .get(component)?
            .index_of(v)
            .map(|i| self.offsets[component] + i)
    }

    /// Global id of the `i`-th simple root (0-based) of `component`.
    pub fn simple_root(&self, component: usize, i: usize) -> RootId {
        self.offsets[component] + self.factors[component].simple[i]
    }

    pub fn height(&self, id: RootId) -> u32 {
        self.roots[id].height
    }

    /// `a + b` when it is a positive root of the same component.
    #[inline]
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a * self.len() + b].map(|x| x as usize)
    }

    /// Roots obtained from `a` by adding one simple root.
    pub fn covers(&self, a: RootId) -> RootSet {
        self.covers[a]
    }

    /// All roots `≥ a` in the root poset, including `a`.
    pub fn up_set(&self, a: RootId) -> RootSet {
        self.up[a]
    }

    /// Smallest ideal containing `s`.
    pub fn closure(&self, s: &RootSet) -> RootSet {
        let mut out = RootSet::EMPTY;
        for a in s.iter() {
            out = out.union(&self.up[a]);
        }
        out
    }

    /// Whether `s` is closed under raising.
    pub fn is_ideal(&self, s: &RootSet) -> bool {
        s.iter().all(|a| self.covers[a].is_subset(s))
    }

    pub fn name(&self, id: RootId) -> String {
        let r = &self.roots[id];
        let local = self.factors[r.component].name(self.local_index(id));
        if self.factors.len() > 1 {
            format!("c{}:{}", r.component + 1, local)
        } else {
            local
        }
    }

    /// Parses a root name such as `α_{1,3}`, `c2:γ°_{1}` or a bare id.
    pub fn parse_root(&self, s: &str) -> Result<RootId, RootSystemError> {
        let s = s.trim();
        let unknown = || RootSystemError::UnknownRoot(s.to_string());
        if let Ok(id) = s.parse::<usize>() {
            return if id < self.len() { Ok(id) } else { Err(unknown()) };
        }
        let (component, local) = match s.split_once(':') {
            Some((c, rest)) if c.starts_with('c') => {
                let k: usize = c[1..].parse().map_err(|_| unknown())?;
                if k == 0 || k > self.factors.len() {
                    return Err(unknown());
                }
                (k - 1, rest)
            }
            _ if self.factors.len() == 1 => (0, s),
            _ => return Err(unknown()),
        };
        self.factors[component]
            .parse_name(local)
            .map(|i| self.offsets[component] + i)
            .ok_or_else(unknown)
    }

    pub fn square(&self, id: RootId) -> Square {
        let r = &self.roots[id];
        let (row, col) = self.factors[r.component].square(self.local_index(id));
        Square {
            component: r.component,
            row,
            col,
        }
    }

    /// Squares of every root, indexed by id.
    pub fn layout(&self) -> Vec<Square> {
        (0..self.len()).map(|id| self.square(id)).collect()
    }

    /// Column offset of a component on the combined board.
    pub fn board_col_offset(&self, component: usize) -> usize {
        self.col_offsets[component]
    }

    /// Combined board size as (rows, cols).
    pub fn board_size(&self) -> (usize, usize) {
        let rows = self.factors.iter().map(|f| f.board_size().0).max().unwrap_or(0);
        let last = self.factors.len() - 1;
        (
            rows,
            self.col_offsets[last] + self.factors[last].board_size().1,
        )
    }

    /// Every order ideal of the positive-root poset.
    pub fn order_ideals(&self) -> OrderIdeals {
        let per: Vec<Vec<RootSet>> = (0..self.factors.len())
            .map(|c| self.factor_ideals(c))
            .collect();
        OrderIdeals::new(per, None)
    }

    /// Collects all order ideals, failing once more than `budget` are produced.
    pub fn collect_ideals(&self, budget: usize) -> Result<Vec<RootSet>, RootSystemError> {
        let mut count: usize = 1;
        for c in 0..self.factors.len() {
            let k = self.factor_ideals(c).len();
            count = count.saturating_mul(k);
            if count > budget {
                return Err(RootSystemError::Budget(budget));
            }
        }
        let mut it = self.order_ideals().with_budget(budget);
        let v: Vec<RootSet> = it.by_ref().collect();
        if it.exceeded() {
            return Err(RootSystemError::Budget(budget));
        }
        Ok(v)
    }

    /// Ideals of one component, using global ids.
    pub fn factor_ideals(&self, component: usize) -> Vec<RootSet> {
        let lo = self.offsets[component];
        let hi = lo + self.factors[component].len();
        let mut out = Vec::new();
        self.ideals_rec(lo, hi, RootSet::EMPTY, &mut out);
        out
    }

    fn ideals_rec(&self, lo: usize, next: usize, cur: RootSet, out: &mut Vec<RootSet>) {
        if next == lo {
            out.push(cur);
            return;
        }
        let r = next - 1;
        self.ideals_rec(lo, r, cur, out);
        if self.covers[r].is_subset(&cur) {
            let mut with = cur;
            with.insert(r);
            self.ideals_rec(lo, r, with, out);
        }
    }
}

impl FromStr for RootSystem {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RootSystem::parse(s)
    }
}

/// Lazy product of per-component ideal lists.
#[derive(Debug, Clone)]
pub struct OrderIdeals {
    per: Vec<Vec<RootSet>>,
    idx: Vec<usize>,
    done: bool,
    budget: Option<usize>,
    produced: usize,
    exceeded: bool,
}

impl OrderIdeals {
    fn new(per: Vec<Vec<RootSet>>, budget: Option<usize>) -> Self {
        let idx = vec![0; per.len()];
        OrderIdeals {
            per,
            idx,
            done: false,
            budget,
            produced: 0,
            exceeded: false,
        }
    }

    /// Stops after `budget` ideals; [`OrderIdeals::exceeded`] then reports whether more remained.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn exceeded(&self) -> bool {
        self.exceeded
    }
}

impl Iterator for OrderIdeals {
    type Item = RootSet;

    fn next(&mut self) -> Option<RootSet> {
        if self.done {
            return None;
        }
        if let Some(b) = self.budget {
            if self.produced >= b {
                self.exceeded = true;
                self.done = true;
                return None;
            }
        }
        let mut s = RootSet::EMPTY;
        for (c, &i) in self.idx.iter().enumerate() {
            s = s.union(&self.per[c][i]);
        }
        self.produced += 1;
        let mut c = 0;
        loop {
            if c == self.idx.len() {
                self.done = true;
                break;
            }
            self.idx[c] += 1;
            if self.idx[c] < self.per[c].len() {
                break;
            }
            self.idx[c] = 0;
            c += 1;
        }
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_limits() {
        assert!(RootSystem::parse("A9").is_ok());
        assert!(matches!(
            RootSystem::parse("A10"),
            Err(RootSystemError::UnsupportedRank { .. })
        ));
        assert!(RootSystem::parse("D2").is_err());
        assert!(RootSystem::parse("G3").is_err());
        assert!(matches!(
            RootSystem::parse("A2xQ3"),
            Err(RootSystemError::Parse { pos: 3, .. })
        ));
        assert!(RootSystem::parse("A2x").is_err());
    }

    #[test]
    fn names_roundtrip() {
        for spec in ["A4", "B3", "C3", "D4", "G2", "A2xB2xG2"] {
            let rs = RootSystem::parse(spec).unwrap();
            for id in 0..rs.len() {
                assert_eq!(rs.parse_root(&rs.name(id)).unwrap(), id, "{spec} {}", rs.name(id));
            }
        }
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(b2.parse_root("go_{1}").unwrap(), b2.parse_root("γ°_{1}").unwrap());
        assert!(b2.parse_root("α_{1,2}").is_err());
    }

    #[test]
    fn diagram_automorphism_counts() {
        let count = |s: &str| RootSystem::parse(s).unwrap().factor(0).diagram_automorphisms().len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A4"), 2);
        assert_eq!(count("B3"), 1);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("G2"), 1);
    }

    #[test]
    fn heights_are_additive() {
        for spec in ["A4", "B3", "C3", "D4", "G2"] {
            let rs = RootSystem::parse(spec).unwrap();
            for a in 0..rs.len() {
                for b in 0..rs.len() {
                    if let Some(c) = rs.add(a, b) {
                        assert_eq!(rs.height(c), rs.height(a) + rs.height(b));
                    }
                }
            }
        }
    }
}

//! Weyl group elements as signed permutations (or dihedral words for G2).
//!
//! An element acts on ambient coordinates by `x_k ↦ ±x_{|a_k|}`, so the
//! one-line word `21435` sends `x_1 ↦ x_2` and `α_{i,j}` is an inversion
//! exactly when `π(i) > π(j)`.

use crate::root_system::{Family, RootId, RootSystem, SimpleType};
use crate::rootset::RootSet;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

pub mod group;

pub use group::{GroupError, WeylGroup, MAX_GROUP_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("expected {expected} factor(s) separated by `;`, found {found}")]
    FactorCount { expected: usize, found: usize },
    #[error("`{0}` is not a permutation of 1..{1}")]
    NotPermutation(String, usize),
    #[error("`{0}` has an odd number of sign changes")]
    Parity(String),
    #[error("bad G2 word `{0}`: use letters 1 and 2")]
    BadWord(String),
    #[error("element does not belong to {0}")]
    WrongGroup(String),
}

/// The component of a Weyl element living in one simple factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorElement {
    /// Type A: `x_k ↦ x_{a_k}`, 1-based.
    Perm(Vec<u8>),
    /// Types B, C, D: `x_k ↦ sign(a_k) x_{|a_k|}`.
    Signed(Vec<i8>),
    /// G2: shortest word in `r1` (short) and `r2` (long), acting right to left.
    G2(Vec<u8>),
}

type Mat2 = [[i32; 2]; 2];

const G2_R1: Mat2 = [[-1, 3], [0, 1]];
const G2_R2: Mat2 = [[1, 0], [1, -1]];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn g2_word_matrix(word: &[u8]) -> Mat2 {
    let mut m = [[1, 0], [0, 1]];
    for &l in word {
        m = mat_mul(&m, if l == 1 { &G2_R1 } else { &G2_R2 });
    }
    m
}

/// The twelve G2 elements by matrix, each with its normal-form word.
fn g2_table() -> &'static HashMap<Mat2, Vec<u8>> {
    static T: OnceLock<HashMap<Mat2, Vec<u8>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = HashMap::new();
        t.insert(g2_word_matrix(&[]), vec![]);
        for len in 1..=6 {
            for start in [1u8, 2] {
                let w: Vec<u8> = (0..len).map(|k| if k % 2 == 0 { start } else { 3 - start }).collect();
                t.entry(g2_word_matrix(&w)).or_insert(w);
            }
        }
        assert_eq!(t.len(), 12);
        t
    })
}

fn g2_normalize(word: &[u8]) -> Vec<u8> {
    g2_table()[&g2_word_matrix(word)].clone()
}

impl FactorElement {
    pub fn identity(kind: SimpleType) -> Self {
        let n = kind.dim();
        match kind.family {
            Family::A => FactorElement::Perm((1..=n as u8).collect()),
            Family::G2 => FactorElement::G2(vec![]),
            _ => FactorElement::Signed((1..=n as i8).collect()),
        }
    }

    /// The `i`-th simple reflection (0-based).
    pub fn simple_reflection(kind: SimpleType, i: usize) -> Self {
        let n = kind.dim();
        match (kind.family, &mut Self::identity(kind)) {
            (Family::G2, _) => FactorElement::G2(vec![i as u8 + 1]),
            (_, FactorElement::Perm(p)) => {
                p.swap(i, i + 1);
                FactorElement::Perm(p.clone())
            }
            (family, FactorElement::Signed(p)) => {
                if i + 1 < n {
                    p.swap(i, i + 1);
                } else if family == Family::D {
                    p[0] = -2;
                    p[1] = -1;
                } else {
                    p[0] = -1;
                }
                FactorElement::Signed(p.clone())
            }
            _ => unreachable!(),
        }
    }

    /// Builds the element whose action sends each basis vector `e_k` to `images[k]`.
    pub fn from_basis_images(kind: SimpleType, images: &[Vec<i32>]) -> Option<Self> {
        if kind.family == Family::G2 {
            let m = [[images[0][0], images[1][0]], [images[0][1], images[1][1]]];
            return g2_table().get(&m).map(|w| FactorElement::G2(w.clone()));
        }
        let mut a = Vec::with_capacity(images.len());
        for img in images {
            let nz: Vec<(usize, i32)> = img
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (j, x))
                .collect();
            match nz.as_slice() {
                &[(j, s)] if s == 1 || s == -1 => a.push((j as i32 + 1) * s),
                _ => return None,
            }
        }
        Some(match kind.family {
            Family::A => {
                if a.iter().any(|&x| x < 0) {
                    return None;
                }
                FactorElement::Perm(a.iter().map(|&x| x as u8).collect())
            }
            _ => FactorElement::Signed(a.iter().map(|&x| x as i8).collect()),
        })
    }

    /// Image of a local ambient vector.
    pub fn act(&self, v: &[i32]) -> Vec<i32> {
        match self {
            FactorElement::Perm(p) => {
                let mut out = vec![0; v.len()];
                for (k, &a) in p.iter().enumerate() {
                    out[a as usize - 1] = v[k];
                }
                out
            }
            FactorElement::Signed(p) => {
                let mut out = vec![0; v.len()];
                for (k, &a) in p.iter().enumerate() {
                    let j = a.unsigned_abs() as usize - 1;
                    out[j] = if a < 0 { -v[k] } else { v[k] };
                }
                out
            }
            FactorElement::G2(w) => {
                let m = g2_word_matrix(w);
                vec![m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (FactorElement::Perm(u), FactorElement::Perm(v)) => {
                FactorElement::Perm(v.iter().map(|&k| u[k as usize - 1]).collect())
            }
            (FactorElement::Signed(u), FactorElement::Signed(v)) => FactorElement::Signed(
                v.iter()
                    .map(|&k| {
                        let x = u[k.unsigned_abs() as usize - 1];
                        if k < 0 {
                            -x
                        } else {
                            x
                        }
                    })
                    .collect(),
            ),
            (FactorElement::G2(u), FactorElement::G2(v)) => {
                let mut w = u.clone();
                w.extend_from_slice(v);
                FactorElement::G2(g2_normalize(&w))
            }
            _ => panic!("composing elements of different factor types"),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            FactorElement::Perm(p) => {
                let mut q = vec![0u8; p.len()];
                for (k, &a) in p.iter().enumerate() {
                    q[a as usize - 1] = k as u8 + 1;
                }
                FactorElement::Perm(q)
            }
            FactorElement::Signed(p) => {
                let mut q = vec![0i8; p.len()];
                for (k, &a) in p.iter().enumerate() {
                    let s = if a < 0 { -1 } else { 1 };
                    q[a.unsigned_abs() as usize - 1] = s * (k as i8 + 1);
                }
                FactorElement::Signed(q)
            }
            FactorElement::G2(w) => {
                let r: Vec<u8> = w.iter().rev().copied().collect();
                FactorElement::G2(g2_normalize(&r))
            }
        }
    }

    fn parse(kind: SimpleType, lit: &str) -> Result<Self, WeylError> {
        let lit = lit.trim();
        let n = kind.dim();
        match kind.family {
            Family::G2 => {
                let mut w = Vec::new();
                for ch in lit.chars() {
                    match ch {
                        '1' => w.push(1),
                        '2' => w.push(2),
                        c if c.is_whitespace() => {}
                        _ => return Err(WeylError::BadWord(lit.to_string())),
                    }
                }
                Ok(FactorElement::G2(g2_normalize(&w)))
            }
            family => {
                let bad = || WeylError::NotPermutation(lit.to_string(), n);
                let vals: Vec<i64> = if lit.contains(',') || family != Family::A || n > 9 {
                    lit.split(',')
                        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                        .collect::<Result<_, _>>()?
                } else {
                    lit.chars()
                        .map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad))
                        .collect::<Result<_, _>>()?
                };
                if vals.len() != n {
                    return Err(bad());
                }
                let mut seen = vec![false; n];
                for &v in &vals {
                    let a = v.unsigned_abs() as usize;
                    if a == 0 || a > n || seen[a - 1] || (family == Family::A && v < 0) {
                        return Err(bad());
                    }
                    seen[a - 1] = true;
                }
                if family == Family::A {
                    return Ok(FactorElement::Perm(vals.iter().map(|&v| v as u8).collect()));
                }
                if family == Family::D && vals.iter().filter(|&&v| v < 0).count() % 2 == 1 {
                    return Err(WeylError::Parity(lit.to_string()));
                }
                Ok(FactorElement::Signed(vals.iter().map(|&v| v as i8).collect()))
            }
        }
    }

    fn matches(&self, kind: SimpleType) -> bool {
        match (self, kind.family) {
            (FactorElement::Perm(p), Family::A) => p.len() == kind.dim(),
            (FactorElement::G2(_), Family::G2) => true,
            (FactorElement::Signed(p), Family::B | Family::C) => p.len() == kind.dim(),
            (FactorElement::Signed(p), Family::D) => {
                p.len() == kind.dim() && p.iter().filter(|&&a| a < 0).count() % 2 == 0
            }
            _ => false,
        }
    }
}

impl fmt::Display for FactorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorElement::Perm(p) if p.len() <= 9 => {
                p.iter().try_for_each(|a| write!(f, "{a}"))
            }
            FactorElement::Perm(p) => {
                let s: Vec<String> = p.iter().map(|a| a.to_string()).collect();
                f.write_str(&s.join(","))
            }
            FactorElement::Signed(p) => {
                let s: Vec<String> = p.iter().map(|a| a.to_string()).collect();
                f.write_str(&s.join(","))
            }
            FactorElement::G2(w) => w.iter().try_for_each(|a| write!(f, "{a}")),
        }
    }
}

/// An element of the Weyl group of a (product) root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    parts: Vec<FactorElement>,
}

/// Image of a positive root: a root id and whether the image is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub positive: bool,
    pub root: RootId,
}

impl WeylElement {
    pub fn from_parts(rs: &RootSystem, parts: Vec<FactorElement>) -> Result<Self, WeylError> {
        if parts.len() != rs.num_components() {
            return Err(WeylError::FactorCount {
                expected: rs.num_components(),
                found: parts.len(),
            });
        }
        for (p, f) in parts.iter().zip(rs.factors()) {
            if !p.matches(f.kind) {
                return Err(WeylError::WrongGroup(rs.spec().to_string()));
            }
        }
        Ok(WeylElement { parts })
    }

    pub fn parts(&self) -> &[FactorElement] {
        &self.parts
    }

    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            parts: rs.factors().iter().map(|f| FactorElement::identity(f.kind)).collect(),
        }
    }

    /// Parses factor literals joined by `;`.
    pub fn parse(rs: &RootSystem, literal: &str) -> Result<Self, WeylError> {
        let pieces: Vec<&str> = literal.split(';').collect();
        if pieces.len() != rs.num_components() {
            return Err(WeylError::FactorCount {
                expected: rs.num_components(),
                found: pieces.len(),
            });
        }
        let parts = pieces
            .iter()
            .zip(rs.factors())
            .map(|(p, f)| FactorElement::parse(f.kind, p))
            .collect::<Result<_, _>>()?;
        Ok(WeylElement { parts })
    }

    /// Total number of simple reflections across all factors.
    pub fn simple_count(rs: &RootSystem) -> usize {
        rs.factors().iter().map(|f| f.rank()).sum()
    }

    /// Maps a flat simple index to (component, local simple index).
    pub fn split_simple_index(rs: &RootSystem, mut g: usize) -> (usize, usize) {
        for (c, f) in rs.factors().iter().enumerate() {
            if g < f.rank() {
                return (c, g);
            }
            g -= f.rank();
        }
        panic!("simple index out of range");
    }

    /// Simple reflection with flat index `g`.
    pub fn simple_reflection(rs: &RootSystem, g: usize) -> Self {
        let (c, i) = Self::split_simple_index(rs, g);
        let mut w = Self::identity(rs);
        w.parts[c] = FactorElement::simple_reflection(rs.factor(c).kind, i);
        w
    }

    /// Reflection in the positive root `id`.
    pub fn reflection(rs: &RootSystem, id: RootId) -> Self {
        let root = rs.root(id);
        let f = rs.factor(root.component);
        let images: Vec<Vec<i32>> = (0..f.dim())
            .map(|k| {
                let mut e = vec![0; f.dim()];
                e[k] = 1;
                f.reflect(&root.vector, &e)
            })
            .collect();
        let mut w = Self::identity(rs);
        w.parts[root.component] =
            FactorElement::from_basis_images(f.kind, &images).expect("reflection is a Weyl element");
        w
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.compose(b)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            parts: self.parts.iter().map(|p| p.inverse()).collect(),
        }
    }

    pub fn act_vector(&self, component: usize, v: &[i32]) -> Vec<i32> {
        self.parts[component].act(v)
    }

    /// Image of a positive root.
    pub fn act_root(&self, rs: &RootSystem, id: RootId) -> SignedRoot {
        let r = rs.root(id);
        let img = self.parts[r.component].act(&r.vector);
        let (positive, local) = rs
            .factor(r.component)
            .classify(&img)
            .expect("Weyl group preserves the root system");
        SignedRoot {
            positive,
            root: rs.offset(r.component) + local,
        }
    }

    /// `{α > 0 : w·α < 0}`.
    pub fn inversion_set(&self, rs: &RootSystem) -> RootSet {
        (0..rs.len()).filter(|&id| !self.act_root(rs, id).positive).collect()
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.inversion_set(rs).len()
    }

    /// Whether `ℓ(w s_g) < ℓ(w)`, i.e. `w` sends the simple root `g` negative.
    pub fn has_right_descent(&self, rs: &RootSystem, g: usize) -> bool {
        let (c, i) = Self::split_simple_index(rs, g);
        !self.act_root(rs, rs.simple_root(c, i)).positive
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|p| match p {
            FactorElement::Perm(a) => a.iter().enumerate().all(|(k, &x)| x as usize == k + 1),
            FactorElement::Signed(a) => a.iter().enumerate().all(|(k, &x)| x as usize == k + 1 && x > 0),
            FactorElement::G2(w) => w.is_empty(),
        })
    }

    /// The longest element.
    pub fn long_element(rs: &RootSystem) -> Self {
        let mut w = Self::identity(rs);
        let r = Self::simple_count(rs);
        'outer: loop {
            for g in 0..r {
                if !w.has_right_descent(rs, g) {
                    w = w.compose(&Self::simple_reflection(rs, g));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// A reduced word `[g_1, .., g_k]` with `w = s_{g_1} ⋯ s_{g_k}`, found by peeling
    /// the smallest right descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let r = Self::simple_count(rs);
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for g in 0..r {
                if w.has_right_descent(rs, g) {
                    word.push(g);
                    w = w.compose(&Self::simple_reflection(rs, g));
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(rs), |w, &g| {
            w.compose(&Self::simple_reflection(rs, g))
        })
    }

    /// Bruhat order `u ≤ v`.
    pub fn bruhat_leq(rs: &RootSystem, u: &Self, v: &Self) -> bool {
        let r = Self::simple_count(rs);
        let (mut u, mut v) = (u.clone(), v.clone());
        loop {
            let Some(g) = (0..r).find(|&g| v.has_right_descent(rs, g)) else {
                return u.is_identity();
            };
            let s = Self::simple_reflection(rs, g);
            if u.has_right_descent(rs, g) {
                u = u.compose(&s);
            }
            v = v.compose(&s);
        }
    }

    /// Applies a diagram automorphism of `component` (a permutation of its simple indices).
    pub fn apply_diagram_automorphism(&self, rs: &RootSystem, component: usize, perm: &[usize]) -> Self {
        let base: usize = rs.factors()[..component].iter().map(|f| f.rank()).sum();
        let word: Vec<usize> = self
            .reduced_word(rs)
            .into_iter()
            .map(|g| {
                if g >= base && g < base + perm.len() {
                    base + perm[g - base]
                } else {
                    g
                }
            })
            .collect();
        Self::from_word(rs, &word)
    }

    /// A uniformly random element.
    pub fn random<R: Rng + ?Sized>(rs: &RootSystem, rng: &mut R) -> Self {
        let parts = rs
            .factors()
            .iter()
            .map(|f| {
                let n = f.dim();
                match f.kind.family {
                    Family::A => {
                        let mut p: Vec<u8> = (1..=n as u8).collect();
                        p.shuffle(rng);
                        FactorElement::Perm(p)
                    }
                    Family::G2 => {
                        let all: Vec<&Vec<u8>> = g2_table().values().collect();
                        let mut all: Vec<Vec<u8>> = all.into_iter().cloned().collect();
                        all.sort();
                        FactorElement::G2(all[rng.gen_range(0..all.len())].clone())
                    }
                    family => {
                        let mut p: Vec<i8> = (1..=n as i8).collect();
                        p.shuffle(rng);
                        for x in p.iter_mut() {
                            if rng.gen_bool(0.5) {
                                *x = -*x;
                            }
                        }
                        if family == Family::D && p.iter().filter(|&&a| a < 0).count() % 2 == 1 {
                            p[n - 1] = -p[n - 1];
                        }
                        FactorElement::Signed(p)
                    }
                }
            })
            .collect();
        WeylElement { parts }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn literals_roundtrip() {
        let cases = [("A4", "21435"), ("B3", "-1,3,2"), ("D4", "-2,-1,3,4"), ("G2", "121"), ("A2xG2", "312;21")];
        for (g, lit) in cases {
            let r = rs(g);
            assert_eq!(WeylElement::parse(&r, lit).unwrap().to_string(), lit);
        }
        let g2 = rs("G2");
        assert_eq!(WeylElement::parse(&g2, "1111").unwrap().to_string(), "");
        assert_eq!(WeylElement::parse(&g2, "212121").unwrap().to_string(), "121212");
    }

    #[test]
    fn literal_errors() {
        let d4 = rs("D4");
        assert!(matches!(WeylElement::parse(&d4, "-1,2,3,4"), Err(WeylError::Parity(_))));
        assert!(matches!(WeylElement::parse(&rs("A3"), "1123"), Err(WeylError::NotPermutation(..))));
        assert!(matches!(WeylElement::parse(&rs("G2"), "13"), Err(WeylError::BadWord(_))));
        assert!(matches!(
            WeylElement::parse(&rs("A2xA2"), "123"),
            Err(WeylError::FactorCount { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn simple_reflections_match_root_reflections() {
        for g in ["A3", "B3", "C3", "D4", "G2"] {
            let r = rs(g);
            for i in 0..r.factor(0).rank() {
                let a = WeylElement::simple_reflection(&r, i);
                let b = WeylElement::reflection(&r, r.simple_root(0, i));
                assert_eq!(a, b, "{g} s{i}");
                assert_eq!(a.length(&r), 1);
            }
        }
    }

    #[test]
    fn reduced_words_have_length_many_letters() {
        let r = rs("B3");
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let w = WeylElement::random(&r, &mut rng);
            let word = w.reduced_word(&r);
            assert_eq!(word.len(), w.length(&r));
            assert_eq!(WeylElement::from_word(&r, &word), w);
        }
    }
}

//! Cohomology ring from the Chevalley formula alone.
//!
//! Degree by degree, a basis of words in the divisor classes is chosen and
//! each Schubert class is written in it. Products then reduce to applying
//! divisor operators, all in integer arithmetic with one denominator per
//! degree.

use super::OracleError;
use crate::root_system::RootSystem;
use crate::weyl::{GroupError, WeylElement, WeylGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::Arc;

/// A class of one degree, in the Schubert basis of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graded {
    pub degree: usize,
    pub coeffs: Vec<i128>,
}

#[derive(Debug, Clone, Copy)]
struct Word {
    parent: u32,
    divisor: u32,
}

#[derive(Debug)]
pub struct Ring {
    group: Arc<WeylGroup>,
    /// Position of each element inside its length level.
    pos: Vec<u32>,
    /// `chevalley[g][w]`: covers `w s_β` with coefficient `<ϖ_g, β∨>`.
    chevalley: Vec<Vec<Vec<(u32, i64)>>>,
    words: Vec<Vec<Word>>,
    /// `inverse[k][r][j]`: coefficient of word `j` in the class of level element `r`, times `denom[k]`.
    inverse: Vec<Vec<Vec<i128>>>,
    denom: Vec<i128>,
}

impl Ring {
    pub fn new(rs: Arc<RootSystem>) -> Result<Ring, GroupError> {
        Ok(Ring::from_group(Arc::new(WeylGroup::new(rs)?)))
    }

    pub fn from_group(group: Arc<WeylGroup>) -> Ring {
        let rs = group.root_system().clone();
        let n = group.order();
        let top = rs.len();
        let mut pos = vec![0u32; n];
        for l in 0..=top {
            for (r, &w) in group.of_length(l).iter().enumerate() {
                pos[w] = r as u32;
            }
        }
        let reflections: Vec<WeylElement> = (0..rs.len()).map(|id| WeylElement::reflection(&rs, id)).collect();
        let rank = group.simple_count();
        let mut chevalley = vec![vec![Vec::new(); n]; rank];
        for w in 0..n {
            let lw = group.length(w);
            for (id, s) in reflections.iter().enumerate() {
                let ws = group.index_of(&group.element(w).compose(s)).expect("closed group");
                if group.length(ws) != lw + 1 {
                    continue;
                }
                let root = rs.root(id);
                let f = rs.factor(root.component);
                let local = rs.local_index(id);
                let coeffs = f.coefficients(local);
                let bb = f.inner(&root.vector, &root.vector) as i64;
                let base: usize = rs.factors()[..root.component].iter().map(|f| f.rank()).sum();
                for (i, &ci) in coeffs.iter().enumerate() {
                    if ci == 0 {
                        continue;
                    }
                    let a = f.root(f.simple(i));
                    let aa = f.inner(a, a) as i64;
                    let num = ci as i64 * aa;
                    debug_assert_eq!(num % bb, 0);
                    chevalley[base + i][w].push((ws as u32, num / bb));
                }
            }
        }
        let mut ring = Ring {
            group,
            pos,
            chevalley,
            words: Vec::new(),
            inverse: Vec::new(),
            denom: Vec::new(),
        };
        ring.build_bases();
        ring
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    fn level(&self, l: usize) -> &[usize] {
        self.group.of_length(l)
    }

    /// Multiplies a class by the divisor `g`.
    pub fn divisor(&self, g: usize, x: &Graded) -> Graded {
        let next = self.level(x.degree + 1).len();
        let mut out = vec![0i128; next];
        for (r, &v) in x.coeffs.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let w = self.level(x.degree)[r];
            for &(t, c) in &self.chevalley[g][w] {
                out[self.pos[t as usize] as usize] += c as i128 * v;
            }
        }
        Graded {
            degree: x.degree + 1,
            coeffs: out,
        }
    }

    pub fn class(&self, w: usize) -> Graded {
        let l = self.group.length(w);
        let mut coeffs = vec![0; self.level(l).len()];
        coeffs[self.pos[w] as usize] = 1;
        Graded { degree: l, coeffs }
    }

    fn build_bases(&mut self) {
        let top = self.group.root_system().len();
        let rank = self.group.simple_count();
        self.words = vec![vec![Word { parent: 0, divisor: 0 }]];
        self.inverse = vec![vec![vec![1]]];
        self.denom = vec![1];
        let mut vectors: Vec<Graded> = vec![self.class(self.group.identity())];
        for k in 1..=top {
            let m = self.level(k).len();
            let mut chosen: Vec<Word> = Vec::new();
            let mut chosen_vecs: Vec<Graded> = Vec::new();
            let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
            'search: for (j, v) in vectors.iter().enumerate() {
                for g in 0..rank {
                    let cand = self.divisor(g, v);
                    let mut row: Vec<BigRational> =
                        cand.coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
                    for (p, e) in &echelon {
                        if !row[*p].is_zero() {
                            let f = row[*p].clone() / e[*p].clone();
                            for (a, b) in row.iter_mut().zip(e) {
                                *a -= f.clone() * b;
                            }
                        }
                    }
                    if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                        echelon.push((p, row));
                        chosen.push(Word {
                            parent: j as u32,
                            divisor: g as u32,
                        });
                        chosen_vecs.push(cand);
                        if chosen.len() == m {
                            break 'search;
                        }
                    }
                }
            }
            assert_eq!(chosen.len(), m, "divisor words do not span degree {k}");
            // Columns are words: word_j = Σ_r A[r][j] σ_r. Invert A.
            let mut a: Vec<Vec<BigRational>> = (0..m)
                .map(|r| {
                    (0..m)
                        .map(|j| BigRational::from_integer(BigInt::from(chosen_vecs[j].coeffs[r])))
                        .chain((0..m).map(|c| {
                            if c == r {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        }))
                        .collect()
                })
                .collect();
            for col in 0..m {
                let piv = (col..m).find(|&r| !a[r][col].is_zero()).expect("invertible");
                a.swap(col, piv);
                let p = a[col][col].clone();
                for x in a[col].iter_mut() {
                    *x /= p.clone();
                }
                for r in 0..m {
                    if r != col && !a[r][col].is_zero() {
                        let f = a[r][col].clone();
                        let pivot_row = a[col].clone();
                        for (x, y) in a[r].iter_mut().zip(pivot_row) {
                            *x -= f.clone() * y;
                        }
                    }
                }
            }
            // inv[j][r] is column r of the inverse; σ_r = Σ_j inv[j][r] word_j.
            let inv: Vec<Vec<BigRational>> = (0..m).map(|j| a[j][m..].to_vec()).collect();
            let mut d = BigInt::one();
            for row in &inv {
                for x in row {
                    d = d.lcm(x.denom());
                }
            }
            let to_i128 = |x: &BigRational| -> i128 {
                (x.clone() * BigRational::from_integer(d.clone()))
                    .to_integer()
                    .to_i128()
                    .expect("basis change fits in i128")
            };
            let table: Vec<Vec<i128>> = (0..m).map(|r| (0..m).map(|j| to_i128(&inv[j][r])).collect()).collect();
            self.inverse.push(table);
            self.denom.push(d.to_i128().expect("denominator fits in i128"));
            self.words.push(chosen);
            vectors = chosen_vecs;
        }
    }

    /// `σ_w · x`.
    pub fn multiply(&self, w: usize, x: &Graded) -> Graded {
        let k = self.group.length(w);
        let top = self.group.root_system().len();
        if k + x.degree > top {
            return Graded {
                degree: k + x.degree,
                coeffs: Vec::new(),
            };
        }
        if k == 0 {
            return x.clone();
        }
        // Apply every basis word of degree <= k to x, sharing prefixes.
        let mut applied: Vec<Graded> = vec![x.clone()];
        for d in 1..=k {
            applied = self.words[d]
                .iter()
                .map(|wd| self.divisor(wd.divisor as usize, &applied[wd.parent as usize]))
                .collect();
        }
        let row = &self.inverse[k][self.pos[w] as usize];
        let len = self.level(k + x.degree).len();
        let mut acc = vec![0i128; len];
        for (j, y) in applied.iter().enumerate() {
            let c = row[j];
            if c == 0 {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(&y.coeffs) {
                *a += c * b;
            }
        }
        let d = self.denom[k];
        for a in acc.iter_mut() {
            assert_eq!(*a % d, 0, "non-integral structure constant");
            *a /= d;
        }
        Graded {
            degree: k + x.degree,
            coeffs: acc,
        }
    }

    /// `σ_u · x` for every `u` whose degree still fits, sharing the word applications.
    pub fn multiply_all(&self, x: &Graded) -> Vec<(usize, Graded)> {
        let top = self.group.root_system().len();
        let mut out = Vec::new();
        let mut applied: Vec<Graded> = vec![x.clone()];
        for k in 0..=top.saturating_sub(x.degree) {
            if k > 0 {
                applied = self.words[k]
                    .iter()
                    .map(|wd| self.divisor(wd.divisor as usize, &applied[wd.parent as usize]))
                    .collect();
            }
            let len = self.level(k + x.degree).len();
            let d = self.denom[k];
            for (r, &u) in self.level(k).iter().enumerate() {
                let row = &self.inverse[k][r];
                let mut acc = vec![0i128; len];
                for (j, y) in applied.iter().enumerate() {
                    let c = row[j];
                    if c != 0 {
                        for (a, &b) in acc.iter_mut().zip(&y.coeffs) {
                            *a += c * b;
                        }
                    }
                }
                for a in acc.iter_mut() {
                    assert_eq!(*a % d, 0, "non-integral structure constant");
                    *a /= d;
                }
                out.push((
                    u,
                    Graded {
                        degree: k + x.degree,
                        coeffs: acc,
                    },
                ));
            }
        }
        out
    }

    /// Coefficient of `σ_v` in `x`.
    pub fn coefficient(&self, x: &Graded, v: usize) -> i128 {
        if self.group.length(v) != x.degree || x.coeffs.is_empty() {
            return 0;
        }
        x.coeffs[self.pos[v] as usize]
    }

    /// `∫ σ_{π_1} ⋯ σ_{π_s}`, by element index.
    pub fn intersection(&self, pis: &[usize]) -> Result<i128, OracleError> {
        let top = self.group.root_system().len();
        let total: usize = pis.iter().map(|&p| self.group.length(p)).sum();
        if total != top || pis.is_empty() {
            return Ok(0);
        }
        let mut order: Vec<usize> = pis.to_vec();
        order.sort_by_key(|&p| std::cmp::Reverse(self.group.length(p)));
        let (first, rest) = order.split_first().unwrap();
        if rest.is_empty() {
            return Ok(if *first == self.group.long_element() { 1 } else { 0 });
        }
        let (last, middle) = rest.split_last().unwrap();
        let mut x = self.class(*first);
        for &p in middle {
            x = self.multiply(p, &x);
        }
        // ∫ x σ_last = coefficient of σ_{w0 last} in x.
        let dual = self.group.mul(self.group.long_element(), *last);
        let c = self.coefficient(&x, dual);
        if c < 0 {
            return Err(OracleError::Negative(c));
        }
        Ok(c)
    }
}

//! Sparse multivariate polynomials with exact rational coefficients.

use num_rational::Ratio;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational used throughout the oracle.
pub type Q = Ratio<i128>;

pub type Mono = Vec<u8>;

/// A polynomial in `nvars` commuting variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: FxHashMap<Mono, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, k: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[k] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, Q::one());
        p
    }

    /// `Σ c_k x_k`.
    pub fn linear(coeffs: &[Q]) -> Poly {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[k] = 1;
            p.add_term(m, *c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Q)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector has the wrong length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    /// Terms sorted by exponent vector, for stable output.
    pub fn sorted_terms(&self) -> Vec<(Mono, Q)> {
        let mut v: Vec<(Mono, Q)> = self.terms.iter().map(|(m, c)| (m.clone(), *c)).collect();
        v.sort_by(|a, b| b.0.iter().sum::<u8>().cmp(&a.0.iter().sum::<u8>()).then_with(|| b.0.cmp(&a.0)));
        v
    }

    pub fn coefficient(&self, m: &[u8]) -> Q {
        self.terms.get(m).copied().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.iter().map(|&e| e as usize).sum::<usize>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), *v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, pt: &[Q]) -> Q {
        assert_eq!(pt.len(), self.nvars);
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= pt[k];
                }
            }
            s += t;
        }
        s
    }

    /// Replaces `x_k` by `±x_{map[k].0}` (a signed variable permutation).
    pub fn permute_signed(&self, map: &[(usize, bool)]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut nm = vec![0u8; self.nvars];
            let mut neg = false;
            for (k, &e) in m.iter().enumerate() {
                let (to, flip) = map[k];
                nm[to] += e;
                if flip && e % 2 == 1 {
                    neg = !neg;
                }
            }
            out.add_term(nm, if neg { -*c } else { *c });
        }
        out
    }

    /// Replaces `x_k` by the polynomial `images[k]`, all in `nvars_out` variables.
    pub fn substitute(&self, images: &[Poly], nvars_out: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(nvars_out);
        for (m, c) in self.sorted_terms() {
            let mut t = Poly::constant(nvars_out, c);
            for (k, &e) in m.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                if e > 0 {
                    t = &t * &powers[k][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn div_linear(&self, l: &[Q]) -> Option<Poly> {
        assert_eq!(l.len(), self.nvars);
        let j = l.iter().rposition(|c| !c.is_zero()).expect("division by the zero form");
        let a = l[j];
        let mut g = self.terms.clone();
        let mut q = Poly::zero(self.nvars);
        let top = g.keys().map(|m| m[j]).max().unwrap_or(0);
        for d in (1..=top).rev() {
            let level: Vec<(Mono, Q)> = g
                .iter()
                .filter(|(m, _)| m[j] == d)
                .map(|(m, c)| (m.clone(), *c))
                .collect();
            for (m, c) in level {
                g.remove(&m);
                let f = c / a;
                let mut qm = m;
                qm[j] -= 1;
                for (k, lk) in l.iter().enumerate() {
                    if k == j || lk.is_zero() {
                        continue;
                    }
                    let mut t = qm.clone();
                    t[k] += 1;
                    let v = g.get(&t).copied().unwrap_or_else(Q::zero) - f * lk;
                    if v.is_zero() {
                        g.remove(&t);
                    } else {
                        g.insert(t, v);
                    }
                }
                q.add_term(qm, f);
            }
        }
        if g.is_empty() {
            Some(q)
        } else {
            None
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), *c);
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -*c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, *ca * *cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < Q::zero();
            let c = if neg { -c } else { c };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.iter().all(|&e| e == 0);
            if !c.is_one() || is_const {
                write!(f, "{c}")?;
            }
            let mut first = c.is_one();
            for (k, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{}", k + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn arithmetic_and_division() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let l = [q(1), q(-1), q(0)];
        let f = &(&x.pow(2) - &y.pow(2)) * &z;
        let g = f.div_linear(&l).unwrap();
        assert_eq!(g, &(&x + &y) * &z);
        assert!(x.div_linear(&l).is_none());
        let h = &(&x * &y) + &Poly::constant(3, q(2));
        assert_eq!(h.eval(&[q(2), q(3), q(0)]), q(8));
        assert_eq!(h.degree(), Some(2));
        assert!(!h.is_homogeneous());
        assert_eq!(h.to_string(), "x1*x2 + 2");
    }

    #[test]
    fn substitution() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &x.pow(2) + &y;
        let sw = f.permute_signed(&[(1, true), (0, false)]);
        assert_eq!(sw, &y.pow(2) + &x);
        let g = f.substitute(&[&x + &y, x.clone()], 2);
        assert_eq!(g, &(&(&x.pow(2) + &(&x * &y).scale(q(2))) + &y.pow(2)) + &x);
    }
}

//! Borel presentation and divided differences.
//!
//! Each factor contributes one variable per ambient coordinate. A weight
//! `λ` becomes the linear form `-Σ λ_k x_k`, so in type A the simple root
//! `α_i` is `x_i - x_{i+1}` and the top class is `x_1^{n-1} ⋯ x_{n-1}`.

use super::poly::{Poly, Q};
use crate::root_system::{Family, RootSystem};
use crate::weyl::WeylElement;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone)]
enum Action {
    Signed(Vec<(usize, bool)>),
    General(Vec<Poly>),
}

/// Divided-difference operators and Schubert representatives for one root system.
#[derive(Debug)]
pub struct Bgg {
    rs: Arc<RootSystem>,
    nvars: usize,
    blocks: Vec<usize>,
    simple_forms: Vec<Vec<Q>>,
    actions: Vec<Action>,
    w0: WeylElement,
    top: Arc<Poly>,
    cache: Mutex<HashMap<WeylElement, Arc<Poly>>>,
}

impl Bgg {
    pub fn new(rs: Arc<RootSystem>) -> Bgg {
        let mut blocks = Vec::new();
        let mut nvars = 0;
        for f in rs.factors() {
            blocks.push(nvars);
            nvars += f.dim();
        }
        let r = WeylElement::simple_count(&rs);
        let mut simple_forms = Vec::with_capacity(r);
        let mut actions = Vec::with_capacity(r);
        for g in 0..r {
            let (c, i) = WeylElement::split_simple_index(&rs, g);
            let f = rs.factor(c);
            let alpha = f.root(f.simple(i));
            let mut form = vec![Q::zero(); nvars];
            for (k, &a) in alpha.iter().enumerate() {
                form[blocks[c] + k] = Q::from_integer(-(a as i128));
            }
            simple_forms.push(form);

            let s = WeylElement::simple_reflection(&rs, g);
            let mut images: Vec<Vec<i32>> = Vec::new();
            for k in 0..f.dim() {
                let mut e = vec![0; f.dim()];
                e[k] = 1;
                images.push(s.act_vector(c, &e));
            }
            let signed: Option<Vec<(usize, bool)>> = images
                .iter()
                .map(|img| {
                    let nz: Vec<usize> = (0..img.len()).filter(|&j| img[j] != 0).collect();
                    match nz.as_slice() {
                        [j] if img[*j].abs() == 1 => Some((blocks[c] + j, img[*j] < 0)),
                        _ => None,
                    }
                })
                .collect();
            let action = match signed {
                Some(local) => {
                    let mut map: Vec<(usize, bool)> = (0..nvars).map(|k| (k, false)).collect();
                    for (k, m) in local.into_iter().enumerate() {
                        map[blocks[c] + k] = m;
                    }
                    Action::Signed(map)
                }
                None => {
                    let mut polys: Vec<Poly> = (0..nvars).map(|k| Poly::var(nvars, k)).collect();
                    for (k, img) in images.iter().enumerate() {
                        let mut coeffs = vec![Q::zero(); nvars];
                        for (j, &v) in img.iter().enumerate() {
                            coeffs[blocks[c] + j] = Q::from_integer(v as i128);
                        }
                        polys[blocks[c] + k] = Poly::linear(&coeffs);
                    }
                    Action::General(polys)
                }
            };
            actions.push(action);
        }
        let w0 = WeylElement::long_element(&rs);
        let mut bgg = Bgg {
            rs: rs.clone(),
            nvars,
            blocks,
            simple_forms,
            actions,
            w0: w0.clone(),
            top: Arc::new(Poly::one(nvars)),
            cache: Mutex::new(HashMap::new()),
        };
        let mut top = Poly::one(nvars);
        let word = w0.reduced_word(&rs);
        let mut first_simple = 0;
        for (c, f) in rs.factors().iter().enumerate() {
            let local: Vec<usize> = word
                .iter()
                .copied()
                .filter(|&g| g >= first_simple && g < first_simple + f.rank())
                .collect();
            first_simple += f.rank();
            let t = if f.kind.family == Family::A {
                let n = f.dim();
                let mut m = vec![0u8; nvars];
                for k in 0..n {
                    m[bgg.blocks[c] + k] = (n - 1 - k) as u8;
                }
                Poly::from_terms(nvars, [(m, Q::one())])
            } else {
                let mut p = Poly::one(nvars);
                for id in rs.component_set(c).iter() {
                    p = &p * &Poly::linear(&bgg.form(c, &rs.root(id).vector));
                }
                let d = bgg.d_word(&local, &p).constant_term();
                p.scale(Q::one() / d)
            };
            top = &top * &t;
        }
        bgg.top = Arc::new(top);
        bgg.cache.lock().unwrap().insert(w0, bgg.top.clone());
        bgg
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// First variable of each component.
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Linear form of a weight given in component `c`'s coordinates.
    pub fn form(&self, c: usize, weight: &[i32]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.nvars];
        for (k, &a) in weight.iter().enumerate() {
            v[self.blocks[c] + k] = Q::from_integer(-(a as i128));
        }
        v
    }

    /// `s_g · f`.
    pub fn reflect(&self, g: usize, f: &Poly) -> Poly {
        match &self.actions[g] {
            Action::Signed(map) => f.permute_signed(map),
            Action::General(images) => f.substitute(images, self.nvars),
        }
    }

    /// `∂_g f = (f - s_g f) / α_g`.
    pub fn divided_difference(&self, g: usize, f: &Poly) -> Poly {
        let diff = f - &self.reflect(g, f);
        if diff.is_zero() {
            return diff;
        }
        diff.div_linear(&self.simple_forms[g])
            .expect("f - s f is divisible by the simple root")
    }

    /// `∂_{g_1} ⋯ ∂_{g_k} f`, applying `g_k` first.
    pub fn d_word(&self, word: &[usize], f: &Poly) -> Poly {
        let mut f = f.clone();
        for &g in word.iter().rev() {
            if f.is_zero() {
                break;
            }
            f = self.divided_difference(g, &f);
        }
        f
    }

    pub fn d_element(&self, w: &WeylElement, f: &Poly) -> Poly {
        self.d_word(&w.reduced_word(&self.rs), f)
    }

    /// Representative of the point class, `∂_{w0}` of which is 1.
    pub fn top_class(&self) -> &Poly {
        &self.top
    }

    /// `P_w = ∂_{w^{-1} w0} P_{w0}`.
    pub fn schubert(&self, w: &WeylElement) -> Arc<Poly> {
        if let Some(p) = self.cache.lock().unwrap().get(w) {
            return p.clone();
        }
        let r = WeylElement::simple_count(&self.rs);
        let mut chain: Vec<(WeylElement, usize)> = Vec::new();
        let mut cur = w.clone();
        let mut base = loop {
            if let Some(p) = self.cache.lock().unwrap().get(&cur) {
                break p.clone();
            }
            let g = (0..r)
                .find(|&g| !cur.has_right_descent(&self.rs, g))
                .expect("only w0 has no right ascent");
            let next = cur.compose(&WeylElement::simple_reflection(&self.rs, g));
            chain.push((cur, g));
            cur = next;
        };
        for (u, g) in chain.into_iter().rev() {
            let p = Arc::new(self.divided_difference(g, &base));
            self.cache.lock().unwrap().insert(u, p.clone());
            base = p;
        }
        base
    }

    /// Constant term of `∂_{w0} f`.
    pub fn integrate(&self, f: &Poly) -> Q {
        self.d_element(&self.w0, f).constant_term()
    }

    /// Coefficient of the Schubert class of `v` in `f`: constant term of `∂_v f`.
    pub fn coefficient(&self, f: &Poly, v: &WeylElement) -> Q {
        self.d_element(v, f).constant_term()
    }

    /// Product of Schubert representatives, integrated.
    pub fn intersection(&self, pis: &[WeylElement]) -> Q {
        let total: usize = pis.iter().map(|p| p.length(&self.rs)).sum();
        if total != self.rs.len() {
            return Q::zero();
        }
        let mut f = Poly::one(self.nvars);
        for p in pis {
            f = &f * &self.schubert(p);
        }
        self.integrate(&f)
    }

    /// Schubert expansion of a homogeneous class of degree `k`, via `∂_{s_a u} = ∂_a ∂_u`.
    pub fn expand(&self, f: &Poly) -> BTreeMap<WeylElement, Q> {
        let mut out = BTreeMap::new();
        let Some(k) = f.degree() else { return out };
        if k > self.rs.len() {
            return out;
        }
        let r = WeylElement::simple_count(&self.rs);
        let mut level: HashMap<WeylElement, Poly> = HashMap::new();
        level.insert(WeylElement::identity(&self.rs), f.clone());
        for len in 0..k {
            let mut next: HashMap<WeylElement, Poly> = HashMap::new();
            for (u, h) in &level {
                for a in 0..r {
                    let v = WeylElement::simple_reflection(&self.rs, a).compose(u);
                    if next.contains_key(&v) || v.length(&self.rs) != len + 1 {
                        continue;
                    }
                    let d = self.divided_difference(a, h);
                    if !d.is_zero() {
                        next.insert(v, d);
                    }
                }
            }
            level = next;
        }
        for (v, h) in level {
            let c = h.constant_term();
            if !c.is_zero() {
                out.insert(v, c);
            }
        }
        out
    }
}

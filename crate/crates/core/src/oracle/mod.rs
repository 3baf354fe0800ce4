//! Exact Schubert calculus at small rank.
//!
//! Two independent routes to the same numbers: polynomial representatives
//! with divided differences ([`bgg`]), and the Chevalley formula with
//! linear algebra over divisor words ([`ring`]).

pub mod bgg;
pub mod cache;
pub mod poly;
pub mod ring;

pub use bgg::Bgg;
pub use cache::{StructureTable, CACHE_ENV};
pub use poly::{Poly, Q};
pub use ring::{Graded, Ring};

use crate::embedding::Embedding;
use crate::root_system::RootSystem;
use crate::weyl::{GroupError, WeylElement};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("structure table needs |W| <= {max}, group has {0}", max = cache::MAX_TABLE_ORDER)]
    TableTooLarge(usize),
    #[error("methods disagree: ring gives {ring}, divided differences give {bgg}")]
    Disagreement { ring: String, bgg: String },
    #[error("negative coefficient {0}")]
    Negative(i128),
    #[error("coefficient {0} is not a nonnegative integer")]
    NotIntegral(String),
    #[error("embedding `{0}` has no weight restriction")]
    NoRestriction(String),
    #[error("element does not belong to {0}")]
    WrongGroup(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl OracleError {
    fn io(e: std::io::Error) -> OracleError {
        OracleError::Io(e.to_string())
    }

    /// Errors that mean the oracle contradicts itself.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            OracleError::Disagreement { .. } | OracleError::Negative(_) | OracleError::NotIntegral(_)
        )
    }
}

fn to_count(q: &Q) -> Result<u64, OracleError> {
    if !q.is_integer() || q.is_negative() {
        return Err(OracleError::NotIntegral(q.to_string()));
    }
    q.to_integer().to_u64().ok_or_else(|| OracleError::NotIntegral(q.to_string()))
}

/// A class expanded in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertVector {
    pub group: String,
    pub degree: usize,
    pub terms: BTreeMap<WeylElement, u64>,
}

impl SchubertVector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, v: &WeylElement) -> u64 {
        self.terms.get(v).copied().unwrap_or(0)
    }
}

impl Serialize for SchubertVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            element: String,
            coefficient: u64,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(w, &c)| Term {
                element: w.to_string(),
                coefficient: c,
            })
            .collect();
        let mut st = s.serialize_struct("SchubertVector", 4)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("zero", &self.is_zero())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for SchubertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}

/// `∫ ω_{π_1} ⋯ ω_{π_s}` over the flag variety, checked by both methods.
pub fn intersection_number(rs: &Arc<RootSystem>, pis: &[WeylElement]) -> Result<u64, OracleError> {
    let ring = Ring::new(rs.clone())?;
    let group = ring.group();
    let idx: Vec<usize> = pis
        .iter()
        .map(|p| group.index_of(p).ok_or_else(|| OracleError::WrongGroup(rs.spec().to_string())))
        .collect::<Result<_, _>>()?;
    let by_ring = ring.intersection(&idx)?;
    let by_bgg = Bgg::new(rs.clone()).intersection(pis);
    if Q::from_integer(by_ring) != by_bgg {
        return Err(OracleError::Disagreement {
            ring: by_ring.to_string(),
            bgg: by_bgg.to_string(),
        });
    }
    to_count(&by_bgg)
}

/// `∂_g f` in the Borel presentation of `rs`.
pub fn divided_difference(rs: &Arc<RootSystem>, g: usize, f: &Poly) -> Poly {
    Bgg::new(rs.clone()).divided_difference(g, f)
}

/// Pulls a target polynomial back along the weight restriction.
pub fn restrict(e: &Embedding, target: &Bgg, f: &Poly, source_vars: usize) -> Result<Poly, OracleError> {
    let res = e
        .restriction()
        .ok_or_else(|| OracleError::NoRestriction(e.spec().to_string()))?;
    assert_eq!(res.source_dim(), source_vars, "restriction lands in the source coordinates");
    let rs = e.target();
    let mut images = Vec::with_capacity(target.nvars());
    for (c, f) in rs.factors().iter().enumerate() {
        for k in 0..f.dim() {
            let img: Vec<Q> = res
                .basis_image(c, k)
                .iter()
                .map(|q| Q::new(*q.numer() as i128, *q.denom() as i128))
                .collect();
            images.push(Poly::linear(&img));
        }
    }
    Ok(f.substitute(&images, source_vars))
}

/// Expansion of the pullback of `ω_π` in the Schubert basis of the source.
pub fn branching_expand(e: &Embedding, pi: &WeylElement) -> Result<SchubertVector, OracleError> {
    let target = Bgg::new(e.target().clone());
    let source = Bgg::new(e.source().clone());
    branching_expand_with(e, &target, &source, pi)
}

/// [`branching_expand`] reusing prebuilt operators.
pub fn branching_expand_with(
    e: &Embedding,
    target: &Bgg,
    source: &Bgg,
    pi: &WeylElement,
) -> Result<SchubertVector, OracleError> {
    let degree = pi.length(e.target());
    let mut out = SchubertVector {
        group: e.source().spec().to_string(),
        degree,
        terms: BTreeMap::new(),
    };
    if e.restriction().is_none() {
        return Err(OracleError::NoRestriction(e.spec().to_string()));
    }
    if degree > e.source().len() {
        return Ok(out);
    }
    let f = restrict(e, target, &target.schubert(pi), source.nvars())?;
    for (v, c) in source.expand(&f) {
        if !c.is_zero() {
            out.terms.insert(v, to_count(&c)?);
        }
    }
    Ok(out)
}

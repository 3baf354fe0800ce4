//! Explicit enumeration of a finite Weyl group.

use super::WeylElement;
use crate::root_system::RootSystem;
use crate::rootset::RootSet;
use std::collections::HashMap;
use std::sync::Arc;

/// Largest group order the enumerator accepts.
pub const MAX_GROUP_ORDER: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("Weyl group of {spec} has order {order}, above the limit of {MAX_GROUP_ORDER}")]
    TooLarge { spec: String, order: u128 },
}

/// All elements of `W`, sorted by length, with multiplication by simple reflections.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    lengths: Vec<u32>,
    inversions: Vec<RootSet>,
    right: Vec<Vec<u32>>,
    by_length: Vec<Vec<usize>>,
    w0: usize,
}

/// Order of the Weyl group of a root system.
pub fn group_order(rs: &RootSystem) -> u128 {
    use crate::root_system::Family::*;
    rs.factors()
        .iter()
        .map(|f| {
            let n = f.rank() as u128;
            let fact = |k: u128| (1..=k).product::<u128>();
            match f.kind.family {
                A => fact(n + 1),
                B | C => fact(n) << n,
                D => fact(n) << (n - 1),
                G2 => 12,
            }
        })
        .product()
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Result<Self, GroupError> {
        let order = group_order(&rs);
        if order > MAX_GROUP_ORDER as u128 {
            return Err(GroupError::TooLarge {
                spec: rs.spec().to_string(),
                order,
            });
        }
        let r = WeylElement::simple_count(&rs);
        let simples: Vec<WeylElement> = (0..r).map(|g| WeylElement::simple_reflection(&rs, g)).collect();
        let e = WeylElement::identity(&rs);
        let mut elements = vec![e.clone()];
        let mut index = HashMap::new();
        index.insert(e, 0);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            for s in &simples {
                let ws = w.compose(s);
                if !index.contains_key(&ws) {
                    index.insert(ws.clone(), elements.len());
                    elements.push(ws);
                }
            }
            head += 1;
        }
        debug_assert_eq!(elements.len() as u128, order);
        let inversions: Vec<RootSet> = elements.iter().map(|w| w.inversion_set(&rs)).collect();
        let lengths: Vec<u32> = inversions.iter().map(|s| s.len() as u32).collect();
        let right = elements
            .iter()
            .map(|w| simples.iter().map(|s| index[&w.compose(s)] as u32).collect())
            .collect();
        let top = rs.len();
        let mut by_length = vec![Vec::new(); top + 1];
        for (i, &l) in lengths.iter().enumerate() {
            by_length[l as usize].push(i);
        }
        let w0 = by_length[top][0];
        Ok(WeylGroup {
            rs,
            elements,
            index,
            lengths,
            inversions,
            right,
            by_length,
            w0,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i] as usize
    }

    pub fn inversion_set(&self, i: usize) -> RootSet {
        self.inversions[i]
    }

    /// Index of `w_i · s_g`.
    pub fn right_mul_simple(&self, i: usize, g: usize) -> usize {
        self.right[i][g] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn long_element(&self) -> usize {
        self.w0
    }

    /// Indices of elements of length `l`.
    pub fn of_length(&self, l: usize) -> &[usize] {
        self.by_length.get(l).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn simple_count(&self) -> usize {
        self.right.first().map(|r| r.len()).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_lengths() {
        for (g, n) in [("A3", 24), ("B3", 48), ("D4", 192), ("G2", 12), ("A1xG2", 24)] {
            let rs = Arc::new(RootSystem::parse(g).unwrap());
            let w = WeylGroup::new(rs.clone()).unwrap();
            assert_eq!(w.order(), n);
            assert_eq!(w.length(w.long_element()), rs.len());
            assert_eq!(w.element(w.long_element()), &WeylElement::long_element(&rs));
        }
        assert!(WeylGroup::new(Arc::new(RootSystem::parse("A8").unwrap())).is_err());
    }
}

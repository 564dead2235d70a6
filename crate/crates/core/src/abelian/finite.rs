//! Element-level arithmetic in finite abelian groups given by cyclic
//! coordinates, for the brute-force oracles and complement verification.

use alloc::collections::BTreeSet;
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{AbError, AbGroup};

/// A finite group as a tuple space: element index <-> coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    moduli: Vec<u64>,
    order: u64,
}

impl FiniteGroup {
    /// Builds the coordinate space for a finite group, refusing anything
    /// larger than `cap` elements.
    pub fn new(g: &AbGroup, cap: u64) -> Result<Self, AbError> {
        if !g.is_finite() {
            return Err(AbError::NotFinite);
        }
        let order_big = g.order().expect("finite group has an order");
        if order_big > BigInt::from(cap) {
            return Err(AbError::TooLarge {
                order: order_big,
                cap,
            });
        }
        let moduli: Vec<u64> = g
            .invariant_factors()
            .iter()
            .map(|m| m.to_u64().expect("modulus fits u64 under the cap"))
            .collect();
        let order = moduli.iter().product::<u64>().max(1);
        Ok(FiniteGroup { moduli, order })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> usize {
        self.moduli.len()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }

    pub fn element(&self, mut index: u64) -> Vec<u64> {
        let mut e = self.zero();
        for (i, &m) in self.moduli.iter().enumerate() {
            e[i] = index % m;
            index /= m;
        }
        e
    }

    pub fn index_of(&self, e: &[u64]) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.moduli.len()).rev() {
            idx = idx * self.moduli[i] + e[i] % self.moduli[i];
        }
        idx
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (a[i] + b[i]) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (m - a[i] % m) % m)
            .collect()
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| ((k as u128 * a[i] as u128) % m as u128) as u64)
            .collect()
    }

    /// Reduces possibly out-of-range or signed coordinates into the group.
    pub fn reduce_signed(&self, a: &[BigInt]) -> Vec<u64> {
        use num_integer::Integer;
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                a[i].mod_floor(&BigInt::from(m))
                    .to_u64()
                    .expect("reduced coordinate fits")
            })
            .collect()
    }

    pub fn order_of(&self, a: &[u64]) -> u64 {
        // lcm of the coordinate orders m_i / gcd(m_i, a_i).
        let mut ord = 1u64;
        for (i, &m) in self.moduli.iter().enumerate() {
            let g = num_integer::Integer::gcd(&m, &a[i]);
            ord = num_integer::Integer::lcm(&ord, &(m / g));
        }
        ord
    }

    /// All element indices of the subgroup generated by the given elements.
    pub fn subgroup_closure(&self, gens: &[Vec<u64>]) -> BTreeSet<u64> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        seen.insert(self.index_of(&self.zero()));
        let mut frontier: Vec<Vec<u64>> = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let next = self.add(&x, g);
                let idx = self.index_of(&next);
                if seen.insert(idx) {
                    frontier.push(next);
                }
            }
        }
        seen
    }

    /// Indices of k*x for every x in the group (the image subgroup k*G).
    pub fn multiple_image(&self, k: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for idx in 0..self.order {
            let e = self.element(idx);
            out.insert(self.index_of(&self.scale(k, &e)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let g = FiniteGroup::new(&AbGroup::finite_i64(&[4, 6]), 1 << 12).unwrap();
        for idx in 0..g.order() {
            assert_eq!(g.index_of(&g.element(idx)), idx);
        }
    }

    #[test]
    fn closure_of_generator() {
        // In Z/2 + Z/12 coordinates... use Z/4+Z/2-like group directly.
        let g = FiniteGroup::new(&AbGroup::finite_i64(&[2, 12]), 1 << 12).unwrap();
        let sub = g.subgroup_closure(&[vec![1, 0]]);
        assert_eq!(sub.len(), 2);
        let whole = g.subgroup_closure(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(whole.len(), 24);
    }

    #[test]
    fn element_orders() {
        let g = FiniteGroup::new(&AbGroup::finite_i64(&[2, 12]), 1 << 12).unwrap();
        assert_eq!(g.order_of(&[1, 0]), 2);
        assert_eq!(g.order_of(&[1, 1]), 12);
        assert_eq!(g.order_of(&[0, 4]), 3);
    }

    #[test]
    fn doubling_image() {
        let g = FiniteGroup::new(&AbGroup::finite_i64(&[4]), 1 << 12).unwrap();
        let img = g.multiple_image(2);
        assert_eq!(img.len(), 2); // {0, 2}
    }
}

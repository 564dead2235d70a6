//! Homomorphisms between finitely generated members of the group class,
//! the multiplicative index z(f) = [Ker f]/[Coker f], and cyclic
//! decompositions of presented groups.

use alloc::format;
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::finite::FiniteGroup;
use super::snf::{kernel_basis, smith_normal_form, solve, IntMat};
use super::{AbError, AbGroup};

/// Relation matrix of the finitely generated part: one column m_j * e_j per
/// torsion coordinate.
pub fn relation_matrix(g: &AbGroup) -> IntMat {
    let s = g.fg_coords();
    let k = g.invariant_factors().len();
    let a = g.free_rank() as usize;
    let mut rel = IntMat::zero(s, k);
    for (j, m) in g.invariant_factors().iter().enumerate() {
        rel.set(a + j, j, m.clone());
    }
    rel
}

/// A homomorphism between finitely generated groups: columns are images of
/// the source coordinates, expressed in target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: AbGroup,
    target: AbGroup,
    matrix: IntMat,
}

impl GroupHom {
    pub fn new(source: AbGroup, target: AbGroup, matrix: IntMat) -> Result<Self, AbError> {
        if !source.is_finitely_generated() || !target.is_finitely_generated() {
            return Err(AbError::NotFinitelyGenerated);
        }
        let s = source.fg_coords();
        let t = target.fg_coords();
        if matrix.rows() != t || matrix.cols() != s {
            return Err(AbError::DimensionMismatch {
                expected: (t, s),
                got: (matrix.rows(), matrix.cols()),
            });
        }
        // Well-definedness: the order of each source coordinate must kill
        // its image.
        for j in 0..s {
            let m_j = source.coord_order(j);
            if m_j.is_zero() {
                continue;
            }
            for i in 0..t {
                let n_i = target.coord_order(i);
                let v = &m_j * matrix.get(i, j);
                let ok = if n_i.is_zero() {
                    v.is_zero()
                } else {
                    (v % &n_i).is_zero()
                };
                if !ok {
                    return Err(AbError::InvalidHom(format!(
                        "order {} of source coordinate {} does not kill the image entry at \
                         target coordinate {}",
                        m_j, j, i
                    )));
                }
            }
        }
        // Canonical form: reduce entries modulo the target torsion.
        let mut reduced = matrix;
        for i in 0..t {
            let n_i = target.coord_order(i);
            if n_i.is_zero() {
                continue;
            }
            for j in 0..s {
                let v = num_integer::Integer::mod_floor(reduced.get(i, j), &n_i);
                reduced.set(i, j, v);
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn source(&self) -> &AbGroup {
        &self.source
    }

    pub fn target(&self) -> &AbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    /// Order of the cokernel, None when infinite.
    pub fn coker_order(&self) -> Option<BigInt> {
        let b = relation_matrix(&self.target);
        let pres = self.matrix.hcat(&b);
        let snf = smith_normal_form(&pres);
        if snf.rank() < self.target.fg_coords() {
            return None;
        }
        Some(
            snf.invariant_factors()
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Order of the kernel, None when infinite.
    pub fn ker_order(&self) -> Option<BigInt> {
        let s = self.source.fg_coords();
        let a = relation_matrix(&self.source);
        let b = relation_matrix(&self.target);
        // Lattice of source lifts mapping into the target relations.
        let neg_b = {
            let mut m = IntMat::zero(b.rows(), b.cols());
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(i, j, -b.get(i, j));
                }
            }
            m
        };
        let stacked = self.matrix.hcat(&neg_b);
        let k = kernel_basis(&stacked);
        // Projection to the source coordinates generates the lift lattice.
        let mut p = IntMat::zero(s, k.cols());
        for i in 0..s {
            for j in 0..k.cols() {
                p.set(i, j, k.get(i, j).clone());
            }
        }
        // Ker(f) = L / im(A): present by the full preimage of im(A) in the
        // generator coordinates of L.
        if p.cols() == 0 {
            // Trivial lift lattice: the kernel is trivial.
            return Some(BigInt::one());
        }
        let c = solve(&p, &a).expect("relation columns lie in the lift lattice");
        let relations = kernel_basis(&p).hcat(&c);
        let snf = smith_normal_form(&relations);
        if snf.rank() < p.cols() {
            return None;
        }
        Some(
            snf.invariant_factors()
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }
}

/// z(f) = [Ker f] / [Coker f]; requires both finite.
pub fn z_value(f: &GroupHom) -> Result<BigRational, AbError> {
    let ker = f.ker_order().ok_or(AbError::NotFinite)?;
    let coker = f.coker_order().ok_or(AbError::NotFinite)?;
    Ok(BigRational::new(ker, coker))
}

/// Brute-force oracle for z(f) on finite groups: enumerate every element,
/// count the kernel, measure the image.
pub fn z_value_brute_force(f: &GroupHom, cap: u64) -> Result<BigRational, AbError> {
    let src = FiniteGroup::new(&f.source, cap)?;
    let tgt = FiniteGroup::new(&f.target, cap)?;
    let mut kernel = 0u64;
    let mut image = alloc::collections::BTreeSet::new();
    for idx in 0..src.order() {
        let x = src.element(idx);
        let y = apply(f, &tgt, &x);
        let y_idx = tgt.index_of(&y);
        if y_idx == tgt.index_of(&tgt.zero()) {
            kernel += 1;
        }
        image.insert(y_idx);
    }
    let coker = tgt.order() / image.len() as u64;
    Ok(BigRational::new(BigInt::from(kernel), BigInt::from(coker)))
}

fn apply(f: &GroupHom, tgt: &FiniteGroup, x: &[u64]) -> Vec<u64> {
    let t = f.target.fg_coords();
    let s = f.source.fg_coords();
    let mut out = vec![BigInt::zero(); t];
    for i in 0..t {
        for j in 0..s {
            out[i] += f.matrix.get(i, j) * BigInt::from(x[j]);
        }
    }
    tgt.reduce_signed(&out)
}

/// Invariant factors of the finite group Z^rows / (column span); the input
/// must present a finite group.
pub fn cyclic_decomposition(relations: &IntMat) -> Result<Vec<BigInt>, AbError> {
    let snf = smith_normal_form(relations);
    if snf.rank() < relations.rows() {
        return Err(AbError::NotFinite);
    }
    Ok(snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

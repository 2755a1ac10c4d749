//! Tangent weights at the fixed points and what they say about the local
//! shape of the orbit space.
//!
//! At a diagonal fixed point the torus acts on the slot `(i, j)` of the
//! staircase through the character `e_i - e_j`, so the weight list depends
//! only on `h`, not on which permutation of the spectrum sits on the
//! diagonal. With `N` weights in a lattice of rank `n - 1` and complexity
//! one, there is a single primitive integer relation `sum c_t a_t = 0`. If
//! `m` of its coefficients are nonzero, the fixed point's image has a
//! neighbourhood `R^{m+1} x R>=^{N-m}` in the orbit space; `m = N` means
//! the weights are in general position and the point is interior.

use std::fmt;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::hessenberg::HFun;
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight {coords:?} does not have coordinate sum zero")]
    NonZeroSum { coords: Vec<i64> },
    #[error("weights have mixed lengths {expected} and {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weights span a lattice of rank {rank}, less than the torus rank {torus_rank}")]
    RankDeficientAmbient { rank: usize, torus_rank: usize },
    #[error("integer kernel of the weight matrix has rank {rank}, expected 1")]
    KernelRankError { rank: usize },
    #[error("relation coefficient does not fit in 64 bits")]
    Overflow,
    #[error("fixed-point classification needs complexity 1, got {complexity}")]
    UnsupportedComplexity { complexity: i64 },
    #[error(
        "fixed-point classification needs an irreducible Hessenberg function, {h} is reducible"
    )]
    Reducible { h: HFun },
}

impl WeightError {
    pub fn code(&self) -> &'static str {
        match self {
            WeightError::NonZeroSum { .. } => "non_zero_sum",
            WeightError::LengthMismatch { .. } => "length_mismatch",
            WeightError::RankDeficientAmbient { .. } => "rank_deficient_ambient",
            WeightError::KernelRankError { .. } => "kernel_rank",
            WeightError::Overflow => "overflow",
            WeightError::UnsupportedComplexity { .. } => "unsupported_complexity",
            WeightError::Reducible { .. } => "reducible",
        }
    }
}

/// A character of `T^n` that is trivial on the diagonal circle, i.e. an
/// integer vector with coordinate sum zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVec(Vec<i64>);

impl WeightVec {
    pub fn new(coords: Vec<i64>) -> Result<Self, WeightError> {
        if coords.iter().sum::<i64>() != 0 {
            return Err(WeightError::NonZeroSum { coords });
        }
        Ok(WeightVec(coords))
    }

    /// `e_i - e_j` in `Z^n` (1-based indices).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        assert!(
            i >= 1 && j >= 1 && i <= n && j <= n,
            "root index out of range"
        );
        let mut v = vec![0; n];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        WeightVec(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, k: i64) -> Self {
        WeightVec(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Debug for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// One weight per staircase slot `(i, j)`, in lexicographic order.
pub fn tangent_weights(h: &HFun) -> Vec<WeightVec> {
    h.support()
        .iter()
        .map(|(i, j)| WeightVec::root(h.n(), i, j))
        .collect()
}

fn weight_matrix(vs: &[&WeightVec]) -> Result<IntMatrix, WeightError> {
    let dim = vs.first().map_or(0, |v| v.dim());
    if let Some(bad) = vs.iter().find(|v| v.dim() != dim) {
        return Err(WeightError::LengthMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let cols: Vec<&[i64]> = vs.iter().map(|v| v.coords()).collect();
    Ok(IntMatrix::from_columns(dim, &cols))
}

/// True iff every `torus_rank` of the weights are linearly independent.
pub fn is_general_position(vs: &[WeightVec], torus_rank: usize) -> Result<bool, WeightError> {
    let all: Vec<&WeightVec> = vs.iter().collect();
    let rank = weight_matrix(&all)?.rank();
    if rank < torus_rank {
        return Err(WeightError::RankDeficientAmbient { rank, torus_rank });
    }
    for subset in vs.iter().combinations(torus_rank) {
        if weight_matrix(&subset)?.rank() < torus_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The local corner `R^{m+1} x R>=^{N-m}` attached to a primitive relation
/// among `N` weights with `m` nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSignature {
    relation: Vec<i64>,
}

impl CornerSignature {
    /// Relation coefficients, one per weight; primitive, with the first
    /// nonzero entry positive.
    pub fn relation(&self) -> &[i64] {
        &self.relation
    }

    /// Number of nonzero coefficients.
    pub fn m(&self) -> usize {
        self.relation.iter().filter(|&&c| c != 0).count()
    }

    pub fn weight_count(&self) -> usize {
        self.relation.len()
    }

    pub fn free_dim(&self) -> usize {
        self.m() + 1
    }

    pub fn corner_dim(&self) -> usize {
        self.weight_count() - self.m()
    }

    /// Indices of the weights taking part in the relation.
    pub fn support(&self) -> Vec<usize> {
        self.relation
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, _)| t)
            .collect()
    }

    /// Interior points have no half-space factor.
    pub fn is_boundary(&self) -> bool {
        self.corner_dim() > 0
    }
}

impl fmt::Display for CornerSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{} x R>=^{}", self.free_dim(), self.corner_dim())
    }
}

impl Serialize for CornerSignature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            relation: &'a [i64],
            m: usize,
            free_dim: usize,
            corner_dim: usize,
            corner: String,
        }
        Repr {
            relation: &self.relation,
            m: self.m(),
            free_dim: self.free_dim(),
            corner_dim: self.corner_dim(),
            corner: self.to_string(),
        }
        .serialize(s)
    }
}

/// The primitive integer relation among the weights, which must be unique
/// up to sign.
pub fn primitive_relation(vs: &[WeightVec]) -> Result<CornerSignature, WeightError> {
    let all: Vec<&WeightVec> = vs.iter().collect();
    let kernel = weight_matrix(&all)?.integer_kernel();
    if kernel.len() != 1 {
        return Err(WeightError::KernelRankError { rank: kernel.len() });
    }
    let relation = kernel[0]
        .iter()
        .map(|c| c.to_i64().ok_or(WeightError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CornerSignature { relation })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FixedPointKind {
    Interior,
    Boundary { signature: CornerSignature },
}

/// Classification of every fixed point of a complexity-one action.
///
/// All `n!` fixed points share the same weight list, so one verdict covers
/// them all; `uniform` records that explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointClassification {
    pub kind: FixedPointKind,
    pub fixed_points: u64,
    pub uniform: bool,
    pub general_position: bool,
}

pub fn classify_fixed_point(h: &HFun) -> Result<FixedPointClassification, WeightError> {
    if !h.is_irreducible() {
        return Err(WeightError::Reducible { h: h.clone() });
    }
    if h.complexity() != 1 {
        return Err(WeightError::UnsupportedComplexity {
            complexity: h.complexity(),
        });
    }
    let ws = tangent_weights(h);
    let general_position = is_general_position(&ws, h.n() - 1)?;
    let kind = if general_position {
        FixedPointKind::Interior
    } else {
        let signature = primitive_relation(&ws)?;
        debug_assert!(signature.m() >= 3);
        FixedPointKind::Boundary { signature }
    };
    Ok(FixedPointClassification {
        kind,
        fixed_points: (1..=h.n() as u64).product(),
        uniform: true,
        general_position,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(values: &[usize]) -> HFun {
        HFun::new(values).unwrap()
    }

    fn w(c: &[i64]) -> WeightVec {
        WeightVec::new(c.to_vec()).unwrap()
    }

    #[test]
    fn weights_of_3344() {
        let ws = tangent_weights(&h(&[3, 3, 4, 4]));
        assert_eq!(
            ws,
            vec![
                w(&[1, -1, 0, 0]),
                w(&[1, 0, -1, 0]),
                w(&[0, 1, -1, 0]),
                w(&[0, 0, 1, -1])
            ]
        );
        assert_eq!(tangent_weights(&h(&[2, 2])), vec![w(&[1, -1])]);
    }

    #[test]
    fn rejects_nonzero_sum() {
        assert!(matches!(
            WeightVec::new(vec![1, 0]),
            Err(WeightError::NonZeroSum { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        let fl3 = vec![w(&[1, -1, 0]), w(&[1, 0, -1]), w(&[0, 1, -1])];
        assert_eq!(is_general_position(&fl3, 2), Ok(true));
        let ws = tangent_weights(&h(&[3, 3, 4, 4]));
        assert_eq!(is_general_position(&ws, 3), Ok(false));
        let ws = tangent_weights(&h(&[2, 3, 4, 4]));
        assert_eq!(is_general_position(&ws, 3), Ok(true));
    }

    #[test]
    fn rank_deficient_ambient() {
        let ws = tangent_weights(&h(&[2, 2, 3]));
        assert_eq!(
            is_general_position(&ws, 2),
            Err(WeightError::RankDeficientAmbient {
                rank: 1,
                torus_rank: 2
            })
        );
    }

    #[test]
    fn relation_of_3344() {
        let sig = primitive_relation(&tangent_weights(&h(&[3, 3, 4, 4]))).unwrap();
        assert_eq!(sig.relation(), &[1, -1, 1, 0]);
        assert_eq!(sig.m(), 3);
        assert_eq!(sig.to_string(), "R^4 x R>=^1");
    }

    #[test]
    fn transitivity_relation() {
        let vs = vec![w(&[1, -1, 0]), w(&[0, 1, -1]), w(&[1, 0, -1])];
        let sig = primitive_relation(&vs).unwrap();
        assert_eq!(sig.relation(), &[1, 1, -1]);
        assert!(!sig.is_boundary());
    }

    #[test]
    fn kernel_rank_error() {
        let ws = tangent_weights(&HFun::full(4));
        assert_eq!(
            primitive_relation(&ws),
            Err(WeightError::KernelRankError { rank: 3 })
        );
    }

    #[test]
    fn classification() {
        let c = classify_fixed_point(&h(&[3, 3, 3])).unwrap();
        assert_eq!(c.kind, FixedPointKind::Interior);
        assert_eq!(c.fixed_points, 6);

        let c = classify_fixed_point(&h(&[3, 3, 4, 4])).unwrap();
        match c.kind {
            FixedPointKind::Boundary { signature } => {
                assert_eq!(signature.to_string(), "R^4 x R>=^1")
            }
            other => panic!("expected boundary, got {other:?}"),
        }

        assert!(matches!(
            classify_fixed_point(&h(&[2, 3, 4, 4])),
            Err(WeightError::UnsupportedComplexity { complexity: 0 })
        ));
        assert!(matches!(
            classify_fixed_point(&h(&[2, 2, 4, 4])),
            Err(WeightError::Reducible { .. })
        ));
    }

    #[test]
    fn signature_json() {
        let sig = primitive_relation(&tangent_weights(&h(&[3, 3, 4, 4]))).unwrap();
        let v = serde_json::to_value(&sig).unwrap();
        assert_eq!(v["m"], 3);
        assert_eq!(v["corner"], "R^4 x R>=^1");
    }
}

//! Integral simplicial homology through Smith normal form.
//!
//! `H_q = Z^{b_q} ⊕ ⊕ Z/d` where `b_q = #q-simplices - rank ∂_q - rank ∂_{q+1}`
//! and the `d` are the invariant factors of `∂_{q+1}` larger than one.

mod complex;
mod snf;

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use complex::SimplicialComplex;
pub use snf::{smith_normal_form, snf_rank};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("simplex {simplex:?} is missing its face {missing_face:?}")]
    NotAComplex {
        simplex: Vec<usize>,
        missing_face: Vec<usize>,
    },
    #[error("simplex {0:?} is empty or repeats a vertex")]
    MalformedSimplex(Vec<usize>),
    #[error("invalid complex JSON: {0}")]
    Json(String),
}

/// One homology group `Z^free_rank ⊕ Z/t_1 ⊕ Z/t_2 ⊕ ...`, with
/// `t_1 | t_2 | ...` and every `t_k > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    /// `0`, `Z`, `Z^6`, `Z^2 + Z/2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) fn serialize_torsion<S: Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    // numbers when they fit, decimal strings otherwise
    s.collect_seq(t.iter().map(|x| match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }))
}

/// Homology groups in degrees `0..=dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomologyGroups {
    degrees: Vec<HomologyGroup>,
}

impl HomologyGroups {
    /// The group in degree `q`; trivial above the top degree.
    pub fn get(&self, q: usize) -> HomologyGroup {
        self.degrees.get(q).cloned().unwrap_or_default()
    }

    pub fn degrees(&self) -> &[HomologyGroup] {
        &self.degrees
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.free_rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(q, g)| {
                if q % 2 == 0 {
                    g.free_rank as i64
                } else {
                    -(g.free_rank as i64)
                }
            })
            .sum()
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .degrees
            .iter()
            .enumerate()
            .map(|(q, g)| format!("H_{q} = {g}"));
        write!(f, "{}", parts.format(", "))
    }
}

/// Integral homology of `complex` in degrees `0..=dim`.
pub fn homology(complex: &SimplicialComplex) -> HomologyGroups {
    let Some(dim) = complex.dim() else {
        return HomologyGroups::default();
    };
    // invariant factors of ∂_q for q = 0..=dim+1
    let factors: Vec<Vec<BigInt>> = (0..=dim + 1)
        .map(|q| smith_normal_form(&complex.boundary(q)))
        .collect();
    let degrees = (0..=dim)
        .map(|q| {
            let free_rank = complex.count(q) - factors[q].len() - factors[q + 1].len();
            let torsion = factors[q + 1]
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect();
            HomologyGroup { free_rank, torsion }
        })
        .collect();
    HomologyGroups { degrees }
}

/// Reduced homology: `H̃_0` has rank one less than `H_0` for a nonempty
/// complex. The empty complex has all groups trivial in degrees `>= 0`.
pub fn reduced_homology(complex: &SimplicialComplex) -> HomologyGroups {
    let mut h = homology(complex);
    if let Some(h0) = h.degrees.first_mut() {
        h0.free_rank -= 1;
    }
    h
}

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use super::HomologyError;
use crate::linalg::IntMatrix;

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// Simplices are stored as strictly increasing vertex lists, grouped by
/// dimension and sorted lexicographically inside each dimension. The global
/// vertex order fixes the orientation used by the boundary maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            simplices: Vec::new(),
        }
    }

    /// Builds a complex from an explicit list of simplices, which must
    /// already be closed under taking faces.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self, HomologyError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let set = normalize(simplices)?;
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face = drop_index(s, skip);
                if !set.contains(&face) {
                    return Err(HomologyError::NotAComplex {
                        simplex: s.clone(),
                        missing_face: face,
                    });
                }
            }
        }
        Ok(Self::from_closed_set(set))
    }

    /// The smallest complex containing the given simplices.
    pub fn closure<I, S>(generators: I) -> Result<Self, HomologyError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let gens = normalize(generators)?;
        let mut set = BTreeSet::new();
        for g in gens {
            for k in 1..=g.len() {
                for face in g.iter().copied().combinations(k) {
                    set.insert(face);
                }
            }
        }
        Ok(Self::from_closed_set(set))
    }

    /// Parses a JSON list of simplices, e.g. `[[0],[1],[0,1]]`. Vertex
    /// labels may be arbitrary integers; they are renumbered in increasing
    /// order. The list must be closed under faces.
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        let raw: Vec<Vec<i64>> =
            serde_json::from_str(text).map_err(|e| HomologyError::Json(e.to_string()))?;
        let labels: BTreeSet<i64> = raw.iter().flatten().copied().collect();
        let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
        let simplices: Vec<Vec<usize>> = raw
            .iter()
            .map(|s| s.iter().map(|l| index[l]).collect())
            .collect();
        Self::from_simplices(simplices)
    }

    fn from_closed_set(set: BTreeSet<Vec<usize>>) -> Self {
        let vertex_count = set
            .iter()
            .flat_map(|s| s.iter())
            .max()
            .map_or(0, |&v| v + 1);
        let mut by_dim: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for s in set {
            by_dim.entry(s.len() - 1).or_default().push(s);
        }
        let top = by_dim.keys().next_back().map_or(0, |&d| d + 1);
        let simplices = (0..top)
            .map(|d| by_dim.remove(&d).unwrap_or_default())
            .collect();
        SimplicialComplex {
            vertex_count,
            simplices,
        }
    }

    /// Number of vertex labels, including labels that carry no simplex.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// The `q`-simplices.
    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, s)| {
                if q % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let set: BTreeSet<Vec<usize>> = self
            .simplices
            .iter()
            .flatten()
            .map(|s| s.iter().map(|&v| perm[v]).sorted().collect())
            .collect();
        Self::from_closed_set(set)
    }

    /// `∂_q` for `q = 1..=dim`: rows index `(q-1)`-simplices, columns
    /// `q`-simplices, entries `(-1)^k` for the face missing the `k`-th vertex.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        (1..self.simplices.len())
            .map(|q| self.boundary(q))
            .collect()
    }

    /// The boundary map `∂_q`; a zero matrix with the right shape when
    /// `q = 0` or `q > dim`.
    pub fn boundary(&self, q: usize) -> IntMatrix {
        let cols = self.simplices(q);
        if q == 0 {
            return IntMatrix::zeros(0, cols.len());
        }
        let rows = self.simplices(q - 1);
        let index: HashMap<&[usize], usize> = rows
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_slice(), k))
            .collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (c, s) in cols.iter().enumerate() {
            for skip in 0..s.len() {
                let face = drop_index(s, skip);
                let r = index[face.as_slice()];
                m[(r, c)] = BigInt::from(if skip % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// All simplices, each as a vertex list.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().flatten()
    }
}

fn normalize<I, S>(simplices: I) -> Result<BTreeSet<Vec<usize>>, HomologyError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[usize]>,
{
    let mut set = BTreeSet::new();
    for s in simplices {
        let mut v = s.as_ref().to_vec();
        v.sort_unstable();
        let before = v.len();
        v.dedup();
        if v.is_empty() || v.len() != before {
            return Err(HomologyError::MalformedSimplex(s.as_ref().to_vec()));
        }
        set.insert(v);
    }
    Ok(set)
}

fn drop_index(s: &[usize], k: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &v)| v)
        .collect()
}

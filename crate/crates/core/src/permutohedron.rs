//! The permutohedron `Pe^{n-1}`, the moment polytope of every staircase
//! manifold of size `n`.
//!
//! Vertices are permutations `σ`; the vertex `σ` has `λ_i` in coordinate `σ(i)`.
//! A facet is the locus where the top `k x k` block splits off, and is named
//! by the set `S` of eigenvalue indices in that block; its color is `|S|`.
//! Two facets meet iff their sets are nested, and a family of facets has a
//! common face iff it is a chain under inclusion.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported `n`; facets are stored as bit masks.
pub const MAX_N: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("{0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<usize>),
    #[error("spectrum repeats the eigenvalue {0}")]
    RepeatedEigenvalue(Rational64),
    #[error("spectrum has {found} eigenvalues, expected {expected}")]
    SpectrumLength { expected: usize, found: usize },
    #[error("facet set {members:?} is not a proper nonempty subset of 1..={n}")]
    InvalidFacet { n: usize, members: Vec<usize> },
    #[error("size {0} is outside the supported range 1..=63")]
    UnsupportedSize(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

impl PolytopeError {
    pub fn code(&self) -> &'static str {
        match self {
            PolytopeError::NotAPermutation(_) => "not_a_permutation",
            PolytopeError::RepeatedEigenvalue(_) => "repeated_eigenvalue",
            PolytopeError::SpectrumLength { .. } => "spectrum_length",
            PolytopeError::InvalidFacet { .. } => "invalid_facet",
            PolytopeError::UnsupportedSize(_) => "unsupported_size",
            PolytopeError::Parse(_) => "parse",
        }
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, PolytopeError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(PolytopeError::NotAPermutation(word));
            }
            seen[v] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n).permutations(n).map(Permutation).collect()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// Exchanges the values in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut w = self.0.clone();
        w.swap(i - 1, j - 1);
        Permutation(w)
    }

    /// `{σ(1), ..., σ(k)}` as a bit mask.
    fn prefix_mask(&self, k: usize) -> u64 {
        self.0[..k].iter().fold(0, |m, &v| m | (1 << (v - 1)))
    }
}

impl fmt::Display for Permutation {
    /// Concatenated digits for `n <= 9`, dash-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "-" };
        write!(f, "{}", self.0.iter().join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = PolytopeError;

    /// `1324`, `1,3,2,4` or `1-3-2-4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parse_err = || PolytopeError::Parse(s.to_string());
        let word = if s.contains([',', '-']) {
            s.split([',', '-'])
                .map(|t| t.trim().parse().map_err(|_| parse_err()))
                .collect::<Result<Vec<usize>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(parse_err))
                .collect::<Result<Vec<usize>, _>>()?
        };
        Permutation::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A simple spectrum: `n` pairwise distinct rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum(Vec<Rational64>);

impl Spectrum {
    pub fn new(values: Vec<Rational64>) -> Result<Self, PolytopeError> {
        for (a, b) in values.iter().tuple_combinations() {
            if a == b {
                return Err(PolytopeError::RepeatedEigenvalue(*a));
            }
        }
        Ok(Spectrum(values))
    }

    /// `λ = (1, 2, ..., n)`.
    pub fn standard(n: usize) -> Self {
        Spectrum((1..=n as i64).map(Rational64::from_integer).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational64] {
        &self.0
    }

    /// `λ_i` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> Rational64 {
        self.0[i - 1]
    }

    pub fn check_len(&self, n: usize) -> Result<(), PolytopeError> {
        if self.n() != n {
            return Err(PolytopeError::SpectrumLength {
                expected: n,
                found: self.n(),
            });
        }
        Ok(())
    }
}

impl FromStr for Spectrum {
    type Err = PolytopeError;

    /// Comma-separated integers or fractions, e.g. `1,2,7/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Rational64>()
                    .map_err(|_| PolytopeError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Spectrum::new(values)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// The moment-map image of the fixed point `diag(λ_σ(1), ..., λ_σ(n))`:
/// coordinate `σ(i)` carries `λ_i`.
///
/// With this placement a facet `S` is the hyperplane section
/// `sum_{s in S} x_s = λ_1 + ... + λ_|S|`, and swapping the values in
/// positions `i` and `i + 1` of `σ` moves along an edge of the polytope
/// (for increasing `λ`).
pub fn vertex_coordinates(sigma: &Permutation, lambda: &Spectrum) -> Vec<Rational64> {
    assert_eq!(
        sigma.n(),
        lambda.n(),
        "permutation and spectrum sizes differ"
    );
    let mut x = vec![Rational64::zero(); sigma.n()];
    for (i, &v) in sigma.word().iter().enumerate() {
        x[v - 1] = lambda.at(i + 1);
    }
    x
}

/// A facet of `Pe^{n-1}`, named by the eigenvalue indices of its top block.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FacetId {
    n: usize,
    mask: u64,
}

impl FacetId {
    pub fn new(n: usize, members: &[usize]) -> Result<Self, PolytopeError> {
        if n == 0 || n > MAX_N {
            return Err(PolytopeError::UnsupportedSize(n));
        }
        let invalid = || PolytopeError::InvalidFacet {
            n,
            members: members.to_vec(),
        };
        let mut mask = 0u64;
        for &s in members {
            if s == 0 || s > n {
                return Err(invalid());
            }
            mask |= 1 << (s - 1);
        }
        let size = mask.count_ones() as usize;
        if size == 0 || size == n {
            return Err(invalid());
        }
        Ok(FacetId { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Members of `S` in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.n).filter(|&s| self.contains(s)).collect()
    }

    pub fn contains(&self, s: usize) -> bool {
        s >= 1 && s <= self.n && self.mask & (1 << (s - 1)) != 0
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|&s| !self.contains(s)).collect()
    }

    pub fn is_proper_subset_of(&self, other: &FacetId) -> bool {
        self.n == other.n && self.mask != other.mask && self.mask & !other.mask == 0
    }

    /// Image under the anti-diagonal flip: `S -> {n+1-s : s not in S}`.
    pub fn mirror(&self) -> FacetId {
        let members: Vec<usize> = self.complement().iter().map(|s| self.n + 1 - s).collect();
        FacetId::new(self.n, &members).expect("complement of a proper subset is proper")
    }
}

impl Ord for FacetId {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.color(), self.members()).cmp(&(other.n, other.color(), other.members()))
    }
}

impl PartialOrd for FacetId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().iter().join(","))
    }
}

impl fmt::Debug for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{self}")
    }
}

impl Serialize for FacetId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FacetId", 2)?;
        st.serialize_field("S", &self.members())?;
        st.serialize_field("color", &self.color())?;
        st.end()
    }
}

/// All `2^n - 2` facets, grouped by color, lexicographic within a color.
pub fn facets(n: usize) -> Vec<FacetId> {
    (1..n).flat_map(|k| facets_of_color(n, k)).collect()
}

/// The `C(n, k)` facets of color `k`.
pub fn facets_of_color(n: usize, k: usize) -> Vec<FacetId> {
    (1..=n)
        .combinations(k)
        .map(|s| FacetId::new(n, &s).expect("proper nonempty subset"))
        .collect()
}

/// The fixed point `σ` lies on the facet iff its first `|S|` diagonal
/// entries carry exactly the eigenvalues indexed by `S`.
pub fn facet_contains_vertex(facet: &FacetId, sigma: &Permutation) -> bool {
    assert_eq!(facet.n(), sigma.n(), "facet and vertex sizes differ");
    sigma.prefix_mask(facet.color()) == facet.mask
}

/// Distinct facets meet iff one set strictly contains the other.
pub fn facets_intersect(f: &FacetId, g: &FacetId) -> bool {
    f.is_proper_subset_of(g) || g.is_proper_subset_of(f)
}

/// True iff the facets are pairwise comparable, i.e. they form a chain and
/// cut out a nonempty face.
pub fn chain_is_face(facets: &[FacetId]) -> bool {
    let distinct: BTreeSet<u64> = facets.iter().map(|f| f.mask).collect();
    if distinct.len() != facets.len() {
        return false;
    }
    let mut sorted = facets.to_vec();
    sorted.sort_by_key(FacetId::color);
    sorted.windows(2).all(|w| w[0].is_proper_subset_of(&w[1]))
}

/// The `n - 1` facets through a vertex: `{σ(1)} ⊂ {σ(1), σ(2)} ⊂ ...`.
pub fn vertex_facets(sigma: &Permutation) -> Vec<FacetId> {
    (1..sigma.n())
        .map(|k| FacetId {
            n: sigma.n(),
            mask: sigma.prefix_mask(k),
        })
        .collect()
}

/// Vertex table as CSV: `permutation,coord_1,...,coord_n`, one row per
/// permutation in lexicographic order.
pub fn vertex_csv(lambda: &Spectrum) -> String {
    let n = lambda.n();
    let mut out = String::from("permutation");
    for k in 1..=n {
        out.push_str(&format!(",coord_{k}"));
    }
    out.push('\n');
    for sigma in Permutation::all(n) {
        out.push_str(&sigma.to_string());
        for c in vertex_coordinates(&sigma, lambda) {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
    }
    out
}

/// Squared Euclidean distance between two rational points.
pub fn squared_distance(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter()
        .zip(b)
        .fold(Rational64::zero(), |acc, (x, y)| acc + (x - y) * (x - y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn facet(n: usize, s: &[usize]) -> FacetId {
        FacetId::new(n, s).unwrap()
    }

    #[test]
    fn permutation_parsing() {
        assert_eq!(perm("1324").word(), &[1, 3, 2, 4]);
        assert_eq!(perm("1,3,2,4"), perm("1324"));
        assert!("1224".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
        assert_eq!(perm("4123").to_string(), "4123");
    }

    #[test]
    fn coordinates() {
        let lambda = Spectrum::standard(4);
        let c = vertex_coordinates(&Permutation::identity(4), &lambda);
        assert_eq!(c, lambda.values());
        let c = vertex_coordinates(&perm("3142"), &lambda);
        let c: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
        assert_eq!(c, vec![2, 4, 1, 3]);
    }

    #[test]
    fn spectrum_validation() {
        assert!(matches!(
            "1,2,2".parse::<Spectrum>(),
            Err(PolytopeError::RepeatedEigenvalue(_))
        ));
        let s: Spectrum = "1/2,3,-1".parse().unwrap();
        assert_eq!(s.at(1), Rational64::new(1, 2));
        assert!(s.check_len(4).is_err());
    }

    #[test]
    fn facet_counts() {
        assert_eq!(facets(2).len(), 2);
        let f4 = facets(4);
        assert_eq!(f4.len(), 14);
        assert_eq!(f4.iter().filter(|f| f.color() == 3).count(), 4);
        let f5 = facets(5);
        assert_eq!(f5.len(), 30);
        assert_eq!(f5.iter().filter(|f| f.color() == 3).count(), 10);
        assert_eq!(f5.iter().filter(|f| f.color() == 4).count(), 5);
        // grouped by color
        assert!(f5.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn facet_validation() {
        assert!(FacetId::new(4, &[]).is_err());
        assert!(FacetId::new(4, &[1, 2, 3, 4]).is_err());
        assert!(FacetId::new(4, &[5]).is_err());
        assert_eq!(facet(4, &[3, 1, 1]).members(), vec![1, 3]);
    }

    #[test]
    fn containment_examples() {
        let f = facet(4, &[1, 2, 3]);
        assert!(facet_contains_vertex(&f, &perm("1234")));
        assert!(!facet_contains_vertex(&f, &perm("4123")));
        let count = Permutation::all(4)
            .iter()
            .filter(|s| facet_contains_vertex(&f, s))
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn intersection_examples() {
        assert!(facets_intersect(
            &facet(5, &[1, 2, 3]),
            &facet(5, &[1, 2, 3, 4])
        ));
        assert!(!facets_intersect(
            &facet(5, &[1, 2, 3]),
            &facet(5, &[1, 2, 4])
        ));
        assert!(!facets_intersect(&facet(5, &[1]), &facet(5, &[2, 3, 4, 5])));
        assert!(facets_intersect(&facet(5, &[1]), &facet(5, &[1, 3, 4, 5])));
    }

    #[test]
    fn chains() {
        let c = [facet(5, &[1]), facet(5, &[1, 2]), facet(5, &[1, 2, 3])];
        assert!(chain_is_face(&c));
        assert!(chain_is_face(&[c[2], c[0], c[1]]));
        assert!(!chain_is_face(&[facet(5, &[1, 2]), facet(5, &[2, 3])]));
        assert!(chain_is_face(&[facet(5, &[2, 3])]));
        assert!(!chain_is_face(&[c[0], c[0]]));
    }

    #[test]
    fn vertex_lies_on_its_prefix_chain() {
        let s = perm("31425");
        let fs = vertex_facets(&s);
        assert_eq!(fs.len(), 4);
        assert_eq!(fs[1].members(), vec![1, 3]);
        assert!(chain_is_face(&fs));
        assert!(fs.iter().all(|f| facet_contains_vertex(f, &s)));
    }

    #[test]
    fn mirror_reverses_color() {
        let f = facet(5, &[1, 2, 3]);
        assert_eq!(f.mirror().members(), vec![1, 2]);
        assert_eq!(f.mirror().mirror(), f);
    }

    #[test]
    fn csv_table() {
        let csv = vertex_csv(&Spectrum::standard(3));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "permutation,coord_1,coord_2,coord_3");
        assert_eq!(lines[1], "123,1,2,3");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn facet_json() {
        let v = serde_json::to_string(&facet(5, &[2, 4])).unwrap();
        assert_eq!(v, r#"{"S":[2,4],"color":2}"#);
    }
}

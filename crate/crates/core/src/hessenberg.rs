//! Hessenberg functions and the staircase shapes they cut out.
//!
//! A Hessenberg function `h: [n] -> [n]` satisfies `h(i) >= i` and
//! `h(i+1) >= h(i)`. It selects the Hermitian matrices with `a_ij = 0` for
//! `j > h(i)`, and everything downstream (weights, GKM edges, special
//! facets) is read off the strictly upper part of that staircase.
//!
//! All indices in the public API are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HessenbergError {
    #[error("a Hessenberg function needs at least one value")]
    Empty,
    #[error("h({i}) = {value} lies below the diagonal (need h(i) >= i)")]
    BelowDiagonal { i: usize, value: usize },
    #[error("h({i}) = {value} exceeds the matrix size n = {n}")]
    OutOfRange { i: usize, value: usize, n: usize },
    #[error("h({next}) = {next_value} is smaller than h({i}) = {value}")]
    MonotonicityViolation {
        i: usize,
        value: usize,
        next: usize,
        next_value: usize,
    },
    #[error("cut position {k} must lie in 1..={max}")]
    CutOutOfRange { k: usize, max: usize },
    #[error("cut after row {k} crosses the staircase entry ({i},{j})")]
    InvalidCut { k: usize, i: usize, j: usize },
    #[error("declared size n = {n} does not match {len} values")]
    SizeMismatch { n: usize, len: usize },
    #[error("cannot parse Hessenberg function from {0:?}")]
    Parse(String),
}

impl HessenbergError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            HessenbergError::Empty => "empty",
            HessenbergError::BelowDiagonal { .. } => "below_diagonal",
            HessenbergError::OutOfRange { .. } => "out_of_range",
            HessenbergError::MonotonicityViolation { .. } => "monotonicity_violation",
            HessenbergError::CutOutOfRange { .. } => "cut_out_of_range",
            HessenbergError::InvalidCut { .. } => "invalid_cut",
            HessenbergError::SizeMismatch { .. } => "size_mismatch",
            HessenbergError::Parse(_) => "parse",
        }
    }
}

/// A validated Hessenberg function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "HFunRepr", into = "HFunRepr")]
pub struct HFun {
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct HFunRepr {
    n: usize,
    h: Vec<usize>,
}

impl TryFrom<HFunRepr> for HFun {
    type Error = HessenbergError;

    fn try_from(repr: HFunRepr) -> Result<Self, Self::Error> {
        if repr.n != repr.h.len() {
            return Err(HessenbergError::SizeMismatch {
                n: repr.n,
                len: repr.h.len(),
            });
        }
        HFun::new(&repr.h)
    }
}

impl From<HFun> for HFunRepr {
    fn from(h: HFun) -> Self {
        HFunRepr {
            n: h.n(),
            h: h.values,
        }
    }
}

impl HFun {
    /// Validates a list of values `h(1), ..., h(n)`.
    pub fn new(values: &[usize]) -> Result<Self, HessenbergError> {
        let n = values.len();
        if n == 0 {
            return Err(HessenbergError::Empty);
        }
        for (idx, &value) in values.iter().enumerate() {
            let i = idx + 1;
            if value < i {
                return Err(HessenbergError::BelowDiagonal { i, value });
            }
            if value > n {
                return Err(HessenbergError::OutOfRange { i, value, n });
            }
        }
        for (idx, w) in values.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(HessenbergError::MonotonicityViolation {
                    i: idx + 1,
                    value: w[0],
                    next: idx + 2,
                    next_value: w[1],
                });
            }
        }
        Ok(HFun {
            values: values.to_vec(),
        })
    }

    /// The tridiagonal function `h(i) = min(i+1, n)`.
    pub fn tridiagonal(n: usize) -> Self {
        assert!(n >= 1);
        HFun {
            values: (1..=n).map(|i| (i + 1).min(n)).collect(),
        }
    }

    /// The full flag case `h(i) = n`.
    pub fn full(n: usize) -> Self {
        assert!(n >= 1);
        HFun { values: vec![n; n] }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `h(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        assert!(
            i >= 1 && i <= self.n(),
            "index {i} outside 1..={}",
            self.n()
        );
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `N = sum (h(i) - i)`: the complex dimension of the staircase manifold.
    pub fn half_dim(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .map(|(idx, &v)| v - (idx + 1))
            .sum()
    }

    pub fn real_dim(&self) -> usize {
        2 * self.half_dim()
    }

    /// Complexity of the effective `T^{n-1}` action: `N - (n - 1)`.
    pub fn complexity(&self) -> i64 {
        self.half_dim() as i64 - (self.n() as i64 - 1)
    }

    /// True iff `h(i) > i` for every `i < n`, i.e. the staircase does not
    /// break into diagonal blocks.
    pub fn is_irreducible(&self) -> bool {
        (1..self.n()).all(|i| self.at(i) > i)
    }

    pub fn is_tridiagonal(&self) -> bool {
        *self == HFun::tridiagonal(self.n())
    }

    /// The index `i0` of the unique double step when `h` is tridiagonal
    /// except for `h(i0) = i0 + 2`.
    pub fn complexity_one_profile(&self) -> Option<usize> {
        let n = self.n();
        let mut found = None;
        for i in 1..n {
            match self.at(i) - i {
                1 => {}
                2 if found.is_none() && i <= n - 2 => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// The first index `i < n` with `h(i) = i`, if any.
    pub fn first_split(&self) -> Option<usize> {
        (1..self.n()).find(|&i| self.at(i) == i)
    }

    pub fn support(&self) -> StaircaseSupport {
        let pairs = (1..=self.n())
            .flat_map(|i| (i + 1..=self.at(i)).map(move |j| (i, j)))
            .collect();
        StaircaseSupport { pairs }
    }

    /// Zeroes every entry crossing the cut between rows `k` and `k + 1` and
    /// returns the two diagonal blocks.
    ///
    /// Only the tridiagonal entry `(k, k+1)` may be removed; any other
    /// crossing entry makes the cut invalid.
    pub fn block_split(&self, k: usize) -> Result<(HFun, HFun), HessenbergError> {
        let n = self.n();
        if k < 1 || k >= n {
            return Err(HessenbergError::CutOutOfRange {
                k,
                max: n.saturating_sub(1),
            });
        }
        if let Some(&(i, j)) = self
            .crossing_pairs(k)
            .iter()
            .find(|&&pair| pair != (k, k + 1))
        {
            return Err(HessenbergError::InvalidCut { k, i, j });
        }
        let top = (1..=k).map(|i| self.at(i).min(k)).collect();
        let bottom = (k + 1..=n).map(|i| self.at(i) - k).collect();
        Ok((HFun { values: top }, HFun { values: bottom }))
    }

    /// Support pairs `(i, j)` with `i <= k < j`.
    pub fn crossing_pairs(&self, k: usize) -> Vec<(usize, usize)> {
        self.support()
            .iter()
            .filter(|&(i, j)| i <= k && k < j)
            .collect()
    }

    /// Transpose with respect to the anti-diagonal: `(i, j) -> (n+1-j, n+1-i)`.
    pub fn mirror(&self) -> HFun {
        let n = self.n();
        let mut values: Vec<usize> = (1..=n).collect();
        for (i, j) in self.support().iter() {
            let (a, b) = (n + 1 - j, n + 1 - i);
            values[a - 1] = values[a - 1].max(b);
        }
        HFun { values }
    }

    /// The irreducible complexity-one profiles of size `n`, ordered by `i0`.
    ///
    /// Panics if `n < 3`.
    pub fn enumerate_complexity_one(n: usize) -> Vec<HFun> {
        assert!(n >= 3, "complexity-one profiles need n >= 3");
        (1..=n - 2)
            .map(|i0| {
                let values = (1..=n)
                    .map(|i| if i == i0 { i + 2 } else { (i + 1).min(n) })
                    .collect();
                HFun { values }
            })
            .collect()
    }

    /// Every Hessenberg function of size `n`, in lexicographic order.
    /// There are Catalan-many of them.
    pub fn all(n: usize) -> Vec<HFun> {
        fn extend(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<HFun>) {
            let i = prefix.len() + 1;
            if i > n {
                out.push(HFun {
                    values: prefix.clone(),
                });
                return;
            }
            let lo = i.max(prefix.last().copied().unwrap_or(0));
            for v in lo..=n {
                prefix.push(v);
                extend(n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            extend(n, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }
}

impl fmt::Display for HFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for HFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HFun{self}")
    }
}

impl FromStr for HFun {
    type Err = HessenbergError;

    /// Accepts `3,3,4,5,5`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| HessenbergError::Parse(s.to_string()))?;
        HFun::new(&values)
    }
}

/// The strictly upper-triangular positions allowed by a staircase shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseSupport {
    pairs: Vec<(usize, usize)>,
}

impl StaircaseSupport {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Every `(i', j')` nested inside a support pair `(i, j)` is itself in
    /// the support.
    pub fn is_staircase_closed(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(i, j)| (i..j).all(|a| (a + 1..=j).all(|b| self.contains((a, b)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(values: &[usize]) -> HFun {
        HFun::new(values).unwrap()
    }

    #[test]
    fn validates_a_profile() {
        let f = h(&[2, 3, 3, 6, 6, 6]);
        assert_eq!(f.n(), 6);
        assert_eq!(f.half_dim(), 5);
        assert!(!f.is_irreducible());
        assert_eq!(f.first_split(), Some(3));
    }

    #[test]
    fn identity_function_has_no_support() {
        let f = h(&[1, 2, 3]);
        assert_eq!(f.half_dim(), 0);
        assert_eq!(f.complexity(), -2);
        assert!(f.support().is_empty());
    }

    #[test]
    fn rejects_bad_functions() {
        assert!(matches!(
            HFun::new(&[3, 2, 3]),
            Err(HessenbergError::MonotonicityViolation { i: 1, next: 2, .. })
        ));
        assert!(matches!(
            HFun::new(&[2, 1, 3]),
            Err(HessenbergError::BelowDiagonal { i: 2, value: 1 })
        ));
        assert!(matches!(
            HFun::new(&[4, 4, 4]),
            Err(HessenbergError::OutOfRange {
                i: 1,
                value: 4,
                n: 3
            })
        ));
        assert_eq!(HFun::new(&[]), Err(HessenbergError::Empty));
        assert!(matches!(
            "3,x".parse::<HFun>(),
            Err(HessenbergError::Parse(_))
        ));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(h(&[3, 3, 4, 4]).complexity(), 1);
        assert_eq!(h(&[3, 3, 3]).complexity(), 1);
        for n in 2..8 {
            assert_eq!(HFun::tridiagonal(n).complexity(), 0);
        }
    }

    #[test]
    fn irreducibility() {
        assert!(h(&[3, 3, 4, 4]).is_irreducible());
        assert!(!h(&[1, 2]).is_irreducible());
        assert!(h(&[2, 2]).is_irreducible());
    }

    #[test]
    fn profiles() {
        assert_eq!(h(&[3, 3, 4, 5, 5]).complexity_one_profile(), Some(1));
        assert_eq!(h(&[2, 4, 4, 5, 5]).complexity_one_profile(), Some(2));
        assert_eq!(h(&[2, 3, 4, 4]).complexity_one_profile(), None);
        assert_eq!(h(&[3, 3, 3]).complexity_one_profile(), Some(1));
        // two double steps
        assert_eq!(h(&[3, 4, 4, 4]).complexity_one_profile(), None);
        // a triple step
        assert_eq!(h(&[4, 4, 4, 4]).complexity_one_profile(), None);
    }

    #[test]
    fn block_split_examples() {
        let f = h(&[3, 3, 4, 5, 5]);
        assert_eq!(f.block_split(4).unwrap(), (h(&[3, 3, 4, 4]), h(&[1])));
        assert_eq!(f.block_split(3).unwrap(), (h(&[3, 3, 3]), h(&[2, 2])));
        assert_eq!(
            h(&[3, 3, 4, 4]).block_split(1),
            Err(HessenbergError::InvalidCut { k: 1, i: 1, j: 3 })
        );
        assert!(matches!(
            f.block_split(5),
            Err(HessenbergError::CutOutOfRange { .. })
        ));
        assert!(matches!(
            f.block_split(0),
            Err(HessenbergError::CutOutOfRange { .. })
        ));
    }

    #[test]
    fn enumerates_profiles() {
        assert_eq!(HFun::enumerate_complexity_one(3), vec![h(&[3, 3, 3])]);
        assert_eq!(
            HFun::enumerate_complexity_one(4),
            vec![h(&[3, 3, 4, 4]), h(&[2, 4, 4, 4])]
        );
        assert_eq!(
            HFun::enumerate_complexity_one(5),
            vec![
                h(&[3, 3, 4, 5, 5]),
                h(&[2, 4, 4, 5, 5]),
                h(&[2, 3, 5, 5, 5])
            ]
        );
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| HFun::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn mirror_swaps_symmetric_profiles() {
        assert_eq!(h(&[3, 3, 4, 4]).mirror(), h(&[2, 4, 4, 4]));
        assert_eq!(h(&[3, 3, 4, 5, 5]).mirror(), h(&[2, 3, 5, 5, 5]));
        assert_eq!(h(&[2, 4, 4, 5, 5]).mirror(), h(&[2, 4, 4, 5, 5]));
    }

    #[test]
    fn json_shape() {
        let f = h(&[3, 3, 4, 4]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":4,"h":[3,3,4,4]}"#);
        let back: HFun = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<HFun>(r#"{"n":3,"h":[3,3,4,4]}"#).is_err());
        assert!(serde_json::from_str::<HFun>(r#"{"n":3,"h":[3,2,3]}"#).is_err());
    }

    #[test]
    fn parses_cli_form() {
        assert_eq!("3,3,4,5,5".parse::<HFun>().unwrap(), h(&[3, 3, 4, 5, 5]));
        assert_eq!("(2, 2)".parse::<HFun>().unwrap(), h(&[2, 2]));
        assert_eq!(h(&[3, 3, 4, 4]).to_string(), "(3,3,4,4)");
    }
}

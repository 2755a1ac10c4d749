//! Special facets, boundary components and the orbit-space model.
//!
//! For an irreducible complexity-one profile with double step `i0`, the
//! orbital moment map has 2-sphere fibres over the facets whose color is
//! not `i0` or `i0 + 1`. The orbit space is `S^{N+1}` with one open domain
//! removed for each connected component of the union of those facets, and
//! its cohomology comes from Alexander duality in `S^{N+1}`:
//!
//! ```text
//! H̃^i(Q) ≅ H̃_{N-i}(B_1 ∪ ... ∪ B_l)
//! ```
//!
//! The union of special facets is replaced by its nerve. Nonempty
//! intersections of permutohedron facets are faces, hence contractible, so
//! the nerve has the homotopy type of the union. Facets meet exactly when
//! their index sets are nested, which makes the nerve the complex of
//! inclusion chains.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::hessenberg::HFun;
use crate::homology::{
    homology, reduced_homology, serialize_torsion, HomologyGroup, HomologyGroups, SimplicialComplex,
};
use crate::permutohedron::{facets, facets_intersect, FacetId, PolytopeError, Spectrum};
use crate::weights::{classify_fixed_point, FixedPointClassification, WeightError};

/// Why a Hessenberg function is outside the complexity-one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unsupported {
    Reducible { h: HFun, row: usize },
    Quasitoric { h: HFun },
    Complexity { h: HFun, complexity: i64 },
}

impl fmt::Display for Unsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unsupported::Reducible { h, row } => write!(
                f,
                "reducible Hessenberg function {h}: h({row}) = {row} splits the staircase; decompose into irreducible blocks first"
            ),
            Unsupported::Quasitoric { .. } => write!(
                f,
                "complexity 0: orbit space is the permutohedron (quasitoric case); model out of scope"
            ),
            Unsupported::Complexity { complexity, .. } => write!(
                f,
                "complexity {complexity}: only complexity-one actions are modeled"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{0}")]
    UnsupportedProfile(Unsupported),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

impl OrbitError {
    pub fn code(&self) -> &'static str {
        match self {
            OrbitError::UnsupportedProfile(_) => "unsupported_profile",
            OrbitError::Weights(e) => e.code(),
            OrbitError::Polytope(e) => e.code(),
        }
    }
}

/// Returns `i0` for an irreducible complexity-one profile.
pub fn require_profile(h: &HFun) -> Result<usize, OrbitError> {
    if let Some(row) = h.first_split() {
        return Err(OrbitError::UnsupportedProfile(Unsupported::Reducible {
            h: h.clone(),
            row,
        }));
    }
    match h.complexity() {
        0 => Err(OrbitError::UnsupportedProfile(Unsupported::Quasitoric {
            h: h.clone(),
        })),
        1 => Ok(h
            .complexity_one_profile()
            .expect("irreducible with complexity one has exactly one double step")),
        d => Err(OrbitError::UnsupportedProfile(Unsupported::Complexity {
            h: h.clone(),
            complexity: d,
        })),
    }
}

/// Facets of every color except `i0` and `i0 + 1`.
pub fn special_facets(h: &HFun) -> Result<Vec<FacetId>, OrbitError> {
    let i0 = require_profile(h)?;
    Ok(facets(h.n())
        .into_iter()
        .filter(|f| f.color() != i0 && f.color() != i0 + 1)
        .collect())
}

/// Decides whether `facet` is special from the block structure alone: the
/// facet's preimage is the product of the two diagonal blocks left after
/// cutting at its color, and the fibre over it is a 2-sphere exactly when
/// the cut is legal and the product still has complexity one.
pub fn special_facet_oracle(h: &HFun, facet: &FacetId) -> Result<bool, OrbitError> {
    require_profile(h)?;
    Ok(match h.block_split(facet.color()) {
        Ok((top, bottom)) => top.complexity() + bottom.complexity() == 1,
        Err(_) => false,
    })
}

/// Connected components of the facet intersection graph, in order of first
/// appearance; facets keep their input order inside a component.
pub fn boundary_components(special: &[FacetId]) -> Vec<Vec<FacetId>> {
    let mut component = vec![usize::MAX; special.len()];
    let mut out: Vec<Vec<FacetId>> = Vec::new();
    for start in 0..special.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        component[start] = id;
        let mut stack = vec![start];
        let mut members = vec![];
        while let Some(a) = stack.pop() {
            members.push(a);
            for b in 0..special.len() {
                if component[b] == usize::MAX && facets_intersect(&special[a], &special[b]) {
                    component[b] = id;
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|k| special[k]).collect());
    }
    out
}

/// Nerve of a family of facets: vertex `k` is `facets[k]`, simplices are
/// the inclusion chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveComplex {
    vertices: Vec<FacetId>,
    complex: SimplicialComplex,
}

impl NerveComplex {
    pub fn vertices(&self) -> &[FacetId] {
        &self.vertices
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Pairs of vertex indices joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.complex
            .simplices(1)
            .iter()
            .map(|e| (e[0], e[1]))
            .collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.complex.dim()
    }

    pub fn homology(&self) -> HomologyGroups {
        homology(&self.complex)
    }

    pub fn reduced_homology(&self) -> HomologyGroups {
        reduced_homology(&self.complex)
    }

    /// DOT rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph nerve {\n");
        writeln!(
            out,
            "  // {} vertices, {} simplices",
            self.vertices.len(),
            self.complex.len()
        )
        .unwrap();
        for f in &self.vertices {
            writeln!(out, "  \"{f}\" [color_class={}];", f.color()).unwrap();
        }
        for (a, b) in self.edges() {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.vertices[a], self.vertices[b]
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn nerve(special: &[FacetId]) -> NerveComplex {
    fn extend(chain: &mut Vec<usize>, special: &[FacetId], out: &mut Vec<Vec<usize>>) {
        out.push(chain.iter().copied().sorted().collect());
        let last = special[*chain.last().expect("chains are nonempty")];
        for (k, f) in special.iter().enumerate() {
            if last.is_proper_subset_of(f) {
                chain.push(k);
                extend(chain, special, out);
                chain.pop();
            }
        }
    }
    let mut simplices = Vec::new();
    for k in 0..special.len() {
        extend(&mut vec![k], special, &mut simplices);
    }
    let complex = SimplicialComplex::from_simplices(simplices)
        .expect("inclusion chains are closed under taking subchains");
    NerveComplex {
        vertices: special.to_vec(),
        complex,
    }
}

/// One reduced cohomology group of the orbit space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub i: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<num_bigint::BigInt>,
}

impl CohomologyGroup {
    pub fn group(&self) -> HomologyGroup {
        HomologyGroup {
            free_rank: self.rank,
            torsion: self.torsion.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// `H̃^i(Q)` for `i = 0..=N+1`, with `Q` the complement in `S^{N+1}` of
/// open neighbourhoods of the special-facet components.
pub fn alexander_cohomology(nerve: &NerveComplex, half_dim: usize) -> Vec<CohomologyGroup> {
    let reduced = nerve.reduced_homology();
    (0..=half_dim + 1)
        .map(|i| {
            let g = if i <= half_dim {
                reduced.get(half_dim - i)
            } else if nerve.complex().is_empty() {
                // H̃_{-1}(∅) = Z: the top class of the sphere survives
                HomologyGroup::free(1)
            } else {
                HomologyGroup::default()
            };
            CohomologyGroup {
                i,
                rank: g.free_rank,
                torsion: g.torsion,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryComponent {
    pub id: usize,
    pub facets: Vec<FacetId>,
    #[serde(skip)]
    pub nerve: NerveComplex,
    pub nerve_vertices: usize,
    pub nerve_edges: usize,
    pub nerve_simplices: usize,
    pub homology: HomologyGroups,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub h: HFun,
    pub lambda: Spectrum,
    pub n: usize,
    pub half_dim: usize,
    pub sphere_dim: usize,
    pub complexity: i64,
    pub i0: usize,
    pub fixed_points: FixedPointClassification,
    pub special_facets: Vec<FacetId>,
    /// `(color, count)` for each special color.
    pub special_by_color: Vec<(usize, usize)>,
    pub components: Vec<BoundaryComponent>,
    pub boundary_count: usize,
    pub nerve_homology: HomologyGroups,
    pub cohomology: Vec<CohomologyGroup>,
    pub model: String,
    pub tag: Option<String>,
}

impl OrbitReport {
    /// `H̃^i(Q)`; trivial outside `0..=N+1`.
    pub fn cohomology_at(&self, i: usize) -> HomologyGroup {
        self.cohomology
            .get(i)
            .map(CohomologyGroup::group)
            .unwrap_or_default()
    }

    pub fn cohomology_ranks(&self) -> Vec<usize> {
        self.cohomology.iter().map(|c| c.rank).collect()
    }

    /// True iff `H̃^0 = H̃^1 = H̃^2 = 0`.
    pub fn low_degrees_vanish(&self) -> bool {
        (0..=2).all(|i| self.cohomology_at(i).is_trivial())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Human-readable report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "Hessenberg function h = {}", self.h).unwrap();
        writeln!(
            w,
            "  n = {}, N = {}, complexity d = {}, i0 = {}",
            self.n, self.half_dim, self.complexity, self.i0
        )
        .unwrap();
        writeln!(
            w,
            "  real dimension {}, effective torus T^{}, moment polytope Pe^{}, spectrum {}",
            2 * self.half_dim,
            self.n - 1,
            self.n - 1,
            self.lambda
        )
        .unwrap();
        let fp = &self.fixed_points;
        match &fp.kind {
            crate::weights::FixedPointKind::Interior => writeln!(
                w,
                "fixed points: {}, weights in general position (interior points)",
                fp.fixed_points
            )
            .unwrap(),
            crate::weights::FixedPointKind::Boundary { signature } => {
                writeln!(
                    w,
                    "fixed points: {}, weights not in general position (boundary points)",
                    fp.fixed_points
                )
                .unwrap();
                writeln!(
                    w,
                    "  primitive relation c = ({}), m = {}",
                    signature.relation().iter().join(","),
                    signature.m()
                )
                .unwrap();
                writeln!(w, "  corner: {signature}").unwrap();
            }
        }
        let by_color = self
            .special_by_color
            .iter()
            .map(|(c, k)| format!("color {c}: {k}"))
            .join(", ");
        if self.special_facets.is_empty() {
            writeln!(w, "special facets: 0").unwrap();
        } else {
            writeln!(
                w,
                "special facets: {} ({by_color})",
                self.special_facets.len()
            )
            .unwrap();
        }
        writeln!(w, "boundary components: {}", self.boundary_count).unwrap();
        for c in &self.components {
            writeln!(
                w,
                "  component {}: {} facet(s), nerve {} vertices / {} edges; {}",
                c.id,
                c.facets.len(),
                c.nerve_vertices,
                c.nerve_edges,
                c.homology
            )
            .unwrap();
        }
        writeln!(w, "model: {}", self.model).unwrap();
        if let Some(tag) = &self.tag {
            writeln!(w, "tag: {tag}").unwrap();
        }
        writeln!(
            w,
            "reduced cohomology of Q (Alexander duality in S^{}):",
            self.sphere_dim
        )
        .unwrap();
        for c in &self.cohomology {
            let name = if c.i == 0 {
                "H~^0(Q)".to_string()
            } else {
                format!("H^{}(Q)", c.i)
            };
            writeln!(w, "  {name} = {}", c.group()).unwrap();
        }
        if self.low_degrees_vanish() {
            writeln!(w, "H~^i(Q) = 0 for i = 0,1,2").unwrap();
        }
        out
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn subscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Names for the orbit spaces identified explicitly in low dimensions.
/// Mirror profiles share the tag of their partner.
fn known_tag(h: &HFun) -> Option<&'static str> {
    match h.values() {
        [3, 3, 3] => Some("S⁴"),
        [3, 3, 4, 4] | [2, 4, 4, 4] => Some("S⁵ ∖ ⊔₄D⁵"),
        [3, 3, 4, 5, 5] | [2, 3, 5, 5, 5] => Some("S⁶ ∖ (#_{K5} D⁶)"),
        [2, 4, 4, 5, 5] => Some("S⁶ ∖ (#_{K̃5,5} D⁶)"),
        _ => None,
    }
}

pub fn orbit_space_report(h: &HFun, lambda: &Spectrum) -> Result<OrbitReport, OrbitError> {
    let i0 = require_profile(h)?;
    lambda.check_len(h.n())?;
    let fixed_points = classify_fixed_point(h)?;
    let special = special_facets(h)?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &special {
        *counts.entry(f.color()).or_default() += 1;
    }
    let components: Vec<BoundaryComponent> = boundary_components(&special)
        .into_iter()
        .enumerate()
        .map(|(k, facets)| {
            let nerve = nerve(&facets);
            BoundaryComponent {
                id: k + 1,
                nerve_vertices: nerve.complex().count(0),
                nerve_edges: nerve.complex().count(1),
                nerve_simplices: nerve.complex().len(),
                homology: nerve.homology(),
                facets,
                nerve,
            }
        })
        .collect();
    let whole = nerve(&special);
    let half_dim = h.half_dim();
    let sphere_dim = half_dim + 1;
    let cohomology = alexander_cohomology(&whole, half_dim);
    let l = components.len();
    let model = match l {
        0 => format!("Q ≅ S{}", superscript(sphere_dim)),
        1 => format!("Q ≅ S{} ∖ U₁", superscript(sphere_dim)),
        _ => format!(
            "Q ≅ S{} ∖ (U₁ ⊔ … ⊔ U{})",
            superscript(sphere_dim),
            subscript(l)
        ),
    };
    Ok(OrbitReport {
        h: h.clone(),
        lambda: lambda.clone(),
        n: h.n(),
        half_dim,
        sphere_dim,
        complexity: h.complexity(),
        i0,
        fixed_points,
        special_by_color: counts.into_iter().collect(),
        special_facets: special,
        boundary_count: l,
        components,
        nerve_homology: whole.homology(),
        cohomology,
        model,
        tag: known_tag(h).map(str::to_string),
    })
}

//! The GKM graph: fixed points joined by invariant 2-spheres.
//!
//! Every staircase slot `(i, j)` gives, at each fixed point `σ`, an invariant
//! sphere whose other pole is `σ` with the values in positions `i` and `j`
//! exchanged. Slots with `j = i + 1` trace the edges of the permutohedron;
//! the double step `(i0, i0 + 2)` adds hexagon diagonals.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::hessenberg::HFun;
use crate::permutohedron::{vertex_coordinates, Permutation, PolytopeError, Spectrum};
use crate::weights::WeightVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("the GKM graph is built for irreducible staircases; {h} splits at row {row}")]
    ReducibleInput { h: HFun, row: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

impl GkmError {
    pub fn code(&self) -> &'static str {
        match self {
            GkmError::ReducibleInput { .. } => "reducible_input",
            GkmError::Polytope(e) => e.code(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    /// An edge of the permutohedron (`j = i + 1`).
    Polytope,
    /// A segment through the interior of a face (`j >= i + 2`).
    Diagonal,
}

impl EdgeClass {
    pub fn of_pair((i, j): (usize, usize)) -> Self {
        if j == i + 1 {
            EdgeClass::Polytope
        } else {
            EdgeClass::Diagonal
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeClass::Polytope => "polytope",
            EdgeClass::Diagonal => "diagonal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmEdge {
    /// Vertex indices with `u < v`.
    pub u: usize,
    pub v: usize,
    pub pair: (usize, usize),
    pub weight: WeightVec,
    pub class: EdgeClass,
}

#[derive(Clone, Debug)]
pub struct GkmGraph {
    h: HFun,
    lambda: Spectrum,
    vertices: Vec<Permutation>,
    edges: Vec<GkmEdge>,
}

/// The other pole of the `(i, j)` sphere at `σ`.
pub fn edge_endpoint(sigma: &Permutation, (i, j): (usize, usize)) -> Permutation {
    sigma.swap_positions(i, j)
}

pub fn build_gkm(h: &HFun, lambda: &Spectrum) -> Result<GkmGraph, GkmError> {
    if let Some(row) = h.first_split() {
        return Err(GkmError::ReducibleInput { h: h.clone(), row });
    }
    lambda.check_len(h.n())?;
    let vertices = Permutation::all(h.n());
    let index: HashMap<&Permutation, usize> =
        vertices.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let support = h.support();
    let mut edges = Vec::with_capacity(vertices.len() * support.len() / 2);
    for (u, sigma) in vertices.iter().enumerate() {
        for pair in support.iter() {
            let v = index[&edge_endpoint(sigma, pair)];
            if u < v {
                edges.push(GkmEdge {
                    u,
                    v,
                    pair,
                    weight: WeightVec::root(h.n(), pair.0, pair.1),
                    class: EdgeClass::of_pair(pair),
                });
            }
        }
    }
    Ok(GkmGraph {
        h: h.clone(),
        lambda: lambda.clone(),
        vertices,
        edges,
    })
}

impl GkmGraph {
    pub fn h(&self) -> &HFun {
        &self.h
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    pub fn vertex_index(&self, sigma: &Permutation) -> Option<usize> {
        self.vertices.binary_search(sigma).ok()
    }

    pub fn coordinates(&self, v: usize) -> Vec<num_rational::Rational64> {
        vertex_coordinates(&self.vertices[v], &self.lambda)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn edges_of_class(&self, class: EdgeClass) -> impl Iterator<Item = &GkmEdge> {
        self.edges.iter().filter(move |e| e.class == class)
    }

    /// DOT rendering. Vertices are named by their one-line word; for
    /// `n <= 4` each node carries a fixed planar projection of its moment
    /// coordinates as `pos`.
    pub fn to_dot(&self) -> String {
        let n = self.h.n();
        let mut out = String::new();
        writeln!(out, "graph gkm {{").unwrap();
        writeln!(
            out,
            "  // h = {}, {} vertices, {} edges",
            self.h,
            self.vertices.len(),
            self.edges.len()
        )
        .unwrap();
        writeln!(out, "  node [shape=point];").unwrap();
        for (k, sigma) in self.vertices.iter().enumerate() {
            match projection(n) {
                Some(dirs) => {
                    let (x, y) = project(&self.coordinates(k), dirs);
                    writeln!(out, "  \"{sigma}\" [pos=\"{x:.3},{y:.3}!\"];").unwrap();
                }
                None => writeln!(out, "  \"{sigma}\";").unwrap(),
            }
        }
        for e in &self.edges {
            writeln!(
                out,
                "  \"{}\" -- \"{}\" [pair=\"{},{}\", class={}];",
                self.vertices[e.u],
                self.vertices[e.v],
                e.pair.0,
                e.pair.1,
                e.class.as_str()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"h":..., "vertices":[{"id","coords"}], "edges":[{"u","v","pair","weight","class"}]}`
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = (0..self.vertices.len())
            .map(|k| {
                let coords: Vec<String> = self
                    .coordinates(k)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                json!({ "id": self.vertices[k].to_string(), "coords": coords })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "u": self.vertices[e.u].to_string(),
                    "v": self.vertices[e.v].to_string(),
                    "pair": [e.pair.0, e.pair.1],
                    "weight": e.weight,
                    "class": e.class,
                })
            })
            .collect();
        json!({
            "h": self.h,
            "lambda": self.lambda,
            "vertices": vertices,
            "edges": edges,
        })
    }
}

/// Unit directions (in degrees) for projecting `R^n` onto the plane.
fn projection(n: usize) -> Option<&'static [f64]> {
    match n {
        1 => Some(&[0.0]),
        2 => Some(&[0.0, 180.0]),
        3 => Some(&[90.0, 210.0, 330.0]),
        4 => Some(&[10.0, 100.0, 215.0, 300.0]),
        _ => None,
    }
}

fn project(coords: &[num_rational::Rational64], dirs: &[f64]) -> (f64, f64) {
    coords
        .iter()
        .zip(dirs)
        .fold((0.0, 0.0), |(x, y), (c, deg)| {
            let c = c.numer().to_f64().unwrap_or(0.0) / c.denom().to_f64().unwrap_or(1.0);
            let r = deg.to_radians();
            (x + c * r.cos(), y + c * r.sin())
        })
}

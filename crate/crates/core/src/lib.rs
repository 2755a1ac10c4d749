//! Combinatorial models for orbit spaces of complexity-one torus actions on
//! isospectral staircase matrices and regular semisimple Hessenberg
//! varieties.
//!
//! Starting from a Hessenberg function `h`, the crate computes
//!
//! * the tangent weights at the fixed points and the local corner type of
//!   their images ([`weights`]),
//! * the moment permutohedron with its colored facets ([`permutohedron`]),
//! * the GKM graph ([`gkm`]),
//! * the special facets, boundary components and nerve, and the integral
//!   cohomology of the orbit space by Alexander duality ([`orbitspace`]),
//!
//! on top of exact integer linear algebra ([`linalg`], [`homology`]).
//!
//! ```
//! use orbitlab::hessenberg::HFun;
//! use orbitlab::orbitspace::orbit_space_report;
//! use orbitlab::permutohedron::Spectrum;
//!
//! let h: HFun = "3,3,4,5,5".parse().unwrap();
//! let report = orbit_space_report(&h, &Spectrum::standard(5)).unwrap();
//! assert_eq!(report.boundary_count, 1);
//! assert_eq!(report.cohomology_at(4).to_string(), "Z^6");
//! ```
//!
//! The guide under `book/` walks through each piece; its code listings are
//! compiled and run as doc-tests of this crate.

#![allow(clippy::needless_range_loop)]

pub mod gkm;
pub mod hessenberg;
pub mod homology;
pub mod linalg;
pub mod orbitspace;
pub mod permutohedron;
pub mod weights;

pub use hessenberg::HFun;
pub use permutohedron::{FacetId, Permutation, Spectrum};

#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($i:ident) => {
            #[doc = include_str!(concat!("../../../book/src/", stringify!($i), ".md"))]
            mod $i {}
        };
    }
    booktest!(introduction);
    booktest!(staircases);
    booktest!(weights);
    booktest!(polytope);
    booktest!(orbit_space);
    booktest!(homology);

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}

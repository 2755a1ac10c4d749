mod common;

use itertools::Itertools;
use num_bigint::BigInt;
use orbitlab::homology::{homology, smith_normal_form, SimplicialComplex};
use orbitlab::linalg::IntMatrix;
use orbitlab::orbitspace::{nerve, special_facets};
use orbitlab::HFun;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn simplex_boundary(k: usize) -> SimplicialComplex {
    // boundary of the k-simplex on k+1 vertices
    SimplicialComplex::closure((0..=k).combinations(k)).unwrap()
}

fn torus() -> SimplicialComplex {
    let faces = (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
    SimplicialComplex::closure(faces).unwrap()
}

fn rp2() -> SimplicialComplex {
    SimplicialComplex::closure([
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ])
    .unwrap()
}

fn graph(edges: &[(usize, usize)]) -> SimplicialComplex {
    SimplicialComplex::closure(edges.iter().map(|&(a, b)| [a, b])).unwrap()
}

fn test_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        (
            "point".to_string(),
            SimplicialComplex::from_simplices([[0]]).unwrap(),
        ),
        ("torus".to_string(), torus()),
        ("rp2".to_string(), rp2()),
        (
            "k5".to_string(),
            graph(&(0..5).tuple_combinations().collect::<Vec<_>>()),
        ),
        (
            "k55_minus_matching".to_string(),
            graph(
                &(0..5)
                    .cartesian_product(5..10)
                    .filter(|&(a, b)| b - 5 != a)
                    .collect::<Vec<_>>(),
            ),
        ),
    ];
    for k in 1..=4 {
        out.push((format!("sphere_{}", k - 1), simplex_boundary(k)));
    }
    for n in 4..=6 {
        for h in HFun::enumerate_complexity_one(n) {
            let nv = nerve(&special_facets(&h).unwrap());
            out.push((format!("nerve{h}"), nv.complex().clone()));
        }
    }
    out
}

fn betti_by_rational_rank(c: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = c.dim() else { return vec![] };
    let rank = |q: usize| common::rational_rank(&c.boundary(q).to_i64_rows().unwrap());
    (0..=dim)
        .map(|q| c.count(q) - rank(q) - rank(q + 1))
        .collect()
}

#[test]
fn boundary_squared_is_zero() {
    for (name, c) in test_complexes() {
        let d = c.boundary_matrices();
        for pair in d.windows(2) {
            assert!(pair[0].mul(&pair[1]).is_zero(), "∂∂ != 0 on {name}");
        }
    }
}

#[test]
fn betti_numbers_match_rational_ranks() {
    for (name, c) in test_complexes() {
        if c.len() > 200 {
            continue;
        }
        assert_eq!(
            homology(&c).betti(),
            betti_by_rational_rank(&c),
            "on {name}"
        );
    }
}

#[test]
fn euler_characteristic_agrees() {
    for (name, c) in test_complexes() {
        assert_eq!(
            c.euler_characteristic(),
            homology(&c).euler_characteristic(),
            "on {name}"
        );
    }
}

#[test]
fn classical_answers() {
    let h = homology(&torus());
    assert_eq!(h.betti(), vec![1, 2, 1]);
    assert!(h.degrees().iter().all(|g| g.torsion.is_empty()));
    for k in 1..=4 {
        let mut expected = vec![0; k];
        expected[0] += 1;
        expected[k - 1] += 1;
        assert_eq!(homology(&simplex_boundary(k)).betti(), expected);
    }
    assert_eq!(homology(&rp2()).get(1).torsion, vec![BigInt::from(2)]);
}

#[test]
fn homology_is_invariant_under_relabeling() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, c) in test_complexes() {
        let mut perm: Vec<usize> = (0..c.vertex_count()).collect();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        assert_eq!(homology(&c), homology(&c.relabel(&perm)), "on {name}");
    }
}

#[test]
fn snf_matches_gcd_of_minors_on_random_small_matrices() {
    let mut rng = StdRng::seed_from_u64(20240601);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let got = smith_normal_form(&IntMatrix::from_rows(&m));
        let want = common::invariant_factors_by_minors(&m);
        assert_eq!(got, want, "matrix {m:?}");
    }
}

#[test]
fn snf_frozen_example() {
    // D1 = gcd(2,4,6,8) = 2, D2 = |2*8 - 4*6| = 8, so (2, 4)
    assert_eq!(
        common::invariant_factors_by_minors(&[vec![2, 4], vec![6, 8]]),
        vec![BigInt::from(2), BigInt::from(4)]
    );
}

proptest! {
    #[test]
    fn snf_divisibility_chain(m in prop::collection::vec(prop::collection::vec(-20i64..=20, 1..6), 1..6)) {
        let cols = m[0].len();
        let m: Vec<Vec<i64>> = m.into_iter().map(|mut r| { r.resize(cols, 0); r }).collect();
        let d = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(d.len(), common::rational_rank(&m));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        let product: BigInt = d.iter().product();
        if m.len() == cols && d.len() == cols {
            prop_assert_eq!(product, common::abs_big(&common::det(&m)));
        }
    }

    #[test]
    fn random_complexes_agree_with_oracles(
        faces in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..8)
    ) {
        let c = SimplicialComplex::closure(faces.iter().map(|s| s.iter().copied().collect::<Vec<_>>())).unwrap();
        for pair in c.boundary_matrices().windows(2) {
            prop_assert!(pair[0].mul(&pair[1]).is_zero());
        }
        let h = homology(&c);
        prop_assert_eq!(h.betti(), betti_by_rational_rank(&c));
        prop_assert_eq!(h.euler_characteristic(), c.euler_characteristic());
    }
}

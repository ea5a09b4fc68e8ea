use num_bigint::BigInt;
use origami_core::arith::int;
use origami_core::cohomology::betti_numbers;
use origami_core::generate::{random_cycle, random_tree};
use origami_core::gkm::{fixed_points, moment_graph};
use origami_core::orbit_space::is_face_acyclic;
use origami_core::template::{
    cut_leaf, is_acyclic, is_isomorphic, is_orientable, radial_blow_up, validate, OrigamiTemplate,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree(seed: u64) -> OrigamiTemplate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1 + (seed % 3) as usize;
    random_tree(&mut rng, dim, 5)
}

fn shear(dim: usize, k: i64) -> Vec<Vec<BigInt>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| match (i, j) {
                    _ if i == j => int(1),
                    (0, 1) => int(k),
                    _ => int(0),
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trees_are_acyclic_and_orientable(seed in 0u64..100_000) {
        let t = tree(seed);
        prop_assert!(validate(&t).valid);
        prop_assert!(is_acyclic(&t));
        prop_assert_eq!(t.num_edges() + 1, t.num_vertices());
        prop_assert!(is_orientable(&t).unwrap());
        prop_assert!(is_face_acyclic(&t).unwrap());
    }

    #[test]
    fn invariants_survive_relabelling(seed in 0u64..100_000) {
        let t = tree(seed);
        let r = t.relabel(|v| format!("x_{v}"), |e| format!("y_{e}")).unwrap();
        prop_assert!(is_isomorphic(&t, &r));
        prop_assert_eq!(validate(&t).valid, validate(&r).valid);
        let b1 = betti_numbers(&moment_graph(&t).unwrap(), t.dim()).unwrap();
        let b2 = betti_numbers(&moment_graph(&r).unwrap(), r.dim()).unwrap();
        prop_assert_eq!(b1, b2);
    }

    #[test]
    fn invariants_survive_lattice_maps(seed in 0u64..100_000, k in -2i64..=2, shift in -2i64..=2) {
        let t = tree(seed);
        let n = t.dim();
        let m = t.transform(&shear(n, k), &vec![int(shift); n]).unwrap();
        prop_assert!(validate(&m).valid);
        prop_assert_eq!(fixed_points(&t).unwrap().len(), fixed_points(&m).unwrap().len());
        let b1 = betti_numbers(&moment_graph(&t).unwrap(), n).unwrap();
        let b2 = betti_numbers(&moment_graph(&m).unwrap(), n).unwrap();
        prop_assert_eq!(b1, b2);
    }

    #[test]
    fn cutting_and_regluing(seed in 0u64..100_000) {
        let t = tree(seed);
        prop_assume!(t.num_vertices() > 1);
        for leaf in t.leaves() {
            let id = t.vertices()[leaf].id.clone();
            let cut = cut_leaf(&t, &id).unwrap();
            prop_assert!(is_isomorphic(&cut.reglue().unwrap(), &t));
            let again = radial_blow_up(&cut.c_plus, &cut.c_minus, &cut.anchor_id, cut.anchor_facet, cut.leaf_facet).unwrap();
            prop_assert!(is_isomorphic(&again, &t));
            let lhs = fixed_points(&t).unwrap().len() as i64;
            let rhs = fixed_points(&cut.c_plus).unwrap().len() as i64
                + cut.c_minus.vertices().len() as i64
                - 2 * cut.b.vertices().len() as i64;
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cycles_are_not_face_acyclic(seed in 0u64..100_000, len in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_cycle(&mut rng, 2, len, 2);
        prop_assert!(!is_acyclic(&t));
        prop_assert!(!is_face_acyclic(&t).unwrap());
    }
}

//! Randomized structural invariants across the crate.

use num_traits::Zero;
use polyquant_core::lattice::{hnf_rows, PeriodData, RationalLattice};
use polyquant_core::linalg::Mat;
use polyquant_core::modelfile::{
    lattice_from_payload, lattice_payload_from_state, ModelFile, ModelKind,
};
use polyquant_core::rational::{rat, rint, Rat};
use polyquant_core::toric::{holomorphic_dim, invariant_dim, ToricBundleModel, ToricWeight};
use polyquant_core::vsympl::{
    bracket, hamiltonian_solve, is_nondegenerate, symbol_map, AlternatingForm, LinearObservable,
    VSymplecticSpace,
};
use proptest::prelude::*;

fn small_int() -> impl Strategy<Value = i64> {
    -4..=4i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_invariant_under_row_operations(
        rows in prop::collection::vec(prop::collection::vec(small_int(), 3), 1..5),
        swap_a in 0..4usize,
        swap_b in 0..4usize,
        mult in -2..=2i64,
    ) {
        let to_big = |rows: &Vec<Vec<i64>>| {
            rows.iter()
                .map(|r| r.iter().map(|&x| num_bigint::BigInt::from(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let baseline = hnf_rows(to_big(&rows));
        // Permute and recombine rows: the span is unchanged.
        let mut edited = rows.clone();
        let n = edited.len();
        edited.swap(swap_a % n, swap_b % n);
        if n >= 2 {
            let (a, b) = (swap_a % n, (swap_a + 1) % n);
            if a != b {
                let source = edited[b].clone();
                for (x, s) in edited[a].iter_mut().zip(source) {
                    *x += mult * s;
                }
            }
        }
        prop_assert_eq!(hnf_rows(to_big(&edited)), baseline);
    }

    #[test]
    fn lattice_membership_consistent_with_span(
        gens in prop::collection::vec(prop::collection::vec(small_int(), 2), 1..4),
        pick in 0..4usize,
        scale in -3..=3i64,
    ) {
        let rgens: Vec<Vec<Rat>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| rint(x)).collect())
            .collect();
        let lattice = RationalLattice::from_generators(2, &rgens).unwrap();
        // Every integer combination of generators is a member.
        let g = &rgens[pick % rgens.len()];
        let combo: Vec<Rat> = g.iter().map(|x| x.clone() * rint(scale)).collect();
        prop_assert!(lattice.contains_vector(&combo));
    }

    #[test]
    fn bracket_is_antisymmetric(
        dim_q in 1..=2usize,
        dim_v in 1..=2usize,
        x_seed in prop::collection::vec(small_int(), 9),
        y_seed in prop::collection::vec(small_int(), 9),
    ) {
        let space = VSymplecticSpace::canonical(dim_q, dim_v);
        let n = space.dim_u();
        let observable_for = |seed: &[i64]| {
            let x: Vec<Rat> = (0..n).map(|i| rint(seed[i % seed.len()])).collect();
            let diff = Mat::<Rat>::from_fn(space.dim_v(), n, |l, col| {
                space.component(l).matvec(&x)[col].clone()
            });
            LinearObservable::new(vec![Rat::zero(); space.dim_v()], diff)
        };
        let f = observable_for(&x_seed);
        let h = observable_for(&y_seed);
        let fh = bracket(&f, &h, &space).unwrap();
        let hf = bracket(&h, &f, &space).unwrap();
        let neg: Vec<Rat> = hf.iter().map(|v| -v.clone()).collect();
        prop_assert_eq!(fh.clone(), neg);
        let ff = bracket(&f, &f, &space).unwrap();
        prop_assert!(ff.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn hamiltonian_solutions_unique_when_nondegenerate(
        dim_q in 1..=2usize,
        dim_v in 1..=3usize,
        seed in prop::collection::vec(small_int(), 12),
    ) {
        let space = VSymplecticSpace::canonical(dim_q, dim_v);
        prop_assert!(is_nondegenerate(&space).0);
        let n = space.dim_u();
        let x: Vec<Rat> = (0..n).map(|i| rint(seed[i % seed.len()])).collect();
        let diff = Mat::<Rat>::from_fn(space.dim_v(), n, |l, col| {
            space.component(l).matvec(&x)[col].clone()
        });
        let f = LinearObservable::new(vec![Rat::zero(); space.dim_v()], diff);
        let first = hamiltonian_solve(&f, &space).unwrap();
        let second = hamiltonian_solve(&f, &space).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(first, x);
    }

    #[test]
    fn symbol_map_output_skew_and_linear(
        c1 in small_int(),
        c2 in small_int(),
        scale in 1..=3i64,
    ) {
        let base = AlternatingForm::new(
            4,
            3,
            vec![(vec![0, 1, 2], rint(c1)), (vec![1, 2, 3], rint(c2))],
        )
        .unwrap();
        let lowered = symbol_map(&base).unwrap();
        for g in lowered.space.components() {
            prop_assert_eq!(g.transpose(), g.neg());
        }
        // Scaling the input scales every component.
        let scaled = AlternatingForm::new(
            4,
            3,
            vec![
                (vec![0, 1, 2], rint(c1 * scale)),
                (vec![1, 2, 3], rint(c2 * scale)),
            ],
        )
        .unwrap();
        let lowered_scaled = symbol_map(&scaled).unwrap();
        for (g, gs) in lowered.space.components().iter().zip(lowered_scaled.space.components()) {
            prop_assert_eq!(&g.scale(&rint(scale)), gs);
        }
    }

    #[test]
    fn lattice_payload_round_trip(
        periods in prop::collection::vec(
            prop::collection::vec((small_int(), 1..=3i64), 2),
            0..4
        ),
    ) {
        let rperiods: Vec<Vec<Rat>> = periods
            .iter()
            .map(|p| p.iter().map(|&(n, d)| rat(n, d)).collect())
            .collect();
        let pd = PeriodData::new(2, rperiods).unwrap();
        let payload = lattice_payload_from_state(2, &pd, None);
        let file = ModelFile::new(ModelKind::Lattice, &payload);
        let parsed = ModelFile::from_json_str(&file.to_json_string()).unwrap();
        prop_assert_eq!(parsed.kind, ModelKind::Lattice);
        let p2 = parsed.payload_as::<polyquant_core::modelfile::LatticePayload>().unwrap();
        let inputs = lattice_from_payload(&p2).unwrap();
        prop_assert_eq!(inputs.periods, pd);
    }

    #[test]
    fn invariants_bounded_and_relabel_symmetric(
        d1 in 0..=3i64,
        d2 in 0..=3i64,
        a1 in -2..=2i64,
        a2 in -2..=2i64,
        shift_num in -3..=6i64,
        k in 1..=4i64,
    ) {
        let model = ToricBundleModel::new(
            2,
            vec![ToricWeight::new(vec![d1, d2], rat(shift_num, 2))],
            vec![a1, a2],
        )
        .unwrap();
        let inv = invariant_dim(&model, k);
        let full = holomorphic_dim(&model, k);
        prop_assert!(inv <= full);
        let swapped = ToricBundleModel::new(
            2,
            vec![ToricWeight::new(vec![d2, d1], rat(shift_num, 2))],
            vec![a2, a1],
        )
        .unwrap();
        prop_assert_eq!(inv, invariant_dim(&swapped, k));
        // A trivial action with zero shift keeps everything.
        let trivial = ToricBundleModel::new(
            2,
            vec![ToricWeight::new(vec![d1, d2], Rat::zero())],
            vec![0, 0],
        )
        .unwrap();
        prop_assert_eq!(invariant_dim(&trivial, k), holomorphic_dim(&trivial, k));
    }
}

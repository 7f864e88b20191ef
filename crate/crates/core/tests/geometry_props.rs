// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zxforge::circuits::{circuit_unitary, Circuit, Gate, GateKind};
use zxforge::hopf::{build_group_algebra, check_algebra, HopfStructure};
use zxforge::infogeo::{chart, fisher_matrix, fs_pullback, fubini_study, qgt, random_qubit_family, random_softmax, sld};
use zxforge::qcore::hermitian_eigen;
use zxforge::{Matrix, Phase, C64};

fn min_eigenvalue(m: &Matrix) -> f64 {
    hermitian_eigen(m).values[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fisher_is_symmetric_psd(seed in any::<u64>(), d in 1usize..4, n in 2usize..6, t in prop::collection::vec(-1.5f64..1.5, 3)) {
        let f = random_softmax(&mut ChaCha8Rng::seed_from_u64(seed), d, n);
        let m = fisher_matrix(&f, &t[..d]).unwrap();
        let cm = Matrix::from_rows(&m.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect::<Vec<_>>());
        prop_assert!(cm.is_hermitian(0.0));
        prop_assert!(min_eigenvalue(&cm) >= -1e-10);
    }

    #[test]
    fn qgt_is_hermitian_psd_and_matches_fs(z in prop::collection::vec(-2.0f64..2.0, 2..7)) {
        let n = z.len() / 2;
        let theta = &z[..2 * n];
        let q = qgt(&chart::<f64>(n), theta).unwrap();
        prop_assert!(q.is_hermitian(1e-14));
        prop_assert!(min_eigenvalue(&q) >= -1e-10);
        let point: Vec<C64> = theta.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        prop_assert!(fs_pullback(&q).unwrap().approx_eq(&fubini_study(&point), 1e-12));
    }

    #[test]
    fn sld_is_hermitian_and_solves_its_equation(seed in any::<u64>(), t in -1.0f64..1.0) {
        let f = random_qubit_family(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = sld(&f, t).unwrap();
        prop_assert!(r.l.is_hermitian(1e-10));
        prop_assert!(r.residual <= 1e-8);
    }

    #[test]
    fn perturbed_unit_products_are_caught(n in 2usize..5, row in 0usize..4, g in 0usize..4, eps in 1e-6f64..1.0) {
        // columns e⊗g are fixed by the unit law; other entries can be moved
        // without leaving the class of unital associative algebras
        let (red, green) = build_group_algebra::<f64>(n);
        let mut h = HopfStructure::assemble(&red, &green).unwrap();
        h.m[(row % n, g % n)] += C64::new(eps, 0.0);
        let r = check_algebra(&h).unwrap();
        prop_assert!(!r.get("left_unit").unwrap().pass);
        prop_assert!((r.get("left_unit").unwrap().deviation - eps).abs() < 1e-12);
    }

    #[test]
    fn circuits_are_unitary(gates in prop::collection::vec((0usize..8, 0usize..3, 0usize..3, -8i64..8), 0..12)) {
        let mut c = Circuit::new(3);
        for (kind, a, b, k) in gates {
            let g = match kind {
                0 => Gate::h(a),
                1 => Gate::single(GateKind::T, a),
                2 => Gate::single(GateKind::Sdg, a),
                3 => Gate::single(GateKind::Rz(Phase::new(k, 8).unwrap()), a),
                4 => Gate::single(GateKind::Rx(Phase::new(k, 5).unwrap()), a),
                5 | 6 if a != b => Gate::cnot(a, b),
                7 => Gate::single(GateKind::Y, a),
                _ => Gate::single(GateKind::X, a),
            };
            c.push(g).unwrap();
        }
        let u: Matrix = circuit_unitary(&c).unwrap();
        prop_assert!(u.is_unitary(1e-12));
    }
}

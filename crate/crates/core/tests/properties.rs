mod common;

use entrosep_core::entropy::{
    convolve, cyclic_convolution, direct_sum, majorizes, power_norm, renyi, shannon, tensor, tsallis, EntropyOrder,
    ProbabilityVector,
};
use entrosep_core::linalg::{kron, partial_trace, spectral_norm, ComplexMatrix, Subsystem};
use entrosep_core::majorization::{profile_of, subset_bound};
use entrosep_core::measurements::{eta, rotated_qubit_basis, RankOnePovm};
use entrosep_core::sampling::{gaussian_complex, haar_unitary, random_density, random_pure_state};
use entrosep_core::DensityMatrix;
use proptest::prelude::*;

fn probability(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.0f64..1.0, len).prop_map(|v| {
        let v: Vec<f64> = v.into_iter().map(|x| x + 1e-6).collect();
        let s: f64 = v.iter().sum();
        ProbabilityVector::new(v.into_iter().map(|x| x / s).collect()).unwrap()
    })
}

fn pair(max: usize) -> impl Strategy<Value = (ProbabilityVector, ProbabilityVector)> {
    (1..=max).prop_flat_map(|n| (probability(n..=n), probability(n..=n)))
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = common::rng(seed);
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(&mut rng))
}

fn o(a: f64) -> EntropyOrder {
    EntropyOrder::Finite(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn convolution_contracts_power_norms(
        g in prop::collection::vec(0.0f64..2.0, 1..=8).prop_flat_map(|g| {
            let n = g.len();
            (Just(g), probability(n..=n))
        })
    ) {
        let (g, h) = g;
        let gh = cyclic_convolution(&g, h.as_slice()).unwrap();
        for a in [1.5, 2.0, 3.0] {
            prop_assert!(power_norm(&gh, o(a)) <= power_norm(&g, o(a)) + 1e-10);
        }
        for b in [0.3, 0.5, 0.9] {
            prop_assert!(power_norm(&gh, o(b)) >= power_norm(&g, o(b)) - 1e-10);
        }
    }

    #[test]
    fn convolution_is_majorized_by_factors((p, q) in pair(8)) {
        let pq = convolve(&p, &q).unwrap();
        prop_assert!(majorizes(pq.as_slice(), p.as_slice()).unwrap());
        prop_assert!(majorizes(pq.as_slice(), q.as_slice()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn circulant_witness_is_doubly_stochastic(q in probability(1..=8)) {
        let n = q.len();
        let t = |i: usize, j: usize| q.as_slice()[(i + n - j) % n];
        for i in 0..n {
            prop_assert!(((0..n).map(|j| t(i, j)).sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(((0..n).map(|j| t(j, i)).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn renyi_is_non_increasing(p in probability(1..=8)) {
        let orders = [0.2, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0, 10.0];
        let mut prev = f64::INFINITY;
        for a in orders {
            let r = renyi(&p, o(a));
            prop_assert!(r <= prev + 1e-12);
            prev = r;
        }
        prop_assert!(renyi(&p, EntropyOrder::Infinity) <= prev + 1e-12);
    }

    #[test]
    fn entropies_are_schur_concave(
        p in probability(1..=6), lambda in 0.0f64..1.0
    ) {
        // Averaging p with a permutation of itself yields a ≺ p.
        let n = p.len();
        let shifted: Vec<f64> = (0..n).map(|i| p.as_slice()[(i + 1) % n]).collect();
        let mixed: Vec<f64> = p.as_slice().iter().zip(&shifted).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
        let a = ProbabilityVector::new(mixed).unwrap();
        prop_assert!(majorizes(a.as_slice(), p.as_slice()).unwrap());
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            prop_assert!(renyi(&a, o(alpha)) >= renyi(&p, o(alpha)) - 1e-10);
            prop_assert!(tsallis(&a, o(alpha)).unwrap() >= tsallis(&p, o(alpha)).unwrap() - 1e-10);
        }
    }

    #[test]
    fn renyi_is_continuous_at_one(p in probability(1..=8)) {
        let h = shannon(&p);
        prop_assert!((renyi(&p, o(1.0 + 1e-8)) - h).abs() < 1e-6);
        prop_assert!((renyi(&p, o(1.0 - 1e-8)) - h).abs() < 1e-6);
    }

    #[test]
    fn spectral_norm_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = common::rng(seed);
        let m = random_matrix(n, n, seed ^ 0x5555);
        let u = haar_unitary(n, &mut rng);
        let v = haar_unitary(n, &mut rng);
        let umv = u.matmul(&m).unwrap().matmul(&v).unwrap();
        prop_assert!((spectral_norm(&umv).unwrap() - spectral_norm(&m).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn spectral_norm_is_submultiplicative(seed in any::<u64>(), r in 1usize..=4, k in 1usize..=4, c in 1usize..=4) {
        let a = random_matrix(r, k, seed);
        let b = random_matrix(k, c, seed.wrapping_add(1));
        let ab = a.matmul(&b).unwrap();
        prop_assert!(spectral_norm(&ab).unwrap() <= spectral_norm(&a).unwrap() * spectral_norm(&b).unwrap() + 1e-10);
    }

    #[test]
    fn partial_trace_keeps_unit_trace(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let rho = random_density(da * db, Some((da, db)), &mut common::rng(seed));
        for keep in [Subsystem::A, Subsystem::B] {
            prop_assert!((partial_trace(&rho, keep).unwrap().matrix().trace().re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn kron_trace_factorizes(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let a = random_matrix(n, n, seed);
        let b = random_matrix(m, m, seed.wrapping_mul(3));
        let t = kron(&a, &b).unwrap().trace();
        prop_assert!((t - a.trace() * b.trace()).norm() < 1e-10);
    }

    #[test]
    fn eta_is_symmetric_and_in_range(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = common::rng(seed);
        let f = RankOnePovm::computational_basis(d).transformed(&haar_unitary(d, &mut rng)).unwrap();
        let g = RankOnePovm::computational_basis(d).transformed(&haar_unitary(d, &mut rng)).unwrap();
        let e = eta(&f, &g).unwrap();
        prop_assert!(e > 0.0 && e <= 1.0 + 1e-12);
        prop_assert!((e - eta(&g, &f).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn majorization_relations_hold(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = common::rng(seed);
        let f = RankOnePovm::computational_basis(d).transformed(&haar_unitary(d, &mut rng)).unwrap();
        let g = RankOnePovm::computational_basis(d).transformed(&haar_unitary(d, &mut rng)).unwrap();
        let rho = random_density(d, None, &mut rng);
        let p = f.probabilities(&rho).unwrap();
        let q = g.probabilities(&rho).unwrap();
        let profile = profile_of(&f, &g).unwrap();
        let w = profile.w();
        // p ⊕ q ≺ (1) ⊕ w and p ⊗ q ≺ w'.
        prop_assert!(majorizes(&direct_sum(p.as_slice(), q.as_slice()), &direct_sum(&[1.0], w)).unwrap());
        prop_assert!(majorizes(&tensor(p.as_slice(), q.as_slice()), profile.w_prime()).unwrap());
        let wv = ProbabilityVector::new(w.to_vec()).unwrap();
        for a in [0.5, 1.0] {
            prop_assert!(renyi(&p, o(a)) + renyi(&q, o(a)) >= renyi(&wv, o(a)) - 1e-10);
        }
        for a in [0.5, 1.0, 2.0, 3.0] {
            let lhs = tsallis(&p, o(a)).unwrap() + tsallis(&q, o(a)).unwrap();
            prop_assert!(lhs >= tsallis(&wv, o(a)).unwrap() - 1e-10);
        }
        for a in [1.5, 2.0] {
            let bound = 2.0 / (1.0 - a) * ((1.0 + power_norm(w, o(a)).powf(a)) / 2.0).ln();
            prop_assert!(renyi(&p, o(a)) + renyi(&q, o(a)) >= bound - 1e-10);
        }
    }

    #[test]
    fn constructed_probabilities_sum_to_one(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let mut all = entrosep_core::measurements::prime_pauli_mubs(3).unwrap();
        all.push(entrosep_core::measurements::sic_povm(3).unwrap());
        let rho3 = random_density(3, None, &mut rng);
        for m in &all {
            let p = m.probabilities(&rho3).unwrap();
            prop_assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        let rho2 = random_density(2, None, &mut rng);
        let p = entrosep_core::measurements::sic_povm(2).unwrap().probabilities(&rho2).unwrap();
        prop_assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn subset_bound_is_nearly_tight_on_pure_states() {
    let f = RankOnePovm::computational_basis(2);
    let g = rotated_qubit_basis(std::f64::consts::PI / 6.0);
    let mut rng = common::rng(5);
    for (i, j) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let mut best = 0.0f64;
        let mut rhs = 0.0;
        for _ in 0..1000 {
            let rho = random_pure_state(2, &mut rng);
            let b = subset_bound(&f, &g, &[i], &[j], &rho).unwrap();
            assert!(b.satisfied, "{b:?}");
            best = best.max(b.lhs);
            rhs = b.rhs;
        }
        assert!(rhs - best < 5e-3, "max lhs {best} vs rhs {rhs}");
    }
}

#[test]
fn mixed_state_subset_bound() {
    let f = RankOnePovm::computational_basis(3);
    let mut rng = common::rng(8);
    let g = f.transformed(&haar_unitary(3, &mut rng)).unwrap();
    for _ in 0..200 {
        let rho: DensityMatrix = random_density(3, None, &mut rng);
        let b = subset_bound(&f, &g, &[0, 2], &[1], &rho).unwrap();
        assert!(b.satisfied);
    }
}

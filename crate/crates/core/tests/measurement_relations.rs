mod common;

use entrosep_core::entropy::index_of_coincidence;
use entrosep_core::measurements::{
    gsic_from_sic, mum_from_mubs, prime_pauli_mubs, qubit_pauli_mubs, sic_povm, validate_gsic, validate_mum,
    validate_sic, MumSet,
};
use entrosep_core::sampling::{random_density, random_pure_state};
use entrosep_core::DensityMatrix;

fn mum_index_sum(set: &MumSet, rho: &DensityMatrix) -> f64 {
    set.povms().iter().map(|p| index_of_coincidence(&p.probabilities(rho).unwrap())).sum()
}

#[test]
fn sic_index_of_coincidence_is_exact() {
    let mut rng = common::rng(1);
    for d in [2usize, 3] {
        let sic = sic_povm(d).unwrap();
        let df = d as f64;
        for _ in 0..200 {
            let rho = random_density(d, None, &mut rng);
            let ic = index_of_coincidence(&sic.probabilities(&rho).unwrap());
            assert!((ic - (rho.purity() + 1.0) / (df * (df + 1.0))).abs() < 1e-9);
        }
    }
}

#[test]
fn general_sic_index_of_coincidence_is_exact() {
    let mut rng = common::rng(2);
    for d in [2usize, 3] {
        let df = d as f64;
        for t in [0.1, 0.5, 0.9, 1.0] {
            let g = gsic_from_sic(&sic_povm(d).unwrap(), t).unwrap();
            let a = g.a();
            assert!(validate_gsic(g.povm()).passed());
            for _ in 0..50 {
                let rho = random_density(d, None, &mut rng);
                let ic = index_of_coincidence(&g.povm().probabilities(&rho).unwrap());
                let closed = ((a * df.powi(3) - 1.0) * rho.purity() + df * (1.0 - a * df)) / (df * (df * df - 1.0));
                assert!((ic - closed).abs() < 1e-9, "d={d} t={t}: {ic} vs {closed}");
                assert!(ic <= (a * df * df + 1.0) / (df * (df + 1.0)) + 1e-12);
            }
        }
    }
}

#[test]
fn mum_index_sum_bound_and_saturation() {
    let mut rng = common::rng(3);
    for d in [2usize, 3, 5] {
        let df = d as f64;
        let bases = prime_pauli_mubs(d).unwrap();
        for t in [0.3, 0.8, 1.0] {
            for k in 2..=d + 1 {
                let set = mum_from_mubs(&bases[..k], t).unwrap();
                let kappa = set.kappa();
                let kf = k as f64;
                for _ in 0..20 {
                    let rho = random_density(d, None, &mut rng);
                    let lhs = mum_index_sum(&set, &rho);
                    let rhs = (1.0 - kappa + (kappa * df - 1.0) * rho.purity()) / (df - 1.0) + (kf - 1.0) / df;
                    assert!(lhs <= rhs + 1e-9);
                    assert!(rhs <= kappa + (kf - 1.0) / df + 1e-9);
                    if k == d + 1 {
                        assert!((lhs - rhs).abs() < 1e-9, "complete set saturates: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }
}

#[test]
fn mub_index_sum_bound() {
    let mut rng = common::rng(4);
    for d in [2usize, 3] {
        let bases = prime_pauli_mubs(d).unwrap();
        for k in 1..=d + 1 {
            for _ in 0..50 {
                let rho = random_density(d, None, &mut rng);
                let lhs: f64 = bases[..k].iter().map(|b| index_of_coincidence(&b.probabilities(&rho).unwrap())).sum();
                assert!(lhs <= rho.purity() + (k as f64 - 1.0) / d as f64 + 1e-9);
            }
        }
        // A complete set on a pure state gives Σ = 2, the value behind the
        // Tsallis-2 bound 1 - 2/(d+1).
        let rho = random_pure_state(d, &mut rng);
        let total: f64 = bases.iter().map(|b| index_of_coincidence(&b.probabilities(&rho).unwrap())).sum();
        assert!((total - 2.0).abs() < 1e-9);
    }
}

#[test]
fn validators_report_measured_parameters() {
    let r = validate_mum(mum_from_mubs(&qubit_pauli_mubs(), 0.5).unwrap().povms());
    assert!(r.passed());
    assert!((r.measured("kappa").unwrap() - 0.625).abs() < 1e-12);
    let g = gsic_from_sic(&sic_povm(3).unwrap(), 0.7).unwrap();
    let r = validate_gsic(g.povm());
    assert!(r.passed());
    let a = r.measured("a").unwrap();
    let b = r.measured("b").unwrap();
    assert!((b - (1.0 - 3.0 * a) / (3.0 * 8.0)).abs() < 1e-12);
    assert!(validate_sic(&sic_povm(3).unwrap()).passed());
}

//! Named states and one-parameter families.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{product_state, ComplexMatrix, DensityMatrix, C64};
use crate::measurements::weyl_eigenbasis;
use crate::{tol, Error, Result};

/// `(|00⟩ + |11⟩)/√2`.
pub fn max_entangled_phi() -> Vec<C64> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    alloc::vec![h, z, z, h]
}

/// `(|z₀x₀⟩ + |z₁x₂⟩ + |z₂x₁⟩)/√3`, with `X|x_k⟩ = ω^k|x_k⟩`.
pub fn qutrit_psi() -> Vec<C64> {
    let x = weyl_eigenbasis(3, 0);
    let scale = 1.0 / 3f64.sqrt();
    let mut psi = alloc::vec![C64::new(0.0, 0.0); 9];
    for i in 0..3 {
        let mut z = alloc::vec![C64::new(0.0, 0.0); 3];
        z[i] = C64::new(1.0, 0.0);
        let xk = x.vector((3 - i) % 3);
        for (acc, v) in psi.iter_mut().zip(z.iter().flat_map(|a| xk.iter().map(move |b| a * b))) {
            *acc += v * scale;
        }
    }
    psi
}

fn check_parameter(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!("mixing parameter must lie in [0, 1], got {c}")));
    }
    Ok(())
}

/// `(1-c) I/n + c|ψ⟩⟨ψ|` on a `dA × dB` system.
pub fn noisy_pure(psi: &[C64], c: f64, dims: (usize, usize)) -> Result<DensityMatrix> {
    check_parameter(c)?;
    let n = dims.0 * dims.1;
    if psi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: psi.len() });
    }
    let m = ComplexMatrix::identity(n).scale_real((1.0 - c) / n as f64).add(&ComplexMatrix::projector(psi).scale_real(c))?;
    DensityMatrix::new(m, Some(dims))
}

/// Two-qubit Werner state `(1-c)/4 I + c|Φ⟩⟨Φ|`, separable iff `c ≤ 1/3`.
pub fn werner_qubit(c: f64) -> Result<DensityMatrix> {
    noisy_pure(&max_entangled_phi(), c, (2, 2))
}

/// `(1-c)/9 I + c|Ψ⟩⟨Ψ|` built on [`qutrit_psi`], separable iff `c ≤ 1/4`.
pub fn qutrit_family(c: f64) -> Result<DensityMatrix> {
    noisy_pure(&qutrit_psi(), c, (3, 3))
}

/// `Σ λ ρ_A ⊗ ρ_B`.
pub fn product_mixture(components: &[(f64, DensityMatrix, DensityMatrix)]) -> Result<DensityMatrix> {
    if components.is_empty() {
        return Err(Error::Usage("product mixture needs at least one component".into()));
    }
    if let Some((w, _, _)) = components.iter().find(|(w, _, _)| w.is_nan() || *w < 0.0) {
        return Err(Error::Usage(format!("negative mixture weight {w}")));
    }
    let total: f64 = components.iter().map(|(w, _, _)| w).sum();
    if (total - 1.0).abs() > tol::PROB {
        return Err(Error::Usage(format!("mixture weights sum to {total}")));
    }
    let products = components.iter().map(|(_, a, b)| product_state(a, b)).collect::<Result<Vec<_>>>()?;
    let parts: Vec<(f64, &DensityMatrix)> = components.iter().zip(&products).map(|((w, _, _), p)| (*w, p)).collect();
    DensityMatrix::mixture(&parts)
}

/// A named one-parameter family `c ↦ ρ(c)` on `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct StateFamily {
    pub name: &'static str,
    pub dims: (usize, usize),
    pub parameter_name: &'static str,
    pub generator: fn(f64) -> Result<DensityMatrix>,
    /// Largest parameter for which the state is known to be separable.
    pub separability_limit: Option<f64>,
}

impl StateFamily {
    pub fn werner_qubit() -> Self {
        Self { name: "werner-qubit", dims: (2, 2), parameter_name: "c", generator: werner_qubit, separability_limit: Some(1.0 / 3.0) }
    }

    pub fn qutrit() -> Self {
        Self { name: "qutrit-psi", dims: (3, 3), parameter_name: "c", generator: qutrit_family, separability_limit: Some(0.25) }
    }

    pub fn all() -> [Self; 2] {
        [Self::werner_qubit(), Self::qutrit()]
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|f| f.name == name)
    }

    pub fn at(&self, c: f64) -> Result<DensityMatrix> {
        (self.generator)(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, inner, Subsystem};
    use crate::measurements::{clock, shift};
    use approx::assert_abs_diff_eq;

    #[test]
    fn phi_is_maximally_entangled() {
        let phi = max_entangled_phi();
        assert_abs_diff_eq!(inner(&phi, &phi).re, 1.0, epsilon = 1e-15);
        let rho = DensityMatrix::pure(&phi, Some((2, 2))).unwrap();
        let reduced = rho.partial_trace(Subsystem::A).unwrap();
        assert!(reduced.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap() < 1e-15);
    }

    #[test]
    fn werner_endpoints() {
        let w0 = werner_qubit(0.0).unwrap();
        assert!(w0.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap() < 1e-15);
        let w1 = werner_qubit(1.0).unwrap();
        assert!(w1.matrix().max_abs_diff(&ComplexMatrix::projector(&max_entangled_phi())).unwrap() < 1e-15);
        assert!(matches!(werner_qubit(1.2), Err(Error::Domain(_))));
        assert!(matches!(werner_qubit(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn werner_ppt_boundary() {
        let pt = werner_qubit(1.0 / 3.0).unwrap().partial_transpose().unwrap();
        assert_abs_diff_eq!(hermitian_eigenvalues(&pt).unwrap()[0], 0.0, epsilon = 1e-12);
        let pt = werner_qubit(0.5).unwrap().partial_transpose().unwrap();
        assert!(hermitian_eigenvalues(&pt).unwrap()[0] < -0.1);
    }

    #[test]
    fn werner_purity() {
        for k in 0..=10 {
            let c = k as f64 / 10.0;
            let rho = werner_qubit(c).unwrap();
            assert_abs_diff_eq!(rho.purity(), (1.0 + 3.0 * c * c) / 4.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn psi_eigen_relations() {
        let psi = qutrit_psi();
        let z = clock(3);
        let x = shift(3);
        let zx = z.matmul(&x).unwrap();
        let omega = C64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        let cases = [
            (crate::linalg::kron(&z, &x).unwrap(), C64::new(1.0, 0.0)),
            (crate::linalg::kron(&x, &z).unwrap(), C64::new(1.0, 0.0)),
            (crate::linalg::kron(&zx, &zx).unwrap(), omega),
        ];
        for (op, lambda) in cases {
            let out = op.apply(&psi).unwrap();
            for (a, b) in out.iter().zip(&psi) {
                assert_abs_diff_eq!((a - lambda * b).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn family_grid_is_valid() {
        for family in StateFamily::all() {
            for k in 0..=10 {
                let rho = family.at(k as f64 / 10.0).unwrap();
                assert_eq!(rho.subsystem_dims(), Some(family.dims));
            }
        }
        let q0 = qutrit_family(0.0).unwrap();
        assert!(q0.matrix().max_abs_diff(&ComplexMatrix::identity(9).scale_real(1.0 / 9.0)).unwrap() < 1e-15);
    }

    #[test]
    fn product_mixture_examples() {
        let z0 = DensityMatrix::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], None).unwrap();
        let z1 = DensityMatrix::pure(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], None).unwrap();
        let single = product_mixture(&[(1.0, z0.clone(), z1.clone())]).unwrap();
        assert!(single.matrix().max_abs_diff(product_state(&z0, &z1).unwrap().matrix()).unwrap() < 1e-15);
        let mix = product_mixture(&[(0.5, z0.clone(), z0.clone()), (0.5, z1.clone(), z1.clone())]).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(mix.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
        assert!(matches!(product_mixture(&[(0.7, z0.clone(), z0)]), Err(Error::Usage(_))));
    }
}

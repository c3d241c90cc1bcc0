//! Random states for property tests and false-positive sweeps.
//!
//! All samplers take a caller-supplied RNG so that runs are reproducible
//! from a seed.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::entropy::ProbabilityVector;
use crate::linalg::{inner, product_state, vector_norm, ComplexMatrix, DensityMatrix, C64};
use crate::states::product_mixture;
use crate::{Error, Result};

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unit vector.
pub fn haar_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        let n = vector_norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Haar-random unitary via Gram–Schmidt on Gaussian columns.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<C64> = (0..d).map(|_| gaussian_complex(rng)).collect();
        for u in &cols {
            let c = inner(u, &v);
            for (x, y) in v.iter_mut().zip(u) {
                *x -= c * y;
            }
        }
        let n = vector_norm(&v);
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::pure(&haar_vector(d, rng), None).expect("unit vector")
}

/// Full-rank density matrix `G G† / Tr(G G†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(d: usize, dims: Option<(usize, usize)>, rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let m = g.matmul(&g.adjoint()).expect("square");
    let m = m.scale_real(1.0 / m.trace().re);
    let herm = m.add(&m.adjoint()).expect("square").scale_real(0.5);
    DensityMatrix::new(herm, dims).expect("Ginibre matrices are density matrices")
}

/// Uniform point on the probability simplex.
pub fn random_probability_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> ProbabilityVector {
    let e: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = e.iter().sum();
    ProbabilityVector::new(e.into_iter().map(|x| x / total).collect()).expect("normalized")
}

pub fn random_product_state<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> DensityMatrix {
    product_state(&random_pure_state(da, rng), &random_pure_state(db, rng)).expect("product")
}

/// Convex mixture of `1..=max_components` Haar-random pure product states
/// with flat Dirichlet weights.
pub fn random_separable<R: Rng + ?Sized>(da: usize, db: usize, max_components: usize, rng: &mut R) -> Result<DensityMatrix> {
    if max_components == 0 {
        return Err(Error::Usage("need at least one component".into()));
    }
    let n = rng.random_range(1..=max_components);
    let weights = random_probability_vector(n, rng);
    let components: Vec<_> = weights
        .as_slice()
        .iter()
        .map(|&w| (w, random_pure_state(da, rng), random_pure_state(db, rng)))
        .collect();
    product_mixture(&components)
}

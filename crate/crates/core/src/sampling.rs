//! Seeded generators for random states and channels, shared by the property
//! tests and the CLI verification suites.

use num_complex::Complex64;
use rand::Rng;

use crate::channels::KrausChannel;
use crate::qmat::{ComplexMatrix, DensityMatrix};

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; avoids pulling in rand_distr
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m.set(
                i,
                j,
                Complex64::new(standard_normal(rng), standard_normal(rng)),
            );
        }
    }
    m
}

/// Random full-rank density matrix G G† / Tr[G G†].
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let pos = g.matmul(&g.adjoint());
    let tr = pos.trace().re;
    DensityMatrix::new(pos.scale(Complex64::new(1.0 / tr, 0.0)))
        .expect("Ginibre construction is PSD with unit trace")
}

/// Random qubit thermal state diag(f, 1−f) with f uniform in (0, 1/2).
pub fn random_thermal_qubit<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let f = rng.random_range(0.001..0.499);
    DensityMatrix::thermal_qubit(f).expect("population in range")
}

/// Random normalized pure state.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let mut ket: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
        .collect();
    let norm: f64 = ket.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut ket {
        *a /= norm;
    }
    ket
}

/// Random CPTP channel with `n_ops` Kraus operators: Ginibre matrices
/// whitened by S^{-1/2} with S = Σ G†G.
pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, dim: usize, n_ops: usize) -> KrausChannel {
    assert!(n_ops >= 1);
    let gs: Vec<ComplexMatrix> = (0..n_ops).map(|_| ginibre(rng, dim)).collect();
    let mut s = ComplexMatrix::zeros(dim);
    for g in &gs {
        s = s.add(&g.adjoint().matmul(g));
    }
    let (eigs, v) = s.hermitian_eigen();
    let mut inv_sqrt = ComplexMatrix::zeros(dim);
    for k in 0..dim {
        let w = 1.0 / eigs[k].sqrt();
        for i in 0..dim {
            for j in 0..dim {
                let add = v.get(i, k) * v.get(j, k).conj() * w;
                inv_sqrt.set(i, j, inv_sqrt.get(i, j) + add);
            }
        }
    }
    let ops = gs.into_iter().map(|g| g.matmul(&inv_sqrt)).collect();
    KrausChannel::new(ops, format!("random({n_ops} ops)"))
        .expect("whitening enforces completeness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_channel_is_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for n in 1..=4 {
            let ch = random_channel(&mut rng, 2, n);
            assert!(ch.validate().passes);
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_density(&mut ChaCha8Rng::seed_from_u64(5), 4);
        let b = random_density(&mut ChaCha8Rng::seed_from_u64(5), 4);
        assert_eq!(a.mat().entries(), b.mat().entries());
    }
}

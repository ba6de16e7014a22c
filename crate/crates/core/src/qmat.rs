//! Dense complex matrices and the quantum-state utilities the rest of the
//! crate builds on: Kronecker products, partial traces, Kraus sandwiches,
//! a Hermitian Jacobi eigensolver for the small dimensions used here (≤ 16),
//! and density-matrix validation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (Hermiticity, trace, completeness).
pub const TOL_ALGEBRA: f64 = 1e-12;
/// Tolerance for eigenvalue nonnegativity; looser than [`TOL_ALGEBRA`] to
/// absorb accumulated rounding in 16×16 products.
pub const TOL_EIGEN: f64 = 1e-10;
/// Outcome probabilities below this are treated as impossible.
pub const TOL_PROB: f64 = 1e-14;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Builds a matrix from a row-major slice of entries.
    pub fn from_slice(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        Ok(Self {
            dim,
            data: entries.to_vec(),
        })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let data: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_slice(dim, &data)
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// |i⟩⟨j| scaled by `amp`.
    pub fn ketbra(dim: usize, i: usize, j: usize, amp: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        m.set(i, j, amp);
        m
    }

    /// Outer product |u⟩⟨v| of two vectors of equal length.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len());
        let dim = u.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, u[i] * v[j].conj());
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise |a - b|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise |m - m†|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// A ρ A† for this matrix A.
    pub fn sandwich(&self, rho: &Self) -> Self {
        self.matmul(rho).matmul(&self.adjoint())
    }

    /// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic complex
    /// Jacobi rotations. Returns (eigenvalues ascending, V) with A = V Λ V†,
    /// eigenvectors in the columns of V.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        let n = self.dim;
        let mut a = self.clone();
        let mut v = ComplexMatrix::identity(n);
        let scale = self.max_abs().max(1.0);

        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a.get(p, q).norm());
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    if r <= 1e-18 * scale {
                        continue;
                    }
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let phase = apq / r;
                    // rotation angle zeroing the (p,q) element of the 2x2 block
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let sp = phase * s;
                    // columns p,q of A and V: right-multiply by the rotation,
                    // then left-multiply A by its adjoint
                    for i in 0..n {
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        a.set(i, p, aip * c - aiq * sp.conj());
                        a.set(i, q, aip * sp + aiq * c);
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, vip * c - viq * sp.conj());
                        v.set(i, q, vip * sp + viq * c);
                    }
                    for j in 0..n {
                        let apj = a.get(p, j);
                        let aqj = a.get(q, j);
                        a.set(p, j, apj * c - aqj * sp);
                        a.set(q, j, apj * sp.conj() + aqj * c);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
        let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
        let mut vs = ComplexMatrix::zeros(n);
        for (newcol, &oldcol) in order.iter().enumerate() {
            for i in 0..n {
                vs.set(i, newcol, v.get(i, oldcol));
            }
        }
        (sorted, vs)
    }

    /// Hermitian PSD square root via spectral decomposition. Eigenvalues in
    /// [-TOL_EIGEN, 0) are clamped to zero; anything lower is an error.
    pub fn sqrt_psd(&self) -> Result<ComplexMatrix> {
        let (eigs, v) = self.hermitian_eigen();
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let lam = eigs[k];
            if lam < -TOL_EIGEN {
                return Err(Error::InvalidDensityMatrix(format!(
                    "matrix is not PSD: eigenvalue {lam:.3e}"
                )));
            }
            let s = lam.max(0.0).sqrt();
            if s == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let add = v.get(i, k) * v.get(j, k).conj() * s;
                    out.set(i, j, out.get(i, j) + add);
                }
            }
        }
        Ok(out)
    }
}

/// Kronecker product with the left factor as the most significant subsystem.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n);
    for ia in 0..da {
        for ja in 0..da {
            let x = a.get(ia, ja);
            if x == Complex64::ZERO {
                continue;
            }
            for ib in 0..db {
                for jb in 0..db {
                    out.set(ia * db + ib, ja * db + jb, x * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Kronecker product of several factors, leftmost most significant.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for f in factors {
        out = kron(&out, f);
    }
    out
}

fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

fn flatten(parts: &[usize], dims: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (&p, &d)| acc * d + p)
}

/// Partial trace over the subsystems NOT listed in `keep`. `dims` factorizes
/// the matrix dimension, leftmost factor most significant.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if total != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {:?} do not factorize dim {}",
            dims,
            m.dim()
        )));
    }
    if keep.is_empty() || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::DimensionMismatch(format!(
            "invalid keep set {:?} for {} subsystems",
            keep,
            dims.len()
        )));
    }
    let kdims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let dk: usize = kdims.iter().product();
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let tdims: Vec<usize> = traced.iter().map(|&t| dims[t]).collect();
    let dt: usize = tdims.iter().product();

    let mut out = ComplexMatrix::zeros(dk);
    let mut row = vec![0usize; dims.len()];
    let mut col = vec![0usize; dims.len()];
    for ik in 0..dk {
        let kr = unflatten(ik, &kdims);
        for jk in 0..dk {
            let kc = unflatten(jk, &kdims);
            let mut acc = Complex64::ZERO;
            for it in 0..dt {
                let tr = unflatten(it, &tdims);
                for (slot, &k) in keep.iter().enumerate() {
                    row[k] = kr[slot];
                    col[k] = kc[slot];
                }
                for (slot, &t) in traced.iter().enumerate() {
                    row[t] = tr[slot];
                    col[t] = tr[slot];
                }
                acc += m.get(flatten(&row, dims), flatten(&col, dims));
            }
            out.set(ik, jk, acc);
        }
    }
    Ok(out)
}

/// Reorders the subsystem factors of `m` according to `perm`, where the new
/// factor at position k is the old factor `perm[k]`.
pub fn permute_subsystems(m: &ComplexMatrix, dims: &[usize], perm: &[usize]) -> ComplexMatrix {
    let total: usize = dims.iter().product();
    assert_eq!(total, m.dim());
    assert_eq!(perm.len(), dims.len());
    let ndims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = ComplexMatrix::zeros(total);
    for i in 0..total {
        let pi = unflatten(i, &ndims);
        let mut oi = vec![0; dims.len()];
        for (k, &p) in perm.iter().enumerate() {
            oi[p] = pi[k];
        }
        let src_i = flatten(&oi, dims);
        for j in 0..total {
            let pj = unflatten(j, &ndims);
            let mut oj = vec![0; dims.len()];
            for (k, &p) in perm.iter().enumerate() {
                oj[p] = pj[k];
            }
            out.set(i, j, m.get(src_i, flatten(&oj, dims)));
        }
    }
    out
}

/// Σ K ρ K† over a list of operators of matching dimension.
pub fn apply_kraus(ops: &[ComplexMatrix], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in ops {
        if k.dim() != rho.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator dim {} does not match state dim {}",
                k.dim(),
                rho.dim()
            )));
        }
        out = out.add(&k.sandwich(rho));
    }
    Ok(out)
}

/// Projects one qubit factor of an n-qubit state onto |±⟩ = (|0⟩ ± |1⟩)/√2
/// and returns the (unnormalized) state of the remaining qubits together
/// with the outcome probability. `qubit` counts from the most significant
/// factor; `plus` selects the sign.
pub fn measure_qubit_pm(
    state: &ComplexMatrix,
    n_qubits: usize,
    qubit: usize,
    plus: bool,
) -> (f64, ComplexMatrix) {
    let dims = vec![2usize; n_qubits];
    assert_eq!(state.dim(), 1 << n_qubits);
    let sgn = if plus { 1.0 } else { -1.0 };
    let amp = [
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(sgn * std::f64::consts::FRAC_1_SQRT_2, 0.0),
    ];
    let rest: Vec<usize> = (0..n_qubits).filter(|&q| q != qubit).collect();
    let rdims: Vec<usize> = rest.iter().map(|&q| dims[q]).collect();
    let dr: usize = rdims.iter().product();

    let mut out = ComplexMatrix::zeros(dr);
    let mut row = vec![0usize; n_qubits];
    let mut col = vec![0usize; n_qubits];
    for i in 0..dr {
        let ri = unflatten(i, &rdims);
        for j in 0..dr {
            let rj = unflatten(j, &rdims);
            let mut acc = Complex64::ZERO;
            for c in 0..2 {
                for d in 0..2 {
                    for (slot, &q) in rest.iter().enumerate() {
                        row[q] = ri[slot];
                        col[q] = rj[slot];
                    }
                    row[qubit] = c;
                    col[qubit] = d;
                    acc += amp[c].conj() * state.get(flatten(&row, &dims), flatten(&col, &dims))
                        * amp[d];
                }
            }
            out.set(i, j, acc);
        }
    }
    (out.trace().re, out)
}

/// Density matrix: Hermitian, unit trace, PSD within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let herm = mat.hermiticity_defect();
        if herm > TOL_ALGEBRA {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian, defect {herm:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TOL_ALGEBRA || tr.im.abs() > TOL_ALGEBRA {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {tr} is not 1"
            )));
        }
        let (eigs, _) = mat.hermitian_eigen();
        if let Some(&lam) = eigs.first() {
            if lam < -TOL_EIGEN {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {lam:.3e}"
                )));
            }
        }
        Ok(Self { mat })
    }

    /// Qubit thermal state diag(f, 1-f) in the (|e⟩, |g⟩) basis, f the
    /// excited-state population.
    pub fn thermal_qubit(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::OutOfRange(format!("population {f} not in [0,1]")));
        }
        Self::new(ComplexMatrix::diagonal(&[
            Complex64::new(f, 0.0),
            Complex64::new(1.0 - f, 0.0),
        ]))
    }

    pub fn from_pure(ket: &[Complex64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > TOL_ALGEBRA {
            return Err(Error::InvalidDensityMatrix(format!(
                "ket norm² = {norm}, expected 1"
            )));
        }
        Self::new(ComplexMatrix::outer(ket, ket))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { mat: m }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMatrix {
        self.mat
    }

    /// Excited-state population of a qubit state (entry at |e⟩⟨e| = (0,0)).
    pub fn excited_population(&self) -> f64 {
        self.mat.get(0, 0).re
    }

    /// ½‖ρ−σ‖₁ via the eigenvalues of the Hermitian difference.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        let diff = self.mat.sub(&other.mat);
        let (eigs, _) = diff.hermitian_eigen();
        0.5 * eigs.iter().map(|l| l.abs()).sum::<f64>()
    }
}

/// Effective temperature of a qubit with excited population `f` and gap
/// `omega`: T = ω / ln((1−f)/f), extended to 0 at f = 0, +∞ at f = 1/2 and
/// negative values for inverted populations f > 1/2.
pub fn eff_temperature(f: f64, omega: f64) -> f64 {
    assert!((0.0..=1.0).contains(&f), "population out of range");
    if f == 0.0 {
        return 0.0;
    }
    if f == 0.5 {
        return f64::INFINITY;
    }
    omega / ((1.0 - f) / f).ln()
}

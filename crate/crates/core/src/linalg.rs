//! Small dense complex matrices.
//!
//! Everything in the crate lives in dimension 2, 4 or 16, so the matrix type
//! is a plain row-major buffer with just the operations the entanglement
//! formulas need: products, transposes, determinants, traces of powers and a
//! cyclic Jacobi eigenvalue solver for Hermitian input.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Entrywise tolerance for the Hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues of a density matrix in `[-CLAMP_FLOOR, 0)` are set to zero.
pub const CLAMP_FLOOR: f64 = 1e-8;

const MAX_SWEEPS: usize = 30;
const OFF_DIAGONAL_STOP: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from Hermiticity, `max |m - m†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

impl Index<(usize, usize)> for ComplexMat {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMat {
    type Output = ComplexMat;

    fn mul(self, rhs: &ComplexMat) -> ComplexMat {
        self.matmul(rhs)
    }
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

fn require_square(m: &ComplexMat, expected: &'static str, n: Option<usize>) -> Result<()> {
    let ok = m.is_square() && n.is_none_or(|n| m.rows == n);
    if ok {
        Ok(())
    } else {
        Err(Error::Shape {
            expected,
            rows: m.rows,
            cols: m.cols,
        })
    }
}

/// Determinant of a 4x4 matrix by LU elimination with partial pivoting.
pub fn determinant4(m: &ComplexMat) -> Result<C64> {
    require_square(m, "4x4", Some(4))?;
    Ok(determinant(m))
}

pub(crate) fn determinant(m: &ComplexMat) -> C64 {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
            .unwrap_or(col);
        if a[(pivot, col)].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        for r in col + 1..n {
            let factor = a[(r, col)] / p;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let v = a[(col, j)];
                a[(r, j)] -= factor * v;
            }
        }
    }
    det
}

/// `Tr(m^k)` by repeated multiplication.
pub fn trace_power(m: &ComplexMat, k: u32) -> Result<C64> {
    require_square(m, "square", None)?;
    if k == 0 {
        return Ok(C64::new(m.rows as f64, 0.0));
    }
    let mut acc = m.clone();
    for _ in 1..k {
        acc = acc.matmul(m);
    }
    Ok(acc.trace())
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted descending. No clamping is applied.
pub fn hermitian_eigenvalues(m: &ComplexMat) -> Result<HermitianSpectrum> {
    require_square(m, "square", None)?;
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let n = m.rows;
    let mut a = m.clone();
    // symmetrize so that the rotations act on an exactly Hermitian matrix
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < OFF_DIAGONAL_STOP * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(HermitianSpectrum { eigenvalues })
}

fn jacobi_rotate(a: &mut ComplexMat, p: usize, q: usize) {
    let n = a.rows;
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    // make the pivot real with a diagonal phase on index q
    let phase = apq / g;
    for k in 0..n {
        a[(k, q)] *= phase.conj();
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
}

/// Spectrum of a density matrix: eigenvalues clamped into `[0, 1]` and
/// renormalized to sum to one.
///
/// Eigenvalues below `-CLAMP_FLOOR` are reported as an error rather than
/// silently repaired.
pub fn density_spectrum(m: &ComplexMat) -> Result<HermitianSpectrum> {
    let raw = hermitian_eigenvalues(m)?;
    if let Some(&lowest) = raw.eigenvalues.last() {
        if lowest < -CLAMP_FLOOR {
            return Err(Error::NegativeEigenvalue { value: lowest });
        }
    }
    let mut eigenvalues: Vec<f64> = raw.eigenvalues.iter().map(|&x| x.clamp(0.0, 1.0)).collect();
    let total: f64 = eigenvalues.iter().sum();
    if total > 0.0 {
        eigenvalues.iter_mut().for_each(|x| *x /= total);
    }
    Ok(HermitianSpectrum { eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn j_matrix() -> ComplexMat {
        ComplexMat::from_real(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, -1.0, 0.0, //
                0.0, -1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0,
            ],
        )
    }

    fn random_matrix(rng: &mut impl Rng, n: usize) -> ComplexMat {
        ComplexMat::from_vec(
            n,
            n,
            (0..n * n)
                .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect(),
        )
    }

    fn random_density(rng: &mut impl Rng) -> ComplexMat {
        let g = random_matrix(rng, 4);
        let rho = g.matmul(&g.adjoint());
        let tr = rho.trace();
        rho.scale(tr.inv())
    }

    #[test]
    fn determinant_examples() {
        assert!((determinant4(&ComplexMat::identity(4)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        // cofactor expansion of J by hand: +1
        assert!((determinant4(&j_matrix()).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let mut rank_one = ComplexMat::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            rank_one[(i, j)] = c(0.5, 0.0);
        }
        assert!(determinant4(&rank_one).unwrap().norm() < 1e-15);
        assert!(matches!(
            determinant4(&ComplexMat::identity(2)),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn determinant_matches_permutation_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 4);
        // Leibniz formula over the 24 permutations
        let mut perms = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, cc, d];
                        let mut seen = [false; 4];
                        if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let leibniz: C64 = perms
            .iter()
            .map(|p| {
                let mut inversions = 0;
                for i in 0..4 {
                    for j in i + 1..4 {
                        if p[i] > p[j] {
                            inversions += 1;
                        }
                    }
                }
                let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                (0..4).map(|i| m[(i, p[i])]).product::<C64>() * sign
            })
            .sum();
        let lu = determinant4(&m).unwrap();
        assert!((lu - leibniz).norm() <= 1e-12 * leibniz.norm().max(1.0));
    }

    #[test]
    fn trace_power_examples() {
        assert_eq!(trace_power(&ComplexMat::identity(4), 1).unwrap(), c(4.0, 0.0));
        assert!((trace_power(&j_matrix(), 2).unwrap() - c(4.0, 0.0)).norm() < 1e-15);
        // GHZ4: T has 1/sqrt2 at (0,0) and (3,3)
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut t = ComplexMat::zeros(4, 4);
        t[(0, 0)] = c(h, 0.0);
        t[(3, 3)] = c(h, 0.0);
        let j = j_matrix();
        let m = t.matmul(&j).matmul(&t.transpose()).matmul(&j);
        assert!((trace_power(&m, 1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eigenvalue_examples() {
        let quarter = ComplexMat::identity(4).scale(c(0.25, 0.0));
        let sp = hermitian_eigenvalues(&quarter).unwrap();
        assert!(sp.eigenvalues.iter().all(|&x| (x - 0.25).abs() < 1e-15));

        let d = ComplexMat::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(density_spectrum(&d).unwrap().eigenvalues, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_non_hermitian_and_negative() {
        let mut m = ComplexMat::identity(4);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NonHermitian { .. })));

        let neg = ComplexMat::diagonal(&[c(1.1, 0.0), c(-0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(density_spectrum(&neg), Err(Error::NegativeEigenvalue { .. })));

        let tiny = ComplexMat::diagonal(&[c(1.0, 0.0), c(-1e-12, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let sp = density_spectrum(&tiny).unwrap();
        assert_eq!(sp.eigenvalues[3], 0.0);
        assert!((sp.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = ComplexMat::from_vec(2, 2, vec![c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]);
        let sp = hermitian_eigenvalues(&m).unwrap();
        let mean = 0.5;
        let rad = (0.2f64.powi(2) + 0.05).sqrt();
        assert!((sp.eigenvalues[0] - (mean + rad)).abs() < 1e-14);
        assert!((sp.eigenvalues[1] - (mean - rad)).abs() < 1e-14);
    }

    #[test]
    fn spectral_reconstruction_on_random_densities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let rho = random_density(&mut rng);
            let sp = hermitian_eigenvalues(&rho).unwrap();
            let s1: f64 = sp.eigenvalues.iter().sum();
            let s2: f64 = sp.eigenvalues.iter().map(|x| x * x).sum();
            assert!((s1 - rho.trace().re).abs() < 1e-10);
            assert!((s2 - trace_power(&rho, 2).unwrap().re).abs() < 1e-9);
        }
    }

    fn random_unitary(rng: &mut impl Rng) -> ComplexMat {
        // Gram-Schmidt on the columns of a random matrix
        let g = random_matrix(rng, 4);
        let mut cols: Vec<Vec<C64>> = Vec::new();
        for j in 0..4 {
            let mut v: Vec<C64> = (0..4).map(|i| g[(i, j)]).collect();
            for u in &cols {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(u).for_each(|(x, a)| *x -= proj * a);
            }
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
        let mut u = ComplexMat::zeros(4, 4);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                u[(i, j)] = x;
            }
        }
        u
    }

    #[test]
    fn determinant_is_multiplicative_on_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_unitary(&mut rng);
            let b = random_unitary(&mut rng);
            assert!(a.matmul(&a.adjoint()).max_abs_diff(&ComplexMat::identity(4)) < 1e-12);
            let lhs = determinant4(&a.matmul(&b)).unwrap();
            let rhs = determinant4(&a).unwrap() * determinant4(&b).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm());
            assert!((rhs.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_is_permutation_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let perm = [2usize, 0, 3, 1];
        let mut pm = ComplexMat::zeros(4, 4);
        for (i, &j) in perm.iter().enumerate() {
            pm[(i, j)] = c(1.0, 0.0);
        }
        for _ in 0..200 {
            let rho = random_density(&mut rng);
            let conj = pm.matmul(&rho).matmul(&pm.transpose());
            let a = hermitian_eigenvalues(&rho).unwrap();
            let b = hermitian_eigenvalues(&conj).unwrap();
            for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }
}

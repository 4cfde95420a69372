//! Four-qubit pure states, the Bell⊗Bell ("magic") basis, the named states
//! and the samplers for the distinguished families.
//!
//! Amplitude index convention: `i = 8a + 4b + 2c + d` for the basis ket
//! `|abcd⟩` on qubits (A, B, C, D). Qubit A is the most significant bit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{determinant, ComplexMat};

/// Norm tolerance for states accepted by the measure operations.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const MAX_SAMPLER_ATTEMPTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    C,
    D,
}

impl Qubit {
    pub const ALL: [Qubit; 4] = [Qubit::A, Qubit::B, Qubit::C, Qubit::D];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Bit position of this qubit inside an amplitude index.
    pub fn shift(self) -> usize {
        3 - self.index()
    }

    pub fn from_index(i: usize) -> Option<Qubit> {
        Self::ALL.get(i).copied()
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = ['A', 'B', 'C', 'D'][self.index()];
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState4 {
    amps: [C64; 16],
}

impl PureState4 {
    pub fn new(amps: [C64; 16]) -> Self {
        Self { amps }
    }

    pub fn from_slice(amps: &[C64]) -> Result<Self> {
        let amps: [C64; 16] = amps.try_into().map_err(|_| Error::IndexOutOfRange {
            index: amps.len(),
            bound: 16,
        })?;
        Ok(Self { amps })
    }

    /// The computational basis ket `|index⟩`.
    pub fn basis(index: usize) -> Result<Self> {
        if index >= 16 {
            return Err(Error::IndexOutOfRange { index, bound: 16 });
        }
        let mut amps = [ZERO; 16];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &[C64; 16] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    /// Errors unless the norm is within `NORM_TOL` of one.
    pub fn require_normalized(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOL {
            Err(Error::NotNormalized { norm: n })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            amps: self.amps.map(|a| a * c),
        }
    }

    /// Complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self {
            amps: self.amps.map(|a| a.conj()),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest amplitude-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance to `other` after removing the relative global phase.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let overlap = self.inner(other);
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.scale(phase).max_abs_diff(other)
    }
}

impl std::ops::Add for PureState4 {
    type Output = PureState4;

    fn add(self, rhs: Self) -> Self {
        let mut amps = self.amps;
        amps.iter_mut().zip(rhs.amps).for_each(|(a, b)| *a += b);
        Self { amps }
    }
}

/// Coordinates `z₀..z₃` in the basis `u₀..u₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagicCoeffs {
    pub z: [C64; 4],
}

impl MagicCoeffs {
    pub fn new(z: [C64; 4]) -> Self {
        Self { z }
    }

    pub fn norm(&self) -> f64 {
        self.z.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self {
            z: self.z.map(|a| a / n),
        })
    }

    pub fn require_normalized(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOL {
            Err(Error::NotNormalized { norm: n })
        } else {
            Ok(())
        }
    }

    /// `Σ z_j²`, whose squared modulus is the 4-tangle on class 𝒜.
    pub fn square_sum(&self) -> C64 {
        self.z.iter().map(|a| a * a).sum()
    }
}

/// Polar parameters `z_j = √p_j e^{iθ_j}` of a state in the class ℳ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassMParams {
    pub p: [f64; 4],
    pub theta: [f64; 4],
}

impl ClassMParams {
    pub const SUM_TOL: f64 = 1e-12;
    pub const CLOSURE_TOL: f64 = 1e-10;

    /// Validates membership: `Σp = 1` and `Σ p_j e^{2iθ_j} = 0`.
    pub fn new(p: [f64; 4], theta: [f64; 4]) -> Result<Self> {
        if p.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::OutOfDomain {
                what: "p_j",
                value: p.iter().copied().fold(f64::INFINITY, f64::min),
                domain: "[0, 1]",
            });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::OutOfDomain {
                what: "sum of p_j",
                value: sum,
                domain: "{1}",
            });
        }
        let params = Self { p, theta };
        let closure = params.closure_residual();
        if closure > Self::CLOSURE_TOL {
            return Err(Error::OutOfDomain {
                what: "|sum p_j exp(2i theta_j)|",
                value: closure,
                domain: "{0}",
            });
        }
        Ok(params)
    }

    pub fn closure_residual(&self) -> f64 {
        self.p
            .iter()
            .zip(&self.theta)
            .map(|(&p, &t)| C64::from_polar(p, 2.0 * t))
            .sum::<C64>()
            .norm()
    }

    pub fn to_magic(&self) -> MagicCoeffs {
        let mut z = [ZERO; 4];
        for j in 0..4 {
            z[j] = C64::from_polar(self.p[j].sqrt(), self.theta[j]);
        }
        MagicCoeffs { z }
    }
}

fn bell(j: usize) -> [f64; 4] {
    let h = FRAC_1_SQRT_2;
    match j {
        0 => [h, 0.0, 0.0, h],
        1 => [h, 0.0, 0.0, -h],
        2 => [0.0, h, h, 0.0],
        _ => [0.0, h, -h, 0.0],
    }
}

/// `u_j`: the Bell pair `j` on (A,B) tensored with the same Bell pair on (C,D),
/// in the order φ⁺φ⁺, φ⁻φ⁻, ψ⁺ψ⁺, ψ⁻ψ⁻.
pub fn magic_basis_vector(j: usize) -> Result<PureState4> {
    if j >= 4 {
        return Err(Error::IndexOutOfRange { index: j, bound: 4 });
    }
    let b = bell(j);
    let mut amps = [ZERO; 16];
    for k in 0..4 {
        for kp in 0..4 {
            amps[4 * k + kp] = C64::new(b[k] * b[kp], 0.0);
        }
    }
    Ok(PureState4 { amps })
}

fn magic_basis() -> [PureState4; 4] {
    std::array::from_fn(|j| magic_basis_vector(j).expect("index < 4"))
}

pub fn from_magic(z: &MagicCoeffs) -> PureState4 {
    let basis = magic_basis();
    let mut amps = [ZERO; 16];
    for (zj, u) in z.z.iter().zip(&basis) {
        for (a, b) in amps.iter_mut().zip(u.amps) {
            *a += zj * b;
        }
    }
    PureState4 { amps }
}

/// Projects onto span{u_j}. Returns the coordinates and the norm of the
/// component orthogonal to that span.
pub fn to_magic(s: &PureState4) -> (MagicCoeffs, f64) {
    let basis = magic_basis();
    let z = std::array::from_fn(|j| basis[j].inner(s));
    let coeffs = MagicCoeffs { z };
    let back = from_magic(&coeffs);
    let residual = back
        .amps
        .iter()
        .zip(&s.amps)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (coeffs, residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedState {
    Ghz4,
    C1,
    C2,
    C3,
    L,
    M,
}

impl NamedState {
    pub const ALL: [NamedState; 6] = [
        NamedState::Ghz4,
        NamedState::C1,
        NamedState::C2,
        NamedState::C3,
        NamedState::L,
        NamedState::M,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NamedState::Ghz4 => "GHZ4",
            NamedState::C1 => "C1",
            NamedState::C2 => "C2",
            NamedState::C3 => "C3",
            NamedState::L => "L",
            NamedState::M => "M",
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GHZ4" | "GHZ" => Ok(NamedState::Ghz4),
            "C1" => Ok(NamedState::C1),
            "C2" => Ok(NamedState::C2),
            "C3" => Ok(NamedState::C3),
            "L" => Ok(NamedState::L),
            "M" => Ok(NamedState::M),
            _ => Err(Error::UnknownState(s.to_string())),
        }
    }
}

fn cluster(support: [usize; 4]) -> PureState4 {
    let mut amps = [ZERO; 16];
    for &i in &support[..3] {
        amps[i] = C64::new(0.5, 0.0);
    }
    amps[support[3]] = C64::new(-0.5, 0.0);
    PureState4 { amps }
}

pub fn named_state(name: NamedState) -> PureState4 {
    match name {
        NamedState::Ghz4 => {
            let mut amps = [ZERO; 16];
            amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
            amps[15] = C64::new(FRAC_1_SQRT_2, 0.0);
            PureState4 { amps }
        }
        // ½(|0000⟩ + |1100⟩ + |0011⟩ − |1111⟩)
        NamedState::C1 => cluster([0, 12, 3, 15]),
        // ½(|0000⟩ + |0110⟩ + |1001⟩ − |1111⟩)
        NamedState::C2 => cluster([0, 6, 9, 15]),
        // ½(|0000⟩ + |1010⟩ + |0101⟩ − |1111⟩)
        NamedState::C3 => cluster([0, 10, 5, 15]),
        NamedState::L => {
            let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
            let s = 1.0 / 3f64.sqrt();
            from_magic(&MagicCoeffs::new([
                C64::new(s, 0.0),
                w * s,
                w * w * s,
                ZERO,
            ]))
        }
        NamedState::M => {
            let a = C64::new(0.0, FRAC_1_SQRT_2);
            let b = C64::new(1.0 / 6f64.sqrt(), 0.0);
            from_magic(&MagicCoeffs::new([a, b, b, b]))
        }
    }
}

fn gaussian_c64(rng: &mut (impl Rng + ?Sized)) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random state on the full 16-dimensional space.
pub fn haar_random(rng: &mut (impl Rng + ?Sized)) -> PureState4 {
    loop {
        let amps = std::array::from_fn(|_| gaussian_c64(rng));
        if let Ok(s) = (PureState4 { amps }).normalized() {
            return s;
        }
    }
}

/// Uniform point on the unit sphere of ℂ⁴, mapped into class 𝒜.
pub fn sample_class_a(rng: &mut (impl Rng + ?Sized)) -> PureState4 {
    from_magic(&sample_unit_magic(rng))
}

pub(crate) fn sample_unit_magic(rng: &mut (impl Rng + ?Sized)) -> MagicCoeffs {
    loop {
        let z = MagicCoeffs::new(std::array::from_fn(|_| gaussian_c64(rng)));
        if let Ok(z) = z.normalized() {
            return z;
        }
    }
}

/// Samples a state of the class ℳ by closing the phase polygon
/// `Σ p_j e^{iφ_j} = 0` (with `φ_j = 2θ_j`).
///
/// `p` is uniform on the simplex, `φ₀, φ₁` uniform; `φ₂, φ₃` are solved for,
/// with a random orientation of the closing triangle, and each `θ_j` takes a
/// random branch `φ_j/2` or `φ_j/2 + π`.
pub fn sample_class_m(rng: &mut (impl Rng + ?Sized)) -> Result<(PureState4, ClassMParams)> {
    for _ in 0..MAX_SAMPLER_ATTEMPTS {
        let raw: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
        let total: f64 = raw.iter().sum();
        let p = raw.map(|x| x / total);
        let phi0 = rng.random::<f64>() * 2.0 * PI;
        let phi1 = rng.random::<f64>() * 2.0 * PI;
        let orientation = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let Some((phi2, phi3)) = close_polygon(p, phi0, phi1, orientation) else {
            continue;
        };
        let phi = [phi0, phi1, phi2, phi3];
        let theta = std::array::from_fn(|j| {
            let branch = if rng.random::<bool>() { PI } else { 0.0 };
            (phi[j] / 2.0 + branch).rem_euclid(2.0 * PI)
        });
        // renormalize p so the simplex constraint holds to rounding
        let s: f64 = p.iter().sum();
        let p = p.map(|x| x / s);
        let params = ClassMParams { p, theta };
        if params.closure_residual() > ClassMParams::CLOSURE_TOL {
            continue;
        }
        return Ok((from_magic(&params.to_magic()), params));
    }
    Err(Error::SamplerExhausted(MAX_SAMPLER_ATTEMPTS))
}

/// Solves `p₂e^{iφ₂} + p₃e^{iφ₃} = −(p₀e^{iφ₀} + p₁e^{iφ₁})` for `φ₂, φ₃`.
fn close_polygon(p: [f64; 4], phi0: f64, phi1: f64, orientation: f64) -> Option<(f64, f64)> {
    let v = -(C64::from_polar(p[0], phi0) + C64::from_polar(p[1], phi1));
    let r = v.norm();
    let (p2, p3) = (p[2], p[3]);
    if r > p2 + p3 || r < (p2 - p3).abs() || p2 == 0.0 || r == 0.0 {
        return None;
    }
    let cos_gamma = ((p2 * p2 + r * r - p3 * p3) / (2.0 * p2 * r)).clamp(-1.0, 1.0);
    let phi2 = v.arg() + orientation * cos_gamma.acos();
    let w3 = v - C64::from_polar(p2, phi2);
    Some((phi2, w3.arg()))
}

/// `√p e^{iθ} u₀ + √((1−p)/3)(u₁+u₂+u₃)` for `1/2 ≤ p ≤ 1`, `cos²θ ≤ (1−p)/(3p)`.
pub fn sample_class_c(p: f64, theta: f64) -> Result<PureState4> {
    if !(0.5..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            what: "p",
            value: p,
            domain: "[1/2, 1]",
        });
    }
    let cos2 = theta.cos().powi(2);
    if cos2 > (1.0 - p) / (3.0 * p) + 1e-12 {
        return Err(Error::OutOfDomain {
            what: "cos^2(theta)",
            value: cos2,
            domain: "[0, (1-p)/(3p)]",
        });
    }
    let rest = C64::new(((1.0 - p) / 3.0).sqrt(), 0.0);
    Ok(from_magic(&MagicCoeffs::new([
        C64::from_polar(p.sqrt(), theta),
        rest,
        rest,
        rest,
    ])))
}

/// Real unit vector `x ∈ S³` mapped into class 𝒜.
pub fn sample_t_min(rng: &mut (impl Rng + ?Sized)) -> PureState4 {
    loop {
        let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.0 {
            return from_magic(&MagicCoeffs::new(x.map(|v| C64::new(v / n, 0.0))));
        }
    }
}

/// `½u₀ + (i/2)u₁ + (e^{iθ}/2)u₂ + (ie^{iθ}/2)u₃`.
pub fn eq_last_state(theta: f64) -> PureState4 {
    let e = C64::from_polar(0.5, theta);
    let i = C64::new(0.0, 1.0);
    from_magic(&MagicCoeffs::new([C64::new(0.5, 0.0), i * 0.5, e, i * e]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Unitary,
    SpecialLinear,
}

/// `g_A ⊗ g_B ⊗ g_C ⊗ g_D` with one 2×2 factor per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    factors: [ComplexMat; 4],
    kind: OperatorKind,
}

/// Tolerance on `U†U = I` and `det g = 1`.
pub const FACTOR_TOL: f64 = 1e-10;

impl LocalOperator {
    pub fn new(factors: [ComplexMat; 4], kind: OperatorKind) -> Result<Self> {
        for (index, g) in factors.iter().enumerate() {
            if g.rows() != 2 || g.cols() != 2 {
                return Err(Error::Shape {
                    expected: "2x2",
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
            let deviation = match kind {
                OperatorKind::Unitary => g.adjoint().matmul(g).max_abs_diff(&ComplexMat::identity(2)),
                OperatorKind::SpecialLinear => (determinant(g) - C64::new(1.0, 0.0)).norm(),
            };
            if deviation > FACTOR_TOL {
                return Err(Error::InvalidFactor {
                    index,
                    kind: match kind {
                        OperatorKind::Unitary => "unitary",
                        OperatorKind::SpecialLinear => "special-linear",
                    },
                    deviation,
                });
            }
        }
        Ok(Self { factors, kind })
    }

    pub fn identity() -> Self {
        Self {
            factors: std::array::from_fn(|_| ComplexMat::identity(2)),
            kind: OperatorKind::Unitary,
        }
    }

    pub fn random_unitary(rng: &mut (impl Rng + ?Sized)) -> Self {
        Self {
            factors: std::array::from_fn(|_| random_unitary2(rng)),
            kind: OperatorKind::Unitary,
        }
    }

    pub fn random_special_linear(rng: &mut (impl Rng + ?Sized)) -> Self {
        Self {
            factors: std::array::from_fn(|_| random_special_linear2(rng)),
            kind: OperatorKind::SpecialLinear,
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn factors(&self) -> &[ComplexMat; 4] {
        &self.factors
    }
}

/// Haar-random element of U(2): a random SU(2) element times a random phase.
pub fn random_unitary2(rng: &mut (impl Rng + ?Sized)) -> ComplexMat {
    let q: [f64; 4] = loop {
        let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            break q.map(|x| x / n);
        }
    };
    let a = C64::new(q[0], q[1]);
    let b = C64::new(q[2], q[3]);
    let phase = C64::from_polar(1.0, rng.random::<f64>() * 2.0 * PI);
    ComplexMat::from_vec(2, 2, vec![a, b, -b.conj(), a.conj()]).scale(phase)
}

/// Random element of SL(2,ℂ): a complex Gaussian matrix divided by a square
/// root of its determinant.
pub fn random_special_linear2(rng: &mut (impl Rng + ?Sized)) -> ComplexMat {
    loop {
        let g = ComplexMat::from_vec(2, 2, (0..4).map(|_| gaussian_c64(rng)).collect());
        let det = determinant(&g);
        if det.norm() > 1e-3 {
            return g.scale(det.sqrt().inv());
        }
    }
}

/// `(g_A⊗g_B⊗g_C⊗g_D)|s⟩`. The result is not renormalized; for unitary
/// factors the norm is preserved anyway.
pub fn apply_local(s: &PureState4, op: &LocalOperator) -> PureState4 {
    let mut amps = s.amps;
    for (q, g) in Qubit::ALL.iter().zip(&op.factors) {
        apply_single(&mut amps, *q, g);
    }
    PureState4 { amps }
}

pub(crate) fn apply_single(amps: &mut [C64; 16], q: Qubit, g: &ComplexMat) {
    let bit = 1 << q.shift();
    for i0 in (0..16).filter(|i| i & bit == 0) {
        let i1 = i0 | bit;
        let (a0, a1) = (amps[i0], amps[i1]);
        amps[i0] = g[(0, 0)] * a0 + g[(0, 1)] * a1;
        amps[i1] = g[(1, 0)] * a0 + g[(1, 1)] * a1;
    }
}

/// Relabeling of the four qubits: `targets[k]` is the new position of the
/// qubit that was at position `k` (A=0 … D=3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitPermutation {
    targets: [usize; 4],
}

impl QubitPermutation {
    pub fn new(targets: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &t in &targets {
            if t >= 4 || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidSubset(format!(
                    "{targets:?} is not a permutation of 0..4"
                )));
            }
        }
        Ok(Self { targets })
    }

    pub fn identity() -> Self {
        Self {
            targets: [0, 1, 2, 3],
        }
    }

    pub fn swap(a: Qubit, b: Qubit) -> Self {
        let mut targets = [0, 1, 2, 3];
        targets.swap(a.index(), b.index());
        Self { targets }
    }

    pub fn targets(&self) -> [usize; 4] {
        self.targets
    }

    /// Permutation equal to applying `self` first and `next` second.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            targets: self.targets.map(|t| next.targets[t]),
        }
    }

    /// All 24 permutations, in lexicographic order of `targets`.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Ok(p) = Self::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    fn map_index(&self, i: usize) -> usize {
        (0..4)
            .map(|k| ((i >> (3 - k)) & 1) << (3 - self.targets[k]))
            .sum()
    }
}

pub fn permute_qubits(s: &PureState4, sigma: &QubitPermutation) -> PureState4 {
    let mut amps = [ZERO; 16];
    for (i, &a) in s.amps.iter().enumerate() {
        amps[sigma.map_index(i)] = a;
    }
    PureState4 { amps }
}

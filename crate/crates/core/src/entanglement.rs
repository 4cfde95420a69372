//! Marginals, cut spectra, tangles and α-entropies of entanglement.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::invariants::{four_tangle, Cut};
use crate::linalg::{density_spectrum, ComplexMat};
use crate::states::{MagicCoeffs, PureState4, Qubit};

/// Sum tolerance for a spectrum.
pub const SPECTRUM_TOL: f64 = 1e-10;
/// `|α − 1|` below this routes Renyi and Tsallis to their α → 1 limits.
pub const ALPHA_ONE_TOL: f64 = 1e-6;
/// Below this second Schmidt weight a state is treated as a product across A.
const SCHMIDT_FLOOR: f64 = 1e-14;

/// Eigenvalues of a reduced density matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
}

impl Spectrum {
    /// Validates and sorts: entries in `[0, 1]`, sum one within `SPECTRUM_TOL`.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values
            .iter()
            .find(|&&v| !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&v))
        {
            return Err(Error::OutOfDomain {
                what: "spectrum entry",
                value: bad,
                domain: "[0, 1]",
            });
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_TOL {
            return Err(Error::OutOfDomain {
                what: "spectrum sum",
                value: sum,
                domain: "{1}",
            });
        }
        values.iter_mut().for_each(|v| *v = v.clamp(0.0, 1.0));
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Spectrum of a density matrix (clamped and renormalized).
    pub fn of_density(rho: &ComplexMat) -> Result<Self> {
        Ok(Self {
            values: density_spectrum(rho)?.eigenvalues,
        })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            values: vec![1.0 / n as f64; n],
        }
    }

    pub fn purity(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest entrywise difference after sorting both.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Shannon entropy in bits.
    pub fn shannon_bits(&self) -> f64 {
        -self
            .values
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|v| v * v.log2())
            .sum::<f64>()
    }
}

fn validate_keep(keep: &[Qubit]) -> Result<()> {
    if keep.is_empty() || keep.len() >= 4 {
        return Err(Error::InvalidSubset(format!(
            "keep set must be a nonempty proper subset, got {} qubits",
            keep.len()
        )));
    }
    for (i, q) in keep.iter().enumerate() {
        if keep[..i].contains(q) {
            return Err(Error::InvalidSubset(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

fn scatter(bits: usize, qubits: &[Qubit]) -> usize {
    let n = qubits.len();
    qubits
        .iter()
        .enumerate()
        .map(|(pos, q)| ((bits >> (n - 1 - pos)) & 1) << q.shift())
        .sum()
}

/// Partial trace keeping `keep`, in the order listed (first qubit most
/// significant).
pub fn reduced_density(s: &PureState4, keep: &[Qubit]) -> Result<ComplexMat> {
    validate_keep(keep)?;
    s.require_normalized()?;
    Ok(reduced_density_unchecked(s.amplitudes(), keep))
}

fn reduced_density_unchecked(amps: &[C64; 16], keep: &[Qubit]) -> ComplexMat {
    let rest: Vec<Qubit> = Qubit::ALL.into_iter().filter(|q| !keep.contains(q)).collect();
    let dk = 1 << keep.len();
    let dr = 1 << rest.len();
    let mut rho = ComplexMat::zeros(dk, dk);
    for r in 0..dr {
        let base = scatter(r, &rest);
        for k in 0..dk {
            let a = amps[base | scatter(k, keep)];
            for kp in 0..dk {
                rho[(k, kp)] += a * amps[base | scatter(kp, keep)].conj();
            }
        }
    }
    rho
}

fn purity(rho: &ComplexMat) -> f64 {
    rho.as_slice().iter().map(|x| x.norm_sqr()).sum()
}

pub fn cut_spectrum(s: &PureState4, cut: Cut) -> Result<Spectrum> {
    Spectrum::of_density(&reduced_density(s, &cut.pair())?)
}

pub fn single_qubit_spectrum(s: &PureState4, q: Qubit) -> Result<Spectrum> {
    Spectrum::of_density(&reduced_density(s, &[q])?)
}

/// Spectra of `ρ^{AB}`, `ρ^{AC}`, `ρ^{AD}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSpectra {
    pub p: Spectrum,
    pub q: Spectrum,
    pub r: Spectrum,
}

impl CutSpectra {
    pub fn of_state(s: &PureState4) -> Result<Self> {
        Ok(Self {
            p: cut_spectrum(s, Cut::AbCd)?,
            q: cut_spectrum(s, Cut::AcBd)?,
            r: cut_spectrum(s, Cut::AdBc)?,
        })
    }

    pub fn as_array(&self) -> [&Spectrum; 3] {
        [&self.p, &self.q, &self.r]
    }

    pub fn get(&self, cut: Cut) -> &Spectrum {
        match cut {
            Cut::AbCd => &self.p,
            Cut::AcBd => &self.q,
            Cut::AdBc => &self.r,
        }
    }
}

const MAGIC_A: [[f64; 4]; 4] = [
    [0.5, 0.5, 0.5, 0.5],
    [0.5, 0.5, -0.5, -0.5],
    [0.5, -0.5, 0.5, -0.5],
    [0.5, -0.5, -0.5, 0.5],
];

const MAGIC_B: [[f64; 4]; 4] = [
    [0.5, -0.5, -0.5, -0.5],
    [0.5, -0.5, 0.5, 0.5],
    [0.5, 0.5, -0.5, 0.5],
    [0.5, 0.5, 0.5, -0.5],
];

fn rotated_weights(m: &[[f64; 4]; 4], z: &[C64; 4]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(z).map(|(a, b)| b * *a).sum::<C64>().norm_sqr())
        .collect()
}

fn sorted_desc(mut v: Vec<f64>) -> Spectrum {
    v.sort_by(|a, b| b.total_cmp(a));
    Spectrum { values: v }
}

/// Cut spectra of `Σ z_j u_j` in closed form: `P = |z|²`, `Q = |Az|²`,
/// `R = |Bz|²`.
pub fn magic_cut_spectra(z: &MagicCoeffs) -> Result<CutSpectra> {
    z.require_normalized()?;
    Ok(CutSpectra {
        p: sorted_desc(z.z.iter().map(|x| x.norm_sqr()).collect()),
        q: sorted_desc(rotated_weights(&MAGIC_A, &z.z)),
        r: sorted_desc(rotated_weights(&MAGIC_B, &z.z)),
    })
}

/// `2(1 − Σλ²)`.
pub fn linear_entropy(sp: &Spectrum) -> f64 {
    2.0 * (1.0 - sp.purity())
}

/// Tangle across a 2-vs-2 cut: linear entropy of the two-qubit marginal.
pub fn tangle(s: &PureState4, cut: Cut) -> Result<f64> {
    let rho = reduced_density(s, &cut.pair())?;
    Ok(2.0 * (1.0 - purity(&rho)))
}

/// Tangle across the cut separating `q` from the other three qubits.
pub fn tangle_one(s: &PureState4, q: Qubit) -> Result<f64> {
    let rho = reduced_density(s, &[q])?;
    Ok(2.0 * (1.0 - purity(&rho)))
}

/// `|⟨φ|σ_y⊗σ_y|φ*⟩|²` for a two-qubit pure state.
pub fn concurrence_squared_pure2(phi: &[C64; 4]) -> Result<f64> {
    let norm = phi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > crate::states::NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let overlap = 2.0 * (phi[0] * phi[3] - phi[1] * phi[2]);
    Ok(overlap.norm_sqr())
}

pub fn tau1(s: &PureState4) -> Result<f64> {
    let mut total = 0.0;
    for q in Qubit::ALL {
        total += tangle_one(s, q)?;
    }
    Ok(total / 4.0)
}

pub fn tau2(s: &PureState4) -> Result<f64> {
    let mut total = 0.0;
    for cut in Cut::ALL {
        total += tangle(s, cut)?;
    }
    Ok(total / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangleSummary {
    /// AB_CD, AC_BD, AD_BC.
    pub per_cut: [f64; 3],
    /// A, B, C, D.
    pub one_vs_three: [f64; 4],
    pub tau1: f64,
    pub tau2: f64,
    pub four_tangle: f64,
}

pub fn tangle_summary(s: &PureState4) -> Result<TangleSummary> {
    let mut per_cut = [0.0; 3];
    for (v, cut) in per_cut.iter_mut().zip(Cut::ALL) {
        *v = tangle(s, cut)?;
    }
    let mut one_vs_three = [0.0; 4];
    for (v, q) in one_vs_three.iter_mut().zip(Qubit::ALL) {
        *v = tangle_one(s, q)?;
    }
    Ok(TangleSummary {
        per_cut,
        one_vs_three,
        tau1: one_vs_three.iter().sum::<f64>() / 4.0,
        tau2: per_cut.iter().sum::<f64>() / 3.0,
        four_tangle: four_tangle(s)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyFamily {
    Tsallis,
    Renyi,
    VonNeumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyUnit {
    Bits,
    Nats,
    /// Tsallis values away from α = 1.
    Dimensionless,
}

impl EntropyUnit {
    pub fn label(self) -> &'static str {
        match self {
            EntropyUnit::Bits => "bits",
            EntropyUnit::Nats => "nats",
            EntropyUnit::Dimensionless => "dimensionless",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyMeasure {
    pub family: EntropyFamily,
    /// Ignored for von Neumann.
    pub alpha: f64,
}

impl EntropyMeasure {
    pub fn tsallis(alpha: f64) -> Self {
        Self {
            family: EntropyFamily::Tsallis,
            alpha,
        }
    }

    pub fn renyi(alpha: f64) -> Self {
        Self {
            family: EntropyFamily::Renyi,
            alpha,
        }
    }

    pub fn von_neumann() -> Self {
        Self {
            family: EntropyFamily::VonNeumann,
            alpha: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.family != EntropyFamily::VonNeumann && !(self.alpha > 0.0 && self.alpha.is_finite())
        {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        Ok(())
    }

    /// Whether the request is evaluated through its α → 1 limit.
    pub fn is_alpha_one(&self) -> bool {
        self.family == EntropyFamily::VonNeumann || (self.alpha - 1.0).abs() < ALPHA_ONE_TOL
    }

    pub fn unit(&self) -> EntropyUnit {
        match self.family {
            EntropyFamily::Tsallis if self.is_alpha_one() => EntropyUnit::Nats,
            EntropyFamily::Tsallis => EntropyUnit::Dimensionless,
            _ => EntropyUnit::Bits,
        }
    }
}

impl fmt::Display for EntropyMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            EntropyFamily::Tsallis => write!(f, "tsallis:{}", self.alpha),
            EntropyFamily::Renyi => write!(f, "renyi:{}", self.alpha),
            EntropyFamily::VonNeumann => f.write_str("vn"),
        }
    }
}

impl FromStr for EntropyMeasure {
    type Err = Error;

    /// Accepts `tsallis:<α>`, `renyi:<α>` and `vn` (or `vonneumann`).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, alpha) = match lower.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (lower.as_str(), None),
        };
        let parse_alpha = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::InvalidConfig(format!("`{s}` needs an order, e.g. {name}:2")))?;
            a.parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad entropy order `{a}`")))
        };
        let m = match name {
            "tsallis" => Self::tsallis(parse_alpha(alpha)?),
            "renyi" => Self::renyi(parse_alpha(alpha)?),
            "vn" | "vonneumann" | "von-neumann" if alpha.is_none() => Self::von_neumann(),
            _ => return Err(Error::InvalidConfig(format!("unknown entropy measure `{s}`"))),
        };
        m.validate()?;
        Ok(m)
    }
}

fn power_sum(sp: &Spectrum, alpha: f64) -> f64 {
    sp.values.iter().filter(|&&v| v > 0.0).map(|v| v.powf(alpha)).sum()
}

fn nats(sp: &Spectrum) -> f64 {
    -sp.values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|v| v * v.ln())
        .sum::<f64>()
}

/// The entropy value together with its unit.
pub fn entropy_with_unit(sp: &Spectrum, m: &EntropyMeasure) -> Result<(f64, EntropyUnit)> {
    m.validate()?;
    let value = match (m.family, m.is_alpha_one()) {
        (EntropyFamily::Tsallis, true) => nats(sp),
        (_, true) => sp.shannon_bits(),
        (EntropyFamily::Tsallis, false) => (power_sum(sp, m.alpha) - 1.0) / (1.0 - m.alpha),
        (_, false) => power_sum(sp, m.alpha).log2() / (1.0 - m.alpha),
    };
    Ok((value, m.unit()))
}

pub fn entropy(sp: &Spectrum, m: &EntropyMeasure) -> Result<f64> {
    entropy_with_unit(sp, m).map(|(v, _)| v)
}

/// Mean entropy over a set of spectra.
pub fn mean_entropy<'a>(
    spectra: impl IntoIterator<Item = &'a Spectrum>,
    m: &EntropyMeasure,
) -> Result<f64> {
    let mut total = 0.0;
    let mut n = 0usize;
    for sp in spectra {
        total += entropy(sp, m)?;
        n += 1;
    }
    Ok(total / n as f64)
}

/// Mean entropy over the four 1-vs-3 cuts.
pub fn avg_entropy_e1(s: &PureState4, m: &EntropyMeasure) -> Result<f64> {
    let spectra = Qubit::ALL
        .into_iter()
        .map(|q| single_qubit_spectrum(s, q))
        .collect::<Result<Vec<_>>>()?;
    mean_entropy(&spectra, m)
}

/// Mean entropy over the three 2-vs-2 cuts.
pub fn avg_entropy_e2(s: &PureState4, m: &EntropyMeasure) -> Result<f64> {
    let spectra = CutSpectra::of_state(s)?;
    mean_entropy(spectra.as_array(), m)
}

/// Eigen-decomposition of a 2×2 Hermitian matrix: eigenvalues descending
/// with orthonormal eigenvectors.
pub fn hermitian_eigen2(m: &ComplexMat) -> ([f64; 2], [[C64; 2]; 2]) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let (l0, l1) = (mean + radius, mean - radius);
    let c1 = [b, C64::new(l0 - a, 0.0)];
    let c2 = [C64::new(l0 - d, 0.0), b.conj()];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    let n2 = (c2[0].norm_sqr() + c2[1].norm_sqr()).sqrt();
    let v0 = if n1.max(n2) < 1e-300 {
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
    } else if n1 >= n2 {
        [c1[0] / n1, c1[1] / n1]
    } else {
        [c2[0] / n2, c2[1] / n2]
    };
    let v1 = [-v0[1].conj(), v0[0].conj()];
    ([l0, l1], [v0, v1])
}

/// Schmidt decomposition across A|BCD: `ψ = Σ_k √p_k |e_k⟩|φ_k⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSplit {
    /// Descending.
    pub p: [f64; 2],
    /// Normalized vectors on BCD, index `4b + 2c + d`. The second is zero
    /// when `p[1]` vanishes.
    pub vectors: [[C64; 8]; 2],
}

pub fn schmidt_split(s: &PureState4) -> Result<SchmidtSplit> {
    let rho_a = reduced_density(s, &[Qubit::A])?;
    let (p, e) = hermitian_eigen2(&rho_a);
    let amps = s.amplitudes();
    let mut vectors = [[C64::new(0.0, 0.0); 8]; 2];
    for k in 0..2 {
        let pk = p[k].max(0.0);
        if pk < SCHMIDT_FLOOR {
            continue;
        }
        for j in 0..8 {
            let v = e[k][0].conj() * amps[j] + e[k][1].conj() * amps[8 + j];
            vectors[k][j] = v / pk.sqrt();
        }
    }
    Ok(SchmidtSplit {
        p: [p[0].max(0.0), p[1].max(0.0)],
        vectors,
    })
}

/// `σ_X^{kk'}`: partial trace of `|φ_k⟩⟨φ_k'|` onto qubit X.
fn sigma_block(split: &SchmidtSplit, x: Qubit, k: usize, kp: usize) -> ComplexMat {
    // position of X inside the 3-qubit index 4b + 2c + d
    let shift = x.shift();
    let bit = 1 << shift;
    let mut out = ComplexMat::zeros(2, 2);
    for j in (0..8).filter(|j| j & bit == 0) {
        for xi in 0..2 {
            for xj in 0..2 {
                let a = split.vectors[k][j | (xi << shift)];
                let b = split.vectors[kp][j | (xj << shift)];
                out[(xi, xj)] += a * b.conj();
            }
        }
    }
    out
}

/// `𝔇_X = Tr(σ^{00}σ^{11} − σ^{01}σ^{10})` for a given Schmidt split.
pub fn discriminant_from_split(split: &SchmidtSplit, x: Qubit) -> Result<f64> {
    if x == Qubit::A {
        return Err(Error::InvalidSubset("discriminant qubit must be B, C or D".into()));
    }
    if split.p[1] < SCHMIDT_FLOOR {
        return Ok(0.0);
    }
    let s00 = sigma_block(split, x, 0, 0);
    let s11 = sigma_block(split, x, 1, 1);
    let s01 = sigma_block(split, x, 0, 1);
    let s10 = sigma_block(split, x, 1, 0);
    Ok((s00.matmul(&s11).trace() - s01.matmul(&s10).trace()).re)
}

pub fn discriminant(s: &PureState4, x: Qubit) -> Result<f64> {
    discriminant_from_split(&schmidt_split(s)?, x)
}

/// Every one-qubit marginal equals `I/2` within `tol` entrywise.
pub fn is_critical(s: &PureState4, tol: f64) -> bool {
    let half = ComplexMat::identity(2).scale(C64::new(0.5, 0.0));
    Qubit::ALL.into_iter().all(|q| {
        reduced_density_unchecked(s.amplitudes(), &[q]).max_abs_diff(&half) <= tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        apply_local, from_magic, haar_random, magic_basis_vector, named_state, sample_class_a,
        to_magic, LocalOperator, NamedState,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn sp(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    fn assert_spectrum(actual: &Spectrum, expected: &[f64], tol: f64) {
        assert!(
            actual.max_abs_diff(&sp(expected)) < tol,
            "{:?} vs {expected:?}",
            actual.values
        );
    }

    fn projector(v: [f64; 4]) -> ComplexMat {
        let mut m = ComplexMat::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = C64::new(v[i] * v[j], 0.0);
            }
        }
        m
    }

    #[test]
    fn reduced_density_examples() {
        let ghz = named_state(NamedState::Ghz4);
        let rho = reduced_density(&ghz, &[Qubit::A]).unwrap();
        let half = ComplexMat::identity(2).scale(C64::new(0.5, 0.0));
        assert!(rho.max_abs_diff(&half) < 1e-15);

        let h = FRAC_1_SQRT_2;
        let phi_plus = projector([h, 0.0, 0.0, h]);
        let phi_minus = projector([h, 0.0, 0.0, -h]);
        let u0 = magic_basis_vector(0).unwrap();
        let rho = reduced_density(&u0, &[Qubit::A, Qubit::B]).unwrap();
        assert!(rho.max_abs_diff(&phi_plus) < 1e-15);

        let c1 = named_state(NamedState::C1);
        let rho = reduced_density(&c1, &[Qubit::A, Qubit::B]).unwrap();
        let mix = ComplexMat::from_vec(
            4,
            4,
            phi_plus
                .as_slice()
                .iter()
                .zip(phi_minus.as_slice())
                .map(|(a, b)| (a + b) * 0.5)
                .collect(),
        );
        assert!(rho.max_abs_diff(&mix) < 1e-15);

        assert!(reduced_density(&c1, &[]).is_err());
        assert!(reduced_density(&c1, &Qubit::ALL).is_err());
        assert!(reduced_density(&c1, &[Qubit::A, Qubit::A]).is_err());
    }

    #[test]
    fn reduced_density_is_a_density_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let s = haar_random(&mut rng);
            for keep in [&[Qubit::B][..], &[Qubit::A, Qubit::D], &[Qubit::A, Qubit::B, Qubit::C]] {
                let rho = reduced_density(&s, keep).unwrap();
                assert!(rho.hermitian_deviation() < 1e-15);
                assert!((rho.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn named_cut_spectra() {
        for cut in Cut::ALL {
            let l = cut_spectrum(&named_state(NamedState::L), cut).unwrap();
            assert_spectrum(&l, &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0], 1e-12);
            let m = cut_spectrum(&named_state(NamedState::M), cut).unwrap();
            assert_spectrum(&m, &[0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0], 1e-12);
        }
        let c2 = CutSpectra::of_state(&named_state(NamedState::C2)).unwrap();
        let h: Vec<f64> = c2.as_array().iter().map(|s| s.shannon_bits()).collect();
        assert!((h[0] - 2.0).abs() < 1e-12 && (h[1] - 2.0).abs() < 1e-12);
        assert!((h[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn magic_cut_spectra_examples() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let cs = magic_cut_spectra(&MagicCoeffs::new([one, zero, zero, zero])).unwrap();
        assert_spectrum(&cs.p, &[1.0, 0.0, 0.0, 0.0], 1e-15);
        assert_spectrum(&cs.q, &[0.25; 4], 1e-15);
        assert_spectrum(&cs.r, &[0.25; 4], 1e-15);

        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let cs = magic_cut_spectra(&MagicCoeffs::new([h, h, zero, zero])).unwrap();
        for s in cs.as_array() {
            assert_spectrum(s, &[0.5, 0.5, 0.0, 0.0], 1e-15);
        }

        let (z, _) = to_magic(&named_state(NamedState::L));
        for s in magic_cut_spectra(&z).unwrap().as_array() {
            assert_spectrum(s, &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0], 1e-15);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let s = sample_class_a(&mut rng);
            let analytic = magic_cut_spectra(&to_magic(&s).0).unwrap();
            let direct = CutSpectra::of_state(&s).unwrap();
            for cut in Cut::ALL {
                assert!(analytic.get(cut).max_abs_diff(direct.get(cut)) < 1e-12);
            }
        }
    }

    #[test]
    fn linear_entropy_examples() {
        assert_eq!(linear_entropy(&sp(&[1.0, 0.0, 0.0, 0.0])), 0.0);
        assert!((linear_entropy(&Spectrum::uniform(4)) - 1.5).abs() < 1e-15);
        let third = 1.0 / 3.0;
        assert!((linear_entropy(&sp(&[third, third, third, 0.0])) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tangle_examples() {
        let c1 = tangle_summary(&named_state(NamedState::C1)).unwrap();
        let expected = [1.0, 1.5, 1.5];
        for (a, b) in c1.per_cut.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((c1.tau1 - 1.0).abs() < 1e-12 && (c1.tau2 - 4.0 / 3.0).abs() < 1e-12);

        let ghz = tangle_summary(&named_state(NamedState::Ghz4)).unwrap();
        assert!(ghz.per_cut.iter().all(|t| (t - 1.0).abs() < 1e-12));
        assert!((ghz.tau1 - 1.0).abs() < 1e-12 && (ghz.tau2 - 1.0).abs() < 1e-12);

        let u0 = magic_basis_vector(0).unwrap();
        assert!(tangle(&u0, Cut::AbCd).unwrap().abs() < 1e-14);

        let product = tangle_summary(&PureState4::basis(0).unwrap()).unwrap();
        assert_eq!((product.tau1, product.tau2, product.four_tangle), (0.0, 0.0, 0.0));
    }

    #[test]
    fn concurrence_examples() {
        let h = FRAC_1_SQRT_2;
        let c = |v: [f64; 4]| v.map(|x| C64::new(x, 0.0));
        assert!((concurrence_squared_pure2(&c([h, 0.0, 0.0, h])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_squared_pure2(&c([1.0, 0.0, 0.0, 0.0])).unwrap(), 0.0);
        for p in [0.1f64, 0.3, 0.5, 0.9] {
            let phi = c([p.sqrt(), 0.0, 0.0, (1.0 - p).sqrt()]);
            let got = concurrence_squared_pure2(&phi).unwrap();
            assert!((got - 4.0 * p * (1.0 - p)).abs() < 1e-14);
        }
        assert!(concurrence_squared_pure2(&c([1.0, 1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn entropy_examples() {
        let uniform = Spectrum::uniform(4);
        for alpha in [0.3, 2.0, 5.0] {
            let v = entropy(&uniform, &EntropyMeasure::renyi(alpha)).unwrap();
            assert!((v - 2.0).abs() < 1e-14);
        }
        let m = sp(&[0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]);
        let vn = entropy(&m, &EntropyMeasure::von_neumann()).unwrap();
        assert!((vn - (0.5 + 0.5 * 6f64.log2())).abs() < 1e-14);
        let t2 = entropy(&m, &EntropyMeasure::tsallis(2.0)).unwrap();
        assert!((t2 - linear_entropy(&m) / 2.0).abs() < 1e-15);

        let (v, unit) = entropy_with_unit(&m, &EntropyMeasure::tsallis(1.0)).unwrap();
        assert_eq!(unit, EntropyUnit::Nats);
        assert!((v - vn * std::f64::consts::LN_2).abs() < 1e-14);
        let (v, unit) = entropy_with_unit(&m, &EntropyMeasure::renyi(1.0 + 1e-8)).unwrap();
        assert_eq!(unit, EntropyUnit::Bits);
        assert_eq!(v, vn);

        assert!(matches!(
            entropy(&m, &EntropyMeasure::renyi(0.0)),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(entropy(&m, &EntropyMeasure::tsallis(-1.0)).is_err());
    }

    #[test]
    fn entropy_measure_parsing() {
        assert_eq!("tsallis:3".parse::<EntropyMeasure>().unwrap(), EntropyMeasure::tsallis(3.0));
        assert_eq!("Renyi:2".parse::<EntropyMeasure>().unwrap(), EntropyMeasure::renyi(2.0));
        assert_eq!("vn".parse::<EntropyMeasure>().unwrap(), EntropyMeasure::von_neumann());
        assert!("renyi".parse::<EntropyMeasure>().is_err());
        assert!("renyi:-2".parse::<EntropyMeasure>().is_err());
        assert!("shannon:2".parse::<EntropyMeasure>().is_err());
    }

    #[test]
    fn average_entropy_examples() {
        let c1 = named_state(NamedState::C1);
        for alpha in [0.5, 2.0, 3.0, 7.0] {
            let v = avg_entropy_e2(&c1, &EntropyMeasure::renyi(alpha)).unwrap();
            assert!((v - 5.0 / 3.0).abs() < 1e-12);
        }
        let l = named_state(NamedState::L);
        for alpha in [0.5, 1.5, 3.0] {
            let v = avg_entropy_e2(&l, &EntropyMeasure::tsallis(alpha)).unwrap();
            let closed = (1.0 - 3f64.powf(1.0 - alpha)) / (alpha - 1.0);
            assert!((v - closed).abs() < 1e-12);
        }
        let e1 = avg_entropy_e1(&named_state(NamedState::Ghz4), &EntropyMeasure::von_neumann());
        assert!((e1.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discriminant_examples() {
        let ghz = named_state(NamedState::Ghz4);
        let total: f64 = [Qubit::B, Qubit::C, Qubit::D]
            .into_iter()
            .map(|x| discriminant(&ghz, x).unwrap())
            .sum();
        assert!(total.abs() < 1e-12);

        let c1 = named_state(NamedState::C1);
        let total: f64 = [Qubit::B, Qubit::C, Qubit::D]
            .into_iter()
            .map(|x| discriminant(&c1, x).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);

        assert_eq!(discriminant(&PureState4::basis(3).unwrap(), Qubit::C).unwrap(), 0.0);
        assert!(discriminant(&ghz, Qubit::A).is_err());
    }

    #[test]
    fn discriminant_identity_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let s = haar_random(&mut rng);
            let split = schmidt_split(&s).unwrap();
            for x in [Qubit::B, Qubit::C, Qubit::D] {
                let lhs = tangle_pair(&s, x) - tangle_one(&s, x).unwrap();
                let rhs = 4.0 * split.p[0] * split.p[1] * discriminant_from_split(&split, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
            }
        }
    }

    fn tangle_pair(s: &PureState4, x: Qubit) -> f64 {
        let rho = reduced_density(s, &[Qubit::A, x]).unwrap();
        2.0 * (1.0 - purity(&rho))
    }

    #[test]
    fn eigen2_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let s = haar_random(&mut rng);
            let rho = reduced_density(&s, &[Qubit::C]).unwrap();
            let (l, v) = hermitian_eigen2(&rho);
            for k in 0..2 {
                let mv = rho.mul_vec(&v[k]);
                assert!((mv[0] - v[k][0] * l[k]).norm() < 1e-13);
                assert!((mv[1] - v[k][1] * l[k]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn criticality_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        assert!(is_critical(&sample_class_a(&mut rng), 1e-12));
        assert!(!is_critical(&PureState4::basis(0).unwrap(), 1e-3));
        let u0 = from_magic(&MagicCoeffs::new([
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]));
        let moved = apply_local(&u0, &LocalOperator::random_unitary(&mut rng));
        assert!(is_critical(&moved, 1e-12));
    }
}

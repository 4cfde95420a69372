//! Polynomial invariants `E₀..E₃` of the SL(2,ℂ)⊗4 action, the local-unitary
//! fingerprint `f₀..f₆`, the 4-tangle, and equivalence tests built on them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::entanglement::{cut_spectrum, is_critical, single_qubit_spectrum};
use crate::error::{Error, Result};
use crate::linalg::{determinant, ComplexMat};
use crate::states::{permute_qubits, to_magic, PureState4, Qubit, QubitPermutation};

/// Default absolute tolerance for equivalence verdicts.
pub const DEFAULT_EQUIV_TOL: f64 = 1e-9;

/// One of the three 2-vs-2 bipartitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cut {
    AbCd,
    AcBd,
    AdBc,
}

impl Cut {
    pub const ALL: [Cut; 3] = [Cut::AbCd, Cut::AcBd, Cut::AdBc];

    pub fn label(self) -> &'static str {
        match self {
            Cut::AbCd => "AB_CD",
            Cut::AcBd => "AC_BD",
            Cut::AdBc => "AD_BC",
        }
    }

    /// The two qubits on the side containing A.
    pub fn pair(self) -> [Qubit; 2] {
        match self {
            Cut::AbCd => [Qubit::A, Qubit::B],
            Cut::AcBd => [Qubit::A, Qubit::C],
            Cut::AdBc => [Qubit::A, Qubit::D],
        }
    }

    /// Relabeling that moves this cut onto AB_CD.
    pub fn to_canonical(self) -> QubitPermutation {
        match self {
            Cut::AbCd => QubitPermutation::identity(),
            Cut::AcBd => QubitPermutation::swap(Qubit::B, Qubit::C),
            Cut::AdBc => QubitPermutation::swap(Qubit::B, Qubit::D),
        }
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Cut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Cut::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSubset(format!("unknown cut `{s}`")))
    }
}

/// `T_{kk'}` = amplitude of `|k⟩|k'⟩`, with `k` on the pair containing A.
pub fn t_matrix(s: &PureState4, cut: Cut) -> ComplexMat {
    let s = permute_qubits(s, &cut.to_canonical());
    ComplexMat::from_vec(4, 4, s.amplitudes().to_vec())
}

/// `antidiag(1, −1, −1, 1)`.
pub fn j_matrix() -> &'static ComplexMat {
    static J: OnceLock<ComplexMat> = OnceLock::new();
    J.get_or_init(|| {
        let mut j = ComplexMat::zeros(4, 4);
        for (r, v) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            j[(r, 3 - r)] = C64::new(v, 0.0);
        }
        j
    })
}

/// `E₀ = det T`, `E_m = Tr((T J Tᵀ J)^m)` for `m = 1, 2, 3` (cut AB_CD).
pub fn invariant_e(s: &PureState4, m: usize) -> Result<C64> {
    if m > 3 {
        return Err(Error::IndexOutOfRange { index: m, bound: 4 });
    }
    let t = t_matrix(s, Cut::AbCd);
    if m == 0 {
        return Ok(determinant(&t));
    }
    let j = j_matrix();
    let base = t.matmul(j).matmul(&t.transpose()).matmul(j);
    let mut power = base.clone();
    for _ in 1..m {
        power = power.matmul(&base);
    }
    Ok(power.trace())
}

fn all_e(s: &PureState4) -> [C64; 4] {
    let t = t_matrix(s, Cut::AbCd);
    let j = j_matrix();
    let base = t.matmul(j).matmul(&t.transpose()).matmul(j);
    let sq = base.matmul(&base);
    let cube = sq.matmul(&base);
    [determinant(&t), base.trace(), sq.trace(), cube.trace()]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantVector {
    pub e: [C64; 4],
    pub f: [f64; 7],
}

impl InvariantVector {
    pub fn from_e(e: [C64; 4]) -> Self {
        let [e0, e1, e2, e3] = e;
        let f = [
            e0.norm().sqrt(),
            e1.norm(),
            e2.norm().sqrt(),
            e3.norm().cbrt(),
            (e1 * e1 - e0).norm_sqr(),
            (e1 * e1 - e2).norm_sqr(),
            (e1 * e1 * e1 - e3).norm_sqr(),
        ];
        Self { e, f }
    }

    /// Largest absolute difference between the two f-vectors.
    pub fn max_f_diff(&self, other: &Self) -> f64 {
        self.f
            .iter()
            .zip(&other.f)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn invariant_vector(s: &PureState4) -> Result<InvariantVector> {
    s.require_normalized()?;
    Ok(InvariantVector::from_e(all_e(s)))
}

fn sigma_y4() -> &'static ComplexMat {
    static S: OnceLock<ComplexMat> = OnceLock::new();
    S.get_or_init(|| {
        let i = C64::new(0.0, 1.0);
        let zero = C64::new(0.0, 0.0);
        let sy = ComplexMat::from_vec(2, 2, vec![zero, i, -i, zero]);
        sy.kron(&sy).kron(&sy).kron(&sy)
    })
}

/// `|⟨ψ|σ_y⊗σ_y⊗σ_y⊗σ_y|ψ*⟩|²`.
pub fn four_tangle_sigma(s: &PureState4) -> Result<f64> {
    s.require_normalized()?;
    let conj: Vec<C64> = s.amplitudes().iter().map(|a| a.conj()).collect();
    let flipped = sigma_y4().mul_vec(&conj);
    let overlap: C64 = conj.iter().zip(&flipped).map(|(a, b)| a * b).sum();
    Ok(overlap.norm_sqr())
}

/// `|E₁|²`.
pub fn four_tangle(s: &PureState4) -> Result<f64> {
    s.require_normalized()?;
    Ok(invariant_e(s, 1)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LuVerdict {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

impl LuVerdict {
    pub fn label(self) -> &'static str {
        match self {
            LuVerdict::Equivalent => "equivalent",
            LuVerdict::Inequivalent => "inequivalent",
            LuVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for LuVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Member of the local-unitary orbit of the magic span: either literally in
/// span{u_j} or critical (all one-qubit marginals maximally mixed).
pub fn in_class_a_orbit(s: &PureState4, tol: f64) -> bool {
    to_magic(s).1 < tol || is_critical(s, tol)
}

/// Global-phase weights of `E₀..E₃`: `ψ → e^{iφ}ψ` sends `E_m → c^{w_m} E_m`
/// with `c = e^{2iφ}`.
const PHASE_WEIGHTS: [i32; 4] = [2, 1, 2, 3];

/// Whether some unit `c` satisfies `E_m(a) = c^{w_m} E_m(b)` for all m.
pub fn e_match_up_to_phase(a: &[C64; 4], b: &[C64; 4], tol: f64) -> bool {
    let fits = |c: C64| {
        (0..4).all(|m| (a[m] - c.powi(PHASE_WEIGHTS[m]) * b[m]).norm() <= tol)
    };
    let mut candidates = vec![C64::new(1.0, 0.0)];
    for m in 0..4 {
        if b[m].norm() <= tol || a[m].norm() <= tol {
            continue;
        }
        let ratio = a[m] / b[m];
        let w = PHASE_WEIGHTS[m];
        let base = ratio.arg() / w as f64;
        for k in 0..w {
            let angle = base + 2.0 * std::f64::consts::PI * k as f64 / w as f64;
            candidates.push(C64::from_polar(1.0, angle));
        }
    }
    candidates.into_iter().any(fits)
}

fn spectra_match(a: &PureState4, b: &PureState4, tol: f64) -> Result<bool> {
    let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol);
    for cut in Cut::ALL {
        if !close(&cut_spectrum(a, cut)?.values, &cut_spectrum(b, cut)?.values) {
            return Ok(false);
        }
    }
    for q in Qubit::ALL {
        if !close(
            &single_qubit_spectrum(a, q)?.values,
            &single_qubit_spectrum(b, q)?.values,
        ) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Local-unitary equivalence test.
///
/// Necessary conditions: `E₀..E₃` agree up to a common global phase and every
/// marginal spectrum agrees. When both states lie in the orbit of the magic
/// span these are also sufficient; otherwise a match is inconclusive.
pub fn lu_equivalent(a: &PureState4, b: &PureState4, tol: f64) -> Result<LuVerdict> {
    a.require_normalized()?;
    b.require_normalized()?;
    if !e_match_up_to_phase(&all_e(a), &all_e(b), tol) || !spectra_match(a, b, tol)? {
        return Ok(LuVerdict::Inequivalent);
    }
    if in_class_a_orbit(a, tol) && in_class_a_orbit(b, tol) {
        Ok(LuVerdict::Equivalent)
    } else {
        Ok(LuVerdict::Inconclusive)
    }
}

/// True when `f_m(a) ≠ f_m(b)` beyond `tol` for some `m ∈ {0,1,2,3}`, which
/// rules out any SLOCC conversion between the two.
pub fn slocc_obstruction(a: &PureState4, b: &PureState4, tol: f64) -> Result<bool> {
    for s in [a, b] {
        s.require_normalized()?;
        if !in_class_a_orbit(s, tol) {
            return Err(Error::NotInClassA {
                residual: to_magic(s).1,
            });
        }
    }
    let (fa, fb) = (invariant_vector(a)?, invariant_vector(b)?);
    Ok((0..4).any(|m| (fa.f[m] - fb.f[m]).abs() > tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        apply_local, eq_last_state, from_magic, haar_random, magic_basis_vector, named_state,
        sample_class_a, LocalOperator, MagicCoeffs, NamedState,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn t_matrix_examples() {
        let t = t_matrix(&magic_basis_vector(0).unwrap(), Cut::AbCd);
        for r in 0..4 {
            for k in 0..4 {
                let corner = (r == 0 || r == 3) && (k == 0 || k == 3);
                let expected = if corner { 0.5 } else { 0.0 };
                assert!(close(t[(r, k)], c(expected, 0.0)));
            }
        }
        let t = t_matrix(&PureState4::basis(0).unwrap(), Cut::AcBd);
        assert_eq!(t[(0, 0)], c(1.0, 0.0));
        assert_eq!(t.frobenius_norm(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = haar_random(&mut rng);
        for cut in Cut::ALL {
            assert!((t_matrix(&s, cut).frobenius_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn j_is_an_involution_with_unit_determinant() {
        let j = j_matrix();
        assert!(j.matmul(j).max_abs_diff(&ComplexMat::identity(4)) < 1e-15);
        assert!(close(determinant(j), c(1.0, 0.0)));
    }

    #[test]
    fn e_examples() {
        let u0 = magic_basis_vector(0).unwrap();
        assert!(close(invariant_e(&u0, 0).unwrap(), c(0.0, 0.0)));
        for m in 1..4 {
            assert!(close(invariant_e(&u0, m).unwrap(), c(1.0, 0.0)));
        }
        let ghz = named_state(NamedState::Ghz4);
        let expected = [0.0, 1.0, 0.5, 0.25];
        for (m, v) in expected.iter().enumerate() {
            assert!(close(invariant_e(&ghz, m).unwrap(), c(*v, 0.0)), "m={m}");
        }
        let l = named_state(NamedState::L);
        assert!(invariant_e(&l, 1).unwrap().norm() < 1e-12);
        assert!(invariant_e(&l, 2).unwrap().norm() < 1e-12);
        assert!(close(invariant_e(&l, 3).unwrap(), c(1.0 / 9.0, 0.0)));
        assert!(invariant_e(&l, 4).is_err());
    }

    #[test]
    fn e_closed_form_on_magic_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = sample_class_a(&mut rng);
            let z = to_magic(&s).0.z;
            let e0: C64 = z.iter().product();
            assert!((invariant_e(&s, 0).unwrap() - e0).norm() < 1e-12);
            for m in 1..4 {
                let closed: C64 = z.iter().map(|x| x.powi(2 * m as i32)).sum();
                assert!((invariant_e(&s, m).unwrap() - closed).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn four_tangle_examples() {
        let ghz = named_state(NamedState::Ghz4);
        assert!((four_tangle_sigma(&ghz).unwrap() - 1.0).abs() < 1e-12);
        assert!(four_tangle_sigma(&named_state(NamedState::M)).unwrap() < 1e-24);
        assert!(four_tangle_sigma(&PureState4::basis(0).unwrap()).unwrap() < 1e-24);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let s = haar_random(&mut rng);
            let d = four_tangle(&s).unwrap() - four_tangle_sigma(&s).unwrap();
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn f_vector_definitions() {
        let v = invariant_vector(&named_state(NamedState::Ghz4)).unwrap();
        assert!((v.f[1] - 1.0).abs() < 1e-12);
        assert!((v.f[2] - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((v.f[3] - 0.25f64.cbrt()).abs() < 1e-12);
        assert!((v.f[4] - 1.0).abs() < 1e-12);
        assert!((v.f[5] - 0.25).abs() < 1e-12);
        assert!((v.f[6] - 0.5625).abs() < 1e-12);
        let c1 = invariant_vector(&named_state(NamedState::C1)).unwrap();
        assert!(c1.f[1] < 1e-12);
        let unnormalized = named_state(NamedState::L).scale(c(2.0, 0.0));
        assert!(matches!(invariant_vector(&unnormalized), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn lu_verdicts() {
        let tol = DEFAULT_EQUIV_TOL;
        let l = named_state(NamedState::L);
        let m = named_state(NamedState::M);
        assert_eq!(lu_equivalent(&l, &m, tol).unwrap(), LuVerdict::Inequivalent);
        assert_eq!(lu_equivalent(&l, &l, tol).unwrap(), LuVerdict::Equivalent);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = sample_class_a(&mut rng);
        let moved = apply_local(&s, &LocalOperator::random_unitary(&mut rng));
        assert_eq!(lu_equivalent(&s, &moved, tol).unwrap(), LuVerdict::Equivalent);

        let phased = moved.scale(C64::from_polar(1.0, 0.7));
        assert_eq!(lu_equivalent(&s, &phased, tol).unwrap(), LuVerdict::Equivalent);

        let h = haar_random(&mut rng);
        let h2 = apply_local(&h, &LocalOperator::random_unitary(&mut rng));
        assert_eq!(lu_equivalent(&h, &h2, tol).unwrap(), LuVerdict::Inconclusive);
        assert_eq!(lu_equivalent(&h, &s, tol).unwrap(), LuVerdict::Inequivalent);

        // the cluster states are reached by the last family at θ = 0 and π/2
        let c3 = named_state(NamedState::C3);
        let c2 = named_state(NamedState::C2);
        assert_eq!(lu_equivalent(&eq_last_state(0.0), &c3, tol).unwrap(), LuVerdict::Equivalent);
        assert_eq!(lu_equivalent(&eq_last_state(PI / 2.0), &c2, tol).unwrap(), LuVerdict::Equivalent);
        assert_eq!(lu_equivalent(&c2, &c3, tol).unwrap(), LuVerdict::Inequivalent);
    }

    #[test]
    fn m_and_its_conjugate_are_distinct_classes() {
        let m = named_state(NamedState::M);
        let v = invariant_vector(&m).unwrap();
        let w = invariant_vector(&m.conj()).unwrap();
        assert!(v.max_f_diff(&w) < 1e-12);
        assert_eq!(lu_equivalent(&m, &m.conj(), 1e-9).unwrap(), LuVerdict::Inequivalent);
    }

    #[test]
    fn slocc_examples() {
        let tol = DEFAULT_EQUIV_TOL;
        let ghz = named_state(NamedState::Ghz4);
        let l = named_state(NamedState::L);
        assert!(slocc_obstruction(&ghz, &l, tol).unwrap());
        assert!(!slocc_obstruction(&l, &l, tol).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let z = to_magic(&sample_class_a(&mut rng)).0.z;
        // odd permutation (1 2) and sign flips on two coordinates
        let w = MagicCoeffs::new([z[0], -z[2], -z[1], z[3]]);
        let a = from_magic(&MagicCoeffs::new(z));
        assert!(!slocc_obstruction(&a, &from_magic(&w), tol).unwrap());

        let product = PureState4::basis(0).unwrap();
        assert!(matches!(
            slocc_obstruction(&product, &l, tol),
            Err(Error::NotInClassA { .. })
        ));
    }

    #[test]
    fn special_linear_action_preserves_e() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let s = haar_random(&mut rng);
            let g = LocalOperator::random_special_linear(&mut rng);
            let gs = apply_local(&s, &g);
            let (a, b) = (all_e(&s), all_e(&gs));
            for m in 0..4 {
                assert!((a[m] - b[m]).norm() < 1e-9 * (1.0 + a[m].norm()));
            }
        }
    }
}

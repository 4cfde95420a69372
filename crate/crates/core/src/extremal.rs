//! Extremal spectra at fixed tangle, the Tsallis bound functions built on
//! them, and the auxiliary functions used to locate their optima.

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::entanglement::Spectrum;
use crate::error::{Error, Result};

const TAU_MAX: f64 = 1.5;
const DOMAIN_SLACK: f64 = 1e-12;
const SERIES_CUTOFF: f64 = 1e-5;
const MAX_SAMPLER_ATTEMPTS: usize = 1_000_000;

/// `x(τ) = √(1 − 2τ/3)`.
pub fn x_of(tau: f64) -> f64 {
    (1.0 - 2.0 * tau / 3.0).max(0.0).sqrt()
}

/// `y(τ) = √(1 − 3τ/4)`.
pub fn y_of(tau: f64) -> f64 {
    (1.0 - 0.75 * tau).max(0.0).sqrt()
}

fn check_range(what: &'static str, v: f64, lo: f64, hi: f64, domain: &'static str) -> Result<f64> {
    if !(v.is_finite() && v >= lo - DOMAIN_SLACK && v <= hi + DOMAIN_SLACK) {
        return Err(Error::OutOfDomain {
            what,
            value: v,
            domain,
        });
    }
    Ok(v.clamp(lo, hi))
}

fn check_tau(tau: f64) -> Result<f64> {
    check_range("tau", tau, 0.0, TAU_MAX, "[0, 3/2]")
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(())
}

fn spectrum(values: [f64; 4]) -> Spectrum {
    let mut values = values.map(|v| v.max(0.0)).to_vec();
    values.sort_by(|a, b| b.total_cmp(a));
    Spectrum { values }
}

/// `{(1+3x)/4, (1−x)/4, (1−x)/4, (1−x)/4}`.
pub fn spectrum_lm1(tau: f64) -> Result<Spectrum> {
    let x = x_of(check_tau(tau)?);
    let small = (1.0 - x) / 4.0;
    Ok(spectrum([(1.0 + 3.0 * x) / 4.0, small, small, small]))
}

/// The three-branch distribution with breakpoints at τ = 1 and τ = 4/3.
pub fn spectrum_l1(tau: f64) -> Result<Spectrum> {
    let tau = check_tau(tau)?;
    Ok(if tau >= 4.0 / 3.0 {
        let x = x_of(tau);
        let big = (1.0 + x) / 4.0;
        spectrum([big, big, big, (1.0 - 3.0 * x) / 4.0])
    } else if tau >= 1.0 {
        let y = y_of(tau);
        let big = (1.0 + y) / 3.0;
        spectrum([big, big, (1.0 - 2.0 * y) / 3.0, 0.0])
    } else {
        let r = (1.0 - tau).sqrt();
        spectrum([(1.0 + r) / 2.0, (1.0 - r) / 2.0, 0.0, 0.0])
    })
}

/// `{(1+√3x)/4 ×2, (1−√3x)/4 ×2}`, a two-level candidate that is never
/// extremal. Requires `1 ≤ τ ≤ 3/2`.
pub fn spectrum_two_level(tau: f64) -> Result<Spectrum> {
    let tau = check_range("tau", tau, 1.0, TAU_MAX, "[1, 3/2]")?;
    let s = 3f64.sqrt() * x_of(tau);
    let (hi, lo) = ((1.0 + s) / 4.0, (1.0 - s) / 4.0);
    Ok(spectrum([hi, hi, lo, lo]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalFamily {
    Lm1,
    L1,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalRegime {
    pub which: ExtremalFamily,
    pub tau: f64,
}

impl ExtremalRegime {
    pub fn spectrum(&self) -> Result<Spectrum> {
        match self.which {
            ExtremalFamily::Lm1 => spectrum_lm1(self.tau),
            ExtremalFamily::L1 => spectrum_l1(self.tau),
        }
    }
}

fn tsallis_terms(alpha: f64, terms: &[(f64, f64)]) -> f64 {
    // (weight, probability) pairs; zero probabilities contribute nothing
    let s: f64 = terms
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(w, p)| w * p.powf(alpha))
        .sum();
    (1.0 - s) / (alpha - 1.0)
}

/// Tsallis entropy of `spectrum_l1(t)` on the full range `0 ≤ t ≤ 3/2`.
pub fn tsallis_l1(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let t = check_tau(t)?;
    Ok(if t >= 4.0 / 3.0 {
        let x = x_of(t);
        tsallis_terms(alpha, &[(3.0, (1.0 + x) / 4.0), (1.0, (1.0 - 3.0 * x) / 4.0)])
    } else if t >= 1.0 {
        let y = y_of(t);
        tsallis_terms(alpha, &[(2.0, (1.0 + y) / 3.0), (1.0, (1.0 - 2.0 * y) / 3.0)])
    } else {
        let r = (1.0 - t).sqrt();
        tsallis_terms(alpha, &[(1.0, (1.0 + r) / 2.0), (1.0, (1.0 - r) / 2.0)])
    })
}

/// Tsallis entropy of `spectrum_lm1(t)`.
pub fn tsallis_lm1(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let x = x_of(check_tau(t)?);
    Ok(tsallis_terms(alpha, &[(1.0, (1.0 + 3.0 * x) / 4.0), (3.0, (1.0 - x) / 4.0)]))
}

/// `Ẽ(α, t)` for `1 ≤ t ≤ 3/2`: the largest Tsallis entropy at tangle `t`
/// when `α > 2` and the smallest when `0 < α < 2`.
pub fn e_tilde_max(alpha: f64, t: f64) -> Result<f64> {
    let t = check_range("t", t, 1.0, TAU_MAX, "[1, 3/2]")?;
    tsallis_l1(alpha, t)
}

/// Lower end of the feasible `t` range for a given `a` in the constrained bound.
pub fn constrained_t_min(a: f64) -> f64 {
    1.0 - a * a
}

/// Crossover `t_c = 2(1−a)(2+a)/3` of the constrained bound.
pub fn constrained_crossover(a: f64) -> f64 {
    2.0 * (1.0 - a) * (2.0 + a) / 3.0
}

/// Largest Tsallis entropy (`0 < α < 2`) at tangle `t` among spectra whose
/// entries are capped by `(1+a)/2`.
///
/// For `t ≥ t_c` this is the `lm1` value; below it the maximizer is
/// `{(1+a)/2, (1−a+2ω)/6, (1−a−ω)/6, (1−a−ω)/6}` with
/// `ω = √(4 − 2a − 2a² − 3t)`. Feasible for `1 − a² ≤ t ≤ 3/2`.
pub fn e_tilde_max_constrained(alpha: f64, a: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let a = check_range("a", a, 0.0, 1.0, "[0, 1]")?;
    let t = check_range("t", t, constrained_t_min(a), TAU_MAX, "[1 - a^2, 3/2]")?;
    let t_c = constrained_crossover(a);
    if t >= t_c {
        return tsallis_lm1(alpha, t);
    }
    let omega = (4.0 - 2.0 * a - 2.0 * a * a - 3.0 * t).max(0.0).sqrt();
    Ok(tsallis_terms(
        alpha,
        &[
            (1.0, (1.0 + a) / 2.0),
            (1.0, (1.0 - a + 2.0 * omega) / 6.0),
            (2.0, ((1.0 - a - omega) / 6.0).max(0.0)),
        ],
    ))
}

/// Which side of `α = 2` a bound function is being evaluated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// `α ≥ 2`: the mean is an upper bound.
    Max,
    /// `0 < α ≤ 2`: the mean is a lower bound on ℳ.
    Min,
}

fn bound_mean(alpha: f64, t: [f64; 3]) -> Result<f64> {
    let mut total = 0.0;
    for tk in t {
        total += e_tilde_max(alpha, tk)?;
    }
    Ok(total / 3.0)
}

/// `(1/3) Σ_k Ẽ(α, t_k)` for `α ≥ 2`.
pub fn f_max(alpha: f64, t1: f64, t2: f64, t3: f64) -> Result<f64> {
    if alpha < 2.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    bound_mean(alpha, [t1, t2, t3])
}

/// Same closed form as [`f_max`], declared for `0 < α ≤ 2`.
pub fn f_min(alpha: f64, t1: f64, t2: f64, t3: f64) -> Result<f64> {
    if alpha > 2.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    bound_mean(alpha, [t1, t2, t3])
}

/// Optimum of `f_max` (or `f_min`) on the plane `Σt = 4`, `1 ≤ t_k ≤ 3/2`:
/// a grid scan with spacing `step` refined by a finer scan around the best
/// point. Returns the location and the value.
pub fn landscape_optimum(alpha: f64, mode: BoundMode, step: f64) -> Result<([f64; 3], f64)> {
    let eval = |t1: f64, t2: f64| -> Option<f64> {
        let t3 = 4.0 - t1 - t2;
        let r = match mode {
            BoundMode::Max => f_max(alpha, t1, t2, t3),
            BoundMode::Min => f_min(alpha, t1, t2, t3),
        };
        r.ok()
    };
    // sign so that the search is always a maximization
    let sign = match mode {
        BoundMode::Max => 1.0,
        BoundMode::Min => -1.0,
    };
    // probe the domain once so parameter errors surface
    match mode {
        BoundMode::Max => f_max(alpha, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0)?,
        BoundMode::Min => f_min(alpha, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0)?,
    };
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::InvalidConfig(format!("grid step {step} must lie in (0, 0.1]")));
    }

    let scan = |lo1: f64, hi1: f64, lo2: f64, hi2: f64, h: f64| -> (f64, f64, f64) {
        let n1 = ((hi1 - lo1) / h).round() as usize;
        let n2 = ((hi2 - lo2) / h).round() as usize;
        (0..=n1)
            .into_par_iter()
            .map(|i| {
                let t1 = lo1 + i as f64 * h;
                let mut best = (f64::NEG_INFINITY, t1, f64::NAN);
                for j in 0..=n2 {
                    let t2 = lo2 + j as f64 * h;
                    if let Some(v) = eval(t1, t2) {
                        if sign * v > best.0 {
                            best = (sign * v, t1, t2);
                        }
                    }
                }
                best
            })
            .reduce(
                || (f64::NEG_INFINITY, f64::NAN, f64::NAN),
                |a, b| if b.0 > a.0 { b } else { a },
            )
    };

    let (_, t1, t2) = scan(1.0, 1.5, 1.0, 1.5, step);
    let fine = step / 100.0;
    let (_, t1, t2) = scan(
        (t1 - 2.0 * step).max(1.0),
        (t1 + 2.0 * step).min(1.5),
        (t2 - 2.0 * step).max(1.0),
        (t2 + 2.0 * step).min(1.5),
        fine,
    );
    let t = [t1, t2, 4.0 - t1 - t2];
    let value = eval(t[0], t[1]).ok_or(Error::OutOfDomain {
        what: "t3",
        value: t[2],
        domain: "[1, 3/2]",
    })?;
    Ok((t, value))
}

fn binomial(beta: f64, k: u32) -> f64 {
    (0..k).map(|i| (beta - i as f64) / (i + 1) as f64).product()
}

/// `v_α(x) = α/((α−1)4^{α−1}) · [(1+x)^{α−1} − (1−3x)^{α−1}]/x` on `[0, 1/3]`.
pub fn v_alpha(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let x = check_range("x", x, 0.0, 1.0 / 3.0, "[0, 1/3]")?;
    let beta = alpha - 1.0;
    let bracket = if x < SERIES_CUTOFF {
        4.0 * beta - 8.0 * binomial(beta, 2) * x + 28.0 * binomial(beta, 3) * x * x
    } else {
        ((1.0 + x).powf(beta) - (1.0 - 3.0 * x).max(0.0).powf(beta)) / x
    };
    Ok(alpha / (beta * 4f64.powf(beta)) * bracket)
}

/// `u_α(y) = α/((α−1)3^{α−1}) · [(1+y)^{α−1} − (1−2y)^{α−1}]/y` on `[0, 1/2]`.
pub fn u_alpha(alpha: f64, y: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let y = check_range("y", y, 0.0, 0.5, "[0, 1/2]")?;
    let beta = alpha - 1.0;
    let bracket = if y < SERIES_CUTOFF {
        3.0 * beta - 3.0 * binomial(beta, 2) * y + 9.0 * binomial(beta, 3) * y * y
    } else {
        ((1.0 + y).powf(beta) - (1.0 - 2.0 * y).max(0.0).powf(beta)) / y
    };
    Ok(alpha / (beta * 3f64.powf(beta)) * bracket)
}

/// `(1 − t₁/2)(1 − t₂/2)((t₁+t₂)/2 − 1)` on
/// `{1 ≤ t₁ ≤ 3/2, 5/2 − t₁ ≤ t₂ ≤ 3/2}`.
pub fn cluster_bound_f(t1: f64, t2: f64) -> Result<f64> {
    let t1 = check_range("t1", t1, 1.0, TAU_MAX, "[1, 3/2]")?;
    let t2 = check_range("t2", t2, 2.5 - t1, TAU_MAX, "[5/2 - t1, 3/2]")?;
    Ok((1.0 - t1 / 2.0) * (1.0 - t2 / 2.0) * ((t1 + t2) / 2.0 - 1.0))
}

/// A random four-entry spectrum with linear entropy `tau`.
///
/// Dirichlet(1,1,1,1) proposals are pushed radially, inside the plane
/// `Σλ = 1`, onto the sphere `Σλ² = 1 − τ/2` around the uniform point;
/// proposals that leave the simplex are rejected.
pub fn sample_fixed_tau_spectrum(rng: &mut (impl Rng + ?Sized), tau: f64) -> Result<Spectrum> {
    let tau = check_tau(tau)?;
    let radius = (0.75 - tau / 2.0).max(0.0).sqrt();
    for _ in 0..MAX_SAMPLER_ATTEMPTS {
        let raw: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
        let total: f64 = raw.iter().sum();
        let d = raw.map(|v| v / total - 0.25);
        let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let lambda = d.map(|v| 0.25 + radius * v / norm);
        if lambda.iter().all(|&v| v >= 0.0) {
            return Ok(spectrum(lambda));
        }
    }
    Err(Error::SamplerExhausted(MAX_SAMPLER_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{entropy, linear_entropy, EntropyMeasure};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_values(sp: &Spectrum, expected: &[f64]) {
        let e = Spectrum::new(expected.to_vec()).unwrap();
        assert!(sp.max_abs_diff(&e) < 1e-14, "{:?} vs {expected:?}", sp.values);
    }

    const THIRD: f64 = 1.0 / 3.0;
    const SIXTH: f64 = 1.0 / 6.0;

    #[test]
    fn lm1_examples() {
        assert_values(&spectrum_lm1(4.0 / 3.0).unwrap(), &[0.5, SIXTH, SIXTH, SIXTH]);
        assert_values(&spectrum_lm1(1.5).unwrap(), &[0.25; 4]);
        assert_values(&spectrum_lm1(0.0).unwrap(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(spectrum_lm1(1.6).is_err());
        assert!(spectrum_lm1(-0.1).is_err());
    }

    #[test]
    fn l1_examples_and_continuity() {
        assert_values(&spectrum_l1(4.0 / 3.0).unwrap(), &[THIRD, THIRD, THIRD, 0.0]);
        assert_values(&spectrum_l1(1.0).unwrap(), &[0.5, 0.5, 0.0, 0.0]);
        assert_values(&spectrum_l1(1.5).unwrap(), &[0.25; 4]);
        for bp in [1.0, 4.0 / 3.0] {
            let below = spectrum_l1(bp - 1e-12).unwrap();
            let above = spectrum_l1(bp + 1e-12).unwrap();
            assert!(below.max_abs_diff(&above) < 1e-5);
        }
    }

    #[test]
    fn spectra_have_the_requested_tangle() {
        for i in 0..=1000 {
            let tau = 1.5 * i as f64 / 1000.0;
            assert!((linear_entropy(&spectrum_lm1(tau).unwrap()) - tau).abs() < 1e-10);
            assert!((linear_entropy(&spectrum_l1(tau).unwrap()) - tau).abs() < 1e-10);
            if tau >= 1.0 {
                assert!((linear_entropy(&spectrum_two_level(tau).unwrap()) - tau).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn e_tilde_max_examples() {
        for alpha in [0.5, 1.5, 3.0, 6.0] {
            // both branch formulas at t = 4/3, where x = 1/3 and y = 0
            let upper = tsallis_terms(alpha, &[(3.0, (1.0 + THIRD) / 4.0), (1.0, 0.0)]);
            let lower = tsallis_terms(alpha, &[(2.0, THIRD), (1.0, THIRD)]);
            assert!((upper - lower).abs() < 1e-10);
            assert!((e_tilde_max(alpha, 4.0 / 3.0).unwrap() - lower).abs() < 1e-10);
            let end = e_tilde_max(alpha, 1.5).unwrap();
            assert!((end - (1.0 - 4f64.powf(1.0 - alpha)) / (alpha - 1.0)).abs() < 1e-12);
        }
        let direct = entropy(
            &Spectrum::new(vec![THIRD, THIRD, THIRD, 0.0]).unwrap(),
            &EntropyMeasure::tsallis(3.0),
        )
        .unwrap();
        assert!((e_tilde_max(3.0, 4.0 / 3.0).unwrap() - direct).abs() < 1e-12);
        assert!((direct - 4.0 / 9.0).abs() < 1e-12);
        assert!(e_tilde_max(3.0, 0.9).is_err());
        assert!(matches!(e_tilde_max(1.0, 1.2), Err(Error::InvalidAlpha(_))));
    }

    #[test]
    fn constrained_bound() {
        // a = 0: lm1 above the crossover, the capped spectrum below it
        for alpha in [0.5, 1.5] {
            for t in [1.0, 1.1, 1.25, 4.0 / 3.0, 1.4, 1.5] {
                let got = e_tilde_max_constrained(alpha, 0.0, t).unwrap();
                let expected = if t >= 4.0 / 3.0 {
                    tsallis_lm1(alpha, t).unwrap()
                } else {
                    let w = (4.0 - 3.0 * t).sqrt();
                    let sp = Spectrum::new(vec![0.5, (1.0 + 2.0 * w) / 6.0, (1.0 - w) / 6.0, (1.0 - w) / 6.0]);
                    entropy(&sp.unwrap(), &EntropyMeasure::tsallis(alpha)).unwrap()
                };
                assert!((got - expected).abs() < 1e-12);
            }
        }
        // a = 1: every t in [0, 3/2] is on the first branch
        assert_eq!(constrained_crossover(1.0), 0.0);
        for t in [0.0, 0.7, 1.5] {
            let v = e_tilde_max_constrained(1.5, 1.0, t).unwrap();
            assert!((v - tsallis_lm1(1.5, t).unwrap()).abs() < 1e-15);
        }
        for i in 1..10 {
            let a = i as f64 / 10.0;
            let tc = constrained_crossover(a);
            for alpha in [0.5, 1.5] {
                let at = e_tilde_max_constrained(alpha, a, tc).unwrap();
                let below = e_tilde_max_constrained(alpha, a, tc - 1e-12).unwrap();
                assert!((at - below).abs() < 1e-9, "a={a} alpha={alpha}");
            }
        }
        assert!(e_tilde_max_constrained(1.5, 0.5, 0.5).is_err());
        assert!(e_tilde_max_constrained(3.0, 0.5, 1.2).is_err());
    }

    #[test]
    fn constrained_bound_dominates_capped_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let alpha = 1.5;
        let m = EntropyMeasure::tsallis(alpha);
        let mut checked = 0;
        for _ in 0..20_000 {
            let t = 1.0 + 0.5 * rng.random::<f64>();
            let sp = sample_fixed_tau_spectrum(&mut rng, t).unwrap();
            // the smallest admissible a for this spectrum
            let a = (2.0 * sp.values[0] - 1.0).max(0.0);
            if t < constrained_t_min(a) {
                continue;
            }
            let bound = e_tilde_max_constrained(alpha, a, t).unwrap();
            assert!(entropy(&sp, &m).unwrap() <= bound + 1e-9);
            checked += 1;
        }
        assert!(checked > 1000);
    }

    #[test]
    fn f_bounds() {
        let v = f_max(3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0).unwrap();
        assert!((v - 4.0 / 9.0).abs() < 1e-12);
        assert!(f_max(1.5, 1.2, 1.3, 1.5).is_err());
        assert!(f_min(3.0, 1.2, 1.3, 1.5).is_err());
        assert!(f_max(3.0, 0.9, 1.6, 1.5).is_err());
    }

    #[test]
    fn landscape_optimum_is_symmetric_point() {
        for alpha in [3.0, 6.0] {
            let (t, _) = landscape_optimum(alpha, BoundMode::Max, 0.005).unwrap();
            assert!(t.iter().all(|v| (v - 4.0 / 3.0).abs() < 1e-3), "{t:?}");
        }
        let (t, _) = landscape_optimum(0.5, BoundMode::Min, 0.005).unwrap();
        assert!(t.iter().all(|v| (v - 4.0 / 3.0).abs() < 1e-3), "{t:?}");
    }

    #[test]
    fn u_v_endpoints() {
        for alpha in [0.5, 1.5, 2.5, 3.0, 5.0] {
            let v0 = v_alpha(alpha, 0.0).unwrap();
            assert!((v0 - alpha / 4f64.powf(alpha - 2.0)).abs() < 1e-12);
            let u0 = u_alpha(alpha, 0.0).unwrap();
            assert!((u0 - alpha / 3f64.powf(alpha - 2.0)).abs() < 1e-12);
            // the series agrees with the closed form just below the cutoff
            let x = SERIES_CUTOFF * 0.999;
            let beta = alpha - 1.0;
            let closed_v = alpha / (beta * 4f64.powf(beta))
                * ((1.0 + x).powf(beta) - (1.0 - 3.0 * x).powf(beta))
                / x;
            assert!((v_alpha(alpha, x).unwrap() - closed_v).abs() < 1e-9);
            let closed_u = alpha / (beta * 3f64.powf(beta))
                * ((1.0 + x).powf(beta) - (1.0 - 2.0 * x).powf(beta))
                / x;
            assert!((u_alpha(alpha, x).unwrap() - closed_u).abs() < 1e-9);
        }
        for alpha in [2.5, 3.0, 5.0] {
            let u_half = u_alpha(alpha, 0.5).unwrap();
            let expected = alpha / ((alpha - 1.0) * 2f64.powf(alpha - 2.0));
            assert!((u_half - expected).abs() < 1e-12);
            let v_third = v_alpha(alpha, 1.0 / 3.0).unwrap();
            let expected = alpha / ((alpha - 1.0) * 3f64.powf(alpha - 2.0));
            assert!((v_third - expected).abs() < 1e-12);
        }
        for k in 0..=10 {
            let x = k as f64 / 30.0;
            assert!((v_alpha(2.0, x).unwrap() - 2.0).abs() < 1e-12);
            assert!((u_alpha(2.0, x * 1.5).unwrap() - 2.0).abs() < 1e-12);
        }
        assert!(v_alpha(1.0, 0.1).is_err());
        assert!(v_alpha(3.0, 0.4).is_err());
        assert!(u_alpha(3.0, 0.6).is_err());
    }

    #[test]
    fn cluster_bound_values() {
        assert!((cluster_bound_f(1.0, 1.5).unwrap() - 1.0 / 32.0).abs() < 1e-15);
        assert!((cluster_bound_f(1.5, 1.0).unwrap() - 1.0 / 32.0).abs() < 1e-15);
        assert!((cluster_bound_f(1.5, 1.5).unwrap() - 1.0 / 32.0).abs() < 1e-15);
        assert!((cluster_bound_f(4.0 / 3.0, 4.0 / 3.0).unwrap() - 1.0 / 27.0).abs() < 1e-15);
        assert!(cluster_bound_f(1.1, 1.2).is_err());
    }

    #[test]
    fn fixed_tau_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for tau in [0.5, 1.0, 4.0 / 3.0, 1.45] {
            for _ in 0..500 {
                let sp = sample_fixed_tau_spectrum(&mut rng, tau).unwrap();
                assert!((linear_entropy(&sp) - tau).abs() < 1e-12);
                assert!((sp.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(sp.values.iter().all(|&v| v >= 0.0));
            }
        }
    }
}

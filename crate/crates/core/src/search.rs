//! Multistart Nelder–Mead search for extremal average entropies over the
//! parametrized families of the magic span.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::entanglement::{
    avg_entropy_e2, magic_cut_spectra, mean_entropy, CutSpectra, EntropyFamily, EntropyMeasure,
};
use crate::error::{Error, Result};
use crate::invariants::{lu_equivalent, LuVerdict};
use crate::states::{
    eq_last_state, from_magic, named_state, sample_class_m, to_magic, MagicCoeffs, NamedState,
    PureState4,
};

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;
const POLISH_ROUNDS: usize = 4;

/// Parameters of a Nelder–Mead run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Stop once every vertex is within this distance (max norm) of the best.
    pub tolerance: f64,
    pub initial_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Minimizes `f` from `x0`. NaN values count as `+∞`.
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x)).collect();
    let mut iterations = 0;

    let affine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect()
    };

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .flat_map(|x| x.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < opts.tolerance || iterations >= opts.max_iters {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for x in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = affine(&centroid, &worst, -REFLECTION);
        let fr = eval(&reflected);

        if fr < values[0] {
            let expanded = affine(&centroid, &worst, -EXPANSION);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, threshold) = if fr < values[n] {
            (affine(&centroid, &reflected, CONTRACTION), fr)
        } else {
            (affine(&centroid, &worst, CONTRACTION), values[n])
        };
        let fc = eval(&contracted);
        if fc < threshold {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = affine(&best, &simplex[i], SHRINK);
            values[i] = eval(&simplex[i]);
        }
    }
    NelderMeadOutcome {
        x: simplex.swap_remove(0),
        value: values[0],
        iterations,
    }
}

/// Nelder–Mead followed by restarts from the incumbent with a shrinking
/// initial simplex, until a restart no longer improves the value.
pub fn nelder_mead_polished<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let mut best = nelder_mead(&f, x0, opts);
    let mut step = opts.initial_step;
    for _ in 0..POLISH_ROUNDS {
        step = (step * 0.1).max(opts.tolerance * 10.0);
        let next = nelder_mead(&f, &best.x, &NelderMeadOptions { initial_step: step, ..*opts });
        let improved = next.value < best.value;
        let iterations = best.iterations + next.iterations;
        if improved {
            best = NelderMeadOutcome { iterations, ..next };
        } else {
            best.iterations = iterations;
            break;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchFamily {
    /// 8 reals: real and imaginary parts of `z`, normalized on use.
    ClassA,
    /// 6 reals: `z₀, z₁, ζ ∈ ℂ`; `z₂ = √c cos ζ`, `z₃ = √c sin ζ` with
    /// `c = −(z₀² + z₁²)`, then normalized. Every point lies in ℳ.
    ClassM,
    /// One angle of the cluster-like family.
    EqLastTheta,
}

impl SearchFamily {
    pub fn label(self) -> &'static str {
        match self {
            SearchFamily::ClassA => "classA",
            SearchFamily::ClassM => "classM",
            SearchFamily::EqLastTheta => "eqLastTheta",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            SearchFamily::ClassA => 8,
            SearchFamily::ClassM => 6,
            SearchFamily::EqLastTheta => 1,
        }
    }
}

impl fmt::Display for SearchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SearchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classa" | "a" => Ok(SearchFamily::ClassA),
            "classm" | "m" => Ok(SearchFamily::ClassM),
            "eqlasttheta" | "eqlast" => Ok(SearchFamily::EqLastTheta),
            _ => Err(Error::InvalidConfig(format!("unknown search family `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "maximize" | "max" => Ok(Direction::Maximize),
            "minimize" | "min" => Ok(Direction::Minimize),
            _ => Err(Error::InvalidConfig(format!("unknown direction `{s}`"))),
        }
    }
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::Maximize => "maximize",
            Direction::Minimize => "minimize",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Maximize => 1.0,
            Direction::Minimize => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub family: SearchFamily,
    pub objective: EntropyMeasure,
    pub direction: Direction,
}

impl SearchConfig {
    pub const DEFAULT_RESTARTS: usize = 64;
    pub const DEFAULT_MAX_ITERS: usize = 20_000;
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(family: SearchFamily, objective: EntropyMeasure, direction: Direction) -> Self {
        Self {
            restarts: Self::DEFAULT_RESTARTS,
            max_iters: Self::DEFAULT_MAX_ITERS,
            seed: 0,
            tolerance: Self::DEFAULT_TOLERANCE,
            family,
            objective,
            direction,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        self.objective.validate()?;
        if self.direction == Direction::Minimize {
            let tsallis = self.objective.family == EntropyFamily::Tsallis && !self.objective.is_alpha_one();
            if self.family != SearchFamily::ClassM || !tsallis {
                return Err(Error::InvalidConfig(
                    "minimization is supported only over classM with a Tsallis objective, alpha != 1"
                        .into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_state: PureState4,
    pub best_params: Vec<f64>,
    /// Best objective value reached by each restart, in restart order.
    pub trace: Vec<f64>,
}

fn magic_from_a(p: &[f64]) -> Option<MagicCoeffs> {
    let z = MagicCoeffs::new(std::array::from_fn(|j| C64::new(p[2 * j], p[2 * j + 1])));
    z.normalized().ok()
}

fn magic_from_m(p: &[f64]) -> Option<MagicCoeffs> {
    let z0 = C64::new(p[0], p[1]);
    let z1 = C64::new(p[2], p[3]);
    let zeta = C64::new(p[4], p[5]);
    let root = (-(z0 * z0 + z1 * z1)).sqrt();
    let z = MagicCoeffs::new([z0, z1, root * zeta.cos(), root * zeta.sin()]);
    z.normalized().ok()
}

fn magic_from_theta(p: &[f64]) -> MagicCoeffs {
    to_magic(&eq_last_state(p[0])).0
}

/// The magic coordinates of a parameter vector of `family`.
pub fn family_coeffs(family: SearchFamily, params: &[f64]) -> Option<MagicCoeffs> {
    if params.len() != family.dimension() || params.iter().any(|v| !v.is_finite()) {
        return None;
    }
    match family {
        SearchFamily::ClassA => magic_from_a(params),
        SearchFamily::ClassM => magic_from_m(params),
        SearchFamily::EqLastTheta => Some(magic_from_theta(params)),
    }
}

pub fn family_state(family: SearchFamily, params: &[f64]) -> Option<PureState4> {
    family_coeffs(family, params).map(|z| from_magic(&z))
}

/// Parameters of the classM chart reproducing the magic coordinates `z`
/// (which must satisfy `Σ z_j² = 0`). `None` when `z₂² + z₃²` vanishes.
pub fn class_m_params(z: &MagicCoeffs) -> Option<Vec<f64>> {
    let [z0, z1, z2, z3] = z.z;
    let root = (-(z0 * z0 + z1 * z1)).sqrt();
    if root.norm() < 1e-6 {
        return None;
    }
    let (a, b) = (z2 / root, z3 / root);
    // e^{iζ} = a + ib, so cos ζ = a and sin ζ = b when a² + b² = 1
    let zeta = -C64::i() * (a + C64::i() * b).ln();
    Some(vec![z0.re, z0.im, z1.re, z1.im, zeta.re, zeta.im])
}

fn objective_on(z: &MagicCoeffs, m: &EntropyMeasure) -> f64 {
    match magic_cut_spectra(z) {
        Ok(cs) => mean_entropy(cs.as_array(), m).unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    }
}

fn random_start(family: SearchFamily, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    Ok(match family {
        SearchFamily::ClassA => (0..8).map(|_| StandardNormal.sample(rng)).collect(),
        SearchFamily::ClassM => loop {
            let (_, params) = sample_class_m(rng)?;
            if let Some(p) = class_m_params(&params.to_magic()) {
                break p;
            }
        },
        SearchFamily::EqLastTheta => vec![rng.random::<f64>() * std::f64::consts::TAU],
    })
}

fn initial_step(family: SearchFamily) -> f64 {
    match family {
        SearchFamily::ClassA | SearchFamily::ClassM => 0.3,
        SearchFamily::EqLastTheta => 0.5,
    }
}

pub fn optimize_e2(cfg: &SearchConfig) -> Result<SearchResult> {
    optimize_e2_observed(cfg, &|_: &PureState4, _: f64| {})
}

/// [`optimize_e2`] with a callback on every evaluated state and its
/// objective value.
pub fn optimize_e2_observed(
    cfg: &SearchConfig,
    observer: &(dyn Fn(&PureState4, f64) + Sync),
) -> Result<SearchResult> {
    cfg.validate()?;
    let sign = cfg.direction.sign();
    let opts = NelderMeadOptions {
        max_iters: cfg.max_iters,
        tolerance: cfg.tolerance,
        initial_step: initial_step(cfg.family),
    };
    let runs: Vec<Result<NelderMeadOutcome>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            let x0 = random_start(cfg.family, &mut rng)?;
            let f = |p: &[f64]| match family_coeffs(cfg.family, p) {
                Some(z) => {
                    let v = objective_on(&z, &cfg.objective);
                    observer(&from_magic(&z), v);
                    -sign * v
                }
                None => f64::INFINITY,
            };
            Ok(nelder_mead_polished(f, &x0, &opts))
        })
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let trace: Vec<f64> = runs.iter().map(|o| -sign * o.value).collect();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(_, o)| o)
        .expect("at least one restart");
    let best_state = family_state(cfg.family, &best.x)
        .ok_or_else(|| Error::InvalidConfig("optimizer ended on a degenerate point".into()))?;
    Ok(SearchResult {
        best_value: avg_entropy_e2(&best_state, &cfg.objective)?,
        best_state,
        best_params: best.x.clone(),
        trace,
    })
}

/// `E₂^{Renyi α}(|M⟩) − 5/3`.
pub fn crossover_gap(alpha: f64) -> Result<f64> {
    let spectra = CutSpectra::of_state(&named_state(NamedState::M))?;
    Ok(mean_entropy(spectra.as_array(), &EntropyMeasure::renyi(alpha))? - 5.0 / 3.0)
}

/// Bisection root, to 1e-12, of [`crossover_gap`] on `[lo, hi]`.
pub fn crossover_alpha(lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidConfig(format!("bad bracket [{lo}, {hi}]")));
    }
    let spectra = CutSpectra::of_state(&named_state(NamedState::M))?;
    let gap = |a: f64| -> Result<f64> {
        Ok(mean_entropy(spectra.as_array(), &EntropyMeasure::renyi(a))? - 5.0 / 3.0)
    };
    let (mut a, mut b) = (lo, hi);
    let mut ga = gap(a)?;
    let gb = gap(b)?;
    if ga * gb > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > 1e-12 {
        let mid = 0.5 * (a + b);
        let gm = gap(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Minimum after local refinement.
    pub min_value: f64,
    pub argmin: PureState4,
    /// Smallest value among the raw samples.
    pub sample_min: f64,
    pub samples: usize,
}

/// Number of best raw samples that are refined locally.
const SCAN_REFINED: usize = 16;

/// Minimum of the average 2-vs-2 entropy over samples of ℳ, followed by
/// Nelder–Mead refinement of the best samples inside ℳ.
pub fn scan_m_for_minima(
    objective: &EntropyMeasure,
    samples: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<ScanResult> {
    objective.validate()?;
    if objective.is_alpha_one() {
        return Err(Error::InvalidAlpha(objective.alpha));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("at least one sample is required".into()));
    }
    let mut starts: Vec<(f64, Vec<f64>)> = Vec::with_capacity(samples);
    let mut drawn = 0;
    while drawn < samples {
        let (_, params) = sample_class_m(rng)?;
        drawn += 1;
        let z = params.to_magic();
        let value = objective_on(&z, objective);
        if let Some(p) = class_m_params(&z) {
            starts.push((value, p));
        } else {
            starts.push((value, Vec::new()));
        }
    }
    let sample_min = starts.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    starts.retain(|s| !s.1.is_empty());
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    starts.truncate(SCAN_REFINED);

    let opts = NelderMeadOptions {
        max_iters: SearchConfig::DEFAULT_MAX_ITERS,
        tolerance: SearchConfig::DEFAULT_TOLERANCE,
        initial_step: 0.05,
    };
    let refined: Vec<NelderMeadOutcome> = starts
        .par_iter()
        .map(|(_, x0)| {
            let f = |p: &[f64]| match family_coeffs(SearchFamily::ClassM, p) {
                Some(z) => objective_on(&z, objective),
                None => f64::INFINITY,
            };
            nelder_mead_polished(f, x0, &opts)
        })
        .collect();
    let best = refined
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or_else(|| Error::InvalidConfig("no usable ℳ sample".into()))?;
    let argmin = family_state(SearchFamily::ClassM, &best.x)
        .ok_or_else(|| Error::InvalidConfig("refinement ended on a degenerate point".into()))?;
    Ok(ScanResult {
        min_value: avg_entropy_e2(&argmin, objective)?,
        argmin,
        sample_min,
        samples,
    })
}

/// The distinguished states an extremal search is expected to land on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    L,
    M,
    Cluster,
}

impl Winner {
    pub fn label(self) -> &'static str {
        match self {
            Winner::L => "L",
            Winner::M => "M",
            Winner::Cluster => "cluster",
        }
    }

    /// Reference states of the winning class. `|M⟩` and its complex
    /// conjugate are distinct local-unitary classes with equal spectra.
    pub fn references(self) -> Vec<(&'static str, PureState4)> {
        match self {
            Winner::L => vec![("L", named_state(NamedState::L))],
            Winner::M => {
                let m = named_state(NamedState::M);
                vec![("M", m), ("M*", m.conj())]
            }
            Winner::Cluster => [NamedState::C1, NamedState::C2, NamedState::C3]
                .into_iter()
                .map(|n| (n.label(), named_state(n)))
                .collect(),
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `α₀`, below which `|M⟩` beats the cluster states in average Renyi entropy.
pub fn renyi_crossover() -> f64 {
    crossover_alpha(1.3, 1.9).unwrap_or(1.59)
}

/// The state class expected to be optimal for a configuration, where one is
/// known or conjectured.
pub fn predicted_winner(cfg: &SearchConfig) -> Option<Winner> {
    let m = cfg.objective;
    let alpha = if m.is_alpha_one() { 1.0 } else { m.alpha };
    match (cfg.family, cfg.direction) {
        (SearchFamily::ClassM, Direction::Minimize) => {
            if alpha < 2.0 {
                Some(Winner::L)
            } else if alpha > 2.0 {
                Some(Winner::M)
            } else {
                None
            }
        }
        (SearchFamily::EqLastTheta, _) => match m.family {
            EntropyFamily::Renyi if alpha >= 2.0 => Some(Winner::Cluster),
            _ => None,
        },
        (_, Direction::Maximize) => match m.family {
            EntropyFamily::Renyi if alpha >= 2.0 => Some(Winner::Cluster),
            EntropyFamily::Renyi if !m.is_alpha_one() && alpha > renyi_crossover() => {
                Some(Winner::Cluster)
            }
            EntropyFamily::Renyi | EntropyFamily::VonNeumann => Some(Winner::M),
            EntropyFamily::Tsallis if alpha < 2.0 => Some(Winner::M),
            EntropyFamily::Tsallis if alpha > 2.0 => Some(Winner::L),
            EntropyFamily::Tsallis => None,
        },
        (_, Direction::Minimize) => None,
    }
}

/// Label of the first reference state of `winner` that `s` is
/// local-unitarily equivalent to, at tolerance `tol`.
pub fn identify(s: &PureState4, winner: Winner, tol: f64) -> Result<Option<&'static str>> {
    for (label, reference) in winner.references() {
        if lu_equivalent(s, &reference, tol)? == LuVerdict::Equivalent {
            return Ok(Some(label));
        }
    }
    Ok(None)
}

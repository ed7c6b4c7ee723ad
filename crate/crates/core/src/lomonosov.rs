//! The set `S = cco{φ_z : |z| < 1}` in complex `c₀`, with `φ_z = (z, z², …)`.
//!
//! A coefficient vector `b ∈ ℓ₁` acts on `S` through `⟨b, φ_z⟩ = f_b(z)` where
//! `f_b(z) = Σ bₙ zⁿ`, so `sup_S |⟨b, ·⟩|` is the maximum of `|f_b|` on the
//! circle. This module computes that maximum with a certified error bound,
//! samples `S` through finitely atomic measures, and checks the necessary
//! conditions a measure `μ` must meet for `∫ φ_z dμ` to be a modulus support
//! point of `b`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::tolerance;
use crate::error::{Error, Result};
use crate::sample;

pub const DEFAULT_RESOLUTION: usize = 1 << 14;
pub const DEFAULT_DEGREE: usize = 64;
/// Relative tolerance for clustering grid maxima.
pub const CLUSTER_TOL: f64 = 1e-8;
const REFINE_ITERS: usize = 80;
const DISK_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorFunctional {
    /// `b₁, …, b_d`; there is no constant term.
    pub coeffs: Vec<Complex64>,
}

impl TaylorFunctional {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("at least one coefficient is required".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Precondition("coefficients must be finite".into()));
        }
        Ok(TaylorFunctional { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `L = Σ n|bₙ|`, a Lipschitz constant of `θ ↦ |f_b(e^{iθ})|`.
    pub fn derivative_bound(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(i, c)| (i + 1) as f64 * c.norm()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    fn horner(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z
    }

    fn modulus_at_angle(&self, theta: f64) -> f64 {
        self.horner(Complex64::from_polar(1.0, theta)).norm()
    }
}

/// `f_b(z)` for `|z| ≤ 1`.
pub fn eval_fb(b: &TaylorFunctional, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + DISK_SLACK {
        return Err(Error::Precondition(format!("|z| = {} exceeds 1", z.norm())));
    }
    Ok(b.horner(z))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupModulus {
    pub r: f64,
    /// Angles of the refined maxima within the clustering tolerance of `r`;
    /// empty when the level set is the full circle.
    pub argmax: Vec<f64>,
    pub full_circle: bool,
    /// `L·h/2` for grid spacing `h`.
    pub error_bound: f64,
    pub resolution: usize,
}

/// Maximum of `|f_b|` over the unit circle: a uniform grid refined by ternary
/// search around each strict local grid maximum.
pub fn sup_modulus(b: &TaylorFunctional, resolution: usize) -> Result<SupModulus> {
    if b.is_zero() {
        return Err(Error::Precondition("b must be nonzero".into()));
    }
    if resolution < 3 {
        return Err(Error::InvalidConfig("resolution must be at least 3".into()));
    }
    let h = 2.0 * PI / resolution as f64;
    let vals: Vec<f64> = (0..resolution).map(|j| b.modulus_at_angle(j as f64 * h)).collect();
    let grid_max = vals.iter().fold(0.0_f64, |m, &v| m.max(v));
    let cluster = CLUSTER_TOL * grid_max.max(1.0);
    let near = vals.iter().filter(|&&v| v >= grid_max - cluster).count();
    let full_circle = 2 * near > resolution;

    let mut peaks: Vec<(f64, f64)> = Vec::new();
    for j in 0..resolution {
        let prev = vals[(j + resolution - 1) % resolution];
        let next = vals[(j + 1) % resolution];
        if vals[j] > prev && vals[j] >= next {
            let (theta, v) = ternary_max(b, j as f64 * h - h, j as f64 * h + h);
            peaks.push((theta.rem_euclid(2.0 * PI), v.max(vals[j])));
        }
    }
    let r = peaks.iter().fold(grid_max, |m, p| m.max(p.1));
    let argmax = if full_circle {
        Vec::new()
    } else {
        let cluster = CLUSTER_TOL * r.max(1.0);
        let mut a: Vec<f64> = peaks.iter().filter(|p| p.1 >= r - cluster).map(|p| p.0).collect();
        a.sort_by(f64::total_cmp);
        a
    };
    Ok(SupModulus { r, argmax, full_circle, error_bound: b.derivative_bound() * h / 2.0, resolution })
}

fn ternary_max(b: &TaylorFunctional, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..REFINE_ITERS {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if b.modulus_at_angle(m1) < b.modulus_at_angle(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let t = (lo + hi) / 2.0;
    (t, b.modulus_at_angle(t))
}

/// `max |f_b|` over the polar grid with radii `k/radial` (`k < radial`) and
/// `angular` angles, i.e. strictly inside the disk.
pub fn interior_grid_max(b: &TaylorFunctional, radial: usize, angular: usize) -> f64 {
    (0..radial)
        .flat_map(|k| (0..angular).map(move |j| (k, j)))
        .map(|(k, j)| {
            let z = Complex64::from_polar(k as f64 / radial as f64, 2.0 * PI * j as f64 / angular as f64);
            b.horner(z).norm()
        })
        .fold(0.0, f64::max)
}

/// A finitely atomic probability measure on the closed disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskMeasure {
    pub atoms: Vec<Complex64>,
    pub weights: Vec<f64>,
}

impl DiskMeasure {
    pub fn new(atoms: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::Precondition("atoms and weights must be nonempty and of equal length".into()));
        }
        if let Some(z) = atoms.iter().find(|z| z.norm() > 1.0 + DISK_SLACK) {
            return Err(Error::Precondition(format!("atom {z} lies outside the closed disk")));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0 || !w.is_finite()) {
            return Err(Error::Precondition("weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Precondition(format!("weights sum to {total}, not 1")));
        }
        Ok(DiskMeasure { atoms, weights })
    }

    pub fn dirac(z: Complex64) -> Result<Self> {
        Self::new(vec![z], vec![1.0])
    }

    /// Uniform measure on `{ω e^{2πik/n}}`.
    pub fn roots_of_unity(n: usize, rotation: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        let atoms = (0..n).map(|k| Complex64::from_polar(1.0, rotation + 2.0 * PI * k as f64 / n as f64)).collect();
        Self::new(atoms, vec![1.0 / n as f64; n])
    }

    /// `m_j = Σ w_k z_k^j`.
    pub fn moment(&self, j: u32) -> Complex64 {
        self.atoms.iter().zip(&self.weights).map(|(z, &w)| z.powu(j) * w).sum()
    }
}

/// Truncated coordinates `(m₁, …, m_d)` of a point of `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SPoint {
    pub coords: Vec<Complex64>,
}

pub fn phi_z(z: Complex64, d: usize) -> Result<SPoint> {
    if z.norm() >= 1.0 {
        return Err(Error::Precondition("phi_z needs |z| < 1".into()));
    }
    let mut coords = Vec::with_capacity(d);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..d {
        p *= z;
        coords.push(p);
    }
    Ok(SPoint { coords })
}

pub fn sample_s(mu: &DiskMeasure, d: usize) -> Result<SPoint> {
    if mu.atoms.iter().any(|z| z.norm() >= 1.0) {
        return Err(Error::Precondition("atoms of points of S must lie in the open disk".into()));
    }
    Ok(SPoint { coords: (1..=d as u32).map(|j| mu.moment(j)).collect() })
}

/// `⟨b, w⟩ = Σ bₙ wₙ`.
pub fn pairing(b: &TaylorFunctional, w: &SPoint) -> Result<Complex64> {
    if w.coords.len() < b.degree() {
        return Err(Error::DimensionMismatch { expected: b.degree(), got: w.coords.len() });
    }
    Ok(b.coeffs.iter().zip(&w.coords).map(|(c, x)| c * x).sum())
}

/// `r(b) − |⟨b, w⟩|`.
pub fn support_gap(b: &TaylorFunctional, w: &SPoint) -> Result<f64> {
    let v = pairing(b, w)?;
    Ok(sup_modulus(b, DEFAULT_RESOLUTION)?.r - v.norm())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    /// The quantity compared against the tolerance.
    pub value: f64,
    /// Index of the moment or atom responsible for a failure.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub r: f64,
    /// `max_{J/2 ≤ j ≤ J} |m_j| < tol`.
    pub moment_decay: Verdict,
    /// Every charged atom lies on the circle, in the level set `|f_b| = r`.
    pub support: Verdict,
    /// `f_b` is constant on the charged atoms.
    pub constancy: Verdict,
}

impl ConditionsReport {
    pub fn all_hold(&self) -> bool {
        self.moment_decay.holds && self.support.holds && self.constancy.holds
    }

    /// `min_i (tol − value_i)`; nonnegative exactly when all three hold.
    pub fn score(&self, tol: f64) -> f64 {
        [&self.moment_decay, &self.support, &self.constancy]
            .iter()
            .map(|v| tol - v.value)
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn check_necessary_conditions(
    b: &TaylorFunctional,
    mu: &DiskMeasure,
    horizon: u32,
    tol: f64,
) -> Result<ConditionsReport> {
    let r = sup_modulus(b, DEFAULT_RESOLUTION)?.r;
    check_with_radius(b, mu, horizon, tol, r)
}

fn check_with_radius(b: &TaylorFunctional, mu: &DiskMeasure, horizon: u32, tol: f64, r: f64) -> Result<ConditionsReport> {
    let (mut worst_m, mut worst_j) = (0.0_f64, horizon / 2);
    for j in horizon / 2..=horizon {
        let m = mu.moment(j).norm();
        if m > worst_m {
            worst_m = m;
            worst_j = j;
        }
    }
    let moment_decay = Verdict {
        holds: worst_m < tol,
        value: worst_m,
        witness: (worst_m >= tol).then_some(worst_j as usize),
    };

    let charged: Vec<usize> = (0..mu.atoms.len()).filter(|&k| mu.weights[k] > tol).collect();
    let values: Vec<Complex64> = charged.iter().map(|&k| eval_fb(b, mu.atoms[k])).collect::<Result<_>>()?;
    let (mut dev, mut dev_k) = (0.0_f64, None);
    for (i, &k) in charged.iter().enumerate() {
        let d = (1.0 - mu.atoms[k].norm()).max(r - values[i].norm());
        if dev_k.is_none() || d > dev {
            dev = d;
            dev_k = Some(k);
        }
    }
    let support = Verdict { holds: dev < tol, value: dev, witness: dev_k.filter(|_| dev >= tol) };

    let (mut diam, mut diam_k) = (0.0_f64, None);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = (values[i] - values[j]).norm();
            if d > diam {
                diam = d;
                diam_k = Some(charged[j]);
            }
        }
    }
    let constancy = Verdict { holds: diam < tol, value: diam, witness: diam_k.filter(|_| diam >= tol) };
    Ok(ConditionsReport { r, moment_decay, support, constancy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureFamily {
    /// A few atoms at uniformly random points of the circle.
    BoundaryAtoms,
    /// Rotated roots of unity with equal weights.
    QuasiUniform,
    /// Atoms at the maximisers of `|f_b|` on the circle.
    LevelSet,
    /// Atoms strictly inside the disk.
    Interior,
}

const FAMILIES: [MeasureFamily; 4] = [
    MeasureFamily::BoundaryAtoms,
    MeasureFamily::QuasiUniform,
    MeasureFamily::LevelSet,
    MeasureFamily::Interior,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub degree: usize,
    pub budget: usize,
    pub seed: u64,
    /// Moments `m_j` are examined for `J/2 ≤ j ≤ J`.
    pub horizon: u32,
    pub resolution: usize,
    pub tolerance: f64,
    pub keep: usize,
    pub families: Vec<MeasureFamily>,
}

impl ScanConfig {
    pub fn new(degree: usize, budget: usize, seed: u64) -> Self {
        ScanConfig {
            degree,
            budget,
            seed,
            horizon: 128,
            resolution: DEFAULT_RESOLUTION,
            tolerance: tolerance(),
            keep: 10,
            families: FAMILIES.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub index: usize,
    pub family: MeasureFamily,
    pub b: TaylorFunctional,
    pub mu: DiskMeasure,
    pub conditions: ConditionsReport,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCounts {
    pub moment_decay: usize,
    pub support: usize,
    pub constancy: usize,
    pub all: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreStats {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub evaluated: usize,
    pub family_counts: BTreeMap<MeasureFamily, usize>,
    pub holds: ConditionCounts,
    pub scores: ScoreStats,
    /// Highest scores first; ties by index.
    pub best: Vec<Candidate>,
    pub coverage: String,
}

/// Randomised search over `(b, μ)` pairs, scored by the worst of the three
/// condition margins. Candidate `i` draws from its own seeded stream, so the
/// report does not depend on scheduling.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.budget == 0 {
        return Err(Error::InvalidConfig("budget must be at least 1".into()));
    }
    if config.degree == 0 || config.families.is_empty() || config.horizon < 2 {
        return Err(Error::InvalidConfig("degree, families and horizon must be nonempty".into()));
    }
    if config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return Err(Error::InvalidConfig("tolerance must be positive".into()));
    }
    let cands: Vec<Candidate> = (0..config.budget)
        .into_par_iter()
        .map(|i| candidate(config, i))
        .collect::<Result<_>>()?;

    let mut family_counts = BTreeMap::new();
    let mut holds = ConditionCounts { moment_decay: 0, support: 0, constancy: 0, all: 0 };
    for c in &cands {
        *family_counts.entry(c.family).or_insert(0) += 1;
        holds.moment_decay += c.conditions.moment_decay.holds as usize;
        holds.support += c.conditions.support.holds as usize;
        holds.constancy += c.conditions.constancy.holds as usize;
        holds.all += c.conditions.all_hold() as usize;
    }
    let mut scores: Vec<f64> = cands.iter().map(|c| c.score).collect();
    scores.sort_by(f64::total_cmp);
    let n = scores.len();
    let median = if n % 2 == 1 { scores[n / 2] } else { (scores[n / 2 - 1] + scores[n / 2]) / 2.0 };
    let stats = ScoreStats {
        min: scores[0],
        median,
        max: scores[n - 1],
        mean: scores.iter().sum::<f64>() / n as f64,
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cands[b].score.total_cmp(&cands[a].score).then(a.cmp(&b)));
    let best = order.iter().take(config.keep).map(|&i| cands[i].clone()).collect();
    Ok(ScanReport {
        config: config.clone(),
        evaluated: n,
        family_counts,
        holds,
        scores: stats,
        best,
        coverage: "finitely atomic measures only; non-atomic limit measures are not represented".into(),
    })
}

fn random_weights(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

fn candidate(config: &ScanConfig, index: usize) -> Result<Candidate> {
    let mut rng = sample::substream(config.seed, index as u64);
    let family = config.families[index % config.families.len()];
    let d = rng.gen_range(1..=config.degree);
    let mut coeffs: Vec<Complex64> = (0..d)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Complex64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..2.0 * PI))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    coeffs[d - 1] = Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..2.0 * PI));
    let l1: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let b = TaylorFunctional::new(coeffs.iter().map(|c| c / l1).collect())?;
    let sup = sup_modulus(&b, config.resolution)?;

    let mu = match family {
        MeasureFamily::BoundaryAtoms => {
            let k = rng.gen_range(1..=8);
            let atoms = (0..k).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect();
            DiskMeasure::new(atoms, random_weights(&mut rng, k))?
        }
        MeasureFamily::QuasiUniform => {
            DiskMeasure::roots_of_unity(rng.gen_range(2..=64), rng.gen_range(0.0..2.0 * PI))?
        }
        MeasureFamily::LevelSet => {
            let angles: Vec<f64> = if sup.argmax.is_empty() {
                (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(0.0..2.0 * PI)).collect()
            } else {
                sup.argmax.clone()
            };
            let k = angles.len();
            DiskMeasure::new(angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect(), random_weights(&mut rng, k))?
        }
        MeasureFamily::Interior => {
            let k = rng.gen_range(1..=8);
            let atoms = (0..k)
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..0.99), rng.gen_range(0.0..2.0 * PI)))
                .collect();
            DiskMeasure::new(atoms, random_weights(&mut rng, k))?
        }
    };
    let conditions = check_with_radius(&b, &mu, config.horizon, config.tolerance, sup.r)?;
    let score = conditions.score(config.tolerance);
    Ok(Candidate { index, family, b, mu, conditions, score })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let b = TaylorFunctional::from_real(&[1.0]).unwrap();
        assert_eq!(eval_fb(&b, c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
        let b = TaylorFunctional::from_real(&[0.0, 1.0]).unwrap();
        assert!((eval_fb(&b, c(0.0, 1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let b = TaylorFunctional::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(eval_fb(&b, c(0.5, 0.0)).unwrap(), c(0.75, 0.0));
        assert!(eval_fb(&b, c(1.0, 1.0)).is_err());
    }

    #[test]
    fn sup_modulus_examples() {
        let s = sup_modulus(&TaylorFunctional::from_real(&[1.0]).unwrap(), 1024).unwrap();
        assert!((s.r - 1.0).abs() < 1e-15 && s.full_circle);
        let mut mono = vec![0.0; 63];
        mono.push(1.0);
        let s = sup_modulus(&TaylorFunctional::from_real(&mono).unwrap(), 4096).unwrap();
        assert!((s.r - 1.0).abs() < 1e-12 && s.full_circle);
        let s = sup_modulus(&TaylorFunctional::from_real(&[1.0, 1.0]).unwrap(), 4096).unwrap();
        assert!((s.r - 2.0).abs() < 1e-12);
        assert_eq!(s.argmax.len(), 1);
        assert!(s.argmax[0].min(2.0 * PI - s.argmax[0]) < 1e-6);
        assert!(sup_modulus(&TaylorFunctional::from_real(&[0.0]).unwrap(), 16).is_err());
    }

    #[test]
    fn phi_and_samples() {
        assert_eq!(phi_z(c(0.0, 0.0), 3).unwrap().coords, vec![c(0.0, 0.0); 3]);
        let p = phi_z(c(0.5, 0.0), 4).unwrap();
        assert_eq!(p.coords, vec![c(0.5, 0.0), c(0.25, 0.0), c(0.125, 0.0), c(0.0625, 0.0)]);
        assert_eq!(phi_z(c(-0.5, 0.0), 2).unwrap().coords, vec![c(-0.5, 0.0), c(0.25, 0.0)]);
        assert!(phi_z(c(1.0, 0.0), 2).is_err());

        let one = DiskMeasure::dirac(c(0.5, 0.0)).unwrap();
        assert_eq!(sample_s(&one, 4).unwrap(), phi_z(c(0.5, 0.0), 4).unwrap());
        let two = DiskMeasure::new(vec![c(0.5, 0.0), c(-0.5, 0.0)], vec![0.5, 0.5]).unwrap();
        assert_eq!(sample_s(&two, 2).unwrap().coords, vec![c(0.0, 0.0), c(0.25, 0.0)]);
        assert!(sample_s(&DiskMeasure::dirac(c(1.0, 0.0)).unwrap(), 2).is_err());
    }

    #[test]
    fn support_gap_examples() {
        let b = TaylorFunctional::from_real(&[1.0]).unwrap();
        let g = support_gap(&b, &phi_z(c(0.5, 0.0), 3).unwrap()).unwrap();
        assert!((g - 0.5).abs() < 1e-12);
        let b = TaylorFunctional::from_real(&[1.0, 1.0]).unwrap();
        let g = support_gap(&b, &phi_z(c(0.9, 0.0), 2).unwrap()).unwrap();
        assert!((g - 0.29).abs() < 1e-12);
        let g = support_gap(&b, &SPoint { coords: vec![c(0.0, 0.0); 2] }).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        assert!(support_gap(&b, &phi_z(c(0.5, 0.0), 1).unwrap()).is_err());
    }

    #[test]
    fn condition_examples() {
        let b = TaylorFunctional::from_real(&[1.0]).unwrap();
        for n in [2, 3, 7, 32] {
            let mu = DiskMeasure::roots_of_unity(n, 0.0).unwrap();
            let r = check_necessary_conditions(&b, &mu, 64, 1e-9).unwrap();
            assert!(!r.moment_decay.holds);
            let j = r.moment_decay.witness.unwrap();
            assert_eq!(j % n, 0);
            assert!((r.moment_decay.value - 1.0).abs() < 1e-12);
        }

        let r = check_necessary_conditions(&b, &DiskMeasure::dirac(c(1.0, 0.0)).unwrap(), 64, 1e-9).unwrap();
        assert!(r.support.holds && r.constancy.holds && !r.moment_decay.holds);

        let b2 = TaylorFunctional::from_real(&[1.0, 1.0]).unwrap();
        let r = check_necessary_conditions(&b2, &DiskMeasure::dirac(c(0.0, 1.0)).unwrap(), 64, 1e-9).unwrap();
        assert!(!r.support.holds);
        assert_eq!(r.support.witness, Some(0));
        assert!((r.support.value - (2.0 - 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn measures_validate() {
        assert!(DiskMeasure::new(vec![c(0.5, 0.0)], vec![0.9]).is_err());
        assert!(DiskMeasure::new(vec![c(1.5, 0.0)], vec![1.0]).is_err());
        assert!(DiskMeasure::new(vec![c(0.5, 0.0)], vec![-1.0]).is_err());
    }

    #[test]
    fn scan_is_deterministic() {
        let cfg = ScanConfig { resolution: 1024, ..ScanConfig::new(8, 24, 5) };
        let a = scan(&cfg).unwrap();
        let b = scan(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.evaluated, 24);
        assert!(a.best.windows(2).all(|w| w[0].score >= w[1].score));
        assert!(scan(&ScanConfig::new(8, 0, 5)).is_err());
    }

    #[test]
    fn degree_one_boundary_measures_fail_moment_decay() {
        let cfg = ScanConfig {
            resolution: 512,
            keep: 64,
            families: vec![MeasureFamily::BoundaryAtoms, MeasureFamily::QuasiUniform, MeasureFamily::LevelSet],
            ..ScanConfig::new(1, 60, 9)
        };
        let rep = scan(&cfg).unwrap();
        assert!(rep.best.iter().all(|c| !c.conditions.moment_decay.holds));
        assert_eq!(rep.holds.moment_decay, 0);
    }
}

//! Column models `T: ℓ₁ → E` given by the images `T(e_n)` of the unit basis.
//!
//! On `ℓ₁` a functional `y*∘T` has norm `sup_n |y*(T e_n)|` and attains it
//! exactly when some column reaches that supremum. Each model carries a
//! description of the closure of its column set, so attainment is decided from
//! the untruncated operator rather than from a finite section.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::tolerance;
use crate::error::{Error, Result};
use crate::geometry2d::P2;
use crate::linalg::{self, dot};
use crate::operators::{opnorm, GeneralOperator};
use crate::sample;
use crate::spaces::Space;

/// Relative slack for comparisons that are exact in real arithmetic.
const ROUNDING: f64 = 8.0 * f64::EPSILON;

const COUNTABLE_EXTREME_HALF_SEGMENT: f64 = 0.5;
const MIN_ACCUMULATION_LEVELS: usize = 3;
/// Levels kept as vertices of the polygonal truncation of `W`; deeper columns
/// lie within `1e-6` of its sphere.
const W_LEVELS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ModelKind {
    /// Columns on `(−u₁, ½u₂] ∪ (u₁, ½u₂]` at dyadic parameters.
    Segment,
    /// `T e₁ = u0`; the other columns run through a dense sequence of the open ball.
    DenseBall { u0: P2, u0star: P2, seed: u64 },
    /// Columns are the extreme points of a stadium-shaped ball whose arcs are
    /// replaced by inscribed vertices accumulating at the segment endpoints.
    CountableExtreme { half_segment: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnModelOperator {
    pub kind: ModelKind,
    pub codomain: Space,
    pub n_max: usize,
    /// Norm of the untruncated operator.
    pub analytic_sup: f64,
    /// Whether some column reaches `analytic_sup`.
    pub sup_attained_flag: bool,
}

impl ColumnModelOperator {
    /// Column `n` (1-based) of the untruncated model.
    pub fn column(&self, n: usize) -> P2 {
        assert!(n >= 1, "columns are 1-based");
        match &self.kind {
            ModelKind::Segment => segment_column(n),
            ModelKind::DenseBall { u0, seed, .. } => {
                if n == 1 {
                    *u0
                } else {
                    dense_ball_point(&self.codomain, *seed, n)
                }
            }
            ModelKind::CountableExtreme { half_segment } => stadium_column(*half_segment, n),
        }
    }

    pub fn columns(&self) -> Vec<P2> {
        (1..=self.n_max).map(|n| self.column(n)).collect()
    }

    /// `max_{n ≤ n_max} ‖T e_n‖`, the norm of the truncation.
    pub fn truncated_norm(&self) -> Result<f64> {
        self.columns()
            .iter()
            .try_fold(0.0_f64, |m, c| Ok(m.max(self.codomain.norm(c)?)))
    }

    /// The truncation as a matrix `ℓ₁^{n_max} → E`.
    pub fn to_operator(&self) -> Result<GeneralOperator> {
        let cols = self.columns();
        let rows = (0..2).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        GeneralOperator::new(rows, Space::lp(self.n_max, 1.0)?, self.codomain.clone())
    }
}

fn segment_column(n: usize) -> P2 {
    if n == 1 {
        return [0.0, 0.5];
    }
    let m = usize::BITS - 1 - n.leading_zeros();
    let idx = n - (1 << m);
    let k = 2 * (idx / 2) + 1;
    let s = k as f64 / (1u64 << m) as f64;
    let side = if idx.is_multiple_of(2) { 1.0 } else { -1.0 };
    [side * (1.0 - s), s / 2.0]
}

/// Van der Corput radical inverse in base 2, in `[0, 1)`.
fn radical_inverse(mut i: u64) -> f64 {
    let mut x = 0.0;
    let mut f = 0.5;
    while i > 0 {
        if i & 1 == 1 {
            x += f;
        }
        i >>= 1;
        f /= 2.0;
    }
    x
}

fn dense_ball_point(e: &Space, seed: u64, n: usize) -> P2 {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    let offset = (sample::splitmix64(seed) >> 11) as f64 / (1u64 << 53) as f64;
    let theta = 2.0 * PI * (offset + n as f64 * GOLDEN).fract();
    let d = [theta.cos(), theta.sin()];
    let r = radical_inverse(n as u64 - 1);
    let nd = e.norm(&d).expect("planar codomain");
    [r * d[0] / nd, r * d[1] / nd]
}

/// Angles of the upper-arc vertices: `π/2`, then `φ_k` and `π − φ_k` with
/// `φ_k = (π/2)·2^{−k}`.
fn stadium_arc_point(c: f64, theta: f64) -> P2 {
    [theta.cos(), c + theta.sin()]
}

fn stadium_column(c: f64, n: usize) -> P2 {
    let top = stadium_arc_point(c, FRAC_PI_2);
    match n {
        1 => top,
        2 => [-top[0], -top[1]],
        _ => {
            let level = (n - 3) / 4 + 1;
            let phi = FRAC_PI_2 / (1u64 << level.min(62)) as f64;
            let p = match (n - 3) % 4 {
                0 | 2 => stadium_arc_point(c, phi),
                _ => stadium_arc_point(c, PI - phi),
            };
            if (n - 3) % 4 < 2 {
                p
            } else {
                [-p[0], -p[1]]
            }
        }
    }
}

pub fn segment_model(n_max: usize) -> Result<ColumnModelOperator> {
    if n_max < 2 {
        return Err(Error::Precondition("segment model needs n_max >= 2".into()));
    }
    Ok(ColumnModelOperator {
        kind: ModelKind::Segment,
        codomain: Space::lp(2, 2.0)?,
        n_max,
        analytic_sup: 1.0,
        sup_attained_flag: false,
    })
}

pub fn dense_ball_model(e: &Space, u0: P2, n_max: usize, seed: u64) -> Result<ColumnModelOperator> {
    if n_max < 1 {
        return Err(Error::Precondition("n_max must be positive".into()));
    }
    let s = e.support_functionals_at(&u0)?;
    if s.len() != 1 {
        return Err(Error::Precondition("u0 must be a smooth point".into()));
    }
    Ok(ColumnModelOperator {
        kind: ModelKind::DenseBall { u0, u0star: [s[0][0], s[0][1]], seed },
        codomain: e.clone(),
        n_max,
        analytic_sup: 1.0,
        sup_attained_flag: true,
    })
}

fn at_least(value: f64, sup: f64) -> bool {
    value >= sup - ROUNDING * sup.max(1.0)
}

/// Whether `ystar ∘ T` attains its norm on the untruncated `ℓ₁` model.
pub fn column_attains(m: &ColumnModelOperator, ystar: &[f64]) -> Result<bool> {
    m.codomain.check_dim(ystar)?;
    if ystar.iter().all(|&v| v == 0.0) {
        return Ok(true);
    }
    let y = [ystar[0], ystar[1]];
    let val = |p: P2| (y[0] * p[0] + y[1] * p[1]).abs();
    match &m.kind {
        // Closure: the two closed segments; only ±u₁ are missing from the columns.
        ModelKind::Segment => Ok(at_least(val([0.0, 0.5]), val([1.0, 0.0]))),
        // Closure: the closed ball. Only u0 lies on the sphere.
        ModelKind::DenseBall { u0, .. } => {
            let sup = m.codomain.dual_norm(ystar)?;
            Ok(at_least(val(*u0), sup))
        }
        ModelKind::CountableExtreme { half_segment } => Ok(stadium_attains(*half_segment, y)),
    }
}

/// Exact decision for the stadium columns. The column values converge to
/// `|y(b)|` and `|y(−a)|` at the two accumulation points; the supremum is
/// reached iff some column is at least the larger limit.
fn stadium_attains(c: f64, y: P2) -> bool {
    let b = stadium_arc_point(c, 0.0);
    let a_neg = stadium_arc_point(c, PI);
    let lim = |p: P2| (y[0] * p[0] + y[1] * p[1]).abs();
    let limit = lim(b).max(lim(a_neg));
    // Approach to b along θ → 0 and to −a along ψ = π − θ → 0:
    // y(v) − y(limit point) = y1 sin θ ∓ y0 (1 − cos θ).
    for (p, lin, quad) in [(b, y[1], -y[0]), (a_neg, y[1], y[0])] {
        let v = y[0] * p[0] + y[1] * p[1];
        if lim(p) < limit {
            continue;
        }
        let s = v.signum();
        if v == 0.0 || s * lin > 0.0 || (lin == 0.0 && s * quad >= 0.0) {
            return true;
        }
    }
    // Only finitely many columns can exceed the limits. Below the angle
    // θ₀ = 4|y1|/(π|y0|) the deviation at a dominant limit point has its
    // asymptotic sign; near the other limit point the values stay within
    // |y1| θ + |y0| θ²/2 of its smaller limit.
    let mut theta0 = FRAC_PI_2;
    for (p, quad) in [(b, -y[0]), (a_neg, y[0])] {
        if lim(p) == limit && (y[0] * p[0] + y[1] * p[1]).signum() * quad > 0.0 {
            theta0 = theta0.min(4.0 * y[1].abs() / (PI * y[0].abs()));
        }
    }
    let gap = limit - lim(b).min(lim(a_neg));
    let settled = |phi: f64| {
        phi <= theta0 / 2.0 && (gap == 0.0 || y[1].abs() * phi + y[0].abs() * phi * phi / 2.0 < gap)
    };
    let mut n = 1;
    loop {
        let level = if n <= 2 { 0 } else { (n - 3) / 4 + 1 };
        if level > 62 || (level > 0 && settled(FRAC_PI_2 / (1u64 << level) as f64)) {
            return false;
        }
        if at_least(lim(stadium_column(c, n)), limit) {
            return true;
        }
        n += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountableExtremeReport {
    /// `[a, b]` is the segment of the sphere, `b = (1, c)` and `a = (1, −c)`.
    pub a: P2,
    pub b: P2,
    /// The functional supporting `[a, b]`.
    pub segment_functional: P2,
    pub segment_functional_sup: f64,
    pub segment_functional_truncated_max: f64,
    pub segment_functional_attains: bool,
    pub samples: usize,
    /// `min (max_k ‖T̃ v_k‖ − max(‖T̃ a‖, ‖T̃ b‖))` over sampled `T̃: W → ℓ₂²`.
    pub min_margin: f64,
    pub failures: usize,
    pub accumulation_levels: usize,
    pub insufficient_accumulation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountableExtremeModel {
    pub w: Space,
    pub u: ColumnModelOperator,
    pub report: CountableExtremeReport,
}

/// `W` has the stadium `|x| ≤ 1`, `(|y| − c)₊² + x² ≤ 1` as its limit ball,
/// with the arcs replaced by inscribed vertices at angles accumulating at the
/// segment endpoints. The arcs are tangent to the segments there, so `a` and
/// `b` are smooth in the untruncated ball; the truncation `W` is only a
/// polygon.
pub fn countable_extreme_model(n_max: usize, samples: usize, seed: u64) -> Result<CountableExtremeModel> {
    if n_max < 4 {
        return Err(Error::Precondition("countable extreme model needs n_max >= 4".into()));
    }
    let c = COUNTABLE_EXTREME_HALF_SEGMENT;
    let a = [1.0, -c];
    let b = [1.0, c];
    let kept = n_max.min(2 + 4 * W_LEVELS);
    let mut pts: Vec<Vec<f64>> = (1..=kept).map(|n| stadium_column(c, n).to_vec()).collect();
    pts.push(a.to_vec());
    pts.push(b.to_vec());
    let w = Space::from_symmetric_points(&pts)?;
    let u = ColumnModelOperator {
        kind: ModelKind::CountableExtreme { half_segment: c },
        codomain: w.clone(),
        n_max,
        analytic_sup: 1.0,
        sup_attained_flag: true,
    };
    let wstar = [1.0, 0.0];
    let cols = u.columns();
    let truncated_max = cols.iter().fold(0.0_f64, |m, p| m.max(p[0].abs()));
    let segment_functional_attains = column_attains(&u, &wstar)?;

    let mut rng = sample::rng(seed);
    let mut min_margin = f64::INFINITY;
    let mut failures = 0;
    for _ in 0..samples {
        let r0: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let r1: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let img = |p: P2| (r0[0] * p[0] + r0[1] * p[1]).hypot(r1[0] * p[0] + r1[1] * p[1]);
        let best = cols.iter().fold(0.0_f64, |m, &p| m.max(img(p)));
        let margin = best - img(a).max(img(b));
        if margin <= 0.0 {
            failures += 1;
        }
        min_margin = min_margin.min(margin);
    }
    let accumulation_levels = n_max.saturating_sub(2) / 4;
    let report = CountableExtremeReport {
        a,
        b,
        segment_functional: wstar,
        segment_functional_sup: 1.0,
        segment_functional_truncated_max: truncated_max,
        segment_functional_attains,
        samples,
        min_margin: if samples == 0 { 0.0 } else { min_margin },
        failures,
        accumulation_levels,
        insufficient_accumulation: accumulation_levels < MIN_ACCUMULATION_LEVELS,
    };
    Ok(CountableExtremeModel { w, u, report })
}

/// `T x = (f1(x), ½ f2(x))` into `ℓ∞²`. It has norm one, and it attains its
/// norm only at points where `|f1| = 1`.
pub fn notrotund_witness(x: &Space, f1: &[f64], f2: &[f64]) -> Result<GeneralOperator> {
    let tol = tolerance();
    x.check_dim(f1)?;
    x.check_dim(f2)?;
    for f in [f1, f2] {
        let n = x.dual_norm(f)?;
        if (n - 1.0).abs() > tol {
            return Err(Error::Precondition(format!("functionals must have dual norm 1, got {n}")));
        }
    }
    if linalg::rank(&[f1.to_vec(), f2.to_vec()], x.dim()) < 2 {
        return Err(Error::DependentFunctionals);
    }
    GeneralOperator::new(
        vec![f1.to_vec(), linalg::scale(f2, 0.5)],
        x.clone(),
        Space::lp(2, f64::INFINITY)?,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NotrotundReport {
    pub operator: GeneralOperator,
    pub norm: f64,
    pub attained: bool,
    pub witness: Option<Vec<f64>>,
    /// `|f1(witness)|`, which is one whenever the norm is attained.
    pub f1_at_witness: f64,
}

pub fn notrotund_report(x: &Space, f1: &[f64], f2: &[f64]) -> Result<NotrotundReport> {
    let t = notrotund_witness(x, f1, f2)?;
    let r = opnorm(&t)?;
    let f1_at_witness = r.witness.as_ref().map(|w| dot(f1, w).abs()).unwrap_or(0.0);
    Ok(NotrotundReport { operator: t, norm: r.norm, attained: r.attained, witness: r.witness, f1_at_witness })
}

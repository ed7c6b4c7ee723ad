//! Mates: functionals `g` with `‖f + t g‖ ≤ √(1 + t²)` for all real `t`.
//!
//! For a polytopal space the condition is decided exactly: `(f, g)` has norm at
//! most one iff `f(v)² + g(v)² ≤ 1` at every ball vertex `v`, and a mate of `f`
//! exists iff the vertices where `|f| = 1` do not span the space. Other spaces
//! get a `t`-grid sweep whose verdict means "no violation found".

use serde::{Deserialize, Serialize};

use crate::config::tolerance;
use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::spaces::{Functional, Space};

/// Points per side of the log-spaced `t` grid; with `t = 0` this gives 2049.
pub const T_GRID_SIDE: usize = 1024;
pub const T_GRID_MIN: f64 = 1e-6;
/// Beyond this `|t|` the sweep switches to `s = 1/t`, where the ratio becomes
/// `‖s f + g‖ / √(1 + s²)` and tends to `‖g‖ ≤ 1`.
pub const T_GRID_MAX: f64 = 1e3;
const TAIL_SIDE: usize = 128;
const REFINE_STEPS: usize = 60;

/// `sup_t |a + t b| / √(1 + t²)`.
pub fn sup_ratio(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MateMethod {
    VertexExact,
    TGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MateCertificate {
    pub is_mate: bool,
    pub method: MateMethod,
    /// A `t` with `‖f + t g‖ > √(1 + t²) + tol`, when a violation was found.
    pub violating_t: Option<f64>,
    /// Vertices with `f(v)² + g(v)² = 1` (vertex-exact method only).
    pub tight_vertices: Option<Vec<Vec<f64>>>,
    /// `max_v √(f(v)² + g(v)²)` or the largest ratio seen on the grid.
    pub max_ratio: f64,
    pub note: Option<String>,
}

/// `(a, b) ↦ ‖a f + b g‖*`, evaluated on cached vertex values when possible.
pub(crate) struct PairDual<'a> {
    space: &'a Space,
    f: &'a [f64],
    g: &'a [f64],
    values: Option<Vec<(f64, f64)>>,
}

impl<'a> PairDual<'a> {
    pub(crate) fn new(space: &'a Space, f: &'a [f64], g: &'a [f64]) -> Result<Self> {
        let values = if space.is_polytopal() {
            Some(space.extreme_points()?.iter().map(|v| (dot(f, v), dot(g, v))).collect())
        } else {
            None
        };
        Ok(PairDual { space, f, g, values })
    }

    pub(crate) fn eval(&self, a: f64, b: f64) -> Result<f64> {
        match &self.values {
            Some(vals) => Ok(vals.iter().fold(0.0_f64, |m, &(x, y)| m.max((a * x + b * y).abs()))),
            None => self.space.dual_norm(&linalg::axpy(&linalg::scale(self.f, a), b, self.g)),
        }
    }

    /// `‖f + t g‖* / √(1 + t²)`.
    fn ratio(&self, t: f64) -> Result<f64> {
        Ok(self.eval(1.0, t)? / (1.0 + t * t).sqrt())
    }
}

fn check_pre(space: &Space, f: &[f64], g: &[f64]) -> Result<(f64, f64)> {
    space.check_dim(f)?;
    space.check_dim(g)?;
    let tol = tolerance();
    let nf = space.dual_norm(f)?;
    if (nf - 1.0).abs() > tol {
        return Err(Error::Precondition(format!("f must have dual norm 1, got {nf}")));
    }
    let ng = space.dual_norm(g)?;
    if ng > 1.0 + tol {
        return Err(Error::Precondition(format!("g must have dual norm at most 1, got {ng}")));
    }
    Ok((nf, ng))
}

fn structural_failure(f: &[f64], g: &[f64], ng: f64) -> Option<&'static str> {
    if ng <= tolerance() || g.iter().all(|&c| c == 0.0) {
        return Some("g is zero");
    }
    if linalg::rank(&[f.to_vec(), g.to_vec()], f.len()) < 2 {
        return Some("f and g are linearly dependent");
    }
    None
}

/// Decides whether `g` is a mate of `f`: exactly on polytopal spaces, by a
/// `t`-grid sweep otherwise.
pub fn is_mate(space: &Space, f: &[f64], g: &[f64]) -> Result<MateCertificate> {
    if space.is_polytopal() {
        is_mate_vertex(space, f, g)
    } else {
        is_mate_tgrid(space, f, g)
    }
}

pub fn is_mate_vertex(space: &Space, f: &[f64], g: &[f64]) -> Result<MateCertificate> {
    let (_, ng) = check_pre(space, f, g)?;
    let tol = tolerance();
    let verts = space.extreme_points()?;
    let mut worst = (0.0_f64, 0usize);
    let mut tight = Vec::new();
    for (k, v) in verts.iter().enumerate() {
        let rho = sup_ratio(dot(f, v), dot(g, v));
        if rho > worst.0 {
            worst = (rho, k);
        }
        if (rho - 1.0).abs() <= tol {
            tight.push(v.clone());
        }
    }
    let mut cert = MateCertificate {
        is_mate: false,
        method: MateMethod::VertexExact,
        violating_t: None,
        tight_vertices: Some(tight),
        max_ratio: worst.0,
        note: None,
    };
    if let Some(why) = structural_failure(f, g, ng) {
        cert.note = Some(why.into());
        return Ok(cert);
    }
    if worst.0 > 1.0 + tol {
        let v = &verts[worst.1];
        let (a, b) = (dot(f, v), dot(g, v));
        // |a + t b| / √(1 + t²) peaks at t = b / a.
        cert.violating_t = Some(if a.abs() > 1e-300 { b / a } else { b.signum() * 1e12 });
        return Ok(cert);
    }
    cert.is_mate = true;
    Ok(cert)
}

/// The symmetric sweep: `t = 0`, `±t` for `T_GRID_SIDE` log-spaced `t` in
/// `[T_GRID_MIN, T_GRID_MAX]`.
pub fn t_grid() -> Vec<f64> {
    let pos = linalg::logspace(T_GRID_MIN, T_GRID_MAX, T_GRID_SIDE);
    let mut ts: Vec<f64> = pos.iter().rev().map(|t| -t).collect();
    ts.push(0.0);
    ts.extend(pos);
    ts
}

/// Checks the mate inequality on [`t_grid`], refines each local maximum by a
/// golden-section search, and covers `|t| > T_GRID_MAX` through `s = 1/t`.
/// A violation means the ratio `‖f + t g‖ / √(1 + t²)` exceeds `1 + tol`.
pub fn is_mate_tgrid(space: &Space, f: &[f64], g: &[f64]) -> Result<MateCertificate> {
    let (_, ng) = check_pre(space, f, g)?;
    let tol = tolerance();
    let pd = PairDual::new(space, f, g)?;
    let ts = t_grid();
    let rs = ts.iter().map(|&t| pd.ratio(t)).collect::<Result<Vec<f64>>>()?;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for (k, (&t, &r)) in ts.iter().zip(&rs).enumerate() {
        if r > best.0 {
            best = (r, t);
        }
        let left = if k > 0 { rs[k - 1] } else { f64::NEG_INFINITY };
        let right = rs.get(k + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if r >= left && r >= right && k > 0 && k + 1 < ts.len() {
            let (tr, rr) = golden_max(|t| pd.ratio(t), ts[k - 1], ts[k + 1])?;
            if rr > best.0 {
                best = (rr, tr);
            }
        }
    }
    for s in linalg::logspace(T_GRID_MIN, 1.0 / T_GRID_MAX, TAIL_SIDE) {
        for s in [s, -s] {
            let r = pd.eval(s, 1.0)? / (1.0 + s * s).sqrt();
            if r > best.0 {
                best = (r, 1.0 / s);
            }
        }
    }
    let tail = pd.eval(0.0, 1.0)?;
    if tail > best.0 {
        best = (tail, 1e12);
    }
    let mut cert = MateCertificate {
        is_mate: false,
        method: MateMethod::TGrid,
        violating_t: None,
        tight_vertices: None,
        max_ratio: best.0,
        note: None,
    };
    if let Some(why) = structural_failure(f, g, ng) {
        cert.note = Some(why.into());
        return Ok(cert);
    }
    if best.0 > 1.0 + tol {
        cert.violating_t = Some(best.1);
        return Ok(cert);
    }
    cert.is_mate = true;
    cert.note = Some("no violation found on the grid".into());
    Ok(cert)
}

fn golden_max(h: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut hc, mut hd) = (h(c)?, h(d)?);
    for _ in 0..REFINE_STEPS {
        if hc >= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - phi * (b - a);
            hc = h(c)?;
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + phi * (b - a);
            hd = h(d)?;
        }
    }
    Ok(if hc >= hd { (c, hc) } else { (d, hd) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MateSearch {
    /// `None` when the space is not polytopal and no exact decision is available.
    pub exists: Option<bool>,
    pub witness: Option<Functional>,
    pub method: String,
    /// Ball vertices where `|f| = 1` (polytopal spaces).
    pub tight_vertices: Vec<Vec<f64>>,
}

/// Decides whether `f` has a mate. On polytopal spaces a mate exists iff the
/// vertices where `|f(v)| = 1` do not span; the witness is then a canonical
/// annihilator of those vertices at half the largest admissible scale.
pub fn has_mate(space: &Space, f: &[f64]) -> Result<MateSearch> {
    space.check_dim(f)?;
    let tol = tolerance();
    let nf = space.dual_norm(f)?;
    if (nf - 1.0).abs() > tol {
        return Err(Error::Precondition(format!("f must have dual norm 1, got {nf}")));
    }
    if !space.is_polytopal() {
        return search_smooth(space, f);
    }
    let dim = space.dim();
    let verts = space.extreme_points()?;
    let tight: Vec<Vec<f64>> = verts
        .iter()
        .filter(|v| dot(f, v).abs() >= 1.0 - tol)
        .cloned()
        .collect();
    if linalg::rank(&tight, dim) == dim {
        return Ok(MateSearch {
            exists: Some(false),
            witness: None,
            method: "spanning-criterion".into(),
            tight_vertices: tight,
        });
    }
    let h = linalg::nullspace(&tight, dim)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Numerical("empty annihilator".into()))?;
    let s_max = max_mate_scale(&verts, f, &h, tol);
    Ok(MateSearch {
        exists: Some(true),
        witness: Some(linalg::scale(&h, s_max / 2.0)),
        method: "spanning-criterion".into(),
        tight_vertices: tight,
    })
}

/// Largest `s` with `f(v)² + s² h(v)² ≤ 1` at every vertex.
pub fn max_mate_scale(verts: &[Vec<f64>], f: &[f64], h: &[f64], tol: f64) -> f64 {
    let mut s = f64::INFINITY;
    for v in verts {
        let (a, b) = (dot(f, v), dot(h, v));
        if b.abs() > 1e-15 && a.abs() < 1.0 - tol {
            s = s.min((1.0 - a * a).max(0.0).sqrt() / b.abs());
        }
    }
    s
}

/// Non-polytopal fallback: look for a direction `h` with `h(x0) = 0` whose
/// second-order quotient stays bounded, then shrink it until the grid sweep
/// passes. The answer stays "unknown"; the candidate is returned.
fn search_smooth(space: &Space, f: &[f64]) -> Result<MateSearch> {
    let x0 = space.norming_point(f)?;
    let dim = space.dim();
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        let h = linalg::axpy(&e, -x0[k], f);
        if linalg::norm_inf(&h) < 1e-9 || linalg::rank(&[f.to_vec(), h.clone()], dim) < 2 {
            continue;
        }
        let nh = space.dual_norm(&h)?;
        let h = linalg::scale(&h, 1.0 / nh);
        let lq = limsup_quotient(space, f, &h, DEFAULT_T_MIN)?;
        if let (true, Some(s)) = (lq.bounded, lq.rescale) {
            return Ok(MateSearch {
                exists: None,
                witness: Some(linalg::scale(&h, s)),
                method: "limsup-candidate".into(),
                tight_vertices: Vec::new(),
            });
        }
    }
    Ok(MateSearch { exists: None, witness: None, method: "unknown".into(), tight_vertices: Vec::new() })
}

/// `(f, 0)` is an extreme point of the unit ball of operators into `ℓ₂²` iff
/// `f` has no mate.
pub fn is_pair_extreme(space: &Space, f: &[f64]) -> Result<Option<bool>> {
    Ok(has_mate(space, f)?.exists.map(|b| !b))
}

pub const DEFAULT_T_MIN: f64 = 1e-6;
const LIMSUP_SIDE: usize = 256;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimsupReport {
    /// `max (‖f + t h‖ − 1) / t²` over `±[t_min, 1]`.
    pub value: f64,
    /// Maximum over `|t| ∈ [t_min, 10 t_min]`.
    pub inner: f64,
    /// Maximum over `|t| ∈ [10 t_min, 100 t_min]`.
    pub outer: f64,
    /// The quotient does not blow up as `t → 0`: `inner ≤ 3 · outer + 1`.
    pub bounded: bool,
    /// A scale `s ∈ (0, 1]` with `s h` a mate of `f`, found by halving.
    pub rescale: Option<f64>,
}

/// Second-order growth of `‖f + t h‖` near `t = 0`. A quotient growing like
/// `1/|t|` signals a first-order kink; a bounded one yields a mate `s h`.
pub fn limsup_quotient(space: &Space, f: &[f64], h: &[f64], t_min: f64) -> Result<LimsupReport> {
    space.check_dim(f)?;
    space.check_dim(h)?;
    if h.iter().all(|&c| c == 0.0) {
        return Err(Error::Precondition("h must be nonzero".into()));
    }
    if !(t_min > 0.0 && t_min < 1e-2) {
        return Err(Error::Precondition(format!("t_min must lie in (0, 0.01), got {t_min}")));
    }
    let pd = PairDual::new(space, f, h)?;
    let q = |t: f64| -> Result<f64> { Ok((pd.eval(1.0, t)? - 1.0) / (t * t)) };
    let window = |lo: f64, hi: f64| -> Result<f64> {
        let mut m = f64::NEG_INFINITY;
        for t in linalg::logspace(lo, hi, 32) {
            m = m.max(q(t)?).max(q(-t)?);
        }
        Ok(m)
    };
    let mut value = f64::NEG_INFINITY;
    for t in linalg::logspace(t_min, 1.0, LIMSUP_SIDE) {
        value = value.max(q(t)?).max(q(-t)?);
    }
    let inner = window(t_min, 10.0 * t_min)?;
    let outer = window(10.0 * t_min, 100.0 * t_min)?;
    let bounded = inner <= 3.0 * outer.max(0.0) + 1.0;
    let mut rescale = None;
    if bounded {
        let nh = space.dual_norm(h)?;
        let mut s = (1.0 / nh).min(1.0);
        for _ in 0..=MAX_HALVINGS {
            let g = linalg::scale(h, s);
            if is_mate(space, f, &g)?.is_mate {
                rescale = Some(s);
                break;
            }
            s /= 2.0;
        }
    }
    Ok(LimsupReport { value, inner, outer, bounded, rescale })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    /// `f` has a mate.
    pub has_mate: Option<bool>,
    /// Some candidate satisfies `‖f + t g‖ ≤ √(1 + t²)` on the grid.
    pub sqrt_inequality: bool,
    /// Some candidate satisfies `‖f + t g‖ ≤ 1 + t²/2` on `(−ε, ε)`.
    pub quadratic_inequality: bool,
    pub epsilon: Option<f64>,
    /// Some candidate has a bounded second-order quotient.
    pub bounded_limsup: bool,
    /// `(f, 0)` is not an extreme point.
    pub not_pair_extreme: Option<bool>,
    pub candidates: usize,
    pub unanimous: bool,
}

const EPS_HALVINGS: usize = 16;

/// Runs the equivalent conditions for a single `f` over a common candidate set:
/// the `has_mate` witness when one exists, plus the coordinate functionals
/// scaled into the dual ball.
pub fn check_prop29_chain(space: &Space, f: &[f64]) -> Result<ChainReport> {
    let tol = tolerance();
    let search = has_mate(space, f)?;
    let mut cands: Vec<Vec<f64>> = Vec::new();
    if let Some(w) = &search.witness {
        cands.push(w.clone());
    }
    for k in 0..space.dim() {
        let mut e = vec![0.0; space.dim()];
        e[k] = 1.0;
        let n = space.dual_norm(&e)?;
        let e = linalg::scale(&e, 1.0 / n);
        if linalg::rank(&[f.to_vec(), e.clone()], space.dim()) == 2 {
            cands.push(e);
        }
    }

    let mut sqrt_ok = false;
    let mut quad_ok = false;
    let mut epsilon = None;
    let mut limsup_ok = false;
    for g in &cands {
        if !sqrt_ok && is_mate_tgrid(space, f, g)?.is_mate {
            sqrt_ok = true;
        }
        if !quad_ok {
            if let Some(eps) = quadratic_epsilon(space, f, g, tol)? {
                quad_ok = true;
                epsilon = Some(eps);
            }
        }
        if !limsup_ok && limsup_quotient(space, f, g, DEFAULT_T_MIN)?.bounded {
            limsup_ok = true;
        }
    }
    let not_extreme = search.exists;
    let mut known = vec![sqrt_ok, quad_ok, limsup_ok];
    known.extend(search.exists);
    known.extend(not_extreme);
    let unanimous = known.iter().all(|&b| b) || known.iter().all(|&b| !b);
    Ok(ChainReport {
        has_mate: search.exists,
        sqrt_inequality: sqrt_ok,
        quadratic_inequality: quad_ok,
        epsilon,
        bounded_limsup: limsup_ok,
        not_pair_extreme: not_extreme,
        candidates: cands.len(),
        unanimous,
    })
}

/// Largest `ε = 2^{-k}`, `k ≤ 16`, with `‖f + t g‖ ≤ 1 + t²/2 + tol` on a grid
/// of `(−ε, ε)`.
fn quadratic_epsilon(space: &Space, f: &[f64], g: &[f64], tol: f64) -> Result<Option<f64>> {
    let pd = PairDual::new(space, f, g)?;
    let mut eps = 1.0;
    for _ in 0..=EPS_HALVINGS {
        let mut ok = true;
        for t in linalg::logspace(eps * 1e-3, eps * (1.0 - 1e-12), 64) {
            for t in [t, -t] {
                if pd.eval(1.0, t)? > 1.0 + t * t / 2.0 + tol {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            return Ok(Some(eps));
        }
        eps /= 2.0;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1() -> Space {
        Space::lp(2, 1.0).unwrap()
    }
    fn linf() -> Space {
        Space::lp(2, f64::INFINITY).unwrap()
    }

    #[test]
    fn sup_ratio_examples() {
        assert_eq!(sup_ratio(1.0, 0.0), 1.0);
        assert_eq!(sup_ratio(0.0, 1.0), 1.0);
        assert_eq!(sup_ratio(3.0, 4.0), 5.0);
        // Independent check: maximise (3 + 4t)² / (1 + t²) on a fine grid.
        let best = (0..200_001)
            .map(|k| -100.0 + k as f64 * 1e-3)
            .map(|t: f64| (3.0 + 4.0 * t).abs() / (1.0 + t * t).sqrt())
            .fold(0.0_f64, f64::max);
        assert!((best - 5.0).abs() < 1e-6);
    }

    #[test]
    fn is_mate_examples() {
        let c = is_mate(&l1(), &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!(c.is_mate && c.method == MateMethod::VertexExact);
        assert_eq!(c.tight_vertices.as_ref().unwrap().len(), 4);

        let c = is_mate(&linf(), &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!(!c.is_mate);
        let t = c.violating_t.unwrap();
        assert!(1.0 + t.abs() > (1.0 + t * t).sqrt() + 1e-9);

        let c = is_mate(&linf(), &[0.5, 0.5], &[0.5, -0.5]).unwrap();
        assert!(c.is_mate);
    }

    #[test]
    fn is_mate_rejects_non_unit_f() {
        assert!(matches!(is_mate(&l1(), &[2.0, 0.0], &[0.0, 1.0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn dependent_or_zero_g_is_not_a_mate() {
        let c = is_mate(&l1(), &[1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert!(!c.is_mate && c.violating_t.is_none());
        let c = is_mate(&l1(), &[1.0, 0.0], &[0.5, 0.0]).unwrap();
        assert!(!c.is_mate);
    }

    #[test]
    fn tgrid_agrees_on_examples() {
        assert!(is_mate_tgrid(&l1(), &[1.0, 0.0], &[0.0, 1.0]).unwrap().is_mate);
        assert!(!is_mate_tgrid(&linf(), &[1.0, 0.0], &[0.0, 1.0]).unwrap().is_mate);
        assert!(is_mate_tgrid(&linf(), &[0.5, 0.5], &[0.5, -0.5]).unwrap().is_mate);
        let l2 = Space::lp(2, 2.0).unwrap();
        assert!(is_mate(&l2, &[1.0, 0.0], &[0.0, 1.0]).unwrap().is_mate);
        assert!(!is_mate(&l2, &[1.0, 0.0], &[0.3, 0.9]).unwrap().is_mate);
    }

    #[test]
    fn has_mate_examples() {
        let r = has_mate(&linf(), &[1.0, 0.0]).unwrap();
        assert_eq!(r.exists, Some(false));
        assert_eq!(is_pair_extreme(&linf(), &[1.0, 0.0]).unwrap(), Some(true));

        let r = has_mate(&linf(), &[0.5, 0.5]).unwrap();
        assert_eq!(r.exists, Some(true));
        let w = r.witness.unwrap();
        assert!((w[0] + w[1]).abs() < 1e-12, "witness ∝ (1,−1): {w:?}");
        assert!(is_mate(&linf(), &[0.5, 0.5], &w).unwrap().is_mate);

        let r = has_mate(&l1(), &[1.0, 0.0]).unwrap();
        assert_eq!(r.exists, Some(true));
        let w = r.witness.unwrap();
        assert!(w[0].abs() < 1e-12 && w[1].abs() > 0.0);
        assert_eq!(is_pair_extreme(&l1(), &[1.0, 0.0]).unwrap(), Some(false));
    }

    #[test]
    fn has_mate_on_euclidean_space_is_unknown_with_candidate() {
        let l2 = Space::lp(3, 2.0).unwrap();
        let r = has_mate(&l2, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.exists, None);
        let w = r.witness.unwrap();
        assert!(is_mate(&l2, &[1.0, 0.0, 0.0], &w).unwrap().is_mate);
    }

    #[test]
    fn limsup_examples() {
        let r = limsup_quotient(&l1(), &[1.0, 0.0], &[0.0, 1.0], 1e-6).unwrap();
        assert!(r.value.abs() < 1e-9 && r.bounded);
        assert_eq!(r.rescale, Some(1.0));

        let l2 = Space::lp(2, 2.0).unwrap();
        let r = limsup_quotient(&l2, &[1.0, 0.0], &[0.0, 1.0], 1e-4).unwrap();
        assert!(r.bounded && (r.inner - 0.5).abs() < 1e-3);

        let small = limsup_quotient(&linf(), &[1.0, 0.0], &[0.0, 1.0], 1e-4).unwrap();
        let smaller = limsup_quotient(&linf(), &[1.0, 0.0], &[0.0, 1.0], 1e-6).unwrap();
        assert!(!small.bounded && !smaller.bounded);
        assert!(smaller.value > 50.0 * small.value);

        assert!(limsup_quotient(&l1(), &[1.0, 0.0], &[0.0, 0.0], 1e-6).is_err());
    }

    #[test]
    fn chain_examples() {
        let r = check_prop29_chain(&linf(), &[0.5, 0.5]).unwrap();
        assert!(r.unanimous && r.has_mate == Some(true) && r.sqrt_inequality);
        let r = check_prop29_chain(&linf(), &[1.0, 0.0]).unwrap();
        assert!(r.unanimous && r.has_mate == Some(false) && !r.bounded_limsup);
        let r = check_prop29_chain(&l1(), &[1.0, 0.0]).unwrap();
        assert!(r.unanimous && r.has_mate == Some(true) && r.quadratic_inequality);
    }
}

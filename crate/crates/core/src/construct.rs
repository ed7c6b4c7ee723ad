//! Norm attaining surjections onto a two-dimensional space.
//!
//! Given independent unit functionals `f1, f2` on a polytopal `X` and a plane
//! `E`, [`theo2_construct`] builds `T = T_τ ∘ R ∘ q : X → E` with
//! `ker T = ker f1 ∩ ker f2` that attains its norm. Here `q` is the quotient map
//! (in the coordinates `x ↦ (f1(x), f2(x))`), `R` a linear bijection onto `E`,
//! and `T_τ` fixes `e1` while shrinking `e2` by `τ`.
//!
//! The split into two cases follows the smoothness of the quotient points
//! `q(x1), q(x2)` where `f1(x1) = f2(x2) = 1`.

use serde::{Deserialize, Serialize};

use crate::config::tolerance;
use crate::error::{Error, Result};
use crate::geometry2d::{self, P2};
use crate::linalg::{self, apply2, dot, inv2, lex_cmp, mul2, solve2};
use crate::operators::{opnorm, AttainmentReport, GeneralOperator};
use crate::spaces::{Norm, QuotientFrame, Space};

pub type M2 = [[f64; 2]; 2];

const TAU_CAP: u64 = 1 << 20;
const DELTA_HALVINGS: usize = 40;
const CONTAINMENT_MARGIN: f64 = 1e-9;

/// A two-dimensional codomain with a smooth point `e1`, its supporting
/// functional `e1*` and a unit `e2 ∈ ker e1*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodomainFrame {
    pub space: Space,
    pub e1: P2,
    pub e1star: P2,
    pub e2: P2,
    /// Edge functionals of the unit polygon; empty for the Euclidean plane.
    pub edges: Vec<P2>,
}

impl CodomainFrame {
    /// Euclidean planes use `e1 = (1, 0)`. Polygonal balls use the midpoint of
    /// the first edge counter-clockwise from the lexicographically smallest
    /// vertex, which is always a smooth point.
    pub fn new(space: &Space) -> Result<Self> {
        if space.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: space.dim() });
        }
        if space.is_euclidean() {
            return Ok(CodomainFrame {
                space: space.clone(),
                e1: [1.0, 0.0],
                e1star: [1.0, 0.0],
                e2: [0.0, 1.0],
                edges: Vec::new(),
            });
        }
        if !space.is_polytopal() {
            return Err(Error::Precondition(
                "codomain must be Euclidean or polygonal (lp with p in {1, 2, inf} or a polygon)".into(),
            ));
        }
        let poly = space.polygon()?;
        let edges = geometry2d::edge_functionals(&poly);
        let e1 = [(poly[0][0] + poly[1][0]) / 2.0, (poly[0][1] + poly[1][1]) / 2.0];
        let e1star = edges[0];
        let d = [-e1star[1], e1star[0]];
        let nd = geometry2d::polygon_gauge(&edges, d);
        Ok(CodomainFrame { space: space.clone(), e1, e1star, e2: [d[0] / nd, d[1] / nd], edges })
    }

    pub fn norm(&self, y: P2) -> f64 {
        if self.edges.is_empty() {
            y[0].hypot(y[1])
        } else {
            geometry2d::polygon_gauge(&self.edges, y)
        }
    }

    pub fn e1star_at(&self, y: P2) -> f64 {
        self.e1star[0] * y[0] + self.e1star[1] * y[1]
    }

    /// `P = [e1 e2]` (columns).
    pub fn basis(&self) -> M2 {
        [[self.e1[0], self.e2[0]], [self.e1[1], self.e2[1]]]
    }

    /// `T_τ = P diag(1, τ) P⁻¹`.
    pub fn t_tau(&self, tau: f64) -> Result<M2> {
        let p = self.basis();
        let pinv = inv2(p).ok_or_else(|| Error::Numerical("e1, e2 are dependent".into()))?;
        Ok(mul2(mul2(p, [[1.0, 0.0], [0.0, tau]]), pinv))
    }

    /// Supporting functional of `E` at `y ≠ 0`, scaled so that `g(y) = ‖y‖`.
    pub fn norming_functional(&self, y: P2) -> P2 {
        if self.edges.is_empty() {
            let n = y[0].hypot(y[1]);
            return [y[0] / n, y[1] / n];
        }
        *self
            .edges
            .iter()
            .max_by(|a, b| (a[0] * y[0] + a[1] * y[1]).total_cmp(&(b[0] * y[0] + b[1] * y[1])))
            .expect("polygon has edges")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauChoice {
    pub tau: f64,
    /// `τ = 1/n`.
    pub n: u64,
    /// `1 − max ‖T_τ(k)‖` over the vertices of `K`.
    pub margin: f64,
}

/// Smallest `n ≥ 2` with `T_{1/n}(K)` inside the open unit ball (margin at
/// least `1e-9`), checked on the vertices of the polygon `K`.
pub fn find_tau_compact(frame: &CodomainFrame, k: &[P2]) -> Result<TauChoice> {
    let sup = k.iter().fold(0.0_f64, |m, &p| m.max(frame.e1star_at(p).abs()));
    if sup >= 1.0 - 1e-12 {
        return Err(Error::Precondition(format!("sup |e1*(K)| = {sup} must be < 1")));
    }
    for n in 2..=TAU_CAP {
        let tau = 1.0 / n as f64;
        let m = frame.t_tau(tau)?;
        let worst = k.iter().fold(0.0_f64, |w, &p| w.max(frame.norm(apply2(m, p))));
        if worst < 1.0 - CONTAINMENT_MARGIN {
            return Ok(TauChoice { tau, n, margin: 1.0 - worst });
        }
    }
    Err(Error::Numerical(format!("no tau = 1/n with n <= {TAU_CAP} compresses K into the open ball")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramTau {
    pub tau: TauChoice,
    pub delta: f64,
    /// Vertices of `A = {|h1|, |h2| ≤ 1}`.
    pub a: Vec<P2>,
    /// `A` clipped to `|e1*| ≤ 1 − δ`.
    pub k: Vec<P2>,
}

/// For the parallelogram `A = {x : |h1(x)|, |h2(x)| ≤ 1}` touching the sphere at
/// the smooth point `e1`, finds `δ` with the caps `{x ∈ A : |e1*(x)| ≥ 1 − δ}`
/// inside `B_E`, then `τ` compressing the rest into the open ball, so that
/// `T_τ(A) ⊂ B_E`.
pub fn find_tau_parallelogram(frame: &CodomainFrame, h1: P2, h2: P2) -> Result<ParallelogramTau> {
    let tol = tolerance();
    if !frame.space.is_smooth_point(&frame.e1)? {
        return Err(Error::Precondition("e1 must be a smooth point".into()));
    }
    let dot2 = |a: P2, b: P2| a[0] * b[0] + a[1] * b[1];
    if (dot2(h1, frame.e1) - 1.0).abs() > tol || (dot2(h2, frame.e1) - 1.0).abs() > tol {
        return Err(Error::Precondition("h1(e1) = h2(e1) = 1 is required".into()));
    }
    let mid = [(h1[0] + h2[0]) / 2.0, (h1[1] + h2[1]) / 2.0];
    if (mid[0] - frame.e1star[0]).abs() > tol || (mid[1] - frame.e1star[1]).abs() > tol {
        return Err(Error::Precondition("e1* must equal (h1 + h2)/2".into()));
    }
    let hm = [[h1[0], h1[1]], [h2[0], h2[1]]];
    if solve2(hm, [1.0, 1.0]).is_none() {
        return Err(Error::DependentFunctionals);
    }
    let mut a = Vec::with_capacity(4);
    for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)] {
        a.push(solve2(hm, [s1, s2]).ok_or(Error::DependentFunctionals)?);
    }
    let a = geometry2d::convex_hull(&a);
    let e1s = frame.e1star;
    let mut delta = 0.5;
    for _ in 0..=DELTA_HALVINGS {
        let cap = geometry2d::clip_halfplane(&a, [-e1s[0], -e1s[1]], -(1.0 - delta));
        if cap.iter().all(|&p| frame.norm(p) <= 1.0 + tol) {
            let k = geometry2d::clip_slab(&a, e1s, 1.0 - delta);
            let tau = find_tau_compact(frame, &k)?;
            let m = frame.t_tau(tau.tau)?;
            let worst = a.iter().fold(0.0_f64, |w, &p| w.max(frame.norm(apply2(m, p))));
            if worst > 1.0 + tol {
                return Err(Error::Numerical(format!("T_tau(A) leaves the ball: {worst}")));
            }
            return Ok(ParallelogramTau { tau, delta, a, k });
        }
        delta /= 2.0;
    }
    Err(Error::Numerical("no admissible delta within 40 halvings".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeCoefficients {
    pub c1: f64,
    pub c2: f64,
    /// `x1*(x2)`.
    pub b1: f64,
    /// `x2*(x1)`.
    pub b2: f64,
    /// `y = a1 x1 + a2 x2`.
    pub a1: f64,
    pub a2: f64,
    /// `c1 + c2 b2 ≤ 1`, `c1 b1 + c2 ≤ 1` and `c1 + c2 ≥ 1` within tolerance.
    pub inequalities_hold: bool,
}

/// Writes a supporting functional `f` at `y ∈ cone{x1, x2}` as
/// `c1 x1* + c2 x2*`, where `x_i*` is the unique supporting functional at the
/// smooth point `x_i`.
pub fn cone_coefficients(y_space: &Space, x1: P2, x2: P2, y: P2, f: P2) -> Result<ConeCoefficients> {
    let tol = tolerance();
    let s1 = y_space.support_functionals_at(&x1)?;
    let s2 = y_space.support_functionals_at(&x2)?;
    if s1.len() != 1 || s2.len() != 1 {
        return Err(Error::Precondition("x1 and x2 must be smooth points".into()));
    }
    let (x1s, x2s) = ([s1[0][0], s1[0][1]], [s2[0][0], s2[0][1]]);
    let [c1, c2] = solve2([[x1s[0], x2s[0]], [x1s[1], x2s[1]]], f).ok_or(Error::DependentFunctionals)?;
    let [a1, a2] = solve2([[x1[0], x2[0]], [x1[1], x2[1]]], y)
        .ok_or_else(|| Error::Precondition("x1 and x2 must be independent".into()))?;
    let b1 = x1s[0] * x2[0] + x1s[1] * x2[1];
    let b2 = x2s[0] * x1[0] + x2s[1] * x1[1];
    let inequalities_hold =
        c1 + c2 * b2 <= 1.0 + tol && c1 * b1 + c2 <= 1.0 + tol && c1 + c2 >= 1.0 - tol;
    Ok(ConeCoefficients { c1, c2, b1, b2, a1, a2, inequalities_hold })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    SmoothSmooth,
    Nonsmooth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case1Data {
    /// Functional equal to `alpha` on the line through `xt1, xt2`, unit norm.
    pub ft3: P2,
    pub alpha: f64,
    pub xt3: P2,
    pub t: f64,
    pub r: M2,
    pub k: Vec<P2>,
    /// Quotient-ball vertex maximising `‖T_τ R y‖`, sign-adjusted into the cone.
    pub maximizer: P2,
    pub in_cone: bool,
    pub cone: ConeCoefficients,
    /// A domain vertex where `q*((T_τ R)* g / ‖T_τ R‖)` equals one.
    pub proof_witness: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case2Data {
    pub g1: P2,
    pub g2: P2,
    pub y: P2,
    pub r: M2,
    pub h1: P2,
    pub h2: P2,
    pub parallelogram: ParallelogramTau,
    /// `‖T(x1) − e1‖∞`.
    pub x1_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionChecks {
    /// `max ‖T z‖∞` over the kernel basis of the quotient map.
    pub kernel_residual: f64,
    pub rank: usize,
    pub attainment: AttainmentReport,
    /// `|‖T v‖ − ‖T‖|` at the attainment witness.
    pub witness_gap: f64,
    /// `max ‖T_τ R p‖` over the quotient polygon, which must equal `‖T‖`.
    pub quotient_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub case: Case,
    /// Whether `f1, f2` were exchanged so that the non-smooth point comes first.
    pub swapped: bool,
    pub frame: QuotientFrame,
    pub codomain: CodomainFrame,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub xt1: P2,
    pub xt2: P2,
    pub case1: Option<Case1Data>,
    pub case2: Option<Case2Data>,
    pub tau: f64,
    /// The 2×2 map `T_τ ∘ R` on quotient coordinates.
    pub quotient_map: M2,
    pub operator: GeneralOperator,
    pub checks: ConstructionChecks,
}

fn lex_first_max(verts: &[Vec<f64>], f: &[f64]) -> Vec<f64> {
    let max = verts.iter().fold(f64::NEG_INFINITY, |m, v| m.max(dot(f, v)));
    let tie = 1e-12 * max.abs().max(1.0);
    verts
        .iter()
        .find(|v| dot(f, v) >= max - tie)
        .cloned()
        .expect("nonempty vertex list")
}

fn lex_sorted(poly: &[P2]) -> Vec<P2> {
    let mut p = poly.to_vec();
    p.sort_by(|a, b| lex_cmp(a, b));
    p
}

/// Builds the norm attaining surjection `X → E` with kernel `ker f1 ∩ ker f2`.
pub fn theo2_construct(x: &Space, f1: &[f64], f2: &[f64], e: &Space) -> Result<ConstructionTrace> {
    let tol = tolerance();
    for f in [f1, f2] {
        let n = x.dual_norm(f)?;
        if (n - 1.0).abs() > tol {
            return Err(Error::Precondition(format!("functionals must have dual norm 1, got {n}")));
        }
    }
    let codomain = CodomainFrame::new(e)?;
    let verts = x.extreme_points()?;
    let x1 = lex_first_max(&verts, f1);
    let x2 = lex_first_max(&verts, f2);
    let frame = x.quotient_space(f1, f2)?;
    let (xt1, xt2) = (frame.map(&x1), frame.map(&x2));
    let smooth1 = !frame.is_vertex(xt1);
    let smooth2 = !frame.is_vertex(xt2);

    let (case, swapped, m, tau, case1, case2) = if smooth1 && smooth2 {
        let (m, tau, data) = case_one(&frame, &codomain, xt1, xt2, &verts)?;
        (Case::SmoothSmooth, false, m, tau, Some(data), None)
    } else {
        let swapped = smooth1;
        let (p, xp) = if swapped { (xt2, &x2) } else { (xt1, &x1) };
        let (m, tau, data) = case_two(&frame, &codomain, p, xp)?;
        (Case::Nonsmooth, swapped, m, tau, None, Some(data))
    };

    let rows: Vec<Vec<f64>> = (0..2)
        .map(|i| linalg::axpy(&linalg::scale(&frame.q_matrix[0], m[i][0]), m[i][1], &frame.q_matrix[1]))
        .collect();
    let t = GeneralOperator::new(rows, x.clone(), e.clone())?;
    let attainment = opnorm(&t)?;
    let witness = attainment.witness.clone().unwrap_or_default();
    let witness_gap = (e.norm(&t.apply(&witness)?)? - attainment.norm).abs();
    let kernel_residual = frame
        .kernel_basis
        .iter()
        .map(|z| linalg::norm_inf(&linalg::mat_vec(&t.matrix, z)))
        .fold(0.0_f64, f64::max);
    let quotient_max = frame.polygon.iter().fold(0.0_f64, |w, &p| w.max(codomain.norm(apply2(m, p))));
    let checks = ConstructionChecks {
        kernel_residual,
        rank: t.rank(),
        attainment,
        witness_gap,
        quotient_max,
    };

    let trace = ConstructionTrace {
        case,
        swapped,
        frame,
        codomain,
        x1,
        x2,
        xt1,
        xt2,
        case1,
        case2,
        tau,
        quotient_map: m,
        operator: t,
        checks,
    };
    verify(&trace)?;
    Ok(trace)
}

fn verify(tr: &ConstructionTrace) -> Result<()> {
    let tol = tolerance();
    let c = &tr.checks;
    let fail = |what: String| Err(Error::Numerical(format!("construction check failed: {what}")));
    if c.kernel_residual >= 1e-9 {
        return fail(format!("kernel residual {}", c.kernel_residual));
    }
    if c.rank != 2 {
        return fail(format!("rank {}", c.rank));
    }
    if !c.attainment.exact || c.witness_gap >= 1e-9 {
        return fail(format!("attainment witness gap {}", c.witness_gap));
    }
    if (c.quotient_max - c.attainment.norm).abs() > 1e-9 * c.attainment.norm.max(1.0) {
        return fail(format!("quotient max {} vs norm {}", c.quotient_max, c.attainment.norm));
    }
    if let Some(d) = &tr.case1 {
        if !d.in_cone || d.cone.c1 < -tol || d.cone.c2 < -tol {
            return fail(format!("maximiser outside the cone: {:?}", d.cone));
        }
    }
    if let Some(d) = &tr.case2 {
        if d.x1_residual >= 1e-9 || c.attainment.norm > 1.0 + tol {
            return fail(format!("T(x1) residual {} with norm {}", d.x1_residual, c.attainment.norm));
        }
    }
    Ok(())
}

fn case_one(
    frame: &QuotientFrame,
    cf: &CodomainFrame,
    xt1: P2,
    xt2: P2,
    verts: &[Vec<f64>],
) -> Result<(M2, f64, Case1Data)> {
    let tol = tolerance();
    let w = solve2([[xt1[0], xt1[1]], [xt2[0], xt2[1]]], [1.0, 1.0])
        .ok_or_else(|| Error::Numerical("quotient points are dependent".into()))?;
    let poly = lex_sorted(&frame.polygon);
    let wn = poly.iter().fold(0.0_f64, |m, p| m.max((w[0] * p[0] + w[1] * p[1]).abs()));
    let alpha = 1.0 / wn;
    if !(alpha > 1e-9 && alpha < 1.0 - 1e-9) {
        return Err(Error::Numerical(format!("line value alpha = {alpha} outside (0, 1)")));
    }
    let ft3 = [w[0] * alpha, w[1] * alpha];
    let xt3 = *poly
        .iter()
        .find(|p| ft3[0] * p[0] + ft3[1] * p[1] >= 1.0 - 1e-12)
        .ok_or_else(|| Error::Numerical("no norming point for ft3".into()))?;
    let t = (1.0 + alpha) / 2.0;

    // R [xt1 − xt2, xt1] = [e2, t e1]
    let src = [[xt1[0] - xt2[0], xt1[0]], [xt1[1] - xt2[1], xt1[1]]];
    let dst = [[cf.e2[0], t * cf.e1[0]], [cf.e2[1], t * cf.e1[1]]];
    let r = mul2(dst, inv2(src).ok_or_else(|| Error::Numerical("singular R".into()))?);
    let rq = geometry2d::apply(r, &frame.polygon);
    let k = geometry2d::clip_slab(&geometry2d::convex_hull(&rq), cf.e1star, t);
    let tau = find_tau_compact(cf, &k)?;
    let m = mul2(cf.t_tau(tau.tau)?, r);

    let vals: Vec<f64> = poly.iter().map(|&p| cf.norm(apply2(m, p))).collect();
    let top = vals.iter().fold(0.0_f64, |a, &b| a.max(b));
    let idx = vals.iter().position(|&v| v >= top - 1e-12 * top.max(1.0)).unwrap_or(0);
    let mut y = poly[idx];
    let in_cone_of = |p: P2| {
        solve2([[xt1[0], xt2[0]], [xt1[1], xt2[1]]], p)
            .map(|[a1, a2]| a1 >= -tol && a2 >= -tol)
            .unwrap_or(false)
    };
    let mut in_cone = in_cone_of(y);
    if !in_cone && in_cone_of([-y[0], -y[1]]) {
        y = [-y[0], -y[1]];
        in_cone = true;
    }
    let my = apply2(m, y);
    let g = cf.norming_functional(my);
    // (T_τ R)* g / ‖T_τ R‖ in quotient coordinates.
    let fy = [(g[0] * m[0][0] + g[1] * m[1][0]) / top, (g[0] * m[0][1] + g[1] * m[1][1]) / top];
    let cone = cone_coefficients(&frame.quotient, xt1, xt2, y, fy)?;
    let pulled = linalg::axpy(&linalg::scale(&frame.q_matrix[0], fy[0]), fy[1], &frame.q_matrix[1]);
    let proof_witness = lex_first_max(verts, &pulled);
    Ok((
        m,
        tau.tau,
        Case1Data { ft3, alpha, xt3, t, r, k, maximizer: y, in_cone, cone, proof_witness },
    ))
}

fn case_two(frame: &QuotientFrame, cf: &CodomainFrame, xt1: P2, x1: &[f64]) -> Result<(M2, f64, Case2Data)> {
    let sf = frame.quotient.support_functionals_at(&xt1)?;
    if sf.len() != 2 {
        return Err(Error::Numerical("expected a non-smooth quotient point".into()));
    }
    let (g1, g2) = ([sf[0][0], sf[0][1]], [sf[1][0], sf[1][1]]);
    let g = [(g1[0] + g2[0]) / 2.0, (g1[1] + g2[1]) / 2.0];
    let d = [-g[1], g[0]];
    let nd = geometry2d::polygon_gauge(&frame.edge_functionals, d);
    let y = [d[0] / nd, d[1] / nd];
    // R [xt1, y] = [e1, e2]
    let src = [[xt1[0], y[0]], [xt1[1], y[1]]];
    let src_inv = inv2(src).ok_or_else(|| Error::Numerical("xt1 and y are dependent".into()))?;
    let r = mul2(cf.basis(), src_inv);
    let r_inv = inv2(r).ok_or_else(|| Error::Numerical("singular R".into()))?;
    let pull = |h: P2| [h[0] * r_inv[0][0] + h[1] * r_inv[1][0], h[0] * r_inv[0][1] + h[1] * r_inv[1][1]];
    let (h1, h2) = (pull(g1), pull(g2));
    let par = find_tau_parallelogram(cf, h1, h2)?;
    let m = mul2(cf.t_tau(par.tau.tau)?, r);
    let image = apply2(m, frame.map(x1));
    let x1_residual = (image[0] - cf.e1[0]).abs().max((image[1] - cf.e1[1]).abs());
    Ok((m, par.tau.tau, Case2Data { g1, g2, y, r, h1, h2, parallelogram: par, x1_residual }))
}

/// `T x = (f(x) y1 + g(x) y2) / α0` for two functionals supporting the same
/// point `x0`; the result has norm one and attains it at `x0`.
pub fn observation_smooth(x: &Space, x0: &[f64], f: &[f64], g: &[f64], y: &Space) -> Result<GeneralOperator> {
    let tol = tolerance();
    x.check_dim(x0)?;
    x.check_dim(f)?;
    x.check_dim(g)?;
    if y.dim() < 2 {
        return Err(Error::Precondition("codomain must have dimension at least 2".into()));
    }
    if linalg::approx_eq(f, g, tol) {
        return Err(Error::Precondition("f and g must differ".into()));
    }
    let nx = x.norm(x0)?;
    if (nx - 1.0).abs() > tol {
        return Err(Error::NotOnSphere { norm: nx });
    }
    for h in [f, g] {
        let n = x.dual_norm(h)?;
        if (n - 1.0).abs() > tol || (dot(h, x0) - 1.0).abs() > tol {
            return Err(Error::Precondition("f and g must be unit functionals with value 1 at x0".into()));
        }
    }
    let (y1, mut y2) = pick_independent_pair(y)?;
    let plus = y.norm(&linalg::add(&y1, &y2))?;
    let minus = y.norm(&linalg::sub(&y1, &y2))?;
    if minus > plus {
        y2 = linalg::neg(&y2);
    }
    let alpha0 = plus.max(minus);
    let rows: Vec<Vec<f64>> = (0..y.dim())
        .map(|i| linalg::axpy(&linalg::scale(f, y1[i] / alpha0), y2[i] / alpha0, g))
        .collect();
    GeneralOperator::new(rows, x.clone(), y.clone())
}

fn pick_independent_pair(y: &Space) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = y.dim();
    if y.is_polytopal() {
        let verts = y.extreme_points()?;
        let y1 = verts[0].clone();
        for v in &verts[1..] {
            if linalg::rank(&[y1.clone(), v.clone()], dim) == 2 {
                return Ok((y1, v.clone()));
            }
        }
        return Err(Error::Numerical("ball vertices do not span two dimensions".into()));
    }
    let mut e1 = vec![0.0; dim];
    e1[0] = 1.0;
    let mut e2 = vec![0.0; dim];
    e2[1] = 1.0;
    let (n1, n2) = (y.norm(&e1)?, y.norm(&e2)?);
    Ok((linalg::scale(&e1, 1.0 / n1), linalg::scale(&e2, 1.0 / n2)))
}

/// Whether `space` is given by an explicit polygon (as opposed to an `ℓ_p` plane).
pub fn is_polygon(space: &Space) -> bool {
    space.dim() == 2 && matches!(space.descriptor(), Norm::Vertices(_) | Norm::Facets(_))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2() -> Space {
        Space::lp(2, 2.0).unwrap()
    }

    fn square() -> Space {
        Space::lp(2, f64::INFINITY).unwrap()
    }

    fn hexagon() -> Space {
        let pts: Vec<Vec<f64>> = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI * k as f64 / 3.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        Space::vertices(pts).unwrap()
    }

    #[test]
    fn frames_are_consistent() {
        for e in [l2(), square(), Space::lp(2, 1.0).unwrap(), hexagon()] {
            let f = CodomainFrame::new(&e).unwrap();
            assert!((e.norm(&f.e1).unwrap() - 1.0).abs() < 1e-12);
            assert!((e.norm(&f.e2).unwrap() - 1.0).abs() < 1e-12);
            assert!((e.dual_norm(&f.e1star).unwrap() - 1.0).abs() < 1e-12);
            assert!((f.e1star_at(f.e1) - 1.0).abs() < 1e-12);
            assert!(f.e1star_at(f.e2).abs() < 1e-12);
            assert!(e.is_smooth_point(&f.e1).unwrap());
        }
        assert!(CodomainFrame::new(&Space::lp(2, 3.0).unwrap()).is_err());
    }

    #[test]
    fn tau_compact_examples() {
        let f = CodomainFrame::new(&l2()).unwrap();
        assert_eq!(find_tau_compact(&f, &[[0.0, 0.0]]).unwrap().n, 2);
        let sq = [[0.9, 0.9], [-0.9, 0.9], [-0.9, -0.9], [0.9, -0.9]];
        let r = find_tau_compact(&f, &sq).unwrap();
        // √(0.81 + 0.81 τ²) < 1 first holds at τ = 1/3.
        assert_eq!(r.n, 3);
        assert!(find_tau_compact(&f, &[[1.0, 0.0]]).is_err());
    }

    #[test]
    fn tau_parallelogram_examples() {
        let f = CodomainFrame::new(&l2()).unwrap();
        let r = find_tau_parallelogram(&f, [1.0, 0.5], [1.0, -0.5]).unwrap();
        let m = f.t_tau(r.tau.tau).unwrap();
        assert!(r.a.iter().all(|&p| f.norm(apply2(m, p)) <= 1.0 + 1e-9));
        assert!(r.delta > 0.0 && r.tau.tau < 1.0);
        assert!(find_tau_parallelogram(&f, [1.0, 0.5], [1.0, 0.5]).is_err());

        let f = CodomainFrame::new(&square()).unwrap();
        let (h1, h2) = (
            [f.e1star[0] - 0.3 * f.e1[1], f.e1star[1] + 0.3 * f.e1[0]],
            [f.e1star[0] + 0.3 * f.e1[1], f.e1star[1] - 0.3 * f.e1[0]],
        );
        let r = find_tau_parallelogram(&f, h1, h2).unwrap();
        let m = f.t_tau(r.tau.tau).unwrap();
        assert!(r.a.iter().all(|&p| f.norm(apply2(m, p)) <= 1.0 + 1e-9));
    }

    #[test]
    fn cone_coefficient_examples() {
        let s = 0.5f64.sqrt();
        let c = cone_coefficients(&l2(), [1.0, 0.0], [0.0, 1.0], [s, s], [s, s]).unwrap();
        assert!((c.c1 - s).abs() < 1e-15 && (c.c2 - s).abs() < 1e-15 && c.inequalities_hold);
        let c = cone_coefficients(&l2(), [1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 0.0]).unwrap();
        assert_eq!((c.c1, c.c2), (1.0, 0.0));

        // Hexagon: midpoints of two adjacent edges, y the vertex between them.
        let h = hexagon();
        let r3 = 3f64.sqrt();
        let (x1, x2) = ([0.75, r3 / 4.0], [0.0, r3 / 2.0]);
        let y = [0.5, r3 / 2.0];
        let fy = h.support_functionals_at(&y).unwrap();
        for f in fy {
            let c = cone_coefficients(&h, x1, x2, y, [f[0], f[1]]).unwrap();
            assert!(c.c1 >= -1e-12 && c.c2 >= -1e-12 && c.inequalities_hold, "{c:?}");
        }
        assert!(cone_coefficients(&h, y, x2, y, [0.0, 1.0]).is_err());
    }

    #[test]
    fn theo2_on_cube_is_case_two() {
        let x = Space::lp(3, f64::INFINITY).unwrap();
        let tr = theo2_construct(&x, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &l2()).unwrap();
        assert_eq!(tr.case, Case::Nonsmooth);
        assert!(tr.checks.kernel_residual < 1e-12);
        assert!(linalg::approx_eq(&tr.frame.kernel_basis[0], &[0.0, 0.0, 1.0], 1e-12));
        assert!((tr.checks.attainment.norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn theo2_on_octahedron_is_case_two() {
        let x = Space::lp(3, 1.0).unwrap();
        let tr = theo2_construct(&x, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &l2()).unwrap();
        assert_eq!(tr.case, Case::Nonsmooth);
        assert_eq!(tr.checks.rank, 2);
    }

    #[test]
    fn theo2_case_one_on_the_four_cube() {
        // On the 4-cube with f1 = (e3* − e4*)/2 and f2 = (e1* − e2*)/2 the
        // lexicographically first face points map to edge midpoints of the
        // quotient square.
        let x = Space::lp(4, f64::INFINITY).unwrap();
        let tr = theo2_construct(&x, &[0.0, 0.0, 0.5, -0.5], &[0.5, -0.5, 0.0, 0.0], &hexagon()).unwrap();
        assert_eq!(tr.case, Case::SmoothSmooth);
        let d = tr.case1.unwrap();
        assert!((d.alpha - 0.5).abs() < 1e-12 && d.in_cone);
        assert!(d.cone.c1 >= -1e-9 && d.cone.c2 >= -1e-9);
    }

    #[test]
    fn theo2_rejects_dependent_functionals() {
        let x = Space::lp(3, 1.0).unwrap();
        assert!(theo2_construct(&x, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &l2()).is_err());
    }

    #[test]
    fn observation_examples() {
        let x = square();
        let t = observation_smooth(&x, &[1.0, 1.0], &[1.0, 0.0], &[0.0, 1.0], &l2()).unwrap();
        let r = opnorm(&t).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-12);
        let img = t.apply(&[1.0, 1.0]).unwrap();
        assert!((linalg::norm2(&img) - 1.0).abs() < 1e-12);
        assert!((linalg::norm2(&t.matrix[0]) - 0.5f64.sqrt()).abs() < 1e-12);

        let x3 = Space::lp(3, f64::INFINITY).unwrap();
        let t = observation_smooth(&x3, &[1.0, 1.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &l2()).unwrap();
        assert!((opnorm(&t).unwrap().norm - 1.0).abs() < 1e-12);
        assert_eq!(t.rank(), 2);

        assert!(observation_smooth(&x, &[1.0, 1.0], &[1.0, 0.0], &[1.0, 0.0], &l2()).is_err());
    }
}

//! Finite-dimensional real normed spaces.
//!
//! A [`Space`] is described either by an `ℓ_p` exponent, by the symmetric
//! vertex set of its unit ball, or by a symmetric list of functionals whose
//! absolute values bound the ball (facet form). Everything else in the crate
//! reads the geometry through the primitives here.

use serde::{Deserialize, Serialize};

use crate::config::{tolerance, vertex_budget};
use crate::error::{Error, Result};
use crate::geometry2d::{self, P2};
use crate::linalg::{self, dot, lex_cmp};
use crate::lp;

/// Coefficient vector acting by the standard pairing.
pub type Functional = Vec<f64>;

#[derive(Debug, Clone, PartialEq)]
pub enum Norm {
    /// `p` in `[1, ∞]`; `f64::INFINITY` is the max norm.
    Lp(f64),
    /// Symmetric vertex list of the unit ball, lexicographically sorted.
    Vertices(Vec<Vec<f64>>),
    /// Symmetric list of bounding functionals, lexicographically sorted.
    Facets(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct Space {
    dim: usize,
    norm: Norm,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    dim: usize,
    norm: NormRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum NormRepr {
    Lp { p: PValue },
    PolytopeVertices { vertices: Vec<Vec<f64>> },
    PolytopeFacets { facets: Vec<Vec<f64>> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PValue {
    Num(f64),
    Word(String),
}

impl TryFrom<SpaceRepr> for Space {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        let space = match r.norm {
            NormRepr::Lp { p } => {
                let p = match p {
                    PValue::Num(p) => p,
                    PValue::Word(w) if matches!(w.as_str(), "inf" | "infinity" | "Infinity") => {
                        f64::INFINITY
                    }
                    PValue::Word(w) => {
                        return Err(Error::DegenerateDescriptor(format!("unrecognised exponent {w:?}")))
                    }
                };
                Space::lp(r.dim, p)?
            }
            NormRepr::PolytopeVertices { vertices } => Space::vertices(vertices)?,
            NormRepr::PolytopeFacets { facets } => Space::facets(facets)?,
        };
        if space.dim != r.dim {
            return Err(Error::DimensionMismatch { expected: r.dim, got: space.dim });
        }
        Ok(space)
    }
}

impl From<Space> for SpaceRepr {
    fn from(s: Space) -> Self {
        let norm = match s.norm {
            Norm::Lp(p) if p.is_infinite() => NormRepr::Lp { p: PValue::Word("inf".into()) },
            Norm::Lp(p) => NormRepr::Lp { p: PValue::Num(p) },
            Norm::Vertices(vertices) => NormRepr::PolytopeVertices { vertices },
            Norm::Facets(facets) => NormRepr::PolytopeFacets { facets },
        };
        SpaceRepr { dim: s.dim, norm }
    }
}

fn symmetric_closure(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(2 * points.len());
    for p in points {
        out.push(p.clone());
        out.push(linalg::neg(p));
    }
    dedup_sorted(out, 1e-12)
}

fn dedup_sorted(mut pts: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let mut uniq: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    pts.sort_by(|a, b| lex_cmp(a, b));
    for p in pts {
        if !uniq.iter().any(|q| linalg::approx_eq(q, &p, tol)) {
            uniq.push(p);
        }
    }
    uniq
}

fn is_symmetric(points: &[Vec<f64>], tol: f64) -> bool {
    points
        .iter()
        .all(|p| points.iter().any(|q| p.iter().zip(q).all(|(a, b)| (a + b).abs() <= tol)))
}

fn check_len(dim: usize, v: &[f64]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
    }
    Ok(())
}

fn check_rows(rows: &[Vec<f64>]) -> Result<usize> {
    let dim = rows
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::DegenerateDescriptor("empty point list".into()))?;
    if dim == 0 {
        return Err(Error::DegenerateDescriptor("zero-dimensional points".into()));
    }
    for r in rows {
        check_len(dim, r)?;
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateDescriptor("non-finite coordinate".into()));
        }
    }
    Ok(dim)
}

/// Indices of the rows of `rows` that are not in the convex hull of the others
/// (already symmetric input; removal is done pairwise).
fn irredundant(rows: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let mut keep = rows;
    let mut i = 0;
    while i < keep.len() {
        let others: Vec<Vec<f64>> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if lp::in_hull(&others, &keep[i])? {
            let neg = linalg::neg(&keep[i]);
            keep.remove(i);
            if let Some(j) = keep.iter().position(|q| linalg::approx_eq(q, &neg, 1e-12)) {
                keep.remove(j);
                if j < i {
                    i -= 1;
                }
            }
        } else {
            i += 1;
        }
    }
    Ok(keep)
}

impl Space {
    pub fn lp(dim: usize, p: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DegenerateDescriptor("dimension must be positive".into()));
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::DegenerateDescriptor(format!("exponent must lie in [1, inf], got {p}")));
        }
        Ok(Space { dim, norm: Norm::Lp(p) })
    }

    /// Ball given as `conv(vertices)`. The list must be symmetric, spanning and
    /// free of points inside the hull of the others.
    pub fn vertices(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = check_rows(&vertices)?;
        let scale = vertices.iter().fold(0.0_f64, |m, v| m.max(linalg::norm_inf(v)));
        let vs = dedup_sorted(vertices, 1e-12 * scale.max(1.0));
        if !is_symmetric(&vs, 1e-12 * scale.max(1.0)) {
            return Err(Error::DegenerateDescriptor("vertex list is not symmetric".into()));
        }
        if linalg::rank(&vs, dim) < dim {
            return Err(Error::DegenerateDescriptor("vertices do not span the space".into()));
        }
        for (i, v) in vs.iter().enumerate() {
            let others: Vec<Vec<f64>> =
                vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            if lp::in_hull(&others, v)? {
                return Err(Error::DegenerateDescriptor(format!(
                    "vertex {v:?} lies in the convex hull of the others"
                )));
            }
        }
        Ok(Space { dim, norm: Norm::Vertices(vs) })
    }

    /// Ball given as `{x : |φ·x| ≤ 1 for every φ}`. The list must be symmetric
    /// and spanning; redundant functionals are allowed.
    pub fn facets(facets: Vec<Vec<f64>>) -> Result<Self> {
        let dim = check_rows(&facets)?;
        let scale = facets.iter().fold(0.0_f64, |m, v| m.max(linalg::norm_inf(v)));
        let fs = dedup_sorted(facets, 1e-12 * scale.max(1.0));
        if !is_symmetric(&fs, 1e-12 * scale.max(1.0)) {
            return Err(Error::DegenerateDescriptor("facet list is not symmetric".into()));
        }
        if linalg::rank(&fs, dim) < dim {
            return Err(Error::DegenerateDescriptor("facet functionals do not span (unbounded ball)".into()));
        }
        Ok(Space { dim, norm: Norm::Facets(fs) })
    }

    /// Vertex-form space whose ball is `conv(±points)`, pruning points that are
    /// not extreme.
    pub fn from_symmetric_points(points: &[Vec<f64>]) -> Result<Self> {
        check_rows(points)?;
        let all = symmetric_closure(points);
        let pruned = irredundant(all)?;
        Space::vertices(pruned)
    }

    /// Facet-form space with redundant functionals removed.
    pub fn from_symmetric_functionals(fs: &[Vec<f64>]) -> Result<Self> {
        check_rows(fs)?;
        let all = symmetric_closure(fs);
        let pruned = irredundant(all)?;
        Space::facets(pruned)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn descriptor(&self) -> &Norm {
        &self.norm
    }

    pub fn is_polytopal(&self) -> bool {
        match self.norm {
            Norm::Lp(p) => p == 1.0 || p.is_infinite(),
            _ => true,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.norm, Norm::Lp(p) if p == 2.0)
    }

    pub fn check_dim(&self, v: &[f64]) -> Result<()> {
        check_len(self.dim, v)
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match &self.norm {
            Norm::Lp(p) => lp_norm(x, *p),
            Norm::Facets(fs) => fs.iter().fold(0.0_f64, |m, f| m.max(dot(f, x).abs())),
            Norm::Vertices(vs) => {
                if x.iter().all(|&c| c == 0.0) {
                    0.0
                } else {
                    lp::gauge(vs, x)?.0
                }
            }
        })
    }

    pub fn dual_norm(&self, f: &[f64]) -> Result<f64> {
        self.check_dim(f)?;
        Ok(match &self.norm {
            Norm::Lp(p) => lp_norm(f, conjugate(*p)),
            Norm::Vertices(vs) => vs.iter().fold(0.0_f64, |m, v| m.max(dot(f, v).abs())),
            Norm::Facets(fs) => {
                if f.iter().all(|&c| c == 0.0) {
                    0.0
                } else {
                    lp::gauge(fs, f)?.0
                }
            }
        })
    }

    /// Dual norm as `max f·x` over the gauge sublevel set `{Σλ_v v : λ ≥ 0, Σλ_v ≤ 1}`,
    /// solved as a linear program. Agrees with [`Space::dual_norm`].
    pub fn dual_norm_by_lp(&self, f: &[f64]) -> Result<f64> {
        self.check_dim(f)?;
        match &self.norm {
            Norm::Vertices(vs) => lp::max_over_hull(vs, f),
            _ => self.dual_norm(f),
        }
    }

    /// Unit functional `f` with `f(x) = ‖x‖`.
    pub fn norming_functional(&self, x: &[f64]) -> Result<Functional> {
        self.check_dim(x)?;
        if x.iter().all(|&c| c == 0.0) {
            let mut e = vec![0.0; self.dim];
            e[0] = 1.0;
            let n = self.dual_norm(&e)?;
            return Ok(linalg::scale(&e, 1.0 / n));
        }
        Ok(match &self.norm {
            Norm::Lp(p) => lp_norming(x, *p),
            Norm::Facets(fs) => {
                let mut best = &fs[0];
                let mut bv = f64::NEG_INFINITY;
                for f in fs {
                    let v = dot(f, x);
                    if v > bv + 1e-15 {
                        bv = v;
                        best = f;
                    }
                }
                best.clone()
            }
            Norm::Vertices(vs) => lp::max_over_slab(vs, x)?.1,
        })
    }

    /// Unit vector `x` with `f(x) = ‖f‖*`.
    pub fn norming_point(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(f)?;
        if f.iter().all(|&c| c == 0.0) {
            let mut e = vec![0.0; self.dim];
            e[0] = 1.0;
            let n = self.norm(&e)?;
            return Ok(linalg::scale(&e, 1.0 / n));
        }
        Ok(match &self.norm {
            Norm::Lp(p) => lp_norming(f, conjugate(*p)),
            Norm::Vertices(vs) => {
                let mut best = &vs[0];
                let mut bv = f64::NEG_INFINITY;
                for v in vs {
                    let val = dot(f, v);
                    if val > bv + 1e-15 {
                        bv = val;
                        best = v;
                    }
                }
                best.clone()
            }
            Norm::Facets(fs) => lp::max_over_slab(fs, f)?.1,
        })
    }

    /// Vertices of the unit ball, lexicographically sorted.
    pub fn extreme_points(&self) -> Result<Vec<Vec<f64>>> {
        let budget = vertex_budget();
        match &self.norm {
            Norm::Vertices(vs) => Ok(vs.clone()),
            Norm::Facets(fs) => enumerate_vertices(fs, self.dim, budget),
            Norm::Lp(p) if *p == 1.0 => Ok(signed_basis(self.dim)),
            Norm::Lp(p) if p.is_infinite() => sign_vectors(self.dim, budget),
            Norm::Lp(_) => Err(Error::NonPolytopal),
        }
    }

    /// Vertices of the dual unit ball, lexicographically sorted.
    pub fn dual_extreme_points(&self) -> Result<Vec<Vec<f64>>> {
        let budget = vertex_budget();
        match &self.norm {
            Norm::Vertices(vs) => enumerate_vertices(vs, self.dim, budget),
            Norm::Facets(fs) => {
                let mut pruned = irredundant(fs.clone())?;
                pruned.sort_by(|a, b| lex_cmp(a, b));
                Ok(pruned)
            }
            Norm::Lp(p) if *p == 1.0 => sign_vectors(self.dim, budget),
            Norm::Lp(p) if p.is_infinite() => Ok(signed_basis(self.dim)),
            Norm::Lp(_) => Err(Error::NonPolytopal),
        }
    }

    /// Unit ball of a two-dimensional polytopal space as a CCW polygon.
    pub fn polygon(&self) -> Result<Vec<P2>> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.dim });
        }
        let pts: Vec<P2> = self.extreme_points()?.iter().map(|v| [v[0], v[1]]).collect();
        Ok(geometry2d::convex_hull(&pts))
    }

    /// Extreme supporting functionals at a unit vector of a planar space: one
    /// functional at a smooth point, the two adjacent edge functionals (sorted
    /// lexicographically) at a polygon vertex.
    pub fn support_functionals_at(&self, x: &[f64]) -> Result<Vec<Functional>> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.dim });
        }
        self.check_dim(x)?;
        let tol = tolerance();
        let n = self.norm(x)?;
        if (n - 1.0).abs() > tol {
            return Err(Error::NotOnSphere { norm: n });
        }
        if !self.is_polytopal() {
            return Ok(vec![self.norming_functional(x)?]);
        }
        let poly = self.polygon()?;
        let edges = geometry2d::edge_functionals(&poly);
        let k = poly.len();
        if let Some(i) = poly
            .iter()
            .position(|p| (p[0] - x[0]).abs() <= tol && (p[1] - x[1]).abs() <= tol)
        {
            let prev = edges[(i + k - 1) % k];
            let next = edges[i];
            let mut out = vec![prev.to_vec(), next.to_vec()];
            out.sort_by(|a, b| lex_cmp(a, b));
            return Ok(out);
        }
        let best = edges
            .iter()
            .max_by(|a, b| (a[0] * x[0] + a[1] * x[1]).total_cmp(&(b[0] * x[0] + b[1] * x[1])))
            .ok_or_else(|| Error::Numerical("polygon without edges".into()))?;
        Ok(vec![best.to_vec()])
    }

    pub fn is_smooth_point(&self, x: &[f64]) -> Result<bool> {
        Ok(self.support_functionals_at(x)?.len() == 1)
    }

    /// `inf_{m ∈ span(basis)} ‖x − m‖` by direct minimisation.
    pub fn dist_to_subspace(&self, x: &[f64], basis: &[Vec<f64>]) -> Result<f64> {
        self.check_dim(x)?;
        for b in basis {
            self.check_dim(b)?;
        }
        if basis.is_empty() {
            return self.norm(x);
        }
        match &self.norm {
            Norm::Vertices(vs) => Ok(lp::dist_vertex(vs, x, basis)?.0),
            Norm::Facets(fs) => Ok(lp::dist_facets(fs, x, basis)?.0),
            Norm::Lp(p) if *p == 1.0 => Ok(lp::dist_vertex(&signed_basis(self.dim), x, basis)?.0),
            Norm::Lp(p) if p.is_infinite() => {
                Ok(lp::dist_facets(&signed_basis(self.dim), x, basis)?.0)
            }
            Norm::Lp(p) if *p == 2.0 => {
                // Orthogonal projection onto span(basis).
                let cols: Vec<Vec<f64>> = (0..self.dim)
                    .map(|i| basis.iter().map(|b| b[i]).collect())
                    .collect();
                let c = linalg::lstsq(&cols, basis.len(), x);
                let r = linalg::sub(x, &linalg::mat_vec(&cols, &c));
                Ok(linalg::norm2(&r))
            }
            Norm::Lp(p) => Ok(descent_distance(x, basis, *p)),
        }
    }

    /// `sup_{(t,s)} |t f(x) + s g(x)| / ‖t f + s g‖*`, which equals the
    /// distance from `x` to `ker f ∩ ker g`.
    pub fn dist_dual(&self, x: &[f64], f: &[f64], g: &[f64]) -> Result<DualDistance> {
        self.check_dim(x)?;
        self.check_dim(f)?;
        self.check_dim(g)?;
        let w = [dot(f, x), dot(g, x)];
        let image: Option<Vec<P2>> = if self.is_polytopal() {
            Some(self.extreme_points()?.iter().map(|v| [dot(f, v), dot(g, v)]).collect())
        } else {
            None
        };
        let dual = |u: P2| -> Result<f64> {
            match &image {
                Some(pts) => Ok(pts.iter().fold(0.0_f64, |m, p| m.max((u[0] * p[0] + u[1] * p[1]).abs()))),
                None => self.dual_norm(&linalg::axpy(&linalg::scale(f, u[0]), u[1], g)),
            }
        };
        let ratio = |u: P2| -> Result<f64> {
            let d = dual(u)?;
            if d <= 0.0 {
                return Ok(0.0);
            }
            Ok((u[0] * w[0] + u[1] * w[1]).abs() / d)
        };
        let mut grid = 0.0_f64;
        for k in 0..DUAL_GRID {
            let th = std::f64::consts::PI * k as f64 / DUAL_GRID as f64;
            grid = grid.max(ratio([th.cos(), th.sin()])?);
        }
        let mut value = grid;
        if let Some(pts) = &image {
            // The supremum sits at an edge normal of the image polygon.
            for e in geometry2d::edge_functionals(&geometry2d::convex_hull(pts)) {
                value = value.max(ratio(e)?);
            }
        }
        Ok(DualDistance { grid_lower_bound: grid, value })
    }

    /// Distance from `x` to `ker f ∩ ker g` by both routes.
    pub fn dist_two_routes(&self, x: &[f64], f: &[f64], g: &[f64]) -> Result<DistanceCheck> {
        let basis = linalg::nullspace(&[f.to_vec(), g.to_vec()], self.dim);
        let direct = self.dist_to_subspace(x, &basis)?;
        let dual = self.dist_dual(x, f, g)?;
        let exact = self.is_polytopal();
        let agree = if exact {
            (direct - dual.value).abs() <= 1e-9 * direct.max(1.0)
        } else {
            dual.value <= direct + 1e-9 * direct.max(1.0)
        };
        Ok(DistanceCheck { direct, dual, agree })
    }

    pub fn quotient_space(&self, f1: &[f64], f2: &[f64]) -> Result<QuotientFrame> {
        self.check_dim(f1)?;
        self.check_dim(f2)?;
        let q_matrix = vec![f1.to_vec(), f2.to_vec()];
        if linalg::rank(&q_matrix, self.dim) < 2 {
            return Err(Error::DependentFunctionals);
        }
        if !self.is_polytopal() {
            return Err(Error::NonPolytopal);
        }
        let image: Vec<P2> = self
            .extreme_points()?
            .iter()
            .map(|v| [dot(f1, v), dot(f2, v)])
            .collect();
        let polygon = geometry2d::prune_collinear(&geometry2d::convex_hull(&image), QUOTIENT_FLATNESS);
        let quotient = Space::vertices(polygon.iter().map(|p| p.to_vec()).collect())?;
        let kernel_basis = linalg::nullspace(&q_matrix, self.dim);
        let x0 = linalg::lstsq(&q_matrix, self.dim, &[1.0, 0.0]);
        let x1 = linalg::lstsq(&q_matrix, self.dim, &[0.0, 1.0]);
        Ok(QuotientFrame {
            base: self.clone(),
            kernel_basis,
            section: [x0, x1],
            edge_functionals: geometry2d::edge_functionals(&polygon),
            polygon,
            quotient,
            q_matrix,
        })
    }
}

const DUAL_GRID: usize = 2048;

/// Quotient polygon vertices closer than this (relative) to the line through
/// their neighbours are merged into the edge.
const QUOTIENT_FLATNESS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualDistance {
    /// Supremum over the uniform half-circle grid alone.
    pub grid_lower_bound: f64,
    /// Grid supremum refined at the breakpoint directions (exact for polytopes).
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceCheck {
    pub direct: f64,
    pub dual: DualDistance,
    pub agree: bool,
}

/// The quotient of a polytopal space by `Z = ker f1 ∩ ker f2`, in the
/// coordinates `x ↦ (f1(x), f2(x))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientFrame {
    pub base: Space,
    pub kernel_basis: Vec<Vec<f64>>,
    /// `x0, x1` with `q(x0) = (1, 0)` and `q(x1) = (0, 1)`.
    pub section: [Vec<f64>; 2],
    /// Unit ball of the quotient, `q(B_X)`.
    pub quotient: Space,
    /// `q(B_X)` as a CCW polygon.
    pub polygon: Vec<P2>,
    pub edge_functionals: Vec<P2>,
    pub q_matrix: Vec<Vec<f64>>,
}

impl QuotientFrame {
    pub fn map(&self, x: &[f64]) -> P2 {
        [dot(&self.q_matrix[0], x), dot(&self.q_matrix[1], x)]
    }

    pub fn quotient_norm(&self, x: &[f64]) -> f64 {
        geometry2d::polygon_gauge(&self.edge_functionals, self.map(x))
    }

    pub fn is_vertex(&self, p: P2) -> bool {
        let tol = tolerance();
        self.polygon
            .iter()
            .any(|v| (v[0] - p[0]).abs() <= tol && (v[1] - p[1]).abs() <= tol)
    }
}

pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        x.iter().map(|a| a.abs()).sum()
    } else if p == 2.0 {
        x.iter().map(|a| a * a).sum::<f64>().sqrt()
    } else if p.is_infinite() {
        linalg::norm_inf(x)
    } else {
        let m = linalg::norm_inf(x);
        if m == 0.0 {
            return 0.0;
        }
        m * x.iter().map(|a| (a.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Norming functional of a nonzero `x` in `ℓ_p` (an element of `ℓ_q`).
fn lp_norming(x: &[f64], p: f64) -> Vec<f64> {
    if p == 1.0 {
        return x
            .iter()
            .map(|&a| if a > 0.0 { 1.0 } else if a < 0.0 { -1.0 } else { 0.0 })
            .collect();
    }
    if p.is_infinite() {
        let m = linalg::norm_inf(x);
        let k = x.iter().position(|a| a.abs() == m).unwrap_or(0);
        let mut f = vec![0.0; x.len()];
        f[k] = x[k].signum();
        return f;
    }
    let n = lp_norm(x, p);
    x.iter()
        .map(|&a| a.signum() * (a.abs() / n).powf(p - 1.0))
        .collect()
}

fn signed_basis(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        for s in [-1.0, 1.0] {
            let mut e = vec![0.0; dim];
            e[i] = s;
            out.push(e);
        }
    }
    out.sort_by(|a, b| lex_cmp(a, b));
    out
}

fn sign_vectors(dim: usize, budget: usize) -> Result<Vec<Vec<f64>>> {
    if dim >= usize::BITS as usize || (1usize << dim) > budget {
        return Err(Error::VertexBudgetExceeded { budget });
    }
    let mut out: Vec<Vec<f64>> = (0..1usize << dim)
        .map(|m| (0..dim).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect())
        .collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    Ok(out)
}

/// Vertices of `{x : |φ·x| ≤ 1, φ ∈ rows}` by basis enumeration: every vertex
/// makes `dim` independent constraints tight.
fn enumerate_vertices(rows: &[Vec<f64>], dim: usize, budget: usize) -> Result<Vec<Vec<f64>>> {
    // One representative per ± pair; signs are enumerated explicitly.
    let mut half: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let c = linalg::canonical_sign(r.clone());
        if !half.iter().any(|h| linalg::approx_eq(h, &c, 1e-12)) {
            half.push(c);
        }
    }
    let work = linalg::binomial(half.len(), dim) << (dim.saturating_sub(1));
    if work > (budget as u128) << 8 {
        return Err(Error::VertexBudgetExceeded { budget });
    }
    let feas_tol = 1e-9;
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut overflow = false;
    linalg::for_each_combination(half.len(), dim, |idx| {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| half[i].clone()).collect();
        // The first sign is fixed; the negated solution covers the other half.
        for signs in 0..1usize << (dim - 1) {
            let b: Vec<f64> = (0..dim)
                .map(|k| if k > 0 && signs >> (k - 1) & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let Some(x) = linalg::solve_square(&a, &b) else { return true };
            if half.iter().all(|h| dot(h, &x).abs() <= 1.0 + feas_tol) {
                for cand in [x.clone(), linalg::neg(&x)] {
                    if !found.iter().any(|q| linalg::approx_eq(q, &cand, 1e-9)) {
                        found.push(cand);
                    }
                }
                if found.len() > budget {
                    overflow = true;
                    return false;
                }
            }
        }
        true
    });
    if overflow {
        return Err(Error::VertexBudgetExceeded { budget });
    }
    if found.is_empty() {
        return Err(Error::DegenerateDescriptor("facet system has no vertices".into()));
    }
    found.sort_by(|a, b| lex_cmp(a, b));
    Ok(found)
}

/// Minimises `‖x − Bc‖_p` over `c` for `1 < p < ∞` by gradient descent with
/// backtracking; the objective is convex and differentiable away from zero.
fn descent_distance(x: &[f64], basis: &[Vec<f64>], p: f64) -> f64 {
    let k = basis.len();
    let resid = |c: &[f64]| -> Vec<f64> {
        let mut r = x.to_vec();
        for (ci, b) in c.iter().zip(basis) {
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= ci * bi;
            }
        }
        r
    };
    let obj = |c: &[f64]| lp_norm(&resid(c), p);
    let mut c = vec![0.0; k];
    let mut val = obj(&c);
    let mut step = 1.0;
    for _ in 0..5000 {
        if val == 0.0 {
            break;
        }
        let r = resid(&c);
        let u = lp_norming(&r, p);
        let grad: Vec<f64> = basis.iter().map(|b| -dot(&u, b)).collect();
        let gn = linalg::norm2(&grad);
        if gn < 1e-15 {
            break;
        }
        let mut improved = false;
        while step > 1e-18 {
            let trial = linalg::axpy(&c, -step, &grad);
            let tv = obj(&trial);
            if tv < val - 1e-4 * step * gn * gn {
                c = trial;
                val = tv;
                improved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_facets() -> Space {
        Space::facets(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]).unwrap()
    }

    fn square_vertices() -> Space {
        Space::vertices(vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]]).unwrap()
    }

    fn cross_vertices() -> Space {
        Space::vertices(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]).unwrap()
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
    fn norm_examples() {
        let linf = Space::lp(2, f64::INFINITY).unwrap();
        assert_eq!(linf.norm(&[1.0, -1.0]).unwrap(), 1.0);
        assert_eq!(square_facets().norm(&[2.0, 0.0]).unwrap(), 2.0);
        assert!((cross_vertices().norm(&[1.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(linf.norm(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dual_norm_examples() {
        assert_eq!(Space::lp(2, 1.0).unwrap().dual_norm(&[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(Space::lp(2, f64::INFINITY).unwrap().dual_norm(&[1.0, 1.0]).unwrap(), 2.0);
        assert_eq!(square_vertices().dual_norm(&[3.0, 4.0]).unwrap(), 7.0);
        assert!((square_facets().dual_norm(&[3.0, 4.0]).unwrap() - 7.0).abs() < 1e-12);
    }

    #[test]
    fn general_p_norm_and_dual() {
        let s = Space::lp(3, 3.0).unwrap();
        let x = [1.0, -2.0, 0.5];
        let f = s.norming_functional(&x).unwrap();
        assert!((s.dual_norm(&f).unwrap() - 1.0).abs() < 1e-12);
        assert!((dot(&f, &x) - s.norm(&x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn extreme_point_examples() {
        assert_eq!(square_facets().extreme_points().unwrap().len(), 4);
        assert_eq!(square_vertices().extreme_points().unwrap(), square_vertices_list());
        let cube = Space::facets(vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ])
        .unwrap();
        let v = cube.extreme_points().unwrap();
        assert_eq!(v.len(), 8);
        assert!(v.iter().all(|p| p.iter().all(|c| (c.abs() - 1.0).abs() < 1e-12)));
        assert!(matches!(Space::lp(2, 3.0).unwrap().extreme_points(), Err(Error::NonPolytopal)));
    }

    fn square_vertices_list() -> Vec<Vec<f64>> {
        vec![vec![-1.0, -1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![1.0, 1.0]]
    }

    #[test]
    fn vertex_budget_is_enforced() {
        let big = Space::lp(17, f64::INFINITY).unwrap();
        assert!(matches!(big.extreme_points(), Err(Error::VertexBudgetExceeded { .. })));
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Space::vertices(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_err());
        assert!(Space::vertices(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).is_err());
        let interior = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![0.1, 0.1],
            vec![-0.1, -0.1],
        ];
        assert!(Space::vertices(interior.clone()).is_err());
        assert_eq!(Space::from_symmetric_points(&interior).unwrap(), cross_vertices());
        assert!(Space::lp(2, 0.5).is_err());
        assert!(Space::facets(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).is_err());
    }

    #[test]
    fn support_functionals_examples() {
        let sq = square_facets();
        assert_eq!(sq.support_functionals_at(&[1.0, 0.0]).unwrap(), vec![vec![1.0, 0.0]]);
        let at_vertex = sq.support_functionals_at(&[1.0, 1.0]).unwrap();
        assert_eq!(at_vertex.len(), 2);
        assert!(linalg::approx_eq(&at_vertex[0], &[0.0, 1.0], 1e-12));
        assert!(linalg::approx_eq(&at_vertex[1], &[1.0, 0.0], 1e-12));
        assert!(sq.is_smooth_point(&[1.0, 0.0]).unwrap());
        assert!(!sq.is_smooth_point(&[1.0, 1.0]).unwrap());
        assert!(Space::lp(2, 2.0).unwrap().is_smooth_point(&[0.6, 0.8]).unwrap());
        assert!(matches!(sq.support_functionals_at(&[0.5, 0.0]), Err(Error::NotOnSphere { .. })));

        // Midpoint of the hexagon edge between angles 0 and π/3.
        let h = hexagon();
        let mid = [0.75, 3f64.sqrt() / 4.0];
        let fs = h.support_functionals_at(&mid).unwrap();
        assert_eq!(fs.len(), 1);
        assert!((h.dual_norm(&fs[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((dot(&fs[0], &mid) - 1.0).abs() < 1e-12);
        assert!(linalg::approx_eq(&fs[0], &[1.0, 1.0 / 3f64.sqrt()], 1e-12));
    }

    #[test]
    fn distance_examples() {
        let linf = Space::lp(3, f64::INFINITY).unwrap();
        let z = vec![vec![0.0, 0.0, 1.0]];
        assert!((linf.dist_to_subspace(&[1.0, 1.0, 1.0], &z).unwrap() - 1.0).abs() < 1e-12);
        assert!(linf.dist_to_subspace(&[0.0, 0.0, 3.0], &z).unwrap().abs() < 1e-12);
        // ℓ₁: min_c |1−c| + 2|c| is attained at c = 0.
        let l1 = Space::lp(3, 1.0).unwrap();
        let d = l1.dist_to_subspace(&[1.0, 0.0, 0.0], &[vec![1.0, 1.0, 1.0]]).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_routes_agree_on_small_examples() {
        let l1 = Space::lp(3, 1.0).unwrap();
        let chk = l1
            .dist_two_routes(&[0.3, -0.7, 0.2], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0])
            .unwrap();
        assert!(chk.agree, "{chk:?}");
        assert!((chk.direct - 1.0).abs() < 1e-12);
        let l3 = Space::lp(3, 3.0).unwrap();
        let chk = l3
            .dist_two_routes(&[0.3, -0.7, 0.2], &[1.0, 0.5, 0.0], &[0.0, 1.0, 0.25])
            .unwrap();
        assert!(chk.agree, "{chk:?}");
        assert!(chk.direct - chk.dual.value < 1e-5);
    }

    #[test]
    fn quotient_examples() {
        let cube = Space::lp(3, f64::INFINITY).unwrap();
        let q = cube.quotient_space(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(q.polygon.len(), 4);
        assert!((geometry2d::area(&q.polygon) - 4.0).abs() < 1e-12);
        assert!(linalg::approx_eq(&q.kernel_basis[0], &[0.0, 0.0, 1.0], 1e-12));

        let oct = Space::lp(3, 1.0).unwrap();
        let q = oct.quotient_space(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(q.polygon.len(), 4);
        assert!((geometry2d::area(&q.polygon) - 2.0).abs() < 1e-12);
        assert_eq!(q.quotient, cross_vertices());

        assert!(matches!(
            cube.quotient_space(&[1.0, 0.0, 0.0], &[2.0, 0.0, 0.0]),
            Err(Error::DependentFunctionals)
        ));
        assert!(matches!(
            Space::lp(3, 2.0).unwrap().quotient_space(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]),
            Err(Error::NonPolytopal)
        ));
    }

    #[test]
    fn json_round_trip() {
        for s in [Space::lp(3, f64::INFINITY).unwrap(), Space::lp(2, 1.5).unwrap(), hexagon(), square_facets()] {
            let js = serde_json::to_string(&s).unwrap();
            let back: Space = serde_json::from_str(&js).unwrap();
            assert_eq!(s, back);
        }
        let s: Space = serde_json::from_str(r#"{"dim":2,"norm":{"type":"lp","p":"inf"}}"#).unwrap();
        assert_eq!(s, Space::lp(2, f64::INFINITY).unwrap());
        assert!(serde_json::from_str::<Space>(r#"{"dim":3,"norm":{"type":"lp","p":0.5}}"#).is_err());
        assert!(serde_json::from_str::<Space>(
            r#"{"dim":3,"norm":{"type":"polytope-vertices","vertices":[[1,0],[-1,0],[0,1],[0,-1]]}}"#
        )
        .is_err());
    }
}

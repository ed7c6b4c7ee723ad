//! Operators between finite-dimensional spaces and their norms.

use serde::{Deserialize, Serialize};

use crate::config::tolerance;
use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::sample;
use crate::spaces::{Functional, Space};

const RESTARTS: usize = 64;
const POWER_ITERS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralOperator {
    pub matrix: Vec<Vec<f64>>,
    pub domain: Space,
    pub codomain: Space,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttainmentReport {
    pub norm: f64,
    pub attained: bool,
    pub witness: Option<Vec<f64>>,
    /// True when the value comes from vertex enumeration or singular values.
    pub exact: bool,
}

impl GeneralOperator {
    pub fn new(matrix: Vec<Vec<f64>>, domain: Space, codomain: Space) -> Result<Self> {
        if matrix.len() != codomain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), got: matrix.len() });
        }
        for row in &matrix {
            domain.check_dim(row)?;
        }
        Ok(GeneralOperator { matrix, domain, codomain })
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.domain.check_dim(x)?;
        Ok(linalg::mat_vec(&self.matrix, x))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix, self.domain.dim())
    }

    /// Orthonormal basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<f64>> {
        linalg::nullspace(&self.matrix, self.domain.dim())
    }
}

pub fn opnorm(t: &GeneralOperator) -> Result<AttainmentReport> {
    opnorm_seeded(t, 0)
}

/// Operator norm with an attainment witness. Polytopal domains are handled by
/// a vertex maximum and Euclidean-to-Euclidean maps by the top singular value;
/// anything else falls back to a multi-start power iteration whose value is a
/// lower bound (`exact = false`).
pub fn opnorm_seeded(t: &GeneralOperator, seed: u64) -> Result<AttainmentReport> {
    let n = t.domain.dim();
    if t.domain.is_polytopal() {
        let verts = t.domain.extreme_points()?;
        let vals = verts
            .iter()
            .map(|v| t.codomain.norm(&linalg::mat_vec(&t.matrix, v)))
            .collect::<Result<Vec<f64>>>()?;
        let max = vals.iter().fold(0.0_f64, |m, &v| m.max(v));
        let tie = 1e-12 * max.max(1.0);
        let k = vals.iter().position(|&v| v >= max - tie).unwrap_or(0);
        return Ok(AttainmentReport {
            norm: max,
            attained: true,
            witness: Some(verts[k].clone()),
            exact: true,
        });
    }
    if t.domain.is_euclidean() && t.codomain.is_euclidean() {
        let m = linalg::to_dmatrix(&t.matrix, n);
        let svd = m.svd(false, true);
        let vt = svd.v_t.expect("v_t requested");
        let (k, &s) = svd
            .singular_values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .ok_or_else(|| Error::Numerical("empty singular value list".into()))?;
        let v: Vec<f64> = vt.row(k).iter().copied().collect();
        return Ok(AttainmentReport {
            norm: s,
            attained: true,
            witness: Some(linalg::canonical_sign(v)),
            exact: true,
        });
    }
    power_method(t, seed)
}

/// Generalised power iteration `x ← J_X*(Tᵀ J_Y(T x))`, where `J` maps a
/// vector to a norming functional (or a functional to a norming point).
fn power_method(t: &GeneralOperator, seed: u64) -> Result<AttainmentReport> {
    let mut rng = sample::rng(seed);
    let mut best = (-1.0_f64, Vec::new());
    for restart in 0..RESTARTS {
        let mut x = if restart < t.domain.dim() {
            let mut e = vec![0.0; t.domain.dim()];
            e[restart] = 1.0;
            e
        } else {
            sample::direction(&mut rng, t.domain.dim())
        };
        let nx = t.domain.norm(&x)?;
        x = linalg::scale(&x, 1.0 / nx);
        let mut val = t.codomain.norm(&t.apply(&x)?)?;
        for _ in 0..POWER_ITERS {
            let y = t.apply(&x)?;
            if y.iter().all(|&c| c == 0.0) {
                break;
            }
            let ystar = t.codomain.norming_functional(&y)?;
            let z = linalg::vec_mat(&ystar, &t.matrix);
            if z.iter().all(|&c| c == 0.0) {
                break;
            }
            let xn = t.domain.norming_point(&z)?;
            let vn = t.codomain.norm(&t.apply(&xn)?)?;
            if vn <= val * (1.0 + 1e-15) {
                if vn > val {
                    x = xn;
                    val = vn;
                }
                break;
            }
            x = xn;
            val = vn;
        }
        if val > best.0 {
            best = (val, x);
        }
    }
    Ok(AttainmentReport {
        norm: best.0.max(0.0),
        // Finite-dimensional balls are compact, so the norm is attained; the
        // witness is the best point found.
        attained: true,
        witness: Some(best.1),
        exact: false,
    })
}

pub fn attains(t: &GeneralOperator) -> Result<bool> {
    Ok(opnorm(t)?.attained)
}

/// `y* ∘ T` as a coefficient vector on the domain.
pub fn apply_adjoint(t: &GeneralOperator, ystar: &[f64]) -> Result<Functional> {
    t.codomain.check_dim(ystar)?;
    Ok(linalg::vec_mat(ystar, &t.matrix))
}

/// An operator into the Euclidean plane written as a pair of functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairOperator {
    pub f: Functional,
    pub g: Functional,
}

impl PairOperator {
    pub fn new(f: Functional, g: Functional) -> Result<Self> {
        if f.len() != g.len() {
            return Err(Error::DimensionMismatch { expected: f.len(), got: g.len() });
        }
        Ok(PairOperator { f, g })
    }

    pub fn apply(&self, x: &[f64]) -> [f64; 2] {
        [dot(&self.f, x), dot(&self.g, x)]
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&[self.f.clone(), self.g.clone()], self.f.len())
    }

    pub fn to_operator(&self, domain: &Space) -> Result<GeneralOperator> {
        GeneralOperator::new(vec![self.f.clone(), self.g.clone()], domain.clone(), Space::lp(2, 2.0)?)
    }

    /// `‖(f, g)‖ = sup_{‖x‖≤1} √(f(x)² + g(x)²)`.
    pub fn norm(&self, domain: &Space) -> Result<f64> {
        domain.check_dim(&self.f)?;
        if domain.is_polytopal() {
            let verts = domain.extreme_points()?;
            return Ok(verts.iter().fold(0.0_f64, |m, v| {
                let [a, b] = self.apply(v);
                m.max(a.hypot(b))
            }));
        }
        Ok(opnorm(&self.to_operator(domain)?)?.norm)
    }

    /// Composes with the plane rotation by `theta`.
    pub fn rotated(&self, theta: f64) -> PairOperator {
        let (s, c) = theta.sin_cos();
        PairOperator {
            f: linalg::axpy(&linalg::scale(&self.f, c), -s, &self.g),
            g: linalg::axpy(&linalg::scale(&self.f, s), c, &self.g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalized {
    pub pair: PairOperator,
    /// Rotating `pair` by `angle` recovers the input operator.
    pub angle: f64,
    pub rank_deficient: bool,
}

/// Rotates a norm-one pair operator attaining its norm at `x0` so that
/// `f(x0) = 1` and `g(x0) = 0`.
pub fn rotate_normalize(domain: &Space, t: &PairOperator, x0: &[f64]) -> Result<Normalized> {
    domain.check_dim(x0)?;
    domain.check_dim(&t.f)?;
    domain.check_dim(&t.g)?;
    let tol = tolerance();
    let nx = domain.norm(x0)?;
    if (nx - 1.0).abs() > tol {
        return Err(Error::NotOnSphere { norm: nx });
    }
    let tn = t.norm(domain)?;
    let [a, b] = t.apply(x0);
    let tx = a.hypot(b);
    if (tn - 1.0).abs() > tol {
        return Err(Error::Precondition(format!("operator norm is {tn}, expected 1")));
    }
    if (tx - tn).abs() > tol {
        return Err(Error::Precondition(format!(
            "x0 is not an attainment witness: |T x0| = {tx}, |T| = {tn}"
        )));
    }
    let theta = b.atan2(a);
    let pair = t.rotated(-theta);
    Ok(Normalized { rank_deficient: t.rank() < 2, pair, angle: theta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2(n: usize) -> Space {
        Space::lp(n, 2.0).unwrap()
    }

    #[test]
    fn identity_on_euclidean_plane() {
        let t = GeneralOperator::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], l2(2), l2(2)).unwrap();
        let r = opnorm(&t).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-15 && r.attained && r.exact);
        assert!(attains(&t).unwrap());
    }

    #[test]
    fn linf_to_l2_vertex_maximum() {
        let t = GeneralOperator::new(
            vec![vec![1.0, 0.5], vec![0.0, 0.5]],
            Space::lp(2, f64::INFINITY).unwrap(),
            l2(2),
        )
        .unwrap();
        let r = opnorm(&t).unwrap();
        assert!((r.norm - 2.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.witness.unwrap(), vec![-1.0, -1.0]);
    }

    #[test]
    fn zero_operator() {
        let t = GeneralOperator::new(vec![vec![0.0; 3]; 2], Space::lp(3, 1.0).unwrap(), l2(2)).unwrap();
        let r = opnorm(&t).unwrap();
        assert_eq!(r.norm, 0.0);
        assert!(r.attained);
        let w = r.witness.unwrap();
        assert!((Space::lp(3, 1.0).unwrap().norm(&w).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(GeneralOperator::new(vec![vec![1.0, 0.0]], l2(2), l2(2)).is_err());
        assert!(GeneralOperator::new(vec![vec![1.0], vec![0.0]], l2(2), l2(2)).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let id = GeneralOperator::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], l2(2), l2(2)).unwrap();
        assert_eq!(apply_adjoint(&id, &[1.0, 2.0]).unwrap(), vec![1.0, 2.0]);
        let z = GeneralOperator::new(vec![vec![0.0; 2]; 2], l2(2), l2(2)).unwrap();
        assert_eq!(apply_adjoint(&z, &[1.0, 2.0]).unwrap(), vec![0.0, 0.0]);
        let t = GeneralOperator::new(vec![vec![1.0, 0.0], vec![1.0, 1.0]], l2(2), l2(2)).unwrap();
        assert_eq!(apply_adjoint(&t, &[1.0, 1.0]).unwrap(), vec![2.0, 1.0]);
    }

    #[test]
    fn power_method_matches_closed_form_on_l3() {
        // Compared against a dense angular scan, which is a slight underestimate.
        let x = Space::lp(2, 3.0).unwrap();
        let t = GeneralOperator::new(vec![vec![1.0, 0.3], vec![-0.2, 0.8]], x.clone(), l2(2)).unwrap();
        let r = opnorm(&t).unwrap();
        assert!(!r.exact && r.attained);
        let mut scan = 0.0_f64;
        for k in 0..200_000 {
            let th = std::f64::consts::TAU * k as f64 / 200_000.0;
            let v = [th.cos(), th.sin()];
            let nv = x.norm(&v).unwrap();
            scan = scan.max(linalg::norm2(&t.apply(&v).unwrap()) / nv);
        }
        assert!(r.norm >= scan - 1e-12 && r.norm - scan < 1e-8, "{} vs {}", r.norm, scan);
    }

    #[test]
    fn rotate_normalize_examples() {
        let x = l2(2);
        let t = PairOperator::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let n = rotate_normalize(&x, &t, &[1.0, 0.0]).unwrap();
        assert_eq!(n.angle, 0.0);
        assert_eq!(n.pair, t);

        let t = PairOperator::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        let n = rotate_normalize(&x, &t, &[1.0, 0.0]).unwrap();
        assert!((n.angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(linalg::approx_eq(&n.pair.f, &[1.0, 0.0], 1e-15));
        assert!(linalg::approx_eq(&n.pair.g, &[0.0, -1.0], 1e-15));
        let back = n.pair.rotated(n.angle);
        assert!(linalg::approx_eq(&back.f, &t.f, 1e-15) && linalg::approx_eq(&back.g, &t.g, 1e-15));

        // T(x0) = (3/5, 4/5) on ℓ₁², x0 = e₁.
        let x = Space::lp(2, 1.0).unwrap();
        let t = PairOperator::new(vec![0.6, 0.0], vec![0.8, 0.5]).unwrap();
        let n = rotate_normalize(&x, &t, &[1.0, 0.0]).unwrap();
        assert!((n.pair.f[0] - 1.0).abs() < 1e-15 && n.pair.g[0].abs() < 1e-15);
        assert!(!n.rank_deficient);

        assert!(rotate_normalize(&x, &t, &[0.0, 1.0]).is_err());
    }
}

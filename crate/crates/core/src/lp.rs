//! Linear programs behind gauges, distances and norming functionals.

use microlp::{ComparisonOp, OptimizationDirection, Problem, Solution, Variable};

use crate::error::{Error, Result};

fn solve(p: &Problem) -> Result<Solution> {
    p.solve().map_err(|e| Error::Numerical(format!("linear program failed: {e}")))
}

fn free_var(p: &mut Problem, obj: f64) -> Variable {
    p.add_var(obj, (f64::NEG_INFINITY, f64::INFINITY))
}

/// Minkowski gauge of `x` with respect to `conv(points)`; `points` is assumed
/// symmetric and spanning. Returns the value and the optimal weights.
pub fn gauge(points: &[Vec<f64>], x: &[f64]) -> Result<(f64, Vec<f64>)> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let lam: Vec<_> = points.iter().map(|_| p.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for (i, &xi) in x.iter().enumerate() {
        let row: Vec<_> = lam.iter().zip(points).map(|(&v, q)| (v, q[i])).collect();
        p.add_constraint(&row, ComparisonOp::Eq, xi);
    }
    let s = solve(&p)?;
    Ok((s.objective(), lam.iter().map(|&v| s[v]).collect()))
}

/// `min_c gauge(x - B c)` for a vertex-described ball.
pub fn dist_vertex(points: &[Vec<f64>], x: &[f64], basis: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let lam: Vec<_> = points.iter().map(|_| p.add_var(1.0, (0.0, f64::INFINITY))).collect();
    let c: Vec<_> = basis.iter().map(|_| free_var(&mut p, 0.0)).collect();
    for (i, &xi) in x.iter().enumerate() {
        let mut row: Vec<_> = lam.iter().zip(points).map(|(&v, q)| (v, q[i])).collect();
        row.extend(c.iter().zip(basis).map(|(&v, b)| (v, b[i])));
        p.add_constraint(&row, ComparisonOp::Eq, xi);
    }
    let s = solve(&p)?;
    Ok((s.objective(), c.iter().map(|&v| s[v]).collect()))
}

/// `min_c max_φ |φ·(x - B c)|` for a facet-described ball.
pub fn dist_facets(facets: &[Vec<f64>], x: &[f64], basis: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let t = p.add_var(1.0, (0.0, f64::INFINITY));
    let c: Vec<_> = basis.iter().map(|_| free_var(&mut p, 0.0)).collect();
    for phi in facets {
        let px: f64 = phi.iter().zip(x).map(|(a, b)| a * b).sum();
        let pb: Vec<f64> = basis.iter().map(|b| phi.iter().zip(b).map(|(u, v)| u * v).sum()).collect();
        // φ·x − Σ c_k φ·b_k ≤ t and ≥ −t
        let mut up: Vec<_> = vec![(t, 1.0)];
        up.extend(c.iter().zip(&pb).map(|(&v, &w)| (v, w)));
        p.add_constraint(&up, ComparisonOp::Ge, px);
        let mut lo: Vec<_> = vec![(t, 1.0)];
        lo.extend(c.iter().zip(&pb).map(|(&v, &w)| (v, -w)));
        p.add_constraint(&lo, ComparisonOp::Ge, -px);
    }
    let s = solve(&p)?;
    Ok((s.objective(), c.iter().map(|&v| s[v]).collect()))
}

/// `max c·y` subject to `|a·y| ≤ 1` for each `a` in `rows`.
/// Used for norming functionals (rows = vertices) and norming points (rows = facets).
pub fn max_over_slab(rows: &[Vec<f64>], c: &[f64]) -> Result<(f64, Vec<f64>)> {
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let y: Vec<_> = c.iter().map(|&ci| free_var(&mut p, ci)).collect();
    for a in rows {
        let row: Vec<_> = y.iter().zip(a).map(|(&v, &w)| (v, w)).collect();
        p.add_constraint(&row, ComparisonOp::Le, 1.0);
        p.add_constraint(&row, ComparisonOp::Ge, -1.0);
    }
    let s = solve(&p)?;
    Ok((s.objective(), y.iter().map(|&v| s[v]).collect()))
}

/// `max c·x` over `x = Σ λ_p p` with `λ ≥ 0`, `Σ λ_p ≤ 1`.
pub fn max_over_hull(points: &[Vec<f64>], c: &[f64]) -> Result<f64> {
    let dim = c.len();
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let x: Vec<_> = c.iter().map(|&ci| free_var(&mut p, ci)).collect();
    let lam: Vec<_> = points.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    for i in 0..dim {
        let mut row: Vec<_> = vec![(x[i], 1.0)];
        row.extend(lam.iter().zip(points).map(|(&v, q)| (v, -q[i])));
        p.add_constraint(&row, ComparisonOp::Eq, 0.0);
    }
    let ones: Vec<_> = lam.iter().map(|&v| (v, 1.0)).collect();
    p.add_constraint(&ones, ComparisonOp::Le, 1.0);
    Ok(solve(&p)?.objective())
}

/// Whether `x ∈ conv(points)`.
pub fn in_hull(points: &[Vec<f64>], x: &[f64]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let lam: Vec<_> = points.iter().map(|_| p.add_var(0.0, (0.0, f64::INFINITY))).collect();
    for (i, &xi) in x.iter().enumerate() {
        let row: Vec<_> = lam.iter().zip(points).map(|(&v, q)| (v, q[i])).collect();
        p.add_constraint(&row, ComparisonOp::Eq, xi);
    }
    let ones: Vec<_> = lam.iter().map(|&v| (v, 1.0)).collect();
    p.add_constraint(&ones, ComparisonOp::Eq, 1.0);
    match p.solve() {
        Ok(_) => Ok(true),
        Err(microlp::Error::Infeasible) => Ok(false),
        Err(e) => Err(Error::Numerical(format!("linear program failed: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross() -> Vec<Vec<f64>> {
        vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]
    }

    #[test]
    fn gauge_of_cross_polytope_is_l1() {
        let (g, _) = gauge(&cross(), &[1.0, 1.0]).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        let (g, _) = gauge(&cross(), &[0.3, -0.2]).unwrap();
        assert!((g - 0.5).abs() < 1e-12);
    }

    #[test]
    fn slab_max_is_dual_norm() {
        // max (3,4)·y over |y_i| ≤ 1 is 7
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let (v, y) = max_over_slab(&rows, &[3.0, 4.0]).unwrap();
        assert!((v - 7.0).abs() < 1e-12);
        assert!((y[0] - 1.0).abs() < 1e-12 && (y[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn facet_distance_to_axis() {
        let facets = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let (d, _) = dist_facets(&facets, &[1.0, 1.0, 1.0], &[vec![0.0, 0.0, 1.0]]).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hull_membership() {
        assert!(in_hull(&cross(), &[0.2, 0.2]).unwrap());
        assert!(!in_hull(&cross(), &[0.6, 0.6]).unwrap());
    }
}

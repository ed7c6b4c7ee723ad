//! Planar convex polygons: hulls, edge functionals and half-plane clipping.

pub type P2 = [f64; 2];

fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull in counter-clockwise order, collinear points dropped,
/// starting at the lexicographically smallest vertex.
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts: Vec<P2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-13 && (a[1] - b[1]).abs() < 1e-13);
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<P2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    prune_collinear(&hull, 1e-13)
}

/// Drops vertices of a convex CCW polygon lying within `rel_tol · scale` of
/// the line through their neighbours, where `scale` is the largest coordinate.
pub fn prune_collinear(poly: &[P2], rel_tol: f64) -> Vec<P2> {
    let scale = poly.iter().fold(0.0_f64, |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let tol = rel_tol * scale;
    let mut out = poly.to_vec();
    loop {
        let n = out.len();
        if n <= 3 {
            return out;
        }
        let flat = (0..n).min_by(|&i, &j| {
            sagitta(&out, i).total_cmp(&sagitta(&out, j))
        });
        match flat {
            Some(i) if sagitta(&out, i) <= tol => {
                out.remove(i);
            }
            _ => return out,
        }
    }
}

fn sagitta(poly: &[P2], i: usize) -> f64 {
    let n = poly.len();
    let (a, b, c) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
    let len = (c[0] - a[0]).hypot(c[1] - a[1]);
    if len == 0.0 {
        return 0.0;
    }
    cross(a, b, c).abs() / len
}

/// Functional `φ` with `φ·a = φ·b = 1`, i.e. the supporting line through an edge
/// of a polygon containing the origin in its interior.
pub fn edge_functional(a: P2, b: P2) -> Option<P2> {
    let det = a[0] * b[1] - a[1] * b[0];
    if det.abs() < 1e-15 {
        return None;
    }
    Some([(b[1] - a[1]) / det, (a[0] - b[0]) / det])
}

/// Edge functionals of a CCW polygon around the origin; entry `i` belongs to
/// the edge from vertex `i` to vertex `i+1`.
pub fn edge_functionals(poly: &[P2]) -> Vec<P2> {
    let n = poly.len();
    (0..n)
        .filter_map(|i| edge_functional(poly[i], poly[(i + 1) % n]))
        .collect()
}

/// Gauge of `x` with respect to a polygon containing the origin in its interior.
pub fn polygon_gauge(edge_fns: &[P2], x: P2) -> f64 {
    edge_fns
        .iter()
        .fold(0.0_f64, |m, f| m.max(f[0] * x[0] + f[1] * x[1]))
}

/// Clips a convex polygon to the half-plane `a·x ≤ c`.
pub fn clip_halfplane(poly: &[P2], a: P2, c: f64) -> Vec<P2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    let val = |p: P2| a[0] * p[0] + a[1] * p[1] - c;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (vp, vq) = (val(p), val(q));
        if vp <= 0.0 {
            out.push(p);
        }
        if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
            let s = vp / (vp - vq);
            out.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
        }
    }
    out
}

/// Clips to the slab `|a·x| ≤ c`.
pub fn clip_slab(poly: &[P2], a: P2, c: f64) -> Vec<P2> {
    let once = clip_halfplane(poly, a, c);
    clip_halfplane(&once, [-a[0], -a[1]], c)
}

pub fn area(poly: &[P2]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<f64>()
        / 2.0
}

pub fn apply(m: [[f64; 2]; 2], poly: &[P2]) -> Vec<P2> {
    poly.iter().map(|&p| crate::linalg::apply2(m, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_and_collinear_points() {
        let pts = [
            [1.0, 1.0], [-1.0, 1.0], [0.0, 0.0], [1.0, -1.0], [-1.0, -1.0], [0.0, 1.0], [0.2, 0.3],
        ];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]);
        assert!((area(&h) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn edge_functionals_of_diamond() {
        let d = convex_hull(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]);
        let e = edge_functionals(&d);
        assert_eq!(e.len(), 4);
        for f in &e {
            assert!((f[0].abs() - 1.0).abs() < 1e-15 && (f[1].abs() - 1.0).abs() < 1e-15);
        }
        assert!((polygon_gauge(&e, [0.3, -0.4]) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn slab_clip_of_square() {
        let sq = convex_hull(&[[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]]);
        let c = clip_slab(&sq, [1.0, 0.0], 0.5);
        assert!((area(&c) - 2.0).abs() < 1e-15);
        assert!(c.iter().all(|p| p[0].abs() <= 0.5 + 1e-15));
    }

    #[test]
    fn hull_keeps_edge_endpoints_under_rounding() {
        let x = 1.0000000000000004;
        let pts = [[1.0, 0.0587], [1.0, 1.0], [x, -0.426], [-1.0, -0.0587], [-1.0, -1.0], [-x, 0.426]];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(h.contains(&[1.0, 1.0]) && h.contains(&[-1.0, -1.0]));
    }

    #[test]
    fn prune_removes_nearly_flat_vertex() {
        let p = [[1.0, 0.0], [0.5, 0.5 + 1e-12], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        assert_eq!(prune_collinear(&p, 1e-9).len(), 4);
        assert_eq!(prune_collinear(&p, 1e-13).len(), 5);
    }
}

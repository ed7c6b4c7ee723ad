//! Small dense linear-algebra helpers on `Vec<f64>` rows.

use std::cmp::Ordering;

use nalgebra::DMatrix;

use crate::config::RANK_THRESHOLD;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s·b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn neg(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| -x).collect()
}

pub fn mat_vec(rows: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| dot(r, x)).collect()
}

/// `yᵀ M`, i.e. the transpose action on a row covector.
pub fn vec_mat(y: &[f64], rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.first().map_or(0, Vec::len);
    let mut out = vec![0.0; n];
    for (yi, r) in y.iter().zip(rows) {
        for (o, a) in out.iter_mut().zip(r) {
            *o += yi * a;
        }
    }
    out
}

pub fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

pub fn to_dmatrix(rows: &[Vec<f64>], ncols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

pub fn singular_values(rows: &[Vec<f64>], ncols: usize) -> Vec<f64> {
    if rows.is_empty() || ncols == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_dmatrix(rows, ncols).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with the threshold `σ < 1e-10 · max(1, σ_max)`.
pub fn rank(rows: &[Vec<f64>], ncols: usize) -> usize {
    let s = singular_values(rows, ncols);
    let smax = s.first().copied().unwrap_or(0.0);
    let cut = RANK_THRESHOLD * smax.max(1.0);
    s.iter().filter(|&&x| x >= cut).count()
}

/// Orthonormal basis of `{x : r·x = 0 for every row r}`.
pub fn nullspace(rows: &[Vec<f64>], ncols: usize) -> Vec<Vec<f64>> {
    if ncols == 0 {
        return Vec::new();
    }
    // Pad to at least ncols rows so the SVD returns a full V.
    let m = rows.len().max(ncols);
    let a = DMatrix::from_fn(m, ncols, |i, j| rows.get(i).map_or(0.0, |r| r[j]));
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().fold(0.0_f64, |m, &s| m.max(s));
    let cut = RANK_THRESHOLD * smax.max(1.0);
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s < cut {
            out.push(canonical_sign(vt.row(k).iter().copied().collect()));
        }
    }
    out.sort_by(|a, b| lex_cmp(a, b));
    out
}

/// Least-squares solution of `A x = b` via the pseudo-inverse.
pub fn lstsq(rows: &[Vec<f64>], ncols: usize, b: &[f64]) -> Vec<f64> {
    let a = to_dmatrix(rows, ncols);
    let svd = a.svd(true, true);
    let bv = nalgebra::DVector::from_column_slice(b);
    let smax = svd.singular_values.iter().fold(0.0_f64, |m, &s| m.max(s));
    let eps = RANK_THRESHOLD * smax.max(1.0);
    match svd.solve(&bv, eps) {
        Ok(x) => x.iter().copied().collect(),
        Err(_) => vec![0.0; ncols],
    }
}

/// Solves the 2×2 system `[[a, b], [c, d]] x = r`.
pub fn solve2(m: [[f64; 2]; 2], r: [f64; 2]) -> Option<[f64; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(0.0_f64, |s, x| s.max(x.abs())).max(1e-300);
    if det.abs() <= 1e-14 * scale * scale {
        return None;
    }
    Some([
        (r[0] * m[1][1] - m[0][1] * r[1]) / det,
        (m[0][0] * r[1] - m[1][0] * r[0]) / det,
    ])
}

pub fn inv2(m: [[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let c0 = solve2(m, [1.0, 0.0])?;
    let c1 = solve2(m, [0.0, 1.0])?;
    Some([[c0[0], c1[0]], [c0[1], c1[1]]])
}

pub fn mul2(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut o = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    o
}

pub fn apply2(m: [[f64; 2]; 2], x: [f64; 2]) -> [f64; 2] {
    [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
}

/// Flips `v` so that its first entry of non-negligible magnitude is positive.
pub fn canonical_sign(mut v: Vec<f64>) -> Vec<f64> {
    let scale = norm_inf(&v);
    if let Some(x) = v.iter().find(|x| x.abs() > 1e-12 * scale.max(1e-300)) {
        if *x < 0.0 {
            v.iter_mut().for_each(|y| *y = -*y);
        }
    }
    v
}

pub fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub fn approx_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points from `a` to `b` (both positive) evenly spaced in log scale.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}


/// Gaussian elimination with partial pivoting for a square system.
/// Returns `None` when a pivot falls below `1e-12` relative to the row scale.
pub fn solve_square(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row = r.clone();
            row.push(bi);
            row
        })
        .collect();
    let scale = a.iter().flatten().fold(0.0_f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 * scale {
            return None;
        }
        m.swap(col, piv);
        for i in col + 1..n {
            let fac = m[i][col] / m[col][col];
            if fac != 0.0 {
                for k in col..=n {
                    m[i][k] -= fac * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

/// All `k`-subsets of `0..n` in lexicographic order, passed to `visit`.
/// Stops early when `visit` returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

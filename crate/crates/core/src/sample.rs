//! Seeded generators for random spaces, functionals and instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg;
use crate::spaces::Space;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for item `index` of a batch seeded by `seed`.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    rng(splitmix64(seed ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15))))
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian_vec(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform direction on the Euclidean sphere.
pub fn direction(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, dim);
        let n = linalg::norm2(&v);
        if n > 1e-8 {
            return linalg::scale(&v, 1.0 / n);
        }
    }
}

/// Points `±r·u` with random directions `u` and radii in `[0.6, 1]`; interior
/// points are pruned, so the result may have fewer than `2·pairs` vertices.
pub fn vertex_space(rng: &mut impl Rng, dim: usize, pairs: usize) -> Result<Space> {
    loop {
        let pts: Vec<Vec<f64>> = (0..pairs.max(dim))
            .map(|_| {
                let r = rng.gen_range(0.6..=1.0);
                linalg::scale(&direction(rng, dim), r)
            })
            .collect();
        if linalg::rank(&pts, dim) < dim {
            continue;
        }
        return Space::from_symmetric_points(&pts);
    }
}

/// Facet-form space from `pairs` random functionals, redundant ones pruned.
pub fn facet_space(rng: &mut impl Rng, dim: usize, pairs: usize) -> Result<Space> {
    loop {
        let fs: Vec<Vec<f64>> = (0..pairs.max(dim))
            .map(|_| {
                let r = rng.gen_range(0.6..=1.0);
                linalg::scale(&direction(rng, dim), 1.0 / r)
            })
            .collect();
        if linalg::rank(&fs, dim) < dim {
            continue;
        }
        return Space::from_symmetric_functionals(&fs);
    }
}

/// A functional of dual norm one.
pub fn unit_functional(rng: &mut impl Rng, space: &Space) -> Result<Vec<f64>> {
    let f = direction(rng, space.dim());
    let n = space.dual_norm(&f)?;
    Ok(linalg::scale(&f, 1.0 / n))
}

/// A vector of norm one.
pub fn unit_vector(rng: &mut impl Rng, space: &Space) -> Result<Vec<f64>> {
    let x = direction(rng, space.dim());
    let n = space.norm(&x)?;
    Ok(linalg::scale(&x, 1.0 / n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<f64> = gaussian_vec(&mut substream(7, 3), 4);
        let b: Vec<f64> = gaussian_vec(&mut substream(7, 3), 4);
        let c: Vec<f64> = gaussian_vec(&mut substream(7, 4), 4);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_spaces_are_valid() {
        let mut r = rng(1);
        for dim in 2..=4 {
            let s = vertex_space(&mut r, dim, 8).unwrap();
            assert_eq!(s.dim(), dim);
            let f = facet_space(&mut r, dim, 6).unwrap();
            assert!(f.extreme_points().unwrap().len() >= 2 * dim);
            let u = unit_functional(&mut r, &s).unwrap();
            assert!((s.dual_norm(&u).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}

//! Uniformly distributed subspaces from orthonormalized Gaussian frames.

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geom::Subspace;

/// Draw `count` uniformly distributed d-dimensional subspaces of R^n.
/// Deterministic for a fixed seed.
pub fn subspace_sample(n: usize, d: usize, count: usize, seed: u64) -> Result<Vec<Subspace>> {
    if d == 0 || d >= n {
        return Err(Error::Domain(format!("subspace dims 1 <= d <= n-1 violated: d={d}, n={n}")));
    }
    if count == 0 {
        return Err(Error::Domain("count must be >= 1".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
        for _ in 0..d {
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            basis.push(v);
        }
        if let Some(frame) = gram_schmidt(basis) {
            out.push(Subspace::new(n, frame)?);
        }
        // degenerate Gaussian frames are redrawn
    }
    Ok(out)
}

/// Modified Gram–Schmidt; returns None if the frame is numerically singular.
fn gram_schmidt(mut basis: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let d = basis.len();
    for i in 0..d {
        for j in 0..i {
            let (head, tail) = basis.split_at_mut(i);
            let bj = &head[j];
            let bi = &mut tail[0];
            let dot: f64 = bi.iter().zip(bj.iter()).map(|(a, b)| a * b).sum();
            for (x, y) in bi.iter_mut().zip(bj.iter()) {
                *x -= dot * y;
            }
        }
        // second orthogonalization pass for numerical cleanliness
        for j in 0..i {
            let (head, tail) = basis.split_at_mut(i);
            let bj = &head[j];
            let bi = &mut tail[0];
            let dot: f64 = bi.iter().zip(bj.iter()).map(|(a, b)| a * b).sum();
            for (x, y) in bi.iter_mut().zip(bj.iter()) {
                *x -= dot * y;
            }
        }
        let norm: f64 = basis[i].iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        basis[i].iter_mut().for_each(|c| *c /= norm);
    }
    Some(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_bases_are_orthonormal() {
        let subs = subspace_sample(5, 3, 20, 42).unwrap();
        assert_eq!(subs.len(), 20);
        for h in &subs {
            for i in 0..3 {
                for j in 0..3 {
                    let dot: f64 = h.basis()[i].iter().zip(&h.basis()[j]).map(|(a, b)| a * b).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - target).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn same_seed_reproduces_list() {
        let a = subspace_sample(4, 2, 7, 11).unwrap();
        let b = subspace_sample(4, 2, 7, 11).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.basis(), y.basis());
        }
    }

    #[test]
    fn invalid_dims_rejected() {
        assert!(subspace_sample(3, 0, 1, 0).is_err());
        assert!(subspace_sample(3, 3, 1, 0).is_err());
    }
}

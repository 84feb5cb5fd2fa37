use super::{inner, norm, Scalar};

/// Orthonormal basis of `span{vectors}` by column-pivoted modified
/// Gram–Schmidt with one reorthogonalisation pass.
///
/// A vector counts as dependent once its residual after projection is at most
/// `rank_tol` (absolute). Returns the basis and its length (the rank).
pub fn orthonormal_span_basis(vectors: &[Vec<Scalar>], rank_tol: f64) -> (Vec<Vec<Scalar>>, usize) {
    let mut residuals: Vec<Vec<Scalar>> = vectors.to_vec();
    let mut remaining: Vec<usize> = (0..vectors.len()).collect();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();

    loop {
        // pivot: largest residual still above the threshold
        let pick = remaining
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, i, norm(&residuals[i])))
            .filter(|&(_, _, r)| r > rank_tol)
            .max_by(|a, b| a.2.total_cmp(&b.2).then(b.1.cmp(&a.1)));
        let Some((pos, idx, _)) = pick else { break };
        remaining.swap_remove(pos);
        remaining.sort_unstable();

        let mut q = residuals[idx].clone();
        for b in &basis {
            let p = inner(&q, b);
            for (qk, bk) in q.iter_mut().zip(b) {
                *qk -= p * bk;
            }
        }
        let qn = norm(&q);
        if qn <= rank_tol {
            continue;
        }
        for qk in &mut q {
            *qk /= qn;
        }
        for &j in &remaining {
            let p = inner(&residuals[j], &q);
            for (rk, qk) in residuals[j].iter_mut().zip(&q) {
                *rk -= p * qk;
            }
        }
        basis.push(q);
    }
    let rank = basis.len();
    (basis, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn duplicate_vector_has_rank_one() {
        let e1 = vec![ONE, ZERO, ZERO];
        let (basis, rank) = orthonormal_span_basis(&[e1.clone(), e1.clone()], 1e-10);
        assert_eq!(rank, 1);
        assert!((inner(&basis[0], &e1).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_axes_rank_two() {
        let e1 = vec![ONE, ZERO];
        let e2 = vec![ZERO, ONE];
        assert_eq!(orthonormal_span_basis(&[e1, e2], 1e-10).1, 2);
    }

    #[test]
    fn empty_input_rank_zero() {
        let (basis, rank) = orthonormal_span_basis(&[], 1e-10);
        assert!(basis.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn five_random_vectors_in_three_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let vs: Vec<Vec<Scalar>> = (0..5)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        Scalar::new(
                            StandardNormal.sample(&mut rng),
                            StandardNormal.sample(&mut rng),
                        )
                    })
                    .collect()
            })
            .collect();
        let (basis, rank) = orthonormal_span_basis(&vs, 1e-10);
        assert_eq!(rank, 3);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((inner(a, b) - Scalar::new(expect, 0.0)).norm() <= 1e-12);
            }
        }
    }
}

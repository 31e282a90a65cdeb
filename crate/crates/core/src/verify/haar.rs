use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// A dense `n × n` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn at(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }

    /// `max |(U U†)_{ij} - δ_{ij}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.get(i, k) * self.get(j, k).conj();
                }
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }
}

/// Draws a Haar-distributed unitary: QR of a complex Gaussian matrix by
/// Householder reflections, with each column of `Q` multiplied by the phase
/// of the matching diagonal entry of `R`.
pub fn sample_haar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    assert!(n >= 1, "dimension must be positive");
    let mut a = Matrix {
        n,
        data: (0..n * n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect(),
    };
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    for k in 0..n {
        let norm = (k..n).map(|i| a.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        let x0 = a.get(k, k);
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        // R_kk = -phase·norm
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..n).map(|i| a.get(i, k)).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm > 0.0 {
            for z in &mut v {
                *z /= vnorm;
            }
            for j in k..n {
                let dot: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(t, vi)| vi.conj() * a.get(k + t, j))
                    .sum();
                for (t, vi) in v.iter().enumerate() {
                    *a.at(k + t, j) -= 2.0 * vi * dot;
                }
            }
        }
        reflectors.push(v);
        phases.push(if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            Complex64::new(1.0, 0.0)
        });
    }
    // Q = H_0 H_1 ⋯ H_{n-1}, built right to left on the identity
    let mut q = Matrix::identity(n);
    for k in (0..n).rev() {
        let v = &reflectors[k];
        for j in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * q.get(k + t, j))
                .sum();
            for (t, vi) in v.iter().enumerate() {
                *q.at(k + t, j) -= 2.0 * vi * dot;
            }
        }
    }
    for i in 0..n {
        for (j, ph) in phases.iter().enumerate() {
            *q.at(i, j) *= ph;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for _ in 0..50 {
                assert!(sample_haar(n, &mut rng).unitarity_residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn one_dimensional_sample_is_a_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = sample_haar(1, &mut rng);
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn seeded_stream_is_reproducible() {
        let a = sample_haar(5, &mut ChaCha8Rng::seed_from_u64(99));
        let b = sample_haar(5, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(a, b);
    }
}

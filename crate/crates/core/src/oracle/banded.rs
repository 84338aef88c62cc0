//! Banded LU factorization with partial pivoting.

use crate::error::{Result, ShellError};

/// Square matrix with `kl` sub- and `ku` super-diagonals. Row `i` stores the
/// columns `i − kl ..= i + ku + kl`; the extra `kl` columns hold pivoting fill.
#[derive(Debug, Clone)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl);
        i * self.width + (j + self.kl - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || j > i + self.ku + self.kl || j >= self.n {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }

    /// Adds `v` to entry `(i, j)`, which must lie inside the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(
            j + self.kl >= i && j <= i + self.ku && j < self.n,
            "entry ({i}, {j}) outside band"
        );
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    /// Factorizes in place and solves `A x = b`. Returns `x` and the ratio of
    /// the largest to the smallest pivot magnitude as a condition estimate.
    pub fn solve(mut self, mut b: Vec<f64>) -> Result<(Vec<f64>, f64)> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let span = self.ku + self.kl;
        let mut pivots = vec![0usize; n];
        let (mut pmax, mut pmin) = (0.0_f64, f64::INFINITY);
        for k in 0..n {
            let last = (k + self.kl).min(n - 1);
            let mut p = k;
            for i in k + 1..=last {
                if self.get(i, k).abs() > self.get(p, k).abs() {
                    p = i;
                }
            }
            pivots[k] = p;
            let right = (k + span).min(n - 1);
            if p != k {
                for j in k..=right {
                    let (sk, sp) = (self.slot(k, j), self.slot(p, j));
                    self.data.swap(sk, sp);
                }
            }
            let pivot = self.get(k, k);
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(ShellError::SingularSystem {
                    condition: f64::INFINITY,
                });
            }
            pmax = pmax.max(pivot.abs());
            pmin = pmin.min(pivot.abs());
            for i in k + 1..=last {
                let si = self.slot(i, k);
                let factor = self.data[si] / pivot;
                self.data[si] = factor;
                if factor != 0.0 {
                    for j in k + 1..=right {
                        let (sij, skj) = (self.slot(i, j), self.slot(k, j));
                        self.data[sij] -= factor * self.data[skj];
                    }
                }
            }
        }
        for k in 0..n {
            b.swap(k, pivots[k]);
            let bk = b[k];
            if bk != 0.0 {
                for i in k + 1..=(k + self.kl).min(n - 1) {
                    b[i] -= self.get(i, k) * bk;
                }
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in i + 1..=(i + span).min(n - 1) {
                acc -= self.get(i, j) * b[j];
            }
            b[i] = acc / self.get(i, i);
        }
        Ok((b, pmax / pmin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_dense_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (n, kl, ku) = (40, 3, 2);
        let mut a = BandedMatrix::zeros(n, kl, ku);
        let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                // small diagonal forces row interchanges
                let v: f64 = rng.random_range(-1.0..1.0) * if i == j { 0.01 } else { 1.0 };
                a.add(i, j, v);
                dense[(i, j)] = v;
            }
        }
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let (x, cond) = a.solve(b.clone()).unwrap();
        let expect = dense.lu().solve(&nalgebra::DVector::from_vec(b)).unwrap();
        for i in 0..n {
            assert!((x[i] - expect[i]).abs() < 1e-10 * expect.amax());
        }
        assert!(cond.is_finite() && cond >= 1.0);
    }

    #[test]
    fn reports_singular_matrix() {
        let mut a = BandedMatrix::zeros(3, 1, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, 1.0);
        assert!(matches!(
            a.solve(vec![1.0, 1.0, 1.0]),
            Err(ShellError::SingularSystem { .. })
        ));
    }
}

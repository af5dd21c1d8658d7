use serde::Serialize;

use crate::{LcpError, Result, Scalar};

/// A square linear map `x -> T x` on `R^n`.
pub trait LinearOperator<T> {
    fn dim(&self) -> usize;

    /// Writes `T x` into `y`; both slices have length `dim()`.
    fn apply(&self, x: &[T], y: &mut [T]);

    fn apply_vec(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Default,
    {
        let mut y = vec![T::default(); self.dim()];
        self.apply(x, &mut y);
        y
    }
}

impl<T, O: LinearOperator<T> + ?Sized> LinearOperator<T> for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        (**self).apply(x, y)
    }
}

/// Adapts a closure into a [`LinearOperator`].
pub struct FnOperator<F> {
    n: usize,
    f: F,
}

impl<F> FnOperator<F> {
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<T, F: Fn(&[T], &mut [T])> LinearOperator<T> for FnOperator<F> {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        (self.f)(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEstimate<T> {
    pub rho: T,
    pub iterations: usize,
    pub converged: bool,
}

pub const DEFAULT_POWER_TOL: f64 = 1e-10;

pub fn default_power_max_iters(n: usize) -> usize {
    10 * n + 1000
}

/// Perron-root estimate by power iteration from the all-ones vector, with
/// default tolerance and iteration cap.
pub fn spectral_radius_nonneg_with<T: Scalar>(t: &impl LinearOperator<T>) -> Result<SpectralEstimate<T>> {
    spectral_radius_nonneg(t, T::lit(DEFAULT_POWER_TOL), default_power_max_iters(t.dim()))
}

/// Power iteration for an entrywise nonnegative operator.
///
/// The iterate is kept at unit max-norm, so the growth factor `||T x||_inf`
/// is the running estimate. Stops when two successive estimates agree to
/// `tol` relative, or when the Collatz-Wielandt bracket
/// `min (Tx)_i / x_i <= rho <= max (Tx)_i / x_i` closes to `tol` while `x > 0`.
/// Exhausting `max_iters` returns the last estimate with `converged = false`.
pub fn spectral_radius_nonneg<T: Scalar>(
    t: &impl LinearOperator<T>,
    tol: T,
    max_iters: usize,
) -> Result<SpectralEstimate<T>> {
    if !(tol > T::zero()) {
        return Err(LcpError::InvalidParameter("power iteration tolerance must be positive".into()));
    }
    let n = t.dim();
    if n == 0 {
        return Ok(SpectralEstimate { rho: T::zero(), iterations: 0, converged: true });
    }
    let mut x = vec![T::one(); n];
    let mut y = vec![T::zero(); n];
    let mut prev = T::nan();
    let mut est = T::zero();
    for k in 1..=max_iters {
        t.apply(&x, &mut y);
        est = y.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if !est.is_finite() {
            return Err(LcpError::Divergence { iteration: k });
        }
        if est == T::zero() {
            return Ok(SpectralEstimate { rho: T::zero(), iterations: k, converged: true });
        }
        if x.iter().all(|&v| v > T::zero()) {
            let (lo, hi) = x.iter().zip(&y).fold((T::infinity(), T::zero()), |(lo, hi), (&xi, &yi)| {
                let r = yi / xi;
                (lo.min(r), hi.max(r))
            });
            if hi - lo <= tol * hi {
                return Ok(SpectralEstimate { rho: hi, iterations: k, converged: true });
            }
        }
        if (est - prev).abs() <= tol * est {
            return Ok(SpectralEstimate { rho: est, iterations: k, converged: true });
        }
        prev = est;
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / est;
        }
    }
    Ok(SpectralEstimate { rho: est, iterations: max_iters, converged: false })
}

/// True iff `T v < v` componentwise for the positive vector `v`, a sound
/// certificate that `rho(T) < 1` for nonnegative `T`.
pub fn certify_rho_lt_one<T: Scalar>(t: &impl LinearOperator<T>, v: &[T]) -> Result<bool> {
    if v.len() != t.dim() {
        return Err(LcpError::DimensionMismatch { expected: t.dim(), got: v.len() });
    }
    if let Some(i) = v.iter().position(|&x| !(x > T::zero())) {
        return Err(LcpError::InvalidParameter(format!("certificate vector not positive at index {i}")));
    }
    let mut tv = vec![T::zero(); v.len()];
    t.apply(v, &mut tv);
    Ok(tv.iter().zip(v).all(|(a, b)| a < b))
}

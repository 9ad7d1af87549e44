//! Heavy-tailed Lévy steps (Mantegna's method) and uniform draws.
//!
//! A Mantegna step is `u / |v|^(1/λ)` with `u ~ N(0, σ²)`, `v ~ N(0, 1)` and
//! `σ` from [`mantegna_sigma`]. Its magnitude has a power-law tail
//! `P(|s| > t) ~ t^-λ`, so most steps are small with occasional long jumps.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevyConfig<T> {
    /// Tail exponent λ, in `(0, 2]`.
    pub lambda: T,
    /// Multiplier applied to every raw draw.
    pub scale: T,
    /// Lower edge of the power-law regime. Not applied to draws.
    pub min_step: Option<T>,
}

impl<T: Scalar> Default for LevyConfig<T> {
    fn default() -> Self {
        Self { lambda: T::lit(1.5), scale: T::lit(0.1), min_step: None }
    }
}

impl<T: Scalar> LevyConfig<T> {
    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        if !(self.scale > T::zero()) || !self.scale.is_finite() {
            return Err(Error::config(format!("levy scale must be positive, got {}", self.scale)));
        }
        if let Some(s0) = self.min_step {
            if !(s0 > T::zero()) {
                return Err(Error::config(format!("levy min_step must be positive, got {s0}")));
            }
        }
        Ok(())
    }
}

fn check_lambda<T: Scalar>(lambda: T) -> Result<()> {
    if lambda > T::zero() && lambda <= T::lit(2.0) {
        Ok(())
    } else {
        Err(Error::config(format!("levy exponent must lie in (0, 2], got {lambda}")))
    }
}

/// Gamma function, exact at small positive integers.
fn gamma(x: f64) -> f64 {
    if x > 0.0 && x <= 171.0 && x.fract() == 0.0 {
        (2..x as u32).fold(1.0, |acc, k| acc * f64::from(k))
    } else {
        statrs::function::gamma::gamma(x)
    }
}

/// Standard deviation of the numerator Gaussian in Mantegna's method:
///
/// `σ = [Γ(1+λ) sin(πλ/2) / (Γ((1+λ)/2) λ 2^((λ-1)/2))]^(1/λ)`
pub fn mantegna_sigma<T: Scalar>(lambda: T) -> Result<T> {
    check_lambda(lambda)?;
    let l = lambda.to_f64_lossy();
    let num = gamma(1.0 + l) * (PI * l / 2.0).sin();
    let den = gamma((1.0 + l) / 2.0) * l * 2f64.powf((l - 1.0) / 2.0);
    Ok(T::lit((num / den).powf(1.0 / l)))
}

/// Draws Lévy steps for one configuration; caches σ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevySampler<T> {
    config: LevyConfig<T>,
    sigma: T,
    inv_lambda: T,
}

impl<T: Scalar> LevySampler<T> {
    pub fn new(config: LevyConfig<T>) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, sigma: mantegna_sigma(config.lambda)?, inv_lambda: config.lambda.recip() })
    }

    pub fn config(&self) -> &LevyConfig<T> {
        &self.config
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    /// One unscaled Mantegna ratio.
    pub fn draw_raw(&self, rng: &mut RngStream) -> T {
        let u = rng.standard_normal::<T>() * self.sigma;
        let mut v = rng.standard_normal::<T>();
        while v == T::zero() {
            v = rng.standard_normal::<T>();
        }
        u / v.abs().powf(self.inv_lambda)
    }

    /// One scaled step.
    pub fn draw(&self, rng: &mut RngStream) -> T {
        self.config.scale * self.draw_raw(rng)
    }

    /// Overwrites `out` with independent scaled steps.
    pub fn fill(&self, out: &mut [T], rng: &mut RngStream) {
        for s in out {
            *s = self.draw(rng);
        }
    }

    pub fn step_vector(&self, dim: usize, rng: &mut RngStream) -> Vec<T> {
        (0..dim).map(|_| self.draw(rng)).collect()
    }
}

/// `dim` independent signed Lévy steps under `cfg`.
pub fn levy_step_vector<T: Scalar>(cfg: &LevyConfig<T>, dim: usize, rng: &mut RngStream) -> Result<Vec<T>> {
    if dim == 0 {
        return Err(Error::config("step vector dimension must be at least 1"));
    }
    Ok(LevySampler::new(*cfg)?.step_vector(dim, rng))
}

/// Uniform draw in `[0, 1)`.
pub fn uniform_unit<T: Scalar>(rng: &mut RngStream) -> T {
    rng.uniform_unit()
}

//! The ambient warped product `I ×_f M(c)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{EvalError, Expression};
use crate::jet::Jet2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmbientError {
    #[error("t = {t} lies outside the open interval ({lo}, {hi})")]
    OutsideInterval { t: f64, lo: f64, hi: f64 },
    #[error("warping function is not positive at t = {t} (f = {value})")]
    NonPositiveWarping { t: f64, value: f64 },
    #[error("warping function failed at t = {t}: {source}")]
    Eval { t: f64, source: EvalError },
    #[error("fiber curvature must be -1, 0 or 1, got {0}")]
    FiberCurvature(f64),
    #[error("hypersurface dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval { lo: f64, hi: f64 },
}

/// Warping data at one height `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDerivatives {
    pub f: f64,
    pub f1: f64,
    pub f2: f64,
    /// `(log f)' = f'/f`
    pub log1: f64,
    /// `(log f)'' = f''/f - (f'/f)^2`
    pub log2: f64,
}

/// Sectional curvatures of the ambient at height `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientSectional {
    /// Plane spanned by `∂t` and a fiber direction: `-f''/f`.
    pub base_fiber: f64,
    /// Plane spanned by two fiber directions: `(c - f'^2)/f^2`.
    pub fiber_fiber: f64,
}

/// `I ×_f M^n(c)`: warping function, open base interval, constant fiber
/// curvature and hypersurface dimension `n` (the ambient has dimension `n+1`).
#[derive(Debug, Clone)]
pub struct Ambient {
    f: Expression,
    t_lo: f64,
    t_hi: f64,
    c_fiber: f64,
    n: usize,
}

impl Ambient {
    /// `t_lo`/`t_hi` may be infinite.
    pub fn new(
        f: Expression,
        t_lo: f64,
        t_hi: f64,
        c_fiber: f64,
        n: usize,
    ) -> Result<Ambient, AmbientError> {
        if !(t_lo < t_hi) {
            return Err(AmbientError::EmptyInterval { lo: t_lo, hi: t_hi });
        }
        if ![-1.0, 0.0, 1.0].contains(&c_fiber) {
            return Err(AmbientError::FiberCurvature(c_fiber));
        }
        if n < 2 {
            return Err(AmbientError::Dimension(n));
        }
        Ok(Ambient {
            f,
            t_lo,
            t_hi,
            c_fiber,
            n,
        })
    }

    /// Flat `ℝ × ℝ^n`.
    pub fn euclidean_product(n: usize) -> Ambient {
        Ambient::new(
            Expression::constant(1.0, "t"),
            f64::NEG_INFINITY,
            f64::INFINITY,
            0.0,
            n,
        )
        .expect("valid flat ambient")
    }

    pub fn warping(&self) -> &Expression {
        &self.f
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.t_lo, self.t_hi)
    }

    pub fn fiber_curvature(&self) -> f64 {
        self.c_fiber
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Same warping and interval with another hypersurface dimension.
    pub fn with_dimension(&self, n: usize) -> Result<Ambient, AmbientError> {
        Ambient::new(self.f.clone(), self.t_lo, self.t_hi, self.c_fiber, n)
    }

    fn check_interval(&self, t: f64) -> Result<(), AmbientError> {
        if t > self.t_lo && t < self.t_hi {
            Ok(())
        } else {
            Err(AmbientError::OutsideInterval {
                t,
                lo: self.t_lo,
                hi: self.t_hi,
            })
        }
    }

    /// `f(t)` only; used inside the profile integrator.
    pub fn f_value(&self, t: f64) -> Result<f64, AmbientError> {
        self.check_interval(t)?;
        let value = self
            .f
            .eval(t)
            .map_err(|source| AmbientError::Eval { t, source })?;
        if value <= 0.0 {
            return Err(AmbientError::NonPositiveWarping { t, value });
        }
        Ok(value)
    }

    /// `(f, f', f'')` at `t`.
    pub fn warping_jet(&self, t: f64) -> Result<Jet2, AmbientError> {
        self.check_interval(t)?;
        let jet = self
            .f
            .eval_jet2(t)
            .map_err(|source| AmbientError::Eval { t, source })?;
        if jet.value <= 0.0 {
            return Err(AmbientError::NonPositiveWarping {
                t,
                value: jet.value,
            });
        }
        Ok(jet)
    }

    pub fn log_derivatives(&self, t: f64) -> Result<LogDerivatives, AmbientError> {
        let Jet2 { value: f, d1, d2 } = self.warping_jet(t)?;
        let log1 = d1 / f;
        Ok(LogDerivatives {
            f,
            f1: d1,
            f2: d2,
            log1,
            log2: d2 / f - log1 * log1,
        })
    }

    pub fn sectional(&self, t: f64) -> Result<AmbientSectional, AmbientError> {
        let Jet2 { value: f, d1, d2 } = self.warping_jet(t)?;
        Ok(AmbientSectional {
            base_fiber: -d2 / f,
            fiber_fiber: (self.c_fiber - d1 * d1) / (f * f),
        })
    }

    /// `(f'^2 - f f'') - c`: nonnegative exactly where the fiber curvature
    /// bound `c ≤ f'^2 - f f''` holds at `t`.
    pub fn curvature_condition_margin(&self, t: f64) -> Result<f64, AmbientError> {
        let Jet2 { value: f, d1, d2 } = self.warping_jet(t)?;
        Ok(d1 * d1 - f * d2 - self.c_fiber)
    }
}

/// Free-function forms matching the operation names.
pub fn log_derivatives(a: &Ambient, t: f64) -> Result<LogDerivatives, AmbientError> {
    a.log_derivatives(t)
}

pub fn ambient_sectional(a: &Ambient, t: f64) -> Result<AmbientSectional, AmbientError> {
    a.sectional(t)
}

pub fn curvature_condition_margin(a: &Ambient, t: f64) -> Result<f64, AmbientError> {
    a.curvature_condition_margin(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ambient(f: &str, lo: f64, hi: f64, c: f64) -> Ambient {
        Ambient::new(Expression::parse(f, "t").unwrap(), lo, hi, c, 3).unwrap()
    }

    #[test]
    fn product_metric_is_flat() {
        let a = ambient("1", -10.0, 10.0, 0.0);
        for t in [-3.0, 0.0, 2.5] {
            let d = a.log_derivatives(t).unwrap();
            assert_eq!((d.f, d.f1, d.f2, d.log1, d.log2), (1.0, 0.0, 0.0, 0.0, 0.0));
            let k = a.sectional(t).unwrap();
            assert_eq!((k.base_fiber, k.fiber_fiber), (0.0, 0.0));
            assert_eq!(a.curvature_condition_margin(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn cone_model() {
        let a = ambient("t", 0.0, f64::INFINITY, 1.0);
        let d = a.log_derivatives(2.0).unwrap();
        assert_eq!(
            (d.f, d.f1, d.f2, d.log1, d.log2),
            (2.0, 1.0, 0.0, 0.5, -0.25)
        );
        for t in [0.3, 1.0, 7.0] {
            let k = a.sectional(t).unwrap();
            assert_eq!(k.base_fiber, 0.0);
            assert!(k.fiber_fiber.abs() < 1e-15);
            assert_eq!(a.curvature_condition_margin(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn hyperbolic_model() {
        let a = ambient("exp(t)", f64::NEG_INFINITY, f64::INFINITY, 0.0);
        let d = a.log_derivatives(0.3).unwrap();
        assert!((d.log1 - 1.0).abs() < 1e-15);
        assert!(d.log2.abs() < 1e-15);
        for t in [-2.0, -0.5, 0.0, 0.7, 1.9] {
            let k = a.sectional(t).unwrap();
            assert!((k.base_fiber + 1.0).abs() < 1e-14);
            assert!((k.fiber_fiber + 1.0).abs() < 1e-14);
            assert!(a.curvature_condition_margin(t).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn endpoints_are_excluded() {
        let a = ambient("t", 0.0, 5.0, 1.0);
        assert!(matches!(
            a.log_derivatives(0.0),
            Err(AmbientError::OutsideInterval { .. })
        ));
        assert!(matches!(
            a.sectional(5.0),
            Err(AmbientError::OutsideInterval { .. })
        ));
        let b = ambient("t - 1", 0.0, 5.0, 0.0);
        assert!(matches!(
            b.warping_jet(0.5),
            Err(AmbientError::NonPositiveWarping { .. })
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = Expression::parse("1", "t").unwrap();
        assert!(Ambient::new(f.clone(), 0.0, 1.0, 0.5, 3).is_err());
        assert!(Ambient::new(f.clone(), 0.0, 1.0, 0.0, 1).is_err());
        assert!(Ambient::new(f, 1.0, 1.0, 0.0, 3).is_err());
    }
}

//! Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) and a
//! fixed-step RK4 stepper for short local re-integrations.

use thiserror::Error;

/// Right-hand side `y' = F(s, y)` of a small first-order system.
pub trait OdeSystem {
    type Error;

    fn dim(&self) -> usize;

    fn rhs(&self, s: f64, y: &[f64], dy: &mut [f64]) -> Result<(), Self::Error>;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError<E> {
    #[error("right-hand side failed at s = {s}: {source}")]
    Rhs { s: f64, source: E },
    #[error("step size underflow at s = {s} (tolerance {tolerance:e} not reachable)")]
    StepUnderflow { s: f64, tolerance: f64 },
    #[error("exceeded {max_steps} steps before reaching s = {target}")]
    TooManySteps { target: f64, max_steps: usize },
}

// Dormand-Prince tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: usize = 200_000;

/// Integrate from `(s0, y0)` and record the state at every point of
/// `nodes` (which must be increasing and start at `s0`). The local error per
/// step is held below `tolerance * (1 + |y|)` componentwise.
pub fn integrate_to_nodes<S: OdeSystem>(
    system: &S,
    y0: &[f64],
    nodes: &[f64],
    tolerance: f64,
) -> Result<Vec<Vec<f64>>, IntegrationError<S::Error>> {
    let dim = system.dim();
    debug_assert_eq!(y0.len(), dim);
    let mut out = Vec::with_capacity(nodes.len());
    let Some((&s_start, rest)) = nodes.split_first() else {
        return Ok(out);
    };
    let mut s = s_start;
    let mut y = y0.to_vec();
    out.push(y.clone());

    let span = nodes.last().copied().unwrap_or(s_start) - s_start;
    let mut h = (span / 100.0).max(1e-6);
    let mut steps = 0usize;
    let mut k = vec![vec![0.0; dim]; 7];
    let mut stage = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];

    for &target in rest {
        while s < target {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(IntegrationError::TooManySteps {
                    target,
                    max_steps: MAX_STEPS,
                });
            }
            let last = s + h >= target;
            let step = if last { target - s } else { h };

            for i in 0..7 {
                for d in 0..dim {
                    let mut acc = y[d];
                    for (j, a) in A[i].iter().enumerate().take(i) {
                        acc += step * a * k[j][d];
                    }
                    stage[d] = acc;
                }
                let si = s + C[i] * step;
                system
                    .rhs(si, &stage, &mut k[i])
                    .map_err(|source| IntegrationError::Rhs { s: si, source })?;
            }

            let mut err = 0.0f64;
            for d in 0..dim {
                let mut hi = y[d];
                let mut lo = y[d];
                for i in 0..7 {
                    hi += step * B5[i] * k[i][d];
                    lo += step * B4[i] * k[i][d];
                }
                y5[d] = hi;
                let scale = tolerance * (1.0 + y[d].abs().max(hi.abs()));
                err = err.max((hi - lo).abs() / scale);
            }

            if err <= 1.0 {
                s = if last { target } else { s + step };
                y.copy_from_slice(&y5);
                let grow = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                // a step clipped to land on a node says nothing about h
                if !last {
                    h = step * grow;
                }
            } else {
                h = step * (0.9 * err.powf(-0.25)).clamp(0.1, 0.5);
                if h < 1e-14 * (1.0 + s.abs()) {
                    return Err(IntegrationError::StepUnderflow { s, tolerance });
                }
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

/// Classic RK4 from `(s0, y0)` to `s1` in `substeps` equal steps. For a
/// fixed substep count the result is a smooth function of `s1`, which keeps
/// finite differences of re-integrated quantities well behaved.
pub fn rk4_fixed<S: OdeSystem>(
    system: &S,
    s0: f64,
    y0: &[f64],
    s1: f64,
    substeps: usize,
) -> Result<Vec<f64>, S::Error> {
    let dim = system.dim();
    let h = (s1 - s0) / substeps as f64;
    let mut y = y0.to_vec();
    if h == 0.0 {
        return Ok(y);
    }
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];
    for i in 0..substeps {
        let s = s0 + i as f64 * h;
        system.rhs(s, &y, &mut k1)?;
        for d in 0..dim {
            tmp[d] = y[d] + 0.5 * h * k1[d];
        }
        system.rhs(s + 0.5 * h, &tmp, &mut k2)?;
        for d in 0..dim {
            tmp[d] = y[d] + 0.5 * h * k2[d];
        }
        system.rhs(s + 0.5 * h, &tmp, &mut k3)?;
        for d in 0..dim {
            tmp[d] = y[d] + h * k3[d];
        }
        system.rhs(s + h, &tmp, &mut k4)?;
        for d in 0..dim {
            y[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    struct Oscillator;

    impl OdeSystem for Oscillator {
        type Error = Infallible;
        fn dim(&self) -> usize {
            2
        }
        fn rhs(&self, _s: f64, y: &[f64], dy: &mut [f64]) -> Result<(), Infallible> {
            dy[0] = y[1];
            dy[1] = -y[0];
            Ok(())
        }
    }

    #[test]
    fn harmonic_oscillator_to_tolerance() {
        let nodes: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        let states = integrate_to_nodes(&Oscillator, &[0.0, 1.0], &nodes, 1e-12).unwrap();
        for (s, y) in nodes.iter().zip(&states) {
            assert!((y[0] - s.sin()).abs() < 1e-10, "s={s}");
            assert!((y[1] - s.cos()).abs() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn rk4_local_step_is_accurate() {
        let y = rk4_fixed(&Oscillator, 1.0, &[1f64.sin(), 1f64.cos()], 1.02, 8).unwrap();
        assert!((y[0] - 1.02f64.sin()).abs() < 1e-14);
    }

    struct Failing;

    impl OdeSystem for Failing {
        type Error = &'static str;
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, s: f64, _y: &[f64], dy: &mut [f64]) -> Result<(), &'static str> {
            if s > 0.5 {
                return Err("boom");
            }
            dy[0] = 1.0;
            Ok(())
        }
    }

    #[test]
    fn rhs_failure_reports_position() {
        let err = integrate_to_nodes(&Failing, &[0.0], &[0.0, 1.0], 1e-10).unwrap_err();
        assert!(matches!(err, IntegrationError::Rhs { s, source: "boom" } if s > 0.5));
    }
}

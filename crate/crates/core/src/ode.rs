//! Embedded Dormand-Prince 5(4) integrator with PI step control and forced
//! output points (steps are clamped to land exactly on requested abscissae).

use crate::error::{Error, Result};

pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rtol: 1e-11, atol: 1e-13, h_init: None, max_steps: 2_000_000 }
    }
}

/// One accepted sample of the solution.
#[derive(Clone, Debug)]
pub struct Sample<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order embedded weights
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

/// Integrate y' = f(t, y) from (t0, y0) to t_end. Every t in `outputs`
/// (strictly increasing, within (t0, t_end]) is hit exactly and recorded, as
/// is t_end. `guard` may reject a state (e.g. q^2 = 1) with a message.
pub fn dopri5<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    outputs: &[f64],
    opts: &OdeOptions,
    guard: Option<&dyn Fn(f64, &[f64; N]) -> Option<String>>,
) -> Result<Vec<Sample<N>>> {
    assert!(t_end > t0);
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = opts.h_init.unwrap_or_else(|| (t0.abs().max(1e-10) * 0.1).min(t_end - t0));
    let mut samples = Vec::new();
    let mut out_idx = outputs.iter().position(|&o| o > t0).unwrap_or(outputs.len());
    let mut err_old: f64 = 1e-4;
    let mut steps = 0usize;

    while t < t_end {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::OdeStep { tau: t, message: "max step count exceeded".into() });
        }
        let mut target = t_end;
        if out_idx < outputs.len() {
            target = outputs[out_idx].min(t_end);
        }
        let mut clamped = false;
        if t + h >= target {
            h = target - t;
            clamped = true;
        }
        if h <= t.abs() * 1e-15 + 1e-300 {
            return Err(Error::OdeStep { tau: t, message: "step size underflow".into() });
        }

        let y2 = add(&y, &[(h * A21, &k1)]);
        let k2 = f(t + C2 * h, &y2);
        let y3 = add(&y, &[(h * A31, &k1), (h * A32, &k2)]);
        let k3 = f(t + C3 * h, &y3);
        let y4 = add(&y, &[(h * A41, &k1), (h * A42, &k2), (h * A43, &k3)]);
        let k4 = f(t + C4 * h, &y4);
        let y5 = add(&y, &[(h * A51, &k1), (h * A52, &k2), (h * A53, &k3), (h * A54, &k4)]);
        let k5 = f(t + C5 * h, &y5);
        let y6 = add(&y, &[(h * A61, &k1), (h * A62, &k2), (h * A63, &k3), (h * A64, &k4), (h * A65, &k5)]);
        let k6 = f(t + h, &y6);
        let ynew = add(&y, &[(h * B1, &k1), (h * B3, &k3), (h * B4, &k4), (h * B5, &k5), (h * B6, &k6)]);
        let k7 = f(t + h, &ynew);
        let yerr_ref = add(&y, &[(h * E1, &k1), (h * E3, &k3), (h * E4, &k4), (h * E5, &k5), (h * E6, &k6), (h * E7, &k7)]);

        let mut err = 0.0f64;
        let mut bad = false;
        for i in 0..N {
            if !ynew[i].is_finite() {
                bad = true;
                break;
            }
            let sc = opts.atol + opts.rtol * ynew[i].abs().max(y[i].abs());
            let e = (ynew[i] - yerr_ref[i]) / sc;
            err += e * e;
        }
        let err = if bad { f64::INFINITY } else { (err / N as f64).sqrt() };

        if err <= 1.0 {
            t += h;
            y = ynew;
            k1 = k7;
            if let Some(g) = guard {
                if let Some(msg) = g(t, &y) {
                    return Err(Error::OdeStep { tau: t, message: msg });
                }
            }
            if out_idx < outputs.len() && clamped && (t - outputs[out_idx]).abs() < 1e-14 * t.abs().max(1.0) {
                samples.push(Sample { t, y });
                out_idx += 1;
            }
            // PI controller
            let fac = if err == 0.0 {
                5.0
            } else {
                0.9 * err.powf(-0.7 / 5.0) * err_old.powf(0.4 / 5.0)
            };
            err_old = err.max(1e-4);
            h *= fac.clamp(0.2, 5.0);
        } else if err.is_finite() {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        } else {
            h *= 0.1;
        }
    }
    samples.push(Sample { t, y });
    Ok(samples)
}

fn add<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += c * k[i];
        }
    }
    out
}

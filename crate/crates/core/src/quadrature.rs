//! Gauss-Legendre rules, interval mappings, and the Nystrom log-determinant.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Quadrature nodes and weights on an interval (a, b).
#[derive(Clone, Debug)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Interval transforms for `map_rule`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Affine,
    /// x = b u^2 with u affine-mapped to (0,1); concentrates nodes at the left
    /// endpoint, which must be 0. Resolves the x^alpha hard-edge behavior.
    Sqrt,
}

/// Gauss-Legendre nodes and weights on (-1, 1) in double-double.
///
/// Newton iteration on the Legendre recurrence from Chebyshev-type initial
/// guesses; nodes are roots of P_m.
pub(crate) fn gauss_legendre_dd(m: usize) -> Result<Vec<(Dd, Dd)>> {
    if m < 1 || m > 2000 {
        return Err(Error::InvalidParameter(format!(
            "gauss_legendre supports 1 <= m <= 2000, got {m}"
        )));
    }
    let mut out = Vec::with_capacity(m);
    let mf = m as f64;
    for i in 0..m {
        // initial guess, then f64 Newton, then two dd Newton steps
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        for _ in 0..20 {
            let (p, dp) = legendre_pair_f64(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let mut xd = Dd::from(x);
        for _ in 0..2 {
            let (p, dp) = legendre_pair_dd(m, xd);
            xd = xd.sub(p.div(dp));
        }
        let (_, dp) = legendre_pair_dd(m, xd);
        // w = 2 / ((1-x^2) P'^2)
        let one_minus = Dd::ONE.sub(xd.mul(xd));
        let w = Dd::from(2.0).div(one_minus.mul(dp).mul(dp));
        out.push((xd, w));
    }
    out.reverse(); // ascending nodes
    Ok(out)
}

fn legendre_pair_f64(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn legendre_pair_dd(n: usize, x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = x.mul(p1).mul_f64(2.0 * kf - 1.0).sub(p0.mul_f64(kf - 1.0)).div_f64(kf);
        p0 = p1;
        p1 = p2;
    }
    let dp = x.mul(p1).sub(p0).mul_f64(n as f64).div(x.mul(x).sub(Dd::ONE));
    (p1, dp)
}

/// Gauss-Legendre rule of m points on (-1, 1).
pub fn gauss_legendre(m: usize) -> Result<QuadRule> {
    let dd = gauss_legendre_dd(m)?;
    Ok(QuadRule {
        nodes: dd.iter().map(|(x, _)| x.hi).collect(),
        weights: dd.iter().map(|(_, w)| w.hi).collect(),
        a: -1.0,
        b: 1.0,
    })
}

/// Map a rule on (-1,1) to (a,b) by the chosen transform.
pub fn map_rule(rule: &QuadRule, a: f64, b: f64, kind: MapKind) -> Result<QuadRule> {
    if !(a < b) {
        return Err(Error::InvalidParameter(format!("map_rule needs a < b, got ({a}, {b})")));
    }
    if rule.a != -1.0 || rule.b != 1.0 {
        return Err(Error::InvalidParameter("map_rule expects a base rule on (-1,1)".into()));
    }
    match kind {
        MapKind::Affine => {
            let half = 0.5 * (b - a);
            Ok(QuadRule {
                nodes: rule.nodes.iter().map(|t| a + half * (t + 1.0)).collect(),
                weights: rule.weights.iter().map(|w| w * half).collect(),
                a,
                b,
            })
        }
        MapKind::Sqrt => {
            if a != 0.0 {
                return Err(Error::InvalidParameter(
                    "sqrt transform requires the interval to start at 0".into(),
                ));
            }
            // x = b u^2, u in (0,1): dx = 2 b u du, du = dt/2
            let mut nodes = Vec::with_capacity(rule.len());
            let mut weights = Vec::with_capacity(rule.len());
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                let u = 0.5 * (t + 1.0);
                nodes.push(b * u * u);
                weights.push(w * b * u);
            }
            Ok(QuadRule { nodes, weights, a, b })
        }
    }
}

/// Weighted sum of f over the rule.
pub fn integrate(f: impl Fn(f64) -> f64, rule: &QuadRule) -> f64 {
    rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| w * f(x)).sum()
}

/// ln det(I - W^{1/2} K W^{1/2}) for a symmetric kernel on the rule's nodes,
/// by pivoted LU in log space. The sign must come out positive for a valid
/// gap probability.
pub fn nystrom_logdet(kernel: impl Fn(f64, f64) -> Result<f64>, rule: &QuadRule) -> Result<f64> {
    let m = rule.len();
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut a = vec![0.0f64; m * m];
    for i in 0..m {
        for j in 0..m {
            let k = kernel(rule.nodes[i], rule.nodes[j])?;
            if !k.is_finite() {
                return Err(Error::Domain(format!(
                    "kernel not finite at ({}, {})",
                    rule.nodes[i], rule.nodes[j]
                )));
            }
            a[i * m + j] = if i == j { 1.0 - sw[i] * k * sw[j] } else { -sw[i] * k * sw[j] };
        }
    }
    lu_logdet_f64(&mut a, m)
}

fn lu_logdet_f64(a: &mut [f64], m: usize) -> Result<f64> {
    let mut logdet = 0.0f64;
    let mut sign = 1i32;
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..m {
        let mut piv = col;
        let mut best = a[col * m + col].abs();
        for r in col + 1..m {
            let v = a[r * m + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best <= scale * 1e-14 {
            return Err(Error::SingularMatrix(format!(
                "numerically singular: pivot {best:.3e} against scale {scale:.3e}"
            )));
        }
        if piv != col {
            for c in 0..m {
                a.swap(col * m + c, piv * m + c);
            }
            sign = -sign;
        }
        let d = a[col * m + col];
        if d < 0.0 {
            sign = -sign;
        }
        logdet += d.abs().ln();
        for r in col + 1..m {
            let f = a[r * m + col] / d;
            if f != 0.0 {
                for c in col + 1..m {
                    a[r * m + c] -= f * a[col * m + c];
                }
            }
        }
    }
    if sign < 0 {
        return Err(Error::NegativeDeterminant(
            "det(I - K) < 0; rule too coarse for this interval".into(),
        ));
    }
    Ok(logdet)
}

/// Pivoted LU log-determinant in double-double (used by the Bessel gap path).
pub(crate) fn lu_logdet_dd(a: &mut [Dd], m: usize) -> Result<f64> {
    let mut logdet = Dd::ZERO;
    let mut sign = 1i32;
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.hi.abs()));
    for col in 0..m {
        let mut piv = col;
        let mut best = a[col * m + col].hi.abs();
        for r in col + 1..m {
            let v = a[r * m + col].hi.abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best <= scale * 1e-28 {
            return Err(Error::SingularMatrix(format!(
                "numerically singular: pivot {best:.3e} against scale {scale:.3e}"
            )));
        }
        if piv != col {
            for c in 0..m {
                a.swap(col * m + c, piv * m + c);
            }
            sign = -sign;
        }
        let d = a[col * m + col];
        if d.hi < 0.0 {
            sign = -sign;
        }
        logdet = logdet.add(d.abs().ln());
        for r in col + 1..m {
            let f = a[r * m + col].div(d);
            if f.hi != 0.0 {
                for c in col + 1..m {
                    a[r * m + c] = a[r * m + c].sub(f.mul(a[col * m + c]));
                }
            }
        }
    }
    if sign < 0 {
        return Err(Error::NegativeDeterminant(
            "det(I - K) < 0; rule too coarse for this interval".into(),
        ));
    }
    Ok(logdet.hi)
}

//! Log-gamma, Barnes G, and the exact combinatorial helpers.

use crate::dd;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// ln Gamma(x) for x > 0. Stirling series after pushing the argument up by
/// the recurrence; relative accuracy ~1e-15 (inherited from the dd kernel).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Pole(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(dd::dd_ln_gamma(x).hi)
}

/// Digamma at a positive integer: psi(n) = -gamma + sum_{j<n} 1/j.
pub(crate) fn digamma_int(n: u32) -> f64 {
    const EULER_GAMMA: f64 = 0.5772156649015329;
    let mut s = -EULER_GAMMA;
    for j in 1..n {
        s += 1.0 / j as f64;
    }
    s
}

/// ln G(x) for x > 0, G the Barnes double-gamma function.
///
/// Reduces to x in [1,2) by ln G(x+1) = ln Gamma(x) + ln G(x), then sums
/// ln G(1+z) = z/2 ln 2pi - z(z+1)/2 - gamma z^2/2
///           + sum_{n>=1} [z^2/(2n) - z + n ln(1+z/n)]
/// with the tail accelerated through Hurwitz-zeta partial sums.
pub fn log_barnes_g(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_barnes_g requires x > 0, got {x}")));
    }
    let mut shift = 0.0;
    let mut xx = x;
    while xx >= 2.0 {
        xx -= 1.0;
        shift += log_gamma(xx)?;
    }
    while xx < 1.0 {
        shift -= log_gamma(xx)?;
        xx += 1.0;
    }
    let z = xx - 1.0; // in [0, 1)
    const EULER_GAMMA: f64 = 0.5772156649015329;
    const LN_2PI: f64 = 1.8378770664093453;
    let mut s = 0.5 * z * LN_2PI - 0.5 * z * (z + 1.0) - 0.5 * EULER_GAMMA * z * z;
    const N: usize = 40;
    for n in 1..=N {
        let nf = n as f64;
        s += z * z / (2.0 * nf) - z + nf * (z / nf).ln_1p();
    }
    // Tail: sum_{n>N} [z^2/(2n) - z + n ln(1+z/n)]
    //     = sum_{j>=2} (-1)^(j+1) z^(j+1)/(j+1) * zeta(j, N+1).
    let a = (N + 1) as f64;
    let mut zp = z * z; // z^(j+1) at j = 2 needs z^3
    for j in 2..40 {
        zp *= z;
        let term = if j % 2 == 0 { 1.0 } else { -1.0 } * zp / (j as f64 + 1.0) * hurwitz_zeta_int(j as u32, a);
        s += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    Ok(s + shift)
}

/// zeta(j, a) = sum_{n>=0} (a+n)^-j for integer j >= 2, via Euler-Maclaurin.
fn hurwitz_zeta_int(j: u32, a: f64) -> f64 {
    let jf = j as f64;
    let mut s = a.powf(1.0 - jf) / (jf - 1.0) + 0.5 * a.powf(-jf);
    // Bernoulli correction terms B2/2! j a^-j-1 ... with B2=1/6, B4=-1/30, B6=1/42
    let mut fact = jf * a.powf(-jf - 1.0);
    s += fact / 12.0;
    fact *= (jf + 1.0) * (jf + 2.0) / (a * a);
    s -= fact / 720.0;
    fact *= (jf + 3.0) * (jf + 4.0) / (a * a);
    s += fact / 30240.0;
    s
}

/// Exact binomial coefficient binom(1/2, m).
pub fn binom_half(m: u32) -> Rational {
    // binom(1/2, m) = binom(1/2, m-1) * (1/2 - m + 1)/m
    let mut b = Rational::ONE;
    for j in 1..=m as i128 {
        b = b * Rational::new(3 - 2 * j, 2 * j).expect("nonzero");
    }
    b
}

/// Double factorial n!! for odd n >= -1, with (-1)!! = 1.
pub fn double_factorial(n: i64) -> Result<i128> {
    if n < -1 {
        return Err(Error::Domain(format!("double_factorial requires n >= -1, got {n}")));
    }
    if n % 2 == 0 {
        return Err(Error::Domain(format!("double_factorial requires odd n, got {n}")));
    }
    let mut acc: i128 = 1;
    let mut k = n;
    while k > 1 {
        acc = acc
            .checked_mul(k as i128)
            .ok_or_else(|| Error::Overflow(format!("double_factorial({n})")))?;
        k -= 2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_basics() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        // Gamma(1/2) = sqrt(pi)
        let want = 0.5 * std::f64::consts::PI.ln();
        assert!((log_gamma(0.5).unwrap() - want).abs() < 1e-14);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn log_gamma_recurrence() {
        for i in 1..40 {
            let x = 0.26 * i as f64;
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() < 1e-13 * lhs.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn barnes_g_small_integers() {
        // G(1) = 1 (empty product), G(4) = 1!*2! = 2, G(5) = 1!*2!*3! = 12
        assert!(log_barnes_g(1.0).unwrap().abs() < 1e-12);
        assert!((log_barnes_g(4.0).unwrap() - 2f64.ln()).abs() < 1e-11);
        assert!((log_barnes_g(5.0).unwrap() - 12f64.ln()).abs() < 1e-11);
        // G(2) = G(3) = 1
        assert!(log_barnes_g(2.0).unwrap().abs() < 1e-12);
        assert!(log_barnes_g(3.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn barnes_g_recurrence() {
        let mut x = 0.5;
        while x <= 10.0 {
            let lhs = log_barnes_g(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + log_barnes_g(x).unwrap();
            assert!((lhs - rhs).abs() < 1e-10, "x={x}: {lhs} vs {rhs}");
            x += 0.37;
        }
    }

    #[test]
    fn binom_half_values() {
        assert_eq!(binom_half(0), Rational::ONE);
        assert_eq!(binom_half(1), Rational::new(1, 2).unwrap());
        assert_eq!(binom_half(2), Rational::new(-1, 8).unwrap());
        assert_eq!(binom_half(3), Rational::new(1, 16).unwrap());
    }

    #[test]
    fn binom_half_pascal_recurrence() {
        // binom(1/2,m) = binom(1/2,m-1) * (1/2-m+1)/m exactly
        for m in 1..25u32 {
            let lhs = binom_half(m);
            let rhs = binom_half(m - 1) * Rational::new(3 - 2 * m as i128, 2 * m as i128).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), 1);
        assert_eq!(double_factorial(1).unwrap(), 1);
        assert_eq!(double_factorial(5).unwrap(), 15);
        assert_eq!(double_factorial(15).unwrap(), 2027025);
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }
}

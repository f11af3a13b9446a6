//! Real- and complex-argument special functions underlying the kernel,
//! Painleve, and parametrix modules.

mod bessel_ik;
mod bessel_j;
mod gamma;

pub use bessel_ik::{bessel_i, bessel_i_prime, bessel_k, bessel_k_prime};
pub use bessel_j::{bessel_j, bessel_j_pair, bessel_j_prime};
pub(crate) use bessel_j::bessel_j_pair_dd;
pub use gamma::{binom_half, double_factorial, log_barnes_g, log_gamma};
pub(crate) use gamma::digamma_int;

use crate::error::{Error, Result};

/// Ensemble order parameter alpha, validated to alpha > -1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Order(f64);

impl Order {
    pub fn new(alpha: f64) -> Result<Order> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::InvalidParameter(format!(
                "ensemble order must satisfy alpha > -1, got {alpha}"
            )));
        }
        Ok(Order(alpha))
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(Order::new(-1.0).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert_eq!(Order::new(0.5).unwrap().get(), 0.5);
    }
}

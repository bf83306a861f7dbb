//! Special functions and quadrature shared by both evolution engines.

pub mod bessel;
pub mod interp;
pub mod laguerre;
pub mod quadrature;

pub use bessel::{bessel_j0, bessel_j1};
pub use interp::Tabulated;
pub use laguerre::confluent_f;
pub use quadrature::{gauss_legendre, integrate_oscillatory, QuadratureRule};

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn j0_derivative_is_minus_j1(x in 0.01f64..50.0) {
            let h = 1e-5;
            let d = (bessel_j0(x + h).unwrap() - bessel_j0(x - h).unwrap()) / (2.0 * h);
            prop_assert!((d + bessel_j1(x).unwrap()).abs() < 1e-6);
        }

        #[test]
        fn laguerre_three_term_recurrence(n in 1i64..200, z in 0.0f64..400.0) {
            let l_prev = confluent_f(n - 1, 1, z).unwrap();
            let l = confluent_f(n, 1, z).unwrap();
            let l_next = confluent_f(n + 1, 1, z).unwrap();
            let lhs = (n as f64 + 1.0) * l_next;
            let rhs = (2.0 * n as f64 + 1.0 - z) * l - n as f64 * l_prev;
            let scale = lhs.abs().max(rhs.abs()).max((2.0 * n as f64 + 1.0 + z) * l.abs()).max(1e-300);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }
    }
}

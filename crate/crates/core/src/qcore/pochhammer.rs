//! q-shifted factorials `(a; q)_n`.

use num_complex::Complex64;

/// Number of factors in a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl From<usize> for Order {
    fn from(n: usize) -> Self {
        Order::Finite(n)
    }
}

/// Infinite products stop once `|a| q^k` falls below this.
pub const PRODUCT_CUTOFF: f64 = 1e-17;

/// `(a; q)_n = (1 - a)(1 - aq)...(1 - aq^{n-1})`, or the convergent infinite
/// product for [`Order::Infinite`].
pub fn q_pochhammer(a: Complex64, q: f64, n: impl Into<Order>) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut term = a;
    match n.into() {
        Order::Finite(n) => {
            for _ in 0..n {
                prod *= 1.0 - term;
                term *= q;
            }
        }
        Order::Infinite => {
            while term.norm() >= PRODUCT_CUTOFF {
                prod *= 1.0 - term;
                term *= q;
            }
        }
    }
    prod
}

/// Real-argument version of [`q_pochhammer`].
pub fn qpoch(a: f64, q: f64, n: impl Into<Order>) -> f64 {
    let mut prod = 1.0;
    let mut term = a;
    match n.into() {
        Order::Finite(n) => {
            for _ in 0..n {
                prod *= 1.0 - term;
                term *= q;
            }
        }
        Order::Infinite => {
            while term.abs() >= PRODUCT_CUTOFF {
                prod *= 1.0 - term;
                term *= q;
            }
        }
    }
    prod
}

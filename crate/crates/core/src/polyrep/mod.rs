//! Polynomial arithmetic in `t` and in the conjugate pair `z`, `z̄`.

mod bi;
pub mod json;
mod uni;

pub use bi::{BiPoly, Monomial, MAX_TOTAL_DEGREE};
pub use json::AnyBiPoly;
pub use uni::UniPoly;

/// Owned-operand forwarding for the reference operator impls.
macro_rules! forward_owned_ops {
    ($ty:ident) => {
        impl<F: $crate::scalar::Coeff> std::ops::Add for $ty<F> {
            type Output = $ty<F>;
            fn add(self, rhs: Self) -> $ty<F> {
                &self + &rhs
            }
        }
        impl<F: $crate::scalar::Coeff> std::ops::Sub for $ty<F> {
            type Output = $ty<F>;
            fn sub(self, rhs: Self) -> $ty<F> {
                &self - &rhs
            }
        }
        impl<F: $crate::scalar::Coeff> std::ops::Mul for $ty<F> {
            type Output = $ty<F>;
            fn mul(self, rhs: Self) -> $ty<F> {
                &self * &rhs
            }
        }
        impl<F: $crate::scalar::Coeff> std::ops::Neg for $ty<F> {
            type Output = $ty<F>;
            fn neg(self) -> $ty<F> {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

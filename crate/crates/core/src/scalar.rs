//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point type the spectral routines are generic over (`f32` or `f64`).
pub trait Scalar: Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static {
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count or index into `Self`.
    #[inline]
    fn count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

/// Square root with the cut on the negative real axis and a nonnegative real part.
///
/// Points on the cut are taken as the limit from above, so `-0.0` imaginary
/// parts behave like `+0.0` and `sqrt(-4) = 2i`.
pub fn principal_sqrt<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let zero = T::zero();
    if z.im == zero {
        return if z.re >= zero { Complex::new(z.re.sqrt(), zero) } else { Complex::new(zero, (-z.re).sqrt()) };
    }
    let half = T::lit(0.5);
    let modulus = z.re.hypot(z.im);
    let t = ((modulus + z.re.abs()) * half).sqrt();
    if z.re >= zero {
        Complex::new(t, z.im / (t + t))
    } else {
        Complex::new(z.im.abs() / (t + t), t.copysign(z.im))
    }
}

/// `true` when both components are finite.
#[inline]
pub fn is_finite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Builds a complex number from two `f64` parts.
#[inline]
pub fn c64<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Distance `|a - b|`.
#[inline]
pub fn dist<T: Scalar>(a: Complex<T>, b: Complex<T>) -> T {
    (a - b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_sqrt_on_cut_takes_upper_limit() {
        let r = principal_sqrt(Complex::new(-4.0_f64, 0.0));
        assert_eq!(r, Complex::new(0.0, 2.0));
        let r = principal_sqrt(Complex::new(-4.0_f64, -0.0));
        assert_eq!(r, Complex::new(0.0, 2.0));
    }

    #[test]
    fn principal_sqrt_has_nonnegative_real_part() {
        for &(re, im) in &[(1.0, 2.0), (-3.0, 0.5), (-3.0, -0.5), (0.0, -1.0), (2.0, -7.0)] {
            let z = Complex::new(re, im);
            let r = principal_sqrt(z);
            assert!(r.re >= 0.0);
            assert!((r * r - z).norm() < 1e-14 * (1.0 + z.norm()));
        }
        // just below the cut
        let r = principal_sqrt(Complex::new(-4.0_f64, -1e-300));
        assert!((r - Complex::new(0.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn works_for_f32() {
        let r = principal_sqrt(Complex::new(-9.0_f32, 0.0));
        assert_eq!(r, Complex::new(0.0, 3.0));
    }
}

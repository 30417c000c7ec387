use num_complex::Complex;

use super::CoefficientTable;
use crate::scalar::Scalar;
use crate::spectral::AnsatzParameters;

/// `ψ_n(x, y) = P_n(x, y)·exp(−αx²/2 − βy²/2 + γxy)`.
pub fn evaluate_wavefunction<T: Scalar>(
    table: &CoefficientTable<T>,
    params: &AnsatzParameters<T>,
    x: T,
    y: T,
) -> Complex<T> {
    let half = T::lit(0.5);
    let exponent = -params.alpha * (x * x * half) - params.beta * (y * y * half) + params.gamma * (x * y);
    table.polynomial(x.into(), y.into()) * exponent.exp()
}

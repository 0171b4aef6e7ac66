//! Point evaluation of `H_{g,r}` and its completion.

use num_complex::Complex64;
use umbral_core::characters::{support_sign, GroupClass};
use umbral_core::maass::{completion_eval, h_value, UpperHalfPoint};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOutput {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Parses the inputs and evaluates; bad input is a [`UsageError`], a
/// numeric failure is returned as the inner error.
pub fn evaluate(
    class: &str,
    r: i64,
    tau: &str,
    completion: bool,
    tol: f64,
) -> Result<Result<EvalOutput, umbral_core::Error>, UsageError> {
    let class: GroupClass = class.parse().map_err(|e: umbral_core::Error| UsageError(e.to_string()))?;
    let tau: UpperHalfPoint = tau.parse().map_err(|e: umbral_core::Error| UsageError(e.to_string()))?;
    if support_sign(r).is_none() {
        return Err(UsageError(format!("r = {r} is not in the support (±1,7,11,13,17,19,23,29 mod 60)")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(UsageError(format!("tolerance must be positive, got {tol}")));
    }
    Ok(if completion {
        completion_eval(class, r, tau, tol).map(|c| EvalOutput { value: c.value, error_estimate: c.error_estimate })
    } else {
        h_value(class, r, tau, tol).map(|v| EvalOutput { value: v.value, error_estimate: v.tail_estimate })
    })
}

pub fn format_output(out: &EvalOutput) -> String {
    format!(
        "value = {:.15e} {:+.15e}i\nerror_estimate = {:.3e}\n",
        out.value.re, out.value.im, out.error_estimate
    )
}

use super::coeff::powered;
use super::{BoundSpec, PairValues};
use crate::error::{Error, Result};

/// Σ_j c_j v_j^e for the values in their current order.
pub fn evaluate_bound(pv: &PairValues, spec: &BoundSpec) -> Result<f64> {
    spec.validate()?;
    let n = pv.len();
    let mut total = 0.0;
    for (j, &v) in pv.values().iter().enumerate() {
        let term = powered(v, spec.exponent);
        if term == 0.0 {
            continue;
        }
        total += spec.scheme.coefficient(j, n, spec.exponent, spec.gamma)? * term;
    }
    Ok(total)
}

/// Monogamy lower bound; rejects upper-bound schemes.
pub fn lower_bound(pv: &PairValues, spec: &BoundSpec) -> Result<f64> {
    if !spec.scheme.is_lower() {
        return Err(Error::InvalidArgument(format!(
            "{} is an upper-bound scheme",
            spec.scheme.name()
        )));
    }
    evaluate_bound(pv, spec)
}

/// Polygamy upper bound; rejects lower-bound schemes.
pub fn upper_bound(pv: &PairValues, spec: &BoundSpec) -> Result<f64> {
    if spec.scheme.is_lower() {
        return Err(Error::InvalidArgument(format!(
            "{} is a lower-bound scheme",
            spec.scheme.name()
        )));
    }
    evaluate_bound(pv, spec)
}

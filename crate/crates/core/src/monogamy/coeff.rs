use crate::error::{Error, Result};

/// Number of ones in the binary expansion of `j`.
pub fn hamming_weight(j: u64) -> u32 {
    j.count_ones()
}

/// (j₀, …, j_{n−1}) with j = Σ jᵢ 2ⁱ.
pub fn binary_vector(j: u64, n: u32) -> Result<Vec<bool>> {
    if n < 64 && j >= (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "{j} does not fit in {n} bits"
        )));
    }
    Ok((0..n).map(|i| (j >> i) & 1 == 1).collect())
}

/// 2^{exponent/γ} − 1, the base of every Hamming/geometric coefficient.
pub fn coeff_base(exponent: f64, gamma: f64) -> f64 {
    (exponent / gamma).exp2() - 1.0
}

/// v^e with 0^0 = 0, so that v^β stays continuous from the right at β = 0
/// on each branch v > 0 and v = 0.
pub fn powered(v: f64, exponent: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else if exponent == 0.0 {
        1.0
    } else {
        v.powf(exponent)
    }
}

use super::matrix::{ComplexMatrix, DimList, DEFAULT_DIM_CAP, ZERO};
use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b`, refusing composite dimensions above [`DEFAULT_DIM_CAP`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_capped(a, b, DEFAULT_DIM_CAP)
}

pub fn kron_capped(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da
        .checked_mul(db)
        .filter(|&d| d <= cap)
        .ok_or(Error::DimensionCap {
            dim: da.saturating_mul(db),
            cap,
        })?;
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

fn validate(rho: &ComplexMatrix, dims: &DimList, subsystems: &[usize]) -> Result<()> {
    if dims.total() != rho.dim() {
        return Err(Error::DimMismatch(format!(
            "dims {:?} index {} entries but matrix is {}x{}",
            dims.as_slice(),
            dims.total(),
            rho.dim(),
            rho.dim()
        )));
    }
    for &k in subsystems {
        if k >= dims.len() {
            return Err(Error::SubsystemOutOfRange {
                index: k,
                count: dims.len(),
            });
        }
    }
    Ok(())
}

/// Normalizes an index set to sorted, deduplicated order.
pub(crate) fn normalize_set(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Reduces `rho` onto the `keep` subsystems (kept in ascending order).
pub fn partial_trace(rho: &ComplexMatrix, dims: &DimList, keep: &[usize]) -> Result<ComplexMatrix> {
    validate(rho, dims, keep)?;
    let keep = normalize_set(keep);
    if keep.is_empty() {
        return Err(Error::InvalidArgument(
            "partial trace needs at least one kept subsystem".into(),
        ));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let keep_dims = dims.select(&keep);
    let traced_dims = dims.select(&traced);
    let n_keep = keep_dims.total();
    let n_traced = if traced.is_empty() {
        1
    } else {
        traced_dims.total()
    };

    // full index for every (kept, traced) pair
    let mut full = vec![0usize; n_keep * n_traced];
    let mut digits = vec![0usize; dims.len()];
    for i in 0..n_keep {
        let kd = keep_dims.digits(i);
        for (pos, &k) in keep.iter().enumerate() {
            digits[k] = kd[pos];
        }
        for t in 0..n_traced {
            if !traced.is_empty() {
                let td = traced_dims.digits(t);
                for (pos, &k) in traced.iter().enumerate() {
                    digits[k] = td[pos];
                }
            }
            full[i * n_traced + t] = dims.compose(&digits);
        }
    }

    let mut out = ComplexMatrix::zeros(n_keep);
    for i in 0..n_keep {
        for j in 0..n_keep {
            let mut acc = ZERO;
            for t in 0..n_traced {
                acc += rho[(full[i * n_traced + t], full[j * n_traced + t])];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Transposes the indices belonging to the `part` subsystems.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: &DimList,
    part: &[usize],
) -> Result<ComplexMatrix> {
    validate(rho, dims, part)?;
    let part = normalize_set(part);
    let n = rho.dim();
    let all_digits: Vec<Vec<usize>> = (0..n).map(|i| dims.digits(i)).collect();
    let mut out = ComplexMatrix::zeros(n);
    let mut rd = vec![0usize; dims.len()];
    let mut cd = vec![0usize; dims.len()];
    for r in 0..n {
        for c in 0..n {
            rd.copy_from_slice(&all_digits[r]);
            cd.copy_from_slice(&all_digits[c]);
            for &k in &part {
                std::mem::swap(&mut rd[k], &mut cd[k]);
            }
            out[(dims.compose(&rd), dims.compose(&cd))] = rho[(r, c)];
        }
    }
    Ok(out)
}

use crate::error::{Error, Result};

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Intermediate values live in `i128` and every step is
/// checked, so overflow is reported instead of wrapping.
pub(crate) fn det_exact(matrix: &[Vec<i64>]) -> Result<i64> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("determinant of a non-square matrix".to_string()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut previous_pivot = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(swap) => {
                    a.swap(k, swap);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(a[k][k]).ok_or(Error::CoefficientOverflow)?;
                let rhs = a[i][k].checked_mul(a[k][j]).ok_or(Error::CoefficientOverflow)?;
                let numerator = lhs.checked_sub(rhs).ok_or(Error::CoefficientOverflow)?;
                // Bareiss guarantees this division is exact.
                a[i][j] = numerator / previous_pivot;
            }
            a[i][k] = 0;
        }
        previous_pivot = a[k][k];
    }
    let det = sign * a[n - 1][n - 1];
    i64::try_from(det).map_err(|_| Error::CoefficientOverflow)
}

/// Rank over GF(2) of a list of columns, each packed into the low bits of a
/// `u64`.
pub(crate) fn gf2_rank(columns: &[u64]) -> usize {
    let mut pivots: Vec<u64> = Vec::new();
    for &column in columns {
        let mut v = column;
        for &p in &pivots {
            let pivot_bit = 1u64 << (63 - p.leading_zeros());
            if v & pivot_bit != 0 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push(v);
        }
    }
    pivots.len()
}

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ToolError;

fn check_rect(m: &[Vec<i64>], name: &str) -> Result<(usize, usize), ToolError> {
    let rows = m.len();
    if rows == 0 {
        return Err(ToolError::invalid(name, "matrix is empty"));
    }
    let cols = m[0].len();
    if cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(ToolError::invalid(
            name,
            "rows must be non-empty and of equal length",
        ));
    }
    Ok((rows, cols))
}

fn check_square(m: &[Vec<i64>], name: &str) -> Result<usize, ToolError> {
    let (r, c) = check_rect(m, name)?;
    if r != c {
        return Err(ToolError::invalid(
            name,
            format!("matrix must be square, got {r}x{c}"),
        ));
    }
    Ok(r)
}

/// Fraction-free Gaussian elimination (Bareiss); every division is exact.
pub fn determinant(m: &[Vec<i64>]) -> Result<BigInt, ToolError> {
    let n = check_square(m, "matrix")?;
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

pub fn trace(m: &[Vec<i64>]) -> Result<BigInt, ToolError> {
    let n = check_square(m, "matrix")?;
    Ok((0..n).map(|i| BigInt::from(m[i][i])).sum())
}

pub fn multiply(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, ToolError> {
    let (ar, ac) = check_rect(a, "A")?;
    let (br, bc) = check_rect(b, "B")?;
    if ac != br {
        return Err(ToolError::invalid(
            "B",
            format!("inner dimensions differ: {ar}x{ac} times {br}x{bc}"),
        ));
    }
    let mut out = vec![vec![0i64; bc]; ar];
    for i in 0..ar {
        for j in 0..bc {
            let mut acc: i128 = 0;
            for k in 0..ac {
                acc += a[i][k] as i128 * b[k][j] as i128;
            }
            out[i][j] =
                i64::try_from(acc).map_err(|_| ToolError::domain("product entry overflows"))?;
        }
    }
    Ok(out)
}

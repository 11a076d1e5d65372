use num_bigint::BigUint;
use num_traits::One;

use crate::error::ToolError;

/// Inputs above this are rejected to keep results printable.
pub const MAX_N: u64 = 5000;

fn check(n: i64, k: Option<i64>) -> Result<(u64, u64), ToolError> {
    if n < 0 {
        return Err(ToolError::invalid("n", "must be non-negative"));
    }
    if n as u64 > MAX_N {
        return Err(ToolError::invalid("n", format!("must be at most {MAX_N}")));
    }
    let k = match k {
        Some(k) if k < 0 => return Err(ToolError::invalid("k", "must be non-negative")),
        Some(k) if k > n => return Err(ToolError::invalid("k", "must not exceed n")),
        Some(k) => k as u64,
        None => 0,
    };
    Ok((n as u64, k))
}

pub fn factorial(n: i64) -> Result<BigUint, ToolError> {
    let (n, _) = check(n, None)?;
    Ok((1..=n).fold(BigUint::one(), |acc, i| acc * i))
}

/// n! / (n-k)!
pub fn permutation(n: i64, k: i64) -> Result<BigUint, ToolError> {
    let (n, k) = check(n, Some(k))?;
    Ok((n - k + 1..=n).fold(BigUint::one(), |acc, i| acc * i))
}

/// Binomial coefficient via the multiplicative formula; every intermediate
/// quotient is exact.
pub fn combination(n: i64, k: i64) -> Result<BigUint, ToolError> {
    let (n, k) = check(n, Some(k))?;
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_values() {
        assert_eq!(combination(5, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(permutation(15, 4).unwrap(), BigUint::from(32760u32));
        assert_eq!(combination(50, 25).unwrap().to_string(), "126410606437752");
        assert_eq!(factorial(0).unwrap(), BigUint::one());
        assert_eq!(factorial(6).unwrap(), BigUint::from(720u32));
        assert_eq!(
            factorial(25).unwrap().to_string(),
            "15511210043330985984000000"
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(combination(3, 4).is_err());
        assert!(permutation(-1, 0).is_err());
        assert!(combination(5, -1).is_err());
    }

    /// Pascal's rule as an independent oracle.
    fn pascal(n: usize) -> Vec<Vec<u128>> {
        let mut rows = vec![vec![1u128]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u128; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn combination_matches_pascal_triangle() {
        let rows = pascal(120);
        for n in 0..=120 {
            for k in 0..=n {
                assert_eq!(
                    combination(n as i64, k as i64).unwrap(),
                    BigUint::from(rows[n][k])
                );
            }
        }
    }

    proptest! {
        #[test]
        fn permutation_is_combination_times_k_factorial(n in 0i64..200, k in 0i64..200) {
            prop_assume!(k <= n);
            prop_assert_eq!(permutation(n, k).unwrap(), combination(n, k).unwrap() * factorial(k).unwrap());
        }
    }
}

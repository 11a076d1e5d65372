use crate::error::ToolError;

/// Trial division keeps factorization fast up to this bound.
pub const MAX_INPUT: i64 = 1_000_000_000_000;
pub const MAX_NTH: i64 = 1_000_000;

fn check(n: i64, name: &str) -> Result<u64, ToolError> {
    if n < 1 {
        return Err(ToolError::invalid(name, "must be a positive integer"));
    }
    if n > MAX_INPUT {
        return Err(ToolError::invalid(
            name,
            format!("must be at most {MAX_INPUT}"),
        ));
    }
    Ok(n as u64)
}

pub fn is_prime(n: i64) -> Result<bool, ToolError> {
    let n = check(n, "n")?;
    Ok(is_prime_u64(n))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn nth_prime(n: i64) -> Result<u64, ToolError> {
    if !(1..=MAX_NTH).contains(&n) {
        return Err(ToolError::invalid(
            "n",
            format!("must be within 1..={MAX_NTH}"),
        ));
    }
    let mut count = 0;
    let mut candidate = 1u64;
    while count < n {
        candidate += 1;
        if is_prime_u64(candidate) {
            count += 1;
        }
    }
    Ok(candidate)
}

/// Prime factors ascending with multiplicity; empty for 1.
pub fn factors(n: i64) -> Result<Vec<u64>, ToolError> {
    let mut n = check(n, "n")?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// "2 × 2 × 3"; a prime renders as itself and 1 as "1".
pub fn factorize(n: i64) -> Result<String, ToolError> {
    let f = factors(n)?;
    if f.is_empty() {
        return Ok("1".into());
    }
    Ok(f.iter().map(u64::to_string).collect::<Vec<_>>().join(" × "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_values() {
        assert!(is_prime(17).unwrap());
        assert!(is_prime(104729).unwrap());
        assert!(!is_prime(1).unwrap());
        assert_eq!(nth_prime(50).unwrap(), 229);
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(factorize(8191).unwrap(), "8191");
        assert_eq!(factorize(12).unwrap(), "2 × 2 × 3");
        assert_eq!(factorize(1).unwrap(), "1");
        assert!(factorize(0).is_err());
        assert!(is_prime(-5).is_err());
    }

    /// Sieve of Eratosthenes as the independent oracle.
    #[test]
    fn agrees_with_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate().skip(1) {
            assert_eq!(is_prime(i as i64).unwrap(), p, "{i}");
        }
        let primes: Vec<usize> = (0..=limit).filter(|&i| sieve[i]).collect();
        for (k, &p) in primes.iter().enumerate().take(500) {
            assert_eq!(nth_prime(k as i64 + 1).unwrap(), p as u64);
        }
    }

    proptest! {
        #[test]
        fn factors_multiply_back_and_are_prime(n in 1i64..10_000_000) {
            let f = factors(n).unwrap();
            prop_assert_eq!(f.iter().product::<u64>(), n as u64);
            prop_assert!(f.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(f.iter().all(|&p| is_prime_u64(p)));
        }
    }
}

//! Descriptive statistics over exact rationals.
//!
//! Square roots are never approximated: a value such as a standard deviation
//! is rounded directly from its exact square via an integer square root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::calc::{decimal_string, format_scaled, round_half_even};
use crate::error::ToolError;

/// Default number of decimals when the caller does not ask for rounding.
pub const DEFAULT_DIGITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stat {
    Mean,
    Median,
    Std,
    Variance,
    Min,
    Max,
    Sum,
    Percentile,
    Correlation,
}

impl Stat {
    pub fn parse(s: &str) -> Result<Stat, ToolError> {
        let norm = s.trim().to_ascii_lowercase().replace([' ', '-'], "_");
        Ok(match norm.as_str() {
            "mean" | "average" | "avg" => Stat::Mean,
            "median" => Stat::Median,
            "std" | "stdev" | "std_dev" | "standard_deviation" | "stddev" => Stat::Std,
            "var" | "variance" => Stat::Variance,
            "min" | "minimum" => Stat::Min,
            "max" | "maximum" => Stat::Max,
            "sum" | "total" => Stat::Sum,
            "percentile" | "quantile" => Stat::Percentile,
            "correlation" | "pearson" | "pearson_correlation" | "corr" => Stat::Correlation,
            other => {
                return Err(ToolError::invalid(
                    "stat_type",
                    format!("unknown statistic '{other}'"),
                ))
            }
        })
    }
}

/// A statistic that is either an exact rational or the square root of one,
/// with the sign carried separately (correlation can be negative).
#[derive(Debug, Clone, PartialEq)]
pub enum Exact {
    Rational(BigRational),
    SignedSqrt { negative: bool, square: BigRational },
}

impl Exact {
    /// Half-even rounding to `digits` places, as a scaled integer.
    pub fn round(&self, digits: u32) -> BigInt {
        match self {
            Exact::Rational(r) => round_half_even(r, digits),
            Exact::SignedSqrt { negative, square } => {
                let m = sqrt_round_half_even(square, digits);
                if *negative {
                    -m
                } else {
                    m
                }
            }
        }
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        format_scaled(&self.round(digits), digits)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Exact::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Exact::SignedSqrt { negative, square } => {
                let v = square.to_f64().unwrap_or(f64::NAN).sqrt();
                if *negative {
                    -v
                } else {
                    v
                }
            }
        }
    }
}

/// round_half_even(sqrt(square) * 10^digits) computed with integers only.
pub fn sqrt_round_half_even(square: &BigRational, digits: u32) -> BigInt {
    assert!(!square.is_negative(), "square root of a negative value");
    let scale = BigInt::from(10u32).pow(2 * digits);
    // s = square * 10^(2 digits); we need round(sqrt(s)).
    let s = square * BigRational::from_integer(scale);
    let four_s = &s * BigRational::from_integer(BigInt::from(4));
    // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0.
    let m = four_s.floor().to_integer().sqrt();
    let half_floor = &m / 2;
    let is_tie = BigRational::from_integer(&m * &m) == four_s && (&m % 2u32) == BigInt::one();
    if (&m % 2u32).is_zero() {
        half_floor
    } else if is_tie {
        // sqrt(s) is exactly half_floor + 0.5.
        if (&half_floor % 2u32).is_zero() {
            half_floor
        } else {
            half_floor + 1
        }
    } else {
        half_floor + 1
    }
}

/// Parses a JSON number exactly into a rational (decimal strings included).
pub fn rational_from_json(v: &Value) -> Result<BigRational, ToolError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(ToolError::invalid("data", format!("not a number: {other}"))),
    };
    parse_decimal(&text).ok_or_else(|| ToolError::invalid("data", format!("not a number: {text}")))
}

pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let mut r = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    let ten = BigRational::from_integer(BigInt::from(10));
    if exp > 0 {
        for _ in 0..exp {
            r *= &ten;
        }
    } else {
        for _ in 0..(-exp) {
            r /= &ten;
        }
    }
    Some(if neg { -r } else { r })
}

fn mean(xs: &[BigRational]) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(xs.len()));
    xs.iter().fold(BigRational::zero(), |a, b| a + b) / n
}

fn sorted(xs: &[BigRational]) -> Vec<BigRational> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

/// Population variance (divide by N).
fn variance(xs: &[BigRational]) -> BigRational {
    let m = mean(xs);
    let n = BigRational::from_integer(BigInt::from(xs.len()));
    xs.iter()
        .map(|x| {
            let d = x - &m;
            &d * &d
        })
        .fold(BigRational::zero(), |a, b| a + b)
        / n
}

/// Linear-interpolation percentile (the numpy default).
pub fn percentile(xs: &[BigRational], p: &BigRational) -> Result<BigRational, ToolError> {
    let hundred = BigRational::from_integer(BigInt::from(100));
    if p.is_negative() || *p > hundred {
        return Err(ToolError::invalid("percentile", "must be within [0, 100]"));
    }
    let s = sorted(xs);
    let rank = p / hundred * BigRational::from_integer(BigInt::from(s.len() - 1));
    let lo = rank.floor();
    let frac = &rank - &lo;
    let i: usize = lo.to_integer().try_into().unwrap_or(0);
    if i + 1 >= s.len() {
        return Ok(s[s.len() - 1].clone());
    }
    Ok(&s[i] + frac * (&s[i + 1] - &s[i]))
}

pub fn compute(
    stat: Stat,
    data: &[BigRational],
    data2: Option<&[BigRational]>,
    pct: Option<&BigRational>,
) -> Result<Exact, ToolError> {
    if data.is_empty() {
        return Err(ToolError::invalid("data", "empty data"));
    }
    Ok(match stat {
        Stat::Mean => Exact::Rational(mean(data)),
        Stat::Median => {
            let s = sorted(data);
            let n = s.len();
            Exact::Rational(if n % 2 == 1 {
                s[n / 2].clone()
            } else {
                (&s[n / 2 - 1] + &s[n / 2]) / BigRational::from_integer(BigInt::from(2))
            })
        }
        Stat::Std => Exact::SignedSqrt {
            negative: false,
            square: variance(data),
        },
        Stat::Variance => Exact::Rational(variance(data)),
        Stat::Min => Exact::Rational(data.iter().min().cloned().unwrap()),
        Stat::Max => Exact::Rational(data.iter().max().cloned().unwrap()),
        Stat::Sum => Exact::Rational(data.iter().fold(BigRational::zero(), |a, b| a + b)),
        Stat::Percentile => {
            let p = pct.ok_or(ToolError::MissingArgument("percentile".into()))?;
            Exact::Rational(percentile(data, p)?)
        }
        Stat::Correlation => {
            let ys = data2.ok_or(ToolError::MissingArgument("data2".into()))?;
            if ys.len() != data.len() {
                return Err(ToolError::invalid(
                    "data2",
                    format!("length mismatch ({} vs {})", data.len(), ys.len()),
                ));
            }
            if data.len() < 2 {
                return Err(ToolError::invalid(
                    "data",
                    "correlation needs at least 2 points",
                ));
            }
            let (mx, my) = (mean(data), mean(ys));
            let mut sxy = BigRational::zero();
            let mut sxx = BigRational::zero();
            let mut syy = BigRational::zero();
            for (x, y) in data.iter().zip(ys) {
                let dx = x - &mx;
                let dy = y - &my;
                sxy += &dx * &dy;
                sxx += &dx * &dx;
                syy += &dy * &dy;
            }
            if sxx.is_zero() || syy.is_zero() {
                return Err(ToolError::domain("correlation undefined for constant data"));
            }
            Exact::SignedSqrt {
                negative: sxy.is_negative(),
                square: &sxy * &sxy / (sxx * syy),
            }
        }
    })
}

/// Rendering for payloads: `round_to` digits if requested, otherwise up to
/// six decimals with trailing zeros trimmed.
pub fn render(value: &Exact, round_to: Option<u32>) -> (String, u32) {
    match round_to {
        Some(d) => (value.to_decimal(d), d),
        None => {
            let s = match value {
                Exact::Rational(r) => decimal_string(r, DEFAULT_DIGITS, true),
                other => {
                    let s = other.to_decimal(DEFAULT_DIGITS);
                    s.trim_end_matches('0').trim_end_matches('.').to_string()
                }
            };
            let prec = s.split_once('.').map(|(_, f)| f.len() as u32).unwrap_or(0);
            (s, prec)
        }
    }
}

/// count, mean, std, min, quartiles, max, each at six decimals.
pub fn describe(data: &[BigRational]) -> Result<Vec<(&'static str, String)>, ToolError> {
    if data.is_empty() {
        return Err(ToolError::invalid("data", "empty data"));
    }
    let q = |p: i64| percentile(data, &BigRational::from_integer(BigInt::from(p)));
    let fmt = |e: Exact| render(&e, None).0;
    Ok(vec![
        ("count", data.len().to_string()),
        ("mean", fmt(Exact::Rational(mean(data)))),
        ("std", fmt(compute(Stat::Std, data, None, None)?)),
        ("min", fmt(Exact::Rational(q(0)?))),
        ("25%", fmt(Exact::Rational(q(25)?))),
        ("50%", fmt(Exact::Rational(q(50)?))),
        ("75%", fmt(Exact::Rational(q(75)?))),
        ("max", fmt(Exact::Rational(q(100)?))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn median_and_mean() {
        let d = ints(&[3, 7, 1, 9, 5]);
        assert_eq!(
            compute(Stat::Median, &d, None, None).unwrap().to_decimal(0),
            "5"
        );
        let d = ints(&[5, 7, 13]);
        assert_eq!(
            compute(Stat::Mean, &d, None, None).unwrap().to_decimal(2),
            "8.33"
        );
        let d = ints(&[1, 2, 3, 4]);
        assert_eq!(
            compute(Stat::Median, &d, None, None).unwrap().to_decimal(1),
            "2.5"
        );
    }

    #[test]
    fn population_std() {
        // Population std of this list is 6.19758...; sample std would be 6.53282...
        let d = ints(&[12, 15, 18, 22, 25, 30, 14, 19, 27, 11]);
        let v = compute(Stat::Std, &d, None, None).unwrap();
        assert_eq!(v.to_decimal(2), "6.20");
        assert_eq!(v.to_decimal(4), "6.1976");
        assert!((v.to_f64() - 6.197580173).abs() < 1e-8);
    }

    #[test]
    fn correlation_self_and_negated() {
        let x = ints(&[1, 4, 2, 8, 5, 7]);
        let neg: Vec<_> = x.iter().map(|v| -v.clone()).collect();
        assert_eq!(
            compute(Stat::Correlation, &x, Some(&x), None)
                .unwrap()
                .to_decimal(4),
            "1.0000"
        );
        assert_eq!(
            compute(Stat::Correlation, &x, Some(&neg), None)
                .unwrap()
                .to_decimal(4),
            "-1.0000"
        );
    }

    #[test]
    fn percentile_interpolates_linearly() {
        let d = ints(&[1, 2, 3, 4]);
        let p = |v: i64| {
            compute(
                Stat::Percentile,
                &d,
                None,
                Some(&BigRational::from_integer(v.into())),
            )
            .unwrap()
            .to_decimal(2)
        };
        assert_eq!(p(50), "2.50");
        assert_eq!(p(25), "1.75");
        assert_eq!(p(90), "3.70");
        assert_eq!(p(100), "4.00");
    }

    #[test]
    fn errors() {
        assert!(compute(Stat::Mean, &[], None, None).is_err());
        let d = ints(&[1, 2, 3]);
        assert!(compute(Stat::Correlation, &d, Some(&ints(&[1, 2])), None).is_err());
        assert!(compute(Stat::Correlation, &d, Some(&ints(&[4, 4, 4])), None).is_err());
        assert!(Stat::parse("kurtosis").is_err());
    }

    #[test]
    fn exact_sqrt_rounding_ties() {
        // sqrt(6.25) = 2.5 exactly: ties go to even.
        let sq = BigRational::new(25.into(), 4.into());
        assert_eq!(sqrt_round_half_even(&sq, 0), BigInt::from(2));
        let sq = BigRational::new(49.into(), 4.into());
        assert_eq!(sqrt_round_half_even(&sq, 0), BigInt::from(4));
        assert_eq!(
            sqrt_round_half_even(&BigRational::from_integer(2.into()), 4),
            BigInt::from(14142)
        );
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(
            parse_decimal("12.50"),
            Some(BigRational::new(25.into(), 2.into()))
        );
        assert_eq!(
            parse_decimal("-3"),
            Some(BigRational::from_integer((-3).into()))
        );
        assert_eq!(
            parse_decimal("1e2"),
            Some(BigRational::from_integer(100.into()))
        );
        assert_eq!(parse_decimal("abc"), None);
    }

    proptest! {
        #[test]
        fn sqrt_rounding_matches_float(n in 0u64..10_000_000, d in 0u32..4) {
            let sq = BigRational::from_integer(n.into());
            let got = sqrt_round_half_even(&sq, d);
            let approx = (n as f64).sqrt() * 10f64.powi(d as i32);
            // Away from ties the float estimate is reliable.
            if (approx.fract() - 0.5).abs() > 1e-6 {
                prop_assert_eq!(got, BigInt::from(approx.round() as i64));
            }
        }
    }
}

//! Exact-arithmetic expression evaluator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::ToolError;

/// Per-trajectory calculator memory backing `get_last_result`.
#[derive(Debug, Clone, Default)]
pub struct CalculatorSession {
    last: Option<BigRational>,
}

impl CalculatorSession {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn evaluate(&mut self, expr: &str) -> Result<BigRational, ToolError> {
        let v = evaluate(expr)?;
        self.last = Some(v.clone());
        Ok(v)
    }

    pub fn last_result(&self) -> Option<&BigRational> {
        self.last.as_ref()
    }

    pub fn clear(&mut self) {
        self.last = None;
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Op(char),
    Pow,
    LParen,
    RParen,
}

fn lex(expr: &str) -> Result<Vec<Tok>, ToolError> {
    let chars: Vec<char> = expr.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_digit() || chars[i] == '_' || chars[i] == ',')
                {
                    i += 1;
                }
                let digits: String = chars[start..i]
                    .iter()
                    .filter(|c| c.is_ascii_digit())
                    .collect();
                if i < chars.len() && chars[i] == '.' {
                    // Decimal literal: read the fraction and keep it exact.
                    i += 1;
                    let fs = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let frac: String = chars[fs..i].iter().collect();
                    let num: BigInt = format!("{digits}{frac}").parse().unwrap_or_default();
                    let den = BigInt::from(10u32).pow(frac.len() as u32);
                    out.push(Tok::Num(num));
                    out.push(Tok::Op('/'));
                    out.push(Tok::Num(den));
                    // Bind tightly: wrap as a parenthesised pair.
                    let n = out.len();
                    out.insert(n - 3, Tok::LParen);
                    out.push(Tok::RParen);
                } else {
                    out.push(Tok::Num(digits.parse().map_err(|_| {
                        ToolError::Parse(format!("bad number at offset {start}"))
                    })?));
                }
            }
            '*' if chars.get(i + 1) == Some(&'*') => {
                out.push(Tok::Pow);
                i += 2;
            }
            '^' => {
                out.push(Tok::Pow);
                i += 1;
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                out.push(Tok::Op('\\'));
                i += 2;
            }
            '+' | '-' | '*' | '/' | '%' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '×' | 'x' | 'X' | '·' => {
                out.push(Tok::Op('*'));
                i += 1;
            }
            'm' | 'M'
                if chars[i..]
                    .iter()
                    .take(3)
                    .collect::<String>()
                    .eq_ignore_ascii_case("mod") =>
            {
                out.push(Tok::Op('%'));
                i += 3;
            }
            '÷' => {
                out.push(Tok::Op('/'));
                i += 1;
            }
            '−' | '–' => {
                out.push(Tok::Op('-'));
                i += 1;
            }
            '(' | '[' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' | ']' => {
                out.push(Tok::RParen);
                i += 1;
            }
            other => {
                return Err(ToolError::Parse(format!(
                    "unexpected character '{other}' at offset {i}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn infix_power(t: &Tok) -> Option<(u8, u8)> {
        match t {
            Tok::Op('+') | Tok::Op('-') => Some((1, 2)),
            Tok::Op('*') | Tok::Op('/') | Tok::Op('%') | Tok::Op('\\') => Some((3, 4)),
            // Right associative and binds tighter than unary minus.
            Tok::Pow => Some((8, 7)),
            _ => None,
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<BigRational, ToolError> {
        let mut lhs = match self.next() {
            Some(Tok::Num(n)) => BigRational::from_integer(n),
            Some(Tok::LParen) => {
                let v = self.expr(0)?;
                match self.next() {
                    Some(Tok::RParen) => v,
                    _ => return Err(ToolError::Parse("unbalanced parentheses".into())),
                }
            }
            Some(Tok::Op('-')) => -self.expr(5)?,
            Some(Tok::Op('+')) => self.expr(5)?,
            Some(t) => return Err(ToolError::Parse(format!("unexpected token {t:?}"))),
            None => return Err(ToolError::Parse("unexpected end of expression".into())),
        };
        while let Some(op) = self.peek().cloned() {
            if op == Tok::RParen {
                break;
            }
            let Some((l_bp, r_bp)) = Self::infix_power(&op) else {
                return Err(ToolError::Parse(format!("expected operator, found {op:?}")));
            };
            if l_bp < min_bp {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(r_bp)?;
            lhs = apply(&op, lhs, rhs)?;
        }
        Ok(lhs)
    }
}

fn apply(op: &Tok, a: BigRational, b: BigRational) -> Result<BigRational, ToolError> {
    Ok(match op {
        Tok::Op('+') => a + b,
        Tok::Op('-') => a - b,
        Tok::Op('*') => a * b,
        Tok::Op('/') => {
            if b.is_zero() {
                return Err(ToolError::DivisionByZero);
            }
            a / b
        }
        Tok::Op('%') | Tok::Op('\\') => {
            if b.is_zero() {
                return Err(ToolError::DivisionByZero);
            }
            // Python floor semantics, defined for rationals too.
            let q = (&a / &b).floor();
            if *op == Tok::Op('\\') {
                q
            } else {
                a - b * q
            }
        }
        Tok::Pow => {
            if !b.is_integer() {
                return Err(ToolError::Unsupported("non-integer exponent".into()));
            }
            let e = b
                .to_integer()
                .to_i64()
                .filter(|e| e.abs() <= 4096)
                .ok_or_else(|| ToolError::domain("exponent too large"))?;
            if e < 0 {
                if a.is_zero() {
                    return Err(ToolError::DivisionByZero);
                }
                a.recip().pow(-e as i32)
            } else {
                a.pow(e as i32)
            }
        }
        _ => unreachable!("non-operator token"),
    })
}

/// Evaluates an arithmetic expression exactly.
pub fn evaluate(expr: &str) -> Result<BigRational, ToolError> {
    let toks = lex(expr)?;
    if toks.is_empty() {
        return Err(ToolError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr(0)?;
    if p.pos != p.toks.len() {
        return Err(ToolError::Parse("unbalanced parentheses".into()));
    }
    Ok(v)
}

/// Integer results print as integers; others as a reduced fraction and a
/// 12-digit decimal approximation.
pub fn render_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!(
            "{}/{} (≈ {})",
            v.numer(),
            v.denom(),
            decimal_string(v, 12, false)
        )
    }
}

/// Rounds `v` half-even to `digits` decimal places.
pub fn round_half_even(v: &BigRational, digits: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = v * BigRational::from_integer(scale);
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let f = floor.to_integer();
    if frac > half || (frac == half && f.is_odd()) {
        f + 1
    } else {
        f
    }
}

/// Formats a scaled integer `n / 10^digits` with exactly `digits` places.
pub fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let body = if digits == 0 {
        s
    } else {
        let d = digits as usize;
        let padded = if s.len() <= d {
            format!("{}{}", "0".repeat(d + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = padded.split_at(padded.len() - d);
        format!("{int}.{frac}")
    };
    if neg && n.sign() != num_bigint::Sign::NoSign {
        format!("-{body}")
    } else {
        body
    }
}

/// Half-even rounded decimal; with `trim`, trailing fractional zeros go.
pub fn decimal_string(v: &BigRational, digits: u32, trim: bool) -> String {
    let s = format_scaled(&round_half_even(v, digits), digits);
    if trim && s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_int(s: &str) -> BigInt {
        let v = evaluate(s).unwrap();
        assert!(v.is_integer(), "{s} is not integral");
        v.to_integer()
    }

    #[test]
    fn evaluates_reference_expressions() {
        assert_eq!(eval_int("20 + 20"), BigInt::from(40));
        assert_eq!(eval_int("(810*87)-85+178"), BigInt::from(70563));
        assert_eq!(
            eval_int("(39006255142 * 342002902703) - 702386298").to_string(),
            "13340252482137117062528"
        );
        assert_eq!(eval_int("(810 × 87) − 85 + 178"), BigInt::from(70563));
        assert_eq!(eval_int("817370905463 mod 2343374"), BigInt::from(2054263));
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(eval_int("2 + 3 * 4"), BigInt::from(14));
        assert_eq!(eval_int("-2 ** 2"), BigInt::from(-4));
        assert_eq!(eval_int("2 ** 3 ** 2"), BigInt::from(512));
        assert_eq!(eval_int("-7 % 3"), BigInt::from(2));
        assert_eq!(eval_int("7 // -2"), BigInt::from(-4));
        assert_eq!(eval_int("100 - 10 - 5"), BigInt::from(85));
    }

    #[test]
    fn division_is_exact() {
        let v = evaluate("7 / 2").unwrap();
        assert_eq!(render_rational(&v), "7/2 (≈ 3.500000000000)");
        assert_eq!(eval_int("1.5 * 4"), BigInt::from(6));
    }

    #[test]
    fn errors() {
        assert_eq!(evaluate("1/0"), Err(ToolError::DivisionByZero));
        assert!(matches!(evaluate("(1+2"), Err(ToolError::Parse(_))));
        assert!(matches!(evaluate("1+"), Err(ToolError::Parse(_))));
        assert!(matches!(evaluate("abc"), Err(ToolError::Parse(_))));
        assert!(matches!(evaluate("1 2"), Err(ToolError::Parse(_))));
    }

    #[test]
    fn session_tracks_last_result() {
        let mut s = CalculatorSession::new();
        s.evaluate("6*7").unwrap();
        assert_eq!(s.last_result().unwrap().to_integer(), BigInt::from(42));
        s.clear();
        assert!(s.last_result().is_none());
    }

    #[test]
    fn rounding_half_even() {
        let r = |n: i64, d: i64, k| {
            format_scaled(
                &round_half_even(&BigRational::new(n.into(), d.into()), k),
                k,
            )
        };
        assert_eq!(r(5, 2, 0), "2");
        assert_eq!(r(7, 2, 0), "4");
        assert_eq!(r(-5, 2, 0), "-2");
        assert_eq!(r(1, 8, 2), "0.12");
        assert_eq!(r(3, 8, 2), "0.38");
        assert_eq!(r(-1, 100, 1), "0.0");
        assert_eq!(r(1, 3, 4), "0.3333");
    }
}

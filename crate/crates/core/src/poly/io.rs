//! Plain-text polynomial files.
//!
//! ```text
//! # comment
//! dim 3
//! 1/2 2 0 0
//! -1/2 0 2 0
//! 1/2 0 0 0
//! ```
//!
//! One term per line as `<num>[/<den>] e1 ... en`. Repeated exponent vectors
//! are summed on load. The writer emits graded-lex order, lowest degree first.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiIndex, PolyError, Polynomial, Rational};

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, with optional sign. Denominator zero is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("invalid integer '{num}'"))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("invalid integer '{den}'"))?;
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(n, d))
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    let mut dim: Option<usize> = None;
    let mut poly: Option<Polynomial> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        // (column, token), columns 1-based
        let tokens: Vec<(usize, &str)> = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| PolyError::Parse {
            line: line_no,
            column,
            message,
        };

        match dim {
            None => {
                if tokens[0].1 != "dim" || tokens.len() != 2 {
                    return Err(err(tokens[0].0, "expected header 'dim <n>'".into()));
                }
                let n: usize = tokens[1]
                    .1
                    .parse()
                    .map_err(|_| err(tokens[1].0, format!("invalid dimension '{}'", tokens[1].1)))?;
                if n == 0 {
                    return Err(err(tokens[1].0, "dimension must be positive".into()));
                }
                dim = Some(n);
                poly = Some(Polynomial::zero(n));
            }
            Some(n) => {
                if tokens.len() != n + 1 {
                    return Err(err(
                        tokens[0].0,
                        format!(
                            "expected coefficient and {n} exponents, found {} fields",
                            tokens.len()
                        ),
                    ));
                }
                let c = parse_rational(tokens[0].1).map_err(|m| err(tokens[0].0, m))?;
                let mut exps = Vec::with_capacity(n);
                for &(col, tok) in &tokens[1..] {
                    let e: u32 = tok
                        .parse()
                        .map_err(|_| err(col, format!("invalid exponent '{tok}'")))?;
                    exps.push(e);
                }
                if let Some(p) = poly.as_mut() {
                    p.add_term(MultiIndex::new(&exps), c);
                }
            }
        }
    }

    poly.ok_or(PolyError::Parse {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'dim <n>' header".into(),
    })
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn write_polynomial(p: &Polynomial) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", p.dim());
    for (e, c) in p.terms() {
        let _ = write!(out, "{}", format_rational(c));
        for k in e.exponents() {
            let _ = write!(out, " {k}");
        }
        out.push('\n');
    }
    out
}

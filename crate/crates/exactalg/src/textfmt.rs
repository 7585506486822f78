//! Bit-exact polynomial serialization.
//!
//! Text format: one term per line, `<num>/<den> <e_u> <e_w> <e_D>`, terms
//! in lexicographic exponent order, LF line endings. JSON form:
//! `{"vars":["u","w","D"],"terms":[[num,den,e_u,e_w,e_D],...]}` with
//! arbitrary-precision integers.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{ExactError, Result};
use crate::mpoly::MPoly;
use crate::rational::Rational;

pub fn to_text(p: &MPoly) -> String {
    let mut out = String::new();
    for (e, c) in p.terms() {
        writeln!(out, "{}/{} {} {} {}", c.numer(), c.denom(), e[0], e[1], e[2]).unwrap();
    }
    out
}

pub fn from_text(s: &str) -> Result<MPoly> {
    let mut p = MPoly::zero();
    for (idx, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let err = |msg: &str| ExactError::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let mut parts = line.split_whitespace();
        let coeff = parts.next().ok_or_else(|| err("missing coefficient"))?;
        let c = crate::rational::parse_rational(coeff).map_err(|_| err("bad coefficient"))?;
        let mut exps = [0u32; 3];
        for e in exps.iter_mut() {
            let tok = parts.next().ok_or_else(|| err("missing exponent"))?;
            *e = tok.parse().map_err(|_| err("bad exponent"))?;
        }
        if parts.next().is_some() {
            return Err(err("trailing tokens"));
        }
        if !num_traits::Zero::is_zero(&c) {
            p.insert_term(exps, c);
        }
    }
    Ok(p)
}

pub fn to_json(p: &MPoly) -> String {
    let mut out = String::from("{\"vars\":[\"u\",\"w\",\"D\"],\"terms\":[");
    for (i, (e, c)) in p.terms().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(
            out,
            "[{},{},{},{},{}]",
            c.numer(),
            c.denom(),
            e[0],
            e[1],
            e[2]
        )
        .unwrap();
    }
    out.push_str("]}");
    out
}

pub fn from_json(s: &str) -> Result<MPoly> {
    let parse_err = |msg: &str| ExactError::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| parse_err(&format!("invalid JSON: {e}")))?;
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| parse_err("missing terms array"))?;
    let mut p = MPoly::zero();
    for t in terms {
        let tuple = t
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| parse_err("each term must be [num,den,e_u,e_w,e_D]"))?;
        let big = |v: &serde_json::Value| -> Result<BigInt> {
            let n = v
                .as_number()
                .ok_or_else(|| parse_err("expected integer"))?;
            n.to_string()
                .parse()
                .map_err(|_| parse_err("expected integer"))
        };
        let num = big(&tuple[0])?;
        let den = big(&tuple[1])?;
        if num_traits::Zero::is_zero(&den) {
            return Err(parse_err("zero denominator"));
        }
        let mut exps = [0u32; 3];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = tuple[2 + i]
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| parse_err("bad exponent"))?;
        }
        let c = Rational::new(num, den);
        if !num_traits::Zero::is_zero(&c) {
            p.insert_term(exps, c);
        }
    }
    Ok(p)
}

/// Reads either format, sniffing JSON by the leading `{`.
pub fn from_str_any(s: &str) -> Result<MPoly> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_text(s)
    }
}

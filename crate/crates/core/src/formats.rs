//! Plain-text serialization of function tables and encoders.
//!
//! Function file:
//!
//! ```text
//! q k
//! <label of message rank 0>
//! ...
//! <label of message rank q^k - 1>
//! ```
//!
//! Scheme file, header `kind q k r` with kind `linear` or `table`, followed
//! by either the `k` rows of the systematic generator (`k + r` field indices
//! each) or one line of `r` parity indices per message rank. Field elements
//! are written as their canonical index.

use std::fmt::Write as _;

use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::fcc::{FccScheme, FunctionTable, SchemeKind};
use crate::gf::{prime_power, Elem, Field};
use crate::message::message_count;

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

/// Non-blank-trailing lines with 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    lines
}

fn parse_tokens<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| format_err(line, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_order(line: usize, tok: u64) -> Result<u32> {
    prime_power(tok).ok_or(Error::InvalidOrder(tok))?;
    u32::try_from(tok).map_err(|_| format_err(line, "field order too large"))
}

fn expected_len(line: usize, q: u32, k: usize) -> Result<usize> {
    message_count(q, k)
        .filter(|&n| n <= crate::fcc::MAX_TABLE_LEN)
        .map(|n| n as usize)
        .ok_or_else(|| format_err(line, format!("q^k = {q}^{k} is too large")))
}

pub fn parse_function_file(text: &str) -> Result<FunctionTable> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(format_err(1, "missing `q k` header"));
    };
    let head: Vec<u64> = parse_tokens(hline, header)?;
    let [q, k] = head[..] else {
        return Err(format_err(hline, "header must be `q k`"));
    };
    let q = parse_order(hline, q)?;
    let k = usize::try_from(k).map_err(|_| format_err(hline, "k too large"))?;
    let len = expected_len(hline, q, k)?;
    let body = &lines[1..];
    if body.len() < len {
        return Err(format_err(
            hline + body.len() + 1,
            format!("value line {} of {len} missing", body.len() + 1),
        ));
    }
    if body.len() > len {
        return Err(format_err(
            body[len].0,
            format!("expected only {len} value lines"),
        ));
    }
    let values = body
        .iter()
        .map(|&(no, l)| {
            let v: Vec<u64> = parse_tokens(no, l)?;
            match v[..] {
                [x] => Ok(x),
                _ => Err(format_err(no, "expected exactly one label")),
            }
        })
        .collect::<Result<Vec<u64>>>()?;
    FunctionTable::new(q, k, values)
}

pub fn write_function_file(f: &FunctionTable) -> String {
    let mut out = format!("{} {}\n", f.q(), f.k());
    for v in f.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

fn join(symbols: &[Elem]) -> String {
    symbols
        .iter()
        .map(|s| s.0.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_scheme_file(scheme: &FccScheme) -> String {
    let (q, k, r) = (scheme.q(), scheme.k(), scheme.r());
    match scheme.kind() {
        SchemeKind::Linear(g) => {
            let mut out = format!("linear {q} {k} {r}\n");
            for row in g.rows() {
                let _ = writeln!(out, "{}", join(row));
            }
            out
        }
        SchemeKind::Table(t) => {
            let mut out = format!("table {q} {k} {r}\n");
            for p in t {
                let _ = writeln!(out, "{}", join(p));
            }
            out
        }
    }
}

fn parse_symbols(no: usize, line: &str, want: usize, field: &Field) -> Result<Vec<Elem>> {
    let raw: Vec<u32> = parse_tokens(no, line)?;
    if raw.len() != want {
        return Err(format_err(
            no,
            format!("expected {want} field elements, found {}", raw.len()),
        ));
    }
    raw.into_iter()
        .map(|v| {
            field.check(Elem(v)).map_err(|_| {
                format_err(
                    no,
                    format!("{v} is not an element of GF({})", field.order()),
                )
            })
        })
        .collect()
}

pub fn parse_scheme_file(text: &str) -> Result<FccScheme> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .collect();
    let Some(&(hline, header)) = lines.first() else {
        return Err(format_err(1, "missing `kind q k r` header"));
    };
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or("");
    let nums: Vec<u64> = parse_tokens(hline, &parts.collect::<Vec<_>>().join(" "))?;
    let [q, k, r] = nums[..] else {
        return Err(format_err(hline, "header must be `kind q k r`"));
    };
    let q = parse_order(hline, q)?;
    let (k, r) = (k as usize, r as usize);
    let field = Field::new(u64::from(q))?;
    let body = &lines[1..];
    match kind {
        "linear" => {
            let body = trim_trailing_blank(body);
            if body.len() != k {
                return Err(format_err(
                    hline + body.len().min(k) + 1,
                    format!("expected {k} generator rows, found {}", body.len()),
                ));
            }
            let rows = body
                .iter()
                .map(|&(no, l)| parse_symbols(no, l, k + r, &field))
                .collect::<Result<Vec<_>>>()?;
            let g =
                GeneratorMatrix::new(field, rows).map_err(|e| format_err(hline, e.to_string()))?;
            FccScheme::linear(g).map_err(|e| format_err(hline, e.to_string()))
        }
        "table" => {
            let len = expected_len(hline, q, k)?;
            let body = if r == 0 {
                &body[..body.len().min(len)]
            } else {
                trim_trailing_blank(body)
            };
            if r > 0 && body.len() != len {
                return Err(format_err(
                    hline + body.len().min(len) + 1,
                    format!("expected {len} parity lines, found {}", body.len()),
                ));
            }
            let mut parities = body
                .iter()
                .map(|&(no, l)| parse_symbols(no, l, r, &field))
                .collect::<Result<Vec<_>>>()?;
            if r == 0 {
                parities.resize(len, Vec::new());
            }
            FccScheme::table(field, k, r, parities)
        }
        other => Err(format_err(
            hline,
            format!("unknown scheme kind `{other}`, expected `linear` or `table`"),
        )),
    }
}

fn trim_trailing_blank<'a, 'b>(lines: &'a [(usize, &'b str)]) -> &'a [(usize, &'b str)] {
    let mut end = lines.len();
    while end > 0 && lines[end - 1].1.is_empty() {
        end -= 1;
    }
    &lines[..end]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{or_scheme, rs_systematic};
    use crate::fcc::builtin_function;

    #[test]
    fn function_file_examples() {
        let f = parse_function_file("2 1\n0\n1\n").unwrap();
        assert_eq!(f, builtin_function("identity", 2, 1, &[]).unwrap());
        let f = parse_function_file("2 2\n0\n1\n1\n1\n").unwrap();
        assert_eq!(f, builtin_function("or", 2, 2, &[]).unwrap());
    }

    #[test]
    fn function_file_errors() {
        match parse_function_file("2 2\n0\n1\n1\n").unwrap_err() {
            Error::Format { line, msg } => {
                assert_eq!(line, 5);
                assert_eq!(msg, "value line 4 of 4 missing");
            }
            e => panic!("{e:?}"),
        }
        match parse_function_file("2 1\n0\nx\n").unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 3),
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            parse_function_file("2 1\n0\n1\n1\n"),
            Err(Error::Format { line: 4, .. })
        ));
        assert_eq!(
            parse_function_file("6 1\n0\n1\n").unwrap_err(),
            Error::InvalidOrder(6)
        );
        assert!(matches!(
            parse_function_file("2 1\n-1\n0\n"),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(matches!(
            parse_function_file(""),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn scheme_file_shapes() {
        let rs = rs_systematic(5, 2, 1).unwrap().scheme;
        let text = write_scheme_file(&rs);
        assert!(text.starts_with("linear 5 2 2\n1 0 "));
        assert_eq!(parse_scheme_file(&text).unwrap(), rs);

        let or = or_scheme(2, 2, 1).unwrap().scheme;
        let text = write_scheme_file(&or);
        assert_eq!(text, "table 2 2 2\n0 0\n1 1\n1 1\n1 1\n");
        assert_eq!(parse_scheme_file(&text).unwrap(), or);
    }

    #[test]
    fn uncoded_table_round_trips() {
        let s = FccScheme::uncoded(Field::new(3).unwrap(), 2).unwrap();
        let text = write_scheme_file(&s);
        assert_eq!(parse_scheme_file(&text).unwrap(), s);
        assert_eq!(parse_scheme_file("table 3 2 0\n").unwrap(), s);
    }

    #[test]
    fn scheme_file_errors() {
        assert!(matches!(
            parse_scheme_file("linear 2 2 1\n1 0 1\n0 1\n"),
            Err(Error::Format { line: 3, .. })
        ));
        assert!(matches!(
            parse_scheme_file("linear 2 2 1\n1 1 0\n0 1 1\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(matches!(
            parse_scheme_file("table 2 1 1\n0\n"),
            Err(Error::Format { line: 3, .. })
        ));
        assert!(matches!(
            parse_scheme_file("table 2 1 1\n0\n2\n"),
            Err(Error::Format { line: 3, .. })
        ));
        assert!(matches!(
            parse_scheme_file("cyclic 2 1 1\n"),
            Err(Error::Format { line: 1, .. })
        ));
        assert_eq!(
            parse_scheme_file("table 10 1 1\n").unwrap_err(),
            Error::InvalidOrder(10)
        );
    }
}

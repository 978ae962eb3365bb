//! Text formats for channels, codes and distributions.
//!
//! Channel file:
//!
//! ```text
//! # binary erasure channel, ε = 0.3
//! inputs: 2 outputs: 3
//! 0.7 0 0.3
//! 0 0.7 0.3
//! ```
//!
//! The header must read `inputs: <M> outputs: <N>`; it is followed by exactly
//! `M` rows of `N` decimals separated by single spaces. Lines starting with
//! `#` and blank lines are ignored anywhere.
//!
//! Code file: one codeword per line as a string of `0`/`1`, all of the same
//! length, with the same comment rules.

use std::fmt::Write as _;

use crate::channel::Channel;
use crate::coding::{BlockCode, Codeword};
use crate::error::{Error, Result};
use crate::prob::Distribution;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize)> {
    let bad = || {
        parse_error(
            line,
            format!("expected `inputs: <M> outputs: <N>`, found {text:?}"),
        )
    };
    let fields: Vec<&str> = text.split(' ').collect();
    match fields.as_slice() {
        ["inputs:", m, "outputs:", n] => {
            let m: usize = m.parse().map_err(|_| bad())?;
            let n: usize = n.parse().map_err(|_| bad())?;
            if m == 0 || n == 0 {
                return Err(parse_error(line, "alphabet sizes must be at least 1"));
            }
            Ok((m, n))
        }
        _ => Err(bad()),
    }
}

fn parse_row(line: usize, text: &str, expected: usize) -> Result<Vec<f64>> {
    let row = text
        .split(' ')
        .map(|tok| {
            if tok.is_empty() {
                return Err(parse_error(
                    line,
                    "entries must be separated by single spaces",
                ));
            }
            tok.parse::<f64>()
                .map_err(|_| parse_error(line, format!("not a decimal number: {tok:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if row.len() != expected {
        return Err(parse_error(
            line,
            format!("expected {expected} entries, found {}", row.len()),
        ));
    }
    Ok(row)
}

pub fn parse_channel(text: &str) -> Result<Channel> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing `inputs: <M> outputs: <N>` header"))?;
    let (m, n) = parse_header(line, header)?;
    let mut rows = Vec::with_capacity(m);
    let mut last_line = line;
    for (line, text) in lines {
        if rows.len() == m {
            return Err(parse_error(line, format!("more than {m} rows")));
        }
        let row = parse_row(line, text, n)?;
        // surface row-level validation with the line that caused it
        Channel::new(vec![row.clone()])
            .map_err(|e| parse_error(line, format!("{}: {e}", e.kind())))?;
        rows.push(row);
        last_line = line;
    }
    if rows.len() != m {
        return Err(parse_error(
            last_line,
            format!("expected {m} rows, found {}", rows.len()),
        ));
    }
    Channel::new(rows)
}

/// Writes `channel` in the channel file format. Numbers use the shortest
/// representation that parses back to the same value.
pub fn format_channel(channel: &Channel) -> String {
    let mut out = format!(
        "inputs: {} outputs: {}\n",
        channel.inputs(),
        channel.outputs()
    );
    for row in channel.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_code(text: &str) -> Result<BlockCode> {
    let mut words = Vec::new();
    let mut length = None;
    for (line, text) in content_lines(text) {
        let word: Codeword = text
            .parse()
            .map_err(|e: Error| parse_error(line, e.to_string()))?;
        match length {
            None => length = Some(word.length()),
            Some(n) if n != word.length() => {
                return Err(parse_error(
                    line,
                    format!("codeword length {} differs from {n}", word.length()),
                ))
            }
            Some(_) => {}
        }
        words.push(word);
    }
    if words.is_empty() {
        return Err(parse_error(1, "code file contains no codewords"));
    }
    BlockCode::new(words)
}

pub fn format_code(code: &BlockCode) -> String {
    code.codewords().iter().fold(String::new(), |mut out, w| {
        let _ = writeln!(out, "{w}");
        out
    })
}

/// Parses `0.5,0.25,0.25` (commas and/or whitespace as separators).
pub fn parse_distribution(text: &str) -> Result<Distribution> {
    let weights = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| parse_error(1, format!("not a decimal number: {t:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    Distribution::new(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BEC: &str =
        "# erasure channel\ninputs: 2 outputs: 3\n0.7 0 0.3\n\n# second row\n0 0.7 0.3\n";

    #[test]
    fn parses_erasure_channel() {
        let ch = parse_channel(BEC).unwrap();
        assert_eq!(ch, Channel::binary_erasure(0.3).unwrap());
    }

    #[test]
    fn channel_errors_name_the_line() {
        let cases = [
            ("", 1),
            ("inputs 2 outputs 2\n", 1),
            ("inputs: 2 outputs: 2\n0.5 0.5\n", 2),
            ("inputs: 1 outputs: 2\n0.5  0.5\n", 2),
            ("inputs: 1 outputs: 2\n0.5 x\n", 2),
            ("inputs: 1 outputs: 2\n0.5 0.5 0\n", 2),
            ("# c\ninputs: 1 outputs: 2\n0.5 0.6\n", 3),
            ("inputs: 1 outputs: 2\n1 0\n0 1\n", 3),
            ("inputs: 0 outputs: 2\n", 1),
        ];
        for (text, line) in cases {
            match parse_channel(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let err = parse_channel("inputs: 1 outputs: 2\n0.5 0.6\n").unwrap_err();
        assert!(err.to_string().contains("NotNormalized"));
    }

    #[test]
    fn parses_codes() {
        let code = parse_code("# rep\n000\n111\n").unwrap();
        assert_eq!(code, crate::coding::repetition_code(3).unwrap());
        assert!(matches!(
            parse_code("000\n11\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_code("000\n0a0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_code("# nothing\n").is_err());
        assert!(matches!(parse_code("01\n01\n"), Err(Error::InvalidCode(_))));
    }

    #[test]
    fn parses_distributions() {
        assert_eq!(
            parse_distribution("0.5,0.25,0.25").unwrap().probs(),
            &[0.5, 0.25, 0.25]
        );
        assert_eq!(
            parse_distribution("0.5 0.5\n").unwrap().probs(),
            &[0.5, 0.5]
        );
        assert!(matches!(
            parse_distribution("0.3,0.3"),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            parse_distribution("a,b"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_distribution(""), Err(Error::Empty)));
    }

    proptest! {
        #[test]
        fn channel_file_roundtrips(rows in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..5)) {
            let rows: Vec<Vec<f64>> = rows
                .into_iter()
                .filter_map(|r| {
                    let s: f64 = r.iter().sum();
                    (s > 1e-3).then(|| r.iter().map(|x| x / s).collect())
                })
                .collect();
            prop_assume!(!rows.is_empty());
            let ch = Channel::new(rows).unwrap();
            prop_assert_eq!(parse_channel(&format_channel(&ch)).unwrap(), ch);
        }
    }

    #[test]
    fn code_file_roundtrips() {
        let code = crate::coding::random_code(17, 40, 2).unwrap();
        assert_eq!(parse_code(&format_code(&code)).unwrap(), code);
    }
}

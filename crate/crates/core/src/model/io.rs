//! Plain-text formats for observations, label vectors and score vectors.
//!
//! Observation files start with `BLOCKREC-OBS v1 n=<n> kind=<ros|sbm>` and
//! carry `n` rows of `n` space-separated decimals. Label and side-information
//! vectors are one line of `1`, `-1` or `0` tokens. Score vectors hold one
//! decimal per line with `inf` and `-inf` literals.

use std::io::{BufRead, Write};

use super::{Observation, ObservationKind};
use crate::error::{Error, Result};
use crate::genie::ScoreVector;
use crate::linalg::SymMatrix;
use crate::scalar::Scalar;

pub const OBS_MAGIC: &str = "BLOCKREC-OBS";
pub const OBS_VERSION: &str = "v1";

/// Writes `obs`; floats use the shortest round-trip representation.
pub fn write_observation<T: Scalar, W: Write>(obs: &Observation<T>, mut w: W) -> Result<()> {
    let n = obs.n();
    writeln!(w, "{OBS_MAGIC} {OBS_VERSION} n={n} kind={}", obs.kind().as_str())?;
    let mut line = String::new();
    for i in 0..n {
        line.clear();
        for (j, v) in obs.row(i).iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            push_decimal(&mut line, v.as_f64());
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn push_decimal(buf: &mut String, v: f64) {
    use std::fmt::Write as _;
    // `-0` and `0` print alike so files do not depend on the sign of zero.
    if v == 0.0 {
        buf.push('0');
    } else {
        write!(buf, "{v}").expect("writing to a String cannot fail");
    }
}

fn parse_header(line: &str) -> Result<(usize, ObservationKind)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(OBS_MAGIC) || parts.next() != Some(OBS_VERSION) {
        return Err(Error::Parse(format!("bad observation header {line:?}")));
    }
    let mut n = None;
    let mut kind = None;
    for tok in parts {
        match tok.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|e| Error::Parse(format!("n: {e}")))?),
            Some(("kind", v)) => kind = Some(v.parse::<ObservationKind>()?),
            _ => return Err(Error::Parse(format!("unexpected header field {tok:?}"))),
        }
    }
    match (n, kind) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(Error::Parse("header needs n=<n> and kind=<ros|sbm>".into())),
    }
}

/// Reads and validates an observation file.
pub fn read_observation<T: Scalar, R: BufRead>(r: R) -> Result<Observation<T>> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty observation file".into()))??;
    let (n, kind) = parse_header(&header)?;
    let mut data = Vec::with_capacity(n * n);
    let mut rows = 0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("row {rows}: bad value {tok:?}")))?;
            data.push(T::of(v));
        }
        if data.len() - before != n {
            return Err(Error::Parse(format!("row {rows} has {} values, expected {n}", data.len() - before)));
        }
        rows += 1;
    }
    if rows != n {
        return Err(Error::Parse(format!("expected {n} rows, found {rows}")));
    }
    Observation::new(kind, SymMatrix::from_row_major_unchecked(n, data))
}

pub fn format_labels(labels: &[i8]) -> String {
    labels.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses a single line of `{-1, 0, 1}` tokens.
pub fn parse_labels(text: &str) -> Result<Vec<i8>> {
    let v: Vec<i8> = text
        .split_whitespace()
        .map(|tok| match tok {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            "0" => Ok(0),
            other => Err(Error::Parse(format!("bad label token {other:?}"))),
        })
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty label vector".into()));
    }
    Ok(v)
}

pub fn format_scores<T: Scalar>(z: &ScoreVector<T>) -> String {
    let mut out = String::new();
    for &v in z.values() {
        push_decimal(&mut out, v.as_f64());
        out.push('\n');
    }
    out
}

pub fn parse_scores<T: Scalar>(text: &str) -> Result<ScoreVector<T>> {
    let values = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<f64>()
                .map(T::of)
                .map_err(|_| Error::Parse(format!("bad score {l:?}")))
        })
        .collect::<Result<Vec<T>>>()?;
    ScoreVector::new(values)
}

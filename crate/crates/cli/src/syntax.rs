//! Values inside `.naf` lines: rationals, vectors, matrices and affine transformations.

use nilaff::affine::AffTrans;
use nilaff::exactalg::{parse_rat, QMatrix, Rat};
use nilaff::nilgroup::AlgebraRef;

/// A message plus the byte offset (within the value text) where it applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ValueError> {
    Err(ValueError {
        offset,
        message: message.into(),
    })
}

pub fn parse_rational(text: &str, offset: usize) -> Result<Rat, ValueError> {
    let lead = offset + (text.len() - text.trim_start().len());
    parse_rat(text.trim()).ok_or_else(|| ValueError {
        offset: lead,
        message: format!("`{}` is not a rational number", text.trim()),
    })
}

/// `(a, b, c)`; `()` is the empty vector.
pub fn parse_vector(text: &str, offset: usize) -> Result<Vec<Rat>, ValueError> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) else {
        return err(lead, "expected a vector like (1, 0)");
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = lead + 1;
    for part in inner.split(',') {
        out.push(parse_rational(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// `[[a, b], [c, d]]`.
pub fn parse_matrix(text: &str, offset: usize) -> Result<QMatrix, ValueError> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return err(lead, "expected a matrix like [[1, 0], [0, 1]]");
    };
    let mut rows = Vec::new();
    let mut rest = inner;
    let mut pos = lead + 1;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let Some(body) = trimmed.strip_prefix('[') else {
            return err(pos, "expected `[` starting a matrix row");
        };
        let Some(end) = body.find(']') else {
            return err(pos, "unterminated matrix row");
        };
        let mut row = Vec::new();
        let mut p = pos + 1;
        for part in body[..end].split(',') {
            if !part.trim().is_empty() {
                row.push(parse_rational(part, p)?);
            }
            p += part.len() + 1;
        }
        rows.push(row);
        let after = &body[end + 1..];
        pos += end + 2;
        let after_trim = after.trim_start();
        pos += after.len() - after_trim.len();
        rest = after_trim.strip_prefix(',').unwrap_or(after_trim);
        if rest.len() < after_trim.len() {
            pos += 1;
        }
    }
    if rows.is_empty() {
        return Ok(QMatrix::zeros(0, 0));
    }
    QMatrix::from_rows(rows).map_err(|e| ValueError {
        offset: lead,
        message: e.to_string(),
    })
}

/// `(translation = (..); auto = [[..]])`.
pub fn parse_aff_trans(text: &str, offset: usize, algebra: &AlgebraRef) -> Result<AffTrans, ValueError> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) else {
        return err(lead, "expected (translation = ...; auto = ...)");
    };
    let Some((first, second)) = inner.split_once(';') else {
        return err(lead, "expected `;` between translation and auto");
    };
    let field = |part: &str, name: &str, at: usize| -> Result<(usize, String), ValueError> {
        let Some((key, value)) = part.split_once('=') else {
            return err(at, format!("expected `{name} = ...`"));
        };
        if key.trim() != name {
            return err(at, format!("expected `{name}`, found `{}`", key.trim()));
        }
        Ok((at + key.len() + 1, value.to_string()))
    };
    let (tpos, tval) = field(first, "translation", lead + 1)?;
    let (apos, aval) = field(second, "auto", lead + 2 + first.len())?;
    let x = parse_vector(&tval, tpos)?;
    let d = parse_matrix(&aval, apos)?;
    AffTrans::from_parts(algebra, x, d).map_err(|e| ValueError {
        offset: lead,
        message: e.to_string(),
    })
}

pub fn fmt_vector(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_matrix(m: &QMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| fmt_vector(m.row(i))).map(|r| format!("[{}]", &r[1..r.len() - 1])).collect();
    format!("[{}]", rows.join(", "))
}

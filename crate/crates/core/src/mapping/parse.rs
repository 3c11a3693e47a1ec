//! Twist-word syntax: `id`, or letters `t(x)` / `~t(x)` joined by `*`, where `x` is a
//! standard name (`a3`, `b1`), a separating curve `sep1`, or a coordinate vector
//! `[1,0,-1,2]`.

use num_bigint::BigInt;

use crate::algebra::{Curve, HomologyClass, Surface};
use crate::error::{Error, Result};

use super::{Sign, Twist};

pub(crate) fn is_standard_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a' | 'b'))
        && !chars.as_str().is_empty()
        && chars.all(|c| c.is_ascii_digit())
}

pub(crate) fn parse_word(surface: Surface, expr: &str) -> Result<Vec<Twist>> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    if compact == "id" {
        return Ok(Vec::new());
    }
    split_top_level(&compact)?
        .into_iter()
        .map(|letter| parse_letter(surface, letter))
        .collect()
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced bracket at offset {i}")));
                }
            }
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn parse_letter(surface: Surface, letter: &str) -> Result<Twist> {
    let (sign, rest) = match letter.strip_prefix('~') {
        Some(r) => (Sign::Negative, r),
        None => (Sign::Positive, letter),
    };
    let inner = rest
        .strip_prefix("t(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected t(...) or ~t(...), got `{letter}`")))?;
    let curve = parse_curve(surface, inner)?;
    Ok(Twist { curve, sign })
}

pub(crate) fn parse_curve(surface: Surface, s: &str) -> Result<Curve> {
    if let Some(h) = s.strip_prefix("sep") {
        let h: usize = h
            .parse()
            .map_err(|_| Error::Parse(format!("bad separating genus in `{s}`")))?;
        return Ok(Curve::separating(surface, h)?.labelled(s));
    }
    if is_standard_name(s) {
        let i: usize = s[1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in `{s}`")))?;
        if i == 0 || i > surface.genus() {
            return Err(Error::Parse(format!(
                "`{s}` is not a standard curve in genus {}",
                surface.genus()
            )));
        }
        return Ok(if s.starts_with('a') {
            Curve::standard_a(surface, i)
        } else {
            Curve::standard_b(surface, i)
        });
    }
    if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coords = body
            .split(',')
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != surface.rank() {
            return Err(Error::Dimension {
                expected: surface.rank(),
                found: coords.len(),
            });
        }
        let class = HomologyClass::new(coords);
        if class.is_zero() {
            return Err(Error::Parse(
                "zero class: use sepH for a separating curve".into(),
            ));
        }
        let curve = Curve::nonseparating(class)?;
        let label = curve.class().standard_index().map(crate::algebra::standard_label);
        return Ok(curve.with_label(label));
    }
    Err(Error::Parse(format!("unrecognized curve `{s}`")))
}

//! Space files and subset literals.
//!
//! ```text
//! finite 3          ordinal w^2+1        cantor
//! point x
//! point y
//! point z
//! spec x y
//! spec y z
//! ```

use super::{FiniteSpace, OrdinalSet, PointSet, Space, SpaceError};
use crate::ordinal::{self, Ordinal, OrdinalError};

fn parse_err(line: usize, message: impl Into<String>) -> SpaceError {
    SpaceError::Parse {
        line,
        message: message.into(),
    }
}

pub(super) fn parse_space(text: &str) -> Result<Space, SpaceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty space file"))?;
    let mut words = header.split_whitespace();
    let space = match (words.next(), words.next(), words.next()) {
        (Some("cantor"), None, _) => Space::Cantor,
        (Some("ordinal"), Some(top), None) => {
            let top: Ordinal = top
                .parse()
                .map_err(|e: OrdinalError| parse_err(hline, e.to_string()))?;
            Space::ordinal(top)?
        }
        (Some("finite"), Some(n), None) => {
            let n: usize = n
                .parse()
                .map_err(|_| parse_err(hline, format!("bad point count `{n}`")))?;
            let mut names = Vec::new();
            let mut rel_lines = Vec::new();
            for (ln, line) in lines.by_ref() {
                let parts: Vec<&str> = line.split_whitespace().collect();
                match parts.as_slice() {
                    ["point", name] => {
                        if !rel_lines.is_empty() {
                            return Err(parse_err(ln, "point declared after spec lines"));
                        }
                        names.push(name.to_string());
                    }
                    ["spec", a, b] => rel_lines.push((ln, a.to_string(), b.to_string())),
                    _ => return Err(parse_err(ln, format!("unrecognised line `{line}`"))),
                }
            }
            if names.len() != n {
                return Err(parse_err(
                    hline,
                    format!("header declares {n} points, found {}", names.len()),
                ));
            }
            let index = |ln: usize, name: &str| {
                names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| parse_err(ln, format!("unknown point `{name}`")))
            };
            let mut rel = Vec::new();
            for (ln, a, b) in &rel_lines {
                rel.push((index(*ln, a)?, index(*ln, b)?));
            }
            Space::Finite(FiniteSpace::new(names, &rel)?)
        }
        _ => return Err(parse_err(hline, format!("unrecognised header `{header}`"))),
    };
    if let Some((ln, line)) = lines.next() {
        return Err(parse_err(ln, format!("unexpected line `{line}`")));
    }
    Ok(space)
}

fn lit_err(column: usize, message: impl Into<String>) -> SpaceError {
    SpaceError::Literal {
        column,
        message: message.into(),
    }
}

fn braced_items(text: &str, offset: usize) -> Result<Vec<(usize, &str)>, SpaceError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| lit_err(offset + 1, "expected `{...}`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut pos = offset + 1;
    for item in inner.split(',') {
        items.push((pos + 1, item.trim()));
        pos += item.len() + 1;
    }
    Ok(items)
}

pub(super) fn parse_finite_subset(space: &FiniteSpace, text: &str) -> Result<PointSet, SpaceError> {
    braced_items(text, 0)?
        .into_iter()
        .map(|(col, name)| {
            space
                .index_of(name)
                .ok_or_else(|| lit_err(col, format!("unknown point `{name}`")))
        })
        .collect()
}

fn ordinal_at(text: &str, offset: usize) -> Result<Ordinal, SpaceError> {
    ordinal::parse_at(text, offset).map_err(|e| match e {
        OrdinalError::Syntax { column, message } => lit_err(column, message),
        other => other.into(),
    })
}

/// Splits on `sep` at bracket depth zero.
fn split_top(text: &str, sep: u8) -> Result<Vec<(usize, &str)>, SpaceError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => {
                depth -= 1;
                if depth < 0 {
                    // `[a,b)` closes a `[`
                    depth = 0;
                }
            }
            _ if b == sep && depth == 0 => {
                parts.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &text[start..]));
    Ok(parts)
}

fn parse_interval(text: &str, offset: usize, mask: u64) -> Result<OrdinalSet, SpaceError> {
    let body = text
        .strip_prefix('[')
        .ok_or_else(|| lit_err(offset + 1, "expected `[`"))?;
    let (body, closed) = if let Some(b) = body.strip_suffix(']') {
        (b, true)
    } else if let Some(b) = body.strip_suffix(')') {
        (b, false)
    } else {
        return Err(lit_err(offset + text.len(), "expected `]` or `)`"));
    };
    let comma = body
        .find(',')
        .ok_or_else(|| lit_err(offset + 2, "expected `lo,hi`"))?;
    let lo = ordinal_at(body[..comma].trim(), offset + 1)?;
    let hi = ordinal_at(body[comma + 1..].trim(), offset + comma + 2)?;
    let end = if closed { hi.succ()? } else { hi };
    if lo > end {
        return Err(lit_err(offset + 1, "interval bounds out of order"));
    }
    Ok(OrdinalSet::level_slice(lo, end, mask))
}

fn parse_atom(text: &str, offset: usize, universe: &OrdinalSet) -> Result<OrdinalSet, SpaceError> {
    let text_trim = text.trim();
    let offset = offset + (text.len() - text.trim_start().len());
    if let Some(inner) = text_trim
        .strip_prefix("co(")
        .and_then(|t| t.strip_suffix(')'))
    {
        let set = parse_union(inner, offset + 3, universe)?;
        return Ok(universe.difference(&set));
    }
    if text_trim.starts_with('{') {
        let mut acc = OrdinalSet::empty();
        for (col, item) in braced_items(text_trim, offset)? {
            acc = acc.union(&OrdinalSet::singleton(ordinal_at(item, col - 1)?));
        }
        return Ok(acc);
    }
    if let Some(rest) = text_trim.strip_prefix('@') {
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        let m: u32 = rest[..digits]
            .parse()
            .map_err(|_| lit_err(offset + 2, "expected a level after `@`"))?;
        if m > super::MAX_LEVEL {
            return Err(lit_err(offset + 2, "level out of range"));
        }
        return parse_interval(&rest[digits..], offset + 1 + digits, 1u64 << m);
    }
    parse_interval(text_trim, offset, u64::MAX)
}

fn parse_union(text: &str, offset: usize, universe: &OrdinalSet) -> Result<OrdinalSet, SpaceError> {
    let mut acc = OrdinalSet::empty();
    for (start, part) in split_top(text, b'u')? {
        if part.trim().is_empty() {
            return Err(lit_err(offset + start + 1, "empty term in union"));
        }
        acc = acc.union(&parse_atom(part, offset + start, universe)?);
    }
    Ok(acc)
}

/// Parses an ordinal subset literal; `co(...)` complements within `universe`.
pub(super) fn parse_ordinal_subset(
    text: &str,
    universe: &OrdinalSet,
) -> Result<OrdinalSet, SpaceError> {
    parse_union(text, 0, universe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_file() {
        let s = parse_space("finite 3\npoint x\npoint y\npoint z\nspec x y\nspec y z\n").unwrap();
        let Space::Finite(f) = s else { panic!() };
        assert!(f.specialises(0, 2));
    }

    #[test]
    fn other_headers() {
        assert_eq!(parse_space("# c\ncantor\n").unwrap(), Space::Cantor);
        assert!(matches!(
            parse_space("ordinal w^2+1").unwrap(),
            Space::Ordinal(_)
        ));
    }

    #[test]
    fn file_errors() {
        assert!(matches!(
            parse_space("finite 2\npoint a\npoint b\nspec a b\nspec b a\n"),
            Err(SpaceError::CyclicSpecialisation(..))
        ));
        assert!(matches!(
            parse_space("finite 2\npoint a\n"),
            Err(SpaceError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_space("finite 1\npoint a\nspec a q\n"),
            Err(SpaceError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_space("ordinal w+w"),
            Err(SpaceError::Parse { .. })
        ));
        assert!(parse_space("").is_err());
    }

    fn parse_ordinal_subset(text: &str) -> Result<OrdinalSet, SpaceError> {
        let universe = OrdinalSet::closed_interval(Ordinal::zero(), "w^3".parse().unwrap());
        super::parse_ordinal_subset(text, &universe)
    }

    #[test]
    fn literal_forms() {
        let a = parse_ordinal_subset("[0,5]u[w,w]").unwrap();
        assert_eq!(a.to_string(), "[0,5]u[w,w]");
        let b = parse_ordinal_subset("{w,3}").unwrap();
        assert_eq!(b.to_string(), "[3,3]u[w,w]");
        let c = parse_ordinal_subset("@1[w,w^2)").unwrap();
        assert_eq!(c.to_string(), "@1[w,w^2)");
        match parse_ordinal_subset("[0,w+w]") {
            Err(SpaceError::Literal { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_ordinal_subset("[0,5").is_err());
        assert!(parse_ordinal_subset("[5,0]").is_err());
        assert!(parse_ordinal_subset("[0,1]u").is_err());
        let d = parse_ordinal_subset("co([0,w^2])").unwrap();
        assert_eq!(d.to_string(), "[w^2+1,w^3]");
    }
}

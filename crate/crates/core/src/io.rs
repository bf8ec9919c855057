//! Line-oriented descriptor files.
//!
//! Group file:
//! ```text
//! dim 2
//! conductor 3
//! gen
//! 0; 1
//! 1; 0
//! ```
//!
//! Orbifold file:
//! ```text
//! orbifold
//! ambient_dim 1
//! class 0
//! component codim=0 betti=1,0,1
//! ```

use thiserror::Error;

use crate::cyclo::{parse_cyclotomic, CycloMatrix};
use crate::strata::{ClassEntry, FixedComponent, OrbifoldDescriptor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct InputError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> InputError {
    InputError { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn keyword_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let mut parts = line.splitn(2, char::is_whitespace);
    (parts.next() == Some(key)).then(|| parts.next().unwrap_or("").trim())
}

fn parse_count(no: usize, key: &str, value: &str) -> Result<usize, InputError> {
    value.parse::<usize>().map_err(|_| err(no, format!("`{key}` expects a non-negative integer, got `{value}`")))
}

/// Parsed group file: dimension, declared conductor and generator matrices.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub dim: usize,
    pub conductor: u32,
    pub generators: Vec<CycloMatrix>,
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, InputError> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| err(0, "empty group file"))?;
    let dim = keyword_value(first, "dim").ok_or_else(|| err(no, "expected `dim <n>`"))?;
    let dim = parse_count(no, "dim", dim)?;
    if dim == 0 {
        return Err(err(no, "dimension must be positive"));
    }
    let (no, second) = lines.next().ok_or_else(|| err(no, "expected `conductor <e>`"))?;
    let conductor = keyword_value(second, "conductor").ok_or_else(|| err(no, "expected `conductor <e>`"))?;
    let conductor = parse_count(no, "conductor", conductor)?;
    if conductor == 0 || conductor > u32::MAX as usize {
        return Err(err(no, "conductor must be a positive 32-bit integer"));
    }
    let conductor = conductor as u32;

    let mut generators = Vec::new();
    while let Some((no, line)) = lines.next() {
        if line != "gen" {
            return Err(err(no, format!("expected `gen`, got `{line}`")));
        }
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            let (rno, row) = lines.next().ok_or_else(|| err(no, format!("generator block ends after {r} of {dim} rows")))?;
            let entries: Vec<&str> = row.split(';').collect();
            if entries.len() != dim {
                return Err(err(rno, format!("row has {} entries, expected {dim}", entries.len())));
            }
            let parsed = entries
                .iter()
                .map(|s| parse_cyclotomic(s, conductor).map_err(|e| err(rno, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        generators.push(CycloMatrix::from_rows(rows));
    }
    if generators.is_empty() {
        return Err(err(no, "no `gen` blocks"));
    }
    Ok(GroupFile { dim, conductor, generators })
}

pub fn parse_orbifold_file(text: &str) -> Result<OrbifoldDescriptor, InputError> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| err(0, "empty orbifold file"))?;
    if first != "orbifold" {
        return Err(err(no, "expected `orbifold`"));
    }
    let (no, second) = lines.next().ok_or_else(|| err(no, "expected `ambient_dim <n>`"))?;
    let ambient = keyword_value(second, "ambient_dim").ok_or_else(|| err(no, "expected `ambient_dim <n>`"))?;
    let ambient_dim = parse_count(no, "ambient_dim", ambient)?;

    let mut classes: Vec<ClassEntry> = Vec::new();
    for (no, line) in lines {
        if let Some(v) = keyword_value(line, "class") {
            classes.push(ClassEntry { representative: parse_count(no, "class", v)?, components: Vec::new() });
        } else if let Some(rest) = keyword_value(line, "component") {
            let entry = classes.last_mut().ok_or_else(|| err(no, "`component` before any `class`"))?;
            entry.components.push(parse_component(no, rest)?);
        } else {
            return Err(err(no, format!("unrecognized line `{line}`")));
        }
    }
    Ok(OrbifoldDescriptor { ambient_dim, classes })
}

fn parse_component(no: usize, rest: &str) -> Result<FixedComponent, InputError> {
    let (mut codim, mut betti) = (None, None);
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("codim", v)) => codim = Some(parse_count(no, "codim", v)?),
            Some(("betti", v)) => {
                let b = v
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| err(no, format!("bad Betti number `{x}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                betti = Some(b);
            }
            _ => return Err(err(no, format!("unknown component field `{field}`"))),
        }
    }
    Ok(FixedComponent {
        codim: codim.ok_or_else(|| err(no, "component needs `codim=`"))?,
        betti: betti.ok_or_else(|| err(no, "component needs `betti=`"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_roundtrip() {
        let text = "# S3\ndim 2\nconductor 3\ngen\n0; 1\n1; 0\ngen # rotation\nz; 0\n0; z^2\n";
        let g = parse_group_file(text).unwrap();
        assert_eq!(g.dim, 2);
        assert_eq!(g.generators.len(), 2);
        let group = crate::group::FiniteMatrixGroup::generate(&g.generators, 100).unwrap();
        assert_eq!(group.order(), 6);
    }

    #[test]
    fn group_file_errors_carry_line_numbers() {
        assert_eq!(parse_group_file("dim 2\nconductor 1\ngen\n1; 0\n").unwrap_err().line, 3);
        assert_eq!(parse_group_file("dim 2\nconductor 1\ngen\n1; 0; 0\n0; 1\n").unwrap_err().line, 4);
        assert_eq!(parse_group_file("dim 1\nconductor 1\ngen\nq\n").unwrap_err().line, 4);
        assert_eq!(parse_group_file("dim x\n").unwrap_err().line, 1);
        assert!(parse_group_file("dim 1\nconductor 2\n").is_err());
    }

    #[test]
    fn orbifold_file() {
        let text = "orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1,0,1\nclass 1\ncomponent codim=1 betti=1\ncomponent codim=1 betti=1\n";
        let d = parse_orbifold_file(text).unwrap();
        assert_eq!(d.ambient_dim, 1);
        assert_eq!(d.classes[1].components.len(), 2);
        assert_eq!(d.classes[0].components[0].betti, vec![1, 0, 1]);
        assert_eq!(parse_orbifold_file("orbifold\nambient_dim 1\ncomponent codim=0 betti=1\n").unwrap_err().line, 3);
        assert_eq!(parse_orbifold_file("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0\n").unwrap_err().line, 4);
    }
}

//! Ring and point-set input files.
//!
//! Ring file:
//! ```text
//! field fp default
//! vars x y z
//! order grevlex
//! gens
//! x*y
//! end
//! ```
//! Points file: `field ...`, `ambient <n>`, then `points` ... `end` with
//! `n + 1` field literals per line. Blank lines and `#` comments are ignored.

use std::sync::Arc;

use corecalc::points::PointSet;
use corecalc::{parse_polynomial, Field, Ideal, MonomialOrder, Ring, DEFAULT_PRIME};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Algebra(#[from] corecalc::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> InputError {
    InputError::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Debug)]
pub struct RingFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    /// `(line, text)` of each generator.
    pub gens: Vec<(usize, String)>,
}

#[derive(Clone, Debug)]
pub struct PointsFile {
    pub field: FieldSpec,
    pub ambient: usize,
    pub rows: Vec<(usize, Vec<String>)>,
}

#[derive(Clone, Debug)]
pub enum InputFile {
    Ring(RingFile),
    Points(PointsFile),
}

impl InputFile {
    pub fn field(&self) -> FieldSpec {
        match self {
            InputFile::Ring(r) => r.field,
            InputFile::Points(p) => p.field,
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((k + 1, l))
    })
}

fn parse_field(line: usize, words: &[&str]) -> Result<FieldSpec, InputError> {
    match words {
        ["q"] => Ok(FieldSpec::Rationals),
        ["fp", "default"] => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
        ["fp", p] => p.parse().map(FieldSpec::Prime).map_err(|_| syntax(line, format!("invalid prime `{p}`"))),
        _ => Err(syntax(line, "expected `field q`, `field fp <prime>` or `field fp default`")),
    }
}

/// Parses either file kind; the presence of `ambient` or `points` decides.
pub fn parse_input(text: &str) -> Result<InputFile, InputError> {
    let mut field = None;
    let mut vars = None;
    let mut order = MonomialOrder::Grevlex;
    let mut ambient = None;
    let mut gens = None;
    let mut rows = None;
    let mut lines = content_lines(text);
    while let Some((no, l)) = lines.next() {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "field" => field = Some(parse_field(no, &words[1..])?),
            "vars" if words.len() > 1 => vars = Some(words[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            "order" => {
                order = match words.get(1) {
                    Some(&"grevlex") if words.len() == 2 => MonomialOrder::Grevlex,
                    Some(&"lex") if words.len() == 2 => MonomialOrder::Lex,
                    _ => return Err(syntax(no, "expected `order grevlex` or `order lex`")),
                }
            }
            "ambient" if words.len() == 2 => {
                ambient = Some(words[1].parse::<usize>().map_err(|_| syntax(no, "invalid ambient dimension"))?)
            }
            "gens" | "points" if words.len() == 1 => {
                let mut block = Vec::new();
                loop {
                    match lines.next() {
                        None => return Err(syntax(no, format!("`{}` block has no `end`", words[0]))),
                        Some((_, "end")) => break,
                        Some((k, body)) => block.push((k, body.to_string())),
                    }
                }
                if words[0] == "gens" {
                    gens = Some(block);
                } else {
                    rows = Some(block);
                }
            }
            _ => return Err(syntax(no, format!("unexpected line `{l}`"))),
        }
    }
    let field = field.ok_or_else(|| syntax(0, "missing `field` line"))?;
    match (ambient, rows) {
        (Some(n), Some(rows)) => {
            if vars.is_some() || gens.is_some() {
                return Err(syntax(0, "a file holds either a ring or a point set"));
            }
            let rows = rows
                .into_iter()
                .map(|(k, body)| {
                    let lits: Vec<String> = body.split_whitespace().map(str::to_string).collect();
                    if lits.len() != n + 1 {
                        return Err(syntax(k, format!("expected {} coordinates, found {}", n + 1, lits.len())));
                    }
                    Ok((k, lits))
                })
                .collect::<Result<_, _>>()?;
            Ok(InputFile::Points(PointsFile { field, ambient: n, rows }))
        }
        (None, None) => {
            let vars = vars.ok_or_else(|| syntax(0, "missing `vars` line"))?;
            let gens = gens.ok_or_else(|| syntax(0, "missing `gens` block"))?;
            Ok(InputFile::Ring(RingFile { field, vars, order, gens }))
        }
        _ => Err(syntax(0, "a points file needs both `ambient` and `points`")),
    }
}

impl RingFile {
    pub fn ideal<F: Field>(&self, field: F) -> Result<Ideal<F>, InputError> {
        let ring = Ring::new(field, self.vars.clone(), self.order)?;
        let gens = self
            .gens
            .iter()
            .map(|(k, s)| parse_polynomial(s, &ring).map_err(|e| syntax(*k, e.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(Ideal::new(&ring, gens)?)
    }
}

impl PointsFile {
    pub fn ring<F: Field>(&self, field: F) -> Result<Arc<Ring<F>>, InputError> {
        Ok(Ring::with_indexed_vars(field, self.ambient + 1)?)
    }

    pub fn point_set<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<PointSet<F>, InputError> {
        let field = &ring.field;
        let pts = self
            .rows
            .iter()
            .map(|(k, lits)| {
                lits.iter().map(|s| field.parse_literal(s).map_err(|e| syntax(*k, e.to_string()))).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(PointSet::new(ring, pts)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corecalc::{PrimeField, Rationals};

    const RING: &str = "field fp default\nvars x y\norder lex\ngens\nx^5 + y^5  # quintic\nend\n";
    const POINTS: &str = "field q\nambient 2\npoints\n0 -1 1\n0 0 1\n0 1 1\n1 0 1\nend\n";

    #[test]
    fn ring_file() {
        let InputFile::Ring(r) = parse_input(RING).unwrap() else { panic!() };
        assert_eq!(r.field, FieldSpec::Prime(32003));
        assert_eq!(r.order, MonomialOrder::Lex);
        let i = r.ideal(PrimeField::default_prime()).unwrap();
        assert_eq!(i.gens().len(), 1);
    }

    #[test]
    fn points_file() {
        let InputFile::Points(p) = parse_input(POINTS).unwrap() else { panic!() };
        let ring = p.ring(Rationals).unwrap();
        assert_eq!(p.point_set(&ring).unwrap().len(), 4);
    }

    #[test]
    fn malformed_files() {
        for bad in [
            "vars x\ngens\nx\nend\n",
            "field fp seven\nvars x\ngens\nx\nend\n",
            "field q\nvars x\ngens\nx\n",
            "field q\nambient 2\npoints\n1 2\nend\n",
            "field q\nvars x\norder weird\ngens\nx\nend\n",
            "field q\nambient 1\nvars x\npoints\n1 0\nend\n",
        ] {
            assert!(parse_input(bad).is_err(), "{bad}");
        }
        let InputFile::Ring(r) = parse_input("field q\nvars x\ngens\nx +\nend\n").unwrap() else { panic!() };
        assert!(matches!(r.ideal(Rationals), Err(InputError::Syntax { line: 4, .. })));
    }
}

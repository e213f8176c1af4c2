//! Line-oriented space files.
//!
//! ```text
//! space K3
//! mode lukasiewicz 8
//! points p q r
//! lambda {q} : p=2 q=0
//! lambda {r} : q=2 r=0
//! ```
//!
//! `#` starts a comment. Within a row, omitted points are bottom, except
//! that a singleton row `{y}` defaults to top at `y`. Rows that are not given
//! at all are completed: a missing singleton row is `θ_{y}`, and a missing
//! larger row is the meet of the singleton rows of its points.

use std::collections::BTreeMap;

use crate::cap::CapSpace;
use crate::error::{Error, Result};
use crate::finset::{Carrier, Subset};
use crate::quantale::{QuantaleMode, QuantaleValue};

/// A parsed file: the optional `space` name and the validated space.
#[derive(Clone, Debug)]
pub struct SpaceFile {
    pub name: Option<String>,
    pub space: CapSpace,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses and validates a space file.
pub fn parse_space(text: &str) -> Result<CapSpace> {
    Ok(parse_space_file(text)?.space)
}

pub fn parse_space_file(text: &str) -> Result<SpaceFile> {
    let mut name = None;
    let mut mode: Option<QuantaleMode> = None;
    let mut carrier: Option<Carrier> = None;
    let mut rows: BTreeMap<Subset, (usize, Vec<QuantaleValue>)> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "space" => {
                if name.is_some() {
                    return Err(err(line, "duplicate `space` line"));
                }
                if rest.is_empty() {
                    return Err(err(line, "`space` needs a name"));
                }
                name = Some(rest.to_string());
            }
            "mode" => {
                if mode.is_some() {
                    return Err(err(line, "duplicate `mode` line"));
                }
                mode = Some(QuantaleMode::parse(rest).map_err(|e| err(line, e.to_string()))?);
            }
            "points" => {
                if carrier.is_some() {
                    return Err(err(line, "duplicate `points` line"));
                }
                let c = Carrier::new(rest.split_whitespace()).map_err(|e| err(line, e.to_string()))?;
                if c.len() > crate::cap::MAX_CAP_POINTS {
                    return Err(err(line, format!("{} points, at most {}", c.len(), crate::cap::MAX_CAP_POINTS)));
                }
                carrier = Some(c);
            }
            "lambda" => {
                let (Some(mode), Some(carrier)) = (mode, carrier.as_ref()) else {
                    return Err(err(line, "`lambda` before `mode` and `points`"));
                };
                let (base, values) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line, "expected `lambda {..} : point=value ...`"))?;
                let base = carrier.parse_subset(base).map_err(|e| err(line, e.to_string()))?;
                if base.is_empty() {
                    return Err(err(line, "filter base must be nonempty"));
                }
                let mut row = vec![mode.bottom(); carrier.len()];
                if base.len() == 1 {
                    row[base.points().next().expect("singleton")] = mode.top();
                }
                for token in values.split_whitespace() {
                    let (p, v) = token
                        .split_once('=')
                        .ok_or_else(|| err(line, format!("expected point=value, got `{token}`")))?;
                    let x = carrier
                        .index_of(p)
                        .ok_or_else(|| err(line, format!("unknown point `{p}`")))?;
                    row[x] = mode.parse_value(v).map_err(|e| err(line, e.to_string()))?;
                }
                if let Some((first, _)) = rows.insert(base, (line, row)) {
                    return Err(err(line, format!("row {} already given on line {first}", carrier.render(base))));
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let mode = mode.ok_or_else(|| err(last, "missing `mode` line"))?;
    let carrier = carrier.ok_or_else(|| err(last, "missing `points` line"))?;
    let singleton: Vec<Vec<QuantaleValue>> = (0..carrier.len())
        .map(|y| match rows.get(&Subset::singleton(y)) {
            Some((_, row)) => row.clone(),
            None => (0..carrier.len()).map(|x| if x == y { mode.top() } else { mode.bottom() }).collect(),
        })
        .collect();
    let space = CapSpace::from_table(&carrier, mode, |b, x| match rows.get(&b) {
        Some((_, row)) => row[x].clone(),
        None => mode.meet(b.points().map(|y| &singleton[y][x])),
    })?;
    if let Some(v) = space.validate().first() {
        return Err(Error::Axiom(space.describe_axiom(v)));
    }
    Ok(SpaceFile { name, space })
}

/// Renders a space so that [`parse_space`] gives it back: every singleton
/// row, plus each larger row that differs from its completion.
pub fn render_space(space: &CapSpace, name: Option<&str>) -> String {
    let c = space.carrier();
    let mode = space.mode();
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("space {name}\n"));
    }
    out.push_str(&format!("mode {mode}\npoints {c}\n"));
    for b in c.nonempty_subsets() {
        let row = space.row(b);
        if b.len() > 1 {
            let completion = (0..c.len()).all(|x| {
                row.get(x) == &mode.meet(b.points().map(|y| space.lambda(Subset::singleton(y), x)))
            });
            if completion {
                continue;
            }
        }
        out.push_str(&format!("lambda {} : {}\n", c.render(b), row.render()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::VMatrix;

    const K3: &str = "space K3\nmode lukasiewicz 8   # distances\npoints p q r\nlambda {q} : p=2 q=0\nlambda {r} : q=2 r=0\n";

    fn k3() -> CapSpace {
        let c = Carrier::new(["p", "q", "r"]).unwrap();
        let mode = QuantaleMode::Lukasiewicz(8);
        let m = VMatrix::from_fn(mode, 3, |x, y| {
            let d = if x == y { 0 } else if (x, y) == (0, 1) || (x, y) == (1, 2) { 2 } else { 8 };
            mode.chain(d).unwrap()
        });
        CapSpace::from_matrix(&c, &m).unwrap()
    }

    #[test]
    fn parses_k3() {
        let file = parse_space_file(K3).unwrap();
        assert_eq!(file.name.as_deref(), Some("K3"));
        assert_eq!(file.space, k3());
    }

    #[test]
    fn missing_diagonal_defaults_to_top() {
        let s = parse_space("mode lukasiewicz 8\npoints p q r\nlambda {q} : p=2\nlambda {r} : q=2\n").unwrap();
        assert_eq!(s, k3());
    }

    #[test]
    fn round_trip() {
        let s = k3();
        assert_eq!(parse_space(&render_space(&s, Some("K3"))).unwrap(), s);
        let text = "mode unit-rational\npoints p q\nlambda {q} : p=1/2\nlambda {p,q} : \n";
        let n2 = parse_space(text).unwrap();
        let rendered = render_space(&n2, None);
        assert!(rendered.contains("lambda {p,q}"));
        assert_eq!(parse_space(&rendered).unwrap(), n2);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_space("mode lukasiewicz 8\npoints p q\nlambda {q} : p=9\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_space("mode lukasiewicz 8\npoints p q\nlambda {s} : p=1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_space("mode lukasiewicz 8\npoints p q\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(matches!(parse_space("points p\n"), Err(Error::Parse { .. })));
        let e = parse_space("mode lukasiewicz 8\npoints p q\nlambda {p} : p=1\n").unwrap_err();
        assert!(matches!(e, Error::Axiom(_)));
    }
}

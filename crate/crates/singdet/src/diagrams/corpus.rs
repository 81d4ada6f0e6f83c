//! Bundled link corpus: one `.link` file per link.
//!
//! ```text
//! # comment
//! name: 3_1
//! components: 1
//! pd: [[1,5,2,4],[3,1,4,6],[5,3,6,2]]
//! braid: 1 1 1
//! jones: t+ t^3-t^4
//! seifert:
//! 2
//! -1 0
//! -1 -1
//! ```
//!
//! `seifert:` and `form:` open matrix blocks in the matrix text format (or
//! a nested list on one line) that run until the next `key:` line. A record
//! with a braid but no `pd:` gets the braid closure as its diagram
//! (`strands:` overrides the width), and `reverse: k ...` flips the listed
//! components. Any other key is kept verbatim in `extra`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{parse_pd, LinkDiagram};
use crate::error::{Error, Result};
use crate::exactlinalg::{parse_matrix, IntMatrix, SymMatrix};
use crate::seifert::SeifertData;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "SINGDET_CORPUS";

#[derive(Debug, Clone)]
pub struct LinkRecord {
    pub name: String,
    pub components: Option<usize>,
    pub diagram: Option<LinkDiagram>,
    pub braid: Option<Vec<i64>>,
    pub seifert: Option<SeifertData>,
    /// A symmetrized Seifert matrix given directly.
    pub form: Option<SymMatrix>,
    pub extra: BTreeMap<String, String>,
}

impl LinkRecord {
    /// Symmetric form from the Seifert matrix if present, else the given form.
    pub fn symmetric_form(&self) -> Option<SymMatrix> {
        self.seifert
            .as_ref()
            .map(|a| a.symmetrized().clone())
            .or_else(|| self.form.clone())
    }

    /// Crossing number if the record has a diagram.
    pub fn crossings(&self) -> Option<usize> {
        self.diagram.as_ref().map(LinkDiagram::crossing_count)
    }

    pub fn parse(text: &str) -> Result<LinkRecord> {
        let mut fields: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            match t.split_once(':') {
                Some((k, v)) if !k.trim().is_empty() && k.trim().chars().all(|c| c.is_alphanumeric() || c == '_') => {
                    fields.push((k.trim().to_string(), v.trim().to_string()));
                }
                _ => match fields.last_mut() {
                    Some((_, v)) => {
                        v.push('\n');
                        v.push_str(t);
                    }
                    None => return Err(Error::Parse(format!("line outside any field: {t:?}"))),
                },
            }
        }
        let mut reversed: Vec<usize> = Vec::new();
        let mut rec = LinkRecord {
            name: String::new(),
            components: None,
            diagram: None,
            braid: None,
            seifert: None,
            form: None,
            extra: BTreeMap::new(),
        };
        for (k, v) in fields {
            match k.as_str() {
                "name" => rec.name = v,
                "components" => {
                    rec.components = Some(
                        v.parse()
                            .map_err(|_| Error::Parse(format!("bad component count {v:?}")))?,
                    )
                }
                "pd" => rec.diagram = Some(parse_pd(&v)?),
                "braid" => {
                    rec.braid = Some(
                        v.split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad generator {s:?}"))))
                            .collect::<Result<_>>()?,
                    )
                }
                "seifert" => rec.seifert = Some(SeifertData::new(block_matrix(&v)?)?),
                "form" => rec.form = Some(SymMatrix::new(block_matrix(&v)?)?),
                "reverse" => {
                    for t in v.split_whitespace() {
                        reversed.push(t.parse().map_err(|_| Error::Parse(format!("bad component {t:?}")))?);
                    }
                }
                _ => {
                    rec.extra.insert(k, v);
                }
            }
        }
        if rec.name.is_empty() {
            return Err(Error::Missing("record name".into()));
        }
        if rec.diagram.is_none() {
            if let Some(w) = &rec.braid {
                let width = w.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
                let strands = match rec.extra.get("strands") {
                    Some(t) => t.parse().map_err(|_| Error::Parse(format!("bad strand count {t:?}")))?,
                    None => width,
                };
                rec.diagram = Some(LinkDiagram::from_braid(w, strands)?);
            }
        }
        for k in reversed {
            let d = rec
                .diagram
                .as_ref()
                .ok_or_else(|| Error::Missing(format!("{}: reverse needs a diagram", rec.name)))?;
            rec.diagram = Some(d.reverse_component(k)?);
        }
        if let (Some(c), Some(d)) = (rec.components, &rec.diagram) {
            if d.component_count() != c {
                return Err(Error::Diagram(format!(
                    "{}: diagram has {} components, record says {c}",
                    rec.name,
                    d.component_count()
                )));
            }
        }
        Ok(rec)
    }
}

/// Matrix text format, or a nested list such as `[[1, 0], [-1, 1]]`.
fn block_matrix(v: &str) -> Result<IntMatrix> {
    let t = v.trim();
    if !t.starts_with('[') {
        return parse_matrix(t);
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("unbalanced matrix brackets".into()))?;
    let rows: Vec<Vec<i64>> = inner
        .split(']')
        .map(|g| g.trim().trim_start_matches(',').trim().trim_start_matches('['))
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            g.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Parse("matrix is not square".into()));
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// Corpus directory: `$SINGDET_CORPUS` if set, else the bundled one.
pub fn corpus_root() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")))
}

pub fn load_record(path: &Path) -> Result<LinkRecord> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Missing(format!("{}: {e}", path.display())))?;
    LinkRecord::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// All `.link` records under `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<LinkRecord>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Missing(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "link"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_record(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_record() {
        let r = LinkRecord::parse(
            "# trefoil\nname: 3_1\ncomponents: 1\npd: [[1,5,2,4],[3,1,4,6],[5,3,6,2]]\nbraid: 1,1,1\nseifert:\n2\n-1 0\n-1 -1\nform: [[2, 1], [1, 2]]\njones: t+ t^3-t^4\n",
        );
        let r = r.map_err(|e| e.to_string()).unwrap();
        assert_eq!(r.name, "3_1");
        assert_eq!(r.crossings(), Some(3));
        assert_eq!(r.braid.as_deref(), Some(&[1, 1, 1][..]));
        assert_eq!(r.symmetric_form().unwrap().det(), 3.into());
        assert_eq!(r.extra["jones"], "t+ t^3-t^4");
        assert_eq!(r.form.unwrap().det(), 3.into());
    }

    #[test]
    fn rejects_component_mismatch() {
        assert!(LinkRecord::parse("name: x\ncomponents: 2\npd: X(1,1,2,2)\n").is_err());
        assert!(LinkRecord::parse("components: 1\n").is_err());
    }
}

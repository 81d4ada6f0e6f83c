//! Loading link data from matrix files, PD files, corpus records or corpus
//! names.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use singdet::diagrams::{parse_pd, seifert_matrix_from_diagram, LinkDiagram, LinkRecord};
use singdet::exactlinalg::{parse_matrix, SymMatrix};
use singdet::seifert::SeifertData;

/// How to read a bare matrix file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    /// Symmetric with even diagonal means a symmetrized form, anything else
    /// an unsymmetrized Seifert matrix.
    Auto,
    Seifert,
    Form,
}

/// One input, whatever it came from.
#[derive(Debug, Clone)]
pub struct LinkInput {
    pub name: String,
    pub form: Option<SymMatrix>,
    pub seifert: Option<SeifertData>,
    pub diagram: Option<LinkDiagram>,
}

impl LinkInput {
    fn from_record(r: LinkRecord) -> Result<LinkInput> {
        let seifert = match (&r.seifert, &r.diagram) {
            (Some(a), _) => Some(a.clone()),
            (None, Some(d)) if d.is_connected() && r.form.is_none() => {
                Some(seifert_matrix_from_diagram(d).with_context(|| format!("{}: Seifert matrix", r.name))?)
            }
            _ => None,
        };
        let form = seifert.as_ref().map(|a| a.symmetrized().clone()).or(r.form);
        Ok(LinkInput {
            name: r.name,
            form,
            seifert,
            diagram: r.diagram,
        })
    }

    /// The symmetric form, or an error naming the input.
    pub fn require_form(&self) -> Result<&SymMatrix> {
        match &self.form {
            Some(m) => Ok(m),
            None => bail!(
                "{}: no Seifert matrix or form (split diagrams need one given explicitly)",
                self.name
            ),
        }
    }
}

/// Resolves `arg` as a path, or failing that as a record name in `corpus`.
pub fn resolve(arg: &str, corpus: &Path) -> Result<PathBuf> {
    let direct = PathBuf::from(arg);
    if direct.exists() {
        return Ok(direct);
    }
    let named = corpus.join(format!("{arg}.link"));
    if named.exists() {
        return Ok(named);
    }
    bail!("{arg}: no such file, and no record of that name in {}", corpus.display())
}

pub fn load(arg: &str, corpus: &Path, kind: MatrixKind) -> Result<LinkInput> {
    let path = resolve(arg, corpus)?;
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_string());
    parse_input(&text, &stem, kind).with_context(|| format!("parsing {}", path.display()))
}

/// Sniffs the format: corpus record (`key: value` lines), matrix text
/// format (leading size line) or PD code.
pub fn parse_input(text: &str, name: &str, kind: MatrixKind) -> Result<LinkInput> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.contains(':') {
        return LinkInput::from_record(LinkRecord::parse(text)?);
    }
    if first.parse::<usize>().is_ok() {
        let m = parse_matrix(text)?;
        let as_form = match kind {
            MatrixKind::Form => true,
            MatrixKind::Seifert => false,
            MatrixKind::Auto => SymMatrix::new(m.clone()).is_ok_and(|s| s.has_even_diagonal()),
        };
        return Ok(if as_form {
            LinkInput {
                name: name.to_string(),
                form: Some(SymMatrix::new(m)?),
                seifert: None,
                diagram: None,
            }
        } else {
            let a = SeifertData::new(m)?;
            LinkInput {
                name: name.to_string(),
                form: Some(a.symmetrized().clone()),
                seifert: Some(a),
                diagram: None,
            }
        });
    }
    let d = parse_pd(text)?;
    let seifert = if d.is_connected() {
        Some(seifert_matrix_from_diagram(&d)?)
    } else {
        None
    };
    Ok(LinkInput {
        name: name.to_string(),
        form: seifert.as_ref().map(|a| a.symmetrized().clone()),
        seifert,
        diagram: Some(d),
    })
}

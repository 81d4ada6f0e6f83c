//! Invariant and obstruction reports as ordered `key = value` lines.

use std::fmt::Write as _;

use anyhow::{Context, Result};

use singdet::diagrams::{jones_via_bracket, q_via_skein, SKEIN_BUDGET};
use singdet::evaluate::{
    alexander_poly, jones_special_values, q_at_golden_link, AlgebraicValue, JonesSpecialValues,
};
use singdet::linkform::{wall_decompose, LinkingForm, WallDecomposition};
use singdet::obstruct::obstruction_report;
use singdet::seifert::form_invariants;

use crate::input::LinkInput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    /// One `name<TAB>key<TAB>value` line per entry.
    Machine,
}

/// Report for one input. `failed` is set when a built-in cross-check
/// disagrees.
#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub entries: Vec<(String, String)>,
    pub failed: bool,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            entries: Vec::new(),
            failed: false,
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.push(key, if ok { "pass" } else { "FAIL" });
        self.failed |= !ok;
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                let _ = writeln!(out, "== {}", self.name);
                for (k, v) in &self.entries {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            Format::Machine => {
                for (k, v) in &self.entries {
                    let _ = writeln!(out, "{}\t{k}\t{v}", self.name);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub primes: Vec<u64>,
    /// Largest diagram handed to the state-sum and skein oracles.
    pub budget: usize,
}

fn wall_text(w: &WallDecomposition) -> String {
    if w.is_empty() {
        return "trivial".into();
    }
    w.summands()
        .iter()
        .map(|s| format!("{}^{} {}", s.p, s.k, s.kind))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Same values with `V(i)` dropped, for links where the closed forms do not
/// determine it.
fn without_at_i(v: &JonesSpecialValues) -> JonesSpecialValues {
    let mut v = v.clone();
    v.at_i = singdet::evaluate::Cyclotomic::zero();
    v
}

pub fn invariants(input: &LinkInput, cfg: &ReportConfig) -> Result<Report> {
    let m = input.require_form()?;
    let mut r = Report::new(&input.name);
    let mut primes = cfg.primes.clone();
    for p in [3, 5] {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    let b = form_invariants(m, &primes).with_context(|| format!("{}: invariants", input.name))?;
    r.push("components", b.c);
    r.push("size", m.size());
    r.push("det", &b.det);
    r.push("sigma", b.sigma);
    for p in &cfg.primes {
        r.push(format!("d_{p}"), b.d_p[p]);
        r.push(format!("delta_{p}"), b.delta_p[p]);
    }
    let wall = LinkingForm::new(m.clone())
        .and_then(|f| wall_decompose(&f))
        .map(|w| wall_text(&w))
        .unwrap_or_else(|e| format!("n/a ({e})"));
    r.push("wall", wall);

    let closed = jones_special_values(&b, b.delta_p[&3], None)?;
    let diagram = input
        .diagram
        .as_ref()
        .filter(|d| d.crossing_count() <= cfg.budget);
    let bracket = diagram
        .map(|d| jones_via_bracket(d, cfg.budget))
        .transpose()?;
    let from_bracket = bracket.as_ref().map(JonesSpecialValues::from_polynomial);
    for (key, v) in closed.as_array() {
        let shown = match (key, b.c, &from_bracket) {
            ("V(i)", 1, _) => v.to_string(),
            ("V(i)", _, Some(fb)) => fb.at_i.to_string(),
            ("V(i)", _, None) => "n/a".to_string(),
            _ => v.to_string(),
        };
        r.push(key, shown);
    }
    let q = q_at_golden_link(m)?;
    r.push("Q(golden)", &q);
    if let Some(a) = &input.seifert {
        r.push("alexander", alexander_poly(a));
    }
    if let (Some(v), Some(fb)) = (&bracket, &from_bracket) {
        r.push("jones", v);
        let ok = if b.c == 1 {
            *fb == closed
        } else {
            without_at_i(fb) == without_at_i(&closed)
        };
        r.check("bracket_check", ok);
    }
    if let Some(d) = diagram.filter(|d| d.crossing_count() <= SKEIN_BUDGET) {
        let skein = q_via_skein(d, SKEIN_BUDGET)?.eval_golden()?;
        r.check("skein_check", AlgebraicValue::Sqrt5(skein) == q);
    }
    Ok(r)
}

pub fn obstruct(input: &LinkInput, primes: &[u64], format: Format) -> Result<String> {
    let m = input.require_form()?;
    let mut out = String::new();
    if format == Format::Text {
        let _ = writeln!(out, "== {}", input.name);
    }
    for &p in primes {
        let rep = obstruction_report(m, p).with_context(|| format!("{}: p = {p}", input.name))?;
        match format {
            Format::Text => out.push_str(&rep.to_string()),
            Format::Machine => {
                for (k, v) in rep.key_values() {
                    let _ = writeln!(out, "{}\t{k}\t{v}", input.name);
                }
            }
        }
    }
    Ok(out)
}

//! Rendering windowed bracket tables as text, LaTeX or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use num::{One, Signed};
use serde_json::json;

use super::dsl::{Rule, Style};
use super::named::{decompose, window_modes, NamedMode, TableKind};
use super::verify::table_rules;
use super::{ModeAlgebra, ModeElem};
use crate::conformal::GammaParam;
use crate::error::{Error, Result};
use crate::scalars::cyclotomic::rational_to_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Latex,
    Text,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "latex" | "tex" => Ok(ExportFormat::Latex),
            "text" | "txt" => Ok(ExportFormat::Text),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

fn coeff_prefix(q: &num::BigRational, style: Style, first: bool) -> String {
    let sign = if q.is_negative() {
        if style == Style::Text {
            "−"
        } else {
            "-"
        }
    } else if first {
        ""
    } else {
        "+"
    };
    let a = q.abs();
    let mag = if a.is_one() {
        String::new()
    } else if a.is_integer() {
        a.to_integer().to_string()
    } else if style == Style::Latex {
        format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    } else {
        format!("({}/{})", a.numer(), a.denom())
    };
    if first {
        format!("{sign}{mag}")
    } else {
        format!(" {sign} {mag}")
    }
}

/// `x` written in the named basis of `kind`, e.g. `2L_0 + (1/2)c`.
pub fn render_named(kind: TableKind, x: &ModeElem, style: Style) -> Result<String> {
    let parts = decompose(kind, x)?;
    if parts.is_empty() {
        return Ok("0".into());
    }
    let mut out = String::new();
    for (i, (mode, c)) in parts.iter().enumerate() {
        let label = match style {
            Style::Text => mode.to_string(),
            Style::Latex => mode.latex(),
        };
        match c.as_rational() {
            Some(q) => out.push_str(&coeff_prefix(&q, style, i == 0)),
            None => {
                let _ = write!(out, "{}({c})", if i == 0 { "" } else { " + " });
            }
        }
        out.push_str(&label);
    }
    Ok(out)
}

fn windowed(alg: &ModeAlgebra, window: u32) -> Result<Vec<(NamedMode, NamedMode, ModeElem)>> {
    let modes = window_modes(alg.kind(), window, false);
    let mut out = Vec::new();
    for (i, x) in modes.iter().enumerate() {
        for y in &modes[i..] {
            out.push((*x, *y, alg.bracket_named(x, y)?));
        }
    }
    Ok(out)
}

fn rule_line(r: &Rule, style: Style) -> String {
    let s = r.render(style);
    match (r.suspect, style) {
        (false, _) => s,
        (true, Style::Text) => format!("{s}    (suspect)"),
        (true, Style::Latex) => format!("{s} \\quad\\text{{(suspect)}}"),
    }
}

fn title(kind: TableKind, window: u32, gamma: &Option<String>) -> String {
    match gamma {
        Some(g) => format!("{kind} table, window {window}, gamma = {g}"),
        None => format!("{kind} table, window {window}"),
    }
}

/// Renders the rules and every windowed bracket `[x, y]` with `x ≤ y`.
pub fn export_table(kind: TableKind, window: u32, gamma: &GammaParam, format: &str) -> Result<String> {
    let format: ExportFormat = format.parse()?;
    let alg = ModeAlgebra::new(kind, gamma)?;
    let gamma_s = alg.gamma().map(rational_to_string);
    let rules = table_rules(kind)?;
    let entries = windowed(&alg, window)?;
    match format {
        ExportFormat::Text => {
            let mut out = format!("# {}\n\n## relations\n", title(kind, window, &gamma_s));
            for r in &rules {
                let _ = writeln!(out, "{}", rule_line(r, Style::Text));
            }
            out.push_str("\n## brackets\n");
            for (x, y, b) in &entries {
                if !b.is_zero() {
                    let _ = writeln!(out, "[{x}, {y}] = {}", render_named(kind, b, Style::Text)?);
                }
            }
            Ok(out)
        }
        ExportFormat::Latex => {
            let mut out = String::from(
                "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\allowdisplaybreaks\n\\begin{document}\n",
            );
            let _ = writeln!(out, "\\section*{{{}}}", title(kind, window, &gamma_s).replace('_', "\\_"));
            out.push_str("\\subsection*{Relations}\n\\begin{align*}\n");
            let lines: Vec<String> = rules.iter().map(|r| format!("&{}", rule_line(r, Style::Latex))).collect();
            out.push_str(&lines.join(",\\\\\n"));
            out.push_str("\n\\end{align*}\n\\subsection*{Brackets}\n");
            let nonzero: Vec<String> = entries
                .iter()
                .filter(|(_, _, b)| !b.is_zero())
                .map(|(x, y, b)| Ok(format!("&[{}, {}] = {}", x.latex(), y.latex(), render_named(kind, b, Style::Latex)?)))
                .collect::<Result<_>>()?;
            if !nonzero.is_empty() {
                out.push_str("\\begin{align*}\n");
                out.push_str(&nonzero.join(",\\\\\n"));
                out.push_str("\n\\end{align*}\n");
            }
            out.push_str("\\end{document}\n");
            Ok(out)
        }
        ExportFormat::Json => {
            let modes: Vec<String> = window_modes(kind, window, false).iter().map(|m| m.to_string()).collect();
            let rules_json: Vec<_> = rules
                .iter()
                .map(|r| json!({"line": r.line, "provenance": r.provenance, "text": r.render(Style::Text), "suspect": r.suspect}))
                .collect();
            let entries_json: Vec<_> = entries
                .iter()
                .map(|(x, y, b)| {
                    let terms: Vec<_> = decompose(kind, b)?
                        .into_iter()
                        .map(|(m, c)| json!({"mode": m.to_string(), "coeff": c.to_string()}))
                        .collect();
                    Ok(json!({"left": x.to_string(), "right": y.to_string(), "bracket": terms}))
                })
                .collect::<Result<_>>()?;
            let doc = json!({
                "kind": kind.name(),
                "window": window,
                "gamma": gamma_s,
                "modes": modes,
                "rules": rules_json,
                "entries": entries_json,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n")
        }
    }
}

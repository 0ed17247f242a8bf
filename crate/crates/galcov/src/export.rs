//! Text exports of group presentations: GAP, Magma, versioned JSON and a
//! plain tagged listing.

use std::fmt::Write as _;
use std::str::FromStr;

use galcov_core::presentation::Relator;
use galcov_core::{GroupPresentation, Word};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const PRESENTATION_SCHEMA: &str = "galcov-presentation/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Gap,
    Magma,
    Json,
    Plain,
}

impl FromStr for ExportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gap" | "gap-text" => Ok(ExportFormat::Gap),
            "magma" | "magma-text" => Ok(ExportFormat::Magma),
            "json" => Ok(ExportFormat::Json),
            "plain" | "text" => Ok(ExportFormat::Plain),
            _ => Err(CliError::UnknownFormat(s.to_string())),
        }
    }
}

/// The JSON document. `seed` is only present in CLI output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

impl PresentationDoc {
    pub fn new(p: &GroupPresentation, seed: Option<u64>) -> Self {
        Self {
            schema: PRESENTATION_SCHEMA.to_string(),
            seed,
            generators: p.generators.clone(),
            relators: p.relators.clone(),
        }
    }
}

/// `x3*x1^-1*x3`, or `identity` for the empty word.
fn product(w: &Word, names: &[String], identity: &str) -> String {
    if w.is_empty() {
        return identity.to_string();
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| {
            let name = &names[l.generator() as usize - 1];
            if l.is_inverse() {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect();
    parts.join("*")
}

fn gap(p: &GroupPresentation) -> String {
    let names = &p.generators;
    let mut s = String::new();
    let quoted: Vec<String> = names.iter().map(|g| format!("\"{g}\"")).collect();
    writeln!(s, "F := FreeGroup({});;", quoted.join(", ")).unwrap();
    for (i, g) in names.iter().enumerate() {
        writeln!(s, "{g} := F.{};;", i + 1).unwrap();
    }
    writeln!(s, "rels := [").unwrap();
    for (i, r) in p.relators.iter().enumerate() {
        let sep = if i + 1 == p.relators.len() { "" } else { "," };
        writeln!(
            s,
            "  {}{sep}  # {} {}",
            product(&r.word, names, "One(F)"),
            r.tag.name(),
            r.label()
        )
        .unwrap();
    }
    writeln!(s, "];;").unwrap();
    writeln!(s, "G := F / rels;;").unwrap();
    s
}

fn magma(p: &GroupPresentation) -> String {
    let names = &p.generators;
    let mut s = String::new();
    writeln!(s, "F<{}> := FreeGroup({});", names.join(", "), names.len()).unwrap();
    writeln!(s, "G := quo< F |").unwrap();
    for (i, r) in p.relators.iter().enumerate() {
        let sep = if i + 1 == p.relators.len() { "" } else { "," };
        writeln!(
            s,
            "  {} = Id(F){sep}  // {} {}",
            product(&r.word, names, "Id(F)"),
            r.tag.name(),
            r.label()
        )
        .unwrap();
    }
    writeln!(s, ">;").unwrap();
    s
}

fn plain(p: &GroupPresentation) -> String {
    let mut s = String::new();
    writeln!(s, "generators {}", p.generator_count()).unwrap();
    for r in &p.relators {
        writeln!(s, "{} {}: {}", r.tag.name(), r.label(), r.word).unwrap();
    }
    s
}

pub fn export(p: &GroupPresentation, format: ExportFormat) -> String {
    export_with_seed(p, format, None)
}

pub fn export_with_seed(p: &GroupPresentation, format: ExportFormat, seed: Option<u64>) -> String {
    match format {
        ExportFormat::Gap => gap(p),
        ExportFormat::Magma => magma(p),
        ExportFormat::Plain => plain(p),
        ExportFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&PresentationDoc::new(p, seed)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// Parses a JSON export back. The relators are taken verbatim, without
/// re-simplification.
pub fn import_json(text: &str) -> Result<GroupPresentation> {
    let doc: PresentationDoc = serde_json::from_str(text)?;
    if doc.schema != PRESENTATION_SCHEMA {
        return Err(CliError::Schema(format!(
            "expected {PRESENTATION_SCHEMA}, found {}",
            doc.schema
        )));
    }
    let p = GroupPresentation {
        generators: doc.generators,
        relators: doc.relators,
    };
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use galcov_core::presentation::g1_presentation;
    use galcov_core::{DegenerationComplex, GridParams};

    fn g1(m: u32, n: u32) -> GroupPresentation {
        g1_presentation(&DegenerationComplex::build(GridParams::new(m, n).unwrap()))
    }

    #[test]
    fn plain_lists_the_quintic() {
        let s = export(&g1(2, 4), ExportFormat::Plain);
        assert!(s
            .lines()
            .any(|l| l == "QUINTIC V6: 9 1 2 1 9 10 15 14 15 10"));
    }

    #[test]
    fn gap_header_and_relator_count() {
        let s = export(&g1(1, 2), ExportFormat::Gap);
        assert!(s.starts_with("F := FreeGroup(\"x1\", \"x2\", \"x3\", \"x4\");;\n"));
        assert_eq!(s.lines().filter(|l| l.contains("  # ")).count(), 10);
    }

    #[test]
    fn json_round_trip() {
        let p = g1(2, 3);
        assert_eq!(import_json(&export(&p, ExportFormat::Json)).unwrap(), p);
    }

    #[test]
    fn unknown_format_and_schema() {
        assert!(matches!(
            "svg".parse::<ExportFormat>(),
            Err(CliError::UnknownFormat(_))
        ));
        let bad = export(&g1(1, 2), ExportFormat::Json).replace(PRESENTATION_SCHEMA, "other/9");
        assert!(matches!(import_json(&bad), Err(CliError::Schema(_))));
    }
}

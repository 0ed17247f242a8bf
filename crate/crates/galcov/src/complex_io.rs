//! JSON and DOT renderings of the degeneration complex.

use std::fmt::Write as _;

use galcov_core::grid::{Edge, Triangle, Vertex};
use galcov_core::{DegenerationComplex, GridParams};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const COMPLEX_SCHEMA: &str = "galcov-complex/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub m: u32,
    pub n: u32,
    pub triangles: u32,
    pub edges: u32,
    pub vertices: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub schema: String,
    pub seed: u64,
    pub params: ParamsDoc,
    pub triangles: Vec<Triangle>,
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
}

impl ComplexDoc {
    pub fn new(c: &DegenerationComplex, seed: u64) -> Self {
        let p = c.params;
        Self {
            schema: COMPLEX_SCHEMA.to_string(),
            seed,
            params: ParamsDoc {
                m: p.m(),
                n: p.n(),
                triangles: p.triangle_count(),
                edges: p.edge_count(),
                vertices: p.vertex_count(),
            },
            triangles: c.triangles.clone(),
            edges: c.edges.clone(),
            vertices: c.vertices.clone(),
        }
    }

    /// Rebuilds the complex and checks that it matches the document.
    pub fn to_complex(&self) -> Result<DegenerationComplex> {
        if self.schema != COMPLEX_SCHEMA {
            return Err(CliError::Schema(format!(
                "expected {COMPLEX_SCHEMA}, found {}",
                self.schema
            )));
        }
        let c = DegenerationComplex::build(GridParams::new(self.params.m, self.params.n)?);
        if c.triangles != self.triangles || c.edges != self.edges || c.vertices != self.vertices {
            return Err(CliError::Schema(
                "complex does not match its parameters".into(),
            ));
        }
        Ok(c)
    }
}

pub fn complex_json(c: &DegenerationComplex, seed: u64) -> String {
    let mut s = serde_json::to_string_pretty(&ComplexDoc::new(c, seed)).expect("serializable");
    s.push('\n');
    s
}

/// Dual graph: one node per triangle, one link per edge labelled by its id.
pub fn dual_dot(c: &DegenerationComplex, seed: u64) -> String {
    let g = c.dual_graph();
    let p = c.params;
    let mut s = String::new();
    writeln!(
        s,
        "// galcov dual graph m={} n={} seed={seed}",
        p.m(),
        p.n()
    )
    .unwrap();
    writeln!(s, "graph dual_{}_{} {{", p.m(), p.n()).unwrap();
    for t in &c.triangles {
        writeln!(s, "  t{} [label=\"{}\"];", t.id, t.id).unwrap();
    }
    for &(e, a, b) in &g.links {
        writeln!(s, "  t{a} -- t{b} [label=\"{e}\"];").unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

/// Human summary: counts and the vertex incidence table.
pub fn complex_text(c: &DegenerationComplex) -> String {
    let p = c.params;
    let mut s = String::new();
    writeln!(
        s,
        "triangles {}  edges {}  vertices {}",
        p.triangle_count(),
        p.edge_count(),
        p.vertex_count()
    )
    .unwrap();
    for v in &c.vertices {
        let edges: Vec<String> = v.edges.iter().map(|e| e.to_string()).collect();
        write!(
            s,
            "V{:<3} {:<8} {:<8} edges {}",
            v.id,
            format!("{:?}", v.kind),
            format!("{:?}", v.subtype),
            edges.join(" ")
        )
        .unwrap();
        if let Some(h) = v.hexagon {
            let cyc: Vec<String> = h.iter().map(|e| e.to_string()).collect();
            write!(s, "  cyclic {}", cyc.join(" ")).unwrap();
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(m: u32, n: u32) -> DegenerationComplex {
        DegenerationComplex::build(GridParams::new(m, n).unwrap())
    }

    #[test]
    fn dot_of_the_smallest_case_is_a_four_cycle() {
        let s = dual_dot(&complex(1, 2), 0);
        assert_eq!(s.matches(" -- ").count(), 4);
        assert_eq!(
            s.lines()
                .filter(|l| l.contains("[label=") && !l.contains("--"))
                .count(),
            4
        );
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let c = complex(2, 3);
        let text = complex_json(&c, 7);
        let doc: ComplexDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_complex().unwrap(), c);
        let keys = [
            "\"schema\"",
            "\"seed\"",
            "\"params\"",
            "\"triangles\"",
            "\"edges\"",
            "\"vertices\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}

//! The degeneration `X_0^{m,n}`: an `m x n` grid of squares on a cylinder,
//! each square split by its up-right diagonal into a lower-right and an
//! upper-left triangle.
//!
//! Numbering (all ids are 1-based):
//!
//! * triangles: `LOWER(k,p) = 2n(k-1) + 2p - 1`, `UPPER(k,p) = 2n(k-1) + 2p`;
//! * row `k` edges: `3n(k-1) + 2p - 1` is the diagonal of square `(k,p)`,
//!   `3n(k-1) + 2p` the vertical on the column boundary `p | p+1` (mod `n`);
//! * level `k` horizontals (`1 <= k < m`): `3n(k-1) + 2n + p`, left to right;
//! * vertices: `V_1..V_n` on the bottom circle, `V_{kn+1}..V_{kn+n}` on the
//!   interior level `k`, `V_{mn+1}..V_{mn+n}` on the top circle.
//!
//! The bottom and top boundary circles carry no branch-curve lines and are
//! not modeled as edges.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridParams {
    m: u32,
    n: u32,
}

impl GridParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 1 || n < 2 {
            return Err(Error::InvalidGrid { m, n });
        }
        Ok(Self { m, n })
    }

    /// Path length of the rational stick curve.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Loop length of the elliptic stick curve.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn x(&self) -> u32 {
        self.m * self.n
    }

    pub fn y(&self) -> u32 {
        self.n * (self.m - 1)
    }

    pub fn z(&self) -> Option<u32> {
        (self.m >= 2).then(|| self.n * (self.m - 2))
    }

    pub fn triangle_count(&self) -> u32 {
        2 * self.m * self.n
    }

    pub fn edge_count(&self) -> u32 {
        3 * self.m * self.n - self.n
    }

    pub fn vertex_count(&self) -> u32 {
        self.n * (self.m + 1)
    }

    pub fn diagonal(&self, row: u32, col: u32) -> u32 {
        3 * self.n * (row - 1) + 2 * col - 1
    }

    /// Vertical edge of row `row` on the boundary `col | col+1`.
    pub fn vertical(&self, row: u32, col: u32) -> u32 {
        3 * self.n * (row - 1) + 2 * col
    }

    /// Horizontal edge on interior level `level`, above square `(level, col)`.
    pub fn horizontal(&self, level: u32, col: u32) -> u32 {
        3 * self.n * (level - 1) + 2 * self.n + col
    }

    pub fn lower(&self, row: u32, col: u32) -> u32 {
        2 * self.n * (row - 1) + 2 * col - 1
    }

    pub fn upper(&self, row: u32, col: u32) -> u32 {
        2 * self.n * (row - 1) + 2 * col
    }

    fn next_col(&self, col: u32) -> u32 {
        col % self.n + 1
    }

    fn prev_col(&self, col: u32) -> u32 {
        if col == 1 {
            self.n
        } else {
            col - 1
        }
    }

    /// Id of the grid point on `level` at boundary `b`, where boundary `b`
    /// is the left side of column `b` (boundary 1 is the seam `n | 1`).
    pub fn point(&self, level: u32, boundary: u32) -> u32 {
        if level == self.m {
            // top points are numbered by the square they close off
            self.m * self.n + (boundary + self.n - 2) % self.n + 1
        } else {
            level * self.n + boundary
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Half {
    /// Lower-right triangle of its square.
    Lower,
    /// Upper-left triangle of its square.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub id: u32,
    pub row: u32,
    pub col: u32,
    pub half: Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeKind {
    Diagonal,
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: u32,
    pub kind: EdgeKind,
    /// Row for diagonals and verticals, level for horizontals.
    pub level: u32,
    /// Column of the square (diagonal, horizontal) or left column of the
    /// boundary (vertical).
    pub position: u32,
    /// The two triangles meeting along this edge, smaller id first.
    pub triangles: (u32, u32),
    /// Vertex ids of the two endpoints, smaller id first.
    pub endpoints: (u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VertexKind {
    Bottom2,
    Top2,
    Inner6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VertexSubtype {
    Seam,
    Regular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub kind: VertexKind,
    pub subtype: VertexSubtype,
    pub level: u32,
    pub boundary: u32,
    /// Incident edge ids, ascending.
    pub edges: Vec<u32>,
    /// For six-line vertices: incident edges in cyclic dual order, starting
    /// at the smallest label. Consecutive entries share a triangle.
    pub hexagon: Option<[u32; 6]>,
}

/// Incident edges of one vertex, in both sorted and (for six-line vertices)
/// cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexIncidence {
    pub sorted: Vec<u32>,
    pub cyclic: Option<[u32; 6]>,
}

/// The combinatorial degeneration. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationComplex {
    pub params: GridParams,
    pub triangles: Vec<Triangle>,
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
}

pub fn build_complex(params: GridParams) -> DegenerationComplex {
    DegenerationComplex::build(params)
}

impl DegenerationComplex {
    pub fn build(params: GridParams) -> Self {
        let (m, n) = (params.m, params.n);
        let mut triangles = Vec::with_capacity(params.triangle_count() as usize);
        for row in 1..=m {
            for col in 1..=n {
                triangles.push(Triangle {
                    id: params.lower(row, col),
                    row,
                    col,
                    half: Half::Lower,
                });
                triangles.push(Triangle {
                    id: params.upper(row, col),
                    row,
                    col,
                    half: Half::Upper,
                });
            }
        }

        let mut edges = Vec::with_capacity(params.edge_count() as usize);
        let sorted = |a: u32, b: u32| if a <= b { (a, b) } else { (b, a) };
        for row in 1..=m {
            for col in 1..=n {
                let next = params.next_col(col);
                edges.push(Edge {
                    id: params.diagonal(row, col),
                    kind: EdgeKind::Diagonal,
                    level: row,
                    position: col,
                    triangles: sorted(params.lower(row, col), params.upper(row, col)),
                    endpoints: sorted(params.point(row - 1, col), params.point(row, next)),
                });
                edges.push(Edge {
                    id: params.vertical(row, col),
                    kind: EdgeKind::Vertical,
                    level: row,
                    position: col,
                    triangles: sorted(params.lower(row, col), params.upper(row, next)),
                    endpoints: sorted(params.point(row - 1, next), params.point(row, next)),
                });
            }
            if row < m {
                for col in 1..=n {
                    edges.push(Edge {
                        id: params.horizontal(row, col),
                        kind: EdgeKind::Horizontal,
                        level: row,
                        position: col,
                        triangles: sorted(params.upper(row, col), params.lower(row + 1, col)),
                        endpoints: sorted(
                            params.point(row, col),
                            params.point(row, params.next_col(col)),
                        ),
                    });
                }
            }
        }
        edges.sort_by_key(|e| e.id);

        let mut incident: Vec<Vec<u32>> = vec![Vec::new(); params.vertex_count() as usize];
        for e in &edges {
            incident[e.endpoints.0 as usize - 1].push(e.id);
            if e.endpoints.1 != e.endpoints.0 {
                incident[e.endpoints.1 as usize - 1].push(e.id);
            }
        }

        let mut vertices = Vec::with_capacity(params.vertex_count() as usize);
        for level in 0..=m {
            for boundary in 1..=n {
                let id = params.point(level, boundary);
                let (kind, subtype) = if level == 0 {
                    let st = if boundary == 1 {
                        VertexSubtype::Seam
                    } else {
                        VertexSubtype::Regular
                    };
                    (VertexKind::Bottom2, st)
                } else if level == m {
                    (VertexKind::Top2, VertexSubtype::Seam)
                } else {
                    let st = if boundary == 1 {
                        VertexSubtype::Seam
                    } else {
                        VertexSubtype::Regular
                    };
                    (VertexKind::Inner6, st)
                };
                let hexagon = (kind == VertexKind::Inner6).then(|| {
                    let left = params.prev_col(boundary);
                    [
                        params.diagonal(level, left),
                        params.vertical(level, left),
                        params.horizontal(level, boundary),
                        params.diagonal(level + 1, boundary),
                        params.vertical(level + 1, left),
                        params.horizontal(level, left),
                    ]
                });
                let mut inc = core::mem::take(&mut incident[id as usize - 1]);
                inc.sort_unstable();
                vertices.push(Vertex {
                    id,
                    kind,
                    subtype,
                    level,
                    boundary,
                    edges: inc,
                    hexagon,
                });
            }
        }
        vertices.sort_by_key(|v| v.id);

        Self {
            params,
            triangles,
            edges,
            vertices,
        }
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn edge(&self, id: u32) -> Result<&Edge> {
        id.checked_sub(1)
            .and_then(|i| self.edges.get(i as usize))
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn vertex(&self, id: u32) -> Result<&Vertex> {
        id.checked_sub(1)
            .and_then(|i| self.vertices.get(i as usize))
            .ok_or(Error::UnknownVertex(id))
    }

    pub fn triangle(&self, id: u32) -> Result<&Triangle> {
        id.checked_sub(1)
            .and_then(|i| self.triangles.get(i as usize))
            .ok_or(Error::UnknownTriangle(id))
    }

    pub fn vertex_incidence(&self, id: u32) -> Result<VertexIncidence> {
        let v = self.vertex(id)?;
        Ok(VertexIncidence {
            sorted: v.edges.clone(),
            cyclic: v.hexagon,
        })
    }

    pub fn edge_triangles(&self, id: u32) -> Result<(u32, u32)> {
        Ok(self.edge(id)?.triangles)
    }

    /// True when the two edges border a common triangle.
    pub fn share_triangle(&self, a: u32, b: u32) -> Result<bool> {
        let (x, y) = (self.edge(a)?.triangles, self.edge(b)?.triangles);
        Ok(a != b && (x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1))
    }

    /// Number of geometric vertices the two edges have in common (0, 1 or 2).
    pub fn shared_vertices(&self, a: u32, b: u32) -> Result<usize> {
        let (x, y) = (self.edge(a)?.endpoints, self.edge(b)?.endpoints);
        let xs = [x.0, x.1];
        Ok(xs.iter().filter(|p| **p == y.0 || **p == y.1).count())
    }

    pub fn inner_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Inner6)
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::from_complex(self)
    }

    pub fn cycle_inventory(&self) -> CycleInventory {
        CycleInventory::from_complex(self)
    }

    /// Renumber triangles by `relabel[old - 1] = new`. Edge and vertex ids
    /// are unchanged; only the triangle pairs on edges move.
    pub fn relabel_triangles(&self, relabel: &[u32]) -> Result<Self> {
        let count = self.params.triangle_count();
        let mut seen = vec![false; count as usize];
        if relabel.len() != count as usize {
            return Err(Error::InvalidRelabeling(count));
        }
        for &t in relabel {
            if t == 0 || t > count || core::mem::replace(&mut seen[t as usize - 1], true) {
                return Err(Error::InvalidRelabeling(count));
            }
        }
        let map = |t: u32| relabel[t as usize - 1];
        let mut out = self.clone();
        for t in &mut out.triangles {
            t.id = map(t.id);
        }
        out.triangles.sort_by_key(|t| t.id);
        for e in &mut out.edges {
            let (a, b) = (map(e.triangles.0), map(e.triangles.1));
            e.triangles = (a.min(b), a.max(b));
        }
        Ok(out)
    }
}

/// Nodes are triangles, links are edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: u32,
    /// `(edge id, triangle, triangle)`, ordered by edge id.
    pub links: Vec<(u32, u32, u32)>,
    /// Per node (index `t - 1`): incident edge ids, ascending.
    pub adjacency: Vec<Vec<u32>>,
}

impl DualGraph {
    fn from_complex(c: &DegenerationComplex) -> Self {
        let node_count = c.params.triangle_count();
        let mut adjacency = vec![Vec::new(); node_count as usize];
        let mut links = Vec::with_capacity(c.edges.len());
        for e in &c.edges {
            links.push((e.id, e.triangles.0, e.triangles.1));
            adjacency[e.triangles.0 as usize - 1].push(e.id);
            adjacency[e.triangles.1 as usize - 1].push(e.id);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Self {
            node_count,
            links,
            adjacency,
        }
    }

    pub fn degree(&self, node: u32) -> usize {
        self.adjacency[node as usize - 1].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut parent: Vec<u32> = (0..self.node_count).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut comps = self.node_count;
        for &(_, a, b) in &self.links {
            let (ra, rb) = (find(&mut parent, a - 1), find(&mut parent, b - 1));
            if ra != rb {
                parent[ra as usize] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// `links - nodes + 1` for a connected graph.
    pub fn cycle_rank(&self) -> usize {
        self.links.len() + 1 - self.node_count as usize
    }

    /// Degree-3 nodes with their three incident edges.
    pub fn forks(&self) -> Vec<(u32, [u32; 3])> {
        self.adjacency
            .iter()
            .enumerate()
            .filter(|(_, a)| a.len() == 3)
            .map(|(i, a)| (i as u32 + 1, [a[0], a[1], a[2]]))
            .collect()
    }

    /// The edge joining two triangles, if any.
    pub fn link_between(&self, a: u32, b: u32) -> Option<u32> {
        self.adjacency[a as usize - 1]
            .iter()
            .copied()
            .find(|e| self.adjacency[b as usize - 1].contains(e))
    }
}

/// The hexagonal dual cycle around one six-line vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hexagon {
    pub vertex: u32,
    pub level: u32,
    pub subtype: VertexSubtype,
    /// Local labels `a < b < c < d < e < f`.
    pub sorted: [u32; 6],
    /// Cyclic dual order: `(a,b,d,f,e,c)` for regular vertices and
    /// `(a,b,c,e,f,d)` at the seam.
    pub cyclic: [u32; 6],
}

impl Hexagon {
    pub fn labels(&self) -> Labels {
        let [a, b, c, d, e, f] = self.sorted;
        Labels { a, b, c, d, e, f }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Labels {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub f: u32,
}

/// A horizontal dual cycle `H_k`: the `2n` row-`k` diagonals and verticals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCycle {
    pub row: u32,
    pub edges: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleInventory {
    pub hexagons: Vec<Hexagon>,
    pub h_cycles: Vec<HCycle>,
}

impl CycleInventory {
    fn from_complex(c: &DegenerationComplex) -> Self {
        let hexagons = c
            .inner_vertices()
            .map(|v| {
                let mut sorted = [0u32; 6];
                sorted.copy_from_slice(&v.edges);
                Hexagon {
                    vertex: v.id,
                    level: v.level,
                    subtype: v.subtype,
                    sorted,
                    cyclic: v.hexagon.expect("inner vertex carries a hexagon"),
                }
            })
            .collect();
        let p = c.params;
        let h_cycles = (1..=p.m)
            .map(|row| {
                let start = 3 * p.n * (row - 1);
                HCycle {
                    row,
                    edges: (start + 1..=start + 2 * p.n).collect(),
                }
            })
            .collect();
        Self { hexagons, h_cycles }
    }

    pub fn hexagon_at(&self, vertex: u32) -> Option<&Hexagon> {
        self.hexagons.iter().find(|h| h.vertex == vertex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(m: u32, n: u32) -> DegenerationComplex {
        DegenerationComplex::build(GridParams::new(m, n).unwrap())
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        assert_eq!(
            GridParams::new(0, 3),
            Err(Error::InvalidGrid { m: 0, n: 3 })
        );
        assert_eq!(
            GridParams::new(2, 1),
            Err(Error::InvalidGrid { m: 2, n: 1 })
        );
    }

    #[test]
    fn derived_labels() {
        let p = GridParams::new(3, 4).unwrap();
        assert_eq!((p.x(), p.y(), p.z()), (12, 8, Some(4)));
        assert_eq!(GridParams::new(1, 4).unwrap().z(), None);
    }

    #[test]
    fn sizes_of_named_cases() {
        for (m, n, t, e, v) in [(2, 4, 16, 20, 12), (1, 2, 4, 4, 4), (3, 5, 30, 40, 20)] {
            let c = complex(m, n);
            assert_eq!(
                (c.triangles.len(), c.edges.len(), c.vertices.len()),
                (t, e, v)
            );
        }
    }

    #[test]
    fn ids_are_dense_and_ordered() {
        let c = complex(3, 4);
        for (i, e) in c.edges.iter().enumerate() {
            assert_eq!(e.id as usize, i + 1);
        }
        for (i, t) in c.triangles.iter().enumerate() {
            assert_eq!(t.id as usize, i + 1);
        }
        for (i, v) in c.vertices.iter().enumerate() {
            assert_eq!(v.id as usize, i + 1);
        }
    }

    #[test]
    fn vertex_incidence_matches_the_2_4_lists() {
        let c = complex(2, 4);
        assert_eq!(c.vertex_incidence(5).unwrap().sorted, [7, 8, 9, 12, 13, 20]);
        assert_eq!(c.vertex_incidence(6).unwrap().sorted, [1, 2, 9, 10, 14, 15]);
        assert_eq!(c.vertex_incidence(1).unwrap().sorted, [1, 8]);
        assert_eq!(
            c.vertex_incidence(6).unwrap().cyclic,
            Some([1, 2, 10, 15, 14, 9])
        );
        assert_eq!(
            c.vertex_incidence(5).unwrap().cyclic,
            Some([7, 8, 9, 13, 20, 12])
        );
        assert_eq!(c.vertex_incidence(13), Err(Error::UnknownVertex(13)));
        assert_eq!(c.vertex_incidence(0), Err(Error::UnknownVertex(0)));
    }

    #[test]
    fn edge_triangles_of_named_edges() {
        assert_eq!(complex(2, 4).edge_triangles(1).unwrap(), (1, 2));
        assert_eq!(complex(2, 4).edge_triangles(9).unwrap(), (2, 9));
        assert_eq!(complex(1, 2).edge_triangles(2).unwrap(), (1, 4));
        assert_eq!(complex(1, 2).edge_triangles(5), Err(Error::UnknownEdge(5)));
    }

    #[test]
    fn dual_graph_examples() {
        let g = complex(2, 4).dual_graph();
        assert_eq!((g.node_count, g.links.len(), g.cycle_rank()), (16, 20, 5));
        assert!(g.is_connected());

        let g = complex(1, 2).dual_graph();
        assert!(g.is_connected());
        assert!((1..=4).all(|t| g.degree(t) == 2));
        assert_eq!(g.cycle_rank(), 1);

        let g = complex(3, 3).dual_graph();
        assert!(g.is_connected());
        assert!((1..=g.node_count).all(|t| matches!(g.degree(t), 2 | 3)));
        assert_eq!(g.forks().len(), 12);
    }

    #[test]
    fn cycle_inventory_examples() {
        let inv = complex(2, 4).cycle_inventory();
        assert_eq!(inv.hexagons.len(), 4);
        assert_eq!(inv.h_cycles[0].edges, (1..=8).collect::<Vec<_>>());
        assert_eq!(inv.h_cycles[1].edges, (13..=20).collect::<Vec<_>>());

        let inv = complex(1, 5).cycle_inventory();
        assert!(inv.hexagons.is_empty());
        assert_eq!(inv.h_cycles.len(), 1);
        assert_eq!(inv.h_cycles[0].edges, (1..=10).collect::<Vec<_>>());

        let inv = complex(3, 4).cycle_inventory();
        assert_eq!(inv.hexagons.len(), 8);
        let firsts: Vec<u32> = inv.h_cycles.iter().map(|h| h.edges[0]).collect();
        assert_eq!(firsts, [1, 13, 25]);
    }

    #[test]
    fn hexagon_cyclic_order_matches_the_vertex_labelings() {
        for (m, n) in [(2, 2), (2, 3), (3, 4), (4, 6)] {
            for h in complex(m, n).cycle_inventory().hexagons {
                let [a, b, c, d, e, f] = h.sorted;
                let expected = match h.subtype {
                    VertexSubtype::Regular => [a, b, d, f, e, c],
                    VertexSubtype::Seam => [a, b, c, e, f, d],
                };
                assert_eq!(h.cyclic, expected, "vertex {} of ({m},{n})", h.vertex);
            }
        }
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let c = complex(1, 2);
        assert!(c.relabel_triangles(&[1, 2, 3]).is_err());
        assert!(c.relabel_triangles(&[1, 1, 2, 3]).is_err());
        let r = c.relabel_triangles(&[4, 3, 2, 1]).unwrap();
        assert_eq!(r.edge_triangles(1).unwrap(), (3, 4));
    }
}

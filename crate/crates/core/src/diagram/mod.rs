//! Van Kampen diagrams as half-edge (doubly connected edge list) maps.
//!
//! Conventions:
//!
//! * `label(h)` is read when `h` is traversed from `origin(h)` to
//!   `origin(twin(h))`; `label(twin(h)) = label(h)⁻¹`.
//! * Faces are the orbits of `next`. Face ids number the orbits in order of
//!   their smallest half-edge id.
//! * Vertices are the orbits of `next ∘ twin`; every half-edge of an orbit
//!   carries the same `origin`.
//! * The boundary word is read along the outer face orbit, starting at the
//!   outer half-edge with the smallest id among those leaving `basepoint`.
//! * Each bounded face carries exactly one cell; reading its orbit gives a
//!   cyclic conjugate of the relator word or of its inverse.
//!
//! A diagram with no half-edges is a single vertex with boundary `ε`.

mod annuli;
pub(crate) mod bands;
pub(crate) mod builder;
mod census;
mod reduce;
mod render;
mod validate;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::presentation::RelatorId;
use crate::word::{Letter, Word};

pub use annuli::{detect_annuli, Annulus, AnnulusKind};
pub use bands::{trace_bands, Band, LetterClass};
pub use builder::Builder;
pub use census::{count_report, diameter, BoundCheck, CountReport};
pub use reduce::{find_mirror_pair, insert_mirror_pair, is_reduced, reduce_diagram};
pub use render::{to_dot, to_svg};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub id: usize,
    pub twin: usize,
    pub next: usize,
    pub origin: usize,
    pub label: Letter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub face: usize,
    pub relator: RelatorId,
    pub rotation: usize,
}

/// A van Kampen diagram in its serialised form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub vertices: Vec<usize>,
    pub half_edges: Vec<HalfEdge>,
    pub cells: Vec<Cell>,
    pub outer_face: usize,
    pub basepoint: usize,
}

impl Diagram {
    /// The one-vertex diagram.
    pub fn point() -> Self {
        Diagram {
            vertices: vec![0],
            half_edges: Vec::new(),
            cells: Vec::new(),
            outer_face: 0,
            basepoint: 0,
        }
    }

    /// A single cell whose boundary word is `r`'s word (or its inverse).
    pub fn single_cell(r: RelatorId, inverted: bool) -> Self {
        let w = if inverted {
            r.word().inverse()
        } else {
            r.word()
        };
        Builder::polygon(r, &w).finish()
    }

    /// Number of cells.
    pub fn area(&self) -> usize {
        self.cells.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serialises")
    }

    /// Validates and derives the face/vertex structure.
    pub(crate) fn frame(&self) -> Result<Frame<'_>, Error> {
        let report = validate(self);
        if !report.is_valid() {
            return Err(Error::InvalidDiagram(report));
        }
        Ok(Frame::new(self))
    }

    /// Boundary word read from the basepoint.
    pub fn boundary_word(&self) -> Result<Word, Error> {
        Ok(self.frame()?.boundary_word())
    }

    /// Number of boundary edges.
    pub fn perimeter(&self) -> Result<usize, Error> {
        Ok(self.frame()?.boundary.len())
    }
}

/// Derived topology of a diagram whose permutations are consistent.
pub(crate) struct Frame<'a> {
    pub d: &'a Diagram,
    pub face_of: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub cell_of_face: Vec<Option<usize>>,
    pub vertex_index: HashMap<usize, usize>,
    pub boundary: Vec<usize>,
}

/// Orbits of `next`, numbered by smallest member.
pub(crate) fn face_orbits(half_edges: &[HalfEdge]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut face_of = vec![usize::MAX; half_edges.len()];
    let mut faces = Vec::new();
    for start in 0..half_edges.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut orbit = Vec::new();
        let mut h = start;
        loop {
            face_of[h] = f;
            orbit.push(h);
            h = half_edges[h].next;
            if h == start || face_of[h] != usize::MAX {
                break;
            }
        }
        faces.push(orbit);
    }
    (face_of, faces)
}

impl<'a> Frame<'a> {
    pub fn new(d: &'a Diagram) -> Self {
        let (face_of, faces) = face_orbits(&d.half_edges);
        let mut cell_of_face = vec![None; faces.len()];
        for (c, cell) in d.cells.iter().enumerate() {
            cell_of_face[cell.face] = Some(c);
        }
        let vertex_index = d
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let boundary = if d.half_edges.is_empty() {
            Vec::new()
        } else {
            let start = faces[d.outer_face]
                .iter()
                .copied()
                .filter(|&h| d.half_edges[h].origin == d.basepoint)
                .min()
                .expect("basepoint on outer face");
            let mut b = vec![start];
            let mut h = d.half_edges[start].next;
            while h != start {
                b.push(h);
                h = d.half_edges[h].next;
            }
            b
        };
        Frame {
            d,
            face_of,
            faces,
            cell_of_face,
            vertex_index,
            boundary,
        }
    }

    pub fn he(&self, h: usize) -> &HalfEdge {
        &self.d.half_edges[h]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.d.half_edges[h].twin
    }

    pub fn label(&self, h: usize) -> Letter {
        self.d.half_edges[h].label
    }

    /// Cell on the face containing `h`, if any.
    pub fn cell_at(&self, h: usize) -> Option<usize> {
        self.cell_of_face[self.face_of[h]]
    }

    /// The orbit of a cell starting at its rotation.
    pub fn cell_orbit(&self, c: usize) -> Vec<usize> {
        self.orbit_from(self.d.cells[c].rotation)
    }

    pub fn orbit_from(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut h = self.d.half_edges[start].next;
        while h != start {
            out.push(h);
            h = self.d.half_edges[h].next;
        }
        out
    }

    pub fn boundary_word(&self) -> Word {
        Word::new(self.boundary.iter().map(|&h| self.label(h)).collect())
    }

    /// Adjacency lists of the 1-skeleton, indexed by vertex position.
    pub fn skeleton(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.d.vertices.len()];
        for h in &self.d.half_edges {
            let u = self.vertex_index[&h.origin];
            let v = self.vertex_index[&self.d.half_edges[h.twin].origin];
            adj[u].push(v);
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_diagram() {
        let d = Diagram::point();
        assert!(validate(&d).is_valid());
        assert_eq!(d.boundary_word().unwrap(), Word::empty());
        assert_eq!(d.area(), 0);
    }

    #[test]
    fn single_cell_boundary() {
        let d = Diagram::single_cell(RelatorId::A1, false);
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.boundary_word().unwrap().to_string(), "TatA");
        let d = Diagram::single_cell(RelatorId::K1, false);
        assert_eq!(d.boundary_word().unwrap().to_string(), "TktAK");
        assert_eq!(d.perimeter().unwrap(), 5);
    }

    #[test]
    fn json_round_trip() {
        let d = Diagram::single_cell(RelatorId::K2, true);
        let text = d.to_json();
        assert!(text.contains("\"relator\":\"R_k2\""));
        assert!(text.contains("\"label\":\"U\"") || text.contains("\"label\":\"u\""));
        let back = Diagram::from_json(&text).unwrap();
        assert_eq!(back, d);
    }
}

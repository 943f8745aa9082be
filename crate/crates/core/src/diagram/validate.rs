//! Structural checks for serialised diagrams.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::presentation::match_relator;
use crate::word::Word;

use super::{face_orbits, Diagram};

/// One failed rule, naming the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    IdMismatch {
        index: usize,
        id: usize,
    },
    DanglingReference {
        half_edge: usize,
    },
    DuplicateVertex {
        vertex: usize,
    },
    UnknownVertex {
        half_edge: usize,
    },
    TwinNotInvolution {
        half_edge: usize,
    },
    TwinLabel {
        half_edge: usize,
    },
    NextNotPermutation {
        half_edge: usize,
    },
    OriginMismatch {
        half_edge: usize,
    },
    SplitVertex {
        vertex: usize,
    },
    IsolatedVertex {
        vertex: usize,
    },
    Disconnected,
    EulerCharacteristic {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    BadOuterFace {
        face: usize,
    },
    OuterFaceHasCell {
        cell: usize,
    },
    FaceWithoutCell {
        face: usize,
    },
    FaceWithManyCells {
        face: usize,
    },
    BadCell {
        cell: usize,
    },
    CellLabel {
        cell: usize,
    },
    BasepointOffBoundary {
        vertex: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match *self {
            IdMismatch { index, id } => write!(f, "half-edge at index {index} has id {id}"),
            DanglingReference { half_edge } => {
                write!(f, "half-edge {half_edge} references a missing half-edge")
            }
            DuplicateVertex { vertex } => write!(f, "vertex {vertex} listed twice"),
            UnknownVertex { half_edge } => {
                write!(f, "half-edge {half_edge} has an unknown origin")
            }
            TwinNotInvolution { half_edge } => {
                write!(f, "twin is not an involution at half-edge {half_edge}")
            }
            TwinLabel { half_edge } => {
                write!(
                    f,
                    "half-edge {half_edge} and its twin carry non-inverse labels"
                )
            }
            NextNotPermutation { half_edge } => {
                write!(f, "half-edge {half_edge} is the next of two half-edges")
            }
            OriginMismatch { half_edge } => {
                write!(
                    f,
                    "origin of next({half_edge}) differs from origin of its twin"
                )
            }
            SplitVertex { vertex } => write!(f, "vertex {vertex} has more than one corner cycle"),
            IsolatedVertex { vertex } => write!(f, "vertex {vertex} has no half-edges"),
            Disconnected => write!(f, "map is not connected"),
            EulerCharacteristic {
                vertices,
                edges,
                faces,
            } => write!(
                f,
                "not planar: V − E + F = {vertices} − {edges} + {faces} ≠ 2"
            ),
            BadOuterFace { face } => write!(f, "outer face {face} does not exist"),
            OuterFaceHasCell { cell } => write!(f, "cell {cell} sits on the outer face"),
            FaceWithoutCell { face } => write!(f, "bounded face {face} carries no cell"),
            FaceWithManyCells { face } => write!(f, "face {face} carries several cells"),
            BadCell { cell } => write!(f, "cell {cell} names a missing face or rotation"),
            CellLabel { cell } => write!(f, "cell {cell}: face label not a relator conjugate"),
            BasepointOffBoundary { vertex } => {
                write!(f, "basepoint {vertex} is not on the outer face")
            }
        }
    }
}

/// Every violation found; empty when the diagram is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a diagram.
pub fn validate(d: &Diagram) -> ValidationReport {
    let mut out = Vec::new();
    let n = d.half_edges.len();

    let mut vertex_set = HashSet::new();
    for &v in &d.vertices {
        if !vertex_set.insert(v) {
            out.push(Violation::DuplicateVertex { vertex: v });
        }
    }
    for (i, h) in d.half_edges.iter().enumerate() {
        if h.id != i {
            out.push(Violation::IdMismatch { index: i, id: h.id });
        }
        if h.twin >= n || h.next >= n {
            out.push(Violation::DanglingReference { half_edge: i });
        }
        if !vertex_set.contains(&h.origin) {
            out.push(Violation::UnknownVertex { half_edge: i });
        }
    }
    // The remaining checks walk the permutations.
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    let mut has_prev = vec![false; n];
    for (i, h) in d.half_edges.iter().enumerate() {
        let t = &d.half_edges[h.twin];
        if h.twin == i || t.twin != i {
            out.push(Violation::TwinNotInvolution { half_edge: i });
        } else if t.label != h.label.inverse() {
            out.push(Violation::TwinLabel { half_edge: i });
        }
        if std::mem::replace(&mut has_prev[h.next], true) {
            out.push(Violation::NextNotPermutation { half_edge: h.next });
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }
    for (i, h) in d.half_edges.iter().enumerate() {
        if d.half_edges[h.next].origin != d.half_edges[h.twin].origin {
            out.push(Violation::OriginMismatch { half_edge: i });
        }
    }

    // corner cycles: one per vertex
    let mut seen = vec![false; n];
    let mut cycles_at: HashMap<usize, usize> = HashMap::new();
    let mut vertex_cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        vertex_cycles += 1;
        *cycles_at.entry(d.half_edges[start].origin).or_default() += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = d.half_edges[d.half_edges[h].twin].next;
        }
    }
    for &v in &d.vertices {
        match cycles_at.get(&v).copied().unwrap_or(0) {
            0 if n > 0 || d.vertices.len() > 1 => out.push(Violation::IsolatedVertex { vertex: v }),
            c if c > 1 => out.push(Violation::SplitVertex { vertex: v }),
            _ => {}
        }
    }

    if n > 0 {
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for x in [d.half_edges[h].twin, d.half_edges[h].next] {
                if !reached[x] {
                    reached[x] = true;
                    count += 1;
                    stack.push(x);
                }
            }
        }
        if count != n {
            out.push(Violation::Disconnected);
        }
    }

    let (_, faces) = face_orbits(&d.half_edges);
    let f = faces.len().max(1);
    let v = if n == 0 {
        d.vertices.len()
    } else {
        vertex_cycles
    };
    let e = n / 2;
    if v + f != e + 2 {
        out.push(Violation::EulerCharacteristic {
            vertices: v,
            edges: e,
            faces: f,
        });
    }

    if d.outer_face >= f {
        out.push(Violation::BadOuterFace { face: d.outer_face });
    }
    let mut cells_on = vec![0usize; f];
    for (c, cell) in d.cells.iter().enumerate() {
        if cell.face >= f || cell.rotation >= n {
            out.push(Violation::BadCell { cell: c });
            continue;
        }
        cells_on[cell.face] += 1;
        if cell.face == d.outer_face {
            out.push(Violation::OuterFaceHasCell { cell: c });
            continue;
        }
        let orbit = &faces[cell.face];
        let Some(at) = orbit.iter().position(|&h| h == cell.rotation) else {
            out.push(Violation::BadCell { cell: c });
            continue;
        };
        let word = Word::new(
            orbit[at..]
                .iter()
                .chain(&orbit[..at])
                .map(|&h| d.half_edges[h].label)
                .collect(),
        );
        if !matches!(match_relator(&word), Some((r, _)) if r == cell.relator) {
            out.push(Violation::CellLabel { cell: c });
        }
    }
    for (face, &k) in cells_on.iter().enumerate() {
        if face == d.outer_face || n == 0 {
            continue;
        }
        if k == 0 {
            out.push(Violation::FaceWithoutCell { face });
        } else if k > 1 {
            out.push(Violation::FaceWithManyCells { face });
        }
    }

    if n == 0 {
        if !vertex_set.contains(&d.basepoint) {
            out.push(Violation::BasepointOffBoundary {
                vertex: d.basepoint,
            });
        }
    } else if d.outer_face < faces.len()
        && !faces[d.outer_face]
            .iter()
            .any(|&h| d.half_edges[h].origin == d.basepoint)
    {
        out.push(Violation::BasepointOffBoundary {
            vertex: d.basepoint,
        });
    }

    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::RelatorId;
    use crate::word::Letter;

    #[test]
    fn flipped_label_is_reported() {
        let mut d = Diagram::single_cell(RelatorId::K1, false);
        assert!(validate(&d).is_valid());
        let h = d.cells[0].rotation;
        let t = d.half_edges[h].twin;
        let l = d.half_edges[h].label;
        d.half_edges[h].label = l.inverse();
        d.half_edges[t].label = l;
        let report = validate(&d);
        assert_eq!(report.violations, vec![Violation::CellLabel { cell: 0 }]);
        assert!(report
            .to_string()
            .contains("face label not a relator conjugate"));
    }

    #[test]
    fn broken_twin_and_euler() {
        let mut d = Diagram::single_cell(RelatorId::A1, false);
        d.half_edges[0].twin = 1;
        assert!(!validate(&d).is_valid());

        let mut d = Diagram::single_cell(RelatorId::A1, false);
        d.cells.clear();
        assert!(matches!(
            validate(&d).violations[..],
            [Violation::FaceWithoutCell { .. }]
        ));

        let mut d = Diagram::point();
        d.vertices.push(1);
        assert!(!validate(&d).is_valid());

        let mut d = Diagram::single_cell(RelatorId::A1, false);
        d.half_edges[0].label = Letter::K;
        assert!(!validate(&d).is_valid());
    }
}

//! Maximal θ-, k- and a-bands.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::word::{Generator, Word};

use super::{Diagram, Frame};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LetterClass {
    Theta,
    K,
    A,
}

impl LetterClass {
    pub const ALL: [LetterClass; 3] = [LetterClass::Theta, LetterClass::K, LetterClass::A];

    pub fn matches(self, g: Generator) -> bool {
        match self {
            LetterClass::Theta => g.is_theta(),
            LetterClass::K => g == Generator::K,
            LetterClass::A => g == Generator::A,
        }
    }
}

impl fmt::Display for LetterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LetterClass::Theta => "theta",
            LetterClass::K => "k",
            LetterClass::A => "a",
        })
    }
}

/// A maximal chain of cells, consecutive ones sharing an edge of the class.
///
/// `side_top` is read inside each cell from the entry edge to the exit edge;
/// `side_bottom` from the exit edge back to the entry edge, in reverse cell
/// order. Around the union of the cells one reads
/// `start · side_top · end · side_bottom` (as half-edges of the cells).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    pub letter_class: LetterClass,
    pub cells: Vec<usize>,
    pub start_edge: Option<usize>,
    pub end_edge: Option<usize>,
    pub closed: bool,
    pub side_top: Vec<usize>,
    pub side_bottom: Vec<usize>,
    /// Entry and exit half-edge of every cell, in band order.
    pub links: Vec<(usize, usize)>,
}

impl Band {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn side_word(d: &Diagram, side: &[usize]) -> Word {
        Word::new(side.iter().map(|&h| d.half_edges[h].label).collect())
    }
}

fn participates(frame: &Frame<'_>, class: LetterClass, c: usize) -> bool {
    let r = frame.d.cells[c].relator;
    match class {
        LetterClass::Theta => true,
        LetterClass::K => r.is_k(),
        LetterClass::A => !r.is_k(),
    }
}

// The two class edges of each participating cell, in orbit order.
fn ports(frame: &Frame<'_>, class: LetterClass, c: usize) -> Vec<usize> {
    frame
        .cell_orbit(c)
        .into_iter()
        .filter(|&h| class.matches(frame.label(h).generator()))
        .collect()
}

// The cell entered by crossing port `h`, with its entry half-edge.
fn cross(frame: &Frame<'_>, class: LetterClass, h: usize) -> Option<(usize, usize)> {
    let g = frame.twin(h);
    let c = frame.cell_at(g)?;
    participates(frame, class, c).then_some((c, g))
}

fn other_port(ports: &[usize], h: usize) -> usize {
    if ports[0] == h {
        ports[1]
    } else {
        ports[0]
    }
}

// Strictly between `from` and `to` along the face orbit.
fn arc(frame: &Frame<'_>, from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut h = frame.he(from).next;
    while h != to {
        out.push(h);
        h = frame.he(h).next;
    }
    out
}

pub(crate) fn trace_in(frame: &Frame<'_>, class: LetterClass) -> Vec<Band> {
    let ncells = frame.d.cells.len();
    let port_table: Vec<Vec<usize>> = (0..ncells)
        .map(|c| {
            if participates(frame, class, c) {
                ports(frame, class, c)
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut visited = vec![false; ncells];
    let mut bands = Vec::new();

    let walk = |start: usize, entry: usize, visited: &mut Vec<bool>| -> Band {
        let mut cells = Vec::new();
        let mut links = Vec::new();
        let (mut c, mut en) = (start, entry);
        let closed = loop {
            visited[c] = true;
            let ex = other_port(&port_table[c], en);
            cells.push(c);
            links.push((en, ex));
            match cross(frame, class, ex) {
                Some((c2, en2)) if c2 == start && en2 == entry => break true,
                Some((c2, en2)) if !visited[c2] => {
                    c = c2;
                    en = en2;
                }
                _ => break false,
            }
        };
        let side_top = links
            .iter()
            .flat_map(|&(en, ex)| arc(frame, en, ex))
            .collect();
        let side_bottom = links
            .iter()
            .rev()
            .flat_map(|&(en, ex)| arc(frame, ex, en))
            .collect();
        Band {
            letter_class: class,
            start_edge: (!closed).then_some(links[0].0),
            end_edge: (!closed).then(|| links[links.len() - 1].1),
            cells,
            closed,
            side_top,
            side_bottom,
            links,
        }
    };

    for c in 0..ncells {
        if visited[c] || port_table[c].len() != 2 {
            continue;
        }
        for &p in &port_table[c] {
            if !visited[c] && cross(frame, class, p).is_none() {
                bands.push(walk(c, p, &mut visited));
            }
        }
    }
    for c in 0..ncells {
        if !visited[c] && port_table[c].len() == 2 {
            bands.push(walk(c, port_table[c][0], &mut visited));
        }
    }
    bands
}

/// Partitions the cells of the class into maximal bands: open bands first,
/// ordered by their first cell, then closed ones.
pub fn trace_bands(d: &Diagram, class: LetterClass) -> Result<Vec<Band>, Error> {
    let frame = d.frame()?;
    Ok(trace_in(&frame, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::RelatorId;

    #[test]
    fn single_cell_bands() {
        let d = Diagram::single_cell(RelatorId::A1, false);
        let a = trace_bands(&d, LetterClass::A).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].cells, vec![0]);
        assert!(!a[0].closed);
        let t = trace_bands(&d, LetterClass::Theta).unwrap();
        assert_eq!(t.len(), 1);
        assert!(trace_bands(&d, LetterClass::K).unwrap().is_empty());

        let d = Diagram::single_cell(RelatorId::K1, false);
        let t = &trace_bands(&d, LetterClass::Theta).unwrap()[0];
        let top = Band::side_word(&d, &t.side_top);
        let bottom = Band::side_word(&d, &t.side_bottom);
        let mut sides = [top.len(), bottom.len()];
        sides.sort();
        assert_eq!(sides, [1, 2]);
        assert!(t
            .side_top
            .iter()
            .chain(&t.side_bottom)
            .all(|&h| !d.half_edges[h].label.is_theta()));
    }
}

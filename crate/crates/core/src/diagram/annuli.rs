//! Detection of single and composite annuli.
//!
//! A closed band is an annulus of its class. A composite `(x, θ)`-annulus is
//! formed by a segment of an open x-band and a segment of an open θ-band
//! that share exactly their first and last cells, provided the disc bounded
//! by the closed chain of cells contains none of the start and end edges of
//! the two bands.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::Error;

use super::bands::{trace_in, Band, LetterClass};
use super::{Diagram, Frame};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnulusKind {
    Theta,
    K,
    A,
    KTheta,
    ATheta,
}

/// An annulus with the closed chain of cells witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annulus {
    pub kind: AnnulusKind,
    pub cells: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

// Closed chain of cells with the entry and exit half-edge in each.
struct Curve {
    cells: Vec<usize>,
    links: Vec<(usize, usize)>,
}

fn arc(frame: &Frame<'_>, from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut h = frame.he(from).next;
    while h != to {
        out.push(h);
        h = frame.he(h).next;
    }
    out
}

/// Side of the curve on which every half-edge of the curve cells and every
/// other face lies; `None` if the curve does not separate cleanly.
struct Regions {
    edge_side: HashMap<usize, Side>,
    face_side: Vec<Option<Side>>,
    inside: Side,
}

fn regions(frame: &Frame<'_>, curve: &Curve) -> Option<Regions> {
    let curve_faces: HashSet<usize> = curve.cells.iter().map(|&c| frame.d.cells[c].face).collect();
    let mut edge_side = HashMap::new();
    let mut face_side: Vec<Option<Side>> = vec![None; frame.faces.len()];
    let mut queue = VecDeque::new();
    for &(en, ex) in &curve.links {
        for (from, to, side) in [(en, ex, Side::Left), (ex, en, Side::Right)] {
            for h in arc(frame, from, to) {
                edge_side.insert(h, side);
                let f = frame.face_of[frame.twin(h)];
                if curve_faces.contains(&f) {
                    continue;
                }
                match face_side[f] {
                    None => {
                        face_side[f] = Some(side);
                        queue.push_back(f);
                    }
                    Some(s) if s != side => return None,
                    _ => {}
                }
            }
        }
    }
    while let Some(f) = queue.pop_front() {
        let side = face_side[f].expect("seeded");
        for &h in &frame.faces[f] {
            let g = frame.face_of[frame.twin(h)];
            if curve_faces.contains(&g) {
                continue;
            }
            match face_side[g] {
                None => {
                    face_side[g] = Some(side);
                    queue.push_back(g);
                }
                Some(s) if s != side => return None,
                _ => {}
            }
        }
    }
    let outside = face_side[frame.d.outer_face]?;
    let inside = if outside == Side::Left {
        Side::Right
    } else {
        Side::Left
    };
    Some(Regions {
        edge_side,
        face_side,
        inside,
    })
}

fn edge_inside(frame: &Frame<'_>, r: &Regions, h: usize) -> bool {
    if let Some(&s) = r.edge_side.get(&h) {
        return s == r.inside;
    }
    r.face_side[frame.face_of[h]] == Some(r.inside)
}

// The curve through x[p..=q] and back along the θ-band from its position
// of x[q] to that of x[p].
fn composite_curve(x: &Band, p: usize, q: usize, t: &Band, tp: usize, tq: usize) -> Curve {
    let mut cells = Vec::new();
    let mut links = Vec::new();
    let towards_p = |i: usize| -> usize {
        if tp < tq {
            t.links[i].0
        } else {
            t.links[i].1
        }
    };
    let from_q = |i: usize| -> usize {
        if tp < tq {
            t.links[i].1
        } else {
            t.links[i].0
        }
    };
    for i in p..=q {
        let en = if i == p { from_q(tp) } else { x.links[i].0 };
        let ex = if i == q { towards_p(tq) } else { x.links[i].1 };
        cells.push(x.cells[i]);
        links.push((en, ex));
    }
    let inner: Vec<usize> = if tp < tq {
        (tp + 1..tq).rev().collect()
    } else {
        (tq + 1..tp).collect()
    };
    for i in inner {
        cells.push(t.cells[i]);
        links.push((from_q(i), towards_p(i)));
    }
    Curve { cells, links }
}

fn composite(
    frame: &Frame<'_>,
    kind: AnnulusKind,
    xs: &[Band],
    thetas: &[Band],
    out: &mut Vec<Annulus>,
) {
    let mut theta_pos: HashMap<usize, (usize, usize)> = HashMap::new();
    for (b, band) in thetas.iter().enumerate() {
        if band.closed {
            continue;
        }
        for (i, &c) in band.cells.iter().enumerate() {
            theta_pos.insert(c, (b, i));
        }
    }
    for x in xs.iter().filter(|b| !b.closed) {
        let mut shared: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (i, c) in x.cells.iter().enumerate() {
            if let Some(&(b, j)) = theta_pos.get(c) {
                shared.entry(b).or_default().push((i, j));
            }
        }
        let mut groups: Vec<_> = shared.into_iter().filter(|(_, v)| v.len() >= 2).collect();
        groups.sort();
        for (b, hits) in groups {
            let t = &thetas[b];
            for (ai, &(p, tp)) in hits.iter().enumerate() {
                for &(q, tq) in &hits[ai + 1..] {
                    let xseg: HashSet<usize> = x.cells[p..=q].iter().copied().collect();
                    let (lo, hi) = (tp.min(tq), tp.max(tq));
                    let common = t.cells[lo..=hi].iter().filter(|c| xseg.contains(c)).count();
                    if common != 2 {
                        continue;
                    }
                    let curve = composite_curve(x, p, q, t, tp, tq);
                    let Some(r) = regions(frame, &curve) else {
                        continue;
                    };
                    let ends = [x.start_edge, x.end_edge, t.start_edge, t.end_edge];
                    if ends.iter().flatten().any(|&h| edge_inside(frame, &r, h)) {
                        continue;
                    }
                    out.push(Annulus {
                        kind,
                        cells: curve.cells,
                    });
                }
            }
        }
    }
}

/// All annuli of a diagram; empty for reduced diagrams.
pub fn detect_annuli(d: &Diagram) -> Result<Vec<Annulus>, Error> {
    let frame = d.frame()?;
    let thetas = trace_in(&frame, LetterClass::Theta);
    let ks = trace_in(&frame, LetterClass::K);
    let as_ = trace_in(&frame, LetterClass::A);
    let mut out = Vec::new();
    for (kind, bands) in [
        (AnnulusKind::Theta, &thetas),
        (AnnulusKind::K, &ks),
        (AnnulusKind::A, &as_),
    ] {
        out.extend(bands.iter().filter(|b| b.closed).map(|b| Annulus {
            kind,
            cells: b.cells.clone(),
        }));
    }
    composite(&frame, AnnulusKind::KTheta, &ks, &thetas, &mut out);
    composite(&frame, AnnulusKind::ATheta, &as_, &thetas, &mut out);
    Ok(out)
}

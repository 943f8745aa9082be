//! Cancellation of mirror pairs.

use crate::error::Error;
use crate::presentation::RelatorId;
use crate::word::Word;

use super::builder::Builder;
use super::Diagram;

fn orbit_labels(b: &Builder, h: usize) -> Vec<crate::word::Letter> {
    let mut out = vec![b.label_of(h)];
    let mut x = b.next_of(h);
    while x != h {
        out.push(b.label_of(x));
        x = b.next_of(x);
    }
    out
}

// Both cells across `h` read, from the shared edge in opposite directions,
// the same word.
fn is_mirror_edge(b: &Builder, h: usize) -> bool {
    let g = b.twin_of(h);
    let (Some(c1), Some(c2)) = (b.cell_of(h), b.cell_of(g)) else {
        return false;
    };
    if c1 == c2 || b.relator_of(c1) != b.relator_of(c2) {
        return false;
    }
    let u = orbit_labels(b, h);
    let v = orbit_labels(b, g);
    let m = u.len();
    m == v.len() && (1..m).all(|j| v[j] == u[m - j].inverse())
}

/// A pair of mirror cells sharing an edge, as cell indices.
pub fn find_mirror_pair(d: &Diagram) -> Result<Option<(usize, usize)>, Error> {
    let b = Builder::from_diagram(d)?;
    Ok((0..b.len()).find(|&h| is_mirror_edge(&b, h)).map(|h| {
        let (x, y) = (
            b.cell_of(h).expect("cell"),
            b.cell_of(b.twin_of(h)).expect("cell"),
        );
        (x.min(y), x.max(y))
    }))
}

pub fn is_reduced(d: &Diagram) -> Result<bool, Error> {
    Ok(find_mirror_pair(d)?.is_none())
}

/// Removes mirror pairs until none is left.
///
/// Each pair is cut out along its shared edge and the resulting hole is
/// zipped shut; spherical components split off in the process are dropped.
/// The boundary word is preserved letter for letter.
pub fn reduce_diagram(d: &Diagram) -> Result<Diagram, Error> {
    let mut b = Builder::from_diagram(d)?;
    let mut work: Vec<usize> = (0..b.len()).rev().collect();
    let mut changed = false;
    while let Some(h) = work.pop() {
        if !b.is_alive(h) || !is_mirror_edge(&b, h) {
            continue;
        }
        changed = true;
        let mut hole = b.open_pair(h);
        while !hole.is_empty() {
            let k = hole.len();
            let i = (0..k)
                .find(|&i| b.label_of(hole[(i + 1) % k]) == b.label_of(hole[i]).inverse())
                .expect("the hole of a mirror pair reads a freely trivial word");
            if let Some((x, _)) = b.fold_in(&mut hole, i) {
                work.push(x);
            }
        }
    }
    Ok(if changed { b.finish() } else { d.clone() })
}

/// Cuts the edge of half-edge `h` open and fills the slit with a cell of
/// `r` glued to its mirror image along all but one edge. The boundary word
/// is unchanged and the area grows by two.
pub fn insert_mirror_pair(d: &Diagram, h: usize, r: RelatorId) -> Result<Diagram, Error> {
    let mut b = Builder::from_diagram(d)?;
    if h >= b.len() {
        return Err(Error::Domain(format!("no half-edge {h}")));
    }
    let x = b.label_of(h);
    let rw = r.word();
    let w = (0..rw.len())
        .map(|i| rw.rotate(i))
        .chain((0..rw.len()).map(|i| rw.inverse().rotate(i)))
        .find(|w| w.first() == Some(x))
        .ok_or_else(|| Error::Domain(format!("{r} has no edge labelled {}", x.ascii())))?;
    let mut disc = Builder::polygon(r, &w);
    let mut copy = Builder::polygon(r, &w);
    copy.mirror();
    let m = w.len();
    disc.glue(1, m - 1, copy, 0);
    debug_assert_eq!(disc.boundary_word(), Word::new(vec![x, x.inverse()]));
    let slit = b.absorb(disc);
    let (p, q) = (slit[0], slit[1]);
    let g = b.twin_of(h);
    let (p_in, q_in) = (b.twin_of(p), b.twin_of(q));
    b.set_twins(h, p_in);
    b.set_twins(g, q_in);
    b.kill(p);
    b.kill(q);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate;

    #[test]
    fn cell_and_mirror_cancel() {
        let r = RelatorId::K1;
        let mut a = Builder::polygon(r, &r.word());
        let mut b = Builder::polygon(r, &r.word());
        b.mirror();
        // glue along the first edge only
        a.glue(0, 1, b, 4);
        let d = a.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.area(), 2);
        assert!(!is_reduced(&d).unwrap());
        let red = reduce_diagram(&d).unwrap();
        assert!(validate(&red).is_valid(), "{}", validate(&red));
        assert_eq!(red.area(), 0);
        assert_eq!(red.boundary_word().unwrap(), d.boundary_word().unwrap());
    }

    #[test]
    fn inserted_pair_is_removed() {
        let d = Diagram::single_cell(RelatorId::A2, false);
        for h in 0..d.half_edges.len() {
            let r = if d.half_edges[h].label.is_theta() {
                RelatorId::A2
            } else {
                RelatorId::K1
            };
            let bigger = insert_mirror_pair(&d, h, r).unwrap();
            assert!(validate(&bigger).is_valid(), "{}", validate(&bigger));
            assert_eq!(bigger.area(), 3);
            assert_eq!(bigger.boundary_word().unwrap(), d.boundary_word().unwrap());
            let back = reduce_diagram(&bigger).unwrap();
            assert_eq!(back.area(), 1);
            assert!(is_reduced(&back).unwrap());
        }
    }
}

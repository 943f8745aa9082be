//! Mutable half-edge maps and the surgery used to assemble diagrams.
//!
//! A [`Builder`] keeps only the `twin`/`next` permutations, labels and cell
//! markers, plus the outer boundary as an explicit list of half-edges read
//! from the base. Vertices and faces are recomputed by [`Builder::finish`],
//! which also discards components not attached to the boundary.

use std::collections::VecDeque;

use crate::error::Error;
use crate::presentation::{match_relator, RelatorId};
use crate::word::{Letter, Word};

use super::{face_orbits, Cell, Diagram, HalfEdge};

#[derive(Clone, Debug, Default)]
pub struct Builder {
    twin: Vec<usize>,
    next: Vec<usize>,
    label: Vec<Letter>,
    cell: Vec<Option<usize>>,
    alive: Vec<bool>,
    // relator and one half-edge of the orbit, per cell; `None` once removed
    cells: Vec<Option<(RelatorId, usize)>>,
    boundary: Vec<usize>,
}

impl Builder {
    /// The one-vertex map.
    pub fn point() -> Self {
        Builder::default()
    }

    /// One cell whose boundary, read from the base, is `w`.
    ///
    /// # Panics
    /// If `w` is not a cyclic conjugate of `r` or of its inverse.
    pub fn polygon(r: RelatorId, w: &Word) -> Self {
        assert!(
            matches!(match_relator(w), Some((id, _)) if id == r),
            "{w} is not a conjugate of {r}"
        );
        let m = w.len();
        let mut b = Builder::point();
        let outer: Vec<usize> = (0..m).map(|_| b.alloc_pair(Letter::A).0).collect();
        for (j, &h) in outer.iter().enumerate() {
            let l = w.letters()[j];
            let c = b.twin[h];
            b.label[h] = l;
            b.label[c] = l.inverse();
            b.next[h] = outer[(j + 1) % m];
            b.next[c] = b.twin[outer[(j + m - 1) % m]];
        }
        let id = b.cells.len();
        b.cells.push(Some((r, b.twin[outer[m - 1]])));
        for &h in &outer {
            let c = b.twin[h];
            b.cell[c] = Some(id);
        }
        b.boundary = outer;
        b
    }

    /// A tree with boundary `w` (which must freely reduce to `ε`).
    pub fn tree(w: &Word) -> Result<Self, Error> {
        if !w.free_reduce().is_empty() {
            return Err(Error::Domain(format!("{w} is not freely trivial")));
        }
        let mut b = Builder::point();
        b.unfold(w);
        Ok(b)
    }

    pub fn from_diagram(d: &Diagram) -> Result<Self, Error> {
        let frame = d.frame()?;
        let n = d.half_edges.len();
        let mut b = Builder {
            twin: d.half_edges.iter().map(|h| h.twin).collect(),
            next: d.half_edges.iter().map(|h| h.next).collect(),
            label: d.half_edges.iter().map(|h| h.label).collect(),
            cell: vec![None; n],
            alive: vec![true; n],
            cells: Vec::with_capacity(d.cells.len()),
            boundary: frame.boundary.clone(),
        };
        for (c, cell) in d.cells.iter().enumerate() {
            b.cells.push(Some((cell.relator, cell.rotation)));
            for &h in &frame.faces[cell.face] {
                b.cell[h] = Some(c);
            }
        }
        Ok(b)
    }

    fn alloc_pair(&mut self, l: Letter) -> (usize, usize) {
        let h = self.twin.len();
        self.twin.extend([h + 1, h]);
        self.next.extend([h + 1, h]);
        self.label.extend([l, l.inverse()]);
        self.cell.extend([None, None]);
        self.alive.extend([true, true]);
        (h, h + 1)
    }

    pub fn boundary_word(&self) -> Word {
        Word::new(self.boundary.iter().map(|&h| self.label[h]).collect())
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn area(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Moves the base `k` places forward along the boundary.
    pub fn rotate_boundary(&mut self, k: usize) {
        if !self.boundary.is_empty() {
            let k = k % self.boundary.len();
            self.boundary.rotate_left(k);
        }
    }

    fn relink_at(&mut self, list: &[usize], pos: usize) {
        if list.is_empty() {
            return;
        }
        let n = list.len();
        let p = pos % n;
        self.next[list[p]] = list[(p + 1) % n];
    }

    /// Inserts a spur labelled `l` before boundary position `pos`.
    pub fn spur(&mut self, pos: usize, l: Letter) {
        let (s, t) = self.alloc_pair(l);
        let n = self.boundary.len();
        assert!(pos <= n);
        if n == 0 {
            self.boundary = vec![s, t];
            self.next[s] = t;
            self.next[t] = s;
            return;
        }
        self.boundary.splice(pos..pos, [s, t]);
        let list = std::mem::take(&mut self.boundary);
        self.relink_at(&list, pos + n + 1);
        self.relink_at(&list, pos);
        self.relink_at(&list, pos + 1);
        self.boundary = list;
    }

    /// Turns a freely reduced boundary `reduce(w)` into exactly `w` by
    /// inserting spurs.
    ///
    /// # Panics
    /// If the current boundary word is not the free reduction of `w`.
    pub fn unfold(&mut self, w: &Word) {
        let letters = w.letters();
        // partner of each cancelled letter, via stack reduction
        let mut partner = vec![usize::MAX; letters.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (i, &l) in letters.iter().enumerate() {
            match stack.last() {
                Some(&j) if letters[j] == l.inverse() => {
                    stack.pop();
                    partner[j] = i;
                    partner[i] = j;
                }
                _ => stack.push(i),
            }
        }
        let survivors: Vec<Letter> = stack.iter().map(|&i| letters[i]).collect();
        assert_eq!(
            survivors,
            self.boundary_word().letters(),
            "boundary is not the reduction of {w}"
        );
        // original index of every current boundary entry, kept sorted
        let mut index = stack;
        for i in 0..letters.len() {
            let j = partner[i];
            if j == usize::MAX || j < i {
                continue;
            }
            let pos = index.partition_point(|&x| x < i);
            self.spur(pos, letters[i]);
            index.splice(pos..pos, [i, j]);
        }
    }

    /// Identifies the twins of removed half-edges paired by `pairs` and
    /// marks the removed ones dead.
    fn zip(&mut self, pairs: &[(usize, usize)]) {
        let n = self.twin.len();
        let mut mate = vec![usize::MAX; n];
        for &(g, h) in pairs {
            mate[g] = h;
            mate[h] = g;
        }
        for &(g, h) in pairs {
            for start in [g, h] {
                let x = self.twin[start];
                if mate[x] != usize::MAX || !self.alive[x] {
                    continue;
                }
                // walk twin/mate alternately to the next survivor
                let mut y = start;
                let survivor = loop {
                    let z = self.twin[mate[y]];
                    if mate[z] == usize::MAX {
                        break z;
                    }
                    y = z;
                };
                self.twin[x] = survivor;
                self.twin[survivor] = x;
            }
        }
        for &(g, h) in pairs {
            self.alive[g] = false;
            self.alive[h] = false;
        }
    }

    /// Copies `other` in as a separate component; returns its boundary.
    pub(crate) fn absorb(&mut self, other: Builder) -> Vec<usize> {
        let off = self.twin.len();
        let cell_off = self.cells.len();
        let shift = |&t: &usize| if t == usize::MAX { t } else { t + off };
        self.twin.extend(other.twin.iter().map(shift));
        self.next.extend(other.next.iter().map(shift));
        self.label.extend(other.label.iter().copied());
        self.cell
            .extend(other.cell.iter().map(|c| c.map(|c| c + cell_off)));
        self.alive.extend(other.alive.iter().copied());
        self.cells
            .extend(other.cells.iter().map(|c| c.map(|(r, h)| (r, h + off))));
        other.boundary.iter().map(|&h| h + off).collect()
    }

    /// Re-pairs two half-edges as twins, killing their old partners'
    /// claims; used when splicing a disc into a cut edge.
    pub(crate) fn set_twins(&mut self, x: usize, y: usize) {
        self.twin[x] = y;
        self.twin[y] = x;
    }

    pub(crate) fn kill(&mut self, h: usize) {
        self.alive[h] = false;
    }

    /// Glues `other` along a boundary segment.
    ///
    /// The segment of `self` starts at position `i` and has `len` edges; the
    /// segment of `other` starts at `j` and must read the inverse word. The
    /// new boundary is `self[..i] · other[after segment..] · self[i+len..]`.
    pub fn glue(&mut self, i: usize, len: usize, other: Builder, j: usize) {
        let n = self.boundary.len();
        let m = other.boundary.len();
        assert!(len <= n && len <= m, "segment longer than boundary");
        let ob = self.absorb(other);

        let mut pairs = Vec::with_capacity(len);
        for t in 0..len {
            let g = self.boundary[(i + len - 1 - t) % n];
            let h = ob[(j + t) % m];
            assert_eq!(
                self.label[h],
                self.label[g].inverse(),
                "glued segments do not match"
            );
            pairs.push((g, h));
        }
        let rest: Vec<usize> = (0..m - len).map(|t| ob[(j + len + t) % m]).collect();
        let mut list = Vec::with_capacity(n + rest.len() - len);
        let (inserted_at, tail_at);
        if n == 0 {
            list.extend_from_slice(&rest);
            inserted_at = 0;
            tail_at = rest.len();
        } else if i + len <= n {
            list.extend_from_slice(&self.boundary[..i]);
            inserted_at = list.len();
            list.extend_from_slice(&rest);
            tail_at = list.len();
            list.extend_from_slice(&self.boundary[i + len..]);
        } else {
            list.extend_from_slice(&self.boundary[i + len - n..i]);
            inserted_at = list.len();
            list.extend_from_slice(&rest);
            tail_at = 0;
        }
        self.zip(&pairs);
        let k = list.len();
        if k > 0 {
            self.relink_at(&list, inserted_at + k - 1);
            self.relink_at(&list, tail_at + k - 1);
        }
        self.boundary = list;
    }

    /// Folds boundary positions `pos`, `pos+1`, whose labels must be
    /// mutually inverse.
    pub fn fold(&mut self, pos: usize) {
        let mut list = std::mem::take(&mut self.boundary);
        self.fold_in(&mut list, pos);
        self.boundary = list;
    }

    /// Folds consecutive entries of a face list, returning the new twin
    /// pair if the folded edges were distinct.
    pub(crate) fn fold_in(&mut self, list: &mut Vec<usize>, pos: usize) -> Option<(usize, usize)> {
        let n = list.len();
        assert!(n >= 2);
        let p = pos % n;
        let q = (p + 1) % n;
        let (x, y) = (list[p], list[q]);
        assert_eq!(
            self.label[y],
            self.label[x].inverse(),
            "fold of non-inverse pair"
        );
        let made = if self.twin[x] == y {
            None
        } else {
            let (a, b) = (self.twin[x], self.twin[y]);
            self.twin[a] = b;
            self.twin[b] = a;
            Some((a, b))
        };
        self.alive[x] = false;
        self.alive[y] = false;
        if q > p {
            list.drain(p..=q);
        } else {
            list.pop();
            list.remove(0);
        }
        if !list.is_empty() {
            let k = list.len();
            let before = (p + k - 1) % k;
            let before = if q < p { k - 1 } else { before };
            self.relink_at(list, before);
        }
        made
    }

    /// Folds every cancelling pair of the boundary positions `[from, to)`
    /// until that stretch is freely reduced.
    pub fn fold_stretch(&mut self, from: usize, to: usize) {
        let mut end = to;
        let mut i = from;
        while i + 1 < end {
            let (x, y) = (self.boundary[i], self.boundary[i + 1]);
            if self.label[y] == self.label[x].inverse() {
                self.fold(i);
                end -= 2;
                i = i.saturating_sub(1).max(from);
            } else {
                i += 1;
            }
        }
    }

    /// The mirror image: every face word is inverted.
    pub fn mirror(&mut self) {
        let n = self.twin.len();
        let mut prev = vec![usize::MAX; n];
        for h in 0..n {
            if self.alive[h] {
                prev[self.next[h]] = h;
            }
        }
        let mut next = vec![usize::MAX; n];
        let mut cell = vec![None; n];
        for g in 0..n {
            if self.alive[g] {
                next[g] = self.twin[prev[self.twin[g]]];
                cell[g] = self.cell[self.twin[g]];
            }
        }
        self.next = next;
        self.cell = cell;
        for c in self.cells.iter_mut().flatten() {
            c.1 = self.twin[c.1];
        }
        self.boundary = self.boundary.iter().rev().map(|&h| self.twin[h]).collect();
    }

    pub(crate) fn is_alive(&self, h: usize) -> bool {
        self.alive[h]
    }

    pub(crate) fn len(&self) -> usize {
        self.twin.len()
    }

    pub(crate) fn twin_of(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub(crate) fn next_of(&self, h: usize) -> usize {
        self.next[h]
    }

    pub(crate) fn label_of(&self, h: usize) -> Letter {
        self.label[h]
    }

    pub(crate) fn cell_of(&self, h: usize) -> Option<usize> {
        self.cell[h]
    }

    pub(crate) fn relator_of(&self, c: usize) -> Option<RelatorId> {
        self.cells[c].map(|(r, _)| r)
    }

    /// Removes the cell and the given edge, merging the cell faces into
    /// one cell-less face; returns that face's orbit.
    pub(crate) fn open_pair(&mut self, h: usize) -> Vec<usize> {
        let g = self.twin[h];
        let orbit = |b: &Builder, s: usize| {
            let mut out = Vec::new();
            let mut x = b.next[s];
            while x != s {
                out.push(x);
                x = b.next[x];
            }
            out
        };
        let mut hole = orbit(self, h);
        hole.extend(orbit(self, g));
        for &c in [self.cell[h], self.cell[g]].iter().flatten() {
            self.cells[c] = None;
        }
        for &x in hole.iter().chain([&h, &g]) {
            self.cell[x] = None;
        }
        self.alive[h] = false;
        self.alive[g] = false;
        let k = hole.len();
        for p in 0..k {
            self.next[hole[p]] = hole[(p + 1) % k];
        }
        hole
    }

    /// Freezes the map into a [`Diagram`], dropping every component not
    /// attached to the boundary and renumbering from the base.
    pub fn finish(&self) -> Diagram {
        if self.boundary.is_empty() {
            return Diagram::point();
        }
        let n = self.twin.len();
        let mut new_id = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &h in &self.boundary {
            new_id[h] = order.len();
            order.push(h);
            queue.push_back(h);
        }
        while let Some(h) = queue.pop_front() {
            for x in [self.twin[h], self.next[h]] {
                if new_id[x] == usize::MAX {
                    new_id[x] = order.len();
                    order.push(x);
                    queue.push_back(x);
                }
            }
        }
        let mut half_edges: Vec<HalfEdge> = order
            .iter()
            .enumerate()
            .map(|(id, &h)| HalfEdge {
                id,
                twin: new_id[self.twin[h]],
                next: new_id[self.next[h]],
                origin: usize::MAX,
                label: self.label[h],
            })
            .collect();
        // vertices are the orbits of next ∘ twin
        let mut vertices = Vec::new();
        for start in 0..half_edges.len() {
            if half_edges[start].origin != usize::MAX {
                continue;
            }
            let v = vertices.len();
            vertices.push(v);
            let mut h = start;
            while half_edges[h].origin == usize::MAX {
                half_edges[h].origin = v;
                h = half_edges[half_edges[h].twin].next;
            }
        }
        let (face_of, _) = face_orbits(&half_edges);
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .flatten()
            .filter(|(_, rot)| new_id[*rot] != usize::MAX)
            .map(|&(relator, rot)| Cell {
                face: face_of[new_id[rot]],
                relator,
                rotation: new_id[rot],
            })
            .collect();
        cells.sort_by_key(|c| c.face);
        let basepoint = half_edges[0].origin;
        Diagram {
            vertices,
            half_edges,
            cells,
            outer_face: face_of[0],
            basepoint,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn polygon_reads_its_word() {
        let b = Builder::polygon(RelatorId::K2, &w("kuAKU"));
        assert_eq!(b.boundary_word(), w("kuAKU"));
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.boundary_word().unwrap(), w("kuAKU"));
        assert_eq!(d.vertex_count(), 5);
    }

    #[test]
    fn trees_from_spurs() {
        let b = Builder::tree(&w("aaAAkK")).unwrap();
        assert_eq!(b.boundary_word(), w("aaAAkK"));
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.area(), 0);
        assert_eq!(d.edge_count(), 3);
        assert_eq!(d.boundary_word().unwrap(), w("aaAAkK"));
        assert!(Builder::tree(&w("ak")).is_err());
    }

    #[test]
    fn unfold_into_polygon() {
        let mut b = Builder::polygon(RelatorId::A1, &w("TatA"));
        b.unfold(&w("TakKtA"));
        assert_eq!(b.boundary_word(), w("TakKtA"));
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
    }

    #[test]
    fn glue_two_cells() {
        // TatA with its right θ-edge glued to the left edge of TatA
        let mut b = Builder::polygon(RelatorId::A1, &w("TatA"));
        let c = Builder::polygon(RelatorId::A1, &w("TatA"));
        b.glue(2, 1, c, 0);
        assert_eq!(b.boundary_word(), w("TaatAA"));
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.area(), 2);
        assert_eq!(d.boundary_word().unwrap(), w("TaatAA"));
    }

    #[test]
    fn mirror_inverts_boundary() {
        let mut b = Builder::polygon(RelatorId::K1, &w("TktAK"));
        b.mirror();
        assert_eq!(b.boundary_word(), w("TktAK").inverse());
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
    }

    #[test]
    fn folding_a_bigon_boundary() {
        let mut b = Builder::polygon(RelatorId::A1, &w("TatA"));
        let c = {
            let mut c = Builder::polygon(RelatorId::A1, &w("TatA"));
            c.mirror();
            c
        };
        // the mirror reads aTAt, whose prefix aTA inverts atA
        b.glue(1, 3, c, 0);
        assert_eq!(b.boundary_len(), 2);
        let d = b.finish();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        assert_eq!(d.area(), 2);
        let mut b = Builder::from_diagram(&d).unwrap();
        b.fold(0);
        let d = b.finish();
        assert_eq!(d.boundary_word().unwrap(), Word::empty());
        assert_eq!(d.area(), 0);
    }
}

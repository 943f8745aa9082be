//! Cell and band census with the cubic area and linear diameter bounds.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Error;

use super::bands::{trace_in, LetterClass};
use super::reduce::find_mirror_pair;
use super::{Diagram, Frame};

/// One inequality `observed ≤ bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: f64,
    pub observed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub perimeter: usize,
    pub k_cells: usize,
    pub a_cells_non_k: usize,
    pub total_cells: usize,
    pub max_theta_bands: usize,
    pub max_k_bands: usize,
    pub max_a_bands: usize,
    pub diameter: usize,
    pub bound_checks: Vec<BoundCheck>,
}

impl CountReport {
    pub fn all_pass(&self) -> bool {
        self.bound_checks.iter().all(|c| c.pass)
    }
}

fn check(name: &'static str, bound: f64, observed: usize, pass: bool) -> BoundCheck {
    BoundCheck {
        name,
        bound,
        observed,
        pass,
    }
}

/// The census of a reduced diagram; refuses diagrams with a mirror pair.
pub fn count_report(d: &Diagram) -> Result<CountReport, Error> {
    let frame = d.frame()?;
    if let Some((x, y)) = find_mirror_pair(d)? {
        return Err(Error::NotReduced(x, y));
    }
    let n = frame.boundary.len();
    let k_cells = d.cells.iter().filter(|c| c.relator.is_k()).count();
    let total_cells = d.cells.len();
    let a_cells_non_k = total_cells - k_cells;
    let max_theta_bands = trace_in(&frame, LetterClass::Theta).len();
    let max_k_bands = trace_in(&frame, LetterClass::K).len();
    let max_a_bands = trace_in(&frame, LetterClass::A).len();
    let diameter = diameter_in(&frame);

    // Integer forms of the bounds, scaled to clear denominators.
    let (nn, n2, n3) = (n as u128, (n * n) as u128, (n * n * n) as u128);
    let nf = n as f64;
    let bound_checks = vec![
        check("k_cells", nf * nf / 4.0, k_cells, 4 * k_cells as u128 <= n2),
        check(
            "max_a_bands",
            nf * nf / 8.0 + nf / 2.0,
            max_a_bands,
            8 * max_a_bands as u128 <= n2 + 4 * nn,
        ),
        check(
            "a_cells_non_k",
            nf.powi(3) / 16.0 + nf * nf / 4.0,
            a_cells_non_k,
            16 * a_cells_non_k as u128 <= n3 + 4 * n2,
        ),
        check(
            "total_cells",
            nf.powi(3) / 16.0 + nf * nf / 2.0,
            total_cells,
            16 * total_cells as u128 <= n3 + 8 * n2,
        ),
        check("diameter", 2.5 * nf, diameter, 2 * diameter <= 5 * n),
    ];
    Ok(CountReport {
        perimeter: n,
        k_cells,
        a_cells_non_k,
        total_cells,
        max_theta_bands,
        max_k_bands,
        max_a_bands,
        diameter,
        bound_checks,
    })
}

fn bfs(adj: &[Vec<usize>], s: usize, dist: &mut [usize]) -> usize {
    dist.fill(usize::MAX);
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        ecc = dist[u];
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    ecc
}

/// Exact diameter of a connected graph.
///
/// Eccentricity bounds are tightened after every BFS; vertices whose upper
/// bound cannot beat the best eccentricity seen are discarded.
pub(crate) fn graph_diameter(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    if n <= 1 {
        return 0;
    }
    let mut lower = vec![0usize; n];
    let mut upper = vec![usize::MAX; n];
    let mut active: Vec<usize> = (0..n).collect();
    let mut dist = vec![0usize; n];
    let mut best = 0;
    let mut pick_high = true;
    while !active.is_empty() {
        let v = if pick_high {
            *active
                .iter()
                .max_by_key(|&&w| (upper[w], usize::MAX - w))
                .expect("non-empty")
        } else {
            *active
                .iter()
                .min_by_key(|&&w| (lower[w], w))
                .expect("non-empty")
        };
        pick_high = !pick_high;
        let ecc = bfs(adj, v, &mut dist);
        best = best.max(ecc);
        lower[v] = ecc;
        upper[v] = ecc;
        for &w in &active {
            let dw = dist[w];
            lower[w] = lower[w].max(dw.max(ecc - dw));
            upper[w] = upper[w].min(ecc + dw);
        }
        for &w in &active {
            if lower[w] == upper[w] {
                best = best.max(lower[w]);
            }
        }
        active.retain(|&w| w != v && upper[w] > best && lower[w] != upper[w]);
    }
    best
}

pub(crate) fn diameter_in(frame: &Frame<'_>) -> usize {
    graph_diameter(&frame.skeleton())
}

/// Largest 1-skeleton distance between two vertices.
pub fn diameter(d: &Diagram) -> Result<usize, Error> {
    Ok(diameter_in(&d.frame()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Builder;
    use crate::presentation::RelatorId;
    use crate::word::Word;

    fn naive(adj: &[Vec<usize>]) -> usize {
        let mut dist = vec![0; adj.len()];
        (0..adj.len())
            .map(|s| bfs(adj, s, &mut dist))
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_diameters() {
        assert_eq!(
            diameter(&Diagram::single_cell(RelatorId::K1, false)).unwrap(),
            2
        );
        assert_eq!(
            diameter(&Diagram::single_cell(RelatorId::A1, false)).unwrap(),
            2
        );
        assert_eq!(diameter(&Diagram::point()).unwrap(), 0);
        for m in 1..6 {
            let w = Word::parse(&format!("a^{m} A^{m}")).unwrap();
            let d = Builder::tree(&w).unwrap().finish();
            assert_eq!(diameter(&d).unwrap(), m);
        }
    }

    #[test]
    fn bounding_matches_naive_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 1 + (next() % 40) as usize;
            let mut adj = vec![Vec::new(); n];
            for v in 1..n {
                let u = (next() % v as u64) as usize;
                adj[u].push(v);
                adj[v].push(u);
            }
            for _ in 0..(next() % 10) {
                let (u, v) = ((next() % n as u64) as usize, (next() % n as u64) as usize);
                adj[u].push(v);
                adj[v].push(u);
            }
            assert_eq!(graph_diameter(&adj), naive(&adj));
        }
    }

    #[test]
    fn single_cell_census() {
        let d = Diagram::single_cell(RelatorId::K2, false);
        let r = count_report(&d).unwrap();
        assert_eq!((r.total_cells, r.k_cells, r.perimeter), (1, 1, 5));
        assert!(r.all_pass());
        assert_eq!(r.bound_checks.len(), 5);
    }
}

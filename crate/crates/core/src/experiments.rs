//! Desk-scale measurements: area and diameter curves for the commutator
//! family, the band-side identity, a geodesic inequality for `k aᵐ k`, and
//! subdisc partitions of trapezia.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{build_ball, geodesic_distance_with, Distance, DEFAULT_RADIUS_CAP};
use crate::diagram::bands::trace_in;
use crate::diagram::{diameter, Band, Diagram, LetterClass};
use crate::error::Error;
use crate::fill::{build_trapezium, fill};
use crate::normal_form::commutator_word;
use crate::presentation::RelatorId;
use crate::word::{Generator, Letter, Word};

/// Version of the JSON and CSV layouts written by the command line tool.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub n: usize,
    pub perimeter: usize,
    pub trapezium_area: usize,
    pub fill_area: usize,
    pub diameter: usize,
    pub wallclock_ms: f64,
}

pub const CURVE_COLUMNS: &str =
    "n,perimeter,trapezium_area,fill_area,diameter,diameter_over_n,wallclock_ms";

fn curve_point(n: usize) -> Result<CurvePoint, Error> {
    let start = Instant::now();
    let t = build_trapezium(n)?;
    let f = fill(&commutator_word(n))?;
    Ok(CurvePoint {
        n,
        perimeter: t.perimeter()?,
        trapezium_area: t.area(),
        fill_area: f.area(),
        diameter: diameter(&t)?,
        wallclock_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Trapezium and filling measurements for `n = 1..=n_max`, in order.
pub fn dehn_curve(n_max: usize) -> Result<Vec<CurvePoint>, Error> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    (1..=n_max).into_par_iter().map(curve_point).collect()
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from(CURVE_COLUMNS);
    out.push('\n');
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{:.4},{:.3}",
            p.n,
            p.perimeter,
            p.trapezium_area,
            p.fill_area,
            p.diameter,
            p.diameter as f64 / p.n as f64,
            p.wallclock_ms
        )
        .unwrap();
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn theta_of_band(d: &Diagram, b: &Band) -> Generator {
    d.cells[b.cells[0]].relator.theta()
}

// The θ₁-band side bordering θ₂-cells, if any.
fn top_theta1_side(d: &Diagram, bands: &[Band]) -> Option<Vec<usize>> {
    let frame = d.frame().ok()?;
    bands
        .iter()
        .filter(|b| theta_of_band(d, b) == Generator::Theta1)
        .flat_map(|b| [&b.side_top, &b.side_bottom])
        .find(|side| {
            side.iter().any(|&h| {
                frame
                    .cell_at(frame.twin(h))
                    .is_some_and(|c| d.cells[c].relator.theta() == Generator::Theta2)
            })
        })
        .cloned()
}

// Side half-edges oriented so that k-edges read forwards.
fn oriented(d: &Diagram, side: &[usize]) -> Vec<usize> {
    let forward = side
        .iter()
        .map(|&h| d.half_edges[h].label)
        .find(|l| l.generator() == Generator::K)
        .is_none_or(|l| !l.is_inverted());
    if forward {
        side.to_vec()
    } else {
        side.iter().rev().map(|&h| d.half_edges[h].twin).collect()
    }
}

/// The freely reduced label of the θ₁-band of the trapezium of size `n`
/// that borders the θ₂-bands, read along the `k`-direction.
pub fn band_side_identity(n: usize) -> Result<Word, Error> {
    let d = build_trapezium(n)?;
    let frame = d.frame()?;
    let bands = trace_in(&frame, LetterClass::Theta);
    let side = top_theta1_side(&d, &bands)
        .ok_or_else(|| Error::Domain("no θ₁-band borders a θ₂-band".into()))?;
    let side = oriented(&d, &side);
    Ok(Band::side_word(&d, &side).free_reduce())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicRow {
    pub m: usize,
    pub distance: Distance,
    pub half_m: f64,
    /// `Some(true)` when `dist > m/2` is certified, `None` when undecided.
    pub pass: Option<bool>,
}

/// Distances of `k aᵐ k` for `m = 0..=m_max`, each certified up to `cap`.
pub fn geodesic_experiment(m_max: usize, cap: usize) -> Result<Vec<GeodesicRow>, Error> {
    let cap = cap.min(DEFAULT_RADIUS_CAP);
    let near = build_ball(cap.div_ceil(2))?;
    (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let mut letters = vec![Letter::K];
            letters.extend(std::iter::repeat_n(Letter::A, m));
            letters.push(Letter::K);
            let distance = geodesic_distance_with(&near, &Word::new(letters), cap)?;
            let pass = match distance {
                Distance::Exact(d) => Some(2 * d > m),
                Distance::Beyond(c) if 2 * c >= m => Some(true),
                Distance::Beyond(_) => None,
            };
            Ok(GeodesicRow {
                m,
                distance,
                half_m: m as f64 / 2.0,
                pass,
            })
        })
        .collect()
}

/// Where the subdisc argument breaks for a partition meeting both
/// constraints: a run `k aⁿ k` on the top θ₁-band side and the piece that
/// must let its `n` a-bands out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionWitness {
    pub piece: usize,
    /// Half-edges of the run's `a`-letters, along the band side.
    pub run: Vec<usize>,
    pub a_bands: usize,
    pub piece_perimeter: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionVerdict {
    pub n: usize,
    pub piece_count: usize,
    pub piece_perimeters: Vec<usize>,
    pub max_piece_perimeter: usize,
    pub constraint_ok: bool,
    pub reason: Option<String>,
    pub witness: Option<PartitionWitness>,
}

// For every cell, the cell across each edge of its boundary.
struct CellMap {
    across: Vec<Vec<Option<usize>>>,
    adj: Vec<Vec<usize>>,
    n: usize,
}

impl CellMap {
    fn new(d: &Diagram) -> Result<Self, Error> {
        let frame = d.frame()?;
        let perimeter = frame.boundary.len();
        if perimeter % 6 != 0 || perimeter == 0 {
            return Err(Error::Partition(format!(
                "boundary length {perimeter} is not that of a commutator uₙ"
            )));
        }
        let across: Vec<Vec<Option<usize>>> = (0..d.cells.len())
            .map(|c| {
                frame
                    .cell_orbit(c)
                    .into_iter()
                    .map(|h| frame.cell_at(frame.twin(h)))
                    .collect()
            })
            .collect();
        let adj = across
            .iter()
            .enumerate()
            .map(|(c, row)| {
                let mut out: Vec<usize> =
                    row.iter().flatten().copied().filter(|&o| o != c).collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        Ok(CellMap {
            across,
            adj,
            n: perimeter / 6,
        })
    }

    fn perimeters(&self, pieces: &[usize], count: usize) -> Vec<usize> {
        let mut per = vec![0; count];
        for (c, row) in self.across.iter().enumerate() {
            let p = pieces[c];
            per[p] += row
                .iter()
                .filter(|o| o.map(|o| pieces[o]) != Some(p))
                .count();
        }
        per
    }
}

fn check_pieces(adj: &[Vec<usize>], pieces: &[usize]) -> Result<usize, Error> {
    if pieces.len() != adj.len() {
        return Err(Error::Partition(format!(
            "{} labels for {} cells",
            pieces.len(),
            adj.len()
        )));
    }
    let count = pieces.iter().max().map_or(0, |&m| m + 1);
    let mut seen = vec![false; adj.len()];
    let mut reached = vec![false; count];
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        let p = pieces[start];
        if reached[p] {
            return Err(Error::Partition(format!("piece {p} is not edge-connected")));
        }
        reached[p] = true;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &o in &adj[c] {
                if !seen[o] && pieces[o] == p {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
    }
    if let Some(p) = reached.iter().position(|&r| !r) {
        return Err(Error::Partition(format!("piece {p} is empty")));
    }
    Ok(count)
}

fn locate_witness(
    d: &Diagram,
    n: usize,
    pieces: &[usize],
    per: &[usize],
) -> Result<PartitionWitness, Error> {
    let frame = d.frame()?;
    let bands = trace_in(&frame, LetterClass::Theta);
    let side = top_theta1_side(d, &bands)
        .ok_or_else(|| Error::Partition("no θ₁-band borders a θ₂-band".into()))?;
    let side = oriented(d, &side);
    let piece_of = |h: usize| {
        frame
            .cell_at(h)
            .or_else(|| frame.cell_at(frame.twin(h)))
            .map(|c| pieces[c])
    };
    let gen = |h: usize| d.half_edges[h].label.generator();
    let mut first = None;
    let mut i = 0;
    while i < side.len() {
        if gen(side[i]) != Generator::K {
            i += 1;
            continue;
        }
        let run: Vec<usize> = side[i + 1..]
            .iter()
            .copied()
            .take_while(|&h| gen(h) == Generator::A)
            .collect();
        let end = i + 1 + run.len();
        if run.len() >= n && end < side.len() {
            let owner = piece_of(run[0]);
            let whole = run.iter().all(|&h| piece_of(h) == owner);
            let piece = owner.unwrap_or(0);
            let w = PartitionWitness {
                piece,
                run: run.clone(),
                a_bands: run.len(),
                piece_perimeter: per[piece],
            };
            if whole {
                return Ok(w);
            }
            first.get_or_insert(w);
        }
        i = end;
    }
    first.ok_or_else(|| Error::Partition("no k aⁿ k run on the band side".into()))
}

/// Piece perimeters of a cellular partition of a filling of `uₙ`, and
/// whether it has at most `√n` pieces of perimeter at most `n`.
///
/// `pieces[c]` is the piece of cell `c`; pieces are numbered from 0 and
/// must be edge-connected. A piece's perimeter counts the half-edges of its
/// cells whose twin lies outside the piece.
pub fn check_partition(d: &Diagram, pieces: &[usize]) -> Result<PartitionVerdict, Error> {
    let map = CellMap::new(d)?;
    let count = check_pieces(&map.adj, pieces)?;
    verdict(d, &map, pieces, count)
}

fn verdict(
    d: &Diagram,
    map: &CellMap,
    pieces: &[usize],
    count: usize,
) -> Result<PartitionVerdict, Error> {
    let n = map.n;
    let per = map.perimeters(pieces, count);
    let max_piece_perimeter = per.iter().copied().max().unwrap_or(0);
    let reason = if count * count > n {
        Some("piece count".to_string())
    } else if max_piece_perimeter > n {
        Some("piece perimeter".to_string())
    } else {
        None
    };
    let constraint_ok = reason.is_none();
    let witness = if constraint_ok {
        Some(locate_witness(d, n, pieces, &per)?)
    } else {
        None
    };
    Ok(PartitionVerdict {
        n,
        piece_count: count,
        piece_perimeters: per,
        max_piece_perimeter,
        constraint_ok,
        reason,
        witness,
    })
}

/// Connected parts grown from `l` random seed cells.
pub fn random_partition(adj: &[Vec<usize>], l: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let ncells = adj.len();
    let l = l.clamp(1, ncells.max(1));
    let mut piece = vec![usize::MAX; ncells];
    let mut frontier: Vec<Vec<usize>> = Vec::with_capacity(l);
    let mut p = 0;
    while p < l {
        let c = rng.random_range(0..ncells);
        if piece[c] == usize::MAX {
            piece[c] = p;
            frontier.push(adj[c].clone());
            p += 1;
        }
    }
    let mut live: Vec<usize> = (0..l).collect();
    while !live.is_empty() {
        let slot = rng.random_range(0..live.len());
        let p = live[slot];
        let f = &mut frontier[p];
        if f.is_empty() {
            live.swap_remove(slot);
            continue;
        }
        let c = f.swap_remove(rng.random_range(0..f.len()));
        if piece[c] == usize::MAX {
            piece[c] = p;
            f.extend(adj[c].iter().copied().filter(|&o| piece[o] == usize::MAX));
        }
    }
    piece
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSummary {
    pub n: usize,
    pub max_pieces: usize,
    pub trials: usize,
    pub seed: u64,
    pub cells: usize,
    /// Trials with every piece perimeter at most `n`.
    pub small_perimeter_hits: usize,
    /// Trials meeting both the count and the perimeter constraint.
    pub constraint_ok_hits: usize,
    pub smallest_max_perimeter: usize,
    pub witnesses_missing: usize,
}

/// Random region-growing partitions of the trapezium of size `n` into
/// `1..=max_pieces` connected pieces. Trial `i` uses ChaCha8 stream `i` of
/// `seed`, so the summary does not depend on scheduling.
pub fn partition_search(
    n: usize,
    max_pieces: usize,
    trials: usize,
    seed: u64,
) -> Result<SearchSummary, Error> {
    if max_pieces == 0 {
        return Err(Error::Domain("at least one piece is needed".into()));
    }
    let d = build_trapezium(n)?;
    let map = CellMap::new(&d)?;
    let verdicts: Vec<PartitionVerdict> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let l = rng.random_range(1..=max_pieces);
            let pieces = random_partition(&map.adj, l, &mut rng);
            let count = pieces.iter().max().map_or(0, |&m| m + 1);
            verdict(&d, &map, &pieces, count)
        })
        .collect::<Result<_, _>>()?;
    Ok(SearchSummary {
        n,
        max_pieces,
        trials,
        seed,
        cells: d.area(),
        small_perimeter_hits: verdicts
            .iter()
            .filter(|v| v.max_piece_perimeter <= n)
            .count(),
        constraint_ok_hits: verdicts.iter().filter(|v| v.constraint_ok).count(),
        smallest_max_perimeter: verdicts
            .iter()
            .map(|v| v.max_piece_perimeter)
            .min()
            .unwrap_or(0),
        witnesses_missing: verdicts
            .iter()
            .filter(|v| v.constraint_ok && v.witness.is_none())
            .count(),
    })
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::new(
        (0..len)
            .map(|_| Letter::ALL[rng.random_range(0..8)])
            .collect(),
    )
}

// A random identity of one of three shapes: a conjugated relator, a
// conjugated `[kᵖ, θ₁^q θ₂^{−q}]`, or `[x, y]` with `x ∈ ⟨a⟩` or `x ∈ ⟨k⟩` and
// `y` a θ-word of total exponent zero in the `k` case.
fn random_factor(rng: &mut ChaCha8Rng) -> Word {
    let c = {
        let len = rng.random_range(0..=6);
        random_word(rng, len)
    };
    let core = match rng.random_range(0..3) {
        0 => {
            let r = RelatorId::ALL[rng.random_range(0..4)].word();
            let r = if rng.random_bool(0.5) { r.inverse() } else { r };
            r.rotate(rng.random_range(0..r.len()))
        }
        1 => {
            let p = rng.random_range(1..=3);
            let q = rng.random_range(1..=3);
            let x = Word::parse(&format!("k^{p}")).expect("static");
            let y = Word::parse(&format!("t^{q} U^{q}")).expect("static");
            Word::commutator(&x, &y)
        }
        _ => {
            let thetas = [Letter::T1, Letter::T1_INV, Letter::T2, Letter::T2_INV];
            let len = rng.random_range(1..=4);
            let mut y = Word::new((0..len).map(|_| thetas[rng.random_range(0..4)]).collect());
            let x = if rng.random_bool(0.5) {
                Word::parse(&format!("a^{}", rng.random_range(1..=3))).expect("static")
            } else {
                // balance θ₁ against θ₂ so that k is fixed
                let s1 = y.exponent_sum(Generator::Theta1);
                let s2 = y.exponent_sum(Generator::Theta2);
                let fix = Word::parse(&format!("u^{}", -(s1 + s2))).expect("static");
                y = y.concat(&fix);
                Word::parse(&format!("k^{}", rng.random_range(1..=2))).expect("static")
            };
            Word::commutator(&x, &y)
        }
    };
    c.concat(&core).concat(&c.inverse())
}

/// A random product of one to three conjugated identities, freely reduced,
/// of length at most `max_len` (possibly empty).
pub fn random_identity_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    loop {
        let factors = rng.random_range(1..=3);
        let mut w = Word::empty();
        for _ in 0..factors {
            w = w.concat(&random_factor(rng));
        }
        let w = w.free_reduce();
        if w.len() <= max_len {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{is_identity, phi_power};

    #[test]
    fn curve_points() {
        let pts = dehn_curve(4).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0].trapezium_area, 2);
        for p in &pts {
            assert_eq!(p.perimeter, 6 * p.n);
            assert_eq!(p.trapezium_area, p.n.pow(3) + p.n.pow(2));
            assert!(p.fill_area <= p.trapezium_area);
        }
        let csv = curve_csv(&pts);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("n,perimeter,"));
        assert!(dehn_curve(0).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10)
            .map(|x| (x as f64, 3.0 * (x as f64).powi(3)))
            .collect();
        assert!((loglog_slope(&pts) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn band_sides() {
        assert_eq!(band_side_identity(1).unwrap(), Word::parse("ka").unwrap());
        for n in 1..=5 {
            let kn = Word::parse(&format!("k^{n}")).unwrap();
            assert_eq!(
                band_side_identity(n).unwrap(),
                phi_power(&kn, n as i64).unwrap()
            );
        }
    }

    #[test]
    fn geodesics_small() {
        let rows = geodesic_experiment(3, 6).unwrap();
        let d: Vec<_> = rows.iter().map(|r| r.distance).collect();
        assert_eq!(d[0], Distance::Exact(2));
        assert_eq!(d[1], Distance::Exact(3));
        assert!(rows.iter().all(|r| r.pass == Some(true)));
    }

    #[test]
    fn partition_examples() {
        let d = build_trapezium(4).unwrap();
        let frame = d.frame().unwrap();
        // each θ-band its own piece
        let bands = trace_in(&frame, LetterClass::Theta);
        let mut pieces = vec![0; d.area()];
        for (i, b) in bands.iter().enumerate() {
            for &c in &b.cells {
                pieces[c] = i;
            }
        }
        let v = check_partition(&d, &pieces).unwrap();
        assert_eq!(v.piece_count, 8);
        assert!(!v.constraint_ok);
        assert_eq!(v.reason.as_deref(), Some("piece count"));

        let d9 = build_trapezium(9).unwrap();
        let v = check_partition(&d9, &vec![0; d9.area()]).unwrap();
        assert_eq!((v.piece_count, v.max_piece_perimeter), (1, 54));
        assert!(!v.constraint_ok);

        assert!(check_partition(&d, &[0]).is_err());
        let mut split = vec![0; d.area()];
        split[bands[0].cells[0]] = 1;
        split[bands[3].cells[0]] = 1;
        assert!(matches!(
            check_partition(&d, &split),
            Err(Error::Partition(_))
        ));
    }

    #[test]
    fn witness_on_a_relaxed_check() {
        let d = build_trapezium(3).unwrap();
        let pieces = vec![0; d.area()];
        let w = locate_witness(&d, 3, &pieces, &[18]).unwrap();
        assert_eq!(w.a_bands, 3);
        assert_eq!(w.piece, 0);
    }

    #[test]
    fn searches_are_deterministic() {
        let a = partition_search(4, 2, 50, 7).unwrap();
        let b = partition_search(4, 2, 50, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.constraint_ok_hits, 0);
        assert_eq!(a.witnesses_missing, 0);
    }

    #[test]
    fn random_words_are_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = random_identity_word(&mut rng, 24);
            assert!(w.len() <= 24);
            assert!(is_identity(&w), "{w}");
        }
    }
}

//! Breadth-first enumeration of balls in the Cayley graph.
//!
//! Vertices are keyed by the HNN form of [`crate::britton`], so distances
//! computed here are independent of the split-extension normal form.

use std::collections::HashMap;

use serde::Serialize;

use crate::britton::BrittonForm;
use crate::error::Error;
use crate::normal_form::{normal_form, NormalForm};
use crate::word::{Letter, Word};

/// Largest radius enumerated without an explicit override.
pub const DEFAULT_RADIUS_CAP: usize = 10;

/// Exact geodesic distances from a centre for every element of a ball.
#[derive(Clone, Debug)]
pub struct BallIndex {
    radius: usize,
    distances: HashMap<u128, u8>,
    sphere_sizes: Vec<usize>,
}

/// Result of a capped distance query.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Distance {
    Exact(usize),
    /// Strictly larger than the cap.
    Beyond(usize),
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::Beyond(_) => None,
        }
    }
}

/// Upper estimate for the number of elements of a ball: the free-group count.
pub fn ball_size_estimate(radius: usize) -> u128 {
    let mut total: u128 = 1;
    let mut sphere: u128 = 8;
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(7);
    }
    total
}

fn pack(f: &BrittonForm) -> u128 {
    f.packed()
        .expect("elements within the radius cap have packable forms")
}

/// Enumerates the ball of the given radius around `start`.
fn bfs(start: &BrittonForm, radius: usize) -> BallIndex {
    let mut distances: HashMap<u128, u8> = HashMap::new();
    let first = pack(start);
    distances.insert(first, 0);
    let mut frontier = vec![first];
    let mut sphere_sizes = vec![1];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &key in &frontier {
            let form = BrittonForm::unpack(key);
            for &l in &Letter::ALL {
                let mut f = form.clone();
                f.push(l);
                let k = pack(&f);
                if let std::collections::hash_map::Entry::Vacant(e) = distances.entry(k) {
                    e.insert(d as u8);
                    next.push(k);
                }
            }
        }
        sphere_sizes.push(next.len());
        frontier = next;
    }
    BallIndex {
        radius,
        distances,
        sphere_sizes,
    }
}

/// The ball of `radius` around the identity; refuses radii above `cap`.
pub fn build_ball_capped(radius: usize, cap: usize) -> Result<BallIndex, Error> {
    if radius > cap || radius > DEFAULT_RADIUS_CAP {
        return Err(Error::CapExceeded {
            radius,
            cap: cap.min(DEFAULT_RADIUS_CAP),
            estimate: ball_size_estimate(radius),
        });
    }
    Ok(bfs(&BrittonForm::identity(), radius))
}

/// The ball of `radius` around the identity, capped at [`DEFAULT_RADIUS_CAP`].
pub fn build_ball(radius: usize) -> Result<BallIndex, Error> {
    build_ball_capped(radius, DEFAULT_RADIUS_CAP)
}

impl BallIndex {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Number of elements at each exact distance `0..=radius`.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.sphere_sizes
    }

    pub fn distance_of_form(&self, f: &BrittonForm) -> Option<usize> {
        let key = f.packed()?;
        self.distances.get(&key).map(|&d| usize::from(d))
    }

    /// Distance of the element represented by `w`, if it lies in the ball.
    pub fn distance(&self, w: &Word) -> Option<usize> {
        self.distance_of_form(&BrittonForm::of_word(w))
    }

    pub fn distance_of_normal_form(&self, nf: &NormalForm) -> Option<usize> {
        self.distance(&nf.to_word())
    }

    /// A shortest word for an element of a ball centred at the identity,
    /// found by walking down the distance field.
    pub fn geodesic_word(&self, f: &BrittonForm) -> Option<Word> {
        let mut d = self.distance_of_form(f)?;
        let mut here = f.clone();
        let mut rev = Vec::with_capacity(d);
        while d > 0 {
            let (l, down) = Letter::ALL
                .iter()
                .find_map(|&l| {
                    let mut g = here.clone();
                    g.push(l);
                    (self.distance_of_form(&g) == Some(d - 1)).then_some((l, g))
                })
                .expect("every element has a neighbour one step closer");
            // here = down · l⁻¹
            rev.push(l.inverse());
            here = down;
            d -= 1;
        }
        rev.reverse();
        Some(Word::new(rev))
    }

    /// Every element with its distance, keyed by split-extension normal
    /// form, in increasing distance. Meant for small balls.
    pub fn entries(&self) -> Vec<(NormalForm, usize)> {
        let mut out: Vec<(NormalForm, usize)> = self
            .distances
            .iter()
            .map(|(&k, &d)| {
                let w = self
                    .geodesic_word(&BrittonForm::unpack(k))
                    .expect("member of the ball");
                (normal_form(&w), usize::from(d))
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }
}

/// Exact distance from the identity to the element of `w`, or
/// [`Distance::Beyond`] if it exceeds `cap`.
///
/// Meets in the middle: a ball of radius `⌈cap/2⌉` around the identity
/// and one of radius `⌊cap/2⌋` around the target.
pub fn geodesic_distance(w: &Word, cap: usize) -> Result<Distance, Error> {
    let near = build_ball(cap.div_ceil(2))?;
    geodesic_distance_with(&near, w, cap)
}

/// As [`geodesic_distance`], reusing a ball around the identity.
pub fn geodesic_distance_with(near: &BallIndex, w: &Word, cap: usize) -> Result<Distance, Error> {
    let far_radius = cap.saturating_sub(near.radius);
    if far_radius > near.radius {
        return Err(Error::CapExceeded {
            radius: cap,
            cap: 2 * near.radius,
            estimate: ball_size_estimate(cap),
        });
    }
    let target = BrittonForm::of_word(w);
    if let Some(d) = near.distance_of_form(&target) {
        return Ok(Distance::Exact(d));
    }
    if target.packed().is_none() {
        // too long to lie within any capped ball
        return Ok(Distance::Beyond(cap));
    }
    let far = bfs(&target, far_radius);
    let best = far
        .distances
        .iter()
        .filter_map(|(k, &d2)| near.distances.get(k).map(|&d1| usize::from(d1 + d2)))
        .min();
    Ok(match best {
        Some(d) if d <= cap => Distance::Exact(d),
        _ => Distance::Beyond(cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn small_balls() {
        let b0 = build_ball(0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.distance(&Word::empty()), Some(0));
        let b1 = build_ball(1).unwrap();
        assert_eq!(b1.len(), 9);
        assert_eq!(b1.sphere_sizes(), &[1, 8]);
        let b4 = build_ball(4).unwrap();
        assert_eq!(b4.distance(&w("Tkt")), Some(2));
        assert_eq!(b4.distance(&w("ka")), Some(2));
        assert_eq!(b4.distance(&w("kak")), Some(3));
        assert_eq!(b4.distance(&w("TatA")), Some(0));
    }

    #[test]
    fn cap_is_enforced() {
        match build_ball(11) {
            Err(Error::CapExceeded {
                radius,
                cap,
                estimate,
            }) => {
                assert_eq!((radius, cap), (11, 10));
                assert!(estimate > 1_000_000);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn distances_by_meeting_in_the_middle() {
        assert_eq!(geodesic_distance(&w("kak"), 6).unwrap(), Distance::Exact(3));
        assert_eq!(
            geodesic_distance(&Word::empty(), 4).unwrap(),
            Distance::Exact(0)
        );
        assert_eq!(
            geodesic_distance(&w("kaaaak"), 2).unwrap(),
            Distance::Beyond(2)
        );
        let b = build_ball(6).unwrap();
        for s in ["kaak", "tkUa", "KtAkk", "ttkuu", "kaaak"] {
            let direct = b.distance(&w(s));
            let mitm = geodesic_distance(&w(s), 6).unwrap().exact();
            assert_eq!(direct, mitm, "{s}");
        }
    }

    #[test]
    fn geodesic_words_descend() {
        let b = build_ball(4).unwrap();
        for s in ["Tkt", "kak", "tUa", ""] {
            let f = BrittonForm::of_word(&w(s));
            let g = b.geodesic_word(&f).unwrap();
            assert_eq!(Some(g.len()), b.distance(&w(s)));
            assert_eq!(BrittonForm::of_word(&g), f);
        }
    }

    #[test]
    fn entries_carry_normal_forms() {
        let b = build_ball(2).unwrap();
        let entries = b.entries();
        assert_eq!(entries.len(), b.len());
        assert_eq!(entries[0], (NormalForm::identity(), 0));
        assert_eq!(entries.iter().filter(|(nf, _)| nf.is_identity()).count(), 1);
    }
}

//! Constructing van Kampen diagrams: θ-bands, trapezia and a general
//! band-stacking filling.
//!
//! Every band cell matches one letter `x` of the band's source side, with
//! the relation `x θ = θ φ(x)`: the cell reads `θ⁻¹ x θ φ(x)⁻¹`.

use serde::Serialize;

use crate::diagram::{
    count_report, diameter, is_reduced, reduce_diagram, Builder, CountReport, Diagram,
};
use crate::error::Error;
use crate::normal_form::{commutator_word, normal_form, phi_power, phi_power_letterwise};
use crate::presentation::RelatorId;
use crate::word::{Generator, Letter, Word};

fn cell_relator(theta: Generator, x: Letter) -> RelatorId {
    RelatorId::for_letter(theta, x.generator()).expect("band letters are a or k")
}

/// The band with cells along `source`, oriented so that the left edge reads
/// `θ` upwards. Its boundary, from the top-left corner, is
/// `θ⁻¹ · source · θ · φ(source)⁻¹` with `φ(source)` taken letterwise.
pub(crate) fn band(source: &[Letter], theta: Generator) -> Builder {
    let t = Letter::new(theta, false);
    if source.is_empty() {
        let mut b = Builder::point();
        b.spur(0, t.inverse());
        return b;
    }
    let cell = |x: Letter| {
        let top = phi_power_letterwise(&Word::letter(x), 1).expect("a or k");
        let w = Word::new(vec![t.inverse(), x, t]).concat(&top.inverse());
        Builder::polygon(cell_relator(theta, x), &w)
    };
    let mut b = cell(source[0]);
    for (j, &x) in source.iter().enumerate().skip(1) {
        // the right θ-edge sits after the left edge and j bottom letters
        b.glue(j + 1, 1, cell(x), 0);
    }
    b
}

/// A single θ-band. For `epsilon = +1` the band has one cell per letter of
/// `bottom` and top side `φ(bottom)` letterwise. For `epsilon = −1` its
/// cells run along the top side `φ⁻¹(bottom)` (letterwise), so there is one
/// extra cell per `k`-letter, and the cancelling pairs of `φ(φ⁻¹(bottom))`
/// on the bottom side are folded, so `bottom` must then be freely reduced.
///
/// The boundary reads `θ^{−ε} · bottom · θ^{ε} · φ^{ε}(bottom)⁻¹` from the
/// base.
pub fn build_band(bottom: &Word, theta: Generator, epsilon: i32) -> Result<Diagram, Error> {
    Ok(band_builder(bottom, theta, epsilon)?.finish())
}

pub(crate) fn band_builder(
    bottom: &Word,
    theta: Generator,
    epsilon: i32,
) -> Result<Builder, Error> {
    if !theta.is_theta() {
        return Err(Error::Domain(format!("{theta:?} is not a θ-letter")));
    }
    if !bottom.is_theta_free() {
        return Err(Error::Domain(format!("band bottom {bottom} contains θ")));
    }
    match epsilon {
        1 => Ok(band(bottom.letters(), theta)),
        -1 if !bottom.is_reduced() => Err(Error::Domain(format!(
            "band bottom {bottom} must be freely reduced for ε = −1"
        ))),
        -1 => {
            let top = phi_power_letterwise(bottom, -1)?;
            let mut b = band(top.letters(), theta);
            b.mirror();
            // reads φ(top) θ⁻¹ top⁻¹ θ; move the base to the final θ
            let m = b.boundary_len();
            b.rotate_boundary(m - 1);
            let p = m - top.len() - 2;
            b.fold_stretch(1, 1 + p);
            Ok(b)
        }
        _ => Err(Error::Domain(format!("epsilon must be ±1, got {epsilon}"))),
    }
}

/// The trapezium filling `uₙ`: `n` θ₁-bands carry `kⁿ` up to `(kaⁿ)ⁿ`,
/// then `n` θ₂-bands carry it back down. The boundary reads `uₙ` from the
/// base.
pub fn build_trapezium(n: usize) -> Result<Diagram, Error> {
    Ok(trapezium_builder(n)?.finish())
}

pub(crate) fn trapezium_builder(n: usize) -> Result<Builder, Error> {
    if n == 0 {
        return Err(Error::Domain("trapezium needs n ≥ 1".into()));
    }
    let row = |j: usize| -> Vec<Letter> {
        let mut out = Vec::with_capacity(n * (j + 1));
        for _ in 0..n {
            out.push(Letter::K);
            out.extend(std::iter::repeat_n(Letter::A, j));
        }
        out
    };
    let mut stack = band(&row(0), Generator::Theta1);
    // position and length of the top side, read right to left
    let mut top = 2 + n;
    for j in 1..n {
        let layer = band(&row(j), Generator::Theta1);
        stack.glue(top, n * (j + 1), layer, 1);
        top += 1;
    }
    for m in (1..=n).rev() {
        let mut layer = band(&row(m - 1), Generator::Theta2);
        layer.mirror();
        stack.glue(top, n * (m + 1), layer, 0);
        top += 1;
    }
    let offset = stack
        .boundary_word()
        .rotation_offset(&commutator_word(n))
        .expect("the trapezium boundary is a rotation of the commutator");
    stack.rotate_boundary(offset);
    Ok(stack)
}

// One rewriting step `L θ^ε u θ^{−ε} R → L v R`.
struct Step {
    left: usize,
    theta: Letter,
    u: Word,
    v: Word,
    before: Word,
    after_unreduced: Word,
}

fn innermost_pair(r: &Word) -> Option<(usize, usize)> {
    let mut prev: Option<usize> = None;
    for (i, &l) in r.letters().iter().enumerate() {
        if !l.is_theta() {
            continue;
        }
        if let Some(p) = prev {
            if r.letters()[p] == l.inverse() {
                return Some((p, i));
            }
        }
        prev = Some(i);
    }
    None
}

/// Options for [`fill_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FillOptions {
    /// Also return the diagram before mirror-pair reduction.
    pub keep_raw: bool,
}

#[derive(Clone, Debug)]
pub struct Filling {
    pub diagram: Diagram,
    pub raw: Option<Diagram>,
    pub theta_steps: usize,
}

/// A reduced van Kampen diagram with boundary `free_reduce(w)`.
pub fn fill(w: &Word) -> Result<Diagram, Error> {
    Ok(fill_with(w, FillOptions::default())?.diagram)
}

/// Band stacking: repeatedly rewrite the leftmost innermost θ-pair, then
/// assemble the bands from the inside out.
///
/// For `θ⁻¹ u θ` the band's cells run along `u` and its other side is
/// `φ(u)`; for `θ u θ⁻¹` they run along `v = φ⁻¹(u)` (reduced) and the
/// band is mirrored, its outer side `φ(v)` being folded back to `u`.
pub fn fill_with(w: &Word, opts: FillOptions) -> Result<Filling, Error> {
    let nf = normal_form(w);
    if !nf.is_identity() {
        return Err(Error::NotNullHomotopic { normal_form: nf });
    }
    let mut r = w.free_reduce();
    let mut steps = Vec::new();
    while let Some((p, q)) = innermost_pair(&r) {
        let letters = r.letters();
        let theta = letters[p];
        let u = Word::new(letters[p + 1..q].to_vec());
        let v = if theta.is_inverted() {
            phi_power_letterwise(&u, 1)?
        } else {
            phi_power(&u, -1)?
        };
        let mut s = letters[..p].to_vec();
        s.extend_from_slice(v.letters());
        s.extend_from_slice(&letters[q + 1..]);
        let after_unreduced = Word::new(s);
        let next = after_unreduced.free_reduce();
        steps.push(Step {
            left: p,
            theta,
            u,
            v,
            before: std::mem::replace(&mut r, next),
            after_unreduced,
        });
    }
    debug_assert!(r.is_empty(), "θ-free identity words reduce to ε");

    let mut b = Builder::point();
    for step in steps.iter().rev() {
        b.unfold(&step.after_unreduced);
        let g = step.theta.generator();
        let vl = step.v.len();
        if step.theta.is_inverted() {
            // θ⁻¹ u θ φ(u)⁻¹; the glued side starts after θ⁻¹ u θ
            let layer = band(step.u.letters(), g);
            b.glue(step.left, vl, layer, step.u.len() + 2);
        } else {
            // mirror reads φ(v) θ⁻¹ v⁻¹ θ
            let mut layer = band(step.v.letters(), g);
            layer.mirror();
            let outer = layer.boundary_len() - vl - 2;
            b.glue(step.left, vl, layer, outer + 1);
            b.fold_stretch(step.left + 1, step.left + 1 + outer);
        }
        debug_assert_eq!(b.boundary_word(), step.before);
    }
    let raw = b.finish();
    let diagram = reduce_diagram(&raw)?;
    Ok(Filling {
        diagram,
        raw: opts.keep_raw.then_some(raw),
        theta_steps: steps.len(),
    })
}

/// Summary of a filling.
#[derive(Clone, Debug, Serialize)]
pub struct FillReport {
    pub input_word: Word,
    pub perimeter: usize,
    pub area: usize,
    pub diameter: usize,
    pub theta_steps: usize,
    pub reduced: bool,
    pub census: CountReport,
}

pub fn fill_report(w: &Word) -> Result<FillReport, Error> {
    let filling = fill_with(w, FillOptions::default())?;
    report_for(w, &filling.diagram, filling.theta_steps)
}

/// The report for a diagram already built for `w`.
pub fn report_for(w: &Word, d: &Diagram, theta_steps: usize) -> Result<FillReport, Error> {
    let reduced = is_reduced(d)?;
    let census = count_report(d)?;
    Ok(FillReport {
        input_word: w.clone(),
        perimeter: d.perimeter()?,
        area: d.area(),
        diameter: diameter(d)?,
        theta_steps,
        reduced,
        census,
    })
}

//! Word problem via the split extension `F(a,k) ⋊ F(θ₁,θ₂)`.
//!
//! Both θ-letters act on `⟨a, k⟩` by the same automorphism
//! `φ: a ↦ a, k ↦ ka`, oriented so that `θ⁻¹ x θ = φ(x)`.
//! A word is scanned left to right, keeping the prefix in the form
//! `T · W` with `T` a reduced θ-word and `W` a reduced `{a,k}`-word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{Generator, Letter, Word};

/// `φ^m(w)` for a word over `{a, k}`, freely reduced.
///
/// Each `k^{±1}` is replaced by `(k a^m)^{±1}`; `a` is fixed.
pub fn phi_power(w: &Word, m: i64) -> Result<Word, Error> {
    if !w.is_theta_free() {
        return Err(Error::Domain(format!(
            "phi_power expects a word over {{a, k}}, got {w}"
        )));
    }
    Ok(phi_power_unchecked(w.letters(), m))
}

/// `φ^m` applied letterwise, *without* free reduction.
pub fn phi_power_letterwise(w: &Word, m: i64) -> Result<Word, Error> {
    if !w.is_theta_free() {
        return Err(Error::Domain(format!(
            "phi_power expects a word over {{a, k}}, got {w}"
        )));
    }
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        substitute(l, m, |x| out.push(x));
    }
    Ok(Word::new(out))
}

fn substitute(l: Letter, m: i64, mut emit: impl FnMut(Letter)) {
    let a = if m >= 0 { Letter::A } else { Letter::A_INV };
    let reps = m.unsigned_abs();
    match (l.generator(), l.is_inverted()) {
        (Generator::K, false) => {
            emit(Letter::K);
            for _ in 0..reps {
                emit(a);
            }
        }
        (Generator::K, true) => {
            for _ in 0..reps {
                emit(a.inverse());
            }
            emit(Letter::K_INV);
        }
        _ => emit(l),
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

pub(crate) fn phi_power_unchecked(letters: &[Letter], m: i64) -> Word {
    let mut stack = Vec::with_capacity(letters.len());
    for &l in letters {
        substitute(l, m, |x| push_reduced(&mut stack, x));
    }
    Word::new(stack)
}

/// Canonical form `theta_part · ak_part` of a group element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct NormalForm {
    pub theta_part: Word,
    pub ak_part: Word,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn is_identity(&self) -> bool {
        self.theta_part.is_empty() && self.ak_part.is_empty()
    }

    /// Right multiplication by one letter; one step of the scan.
    pub fn push(&mut self, l: Letter) {
        if l.is_theta() {
            let mut t = std::mem::take(&mut self.theta_part).into_letters();
            push_reduced(&mut t, l);
            self.theta_part = Word::new(t);
            self.ak_part = phi_power_unchecked(self.ak_part.letters(), i64::from(l.sign()));
        } else {
            let mut w = std::mem::take(&mut self.ak_part).into_letters();
            push_reduced(&mut w, l);
            self.ak_part = Word::new(w);
        }
    }

    /// Product of two elements, computed by continuing the scan of `self`
    /// over the word `other.theta_part · other.ak_part`.
    #[must_use]
    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut acc = self.clone();
        for &l in other
            .theta_part
            .letters()
            .iter()
            .chain(other.ak_part.letters())
        {
            acc.push(l);
        }
        acc
    }

    /// The word `theta_part · ak_part`.
    pub fn to_word(&self) -> Word {
        self.theta_part.concat(&self.ak_part)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.theta_part.pretty(),
            self.ak_part.pretty()
        )
    }
}

/// Left-to-right scan producing the normal form of `w`.
pub fn normal_form(w: &Word) -> NormalForm {
    let mut nf = NormalForm::identity();
    for &l in w.letters() {
        nf.push(l);
    }
    nf
}

/// True iff `w` represents the identity of the group.
pub fn is_identity(w: &Word) -> bool {
    normal_form(w).is_identity()
}

/// `uₙ = [kⁿ, θ₁ⁿ θ₂⁻ⁿ]`, of length `6n`.
pub fn commutator_word(n: usize) -> Word {
    let n = n as i64;
    let kn = Word::letter(Letter::K).pow(n);
    let t = Word::letter(Letter::T1)
        .pow(n)
        .concat(&Word::letter(Letter::T2).pow(-n));
    Word::commutator(&kn, &t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn phi_examples() {
        for n in 0..6 {
            let expect = w("k").concat(&w("a").pow(n));
            assert_eq!(phi_power(&w("k"), n).unwrap(), expect);
        }
        assert_eq!(phi_power(&w("aaaaa"), 17).unwrap(), w("aaaaa"));
        for n in 1..6i64 {
            let kn = w("k").pow(n);
            let expect = w("k").concat(&w("a").pow(n)).pow(n);
            assert_eq!(phi_power(&kn, n).unwrap(), expect);
        }
        assert!(matches!(phi_power(&w("kt"), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_inverse_round_trip() {
        let x = w("kaKKaak");
        for m in -4..=4 {
            let y = phi_power(&x, m).unwrap();
            assert_eq!(phi_power(&y, -m).unwrap(), x.free_reduce());
        }
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            normal_form(&w("Tkt")),
            NormalForm {
                theta_part: Word::empty(),
                ak_part: w("ka")
            }
        );
        assert_eq!(normal_form(&w("Tat")).ak_part, w("a"));
        assert!(normal_form(&w("Tat")).theta_part.is_empty());
        let nf = normal_form(&w("tU"));
        assert_eq!(nf.theta_part, w("tU"));
        assert!(nf.ak_part.is_empty());
        assert!(!nf.is_identity());
    }

    #[test]
    fn identities() {
        assert!(is_identity(&Word::empty()));
        assert!(is_identity(&w("KTktA")));
        for n in 1..=12 {
            let u = commutator_word(n);
            assert_eq!(u.len(), 6 * n);
            assert!(is_identity(&u), "u_{n}");
        }
        assert!(!is_identity(&w("k")));
        assert!(!is_identity(&w("tU")));
    }

    #[test]
    fn commutator_word_matches_parser() {
        assert_eq!(commutator_word(2), w("[k^2, t^2 U^2]"));
    }
}

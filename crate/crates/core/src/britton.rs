//! An independent solution of the word problem, used as a cross-check.
//!
//! Here the group is read as an HNN extension with stable letter `k` over
//! the base `H = ⟨θ₁, θ₂, a | [a, θᵢ]⟩ = F(θ₁, θ₂) × ⟨a⟩`. The defining
//! relations rewrite as `k⁻¹ θᵢ k = θᵢ a⁻¹`, so `k` conjugates
//! `A = ⟨θ₁, θ₂⟩` onto `B = ⟨θ₁a⁻¹, θ₂a⁻¹⟩` via `ψ(T) = T a^{-σ(T)}`, where
//! `σ` is the θ-exponent sum.
//!
//! Every element has a unique reduced form
//! `a^{e₀} T₀ · k^{ε₁} a^{c₁} · k^{ε₂} a^{c₂} ⋯`
//! where `a^{cᵢ}` is the transversal representative of the right coset of
//! `B` (after `k`) or `A` (after `k⁻¹`), and no `k^ε a⁰ k^{-ε}` occurs.
//! None of this relies on the split-extension normal form.

use crate::word::{Generator, Letter, Word};

/// Reduced HNN form; equal elements have equal forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BrittonForm {
    head_a: i64,
    head_theta: Vec<Letter>,
    tail: Vec<(bool, i64)>,
}

fn theta_sum(t: &[Letter]) -> i64 {
    t.iter().map(|l| i64::from(l.sign())).sum()
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

impl BrittonForm {
    pub fn identity() -> Self {
        BrittonForm::default()
    }

    pub fn of_word(w: &Word) -> Self {
        let mut f = BrittonForm::identity();
        for &l in w.letters() {
            f.push(l);
        }
        f
    }

    pub fn is_identity(&self) -> bool {
        self.head_a == 0 && self.head_theta.is_empty() && self.tail.is_empty()
    }

    /// Number of `k`-letters in the reduced form.
    pub fn k_length(&self) -> usize {
        self.tail.len()
    }

    /// Right multiplication by a letter.
    pub fn push(&mut self, l: Letter) {
        match l.generator() {
            Generator::K => {
                let inverted = l.is_inverted();
                match self.tail.last() {
                    Some(&(prev, 0)) if prev != inverted => {
                        self.tail.pop();
                    }
                    _ => self.tail.push((inverted, 0)),
                }
            }
            Generator::A => self.carry(i64::from(l.sign()), &[]),
            Generator::Theta1 | Generator::Theta2 => self.carry(0, &[l]),
        }
    }

    // Multiplies the last syllable by `a^e T` and pushes the subgroup part
    // leftwards through the k-letters.
    fn carry(&mut self, mut e: i64, theta: &[Letter]) {
        let t_sum = theta_sum(theta);
        for i in (0..self.tail.len()).rev() {
            let (inverted, c) = self.tail[i];
            let total = c + e;
            if inverted {
                // after k⁻¹: H = A · a^c, pass ψ(T) = T a^{-σ(T)} to the left
                self.tail[i].1 = total;
                e = -t_sum;
            } else {
                // after k: H = B · a^c with c = e + σ(T), pass ψ⁻¹ = T to the left
                self.tail[i].1 = total + t_sum;
                e = 0;
            }
            if theta.is_empty() {
                return;
            }
        }
        self.head_a += e;
        for &l in theta {
            push_reduced(&mut self.head_theta, l);
        }
    }

    /// A word representing the element (not necessarily geodesic).
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        let a_pow = |letters: &mut Vec<Letter>, e: i64| {
            let l = if e >= 0 { Letter::A } else { Letter::A_INV };
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        };
        a_pow(&mut letters, self.head_a);
        letters.extend_from_slice(&self.head_theta);
        for &(inverted, c) in &self.tail {
            letters.push(if inverted { Letter::K_INV } else { Letter::K });
            a_pow(&mut letters, c);
        }
        Word::new(letters)
    }

    /// Fixed-width key, available whenever every exponent fits in an `i8`
    /// and both the θ-head and the k-tail have at most ten letters. Every
    /// element of length at most ten qualifies.
    pub fn packed(&self) -> Option<u128> {
        if self.head_theta.len() > 10 || self.tail.len() > 10 {
            return None;
        }
        let byte = |v: i64| i8::try_from(v).ok().map(|b| u128::from(b as u8));
        let mut key = 0u128;
        let mut at = 0;
        let mut put = |v: u128, bits: u32| {
            key |= v << at;
            at += bits;
        };
        put(byte(self.head_a)?, 8);
        put(self.head_theta.len() as u128, 4);
        for l in &self.head_theta {
            let code =
                2 * u128::from(l.generator() == Generator::Theta2) + u128::from(l.is_inverted());
            put(code, 2);
        }
        put(self.tail.len() as u128, 4);
        for &(inverted, c) in &self.tail {
            put(u128::from(inverted), 1);
            put(byte(c)?, 8);
        }
        Some(key)
    }

    /// Inverse of [`BrittonForm::packed`].
    pub fn unpack(mut key: u128) -> Self {
        let mut take = |bits: u32| {
            let v = key & ((1u128 << bits) - 1);
            key >>= bits;
            v
        };
        let signed = |v: u128| i64::from(v as u8 as i8);
        let head_a = signed(take(8));
        let head_theta = (0..take(4))
            .map(|_| {
                let code = take(2);
                let g = if code >= 2 {
                    Generator::Theta2
                } else {
                    Generator::Theta1
                };
                Letter::new(g, code % 2 == 1)
            })
            .collect();
        let tail = (0..take(4))
            .map(|_| {
                let inverted = take(1) == 1;
                (inverted, signed(take(8)))
            })
            .collect();
        BrittonForm {
            head_a,
            head_theta,
            tail,
        }
    }
}

/// Word problem by reduction to the HNN normal form.
pub fn is_identity(w: &Word) -> bool {
    BrittonForm::of_word(w).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::RelatorId;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn relators_are_trivial() {
        for r in RelatorId::ALL {
            assert!(is_identity(&r.word()), "{r}");
            assert!(is_identity(&r.word().inverse().rotate(2)), "{r}");
        }
    }

    #[test]
    fn generators_are_distinct_and_nontrivial() {
        for x in Letter::ALL {
            assert!(!is_identity(&Word::letter(x)));
            for y in Letter::ALL {
                let xy = Word::new(vec![x, y.inverse()]);
                assert_eq!(is_identity(&xy), x == y);
            }
        }
    }

    #[test]
    fn commutators_vanish() {
        for n in 1..8 {
            let text = format!("[k^{n}, t^{n} U^{n}]");
            assert!(is_identity(&w(&text)));
        }
        assert!(!is_identity(&w("[k, t]a")));
        assert!(is_identity(&w("[k, t]A")));
    }

    #[test]
    fn to_word_represents_element() {
        for s in ["ktKaTu", "KKtaUk", "atTkkU"] {
            let f = BrittonForm::of_word(&w(s));
            assert_eq!(BrittonForm::of_word(&f.to_word()), f);
        }
    }

    #[test]
    fn keys_distinguish_forms() {
        let a = BrittonForm::of_word(&w("ka"));
        let b = BrittonForm::of_word(&w("Tkt"));
        assert_eq!(a, b);
        assert_eq!(a.packed(), b.packed());
        assert_ne!(a.packed(), BrittonForm::of_word(&w("ak")).packed());
    }

    #[test]
    fn packing_round_trips() {
        for s in [
            "",
            "ktKaTu",
            "KKtaUk",
            "atTkkU",
            "TTTTTTTTTT",
            "kakakakakaK",
            "aaaaaaaaaaaakUUt",
        ] {
            let f = BrittonForm::of_word(&w(s));
            let key = f.packed().expect("fits");
            assert_eq!(BrittonForm::unpack(key), f, "{s}");
        }
        let big = BrittonForm::of_word(&w("k^11"));
        assert_eq!(big.packed(), None);
    }
}

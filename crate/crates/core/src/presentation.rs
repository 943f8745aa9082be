//! The fixed presentation `⟨θ₁, θ₂, a, k | a^{θᵢ} = a, k^{θᵢ} = ka⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::{Generator, Letter, Word};

/// Names of the four defining relators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum RelatorId {
    #[serde(rename = "R_a1")]
    A1,
    #[serde(rename = "R_a2")]
    A2,
    #[serde(rename = "R_k1")]
    K1,
    #[serde(rename = "R_k2")]
    K2,
}

impl RelatorId {
    pub const ALL: [RelatorId; 4] = [RelatorId::A1, RelatorId::A2, RelatorId::K1, RelatorId::K2];

    pub fn theta(self) -> Generator {
        match self {
            RelatorId::A1 | RelatorId::K1 => Generator::Theta1,
            RelatorId::A2 | RelatorId::K2 => Generator::Theta2,
        }
    }

    /// True for `R_k1`, `R_k2`.
    pub fn is_k(self) -> bool {
        matches!(self, RelatorId::K1 | RelatorId::K2)
    }

    pub fn for_letter(theta: Generator, tape: Generator) -> Option<RelatorId> {
        match (theta, tape) {
            (Generator::Theta1, Generator::A) => Some(RelatorId::A1),
            (Generator::Theta2, Generator::A) => Some(RelatorId::A2),
            (Generator::Theta1, Generator::K) => Some(RelatorId::K1),
            (Generator::Theta2, Generator::K) => Some(RelatorId::K2),
            _ => None,
        }
    }

    /// The cyclic boundary word: `θᵢ⁻¹ a θᵢ a⁻¹` or `θᵢ⁻¹ k θᵢ a⁻¹ k⁻¹`.
    pub fn word(self) -> Word {
        let t = Letter::new(self.theta(), false);
        if self.is_k() {
            Word::new(vec![
                t.inverse(),
                Letter::K,
                t,
                Letter::A_INV,
                Letter::K_INV,
            ])
        } else {
            Word::new(vec![t.inverse(), Letter::A, t, Letter::A_INV])
        }
    }

    pub fn relator(self) -> Relator {
        Relator {
            id: self,
            word: self.word(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelatorId::A1 => "R_a1",
            RelatorId::A2 => "R_a2",
            RelatorId::K1 => "R_k1",
            RelatorId::K2 => "R_k2",
        }
    }
}

impl fmt::Display for RelatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A defining relator with its cyclic word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relator {
    pub id: RelatorId,
    pub word: Word,
}

/// All four relators.
pub fn relators() -> Vec<Relator> {
    RelatorId::ALL.iter().map(|r| r.relator()).collect()
}

/// Identifies a word as a cyclic conjugate of a relator or of its inverse.
///
/// Returns the relator and whether the match was against the inverse.
pub fn match_relator(w: &Word) -> Option<(RelatorId, bool)> {
    RelatorId::ALL.into_iter().find_map(|r| {
        let rw = r.word();
        if rw.is_rotation_of(w) {
            Some((r, false))
        } else if rw.inverse().is_rotation_of(w) {
            Some((r, true))
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_words() {
        assert_eq!(RelatorId::A1.word().to_string(), "TatA");
        assert_eq!(RelatorId::A2.word().to_string(), "UauA");
        assert_eq!(RelatorId::K1.word().to_string(), "TktAK");
        assert_eq!(RelatorId::K2.word().to_string(), "UkuAK");
        for r in relators() {
            assert!(r.word.is_cyclically_reduced());
            assert_eq!(r.word.len(), if r.id.is_k() { 5 } else { 4 });
        }
    }

    #[test]
    fn k_relators_have_one_a_edge() {
        for r in RelatorId::ALL {
            let w = r.word();
            assert_eq!(w.count(Generator::A), if r.is_k() { 1 } else { 2 });
            assert_eq!(w.count(Generator::Theta1) + w.count(Generator::Theta2), 2);
        }
    }

    #[test]
    fn matching_up_to_rotation_and_inverse() {
        let w = Word::parse("ktAKT").unwrap();
        assert_eq!(match_relator(&w), Some((RelatorId::K1, false)));
        let inv = RelatorId::A2.word().inverse().rotate(2);
        assert_eq!(match_relator(&inv), Some((RelatorId::A2, true)));
        assert_eq!(match_relator(&Word::parse("tatA").unwrap()), None);
    }
}

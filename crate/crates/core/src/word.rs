//! Letters and words over the alphabet `{θ₁, θ₂, a, k}^{±1}`.
//!
//! The ASCII encoding used everywhere (parser, formatter, JSON) is
//!
//! | letter | θ₁ | θ₁⁻¹ | θ₂ | θ₂⁻¹ | a | a⁻¹ | k | k⁻¹ |
//! |--------|----|------|----|------|---|-----|---|-----|
//! | ASCII  | t  | T    | u  | U    | a | A   | k | K   |
//!
//! The parser additionally accepts powers `x^n` (of a letter, a bracketed
//! commutator or a parenthesised group) and commutators `[x,y] = x⁻¹y⁻¹xy`.
//! These are a convenience for the command line; the formatter only ever
//! emits plain letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ParseError, ParseErrorKind};

/// One of the four generators of the presentation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    Theta1,
    Theta2,
    A,
    K,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Theta1,
        Generator::Theta2,
        Generator::A,
        Generator::K,
    ];

    pub fn is_theta(self) -> bool {
        matches!(self, Generator::Theta1 | Generator::Theta2)
    }
}

/// A generator together with a sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    generator: Generator,
    inverted: bool,
}

impl Letter {
    pub const T1: Letter = Letter::new(Generator::Theta1, false);
    pub const T1_INV: Letter = Letter::new(Generator::Theta1, true);
    pub const T2: Letter = Letter::new(Generator::Theta2, false);
    pub const T2_INV: Letter = Letter::new(Generator::Theta2, true);
    pub const A: Letter = Letter::new(Generator::A, false);
    pub const A_INV: Letter = Letter::new(Generator::A, true);
    pub const K: Letter = Letter::new(Generator::K, false);
    pub const K_INV: Letter = Letter::new(Generator::K, true);

    /// The eight signed generators, in the order `t T u U a A k K`.
    pub const ALL: [Letter; 8] = [
        Letter::T1,
        Letter::T1_INV,
        Letter::T2,
        Letter::T2_INV,
        Letter::A,
        Letter::A_INV,
        Letter::K,
        Letter::K_INV,
    ];

    pub const fn new(generator: Generator, inverted: bool) -> Self {
        Letter {
            generator,
            inverted,
        }
    }

    /// Builds `generator^sign`; any negative sign means the inverse.
    pub fn with_sign(generator: Generator, sign: i32) -> Self {
        Letter::new(generator, sign < 0)
    }

    pub fn generator(self) -> Generator {
        self.generator
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverted)
    }

    pub fn is_theta(self) -> bool {
        self.generator.is_theta()
    }

    pub fn ascii(self) -> char {
        let c = match self.generator {
            Generator::Theta1 => 't',
            Generator::Theta2 => 'u',
            Generator::A => 'a',
            Generator::K => 'k',
        };
        if self.inverted {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_ascii(c: char) -> Option<Self> {
        let generator = match c.to_ascii_lowercase() {
            't' => Generator::Theta1,
            'u' => Generator::Theta2,
            'a' => Generator::A,
            'k' => Generator::K,
            _ => return None,
        };
        Some(Letter::new(generator, c.is_ascii_uppercase()))
    }

    /// Unicode rendering such as `θ₁⁻¹`.
    pub fn pretty(self) -> &'static str {
        match (self.generator, self.inverted) {
            (Generator::Theta1, false) => "θ₁",
            (Generator::Theta1, true) => "θ₁⁻¹",
            (Generator::Theta2, false) => "θ₂",
            (Generator::Theta2, true) => "θ₂⁻¹",
            (Generator::A, false) => "a",
            (Generator::A, true) => "a⁻¹",
            (Generator::K, false) => "k",
            (Generator::K, true) => "k⁻¹",
        }
    }

    /// Dense index in `0..8`, matching the order of [`Letter::ALL`].
    pub fn index(self) -> usize {
        let g = match self.generator {
            Generator::Theta1 => 0,
            Generator::Theta2 => 1,
            Generator::A => 2,
            Generator::K => 3,
        };
        2 * g + usize::from(self.inverted)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        s.serialize_str(self.ascii().encode_utf8(&mut buf))
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::from_ascii(c)
                .ok_or_else(|| serde::de::Error::custom(format!("unknown letter {c:?}"))),
            _ => Err(serde::de::Error::custom(format!(
                "expected a single letter, got {s:?}"
            ))),
        }
    }
}

/// A finite word with a cached "freely reduced" flag.
///
/// Words are values: every operation returns a new word.
/// Equality, ordering and hashing look at the letters only.
#[derive(Clone)]
pub struct Word {
    letters: Vec<Letter>,
    reduced: bool,
}

fn has_cancellation(letters: &[Letter]) -> bool {
    letters.windows(2).any(|w| w[0] == w[1].inverse())
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        let reduced = !has_cancellation(&letters);
        Word { letters, reduced }
    }

    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
            reduced: true,
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word {
            letters: vec![l],
            reduced: true,
        }
    }

    /// Parses the ASCII word grammar; see the module docs.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff no two adjacent letters cancel.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            reduced: self.reduced,
        }
    }

    /// Concatenation without reduction.
    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    /// `self^n`, without reduction; negative `n` uses the inverse.
    #[must_use]
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let reps = n.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        Word::new(letters)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`, without reduction.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// The unique freely reduced word equal to `self` in the free group.
    #[must_use]
    pub fn free_reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word {
            letters: stack,
            reduced: true,
        }
    }

    /// Returns `(core, conjugator)` with `self` freely equal to
    /// `conjugator · core · conjugator⁻¹` and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let r = self.free_reduce();
        let n = r.len();
        let mut peel = 0;
        while 2 * peel + 1 < n && r.letters[peel] == r.letters[n - 1 - peel].inverse() {
            peel += 1;
        }
        let core = Word {
            letters: r.letters[peel..n - peel].to_vec(),
            reduced: true,
        };
        let conjugator = Word {
            letters: r.letters[..peel].to_vec(),
            reduced: true,
        };
        (core, conjugator)
    }

    /// True iff the word is freely reduced and its first letter does not
    /// cancel against its last.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.reduced
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
                _ => true,
            }
    }

    /// The cyclic rotation starting at letter `i`.
    #[must_use]
    pub fn rotate(&self, i: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let i = i % self.len();
        let mut letters = self.letters[i..].to_vec();
        letters.extend_from_slice(&self.letters[..i]);
        Word::new(letters)
    }

    /// True iff `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.rotation_offset(other).is_some()
    }

    /// Smallest `i` with `self.rotate(i) == other`.
    pub fn rotation_offset(&self, other: &Word) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        let n = self.len();
        (0..n).find(|&i| (0..n).all(|j| self.letters[(i + j) % n] == other.letters[j]))
    }

    /// True iff no θ-letters occur.
    pub fn is_theta_free(&self) -> bool {
        self.letters.iter().all(|l| !l.is_theta())
    }

    /// True iff only θ-letters occur.
    pub fn is_theta_only(&self) -> bool {
        self.letters.iter().all(|l| l.is_theta())
    }

    pub fn count(&self, g: Generator) -> usize {
        self.letters.iter().filter(|l| l.generator() == g).count()
    }

    /// Sum of the signs of the letters with generator `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| i64::from(l.sign()))
            .sum()
    }

    /// The subsequence of θ-letters.
    pub fn theta_projection(&self) -> Word {
        Word::new(
            self.letters
                .iter()
                .copied()
                .filter(|l| l.is_theta())
                .collect(),
        )
    }

    /// Unicode rendering, letters separated by nothing, `ε` for the empty word.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        self.letters.iter().map(|l| l.pretty()).collect()
    }

    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.reduced = false;
        }
        self.letters.push(l);
    }
}

impl Default for Word {
    fn default() -> Self {
        Word::empty()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters.cmp(&other.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.ascii())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

// Recursive-descent parser:
//   word  := item*
//   item  := atom ('^' int)?
//   atom  := letter | '(' word ')' | '[' word ',' word ']'
//   int   := '-'? digit+
struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn parse(mut self) -> Result<Word, ParseError> {
        let w = self.word()?;
        match self.peek() {
            None => Ok(w),
            Some(c) => Err(self.err(ParseErrorKind::Unexpected(c))),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, ')' | ']' | ',') {
                break;
            }
            letters.extend(self.item()?.into_letters());
        }
        Ok(Word::new(letters))
    }

    fn item(&mut self) -> Result<Word, ParseError> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.int()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let c = self
            .peek()
            .ok_or_else(|| self.err(ParseErrorKind::UnexpectedEnd))?;
        match c {
            '(' => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            '[' => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&x, &y))
            }
            _ => match Letter::from_ascii(c) {
                Some(l) => {
                    self.pos += 1;
                    Ok(Word::letter(l))
                }
                None => Err(self.err(ParseErrorKind::UnknownCharacter(c))),
            },
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.err(ParseErrorKind::Expected { want, got: Some(c) })),
            None => Err(self.err(ParseErrorKind::Expected { want, got: None })),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(i64::from(d)))
                .ok_or_else(|| self.err(ParseErrorKind::BadExponent))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ParseErrorKind::BadExponent));
        }
        Ok(if negative { -value } else { value })
    }
}

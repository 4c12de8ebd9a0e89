//! Letters, words, codings and the substitution that generates the
//! Rudin-Shapiro fixed point.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the four letters `a < b < c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = b'a',
    B = b'b',
    C = b'c',
    D = b'd',
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn index(self) -> usize {
        (self as u8 - b'a') as usize
    }

    pub fn as_char(self) -> char {
        self as u8 as char
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b, c, d}`, stored as a flat letter array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// ASCII bytes of the word, one byte per letter.
    pub fn as_bytes(&self) -> Vec<u8> {
        self.0.iter().map(|&l| l as u8).collect()
    }

    pub(crate) fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| Letter::from_char(ch).ok_or(Error::InvalidLetter(ch)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// A finite word over `{-1, +1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SignWord(Vec<i8>);

impl SignWord {
    pub fn new(signs: Vec<i8>) -> Result<Self, Error> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSign(bad as i64));
        }
        Ok(SignWord(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SignWord) -> SignWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        SignWord(out)
    }
}

/// Serialized as a `+`/`-` string.
impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignWord)
    }
}

/// Sum of the entries of a sign word; zero for the empty word.
pub fn digit_sum(w: &SignWord) -> i64 {
    w.0.iter().map(|&s| s as i64).sum()
}

/// A letter-to-sign projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCoding {
    table: [i8; 4],
}

impl SignCoding {
    /// `a, b -> +1`, `c, d -> -1`; codes the fixed point to `r`.
    pub const TAU: SignCoding = SignCoding { table: [1, 1, -1, -1] };
    /// `a, c -> +1`, `b, d -> -1`; codes the fixed point to `r'`.
    pub const TAU_PRIME: SignCoding = SignCoding { table: [1, -1, 1, -1] };

    pub fn new(table: [i8; 4]) -> Result<Self, Error> {
        SignWord::new(table.to_vec())?;
        Ok(SignCoding { table })
    }

    pub fn sign(&self, l: Letter) -> i8 {
        self.table[l.index()]
    }

    pub fn apply(&self, w: &Word) -> SignWord {
        SignWord(w.0.iter().map(|&l| self.sign(l)).collect())
    }

    /// `DS` of the coded word, without materializing it.
    pub fn weight(&self, w: &Word) -> i64 {
        w.0.iter().map(|&l| self.sign(l) as i64).sum()
    }
}

/// A letter-to-letter projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterCoding {
    table: [Letter; 4],
}

impl LetterCoding {
    /// The involution `a <-> d`, `b <-> c`, which commutes with the substitution.
    pub const MU: LetterCoding = LetterCoding {
        table: [Letter::D, Letter::C, Letter::B, Letter::A],
    };

    pub fn new(table: [Letter; 4]) -> Self {
        LetterCoding { table }
    }

    pub fn letter(&self, l: Letter) -> Letter {
        self.table[l.index()]
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|&l| self.letter(l)).collect())
    }
}

/// A non-erasing morphism on `{a, b, c, d}*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    images: [Word; 4],
}

impl Substitution {
    pub fn new(images: [Word; 4]) -> Result<Self, Error> {
        if let Some(i) = images.iter().position(Word::is_empty) {
            return Err(Error::ErasingSubstitution(Letter::ALL[i]));
        }
        Ok(Substitution { images })
    }

    /// `a -> ab, b -> ac, c -> db, d -> dc`.
    pub fn rudin_shapiro() -> Self {
        use Letter::*;
        Substitution {
            images: [Word(vec![A, B]), Word(vec![A, C]), Word(vec![D, B]), Word(vec![D, C])],
        }
    }

    pub fn image(&self, l: Letter) -> &Word {
        &self.images[l.index()]
    }

    pub fn is_prolongable(&self, l: Letter) -> bool {
        let img = self.image(l);
        img.len() >= 2 && img.first() == Some(l)
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &l in &w.0 {
            out.extend_from_slice(&self.images[l.index()].0);
        }
        Word(out)
    }

    /// `sub^k(start)`, built iteratively.
    pub fn iterate(&self, start: Letter, k: u32) -> Word {
        let mut w = Word(vec![start]);
        for _ in 0..k {
            w = self.apply(&w);
        }
        w
    }
}

/// Smallest index at which `pattern` occurs in `text`.
pub fn find_factor(pattern: &Word, text: &Word) -> Option<usize> {
    find_bytes(&pattern.as_bytes(), &text.as_bytes())
}

pub(crate) fn find_bytes(pattern: &[u8], text: &[u8]) -> Option<usize> {
    // Letters are ASCII, so both sides are valid UTF-8 and std's two-way
    // substring search applies.
    let pattern = std::str::from_utf8(pattern).ok()?;
    let text = std::str::from_utf8(text).ok()?;
    text.find(pattern)
}

//! Words over the level-`d` priority alphabet `{0, 1, ..., d}`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A single message priority.
pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {letter} exceeds level {level}")]
    LetterAboveLevel { letter: u32, level: u8 },
    #[error("cannot parse word {0:?}")]
    Syntax(String),
}

/// A finite sequence of priorities. The ambient level is carried by context
/// (the model, the code level, ...), and checked with [`Word::check_level`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Highest letter, or `None` for the empty word (height −1).
    pub fn height(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` with `letter` appended.
    pub fn with(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// Removes the letter at 0-based `index`.
    pub fn without(&self, index: usize) -> Word {
        let mut letters = self.0.clone();
        letters.remove(index);
        Word(letters)
    }

    pub fn check_level(&self, level: u8) -> Result<(), WordError> {
        match self.0.iter().find(|&&a| a > level) {
            Some(&letter) => Err(WordError::LetterAboveLevel { letter: letter.into(), level }),
            None => Ok(()),
        }
    }

    /// Parses digits (`"0210"`) or comma-separated integers (`"10,3,0"`).
    /// The empty string and `ε` denote the empty word.
    pub fn parse(text: &str, level: u8) -> Result<Word, WordError> {
        let word: Word = text.parse()?;
        word.check_level(level)?;
        Ok(word)
    }

    /// Text form: digits when every letter is below 10, comma-separated otherwise.
    pub fn to_text(&self) -> String {
        if self.0.iter().all(|&a| a < 10) {
            self.0.iter().map(|&a| char::from(b'0' + a)).collect()
        } else {
            self.0.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Text form fixed by the level: digits for `level <= 9`, commas otherwise.
    pub fn to_text_at(&self, level: u8) -> String {
        if level <= 9 {
            self.to_text()
        } else {
            self.0.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let letters = if text.contains(',') {
            text.split(',')
                .map(|tok| {
                    let value: u32 = tok.trim().parse().map_err(|_| WordError::Syntax(text.to_string()))?;
                    Letter::try_from(value).map_err(|_| WordError::LetterAboveLevel { letter: value, level: u8::MAX })
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|v| v as Letter).ok_or_else(|| WordError::Syntax(text.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples: `w("0210")`.
///
/// # Panics
/// Panics on malformed text.
pub fn w(text: &str) -> Word {
    text.parse().expect("malformed word literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(w("0210").letters(), &[0, 2, 1, 0]);
        assert_eq!(w("").len(), 0);
        assert_eq!(w("ε"), Word::empty());
        assert_eq!(w("10,3,0").letters(), &[10, 3, 0]);
        assert_eq!(w("10,3,0").to_text(), "10,3,0");
        assert_eq!(w("3,0").to_text_at(12), "3,0");
        assert_eq!(Word::empty().to_string(), "ε");
    }

    #[test]
    fn level_is_checked() {
        assert!(Word::parse("0123", 3).is_ok());
        assert_eq!(Word::parse("014", 3), Err(WordError::LetterAboveLevel { letter: 4, level: 3 }));
        assert!(matches!(Word::parse("0a", 3), Err(WordError::Syntax(_))));
    }

    #[test]
    fn height_of_empty_is_none() {
        assert_eq!(Word::empty().height(), None);
        assert_eq!(w("0200").height(), Some(2));
    }
}

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, …, A−1}`.
pub type Letter = u8;

/// A finite word. The empty word is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Parses `"0102"` (one decimal digit per letter) or `"0,10,2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::new());
        }
        let letters = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Letter>()
                        .map_err(|_| Error::Syntax(format!("bad letter {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(|d| d as Letter)
                        .ok_or_else(|| Error::Syntax(format!("bad letter {ch:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
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

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
        } else {
            for (i, l) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

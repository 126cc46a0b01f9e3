//! Words in free groups and finite presentations.

mod families;
mod parse;
mod simplify;
mod word;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use families::{
    adjoin_power_relator, free_group, schlage_puchta_truncation, surface_group, ReducedWords,
    WORD_ENUMERATION_ORDER,
};
pub use parse::{parse_presentation, parse_word};
pub use simplify::simplify;
pub use word::{Letter, Word, WordDisplay};

use crate::error::{Error, Result};

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relators are stored freely and cyclically reduced; empty relators are
/// dropped on construction. Conjugate relators are not identified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

/// Default generator names: `a..z`, then `x26, x27, ...`.
pub fn default_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if count <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for n in &names {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c.is_control()) {
                return Err(Error::InvalidPresentation(format!(
                    "generator name {n:?} is not printable"
                )));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator name `{n}`"
                )));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(Error::InvalidPresentation(format!(
                        "relator uses generator {g} but only {} exist",
                        names.len()
                    )));
                }
            }
        }
        Ok(Self::from_parts_unchecked(names, relators))
    }

    pub(crate) fn from_parts_unchecked(names: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { names, relators }
    }

    /// A presentation with default generator names.
    pub fn with_generators(count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new(default_names(count), relators)
    }

    /// Parses the text file format; see [`parse_presentation`].
    pub fn parse(text: &str) -> Result<Self> {
        parse_presentation(text)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Parses a word over this presentation's generators.
    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.names)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        w.display(&self.names)
    }

    /// Returns a copy with one more relator.
    pub fn with_relator(&self, relator: Word) -> Result<Self> {
        let mut relators = self.relators.clone();
        relators.push(relator);
        Self::new(self.names.clone(), relators)
    }

    /// Serializes to the presentation file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.names.join(" "));
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", r.display(&self.names)));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.names))?;
        }
        f.write_str("⟩")
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Vec<(usize, i8)>>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationRepr {
            generators: self.names.clone(),
            relators: self.relators.iter().map(|r| r.signed().collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PresentationRepr::deserialize(d)?;
        let relators = repr.relators.iter().map(|r| Word::from_signed(r)).collect();
        Presentation::new(repr.generators, relators).map_err(serde::de::Error::custom)
    }
}

//! Text forms of words and presentations.
//!
//! Word grammar: a lowercase letter is a generator, the matching uppercase
//! letter its inverse, juxtaposition is the product, `(w)^n` is a power
//! (negative `n` allowed) and `[u,v]` is the commutator `u v u⁻¹ v⁻¹`.
//! A power may also follow a single letter or a commutator.
//!
//! Presentation files are UTF-8 text with one `gens: a b c` line followed by
//! one `rel: <word>` line per relator. `#` starts a comment.

use super::word::{Letter, Word};
use super::Presentation;
use crate::error::{Error, Result};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = Word::empty();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("malformed exponent"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>()
            .map_err(|_| Error::parse(1, start + 1, "exponent out of range"))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let lower = c.to_ascii_lowercase().to_string();
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == lower)
                    .ok_or_else(|| Error::UnknownGenerator(c.to_string()))?;
                self.pos += 1;
                Ok(Word::new([Letter::new(g, c.is_ascii_uppercase())]))
            }
            Some(c) => Err(self.err(format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a word over single-letter generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        names,
    };
    let w = p.word()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected `{c}`")));
    }
    Ok(w)
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::Parse {
            line,
            column,
            message,
        },
        other => other,
    }
}

/// Parses the presentation file format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens:") {
            if names.is_some() {
                return Err(Error::parse(line_no, 1, "duplicate `gens:` line"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            for n in &list {
                if n.len() != 1 || !n.as_bytes()[0].is_ascii_lowercase() {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("generator name `{n}` is not a single lowercase letter"),
                    ));
                }
            }
            names = Some(list);
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let names = names
                .as_ref()
                .ok_or_else(|| Error::parse(line_no, 1, "`rel:` before `gens:`"))?;
            relators.push(parse_word(rest, names).map_err(|e| relocate(e, line_no))?);
        } else {
            return Err(Error::parse(line_no, 1, "expected a `gens:` or `rel:` line"));
        }
    }
    let names = names.ok_or_else(|| Error::parse(1, 1, "missing `gens:` line"))?;
    Presentation::new(names, relators).map_err(|e| match e {
        Error::InvalidPresentation(m) => Error::parse(1, 1, m),
        other => other,
    })
}

//! Parser for one-relator presentations `< a, b | a^2 b a^-1 b >`.

use hypcert_core::words::{Alphabet, Letter, Presentation, Word, WordError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, column: usize, name: String },
    #[error("{line}:{column}: exponent must be non-zero")]
    ZeroExponent { line: usize, column: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A parsed presentation before the relator is required to be non-trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPresentation {
    pub alphabet: Alphabet,
    /// The relator exactly as written, unreduced.
    pub word: Word,
}

impl RawPresentation {
    pub fn into_presentation(self) -> Result<Presentation, PresentationError> {
        Ok(Presentation::new(self.alphabet, &self.word)?)
    }
}

/// Reduces the relator; a relator that is trivial in the free group is an error.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    parse_raw_presentation(text)?.into_presentation()
}

pub fn parse_raw_presentation(text: &str) -> Result<RawPresentation, PresentationError> {
    let mut p = Parser::new(text);
    p.expect('<')?;
    let mut names = Vec::new();
    loop {
        let (name, line, column) = p.ident("generator name")?;
        if names.contains(&name) {
            return Err(PresentationError::Parse {
                line,
                column,
                message: format!("duplicate generator `{name}`"),
            });
        }
        names.push(name);
        match p.peek() {
            Some(',') => p.bump(),
            _ => break,
        }
    }
    p.expect('|')?;
    let alphabet = Alphabet::new(names)?;
    let mut letters = Vec::new();
    while p.peek().is_some_and(|c| c != '>') {
        let (name, line, column) = p.ident("generator or `>`")?;
        let generator = alphabet
            .index_of(&name)
            .ok_or(PresentationError::UnknownGenerator { line, column, name })?;
        let exponent = if p.peek() == Some('^') {
            p.bump();
            p.exponent()?
        } else {
            1
        };
        let letter = Letter::new(generator, exponent < 0);
        letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
    }
    p.expect('>')?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}` after `>`")));
    }
    Ok(RawPresentation {
        alphabet,
        word: Word::new(letters),
    })
}

/// Largest accepted `|exponent|`, to keep expanded words bounded.
const MAX_EXPONENT: u32 = 1 << 16;

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.advance();
        }
    }

    fn advance(&mut self) {
        if let Some(c) = self.chars.next() {
            if c == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
        }
    }

    /// Next non-blank character, without consuming it.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) {
        self.skip_ws();
        self.advance();
    }

    fn expect(&mut self, want: char) -> Result<(), PresentationError> {
        match self.peek() {
            Some(c) if c == want => {
                self.advance();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize), PresentationError> {
        let (line, column) = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => (self.line, self.column),
            Some(c) => return Err(self.error(format!("expected {what}, found `{c}`"))),
            None => return Err(self.error(format!("expected {what}, found end of input"))),
        };
        let mut name = String::new();
        while let Some(&c) = self.chars.peek() {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                break;
            }
            name.push(c);
            self.advance();
        }
        Ok((name, line, column))
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut sign = 1;
        match self.chars.peek() {
            Some('-') => {
                sign = -1;
                self.advance();
            }
            Some('+') => self.advance(),
            _ => {}
        }
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.advance();
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let value: u32 = digits
            .parse()
            .ok()
            .filter(|&v| v <= MAX_EXPONENT)
            .ok_or_else(|| PresentationError::Parse {
                line,
                column,
                message: format!("exponent exceeds {MAX_EXPONENT}"),
            })?;
        if value == 0 {
            return Err(PresentationError::ZeroExponent { line, column });
        }
        Ok(sign * value as i64)
    }
}

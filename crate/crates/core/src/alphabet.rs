//! Alphabets and words over them.
//!
//! Symbols are opaque tokens; all internal indexing uses the declared order,
//! so reports are reproducible bit for bit.

use crate::error::{Error, Result};

/// Index of a symbol inside an [`Alphabet`].
pub type SymbolId = usize;

/// A word as a sequence of symbol indices.
pub type Word = Vec<SymbolId>;

/// An ordered, duplicate-free set of symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must not be empty".into()));
        }
        for s in &symbols {
            if s.is_empty() || s.contains(char::is_whitespace) || s.contains('|') {
                return Err(Error::Invalid(format!("invalid symbol token `{s}`")));
            }
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The binary alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn index_of(&self, token: &str) -> Result<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s == token)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    /// True when every symbol is a single character, so words render without
    /// separators.
    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Renders a word. Single-character alphabets concatenate directly;
    /// otherwise symbols are joined with `.`.
    pub fn format_word(&self, word: &[SymbolId]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        word.iter()
            .map(|&a| self.symbol(a))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word: either `.`-separated tokens, or (for single-character
    /// alphabets) plain concatenation. The empty string denotes the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains('.') {
            return text.split('.').map(|t| self.index_of(t)).collect();
        }
        if let Ok(id) = self.index_of(text) {
            return Ok(vec![id]);
        }
        if self.single_char() {
            return text
                .chars()
                .map(|c| self.index_of(&c.to_string()))
                .collect();
        }
        Err(Error::UnknownSymbol(text.to_string()))
    }
}

/// Shortlex successor enumeration: all words of the given length in
/// lexicographic order of the declared symbol order.
pub fn words_of_length(alphabet_len: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = alphabet_len.checked_pow(len as u32).expect("word space overflow");
    (0..total).map(move |mut n| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = n % alphabet_len;
            n /= alphabet_len;
        }
        w
    })
}

/// All words of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet_len: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |l| words_of_length(alphabet_len, l))
}

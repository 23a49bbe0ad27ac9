//! Free associative shelves and the free proto-unital, pre-unital and unital shelves
//! as finite multiplication tables over normal-form words.

mod fas;
mod series;
mod unital;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{check_axioms, FiniteMagma};

pub use fas::{
    fas_build, fas_category_census, fas_key_identity_check, CategoryCensus, FasCategory,
    DEFAULT_FAS_BOUND,
};
pub use series::{
    b_recursion, egf_coefficients, fas_counts, fas_diagnostics, fas_recursion, fpus_sizes,
    fus_sizes, unital_family_counts, CountMethod, CountSequence, FasDiagnosticRow, Series,
};
pub use unital::{
    fptus_build, fptus_multiply, fpus_build, fpus_reduce, fpus_reduce_by, fpus_right_zeros,
    fus_build, FpusRule, DEFAULT_UNITAL_BOUND,
};

/// A word over the alphabet `{0, ..., alphabet_size - 1}`, letter `i` printed as the
/// `i`-th lowercase letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<usize>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, alphabet_size: usize) -> Result<Word> {
        if let Some(&letter) = letters.iter().find(|&&l| l >= alphabet_size) {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet: alphabet_size,
            });
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: usize) -> Word {
        Word {
            letters: Vec::new(),
            alphabet_size,
        }
    }

    /// Parses `"aba"`-style letter strings.
    pub fn from_letters(s: &str, alphabet_size: usize) -> Result<Word> {
        let letters = s
            .chars()
            .map(|ch| {
                if ch.is_ascii_lowercase() {
                    Ok((ch as u8 - b'a') as usize)
                } else {
                    Err(Error::Invalid(format!("`{ch}` is not a letter a-z")))
                }
            })
            .collect::<Result<_>>()?;
        Word::new(letters, alphabet_size)
    }

    /// Parses the dotted index form, e.g. `"0.1.0"`; the empty string is the empty word.
    pub fn from_dotted(s: &str, alphabet_size: usize) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty(alphabet_size));
        }
        let letters = s
            .split('.')
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Invalid(format!("bad letter index `{t}`")))
            })
            .collect::<Result<_>>()?;
        Word::new(letters, alphabet_size)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_repeat_free(&self) -> bool {
        first_repeat(&self.letters).is_none()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
        }
    }

    pub fn to_dotted(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(usize::to_string).collect();
        parts.join(".")
    }

    /// Letter form; the empty word prints as `1`. Needs an alphabet of at most 26.
    pub fn to_letters(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters.iter().map(|&l| letter_char(l)).collect()
    }
}

fn letter_char(l: usize) -> char {
    if l < 26 {
        (b'a' + l as u8) as char
    } else {
        '?'
    }
}

pub(crate) fn first_repeat(letters: &[usize]) -> Option<usize> {
    let mut seen = Vec::new();
    for &l in letters {
        if seen.contains(&l) {
            return Some(l);
        }
        seen.push(l);
    }
    None
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= 26 {
            f.write_str(&self.to_letters())
        } else {
            f.write_str(&self.to_dotted())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeKind {
    Fas,
    Fpus,
    Fptus,
    Fus,
}

impl FreeKind {
    pub fn name(self) -> &'static str {
        match self {
            FreeKind::Fas => "fas",
            FreeKind::Fpus => "fpus",
            FreeKind::Fptus => "fptus",
            FreeKind::Fus => "fus",
        }
    }
}

impl fmt::Display for FreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fas" => Ok(FreeKind::Fas),
            "fpus" => Ok(FreeKind::Fpus),
            "fptus" | "fptildeus" => Ok(FreeKind::Fptus),
            "fus" => Ok(FreeKind::Fus),
            other => Err(Error::Invalid(format!("unknown free structure `{other}`"))),
        }
    }
}

/// Normal-form words with their multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeStructureTable {
    pub kind: FreeKind,
    pub alphabet_size: usize,
    pub elements: Vec<Word>,
    pub magma: FiniteMagma,
}

impl FreeStructureTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.elements.iter().position(|e| e.letters == w.letters)
    }

    pub fn index_of_letters(&self, s: &str) -> Option<usize> {
        let w = Word::from_letters(s, self.alphabet_size).ok()?;
        self.index_of(&w)
    }

    pub fn product(&self, x: &Word, y: &Word) -> Option<&Word> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        Some(&self.elements[self.magma.op(i, j)])
    }

    /// Element represented by the product of the letters of `w`, left to right. The
    /// empty word evaluates to the element printed as the empty word, if any.
    pub fn evaluate(&self, w: &Word) -> Option<usize> {
        let Some((&first, rest)) = w.letters().split_first() else {
            return self.index_of(w);
        };
        let letter = |l: usize| {
            Word::new(vec![l], self.alphabet_size)
                .ok()
                .and_then(|x| self.index_of(&x))
        };
        let mut cur = letter(first)?;
        for &l in rest {
            cur = self.magma.op(cur, letter(l)?);
        }
        Some(cur)
    }

    /// Element legend, one `index<TAB>dotted<TAB>letters` line per element.
    pub fn legend(&self) -> String {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{i}\t{}\t{}\n", w.to_dotted(), w))
            .collect()
    }

    /// Whether the table satisfies the axioms its kind promises.
    pub fn satisfies_kind_axioms(&self) -> bool {
        let r = check_axioms(&self.magma);
        match self.kind {
            FreeKind::Fas => r.shelf && r.associative,
            FreeKind::Fpus => r.proto_unital,
            FreeKind::Fptus => r.pre_unital,
            FreeKind::Fus => r.unital && r.shelf,
        }
    }
}

pub(crate) fn table_from_products(
    kind: FreeKind,
    alphabet_size: usize,
    elements: Vec<Word>,
    product: impl Fn(usize, usize) -> usize,
) -> FreeStructureTable {
    let n = elements.len();
    let magma = FiniteMagma::from_fn(n, product).expect("products are element indices");
    FreeStructureTable {
        kind,
        alphabet_size,
        elements,
        magma,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_forms() {
        let w = Word::from_letters("aba", 2).unwrap();
        assert_eq!(w.letters(), &[0, 1, 0]);
        assert_eq!(w.to_dotted(), "0.1.0");
        assert_eq!(Word::from_dotted("0.1.0", 2).unwrap(), w);
        assert_eq!(w.to_string(), "aba");
        assert!(!w.is_repeat_free());
        assert_eq!(Word::empty(3).to_string(), "1");
        assert_eq!(Word::from_dotted("", 3).unwrap(), Word::empty(3));
        assert_eq!(
            Word::from_letters("abc", 2),
            Err(Error::LetterOutOfRange {
                letter: 2,
                alphabet: 2
            })
        );
        assert!(Word::from_letters("aB", 2).is_err());
        assert!(Word::from_dotted("0.x", 2).is_err());
    }

    #[test]
    fn kind_parse() {
        assert_eq!("FPTUS".parse::<FreeKind>().unwrap(), FreeKind::Fptus);
        assert!("free".parse::<FreeKind>().is_err());
    }
}

//! Free proto-unital, pre-unital and unital shelves.
//!
//! Proto-unital words reduce with `xyy → xy`, `a·w·a → w·a` (which contains
//! `bab → ab`) and `aab → ab`. Every rule shortens the word, and the fixed points are
//! single letters, squared letters and repeat-free words of length at least two.

use super::{first_repeat, table_from_products, FreeKind, FreeStructureTable, Word};
use crate::error::{Error, Result};

pub const DEFAULT_UNITAL_BOUND: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FpusRule {
    /// `x y y → x y`
    DropSquareTail,
    /// `a w a → w a`, `w` non-empty
    DropEarlierCopy,
    /// `a a b → a b`
    DropSquareHead,
}

/// Every applicable rewrite as `(rule, index of the letter it deletes)`.
fn rewrites(w: &[usize]) -> Vec<(FpusRule, usize)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        if i + 2 < w.len() && w[i + 1] == w[i + 2] {
            out.push((FpusRule::DropSquareTail, i + 2));
        }
        if (i + 2..w.len()).any(|j| w[j] == w[i]) {
            out.push((FpusRule::DropEarlierCopy, i));
        }
        if i + 2 < w.len() && w[i] == w[i + 1] {
            out.push((FpusRule::DropSquareHead, i));
        }
    }
    out
}

fn check_word(w: &Word) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(())
    }
}

/// Reduces to normal form, applying the candidate chosen by `pick(count)` at each step.
pub fn fpus_reduce_by(w: &Word, mut pick: impl FnMut(usize) -> usize) -> Result<Word> {
    check_word(w)?;
    let mut letters = w.letters().to_vec();
    loop {
        let candidates = rewrites(&letters);
        if candidates.is_empty() {
            return Word::new(letters, w.alphabet_size());
        }
        let (_, at) = candidates[pick(candidates.len()) % candidates.len()];
        letters.remove(at);
    }
}

pub fn fpus_reduce(w: &Word) -> Result<Word> {
    fpus_reduce_by(w, |_| 0)
}

fn check_bound(n: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid(
            "alphabet must have at least one letter".into(),
        ));
    }
    if n > DEFAULT_UNITAL_BOUND {
        return Err(Error::BoundExceeded {
            what,
            order: n,
            bound: DEFAULT_UNITAL_BOUND,
            hint: "",
        });
    }
    Ok(())
}

/// Repeat-free words of length `len` over `n` letters starting with `first`, lexicographic.
fn arrangements_from(n: usize, first: usize, len: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for l in 0..n {
            if !cur.contains(&l) {
                cur.push(l);
                extend(n, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, len, &mut vec![first], &mut out);
    out
}

/// Non-empty repeat-free words in length-lexicographic order.
fn repeat_free_words(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .flat_map(|len| (0..n).flat_map(move |a| arrangements_from(n, a, len)))
        .collect()
}

fn index_table(elements: &[Word]) -> std::collections::HashMap<Vec<usize>, usize> {
    elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.letters().to_vec(), i))
        .collect()
}

/// FPUS(n), elements grouped by first letter: `a, aa`, then the repeat-free words
/// starting with `a` by length, then the same for `b`, and so on.
pub fn fpus_build(n: usize) -> Result<FreeStructureTable> {
    check_bound(n, "free proto-unital shelf")?;
    let mut elements = Vec::new();
    for a in 0..n {
        elements.push(Word::new(vec![a], n)?);
        elements.push(Word::new(vec![a, a], n)?);
        for len in 2..=n {
            for w in arrangements_from(n, a, len) {
                elements.push(Word::new(w, n)?);
            }
        }
    }
    let index = index_table(&elements);
    let products: Vec<usize> = elements
        .iter()
        .flat_map(|x| {
            elements.iter().map(|y| {
                let reduced = fpus_reduce(&x.concat(y)).expect("non-empty");
                index[reduced.letters()]
            })
        })
        .collect();
    let m = elements.len();
    Ok(table_from_products(FreeKind::Fpus, n, elements, |i, j| {
        products[i * m + j]
    }))
}

/// Elements `z` with `x*z = z` for every `x`.
pub fn fpus_right_zeros(n: usize) -> Result<Vec<Word>> {
    let t = fpus_build(n)?;
    Ok(t.magma
        .right_zeros()
        .into_iter()
        .map(|z| t.elements[z].clone())
        .collect())
}

/// `w1` with the letters of `w2` deleted, followed by `w2`. Either word may be empty.
pub fn fptus_multiply(w1: &Word, w2: &Word) -> Result<Word> {
    for w in [w1, w2] {
        if let Some(l) = first_repeat(w.letters()) {
            return Err(Error::RepeatedLetter(l));
        }
    }
    let mut letters: Vec<usize> = w1
        .letters()
        .iter()
        .copied()
        .filter(|l| !w2.letters().contains(l))
        .collect();
    letters.extend_from_slice(w2.letters());
    Word::new(letters, w1.alphabet_size().max(w2.alphabet_size()))
}

fn repeat_free_table(kind: FreeKind, n: usize, with_unit: bool) -> Result<FreeStructureTable> {
    let mut elements = Vec::new();
    if with_unit {
        elements.push(Word::empty(n));
    }
    for w in repeat_free_words(n) {
        elements.push(Word::new(w, n)?);
    }
    let index = index_table(&elements);
    let m = elements.len();
    let mut products = Vec::with_capacity(m * m);
    for x in &elements {
        for y in &elements {
            products.push(index[fptus_multiply(x, y)?.letters()]);
        }
    }
    Ok(table_from_products(kind, n, elements, |i, j| {
        products[i * m + j]
    }))
}

/// F~PUS(n): non-empty repeat-free words in length-lexicographic order.
pub fn fptus_build(n: usize) -> Result<FreeStructureTable> {
    check_bound(n, "free pre-unital shelf")?;
    repeat_free_table(FreeKind::Fptus, n, false)
}

/// FUS(n): F~PUS(n) with the empty word adjoined as element 0, the unit.
pub fn fus_build(n: usize) -> Result<FreeStructureTable> {
    check_bound(n, "free unital shelf")?;
    repeat_free_table(FreeKind::Fus, n, true)
}

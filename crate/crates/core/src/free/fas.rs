//! Free associative shelves by bounded congruence closure.
//!
//! Every non-empty word of length at most `max_len` is a node; the relation
//! `u·v·w·s ~ u·w·v·w·s` (u, v, w non-empty, s possibly empty, both sides within the
//! bound) is merged with union-find. Left context is absorbed into `u`. The class
//! representative is the length-lexicographically least word, and the result is only
//! accepted when rerunning at `max_len + 1` gives the same elements and table.

use petgraph::unionfind::UnionFind;

use super::{table_from_products, FreeKind, FreeStructureTable, Word};
use crate::error::{Error, Result};

pub const DEFAULT_FAS_BOUND: usize = 3;
const MIN_MAX_LEN: usize = 4;

/// Node numbering: words of length `l` occupy `offset[l] .. offset[l] + n^l`, ordered
/// lexicographically, so node order is length-lexicographic order.
struct WordSpace {
    n: usize,
    max_len: usize,
    offset: Vec<usize>,
    pow: Vec<usize>,
}

impl WordSpace {
    fn new(n: usize, max_len: usize) -> Self {
        let mut pow = vec![1usize];
        for _ in 0..=max_len {
            pow.push(pow.last().unwrap() * n);
        }
        let mut offset = vec![0, 0];
        for l in 1..=max_len {
            offset.push(offset[l] + pow[l]);
        }
        WordSpace {
            n,
            max_len,
            offset,
            pow,
        }
    }

    fn node_count(&self) -> usize {
        self.offset[self.max_len + 1]
    }

    fn node(&self, len: usize, value: usize) -> usize {
        self.offset[len] + value
    }

    fn value_of(&self, letters: &[usize]) -> usize {
        letters.iter().fold(0, |acc, &l| acc * self.n + l)
    }

    fn word(&self, node: usize) -> Vec<usize> {
        let len = (1..=self.max_len)
            .find(|&l| node < self.offset[l + 1])
            .expect("node in range");
        let mut value = node - self.offset[len];
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = value % self.n;
            value /= self.n;
        }
        letters
    }
}

/// Class representatives and the multiplication table over their indices.
type Quotient = (Vec<Vec<usize>>, Vec<Vec<usize>>);

struct Closure {
    space: WordSpace,
    uf: UnionFind<u32>,
}

impl Closure {
    fn build(n: usize, max_len: usize) -> Closure {
        let space = WordSpace::new(n, max_len);
        let mut uf = UnionFind::new(space.node_count());
        let pow = &space.pow;
        for lw in 1..=max_len / 2 {
            for lu in 1..=max_len {
                for lv in 1..=max_len {
                    let base = lu + lv + 2 * lw;
                    if base > max_len {
                        break;
                    }
                    for ls in 0..=max_len - base {
                        let (pu, pv, pw, ps) = (pow[lu], pow[lv], pow[lw], pow[ls]);
                        let lhs_len = lu + lv + lw + ls;
                        let rhs_len = base + ls;
                        for u in 0..pu {
                            for v in 0..pv {
                                for w in 0..pw {
                                    let uvw = (u * pv + v) * pw + w;
                                    let uwvw = ((u * pw + w) * pv + v) * pw + w;
                                    for s in 0..ps {
                                        let lhs = space.node(lhs_len, uvw * ps + s);
                                        let rhs = space.node(rhs_len, uwvw * ps + s);
                                        uf.union(lhs as u32, rhs as u32);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Closure { space, uf }
    }

    fn class_of(&self, letters: &[usize]) -> u32 {
        let node = self.space.node(letters.len(), self.space.value_of(letters));
        self.uf.find(node as u32)
    }

    /// Representatives in length-lexicographic order and the table over them.
    fn quotient(&self) -> Result<Quotient> {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut root_index = std::collections::HashMap::new();
        for node in 0..self.space.node_count() {
            let root = self.uf.find(node as u32);
            root_index.entry(root).or_insert_with(|| {
                reps.push(self.space.word(node));
                reps.len() - 1
            });
        }
        let longest = reps.iter().map(Vec::len).max().unwrap_or(0);
        if longest + 1 > self.space.max_len {
            return Err(Error::MaxLenTooSmall {
                min: longest + 1,
                got: self.space.max_len,
            });
        }
        let table = reps
            .iter()
            .map(|x| {
                reps.iter()
                    .map(|y| {
                        // Right-multiply one letter at a time to stay inside the bound.
                        let mut cur = root_index[&self.class_of(x)];
                        for &l in y {
                            let mut w = reps[cur].clone();
                            w.push(l);
                            cur = root_index[&self.class_of(&w)];
                        }
                        cur
                    })
                    .collect()
            })
            .collect();
        Ok((reps, table))
    }
}

fn check_args(n: usize, max_len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid(
            "alphabet must have at least one letter".into(),
        ));
    }
    if n > DEFAULT_FAS_BOUND {
        return Err(Error::BoundExceeded {
            what: "free associative shelf",
            order: n,
            bound: DEFAULT_FAS_BOUND,
            hint: "",
        });
    }
    if max_len < MIN_MAX_LEN {
        return Err(Error::MaxLenTooSmall {
            min: MIN_MAX_LEN,
            got: max_len,
        });
    }
    Ok(())
}

/// Builds FAS(n) from words of length at most `max_len`, certified stable at `max_len + 1`.
pub fn fas_build(n: usize, max_len: usize) -> Result<FreeStructureTable> {
    check_args(n, max_len)?;
    let (reps, table) = Closure::build(n, max_len).quotient()?;
    let next = Closure::build(n, max_len + 1).quotient();
    match next {
        Ok((next_reps, next_table)) if next_reps == reps && next_table == table => {}
        Ok((next_reps, _)) => {
            return Err(Error::Unstable {
                max_len,
                classes: reps.len(),
                next: max_len + 1,
                next_classes: next_reps.len(),
            })
        }
        Err(e) => return Err(e),
    }
    let elements = reps
        .into_iter()
        .map(|letters| Word::new(letters, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(table_from_products(FreeKind::Fas, n, elements, |i, j| {
        table[i][j]
    }))
}

/// Checks `x·y·y·x ~ x·y·x` for every ordered pair of distinct letters, and `aaaa ~ aaa`
/// when there is a single letter.
pub fn fas_key_identity_check(fas: &FreeStructureTable) -> bool {
    let n = fas.alphabet_size;
    let class = |letters: Vec<usize>| Word::new(letters, n).ok().and_then(|w| fas.evaluate(&w));
    let same = |x: Vec<usize>, y: Vec<usize>| {
        let cx = class(x);
        cx.is_some() && cx == class(y)
    };
    if n == 1 {
        return same(vec![0; 4], vec![0; 3]);
    }
    (0..n).all(|a| {
        (0..n)
            .filter(|&b| b != a)
            .all(|b| same(vec![a, b, b, a], vec![a, b, a]))
    })
}

/// Word families from the three-category description of normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FasCategory {
    /// Every letter at most once.
    RepeatFree,
    /// `a·w`, `w` repeat-free and containing `a`.
    LetterThenRepeatFree,
    /// A word of the previous kind with its last letter doubled.
    DoubledLast,
    /// None of the above.
    Other,
}

pub(crate) fn categorize(letters: &[usize]) -> FasCategory {
    use super::first_repeat;
    let is_second = |w: &[usize]| -> bool {
        w.len() >= 2 && first_repeat(&w[1..]).is_none() && w[1..].contains(&w[0])
    };
    if first_repeat(letters).is_none() {
        FasCategory::RepeatFree
    } else if is_second(letters) {
        FasCategory::LetterThenRepeatFree
    } else if letters.len() >= 3
        && letters[letters.len() - 1] == letters[letters.len() - 2]
        && is_second(&letters[..letters.len() - 1])
    {
        FasCategory::DoubledLast
    } else {
        FasCategory::Other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCensus {
    pub repeat_free: usize,
    pub letter_then_repeat_free: usize,
    pub doubled_last: usize,
    /// Representatives outside all three families.
    pub other: Vec<Word>,
}

impl CategoryCensus {
    pub fn described_total(&self) -> usize {
        self.repeat_free + self.letter_then_repeat_free + self.doubled_last
    }
}

/// Sorts the representatives of a FAS table into the three word families.
pub fn fas_category_census(fas: &FreeStructureTable) -> CategoryCensus {
    let mut census = CategoryCensus {
        repeat_free: 0,
        letter_then_repeat_free: 0,
        doubled_last: 0,
        other: Vec::new(),
    };
    for w in &fas.elements {
        match categorize(w.letters()) {
            FasCategory::RepeatFree => census.repeat_free += 1,
            FasCategory::LetterThenRepeatFree => census.letter_then_repeat_free += 1,
            FasCategory::DoubledLast => census.doubled_last += 1,
            FasCategory::Other => census.other.push(w.clone()),
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_letter() {
        let fas = fas_build(1, 6).unwrap();
        let words: Vec<String> = fas.elements.iter().map(Word::to_string).collect();
        assert_eq!(words, ["a", "aa", "aaa"]);
        assert!(fas.satisfies_kind_axioms());
        assert!(fas_key_identity_check(&fas));
    }

    #[test]
    fn two_letters_size_and_identity() {
        let fas = fas_build(2, 8).unwrap();
        assert_eq!(fas.len(), 18);
        assert!(fas.satisfies_kind_axioms());
        assert!(fas_key_identity_check(&fas));
    }

    #[test]
    fn two_letters_match_published_table() {
        use crate::reference::{FAS2_ELEMENTS, FAS2_TABLE};
        let fas = fas_build(2, 8).unwrap();
        let idx: Vec<usize> = FAS2_ELEMENTS
            .iter()
            .map(|s| fas.evaluate(&Word::from_letters(s, 2).unwrap()).unwrap())
            .collect();
        let mut sorted = idx.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 18, "published words hit distinct classes");
        for i in 0..18 {
            for j in 0..18 {
                assert_eq!(
                    fas.magma.op(idx[i], idx[j]),
                    idx[FAS2_TABLE[i][j]],
                    "cell ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn generators_generate() {
        let fas = fas_build(2, 8).unwrap();
        let mut reached = vec![0usize, 1];
        let mut i = 0;
        while i < reached.len() {
            for g in [0, 1] {
                for p in [fas.magma.op(reached[i], g), fas.magma.op(g, reached[i])] {
                    if !reached.contains(&p) {
                        reached.push(p);
                    }
                }
            }
            i += 1;
        }
        assert_eq!(reached.len(), 18);
    }

    #[test]
    fn three_letters() {
        let fas = fas_build(3, 8).unwrap();
        assert_eq!(fas.len(), 93);
        assert!(fas.satisfies_kind_axioms());
        assert!(fas_key_identity_check(&fas));
        let census = fas_category_census(&fas);
        assert_eq!(census.described_total() + census.other.len(), 93);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(
            fas_build(2, 3),
            Err(Error::MaxLenTooSmall { min: 4, got: 3 })
        );
        assert!(matches!(fas_build(4, 8), Err(Error::BoundExceeded { .. })));
        assert!(fas_build(0, 8).is_err());
    }

    #[test]
    fn unstable_bound_is_reported() {
        // Length 4 is too short for two letters: some classes are still merging.
        assert!(matches!(
            fas_build(2, 4),
            Err(Error::Unstable { .. } | Error::MaxLenTooSmall { .. })
        ));
    }

    #[test]
    fn categories() {
        assert_eq!(categorize(&[0, 1]), FasCategory::RepeatFree);
        assert_eq!(categorize(&[0, 0]), FasCategory::LetterThenRepeatFree);
        assert_eq!(categorize(&[1, 0, 1]), FasCategory::LetterThenRepeatFree);
        assert_eq!(categorize(&[0, 0, 0]), FasCategory::DoubledLast);
        assert_eq!(categorize(&[1, 0, 1, 1]), FasCategory::DoubledLast);
        assert_eq!(categorize(&[0, 1, 1]), FasCategory::Other);
    }
}

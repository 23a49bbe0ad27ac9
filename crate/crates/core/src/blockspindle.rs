//! f-block spindles: a disjoint union of blocks `X_i` with self-maps `f_i`, where
//! `x*y = y` inside a block and `x*y = f_j(y)` when `y ∈ X_j` lies in another block.
//!
//! Blocks are laid out consecutively in specification order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{homology_through, HomologyGroup, Theory};
use crate::magma::{canonical_form, FiniteMagma};

pub const MAX_SPINDLE_SIZE: usize = 64;
pub const MAX_SCAN_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSpec {
    /// `functions[i][y]` is `f_i(y)` for `y` in `0..size_i`.
    functions: Vec<Vec<usize>>,
}

impl BlockSpec {
    pub fn new(functions: Vec<Vec<usize>>) -> Result<BlockSpec> {
        if functions.is_empty() || functions.iter().any(Vec::is_empty) {
            return Err(Error::EmptyBlockSpec);
        }
        for (block, f) in functions.iter().enumerate() {
            if let Some((offset, &value)) = f.iter().enumerate().find(|(_, &v)| v >= f.len()) {
                return Err(Error::BlockFunction {
                    block,
                    offset,
                    value,
                    size: f.len(),
                });
            }
        }
        Ok(BlockSpec { functions })
    }

    /// Blocks of the given sizes, each with the identity map.
    pub fn identity(sizes: &[usize]) -> Result<BlockSpec> {
        BlockSpec::new(sizes.iter().map(|&s| (0..s).collect()).collect())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.functions.iter().map(Vec::len).collect()
    }

    pub fn functions(&self) -> &[Vec<usize>] {
        &self.functions
    }

    pub fn total_size(&self) -> usize {
        self.functions.iter().map(Vec::len).sum()
    }

    pub fn has_singleton_block(&self) -> bool {
        self.functions.iter().any(|f| f.len() == 1)
    }
}

/// One `size: f(0) f(1) ... f(size-1)` line per block.
impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for func in &self.functions {
            let values: Vec<String> = func.iter().map(usize::to_string).collect();
            writeln!(f, "{}: {}", func.len(), values.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for BlockSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<BlockSpec> {
        let mut functions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (size, values) = line
                .split_once(':')
                .ok_or_else(|| err("expected `size: f(0) ... f(size-1)`".into()))?;
            let size: usize = size
                .trim()
                .parse()
                .map_err(|_| err(format!("bad block size `{}`", size.trim())))?;
            let values: Vec<usize> = values
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(format!("bad value `{t}`"))))
                .collect::<Result<_>>()?;
            if values.len() != size {
                return Err(err(format!(
                    "block of size {size} lists {} values",
                    values.len()
                )));
            }
            functions.push(values);
        }
        BlockSpec::new(functions)
    }
}

pub fn make_block_spindle(spec: &BlockSpec) -> Result<FiniteMagma> {
    let total = spec.total_size();
    if total > MAX_SPINDLE_SIZE {
        return Err(Error::BoundExceeded {
            what: "block spindle size",
            order: total,
            bound: MAX_SPINDLE_SIZE,
            hint: "",
        });
    }
    let mut block_of = Vec::with_capacity(total);
    let mut start = Vec::with_capacity(spec.functions.len());
    for (i, f) in spec.functions.iter().enumerate() {
        start.push(block_of.len());
        block_of.extend(std::iter::repeat_n(i, f.len()));
    }
    FiniteMagma::from_fn(total, |x, y| {
        let j = block_of[y];
        if block_of[x] == j {
            y
        } else {
            start[j] + spec.functions[j][y - start[j]]
        }
    })
}

/// Block specs with block sizes forming a partition of some total in `1..=max_total`
/// that has a part equal to 1, and every choice of self-maps. Block order does not
/// change the spindle up to isomorphism, so sizes are non-increasing.
pub fn specs_with_singleton(max_total: usize) -> Vec<BlockSpec> {
    fn partitions(rest: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    fn all_maps(size: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..size {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..size).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }
    let mut specs = Vec::new();
    for total in 1..=max_total {
        let mut parts = Vec::new();
        partitions(total, total, &mut Vec::new(), &mut parts);
        for sizes in parts.into_iter().filter(|p| p.contains(&1)) {
            let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
            for &s in &sizes {
                let maps = all_maps(s);
                choices = choices
                    .into_iter()
                    .flat_map(|prefix| {
                        maps.iter().map(move |m| {
                            let mut p = prefix.clone();
                            p.push(m.clone());
                            p
                        })
                    })
                    .collect();
            }
            specs.extend(choices.into_iter().map(|functions| BlockSpec { functions }));
        }
    }
    specs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionWitness {
    pub spec: BlockSpec,
    pub h2: HomologyGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionScanSummary {
    pub specs: usize,
    /// Specs left after removing isomorphic duplicates.
    pub distinct: usize,
    /// Specs with a singleton block whose two-term `H_0..H_2` were all `Z`.
    pub two_term_integral: usize,
    /// Specs with a singleton block where that failed.
    pub two_term_failures: Vec<BlockSpec>,
    /// Specs with a singleton block and no right zero.
    pub missing_right_zero: Vec<BlockSpec>,
    /// Specs whose one-term `H_2` has torsion.
    pub witnesses: Vec<TorsionWitness>,
}

/// One-term `H_2` and two-term `H_0..H_2` of each spec's spindle, isomorphic spindles
/// computed once.
pub fn torsion_witness_scan(specs: &[BlockSpec]) -> Result<TorsionScanSummary> {
    if let Some(big) = specs.iter().find(|s| s.total_size() > MAX_SCAN_SIZE) {
        return Err(Error::BoundExceeded {
            what: "torsion scan spindle size",
            order: big.total_size(),
            bound: MAX_SCAN_SIZE,
            hint: "",
        });
    }
    let built: Vec<(BlockSpec, FiniteMagma)> = specs
        .par_iter()
        .map(|s| {
            let m = make_block_spindle(s)?;
            let key = if m.order() <= crate::magma::CANONICAL_BOUND {
                canonical_form(&m)?
            } else {
                m.clone()
            };
            Ok((s.clone(), key))
        })
        .collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    let distinct: Vec<&(BlockSpec, FiniteMagma)> = built
        .iter()
        .filter(|(_, key)| seen.insert(key.clone()))
        .collect();

    struct Outcome {
        spec: BlockSpec,
        singleton: bool,
        right_zero: bool,
        two_term_ok: bool,
        h2: HomologyGroup,
    }
    let outcomes: Vec<Outcome> = distinct
        .par_iter()
        .map(|(spec, _)| {
            let m = make_block_spindle(spec)?;
            let h2 = homology_through(&m, Theory::OneTerm, 2, false)?
                .pop()
                .expect("three degrees");
            let singleton = spec.has_singleton_block();
            let two_term_ok = !singleton
                || homology_through(&m, Theory::TwoTerm, 2, false)?
                    .iter()
                    .all(HomologyGroup::is_integers);
            Ok(Outcome {
                spec: spec.clone(),
                singleton,
                right_zero: !m.right_zeros().is_empty(),
                two_term_ok,
                h2,
            })
        })
        .collect::<Result<_>>()?;

    let mut summary = TorsionScanSummary {
        specs: specs.len(),
        distinct: distinct.len(),
        two_term_integral: 0,
        two_term_failures: Vec::new(),
        missing_right_zero: Vec::new(),
        witnesses: Vec::new(),
    };
    for o in outcomes {
        if o.singleton {
            if o.two_term_ok {
                summary.two_term_integral += 1;
            } else {
                summary.two_term_failures.push(o.spec.clone());
            }
            if !o.right_zero {
                summary.missing_right_zero.push(o.spec.clone());
            }
        }
        if !o.h2.torsion.is_empty() {
            summary.witnesses.push(TorsionWitness {
                spec: o.spec,
                h2: o.h2,
            });
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spindles() {
        let two = make_block_spindle(&BlockSpec::identity(&[1, 1]).unwrap()).unwrap();
        assert_eq!(two, FiniteMagma::right_projection(2).unwrap());
        let single = make_block_spindle(&BlockSpec::identity(&[4]).unwrap()).unwrap();
        assert_eq!(single, FiniteMagma::right_projection(4).unwrap());

        let spec = BlockSpec::new(vec![vec![0], vec![2, 2, 2]]).unwrap();
        let m = make_block_spindle(&spec).unwrap();
        assert!(m.is_shelf() && m.is_idempotent());
        assert!(m.right_zeros().contains(&0));
    }

    #[test]
    fn validation() {
        assert_eq!(
            BlockSpec::new(vec![vec![0], vec![0, 3]]),
            Err(Error::BlockFunction {
                block: 1,
                offset: 1,
                value: 3,
                size: 2
            })
        );
        assert_eq!(BlockSpec::new(vec![]), Err(Error::EmptyBlockSpec));
        assert!(make_block_spindle(&BlockSpec::identity(&[40, 30]).unwrap()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let spec = BlockSpec::new(vec![vec![0], vec![1, 2, 0]]).unwrap();
        let text = spec.to_string();
        assert_eq!(text, "1: 0\n3: 1 2 0\n");
        assert_eq!(text.parse::<BlockSpec>().unwrap(), spec);
        assert!("2: 0".parse::<BlockSpec>().is_err());
        assert!("x: 0".parse::<BlockSpec>().is_err());
    }

    #[test]
    fn every_small_spec_is_a_spindle_with_right_zero() {
        for spec in specs_with_singleton(5) {
            let m = make_block_spindle(&spec).unwrap();
            assert!(m.is_shelf() && m.is_idempotent(), "{spec}");
            assert!(!m.right_zeros().is_empty(), "{spec}");
        }
    }

    #[test]
    fn spec_counts() {
        // Totals 1, 2, 3: [1]; [1,1]; [2,1] with 4 maps and [1,1,1].
        assert_eq!(specs_with_singleton(3).len(), 1 + 1 + 4 + 1);
    }

    #[test]
    fn scan_small() {
        let s = torsion_witness_scan(&specs_with_singleton(4)).unwrap();
        assert!(s.two_term_failures.is_empty());
        assert!(s.missing_right_zero.is_empty());
        assert_eq!(s.two_term_integral, s.distinct);
    }
}

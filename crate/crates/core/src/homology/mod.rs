//! One-term distributive homology and two-term (rack) homology of finite shelves.
//!
//! The chain module `C_q` is free on `(q+1)`-tuples over the shelf, ordered
//! lexicographically with `x_0` most significant. `d_0` drops the first entry;
//! for `i > 0` the one-term face map is
//! `(x_0*x_i, ..., x_{i-1}*x_i, x_{i+1}, ..., x_q)`. The two-term face map is the
//! difference between deleting `x_i` and the one-term face map, so `d_0 = 0`.
//! `∂_0` is the zero map to `C_{-1} = 0`.

mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::FiniteMagma;

pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, SnfResult};

/// Default cap on the number of basis tuples of a chain module.
pub const DEFAULT_COLUMN_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    OneTerm,
    TwoTerm,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::OneTerm => "one-term",
            Theory::TwoTerm => "two-term",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "one-term" | "one" | "distributive" => Ok(Theory::OneTerm),
            "two-term" | "two" | "rack" => Ok(Theory::TwoTerm),
            other => Err(Error::Invalid(format!("unknown homology theory `{other}`"))),
        }
    }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn torsion_json(&self) -> Vec<serde_json::Value> {
        self.torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect()
    }

    /// Versioned JSON record for one degree.
    pub fn to_json(&self, theory: Theory, q: usize, reduced: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "schema": 1,
            "theory": theory.name(),
            "q": q,
            "free_rank": self.free_rank,
            "torsion": self.torsion_json(),
        });
        if reduced {
            v["reduced"] = serde_json::Value::Bool(true);
        }
        v
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Chain-level operations for one shelf.
#[derive(Debug, Clone)]
pub struct ChainComplex<'a> {
    magma: &'a FiniteMagma,
    theory: Theory,
    cap: usize,
}

/// Sparse chain: basis tuple → coefficient.
pub type Chain = BTreeMap<Vec<usize>, i64>;

fn add_term(chain: &mut Chain, tuple: Vec<usize>, coeff: i64) {
    use std::collections::btree_map::Entry;
    if coeff == 0 {
        return;
    }
    match chain.entry(tuple) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

impl<'a> ChainComplex<'a> {
    /// Fails unless `magma` is a shelf.
    pub fn new(magma: &'a FiniteMagma, theory: Theory) -> Result<Self> {
        if let Some((a, b, c)) = magma.shelf_violation() {
            return Err(Error::NotShelf { a, b, c });
        }
        Ok(ChainComplex {
            magma,
            theory,
            cap: DEFAULT_COLUMN_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    /// Rank of `C_q`, i.e. `n^(q+1)`, checked against the cap.
    pub fn module_rank(&self, q: usize) -> Result<usize> {
        let n = self.magma.order();
        let size = (0..=q).try_fold(1usize, |acc, _| acc.checked_mul(n));
        match size {
            Some(s) if s <= self.cap => Ok(s),
            _ => Err(Error::CapExceeded {
                degree: q,
                columns: size.unwrap_or(usize::MAX),
                cap: self.cap,
            }),
        }
    }

    /// One-term face map `d_i` on a basis tuple.
    pub fn one_term_face(&self, i: usize, t: &[usize]) -> Vec<usize> {
        let m = self.magma;
        let mut out = Vec::with_capacity(t.len() - 1);
        if i == 0 {
            out.extend_from_slice(&t[1..]);
        } else {
            out.extend(t[..i].iter().map(|&x| m.op(x, t[i])));
            out.extend_from_slice(&t[i + 1..]);
        }
        out
    }

    /// Face map `d_i` of this theory as a chain (at most two terms).
    pub fn face(&self, i: usize, t: &[usize]) -> Chain {
        let mut out = Chain::new();
        match self.theory {
            Theory::OneTerm => add_term(&mut out, self.one_term_face(i, t), 1),
            Theory::TwoTerm => {
                let mut deleted = t.to_vec();
                deleted.remove(i);
                add_term(&mut out, deleted, 1);
                add_term(&mut out, self.one_term_face(i, t), -1);
            }
        }
        out
    }

    pub fn face_chain(&self, i: usize, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (t, &c) in chain {
            for (s, d) in self.face(i, t) {
                add_term(&mut out, s, c * d);
            }
        }
        out
    }

    /// `∂_q` applied to a basis tuple of length `q + 1`.
    pub fn boundary_tuple(&self, t: &[usize]) -> Chain {
        let q = t.len() - 1;
        let mut out = Chain::new();
        if q == 0 {
            return out;
        }
        for i in 0..=q {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (s, d) in self.face(i, t) {
                add_term(&mut out, s, sign * d);
            }
        }
        out
    }

    pub fn boundary_chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (t, &c) in chain {
            for (s, d) in self.boundary_tuple(t) {
                add_term(&mut out, s, c * d);
            }
        }
        out
    }

    /// Dense `i64` matrix of `∂_q : C_q → C_{q-1}`, row-major.
    pub(crate) fn boundary_i64(&self, q: usize) -> Result<(usize, usize, Vec<i64>)> {
        let n = self.magma.order();
        let cols = self.module_rank(q)?;
        if q == 0 {
            return Ok((0, cols, Vec::new()));
        }
        let rows = cols / n;
        let columns: Vec<Vec<(usize, i64)>> = (0..cols)
            .into_par_iter()
            .map(|col| {
                let t = decode(col, n, q + 1);
                self.boundary_tuple(&t)
                    .into_iter()
                    .map(|(s, c)| (encode(&s, n), c))
                    .collect()
            })
            .collect();
        let mut data = vec![0i64; rows * cols];
        for (col, entries) in columns.into_iter().enumerate() {
            for (row, c) in entries {
                data[row * cols + col] += c;
            }
        }
        Ok((rows, cols, data))
    }

    pub fn boundary_matrix(&self, q: usize) -> Result<IntMatrix> {
        let (rows, cols, data) = self.boundary_i64(q)?;
        Ok(IntMatrix::from_i64(rows, cols, &data))
    }

    /// Rank and invariant factors of `∂_q`.
    fn boundary_factors(&self, q: usize) -> Result<(usize, Vec<BigInt>)> {
        let (rows, cols, data) = self.boundary_i64(q)?;
        Ok(snf::invariant_factors_i64(rows, cols, data))
    }

    /// `H_0, ..., H_qmax`, sharing boundary ranks between degrees.
    pub fn homology_through(&self, qmax: usize) -> Result<Vec<HomologyGroup>> {
        // Validate every module size before doing any work.
        self.module_rank(qmax + 1)?;
        let factors: Vec<(usize, Vec<BigInt>)> = (0..=qmax + 1)
            .into_par_iter()
            .map(|q| self.boundary_factors(q))
            .collect::<Result<_>>()?;
        (0..=qmax)
            .map(|q| {
                let nullity = self.module_rank(q)? - factors[q].0;
                let (next_rank, ref next_factors) = factors[q + 1];
                Ok(HomologyGroup {
                    free_rank: nullity - next_rank,
                    torsion: next_factors
                        .iter()
                        .filter(|d| !d.is_one())
                        .cloned()
                        .collect(),
                })
            })
            .collect()
    }
}

/// Basis index of a tuple, `x_0` most significant.
pub fn encode(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

/// Matrix of `∂_q` for a shelf.
pub fn boundary_matrix(m: &FiniteMagma, theory: Theory, q: usize) -> Result<IntMatrix> {
    ChainComplex::new(m, theory)?.boundary_matrix(q)
}

pub fn homology(m: &FiniteMagma, theory: Theory, q: usize, reduced: bool) -> Result<HomologyGroup> {
    if reduced && theory == Theory::TwoTerm {
        return Err(Error::ReducedTwoTerm);
    }
    let cx = ChainComplex::new(m, theory)?;
    cx.module_rank(q + 1)?;
    let nullity = cx.module_rank(q)? - cx.boundary_factors(q)?.0;
    let (next_rank, next_factors) = cx.boundary_factors(q + 1)?;
    let mut free_rank = nullity - next_rank;
    if reduced && q == 0 {
        free_rank -= 1;
    }
    Ok(HomologyGroup {
        free_rank,
        torsion: next_factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// `H_0..=H_qmax`; reduced one-term homology drops one copy of `Z` in degree 0.
pub fn homology_through(
    m: &FiniteMagma,
    theory: Theory,
    qmax: usize,
    reduced: bool,
) -> Result<Vec<HomologyGroup>> {
    if reduced && theory == Theory::TwoTerm {
        return Err(Error::ReducedTwoTerm);
    }
    let mut groups = ChainComplex::new(m, theory)?.homology_through(qmax)?;
    if reduced {
        groups[0].free_rank -= 1;
    }
    Ok(groups)
}

/// Checks `∂_{q+1} f_q + f_{q-1} ∂_q = id - α^c` on every basis tuple of degree `q ≤ qmax`,
/// where `f_q(t) = (-1)^(q+1) (t, r)` and `α^c` sends every tuple to `(c, ..., c)`.
/// Also checks that the constant chains `(c, ..., c)` have zero two-term boundary.
pub fn chain_homotopy_verify(m: &FiniteMagma, r: usize, c: usize, qmax: usize) -> Result<bool> {
    let n = m.order();
    if r >= n || c >= n {
        return Err(Error::Invalid(format!(
            "elements ({r}, {c}) outside 0..{n}"
        )));
    }
    if let Some(x) = (0..n).find(|&x| m.op(x, r) != c) {
        return Err(Error::NotRightFixed {
            r,
            c,
            x,
            got: m.op(x, r),
        });
    }
    let cx = ChainComplex::new(m, Theory::TwoTerm)?;
    cx.module_rank(qmax + 1)?;

    let homotopy = |chain: &Chain| -> Chain {
        let mut out = Chain::new();
        for (t, &coeff) in chain {
            let q = t.len() - 1;
            let sign = if q % 2 == 0 { -1 } else { 1 };
            let mut s = t.clone();
            s.push(r);
            add_term(&mut out, s, sign * coeff);
        }
        out
    };

    for q in 0..=qmax {
        let all_ok = (0..cx.module_rank(q)?).into_par_iter().all(|index| {
            let t = decode(index, n, q + 1);
            let single: Chain = [(t.clone(), 1)].into_iter().collect();
            let mut lhs = cx.boundary_chain(&homotopy(&single));
            for (s, v) in homotopy(&cx.boundary_chain(&single)) {
                add_term(&mut lhs, s, v);
            }
            let mut rhs = single;
            add_term(&mut rhs, vec![c; q + 1], -1);
            lhs == rhs
        });
        if !all_ok {
            return Ok(false);
        }
    }
    for q in 0..=qmax + 1 {
        if !cx.boundary_tuple(&vec![c; q + 1]).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionHit {
    /// Position in the input list.
    pub index: usize,
    pub q: usize,
    pub group: HomologyGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorsionScanReport {
    pub scanned: usize,
    pub hits: Vec<TorsionHit>,
}

/// Homology through `qmax` for associative shelves, listing every group with torsion.
pub fn torsion_scan(ms: &[FiniteMagma], theory: Theory, qmax: usize) -> Result<TorsionScanReport> {
    if ms.iter().any(|m| !(m.is_associative() && m.is_shelf())) {
        return Err(Error::NotAssociativeShelf);
    }
    let per_magma: Vec<Vec<TorsionHit>> = ms
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            let groups = ChainComplex::new(m, theory)?.homology_through(qmax)?;
            Ok(groups
                .into_iter()
                .enumerate()
                .filter(|(_, g)| !g.torsion.is_empty())
                .map(|(q, group)| TorsionHit { index, q, group })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(TorsionScanReport {
        scanned: ms.len(),
        hits: per_magma.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn table(rows: &[[usize; 4]; 4]) -> FiniteMagma {
        FiniteMagma::from_rows(rows).unwrap()
    }

    #[test]
    fn point_boundaries() {
        let p = FiniteMagma::trivial();
        for q in 1..=4 {
            let d = boundary_matrix(&p, Theory::OneTerm, q).unwrap();
            let expected = if q % 2 == 0 { 1 } else { 0 };
            assert_eq!(d, IntMatrix::from_i64(1, 1, &[expected]));
            assert!(boundary_matrix(&p, Theory::TwoTerm, q).unwrap().is_zero());
        }
        let d0 = boundary_matrix(&p, Theory::OneTerm, 0).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (0, 1));
    }

    #[test]
    fn point_homology() {
        let p = FiniteMagma::trivial();
        for q in 0..=3 {
            assert!(homology(&p, Theory::OneTerm, q, true).unwrap().is_trivial());
            assert!(homology(&p, Theory::TwoTerm, q, false)
                .unwrap()
                .is_integers());
        }
        assert!(homology(&p, Theory::OneTerm, 0, false)
            .unwrap()
            .is_integers());
    }

    #[test]
    fn left_projection_two_term_is_zero() {
        let t4 = table(&reference::LEFT_PROJECTION_4);
        for q in 0..=3 {
            assert!(boundary_matrix(&t4, Theory::TwoTerm, q).unwrap().is_zero());
        }
    }

    #[test]
    fn small_boundary_layout() {
        // Right projection on two elements: d_1(x0, x1) = (x0*x1) = (x1) = d_0, so ∂_1 = 0.
        let rp = FiniteMagma::right_projection(2).unwrap();
        assert!(boundary_matrix(&rp, Theory::OneTerm, 1).unwrap().is_zero());
        // Left projection: ∂_1(x0, x1) = (x1) - (x0).
        let lp = FiniteMagma::left_projection(2).unwrap();
        let d = boundary_matrix(&lp, Theory::OneTerm, 1).unwrap();
        assert_eq!(d, IntMatrix::from_i64(2, 4, &[0, -1, 1, 0, 0, 1, -1, 0]));
    }

    #[test]
    fn errors() {
        // Addition mod 2: (a+b)+1 differs from (a+1)+(b+1).
        let not_shelf = FiniteMagma::from_rows(&[[0usize, 1], [1, 0]]).unwrap();
        assert!(matches!(
            homology(&not_shelf, Theory::OneTerm, 1, false),
            Err(Error::NotShelf { .. })
        ));
        let t4 = table(&reference::LEFT_PROJECTION_4);
        assert_eq!(
            homology(&t4, Theory::TwoTerm, 0, true),
            Err(Error::ReducedTwoTerm)
        );
        let cx = ChainComplex::new(&t4, Theory::OneTerm)
            .unwrap()
            .with_cap(100);
        assert!(matches!(
            cx.boundary_matrix(3),
            Err(Error::CapExceeded { .. })
        ));
        let t2 = table(&reference::SAMPLE_ROW_CONST_0003);
        assert!(matches!(
            chain_homotopy_verify(&t2, 3, 3, 2),
            Err(Error::NotRightFixed { .. })
        ));
        assert_eq!(
            torsion_scan(&[not_shelf], Theory::OneTerm, 1),
            Err(Error::NotAssociativeShelf)
        );
        assert_eq!(
            torsion_scan(&[], Theory::OneTerm, 2).unwrap(),
            TorsionScanReport::default()
        );
    }

    #[test]
    fn homotopy_on_right_zero_sample() {
        let t5 = table(&reference::SAMPLE_RIGHT_ZERO_3);
        assert!(chain_homotopy_verify(&t5, 3, 3, 3).unwrap());
    }

    #[test]
    fn group_display_and_json() {
        let g = HomologyGroup {
            free_rank: 2,
            torsion: vec![BigInt::from(2), BigInt::from(6)],
        };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(HomologyGroup::free(0).to_string(), "0");
        let j = g.to_json(Theory::TwoTerm, 2, false);
        assert_eq!(
            j.to_string(),
            r#"{"free_rank":2,"q":2,"schema":1,"theory":"two-term","torsion":[2,6]}"#
        );
    }

    #[test]
    fn encode_decode() {
        for i in 0..81 {
            assert_eq!(encode(&decode(i, 3, 4), 3), i);
        }
        assert_eq!(decode(5, 2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn sample_groups() {
        for sample in reference::HOMOLOGY_SAMPLES.iter() {
            let m = table(&sample.table);
            let theory = if sample.two_term {
                Theory::TwoTerm
            } else {
                Theory::OneTerm
            };
            let groups = homology_through(&m, theory, 2, false).unwrap();
            let expected: Vec<HomologyGroup> = sample
                .ranks
                .iter()
                .map(|&r| HomologyGroup::free(r))
                .collect();
            assert_eq!(groups, expected, "{}", sample.name);
        }
    }

    #[test]
    fn single_degree_matches_range() {
        let t7 = table(&reference::SAMPLE_NEAR_RIGHT_PROJECTION);
        let all = homology_through(&t7, Theory::OneTerm, 2, false).unwrap();
        for (q, g) in all.iter().enumerate() {
            assert_eq!(&homology(&t7, Theory::OneTerm, q, false).unwrap(), g);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        for sample in reference::HOMOLOGY_SAMPLES.iter() {
            let m = table(&sample.table);
            for theory in [Theory::OneTerm, Theory::TwoTerm] {
                for q in 1..=3 {
                    let a = boundary_matrix(&m, theory, q).unwrap();
                    let b = boundary_matrix(&m, theory, q + 1).unwrap();
                    assert!(
                        a.mul(&b).unwrap().is_zero(),
                        "{} {theory} q={q}",
                        sample.name
                    );
                }
            }
        }
    }

    #[test]
    fn pre_simplicial_identity() {
        let m = table(&reference::SAMPLE_BIT_MIX);
        for theory in [Theory::OneTerm, Theory::TwoTerm] {
            let cx = ChainComplex::new(&m, theory).unwrap();
            for q in 1..=3 {
                for index in 0..cx.module_rank(q).unwrap() {
                    let t: Chain = [(decode(index, 4, q + 1), 1)].into_iter().collect();
                    for j in 1..=q {
                        for i in 0..j {
                            let lhs = cx.face_chain(i, &cx.face_chain(j, &t));
                            let rhs = cx.face_chain(j - 1, &cx.face_chain(i, &t));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

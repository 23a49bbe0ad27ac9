//! Laver tables `A_k` on `{1, ..., 2^k}`: the left self-distributive operation with
//! `a*1 = a+1 mod 2^k`.
//!
//! Element `a` of the printed table is stored as `a - 1`; the `*_one_indexed` helpers
//! convert at the boundary.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::FiniteMagma;

pub const MAX_LAVER_K: usize = 10;
pub const MAX_UNIQUENESS_K: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaverTable {
    pub k: usize,
    /// Left self-distributive operation, 0-indexed.
    pub magma: FiniteMagma,
}

impl LaverTable {
    pub fn size(&self) -> usize {
        self.magma.order()
    }

    /// `a*b` with 1-indexed arguments and result.
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.magma.op(a - 1, b - 1) + 1
    }

    pub fn rows_one_indexed(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (1..=n)
            .map(|a| (1..=n).map(|b| self.get(a, b)).collect())
            .collect()
    }

    /// `.cay` text with 1-indexed entries.
    pub fn to_cay_one_indexed(&self) -> String {
        cay_one_indexed(&self.magma)
    }

    /// The right self-distributive shelf `x ◁ y = y * x`.
    pub fn transpose(&self) -> FiniteMagma {
        self.magma.transpose()
    }
}

/// `.cay` text of any table, shifting entries to 1-indexed.
pub fn cay_one_indexed(m: &FiniteMagma) -> String {
    let mut out = format!("{}\n", m.order());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn check_k(k: usize, bound: usize, what: &'static str) -> Result<()> {
    if k > bound {
        return Err(Error::BoundExceeded {
            what,
            order: k,
            bound,
            hint: "",
        });
    }
    Ok(())
}

/// Fills rows from the last up: row `2^k` is the identity, and for `a < 2^k`,
/// `a*1 = a+1` and `a*(b+1) = (a*b)*(a+1)`, where `a*b > a` keeps lookups in finished rows.
pub fn laver_build(k: usize) -> Result<LaverTable> {
    check_k(k, MAX_LAVER_K, "Laver table exponent")?;
    let n = 1usize << k;
    let mut t = vec![0u32; n * n];
    // 0-indexed: element a stands for a+1, so the identity row is n-1.
    for b in 0..n {
        t[(n - 1) * n + b] = b as u32;
    }
    for a in (0..n - 1).rev() {
        t[a * n] = (a + 1) as u32;
        for b in 1..n {
            let ab = t[a * n + b - 1] as usize;
            t[a * n + b] = t[ab * n + a + 1];
        }
    }
    let table = LaverTable {
        k,
        magma: FiniteMagma::from_raw(n, t),
    };
    validate(&table)?;
    Ok(table)
}

fn validate(t: &LaverTable) -> Result<()> {
    let m = &t.magma;
    let n = m.order();
    for a in 0..n {
        if m.op(a, 0) != (a + 1) % n {
            return Err(Error::LaverInvariant(format!(
                "{}*1 = {}, expected {}",
                a + 1,
                m.op(a, 0) + 1,
                (a + 1) % n + 1
            )));
        }
        if m.op(n - 1, a) != a {
            return Err(Error::LaverInvariant(format!(
                "row {n} is not the identity"
            )));
        }
    }
    let bad = (0..n).into_par_iter().find_any(|&a| {
        (0..n).any(|b| {
            let ab = m.op(a, b);
            (0..n).any(|c| m.op(a, m.op(b, c)) != m.op(ab, m.op(a, c)))
        })
    });
    if let Some(a) = bad {
        return Err(Error::LaverInvariant(format!(
            "left self-distributivity fails in row {}",
            a + 1
        )));
    }
    Ok(())
}

const UNSET: u8 = u8::MAX;

/// Whether every fully assigned instance of `a*(b*c) = (a*b)*(a*c)` holds.
fn partial_lsd_consistent(t: &[u8], n: usize) -> bool {
    let get = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = get(a, b);
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let (bc, ac) = (get(b, c), get(a, c));
                if bc == UNSET || ac == UNSET {
                    continue;
                }
                let (lhs, rhs) = (get(a, bc as usize), get(ab as usize, ac as usize));
                if lhs != UNSET && rhs != UNSET && lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn search_lsd(t: &mut [u8], free: &[usize], n: usize, found: &mut Vec<Vec<u8>>) {
    let Some((&cell, rest)) = free.split_first() else {
        found.push(t.to_vec());
        return;
    };
    for v in 0..n as u8 {
        t[cell] = v;
        if partial_lsd_consistent(t, n) {
            search_lsd(t, rest, n, found);
        }
    }
    t[cell] = UNSET;
}

/// Counts the left self-distributive tables of order `2^k` with `a*1 = a+1 mod 2^k` by
/// backtracking, and confirms the only one is `laver_build(k)`.
pub fn laver_uniqueness_check(k: usize) -> Result<bool> {
    check_k(k, MAX_UNIQUENESS_K, "Laver uniqueness search")?;
    let n = 1usize << k;
    let mut t = vec![UNSET; n * n];
    for a in 0..n {
        t[a * n] = ((a + 1) % n) as u8;
    }
    let free: Vec<usize> = (0..n * n).filter(|&i| i % n != 0).collect();
    let mut found = Vec::new();
    search_lsd(&mut t, &free, n, &mut found);
    let built = laver_build(k)?;
    let expected: Vec<u8> = built.magma.raw_table().iter().map(|&v| v as u8).collect();
    Ok(found.len() == 1 && found[0] == expected)
}

/// Right-fixed pairs and bijective columns of the transposed table, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaverRightStructure {
    pub k: usize,
    /// `(r, c)` with `x ◁ r = c` for every `x`.
    pub right_fixed: Vec<(usize, usize)>,
    /// `y` with `x ↦ x ◁ y` bijective.
    pub bijective_columns: Vec<usize>,
    /// `y` with `x ↦ x ◁ y` the identity.
    pub identity_columns: Vec<usize>,
    /// Whether `2^(k-1)` is right-fixed, for comparison with `2^k - 1`.
    pub half_is_right_fixed: bool,
}

impl LaverRightStructure {
    pub fn render(&self) -> String {
        let n = 1usize << self.k;
        let pairs: Vec<String> = self
            .right_fixed
            .iter()
            .map(|(r, c)| format!("({r},{c})"))
            .collect();
        format!(
            "right-fixed pairs: {}\nbijective columns: {:?}\nidentity columns: {:?}\n\
             ({}, {}) is right-fixed; {} is{} right-fixed\n",
            pairs.join(" "),
            self.bijective_columns,
            self.identity_columns,
            n - 1,
            n,
            n / 2,
            if self.half_is_right_fixed { "" } else { " not" },
        )
    }
}

/// Confirms that `(2^k - 1, 2^k)` is right-fixed and `2^k` is an identity column in the
/// transpose of `A_k`.
pub fn laver_right_structure(k: usize) -> Result<LaverRightStructure> {
    if k == 0 {
        return Err(Error::Invalid("right structure needs k >= 1".into()));
    }
    let table = laver_build(k)?;
    let t = table.transpose();
    let n = t.order();
    let right_fixed: Vec<(usize, usize)> = t
        .right_fixed_elements()
        .into_iter()
        .map(|(r, c)| (r + 1, c + 1))
        .collect();
    let bijective_columns: Vec<usize> = t
        .bijective_right_translations()
        .into_iter()
        .map(|y| y + 1)
        .collect();
    let identity_columns: Vec<usize> = (0..n)
        .filter(|&y| (0..n).all(|x| t.op(x, y) == x))
        .map(|y| y + 1)
        .collect();
    if !right_fixed.contains(&(n - 1, n)) {
        return Err(Error::LaverInvariant(format!(
            "row {} of A_{k} is {:?}, not constantly {n}",
            n - 1,
            table.rows_one_indexed()[n - 2]
        )));
    }
    if !identity_columns.contains(&n) {
        return Err(Error::LaverInvariant(format!(
            "row {n} of A_{k} is {:?}, not the identity",
            table.rows_one_indexed()[n - 1]
        )));
    }
    let half_is_right_fixed = right_fixed.iter().any(|&(r, _)| r == n / 2);
    Ok(LaverRightStructure {
        k,
        right_fixed,
        bijective_columns,
        identity_columns,
        half_is_right_fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{LAVER_A2, LAVER_A3};

    #[test]
    fn small_tables() {
        assert_eq!(laver_build(0).unwrap().rows_one_indexed(), vec![vec![1]]);
        assert_eq!(
            laver_build(1).unwrap().rows_one_indexed(),
            vec![vec![2, 2], vec![1, 2]]
        );
        let a2: Vec<Vec<usize>> = LAVER_A2.iter().map(|r| r.to_vec()).collect();
        assert_eq!(laver_build(2).unwrap().rows_one_indexed(), a2);
        let a3: Vec<Vec<usize>> = LAVER_A3.iter().map(|r| r.to_vec()).collect();
        assert_eq!(laver_build(3).unwrap().rows_one_indexed(), a3);
        assert!(matches!(laver_build(11), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn transposes_are_shelves() {
        for k in 0..=4 {
            let t = laver_build(k).unwrap();
            assert!(t.magma.is_left_self_distributive());
            assert!(t.transpose().is_shelf());
        }
    }

    #[test]
    fn uniqueness() {
        for k in 0..=2 {
            assert!(laver_uniqueness_check(k).unwrap(), "k={k}");
        }
        assert!(laver_uniqueness_check(3).is_err());
    }

    #[test]
    fn right_structure() {
        let s = laver_right_structure(2).unwrap();
        assert!(s.right_fixed.contains(&(3, 4)));
        assert_eq!(s.identity_columns, vec![4]);
        assert!(!s.half_is_right_fixed);
        for k in 1..=8 {
            laver_right_structure(k).unwrap();
        }
        assert!(laver_right_structure(0).is_err());
    }

    #[test]
    fn one_indexed_cay() {
        assert_eq!(
            laver_build(1).unwrap().to_cay_one_indexed(),
            "2\n2 2\n1 2\n"
        );
    }
}

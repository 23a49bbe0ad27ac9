//! Finite magmas given by Cayley tables, axiom checks, and isomorphism.
//!
//! Elements are the indices `0..n`. The stored operation is `x * y = table[x * n + y]`.
//! "Shelf" always means right self-distributive: `(a*b)*c = (a*c)*(b*c)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default order bound for [`canonical_form`].
pub const CANONICAL_BOUND: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct FiniteMagma {
    order: usize,
    table: Vec<u32>,
}

impl FiniteMagma {
    /// Validates a row-major table. Cell `(x, y)` holds `x * y`.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyMagma);
        }
        if table.len() != order * order {
            return Err(Error::TableShape {
                order,
                expected: order * order,
                found: table.len(),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(Error::EntryOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
        }
        Ok(FiniteMagma {
            order,
            table: table.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for (x, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::TableShape {
                    order,
                    expected: order * order,
                    found: x * order + row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        Self::new(order, table)
    }

    /// Builds a magma from a closure; the closure must return values in range.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(op(x, y));
            }
        }
        Self::new(order, table)
    }

    pub(crate) fn from_raw(order: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(table.iter().all(|&v| (v as usize) < order));
        FiniteMagma { order, table }
    }

    pub fn trivial() -> Self {
        FiniteMagma {
            order: 1,
            table: vec![0],
        }
    }

    pub fn left_projection(order: usize) -> Result<Self> {
        Self::from_fn(order, |x, _| x)
    }

    pub fn right_projection(order: usize) -> Result<Self> {
        Self::from_fn(order, |_, y| y)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn raw_table(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.op(x, y)).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_shelf(&self) -> bool {
        self.shelf_violation().is_none()
    }

    /// First triple `(a, b, c)` with `(a*b)*c != (a*c)*(b*c)`.
    pub fn shelf_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(self.op(a, c), self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_left_self_distributive(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.op(a, self.op(b, c)) == self.op(self.op(a, b), self.op(a, c)))
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                (0..n).all(|c| self.op(ab, c) == self.op(a, self.op(b, c)))
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.order).all(|x| self.op(x, x) == x)
    }

    /// `a*b = b*(a*b)` for all `a, b`.
    pub fn satisfies_absorption_left(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                self.op(b, ab) == ab
            })
        })
    }

    /// `a*b = (a*b)*b` for all `a, b`.
    pub fn satisfies_absorption_right(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.op(a, b);
                self.op(ab, b) == ab
            })
        })
    }

    fn column_is_bijective(&self, y: usize) -> bool {
        let mut seen = vec![false; self.order];
        for x in 0..self.order {
            let v = self.op(x, y);
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    fn row_is_bijective(&self, x: usize) -> bool {
        let mut seen = vec![false; self.order];
        for y in 0..self.order {
            let v = self.op(x, y);
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Elements `y` for which `x -> x*y` is a bijection.
    pub fn bijective_right_translations(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&y| self.column_is_bijective(y))
            .collect()
    }

    /// Elements `y` with `y*x = y` for all `x`.
    pub fn left_zeros(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&y| (0..self.order).all(|x| self.op(y, x) == y))
            .collect()
    }

    pub fn is_latin_square(&self) -> bool {
        (0..self.order).all(|i| self.row_is_bijective(i) && self.column_is_bijective(i))
    }

    /// The unique two-sided unit, if any.
    pub fn unit(&self) -> Option<usize> {
        (0..self.order).find(|&u| (0..self.order).all(|x| self.op(x, u) == x && self.op(u, x) == x))
    }

    /// Pairs `(r, c)` such that `x*r = c` for every `x`, sorted by `r`.
    pub fn right_fixed_elements(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .filter_map(|r| {
                let c = self.op(0, r);
                (0..self.order)
                    .all(|x| self.op(x, r) == c)
                    .then_some((r, c))
            })
            .collect()
    }

    pub fn right_zeros(&self) -> Vec<usize> {
        self.right_fixed_elements()
            .into_iter()
            .filter_map(|(r, c)| (r == c).then_some(r))
            .collect()
    }

    pub fn transpose(&self) -> FiniteMagma {
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.table[y * n + x];
            }
        }
        FiniteMagma::from_raw(n, table)
    }

    /// Relabels by `sigma`: the result satisfies `sigma(x*y) = sigma(x) *' sigma(y)`.
    pub fn permute(&self, sigma: &[usize]) -> Result<FiniteMagma> {
        let n = self.order;
        if !is_permutation(sigma, n) {
            return Err(Error::Invalid(format!(
                "{sigma:?} is not a permutation of 0..{n}"
            )));
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[sigma[x] * n + sigma[y]] = sigma[self.op(x, y)] as u32;
            }
        }
        Ok(FiniteMagma::from_raw(n, table))
    }

    /// Adjoins a fresh element `n` acting as a two-sided unit.
    pub fn adjoin_unit(&self) -> FiniteMagma {
        let n = self.order;
        let m = n + 1;
        let mut table = vec![0u32; m * m];
        for x in 0..m {
            for y in 0..m {
                table[x * m + y] = if x == n {
                    y as u32
                } else if y == n {
                    x as u32
                } else {
                    self.table[x * n + y]
                };
            }
        }
        FiniteMagma::from_raw(m, table)
    }

    /// Removes `unit` and relabels the remaining elements in increasing order.
    /// Fails when some product of non-unit elements equals the unit.
    pub fn remove_element(&self, unit: usize) -> Result<FiniteMagma> {
        let n = self.order;
        if n < 2 || unit >= n {
            return Err(Error::Invalid(format!(
                "cannot remove element {unit} from a magma of order {n}"
            )));
        }
        let relabel = |v: usize| if v > unit { v - 1 } else { v };
        let mut table = Vec::with_capacity((n - 1) * (n - 1));
        for x in (0..n).filter(|&x| x != unit) {
            for y in (0..n).filter(|&y| y != unit) {
                let v = self.op(x, y);
                if v == unit {
                    return Err(Error::Invalid(format!(
                        "{x}*{y} equals the removed element {unit}"
                    )));
                }
                table.push(relabel(v) as u32);
            }
        }
        Ok(FiniteMagma::from_raw(n - 1, table))
    }

    /// Serializes in `.cay` format.
    pub fn to_cay(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order.to_string());
        out.push('\n');
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|y| self.op(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_cay(text: &str) -> Result<FiniteMagma> {
        let mut blocks = parse_cay_blocks(text)?;
        match blocks.len() {
            1 => Ok(blocks.pop().unwrap()),
            0 => Err(Error::Parse {
                line: 1,
                message: "missing order line".into(),
            }),
            _ => Err(Error::Parse {
                line: text.lines().count(),
                message: "trailing content after the table".into(),
            }),
        }
    }
}

impl TryFrom<Vec<Vec<usize>>> for FiniteMagma {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        FiniteMagma::from_rows(&rows)
    }
}

impl From<FiniteMagma> for Vec<Vec<usize>> {
    fn from(m: FiniteMagma) -> Self {
        m.rows()
    }
}

impl fmt::Debug for FiniteMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMagma({}; {:?})", self.order, self.rows())
    }
}

impl fmt::Display for FiniteMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cay())
    }
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    sigma
        .iter()
        .all(|&s| s < n && !std::mem::replace(&mut seen[s], true))
}

/// Parses one or more `.cay` blocks. Blank lines and `#` comments are ignored
/// outside of numeric content; each block is an order line followed by `n` rows.
pub fn parse_cay_blocks(text: &str) -> Result<Vec<FiniteMagma>> {
    let mut out = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    while let Some((line, head)) = lines.next() {
        let order: usize = head.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected the order, found `{head}`"),
        })?;
        if order == 0 {
            return Err(Error::Parse {
                line,
                message: "order must be at least 1".into(),
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let (line, text) = lines.next().ok_or_else(|| Error::Parse {
                line: text.lines().count() + 1,
                message: format!("expected {order} rows, found {row}"),
            })?;
            let mut count = 0;
            for tok in text.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{tok}` is not a non-negative integer"),
                })?;
                if v >= order {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "entry {v} at cell ({row}, {count}) is outside [0, {order})"
                        ),
                    });
                }
                table.push(v);
                count += 1;
            }
            if count != order {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {order} entries, found {count}"),
                });
            }
        }
        out.push(FiniteMagma::new(order, table)?);
    }
    Ok(out)
}

/// Concatenates tables as `.cay` blocks separated by blank lines.
pub fn format_cay_blocks<'a>(magmas: impl IntoIterator<Item = &'a FiniteMagma>) -> String {
    magmas
        .into_iter()
        .map(FiniteMagma::to_cay)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    pub shelf: bool,
    pub idempotent: bool,
    pub rack: bool,
    pub spindle: bool,
    pub quandle: bool,
    pub associative: bool,
    pub quasigroup: bool,
    /// Unital shelf: a shelf with a two-sided unit.
    pub unital: bool,
    pub unit: Option<usize>,
    pub proto_unital: bool,
    pub pre_unital: bool,
    pub right_fixed: Vec<(usize, usize)>,
    pub right_zeros: Vec<usize>,
}

pub fn check_axioms(m: &FiniteMagma) -> AxiomReport {
    let shelf = m.is_shelf();
    let idempotent = m.is_idempotent();
    let right_invertible = (0..m.order()).all(|y| m.column_is_bijective(y));
    let rack = shelf && right_invertible;
    let spindle = shelf && idempotent;
    let unit = m.unit();
    let proto_unital = shelf && m.satisfies_absorption_left() && m.satisfies_absorption_right();
    let right_fixed = m.right_fixed_elements();
    let right_zeros = right_fixed
        .iter()
        .filter_map(|&(r, c)| (r == c).then_some(r))
        .collect();
    AxiomReport {
        order: m.order(),
        shelf,
        idempotent,
        rack,
        spindle,
        quandle: rack && spindle,
        associative: m.is_associative(),
        quasigroup: m.is_latin_square(),
        unital: shelf && unit.is_some(),
        unit,
        proto_unital,
        pre_unital: proto_unital && idempotent,
        right_fixed,
        right_zeros,
    }
}

pub fn right_fixed_elements(m: &FiniteMagma) -> Vec<(usize, usize)> {
    m.right_fixed_elements()
}

pub fn transpose(m: &FiniteMagma) -> FiniteMagma {
    m.transpose()
}

/// Finds `sigma` with `sigma(x*y) = sigma(x) *' sigma(y)`.
pub fn find_isomorphism(a: &FiniteMagma, b: &FiniteMagma) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Err(Error::SizeMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    let n = a.order();
    // Cheap invariant: multiset of (is idempotent, row image size, column image size).
    let profile = |m: &FiniteMagma| {
        let mut p: Vec<(bool, usize, usize)> = (0..n)
            .map(|x| {
                let mut row: Vec<usize> = (0..n).map(|y| m.op(x, y)).collect();
                row.sort_unstable();
                row.dedup();
                let mut col: Vec<usize> = (0..n).map(|y| m.op(y, x)).collect();
                col.sort_unstable();
                col.dedup();
                (m.op(x, x) == x, row.len(), col.len())
            })
            .collect();
        p.sort_unstable();
        p
    };
    if profile(a) != profile(b) {
        return Ok(None);
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_isomorphism(a, b, 0, &mut sigma, &mut used).then_some(sigma))
}

fn extend_isomorphism(
    a: &FiniteMagma,
    b: &FiniteMagma,
    next: usize,
    sigma: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.order();
    if next == n {
        return true;
    }
    for image in 0..n {
        if used[image] {
            continue;
        }
        sigma[next] = image;
        used[image] = true;
        if consistent_prefix(a, b, next, sigma) && extend_isomorphism(a, b, next + 1, sigma, used) {
            return true;
        }
        used[image] = false;
    }
    sigma[next] = usize::MAX;
    false
}

/// Checks every product involving `newest` among the assigned prefix `0..=newest`.
fn consistent_prefix(a: &FiniteMagma, b: &FiniteMagma, newest: usize, sigma: &[usize]) -> bool {
    for x in 0..=newest {
        for (p, q) in [(x, newest), (newest, x)] {
            let v = a.op(p, q);
            if v <= newest && sigma[v] != b.op(sigma[p], sigma[q]) {
                return false;
            }
        }
    }
    // Products landing outside the prefix must not collide with already-used images.
    for p in 0..=newest {
        for q in 0..=newest {
            let v = a.op(p, q);
            if v > newest {
                let target = b.op(sigma[p], sigma[q]);
                if sigma[..=newest].contains(&target) {
                    return false;
                }
            }
        }
    }
    true
}

/// Lexicographically least relabeled table over all permutations.
pub fn canonical_form(m: &FiniteMagma) -> Result<FiniteMagma> {
    canonical_form_bounded(m, CANONICAL_BOUND)
}

pub fn canonical_form_bounded(m: &FiniteMagma, bound: usize) -> Result<FiniteMagma> {
    let n = m.order();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "canonical_form",
            order: n,
            bound,
            hint: "; compare pairwise with find_isomorphism instead",
        });
    }
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = vec![0u32; n * n];
    for_each_permutation(n, |sigma| {
        // inverse[i] = the old element that becomes i
        let mut inverse = vec![0usize; n];
        for (old, &new) in sigma.iter().enumerate() {
            inverse[new] = old;
        }
        // Build row-major and abandon as soon as the prefix is worse than the best.
        let mut ordering = std::cmp::Ordering::Equal;
        for i in 0..n {
            for j in 0..n {
                let v = sigma[m.op(inverse[i], inverse[j])] as u32;
                scratch[i * n + j] = v;
                if ordering == std::cmp::Ordering::Equal {
                    if let Some(b) = &best {
                        ordering = v.cmp(&b[i * n + j]);
                        if ordering == std::cmp::Ordering::Greater {
                            return;
                        }
                    }
                }
            }
        }
        if best.is_none() || ordering == std::cmp::Ordering::Less {
            best = Some(scratch.clone());
        }
    });
    Ok(FiniteMagma::from_raw(
        n,
        best.expect("at least one permutation"),
    ))
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Number of automorphisms, by brute force over all permutations.
pub fn automorphism_count(m: &FiniteMagma) -> usize {
    let n = m.order();
    let mut count = 0;
    for_each_permutation(n, |sigma| {
        let ok = (0..n).all(|x| (0..n).all(|y| sigma[m.op(x, y)] == m.op(sigma[x], sigma[y])));
        if ok {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn constant(n: usize, v: usize) -> FiniteMagma {
        FiniteMagma::from_fn(n, |_, _| v).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let m = FiniteMagma::from_rows(&reference::ASSOCIATIVE_SPINDLE_4).unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(
            FiniteMagma::new(1, vec![0]).unwrap(),
            FiniteMagma::trivial()
        );
        assert_eq!(
            FiniteMagma::new(2, vec![0, 2, 0, 1]),
            Err(Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            })
        );
        assert_eq!(FiniteMagma::new(0, vec![]), Err(Error::EmptyMagma));
    }

    #[test]
    fn axiom_examples() {
        let spindle = FiniteMagma::from_rows(&reference::ASSOCIATIVE_SPINDLE_4).unwrap();
        let r = check_axioms(&spindle);
        assert!(r.shelf && r.spindle && r.associative);
        assert!(!r.quandle);
        let printed = FiniteMagma::from_rows(&reference::ASSOCIATIVE_SPINDLE_4_AS_PRINTED).unwrap();
        let r = check_axioms(&printed);
        assert!(!r.idempotent && !r.shelf && !r.associative);
        let swapped = printed.rows();
        assert_eq!(
            FiniteMagma::from_rows(&[&swapped[1], &swapped[0], &swapped[2], &swapped[3]]).unwrap(),
            spindle
        );

        let latin = FiniteMagma::from_rows(&reference::LATIN_SQUARE_4).unwrap();
        assert!(check_axioms(&latin).quasigroup);

        let rp = FiniteMagma::right_projection(4).unwrap();
        let r = check_axioms(&rp);
        assert!(r.shelf && r.spindle && r.associative && !r.quasigroup);
        assert_eq!(
            rp,
            FiniteMagma::from_rows(&reference::RIGHT_PROJECTION_4).unwrap()
        );
    }

    #[test]
    fn report_flag_implications() {
        for rows in reference::all_named_tables() {
            let m = FiniteMagma::from_rows(&rows).unwrap();
            let r = check_axioms(&m);
            assert_eq!(r.quandle, r.rack && r.spindle);
            assert_eq!(r.spindle, r.shelf && r.idempotent);
            assert!(!r.rack || r.shelf);
            assert!(!r.pre_unital || (r.proto_unital && r.idempotent));
            assert!(!r.unital || (r.shelf && r.associative));
            for z in &r.right_zeros {
                assert!(r.right_fixed.contains(&(*z, *z)));
            }
        }
    }

    #[test]
    fn right_fixed_examples() {
        // Columns 0 and 1 are constant as well as column 3.
        let t5 = FiniteMagma::from_rows(&reference::SAMPLE_RIGHT_ZERO_3).unwrap();
        assert_eq!(t5.right_fixed_elements(), vec![(0, 0), (1, 0), (3, 3)]);
        let t2 = FiniteMagma::from_rows(&reference::SAMPLE_ROW_CONST_0003).unwrap();
        assert!(t2.right_fixed_elements().is_empty());
        assert_eq!(FiniteMagma::trivial().right_fixed_elements(), vec![(0, 0)]);
        let t7 = FiniteMagma::from_rows(&reference::NON_PROTO_UNITAL_WITH_RIGHT_ZEROS).unwrap();
        assert_eq!(t7.right_zeros(), vec![0, 2, 3]);
    }

    #[test]
    fn transpose_examples() {
        let lp = FiniteMagma::left_projection(3).unwrap();
        assert_eq!(lp.transpose(), FiniteMagma::right_projection(3).unwrap());
        let latin = FiniteMagma::from_rows(&reference::LATIN_SQUARE_4).unwrap();
        assert_eq!(latin.transpose().transpose(), latin);
    }

    #[test]
    fn isomorphism_examples() {
        let t3 = FiniteMagma::from_rows(&reference::SAMPLE_ROW_CONST_0023).unwrap();
        let t4 = FiniteMagma::from_rows(&reference::LEFT_PROJECTION_4).unwrap();
        assert_eq!(find_isomorphism(&t3, &t3).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_isomorphism(&t3, &t4).unwrap(), None);
        assert_eq!(
            find_isomorphism(&constant(2, 0), &constant(2, 1)).unwrap(),
            Some(vec![1, 0])
        );
        assert!(matches!(
            find_isomorphism(&t3, &FiniteMagma::trivial()),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn isomorphism_agrees_with_brute_force_on_t3_t4() {
        // Oracle: try all 24 relabelings directly.
        let t3 = FiniteMagma::from_rows(&reference::SAMPLE_ROW_CONST_0023).unwrap();
        let t4 = FiniteMagma::from_rows(&reference::LEFT_PROJECTION_4).unwrap();
        let mut found = false;
        for_each_permutation(4, |s| found |= t3.permute(s).unwrap() == t4);
        assert!(!found);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_form(&FiniteMagma::trivial()).unwrap(),
            FiniteMagma::trivial()
        );
        assert_eq!(canonical_form(&constant(2, 1)).unwrap(), constant(2, 0));
        let big = FiniteMagma::right_projection(7).unwrap();
        assert!(matches!(
            canonical_form(&big),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn unit_adjoin_and_remove() {
        let fptus2 =
            FiniteMagma::from_rows(&[[0, 2, 2, 3], [3, 1, 2, 3], [3, 2, 2, 3], [3, 2, 2, 3]])
                .unwrap();
        let r = check_axioms(&fptus2);
        assert!(r.pre_unital);
        let u = fptus2.adjoin_unit();
        let ru = check_axioms(&u);
        assert!(ru.unital);
        assert_eq!(ru.unit, Some(4));
        assert_eq!(u.remove_element(4).unwrap(), fptus2);
    }

    #[test]
    fn cay_parsing() {
        let m = FiniteMagma::from_cay("2\n0 1\n1 0\n").unwrap();
        assert_eq!(m.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(FiniteMagma::from_cay(&m.to_cay()).unwrap(), m);
        assert!(matches!(
            FiniteMagma::from_cay("2\n0 1\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            FiniteMagma::from_cay("2\n0 1\n1 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            FiniteMagma::from_cay("2\n0 1\n1 0\nxyz\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            FiniteMagma::from_cay("2\n0 2\n1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        let both = parse_cay_blocks("1\n0\n\n# second\n2\n1 1\n1 1\n").unwrap();
        assert_eq!(both.len(), 2);
        assert_eq!(parse_cay_blocks(&format_cay_blocks(&both)).unwrap(), both);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy, R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::Invalid(format!(
                    "ragged matrix: expected {c} columns, found {}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| v.into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "dimension mismatch");
        IntMatrix {
            rows,
            cols,
            data: data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub(crate) fn from_data(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entries as `i64` when all of them fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if let Some(out) = self.mul_small(other) {
            return Ok(out);
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product in checked `i128`; `None` if an entry does not fit.
    fn mul_small(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let a = self.to_i64()?;
        let b = other.to_i64()?;
        let (n, m) = (self.cols, other.cols);
        let mut out = vec![0i128; self.rows * m];
        for i in 0..self.rows {
            for k in 0..n {
                let x = a[i * n + k] as i128;
                if x == 0 {
                    continue;
                }
                for j in 0..m {
                    let y = b[k * m + j] as i128;
                    if y != 0 {
                        let cell = &mut out[i * m + j];
                        *cell = cell.checked_add(x.checked_mul(y)?)?;
                    }
                }
            }
        }
        Some(IntMatrix::from_data(
            self.rows,
            m,
            out.into_iter().map(BigInt::from).collect(),
        ))
    }

    /// Bareiss elimination in checked `i128`; `None` on overflow.
    fn determinant_small(&self) -> Option<BigInt> {
        let n = self.rows;
        let mut a: Vec<i128> = self.to_i64()?.into_iter().map(i128::from).collect();
        let mut negate = false;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return Some(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let aik = a[i * n + k];
                for j in k + 1..n {
                    let v = a[i * n + j]
                        .checked_mul(pivot)?
                        .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                    a[i * n + j] = v / prev;
                }
            }
            prev = pivot;
        }
        let d = BigInt::from(a[n * n - 1]);
        Some(if negate { -d } else { d })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        if let Some(d) = self.determinant_small() {
            return Ok(d);
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// One `row col value` line per nonzero entry, preceded by a `rows cols nnz` header.
    pub fn to_triplets(&self) -> String {
        let nnz = self.data.iter().filter(|v| !v.is_zero()).count();
        let mut out = format!("{} {} {}\n", self.rows, self.cols, nnz);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push_str(&format!("{i} {j} {v}\n"));
                }
            }
        }
        out
    }

    pub fn from_triplets(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (line, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header".into()))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(line, format!("bad header token `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = head[..] else {
            return Err(parse_err(line, "header must be `rows cols nnz`".into()));
        };
        let mut m = IntMatrix::zeros(rows, cols);
        let mut seen = 0;
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            let [i, j, v] = toks[..] else {
                return Err(parse_err(line, "expected `row col value`".into()));
            };
            let i: usize = i
                .parse()
                .map_err(|_| parse_err(line, format!("bad row `{i}`")))?;
            let j: usize = j
                .parse()
                .map_err(|_| parse_err(line, format!("bad column `{j}`")))?;
            let v: BigInt = v
                .parse()
                .map_err(|_| parse_err(line, format!("bad value `{v}`")))?;
            if i >= rows || j >= cols {
                return Err(parse_err(
                    line,
                    format!("entry ({i}, {j}) outside {rows}x{cols}"),
                ));
            }
            m.set(i, j, v);
            seen += 1;
        }
        if seen != nnz {
            return Err(parse_err(
                0,
                format!("header promises {nnz} entries, found {seen}"),
            ));
        }
        Ok(m)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_determinant() {
        let a = IntMatrix::from_rows(&[[1i64, 2], [3, 4]]).unwrap();
        let b = IntMatrix::from_rows(&[[0i64, 1], [1, 0]]).unwrap();
        assert_eq!(
            a.mul(&b).unwrap(),
            IntMatrix::from_rows(&[[2i64, 1], [4, 3]]).unwrap()
        );
        assert_eq!(a.determinant().unwrap(), BigInt::from(-2));
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), BigInt::one());
        let singular = IntMatrix::from_rows(&[[0i64, 0, 1], [0, 1, 0], [0, 2, 0]]).unwrap();
        assert!(singular.determinant().unwrap().is_zero());
        let m = IntMatrix::from_rows(&[[2i64, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(4));
    }

    #[test]
    fn wide_entries_fall_back_to_bigint() {
        let big = i64::MAX;
        let a = IntMatrix::from_rows(&[[big, 1], [1, big]]).unwrap();
        let expected = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(a.determinant().unwrap(), expected);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.get(0, 0), &(BigInt::from(big) * BigInt::from(big) + 1));
        let three = IntMatrix::from_rows(&[[big, 2, 3], [4, big, 6], [7, 8, big]]).unwrap();
        let via_cofactors = BigInt::from(big) * (BigInt::from(big) * big - 48)
            - 2 * (BigInt::from(4) * big - 42)
            + 3 * (BigInt::from(32) - BigInt::from(7) * big);
        assert_eq!(three.determinant().unwrap(), via_cofactors);
    }

    #[test]
    fn triplet_round_trip() {
        let a = IntMatrix::from_rows(&[[0i64, -7, 0], [3, 0, 0]]).unwrap();
        let text = a.to_triplets();
        assert_eq!(text, "2 3 2\n0 1 -7\n1 0 3\n");
        assert_eq!(IntMatrix::from_triplets(&text).unwrap(), a);
        assert!(IntMatrix::from_triplets("2 2 1\n5 0 1\n").is_err());
        assert!(IntMatrix::from_triplets("2 2 2\n0 0 1\n").is_err());
    }
}

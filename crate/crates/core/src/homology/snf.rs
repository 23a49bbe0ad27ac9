//! Smith normal form over the integers.
//!
//! Elimination runs first on `i64` with checked arithmetic and restarts on
//! [`BigInt`] if any intermediate value overflows, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `left * a * right = diagonal`
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
}

impl SnfResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Checks `left * a * right == diagonal`, unimodularity, and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(la) = self.left.mul(a) else {
            return false;
        };
        let Ok(lar) = la.mul(&self.right) else {
            return false;
        };
        if lar != self.diagonal {
            return false;
        }
        let unimodular = |m: &IntMatrix| m.determinant().map(|d| d.abs().is_one()).unwrap_or(false);
        if !unimodular(&self.left) || !unimodular(&self.right) {
            return false;
        }
        let d = &self.diagonal;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let v = d.get(i, j);
                let expected = if i == j && i < self.rank {
                    &self.invariant_factors[i]
                } else {
                    &BigInt::ZERO
                };
                if v != expected {
                    return false;
                }
            }
        }
        self.invariant_factors.iter().all(|f| f.is_positive())
            && self
                .invariant_factors
                .windows(2)
                .all(|w| Zero::is_zero(&(&w[1] % &w[0])))
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows(), a.cols());
    let outcome = a
        .to_i64()
        .and_then(|data| Eliminator::new(r, c, data, true).run(true))
        .map(Outcome::<i64>::into_big)
        .unwrap_or_else(|| {
            Eliminator::new(r, c, a.data().to_vec(), true)
                .run(true)
                .expect("bigint arithmetic cannot overflow")
        });
    let rank = outcome.diagonal.len();
    let mut diagonal = IntMatrix::zeros(r, c);
    for (i, d) in outcome.diagonal.iter().enumerate() {
        diagonal.set(i, i, d.clone());
    }
    let (u, v) = outcome.transforms.expect("transforms requested");
    SnfResult {
        invariant_factors: outcome.diagonal,
        rank,
        left: IntMatrix::from_data(r, r, u),
        right: IntMatrix::from_data(c, c, v),
        diagonal,
    }
}

/// Rank and invariant factors without transforms.
pub fn invariant_factors(a: &IntMatrix) -> (usize, Vec<BigInt>) {
    let (r, c) = (a.rows(), a.cols());
    let diag = a
        .to_i64()
        .and_then(|data| Eliminator::new(r, c, data, false).run(false))
        .map(|o| o.diagonal.into_iter().map(BigInt::from).collect::<Vec<_>>())
        .unwrap_or_else(|| {
            Eliminator::new(r, c, a.data().to_vec(), false)
                .run(false)
                .expect("bigint arithmetic cannot overflow")
                .diagonal
        });
    let factors = normalize_diagonal(diag);
    (factors.len(), factors)
}

/// Rank and invariant factors of an `i64` matrix given row-major.
pub(crate) fn invariant_factors_i64(
    rows: usize,
    cols: usize,
    data: Vec<i64>,
) -> (usize, Vec<BigInt>) {
    match Eliminator::new(rows, cols, data.clone(), false).run(false) {
        Some(o) => {
            let f = normalize_diagonal(o.diagonal.into_iter().map(BigInt::from).collect());
            (f.len(), f)
        }
        None => invariant_factors(&IntMatrix::from_i64(rows, cols, &data)),
    }
}

/// Turns nonzero diagonal entries into the divisibility chain via pairwise gcd/lcm.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if Zero::is_zero(&(&d[j] % &d[i])) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    #[inline]
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    #[inline]
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    #[inline]
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }
    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
}

struct Outcome<T> {
    diagonal: Vec<T>,
    transforms: Option<(Vec<T>, Vec<T>)>,
}

impl Outcome<i64> {
    fn into_big(self) -> Outcome<BigInt> {
        let big = |v: Vec<i64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
        Outcome {
            diagonal: big(self.diagonal),
            transforms: self.transforms.map(|(u, v)| (big(u), big(v))),
        }
    }
}

struct Eliminator<T> {
    r: usize,
    c: usize,
    a: Vec<T>,
    /// `r x r`, accumulates row operations.
    u: Option<Vec<T>>,
    /// `c x c`, accumulates column operations.
    v: Option<Vec<T>>,
}

impl<T: Scalar> Eliminator<T> {
    fn new(r: usize, c: usize, a: Vec<T>, track: bool) -> Self {
        let ident = |n: usize| {
            let mut m = vec![T::zero(); n * n];
            for i in 0..n {
                m[i * n + i] = T::one();
            }
            m
        };
        Eliminator {
            r,
            c,
            a,
            u: track.then(|| ident(r)),
            v: track.then(|| ident(c)),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.c + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.c {
            self.a.swap(i * self.c + j, k * self.c + j);
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.r {
                u.swap(i * self.r + j, k * self.r + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.r {
            self.a.swap(i * self.c + j, i * self.c + k);
        }
        if let Some(v) = &mut self.v {
            for i in 0..self.c {
                v.swap(i * self.c + j, i * self.c + k);
            }
        }
    }

    /// `row_i -= q * row_t`, restricted to the nonzero columns of row `t`.
    fn row_sub(
        &mut self,
        i: usize,
        t: usize,
        q: &T,
        support: &[usize],
        u_support: &[usize],
    ) -> Option<()> {
        for &j in support {
            let x = self.a[t * self.c + j].clone();
            let y = self.a[i * self.c + j].sub_mul(q, &x)?;
            self.a[i * self.c + j] = y;
        }
        if let Some(u) = &mut self.u {
            for &j in u_support {
                let x = u[t * self.r + j].clone();
                u[i * self.r + j] = u[i * self.r + j].sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    /// `col_j -= q * col_t`, restricted to the nonzero rows of column `t`.
    fn col_sub(
        &mut self,
        j: usize,
        t: usize,
        q: &T,
        support: &[usize],
        v_support: &[usize],
    ) -> Option<()> {
        for &i in support {
            let x = self.a[i * self.c + t].clone();
            let y = self.a[i * self.c + j].sub_mul(q, &x)?;
            self.a[i * self.c + j] = y;
        }
        if let Some(v) = &mut self.v {
            for &i in v_support {
                let x = v[i * self.c + t].clone();
                v[i * self.c + j] = v[i * self.c + j].sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        for j in 0..self.c {
            let x = self.a[i * self.c + j].clone();
            self.a[t * self.c + j] = self.a[t * self.c + j].add(&x)?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.r {
                let x = u[i * self.r + j].clone();
                u[t * self.r + j] = u[t * self.r + j].add(&x)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for j in 0..self.c {
            self.a[t * self.c + j] = self.a[t * self.c + j].neg()?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.r {
                u[t * self.r + j] = u[t * self.r + j].neg()?;
            }
        }
        Some(())
    }

    /// Smallest nonzero entry of the trailing submatrix, stopping early at a unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.r {
            for j in t..self.c {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                if best.is_none_or(|(bi, bj)| x.abs_lt(self.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self, divisibility: bool) -> Option<Outcome<T>> {
        let steps = self.r.min(self.c);
        let mut diagonal = Vec::new();
        for t in 0..steps {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.at(t, t).clone();
                let mut clean = true;

                let row_support: Vec<usize> =
                    (t..self.c).filter(|&j| !self.at(t, j).is_zero()).collect();
                let u_row_support: Vec<usize> = match &self.u {
                    Some(u) => (0..self.r)
                        .filter(|&j| !u[t * self.r + j].is_zero())
                        .collect(),
                    None => Vec::new(),
                };
                for i in t + 1..self.r {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).quot(&p);
                    if !q.is_zero() {
                        self.row_sub(i, t, &q, &row_support, &u_row_support)?;
                    }
                    if !self.at(i, t).is_zero() {
                        clean = false;
                    }
                }

                let col_support: Vec<usize> =
                    (t..self.r).filter(|&i| !self.at(i, t).is_zero()).collect();
                let v_col_support: Vec<usize> = match &self.v {
                    Some(v) => (0..self.c)
                        .filter(|&i| !v[i * self.c + t].is_zero())
                        .collect(),
                    None => Vec::new(),
                };
                for j in t + 1..self.c {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).quot(&p);
                    if !q.is_zero() {
                        self.col_sub(j, t, &q, &col_support, &v_col_support)?;
                    }
                    if !self.at(t, j).is_zero() {
                        clean = false;
                    }
                }

                if !clean {
                    // A remainder smaller than the pivot exists in row t or column t.
                    let mut best = (t, t);
                    for i in t + 1..self.r {
                        let x = self.at(i, t);
                        if !x.is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.c {
                        let x = self.at(t, j);
                        if !x.is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }

                if divisibility && !p.is_unit() {
                    let offender = (t + 1..self.r)
                        .find(|&i| (t + 1..self.c).any(|j| !p.divides(self.at(i, j))));
                    if let Some(i) = offender {
                        self.row_add(t, i)?;
                        continue;
                    }
                }
                break;
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            diagonal.push(self.at(t, t).clone());
        }
        Some(Outcome {
            diagonal,
            transforms: match (self.u, self.v) {
                (Some(u), Some(v)) => Some((u, v)),
                _ => None,
            },
        })
    }
}

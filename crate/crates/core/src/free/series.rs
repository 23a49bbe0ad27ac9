//! Size sequences of the free structures: recursions, exact exponential generating
//! functions and direct construction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{fas_build, fptus_build, fpus_build, fus_build};
use crate::error::{Error, Result};

pub const MAX_EGF_TERMS: usize = 20;
pub const MAX_FAS_COUNT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Fas,
    Fpus,
    Fptus,
    Fus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Direct,
    Recursion,
    Egf,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Direct => "direct",
            CountMethod::Recursion => "recursion",
            CountMethod::Egf => "egf",
        })
    }
}

/// `values[i]` is the term of index `start + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub name: &'static str,
    pub method: CountMethod,
    pub start: usize,
    pub values: Vec<BigInt>,
}

impl CountSequence {
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i))
    }
}

/// Truncated power series with rational coefficients.
type Poly = Vec<BigRational>;

fn poly_mul(a: &Poly, b: &Poly, terms: usize) -> Poly {
    let mut out = vec![BigRational::zero(); terms];
    for (i, x) in a.iter().enumerate().take(terms) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(terms - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_from_ints(coeffs: &[i64], terms: usize) -> Poly {
    (0..terms)
        .map(|i| BigRational::from_integer(BigInt::from(coeffs.get(i).copied().unwrap_or(0))))
        .collect()
}

fn exp_series(terms: usize) -> Poly {
    let mut out = Vec::with_capacity(terms);
    let mut fact = BigInt::one();
    for k in 0..terms {
        if k > 0 {
            fact *= k;
        }
        out.push(BigRational::new(BigInt::one(), fact.clone()));
    }
    out
}

/// `1 / (1 - x)^power`.
fn geometric_power(power: u32, terms: usize) -> Poly {
    let base: Poly = vec![BigRational::one(); terms];
    let mut out = poly_from_ints(&[1], terms);
    for _ in 0..power {
        out = poly_mul(&out, &base, terms);
    }
    out
}

/// `n! [x^n] F(x)` for `n = 0..=terms`, with `F` the generating function of `series`.
pub fn egf_coefficients(series: Series, terms: usize) -> Result<Vec<BigInt>> {
    if terms > MAX_EGF_TERMS {
        return Err(Error::BoundExceeded {
            what: "generating-function coefficients",
            order: terms,
            bound: MAX_EGF_TERMS,
            hint: "",
        });
    }
    let len = terms + 1;
    let (numerator, power): (&[i64], u32) = match series {
        Series::Fas => (&[0, 3, 0, -1], 2),
        Series::Fpus => (&[0, 2, -1], 1),
        Series::Fptus => (&[0, 1], 1),
        Series::Fus => (&[1], 1),
    };
    let f = poly_mul(
        &poly_mul(&poly_from_ints(numerator, len), &exp_series(len), len),
        &geometric_power(power, len),
        len,
    );
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(len);
    for (n, c) in f.into_iter().enumerate() {
        if n > 0 {
            fact *= n;
        }
        let v = c * BigRational::from_integer(fact.clone());
        if !v.is_integer() {
            return Err(Error::Invalid(format!(
                "coefficient {n} is not an integer: {v}"
            )));
        }
        out.push(v.to_integer());
    }
    Ok(out)
}

/// `c_0..=c_nmax` from `c_n = (n+2)c_{n-1} - (n-1)c_{n-2} + 3n`, `c_0 = 0`, `c_1 = 3`.
pub fn fas_recursion(nmax: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(), BigInt::from(3)];
    for n in 2..=nmax {
        let next = BigInt::from(n + 2) * &c[n - 1] - BigInt::from(n - 1) * &c[n - 2] + 3 * n;
        c.push(next);
    }
    c.truncate(nmax + 1);
    c
}

/// `b_0..=b_nmax` from `b_n = n b_{n-1} + n`, `b_0 = 0`.
pub fn b_recursion(nmax: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero()];
    for n in 1..=nmax {
        let next = BigInt::from(n) * &b[n - 1] + n;
        b.push(next);
    }
    b
}

/// `|FPUS_n| = n + b_n`.
pub fn fpus_sizes(nmax: usize) -> Vec<BigInt> {
    b_recursion(nmax)
        .into_iter()
        .enumerate()
        .map(|(n, b)| b + n)
        .collect()
}

/// `|FUS_n| = b_n + 1`.
pub fn fus_sizes(nmax: usize) -> Vec<BigInt> {
    b_recursion(nmax).into_iter().map(|b| b + 1).collect()
}

fn sequence(
    name: &'static str,
    method: CountMethod,
    start: usize,
    values: Vec<BigInt>,
) -> CountSequence {
    CountSequence {
        name,
        method,
        start,
        values,
    }
}

/// FAS sizes three ways: built tables for `n ≤ direct_max`, the recursion, and the EGF.
pub fn fas_counts(nmax: usize, direct_max: usize) -> Result<Vec<CountSequence>> {
    if nmax > MAX_FAS_COUNT {
        return Err(Error::BoundExceeded {
            what: "FAS counts",
            order: nmax,
            bound: MAX_FAS_COUNT,
            hint: "",
        });
    }
    let direct = (1..=direct_max.min(nmax))
        .map(|n| Ok(BigInt::from(fas_build(n, 8)?.len())))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        sequence("c_n", CountMethod::Direct, 1, direct),
        sequence("c_n", CountMethod::Recursion, 0, fas_recursion(nmax)),
        sequence(
            "c_n",
            CountMethod::Egf,
            0,
            egf_coefficients(Series::Fas, nmax)?,
        ),
    ])
}

/// Sizes of the unital family three ways, for `n = 1..=nmax`, direct up to `direct_max`.
pub fn unital_family_counts(nmax: usize, direct_max: usize) -> Result<Vec<CountSequence>> {
    let direct = |build: fn(usize) -> Result<super::FreeStructureTable>| -> Result<Vec<BigInt>> {
        (1..=direct_max.min(nmax))
            .map(|n| Ok(BigInt::from(build(n)?.len())))
            .collect()
    };
    let tail = |v: Vec<BigInt>| v.into_iter().skip(1).collect::<Vec<_>>();
    Ok(vec![
        sequence("b_n", CountMethod::Direct, 1, direct(fptus_build)?),
        sequence("b_n", CountMethod::Recursion, 1, tail(b_recursion(nmax))),
        sequence(
            "b_n",
            CountMethod::Egf,
            1,
            tail(egf_coefficients(Series::Fptus, nmax)?),
        ),
        sequence("|FPUS_n|", CountMethod::Direct, 1, direct(fpus_build)?),
        sequence(
            "|FPUS_n|",
            CountMethod::Recursion,
            1,
            tail(fpus_sizes(nmax)),
        ),
        sequence(
            "|FPUS_n|",
            CountMethod::Egf,
            1,
            tail(egf_coefficients(Series::Fpus, nmax)?),
        ),
        sequence("|FUS_n|", CountMethod::Direct, 1, direct(fus_build)?),
        sequence("|FUS_n|", CountMethod::Recursion, 1, tail(fus_sizes(nmax))),
        sequence(
            "|FUS_n|",
            CountMethod::Egf,
            1,
            tail(egf_coefficients(Series::Fus, nmax)?),
        ),
    ])
}

/// The FAS size from each printed formula, next to the recursion value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasDiagnosticRow {
    pub n: usize,
    pub recursion: BigInt,
    /// `3n + Σ_{i=2..n} (i+1)! C(n,i)`.
    pub closed_form: BigInt,
    /// `c_n = n²/(n-1) c_{n-1} + n(n-1)` from `c_1 = 3`, kept rational.
    pub one_term_recursion: String,
}

#[allow(clippy::needless_range_loop)]
pub fn fas_diagnostics(nmax: usize) -> Vec<FasDiagnosticRow> {
    let rec = fas_recursion(nmax);
    let mut one_term = BigRational::from_integer(BigInt::from(3));
    let mut rows = Vec::new();
    for n in 1..=nmax {
        if n > 1 {
            let nn = BigInt::from(n);
            one_term = BigRational::new(&nn * &nn, BigInt::from(n - 1)) * one_term
                + BigRational::from_integer(&nn * BigInt::from(n - 1));
        }
        let closed = (2..=n).fold(BigInt::from(3 * n), |acc, i| {
            acc + factorial(i + 1) * binomial(n, i)
        });
        rows.push(FasDiagnosticRow {
            n,
            recursion: rec[n].clone(),
            closed_form: closed,
            one_term_recursion: one_term.to_string(),
        });
    }
    rows
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n).div_floor(&(factorial(k) * factorial(n - k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fas_sequences_agree() {
        let rec = fas_recursion(10);
        assert_eq!(rec[..4], ints(&[0, 3, 18, 93])[..]);
        assert_eq!(egf_coefficients(Series::Fas, 10).unwrap(), rec);
        assert_eq!(fas_recursion(0), ints(&[0]));
    }

    #[test]
    fn unital_sequences() {
        assert_eq!(b_recursion(6)[1..], ints(&[1, 4, 15, 64, 325, 1956])[..]);
        assert_eq!(egf_coefficients(Series::Fptus, 6).unwrap(), b_recursion(6));
        assert_eq!(
            egf_coefficients(Series::Fus, 4).unwrap(),
            ints(&[1, 2, 5, 16, 65])
        );
        assert_eq!(egf_coefficients(Series::Fpus, 20).unwrap(), fpus_sizes(20));
        assert_eq!(egf_coefficients(Series::Fus, 20).unwrap(), fus_sizes(20));
        assert!(egf_coefficients(Series::Fus, 21).is_err());
    }

    #[test]
    fn sum_formula_oracle() {
        // b_n = Σ_{k=1..n} k! C(n,k), counted independently.
        for n in 1..=10 {
            let direct: BigInt = (1..=n).map(|k| factorial(k) * binomial(n, k)).sum();
            assert_eq!(direct, b_recursion(n)[n]);
        }
    }

    #[test]
    fn diagnostics_show_printed_conflicts() {
        let rows = fas_diagnostics(3);
        assert_eq!(rows[1].closed_form, BigInt::from(12));
        assert_eq!(rows[2].closed_form, BigInt::from(51));
        assert_eq!(rows[1].one_term_recursion, "14");
        assert_eq!(rows[1].recursion, BigInt::from(18));
    }

    #[test]
    fn unital_counts_agree() {
        let seqs = unital_family_counts(5, 4).unwrap();
        for triple in seqs.chunks(3) {
            for n in 1..=5 {
                let rec = triple[1].get(n).unwrap();
                assert_eq!(triple[2].get(n).unwrap(), rec, "{} n={n}", triple[0].name);
                if let Some(d) = triple[0].get(n) {
                    assert_eq!(d, rec, "{} n={n}", triple[0].name);
                }
            }
        }
    }
}

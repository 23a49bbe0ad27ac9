use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use shelflab::enumerate::{enumerate, Axiom, CountMode, EnumerationQuery};
use shelflab::free::{fptus_multiply, fpus_build, fpus_reduce, fpus_reduce_by, Word};
use shelflab::homology::{
    boundary_matrix, homology, homology_through, smith_normal_form, HomologyGroup, IntMatrix,
    Theory,
};
use shelflab::laver::laver_build;
use shelflab::magma::{check_axioms, FiniteMagma};

/// Shelves of orders 1 to 4, one per isomorphism class.
fn shelves() -> &'static [FiniteMagma] {
    static CELL: OnceLock<Vec<FiniteMagma>> = OnceLock::new();
    CELL.get_or_init(|| {
        (1..=4)
            .flat_map(|n| {
                let q = EnumerationQuery::new(n, [Axiom::Shelf], CountMode::IsoClasses)
                    .with_witnesses(true);
                enumerate(&q).unwrap().witnesses.unwrap()
            })
            .collect()
    })
}

fn small_shelf() -> impl Strategy<Value = FiniteMagma> {
    // Orders up to 3 keep the chain groups small.
    let count = shelves().iter().filter(|m| m.order() <= 3).count();
    (0..count).prop_map(|i| shelves()[i].clone())
}

fn word(max_letters: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_letters).prop_flat_map(move |n| {
        prop::collection::vec(0..n, 1..=max_len).prop_map(move |l| Word::new(l, n).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn fpus_reduction_is_confluent(w in word(4, 10), seed in any::<u64>()) {
        let mut state = seed;
        let picked = fpus_reduce_by(&w, |count| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % count
        }).unwrap();
        let normal = fpus_reduce(&w).unwrap();
        prop_assert_eq!(&picked, &normal);
        prop_assert_eq!(fpus_reduce(&normal).unwrap(), normal.clone());
        let table = fpus_build(w.alphabet_size()).unwrap();
        prop_assert!(table.index_of(&normal).is_some());
    }
}

/// Repeat-free words of length 1..=n.
fn repeat_free(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for a in (0..n).filter(|a| !w.contains(a)) {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn fptus_oracle(u: &[usize], v: &[usize]) -> Vec<usize> {
    u.iter()
        .filter(|a| !v.contains(a))
        .chain(v)
        .copied()
        .collect()
}

#[test]
fn fptus_is_an_associative_shelf() {
    for n in 1..=3 {
        let words = repeat_free(n);
        let mul = |u: &Vec<usize>, v: &Vec<usize>| {
            let p = fptus_multiply(
                &Word::new(u.clone(), n).unwrap(),
                &Word::new(v.clone(), n).unwrap(),
            )
            .unwrap();
            let p = p.letters().to_vec();
            assert_eq!(p, fptus_oracle(u, v));
            p
        };
        for x in &words {
            for y in &words {
                for z in &words {
                    let xy = mul(x, y);
                    assert_eq!(mul(&xy, z), mul(x, &mul(y, z)));
                    let left = mul(&xy, z);
                    let right = mul(&mul(x, z), &mul(y, z));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

fn det_oracle(m: &[Vec<i64>]) -> BigInt {
    // Cofactor expansion; fine for the sizes used here.
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][j]) * det_oracle(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_round_trip(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let data: Vec<i64> = seed[..rows * cols].to_vec();
        let a = IntMatrix::from_i64(rows, cols, &data);
        let s = smith_normal_form(&a);
        prop_assert!(s.verify(&a));
        prop_assert_eq!(s.rank, s.invariant_factors.len());
        if rows == cols {
            let square: Vec<Vec<i64>> = data.chunks(cols).map(<[i64]>::to_vec).collect();
            let det = det_oracle(&square).abs();
            let product = if s.rank == rows {
                s.invariant_factors.iter().product::<BigInt>()
            } else {
                BigInt::zero()
            };
            prop_assert_eq!(product, det);
        }
    }

    #[test]
    fn boundary_squares_to_zero(m in small_shelf(), q in 1usize..=3) {
        for theory in [Theory::OneTerm, Theory::TwoTerm] {
            let d0 = boundary_matrix(&m, theory, 0).unwrap();
            prop_assert_eq!(d0.rows(), 0);
            prop_assert_eq!(d0.cols(), m.order());
            let dq = boundary_matrix(&m, theory, q).unwrap();
            let dq1 = boundary_matrix(&m, theory, q + 1).unwrap();
            prop_assert!(dq.mul(&dq1).unwrap().is_zero());
        }
    }

    #[test]
    fn homology_is_isomorphism_invariant(m in small_shelf(), shift in 0usize..6) {
        let n = m.order();
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.rotate_left(shift % n);
        if n > 1 {
            sigma.swap(0, n - 1);
        }
        let p = m.permute(&sigma).unwrap();
        prop_assert_eq!(check_axioms(&p).shelf, true);
        let (a, b) = (check_axioms(&m), check_axioms(&p));
        prop_assert_eq!(a.associative, b.associative);
        prop_assert_eq!(a.unital, b.unital);
        prop_assert_eq!(a.right_zeros.len(), b.right_zeros.len());
        for theory in [Theory::OneTerm, Theory::TwoTerm] {
            prop_assert_eq!(
                homology_through(&m, theory, 2, false).unwrap(),
                homology_through(&p, theory, 2, false).unwrap()
            );
        }
    }
}

fn rank_mod2(a: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j).is_odd()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn two_torsion(g: &HomologyGroup) -> usize {
    g.torsion.iter().filter(|t| t.is_even()).count()
}

/// Universal coefficients over GF(2), with the mod-2 Betti numbers from an independent
/// elimination.
fn check_uct(m: &FiniteMagma, theory: Theory, qmax: usize) {
    let groups = homology_through(m, theory, qmax, false).unwrap();
    for q in 0..=qmax {
        let dq = boundary_matrix(m, theory, q).unwrap();
        let dq1 = boundary_matrix(m, theory, q + 1).unwrap();
        let dim2 = dq.cols() - rank_mod2(&dq) - rank_mod2(&dq1);
        let below = if q == 0 {
            0
        } else {
            two_torsion(&groups[q - 1])
        };
        assert_eq!(
            dim2,
            groups[q].free_rank + two_torsion(&groups[q]) + below,
            "{theory} q={q}\n{m}"
        );
    }
}

#[test]
fn mod_two_homology_matches_integral() {
    // Block spindle with one-term H_2 torsion: blocks {0,1,2} with f = (1 0 0) and {3}.
    let witness =
        FiniteMagma::from_rows(&[[0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3], [1, 0, 0, 3]]).unwrap();
    assert!(witness.is_shelf());
    let h2 = homology(&witness, Theory::OneTerm, 2, false).unwrap();
    assert!(!h2.torsion.is_empty());
    check_uct(&witness, Theory::OneTerm, 2);
    for m in shelves().iter().filter(|m| m.order() <= 3) {
        check_uct(m, Theory::OneTerm, 2);
        check_uct(m, Theory::TwoTerm, 2);
    }
}

#[test]
fn reduced_one_term_vanishes_with_bijective_column_or_left_zero() {
    let mut covered = 0;
    for m in shelves() {
        let bijective = !m.bijective_right_translations().is_empty();
        let left_zero = !m.left_zeros().is_empty();
        if !(bijective || left_zero) {
            continue;
        }
        covered += 1;
        let qmax = if m.order() <= 3 { 2 } else { 1 };
        for (q, g) in homology_through(m, Theory::OneTerm, qmax, true)
            .unwrap()
            .iter()
            .enumerate()
        {
            assert!(g.is_trivial(), "reduced H_{q} = {g}\n{m}");
        }
    }
    assert!(covered > 100);
}

/// `A_k` from the defining recursion `a*1 = a+1`, `a*(b+1) = (a*b)*(a+1)`, 1-indexed.
fn laver_oracle(k: usize) -> Vec<Vec<usize>> {
    let n = 1 << k;
    let mut t = vec![vec![0; n + 1]; n + 1];
    for (b, cell) in t[n].iter_mut().enumerate() {
        *cell = b;
    }
    for a in (1..n).rev() {
        t[a][1] = a + 1;
        for b in 1..n {
            let ab = t[a][b];
            t[a][b + 1] = t[ab][a + 1];
        }
    }
    t.into_iter()
        .skip(1)
        .map(|r| r.into_iter().skip(1).collect())
        .collect()
}

fn period(row: &[usize]) -> usize {
    let n = row.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| row[i] == row[i % p]))
        .unwrap()
}

#[test]
fn laver_tables_match_recursion_and_periods_double() {
    let mut previous: Option<Vec<Vec<usize>>> = None;
    for k in 0..=8 {
        let rows = laver_build(k).unwrap().rows_one_indexed();
        assert_eq!(rows, laver_oracle(k), "k={k}");
        let n = rows.len();
        for row in &rows {
            let p = period(row);
            assert!(p.is_power_of_two());
            assert!(row[..p].windows(2).all(|w| w[0] < w[1]));
            assert_eq!(row[p - 1], n);
        }
        if let Some(prev) = &previous {
            let half = prev.len();
            for a in 1..half {
                let p = period(&prev[a - 1]);
                let q = period(&rows[a - 1]);
                assert!(q == p || q == 2 * p, "k={k} a={a}: {p} -> {q}");
                assert_eq!(period(&rows[a + half - 1]), p, "k={k} a={a}");
            }
            // Reduction mod 2^(k-1) is a homomorphism.
            for a in 0..n {
                for b in 0..n {
                    let r = |x: usize| (x - 1) % half;
                    assert_eq!(r(rows[a][b]), r(prev[r(a + 1)][r(b + 1)]));
                }
            }
        }
        previous = Some(rows);
    }
}

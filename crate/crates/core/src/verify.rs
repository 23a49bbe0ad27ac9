//! The reproduction suite behind `shelflab verify-paper` and the acceptance test.
//!
//! Each check returns a [`CheckResult`] with a one-line verdict and detail lines.
//! `Depth::Deep` runs every check at full size; `Depth::Default` stops FAS at two
//! letters and chain-level checks at degree 2.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blockspindle::{specs_with_singleton, torsion_witness_scan};
use crate::enumerate::{
    enumerate, iso_classes, reproduce_count_table, Axiom, CountMode, EnumerationQuery,
};
use crate::error::Result;
use crate::free::{
    b_recursion, egf_coefficients, fas_build, fas_diagnostics, fas_recursion, fptus_build,
    fpus_build, fpus_right_zeros, fus_build, fus_sizes, Series, Word,
};
use crate::homology::{
    boundary_matrix, chain_homotopy_verify, decode, homology_through, smith_normal_form,
    torsion_scan, Chain, ChainComplex, HomologyGroup, IntMatrix, Theory,
};
use crate::laver::{laver_build, laver_right_structure, laver_uniqueness_check};
use crate::magma::FiniteMagma;
use crate::reference;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Default,
    Deep,
}

impl Depth {
    fn max_degree(self) -> usize {
        match self {
            Depth::Default => 2,
            Depth::Deep => 3,
        }
    }

    fn fas_letters(self) -> usize {
        match self {
            Depth::Default => 2,
            Depth::Deep => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64()
        )
    }

    pub fn render(&self) -> String {
        let mut out = self.line();
        out.push('\n');
        for d in &self.details {
            out.push_str("    ");
            out.push_str(d);
            out.push('\n');
        }
        out
    }
}

/// Collects detail lines and a running verdict.
struct Log {
    passed: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details
            .push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("note {}", what.into()));
    }
}

fn timed(id: usize, name: &'static str, f: impl FnOnce(&mut Log) -> Result<()>) -> CheckResult {
    let start = Instant::now();
    let mut log = Log::new();
    if let Err(e) = f(&mut log) {
        log.check(false, format!("error: {e}"));
    }
    CheckResult {
        id,
        name,
        passed: log.passed,
        details: log.details,
        elapsed: start.elapsed(),
    }
}

fn word(s: &str, n: usize) -> Word {
    Word::from_letters(s, n).expect("reference words are valid")
}

fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn check_free_tables(depth: Depth) -> CheckResult {
    timed(1, "free associative shelf tables", |log| {
        let fas1 = fas_build(1, 6)?;
        let words: Vec<String> = fas1.elements.iter().map(Word::to_string).collect();
        log.check(
            words == ["a", "aa", "aaa"],
            format!("FAS(1) = {{{}}}", words.join(", ")),
        );

        let fas2 = fas_build(2, 8)?;
        let idx: Vec<Option<usize>> = reference::FAS2_ELEMENTS
            .iter()
            .map(|s| fas2.evaluate(&word(s, 2)))
            .collect();
        let mut distinct: Vec<usize> = idx.iter().flatten().copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mut mismatches = 0;
        if distinct.len() == 18 {
            let idx: Vec<usize> = idx.into_iter().flatten().collect();
            for i in 0..18 {
                for j in 0..18 {
                    if fas2.magma.op(idx[i], idx[j]) != idx[reference::FAS2_TABLE[i][j]] {
                        mismatches += 1;
                    }
                }
            }
        }
        log.check(
            fas2.len() == 18 && distinct.len() == 18 && mismatches == 0,
            format!(
                "|FAS(2)| = {}, published words hit {} classes, {mismatches} cells differ from the published table",
                fas2.len(),
                distinct.len()
            ),
        );
        log.check(
            fas2.satisfies_kind_axioms(),
            "FAS(2) is an associative shelf",
        );

        if depth.fas_letters() >= 3 {
            let fas3 = fas_build(3, 8)?;
            log.check(fas3.len() == 93, format!("|FAS(3)| = {}", fas3.len()));
            log.check(
                fas3.satisfies_kind_axioms(),
                "FAS(3) is an associative shelf",
            );
        } else {
            log.note("FAS(3) skipped at default depth");
        }
        Ok(())
    })
}

pub fn check_fas_counts() -> CheckResult {
    timed(2, "FAS count recursion and generating function", |log| {
        let rec = fas_recursion(10);
        let egf = egf_coefficients(Series::Fas, 10)?;
        log.check(
            rec == egf,
            format!("recursion = EGF for n <= 10: {}", join(&rec[1..])),
        );
        log.check(
            rec[1..4] == ints(&[3, 18, 93])[..],
            "c_1, c_2, c_3 = 3, 18, 93",
        );
        for row in fas_diagnostics(3).into_iter().skip(1) {
            log.note(format!(
                "n={}: printed closed form gives {}, printed one-term recursion gives {}, recursion gives {}",
                row.n, row.closed_form, row.one_term_recursion, row.recursion
            ));
        }
        Ok(())
    })
}

pub fn check_unital_family() -> CheckResult {
    timed(
        3,
        "free proto-unital, pre-unital and unital shelves",
        |log| {
            let fpus = fpus_build(2)?;
            let same_elements = fpus.len() == 6
                && reference::FPUS2_ELEMENTS
                    .iter()
                    .all(|s| fpus.index_of(&word(s, 2)).is_some());
            let mut diff = 0;
            for (i, x) in reference::FPUS2_ELEMENTS.iter().enumerate() {
                for (j, y) in reference::FPUS2_ELEMENTS.iter().enumerate() {
                    let got = fpus.product(&word(x, 2), &word(y, 2)).map(Word::to_string);
                    if got.as_deref() != Some(reference::FPUS2_TABLE[i][j]) {
                        diff += 1;
                    }
                }
            }
            log.check(
                same_elements && diff == 0,
                format!("FPUS(2): 6 elements, {diff} cells differ"),
            );

            let fptus = fptus_build(2)?;
            let mut diff = 0;
            for (i, x) in reference::FPTUS2_ELEMENTS.iter().enumerate() {
                for (j, y) in reference::FPTUS2_ELEMENTS.iter().enumerate() {
                    let got = fptus.product(&word(x, 2), &word(y, 2)).map(Word::to_string);
                    if got.as_deref() != Some(reference::FPTUS2_TABLE[i][j]) {
                        diff += 1;
                    }
                }
            }
            log.check(
                fptus.len() == 4 && diff == 0,
                format!("F~PUS(2): 4 elements, {diff} cells differ"),
            );

            let published = ints(&reference::PRE_UNITAL_FREE_SIZES);
            let rec = b_recursion(6)[1..].to_vec();
            let egf = egf_coefficients(Series::Fptus, 6)?[1..].to_vec();
            let direct: Vec<BigInt> = (1..=5)
                .map(|n| Ok(BigInt::from(fptus_build(n)?.len())))
                .collect::<Result<_>>()?;
            log.check(
                rec == published,
                format!("b_n by recursion: {}", join(&rec)),
            );
            log.check(egf == published, "b_n by generating function agrees");
            log.check(
                direct[..] == published[..5],
                format!("b_n by construction, n <= 5: {}", join(&direct)),
            );

            let fus_expected = fus_sizes(5);
            let mut fus_ok = true;
            for (n, expected) in fus_expected.iter().enumerate().skip(1) {
                let t = fus_build(n)?;
                fus_ok &= BigInt::from(t.len()) == *expected && t.satisfies_kind_axioms();
            }
            log.check(
                fus_ok,
                "|FUS(n)| = b_n + 1 and FUS(n) is a unital shelf, n <= 5",
            );

            let rz1: Vec<String> = fpus_right_zeros(1)?.iter().map(Word::to_string).collect();
            log.check(
                rz1 == ["aa"],
                format!("right zeros of FPUS(1): {{{}}}", rz1.join(", ")),
            );
            for (n, fact) in [(2usize, 2usize), (3, 6), (4, 24)] {
                let rz = fpus_right_zeros(n)?;
                let perms = rz.iter().all(|w| w.len() == n && w.is_repeat_free());
                log.check(
                    rz.len() == fact && perms,
                    format!(
                        "FPUS({n}) has {} right zeros, all permutation words",
                        rz.len()
                    ),
                );
            }
            Ok(())
        },
    )
}

pub fn check_enumeration() -> CheckResult {
    timed(
        4,
        "iso-class counts of associative shelves and spindles",
        |log| {
            let table = reproduce_count_table(4)?;
            for row in &table.rows {
                log.check(
                    row.associative_shelves == row.published[0]
                        && row.associative_spindles == row.published[1],
                    format!(
                        "n={}: #AS = {}, #ASp = {}",
                        row.n, row.associative_shelves, row.associative_spindles
                    ),
                );
                if row.n >= 2 {
                    log.check(
                        row.unital_shelves == row.pre_unital_previous,
                        format!(
                            "n={}: #US = {} equals #pre-unital(n-1) = {} (published #US: {})",
                            row.n, row.unital_shelves, row.pre_unital_previous, row.published[2]
                        ),
                    );
                }
            }
            Ok(())
        },
    )
}

pub fn check_laver() -> CheckResult {
    timed(5, "Laver tables", |log| {
        let tables: [(usize, Vec<Vec<usize>>); 3] = [
            (2, reference::LAVER_A2.iter().map(|r| r.to_vec()).collect()),
            (3, reference::LAVER_A3.iter().map(|r| r.to_vec()).collect()),
            (4, reference::LAVER_A4.iter().map(|r| r.to_vec()).collect()),
        ];
        for (k, expected) in tables {
            log.check(
                laver_build(k)?.rows_one_indexed() == expected,
                format!("A_{k} matches the published table"),
            );
        }
        for k in 0..=2 {
            log.check(
                laver_uniqueness_check(k)?,
                format!("A_{k} is the unique solution"),
            );
        }
        let mut half = Vec::new();
        for k in 1..=8 {
            let s = laver_right_structure(k)?;
            if s.half_is_right_fixed {
                half.push(k);
            }
        }
        log.check(true, "for k = 1..8, (2^k - 1, 2^k) is right-fixed and 2^k is an identity column in the transpose");
        log.note(format!("2^(k-1) is right-fixed only for k in {half:?}"));
        Ok(())
    })
}

pub fn check_sample_homology() -> CheckResult {
    timed(6, "homology of the sample shelves", |log| {
        let results: Vec<(String, bool, Vec<HomologyGroup>, Theory)> = reference::HOMOLOGY_SAMPLES
            .par_iter()
            .map(|s| {
                let m = FiniteMagma::from_rows(&s.table)?;
                let theory = if s.two_term {
                    Theory::TwoTerm
                } else {
                    Theory::OneTerm
                };
                let groups = homology_through(&m, theory, 2, false)?;
                let ok = groups
                    .iter()
                    .zip(s.ranks)
                    .all(|(g, r)| *g == HomologyGroup::free(r));
                Ok((s.name.to_string(), ok, groups, theory))
            })
            .collect::<Result<_>>()?;
        for (name, ok, groups, theory) in results {
            log.check(ok, format!("{name} {theory}: ({})", join(&groups)));
        }
        Ok(())
    })
}

fn all_integers(groups: &[HomologyGroup]) -> bool {
    groups.iter().all(HomologyGroup::is_integers)
}

fn shelves_up_to(n: usize, axioms: &[Axiom]) -> Result<Vec<FiniteMagma>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(iso_classes(k, axioms)?);
    }
    Ok(out)
}

pub fn check_theorems(depth: Depth) -> CheckResult {
    timed(7, "homology theorems on all small shelves", |log| {
        let unital = shelves_up_to(4, &[Axiom::Unital])?;
        let bad = unital
            .par_iter()
            .map(|m| {
                Ok(homology_through(m, Theory::OneTerm, 2, true)?
                    .iter()
                    .all(HomologyGroup::is_trivial))
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|ok| !ok)
            .count();
        log.check(bad == 0, format!("{} unital shelves of order <= 4: reduced one-term H_0..H_2 vanish ({bad} failures)", unital.len()));

        let shelves = shelves_up_to(4, &[Axiom::Shelf])?;
        let fixed: Vec<&FiniteMagma> = shelves
            .iter()
            .filter(|m| !m.right_fixed_elements().is_empty())
            .collect();
        let bad = fixed
            .par_iter()
            .map(|m| {
                Ok(all_integers(&homology_through(
                    m,
                    Theory::TwoTerm,
                    2,
                    false,
                )?))
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|ok| !ok)
            .count();
        log.check(
            bad == 0,
            format!("{} of {} shelves of order <= 4 have a right-fixed element: two-term H_0..H_2 = Z ({bad} failures)", fixed.len(), shelves.len()),
        );

        let proto = shelves_up_to(4, &[Axiom::ProtoUnital])?;
        let bad = proto
            .par_iter()
            .map(|m| {
                Ok(all_integers(&homology_through(
                    m,
                    Theory::TwoTerm,
                    2,
                    false,
                )?))
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|ok| !ok)
            .count();
        log.check(
            bad == 0,
            format!(
                "{} proto-unital shelves of order <= 4: two-term H_0..H_2 = Z ({bad} failures)",
                proto.len()
            ),
        );

        let qmax = depth.max_degree();
        let t5 = FiniteMagma::from_rows(&reference::SAMPLE_RIGHT_ZERO_3)?;
        log.check(
            chain_homotopy_verify(&t5, 3, 3, qmax)?,
            format!("chain homotopy on T5 with (r, c) = (3, 3) through degree {qmax}"),
        );
        let a2t = laver_build(2)?.transpose();
        log.check(
            chain_homotopy_verify(&a2t, 2, 3, qmax)?,
            format!("chain homotopy on transposed A_2 with (r, c) = (3, 4) (1-indexed) through degree {qmax}"),
        );
        Ok(())
    })
}

fn pre_simplicial_holds(m: &FiniteMagma, theory: Theory, qmax: usize) -> Result<bool> {
    let cx = ChainComplex::new(m, theory)?;
    let n = m.order();
    for q in 1..=qmax {
        for index in 0..cx.module_rank(q)? {
            let t: Chain = [(decode(index, n, q + 1), 1)].into_iter().collect();
            for j in 1..=q {
                for i in 0..j {
                    if cx.face_chain(i, &cx.face_chain(j, &t))
                        != cx.face_chain(j - 1, &cx.face_chain(i, &t))
                    {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Random matrices with dimensions in `1..=12` and entries in `-9..=9`, fixed seed.
pub fn random_matrices(count: usize, seed: u64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
            IntMatrix::from_i64(r, c, &data)
        })
        .collect()
}

pub fn check_structure(depth: Depth) -> CheckResult {
    timed(8, "chain complex and structural identities", |log| {
        let qmax = depth.max_degree();
        let shelves = shelves_up_to(3, &[Axiom::Shelf])?;
        let jobs: Vec<(&FiniteMagma, Theory)> = shelves
            .iter()
            .flat_map(|m| [(m, Theory::OneTerm), (m, Theory::TwoTerm)])
            .collect();
        let outcomes = jobs
            .par_iter()
            .map(|&(m, theory)| {
                let mut squares = true;
                let mut snf = true;
                let mut prev = boundary_matrix(m, theory, 1)?;
                for q in 1..=qmax {
                    let next = boundary_matrix(m, theory, q + 1)?;
                    squares &= prev.mul(&next)?.is_zero();
                    snf &= smith_normal_form(&prev).verify(&prev);
                    prev = next;
                }
                snf &= smith_normal_form(&prev).verify(&prev);
                Ok((squares, pre_simplicial_holds(m, theory, qmax)?, snf))
            })
            .collect::<Result<Vec<_>>>()?;
        let count = |f: fn(&(bool, bool, bool)) -> bool| outcomes.iter().filter(|o| !f(o)).count();
        log.check(
            count(|o| o.0) == 0,
            format!(
                "boundary squares to zero for {} shelves of order <= 3, both theories, q <= {qmax}",
                shelves.len()
            ),
        );
        log.check(
            count(|o| o.1) == 0,
            "d_i d_j = d_(j-1) d_i on the same range".to_string(),
        );
        log.check(
            count(|o| o.2) == 0,
            format!(
                "U A V = D with unimodular U, V for all {} boundary matrices",
                jobs.len() * (qmax + 1)
            ),
        );

        let random = random_matrices(1000, 0x5eed);
        let bad = random
            .par_iter()
            .filter(|a| !smith_normal_form(a).verify(a))
            .count();
        log.check(
            bad == 0,
            format!("U A V = D on 1000 random matrices up to 12x12 ({bad} failures)"),
        );

        let racks = shelves_up_to(3, &[Axiom::Rack, Axiom::Associative])?;
        let left_projections = racks
            .iter()
            .all(|m| m.elements().all(|x| m.elements().all(|y| m.op(x, y) == x)));
        log.check(
            left_projections,
            format!(
                "{} associative racks of order <= 3 all satisfy x*y = x",
                racks.len()
            ),
        );

        let mut proto = shelves_up_to(4, &[Axiom::ProtoUnital])?;
        let q5 = EnumerationQuery::new(5, [Axiom::ProtoUnital], CountMode::IsoClasses)
            .with_order5_override()
            .with_witnesses(true);
        proto.extend(enumerate(&q5)?.witnesses.unwrap_or_default());
        let missing = proto.iter().filter(|m| m.right_zeros().is_empty()).count();
        log.check(
            missing == 0,
            format!(
                "{} proto-unital shelves of order <= 5 all have a right zero",
                proto.len()
            ),
        );
        Ok(())
    })
}

pub fn check_torsion_probes() -> CheckResult {
    timed(9, "torsion probes", |log| {
        let assoc = shelves_up_to(4, &[Axiom::Associative, Axiom::Shelf])?;
        for theory in [Theory::OneTerm, Theory::TwoTerm] {
            let report = torsion_scan(&assoc, theory, 2)?;
            log.check(
                true,
                format!(
                "{theory}: {} associative shelves of order <= 4, q <= 2: {} torsion occurrences",
                report.scanned,
                report.hits.len()
            ),
            );
            for hit in report.hits.iter().take(5) {
                log.note(format!(
                    "torsion in H_{} of shelf #{}: {}",
                    hit.q, hit.index, hit.group
                ));
            }
        }

        let specs = specs_with_singleton(6);
        let s = torsion_witness_scan(&specs)?;
        log.check(
            s.two_term_failures.is_empty() && s.missing_right_zero.is_empty(),
            format!(
                "{} f-block spindle specs with a singleton block ({} up to isomorphism): right zero present and two-term H_0..H_2 = Z for all",
                s.specs, s.distinct
            ),
        );
        log.note(format!(
            "{} spindles have torsion in one-term H_2",
            s.witnesses.len()
        ));
        if let Some(w) = s.witnesses.first() {
            let spec = w.spec.to_string().trim_end().replace('\n', "; ");
            log.note(format!("first witness [{spec}]: H_2 = {}", w.h2));
        }
        Ok(())
    })
}

/// Runs all nine checks in order.
pub fn run_all(depth: Depth) -> Vec<CheckResult> {
    vec![
        check_free_tables(depth),
        check_fas_counts(),
        check_unital_family(),
        check_enumeration(),
        check_laver(),
        check_sample_homology(),
        check_theorems(depth),
        check_structure(depth),
        check_torsion_probes(),
    ]
}

pub fn render(results: &[CheckResult]) -> String {
    let mut out: String = results.iter().map(CheckResult::render).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", results.len()));
    out
}

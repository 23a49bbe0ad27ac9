//! Enumeration of finite magmas satisfying a set of axioms, labeled or up to isomorphism.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{canonical_form, check_axioms, AxiomReport, FiniteMagma};
use crate::reference;

/// Orders searched without an override.
pub const DEFAULT_ORDER_BOUND: usize = 4;
/// Hard ceiling, reachable only with [`EnumerationQuery::allow_order5`].
pub const OVERRIDE_ORDER_BOUND: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Shelf,
    Spindle,
    Associative,
    Unital,
    ProtoUnital,
    PreUnital,
    Rack,
    Quandle,
    Quasigroup,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::Shelf,
        Axiom::Spindle,
        Axiom::Associative,
        Axiom::Unital,
        Axiom::ProtoUnital,
        Axiom::PreUnital,
        Axiom::Rack,
        Axiom::Quandle,
        Axiom::Quasigroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Shelf => "shelf",
            Axiom::Spindle => "spindle",
            Axiom::Associative => "associative",
            Axiom::Unital => "unital",
            Axiom::ProtoUnital => "proto_unital",
            Axiom::PreUnital => "pre_unital",
            Axiom::Rack => "rack",
            Axiom::Quandle => "quandle",
            Axiom::Quasigroup => "quasigroup",
        }
    }

    pub fn holds(self, r: &AxiomReport) -> bool {
        match self {
            Axiom::Shelf => r.shelf,
            Axiom::Spindle => r.spindle,
            Axiom::Associative => r.associative,
            Axiom::Unital => r.unital,
            Axiom::ProtoUnital => r.proto_unital,
            Axiom::PreUnital => r.pre_unital,
            Axiom::Rack => r.rack,
            Axiom::Quandle => r.quandle,
            Axiom::Quasigroup => r.quasigroup,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

pub fn parse_axiom_list(list: &str) -> Result<BTreeSet<Axiom>> {
    let set = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<BTreeSet<_>>>()?;
    if set.is_empty() {
        return Err(Error::EmptyAxiomSet);
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    Labeled,
    IsoClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub order: usize,
    pub axioms: BTreeSet<Axiom>,
    pub mode: CountMode,
    /// Permits order 5.
    #[serde(default)]
    pub allow_order5: bool,
    /// `None` keeps witnesses for orders up to 3.
    #[serde(default)]
    pub witnesses: Option<bool>,
}

impl EnumerationQuery {
    pub fn new(order: usize, axioms: impl IntoIterator<Item = Axiom>, mode: CountMode) -> Self {
        EnumerationQuery {
            order,
            axioms: axioms.into_iter().collect(),
            mode,
            allow_order5: false,
            witnesses: None,
        }
    }

    pub fn with_witnesses(mut self, keep: bool) -> Self {
        self.witnesses = Some(keep);
        self
    }

    pub fn with_order5_override(mut self) -> Self {
        self.allow_order5 = true;
        self
    }

    fn keep_witnesses(&self) -> bool {
        self.witnesses.unwrap_or(self.order <= 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub query: EnumerationQuery,
    pub count: u64,
    /// Canonical tables (iso mode) or labeled tables, sorted.
    pub witnesses: Option<Vec<FiniteMagma>>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Constraints {
    shelf: bool,
    associative: bool,
    idempotent: bool,
    absorption: bool,
    column_injective: bool,
    row_injective: bool,
    unit: bool,
}

impl Constraints {
    fn from_axioms(axioms: &BTreeSet<Axiom>) -> Self {
        let mut c = Constraints::default();
        for a in axioms {
            match a {
                Axiom::Shelf => c.shelf = true,
                Axiom::Spindle => {
                    c.shelf = true;
                    c.idempotent = true;
                }
                Axiom::Associative => c.associative = true,
                Axiom::Unital => {
                    c.shelf = true;
                    c.unit = true;
                }
                Axiom::ProtoUnital => {
                    c.shelf = true;
                    c.absorption = true;
                }
                Axiom::PreUnital => {
                    c.shelf = true;
                    c.absorption = true;
                    c.idempotent = true;
                }
                Axiom::Rack => {
                    c.shelf = true;
                    c.column_injective = true;
                }
                Axiom::Quandle => {
                    c.shelf = true;
                    c.column_injective = true;
                    c.idempotent = true;
                }
                Axiom::Quasigroup => {
                    c.column_injective = true;
                    c.row_injective = true;
                }
            }
        }
        c
    }
}

const UNSET: u8 = u8::MAX;

/// Partial Cayley table filled in row-major order.
#[derive(Clone)]
struct Search {
    n: usize,
    cells: Vec<u8>,
    fixed: Vec<bool>,
    rules: Constraints,
}

impl Search {
    fn new(n: usize, rules: Constraints) -> Self {
        let mut s = Search {
            n,
            cells: vec![UNSET; n * n],
            fixed: vec![false; n * n],
            rules,
        };
        if rules.idempotent {
            for x in 0..n {
                s.cells[x * n + x] = x as u8;
                s.fixed[x * n + x] = true;
            }
        }
        s
    }

    /// Presets row and column `u` so that `u` is a two-sided unit.
    fn with_unit(mut self, u: usize) -> Option<Self> {
        let n = self.n;
        for x in 0..n {
            for (cell, v) in [(u * n + x, x), (x * n + u, x)] {
                if self.fixed[cell] && self.cells[cell] as usize != v {
                    return None;
                }
                self.cells[cell] = v as u8;
                self.fixed[cell] = true;
            }
        }
        self.consistent().then_some(self)
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.cells[x * self.n + y];
        (v != UNSET).then_some(v as usize)
    }

    /// False iff some fully determined constraint instance is violated.
    fn consistent(&self) -> bool {
        let n = self.n;
        let r = self.rules;
        if r.column_injective || r.row_injective {
            for i in 0..n {
                let mut row_seen = 0u32;
                let mut col_seen = 0u32;
                for j in 0..n {
                    if r.row_injective {
                        if let Some(v) = self.get(i, j) {
                            if row_seen & (1 << v) != 0 {
                                return false;
                            }
                            row_seen |= 1 << v;
                        }
                    }
                    if r.column_injective {
                        if let Some(v) = self.get(j, i) {
                            if col_seen & (1 << v) != 0 {
                                return false;
                            }
                            col_seen |= 1 << v;
                        }
                    }
                }
            }
        }
        if r.absorption {
            for a in 0..n {
                for b in 0..n {
                    let Some(ab) = self.get(a, b) else { continue };
                    if matches!(self.get(b, ab), Some(v) if v != ab) {
                        return false;
                    }
                    if matches!(self.get(ab, b), Some(v) if v != ab) {
                        return false;
                    }
                }
            }
        }
        if r.shelf || r.associative {
            for a in 0..n {
                for b in 0..n {
                    let Some(ab) = self.get(a, b) else { continue };
                    for c in 0..n {
                        let Some(lhs) = self.get(ab, c) else { continue };
                        if r.associative {
                            if let Some(bc) = self.get(b, c) {
                                if matches!(self.get(a, bc), Some(v) if v != lhs) {
                                    return false;
                                }
                            }
                        }
                        if r.shelf {
                            if let (Some(ac), Some(bc)) = (self.get(a, c), self.get(b, c)) {
                                if matches!(self.get(ac, bc), Some(v) if v != lhs) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.n * self.n).find(|&i| !self.fixed[i])
    }

    fn run(&mut self, from: usize, emit: &mut dyn FnMut(&[u8])) {
        let Some(cell) = self.next_free(from) else {
            emit(&self.cells);
            return;
        };
        for v in 0..self.n as u8 {
            self.cells[cell] = v;
            if self.consistent() {
                self.run(cell + 1, emit);
            }
        }
        self.cells[cell] = UNSET;
    }

    /// Partial assignments of the first `depth` free cells that are still consistent.
    fn frontier(self, depth: usize) -> Vec<(Search, usize)> {
        let mut layer = vec![(self, 0usize)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (s, from) in layer {
                let Some(cell) = s.next_free(from) else {
                    next.push((s, from));
                    continue;
                };
                for v in 0..s.n as u8 {
                    let mut t = s.clone();
                    t.cells[cell] = v;
                    t.fixed[cell] = true;
                    if t.consistent() {
                        next.push((t, cell + 1));
                    }
                }
            }
            layer = next;
        }
        layer
    }
}

#[derive(Default)]
struct Partial {
    count: u64,
    labeled: Vec<FiniteMagma>,
    canonical: BTreeSet<FiniteMagma>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        self.labeled.extend(other.labeled);
        self.canonical.extend(other.canonical);
        self
    }
}

pub fn enumerate(query: &EnumerationQuery) -> Result<CountReport> {
    let n = query.order;
    if n == 0 {
        return Err(Error::EmptyMagma);
    }
    if query.axioms.is_empty() {
        return Err(Error::EmptyAxiomSet);
    }
    let bound = if query.allow_order5 {
        OVERRIDE_ORDER_BOUND
    } else {
        DEFAULT_ORDER_BOUND
    };
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "enumerate",
            order: n,
            bound,
            hint: if query.allow_order5 {
                ""
            } else {
                "; order 5 requires the explicit override"
            },
        });
    }
    let rules = Constraints::from_axioms(&query.axioms);
    let iso = query.mode == CountMode::IsoClasses;
    let keep = query.keep_witnesses();

    let roots: Vec<Search> = if rules.unit {
        (0..n)
            .filter_map(|u| Search::new(n, rules).with_unit(u))
            .collect()
    } else {
        vec![Search::new(n, rules)]
    };
    let depth = if n >= 4 { 3 } else { 0 };
    let jobs: Vec<(Search, usize)> = roots.into_iter().flat_map(|s| s.frontier(depth)).collect();

    let axioms = &query.axioms;
    let result = jobs
        .into_par_iter()
        .map(|(mut search, from)| {
            let mut part = Partial::default();
            search.run(from, &mut |cells| {
                let table = cells.iter().map(|&v| v as u32).collect();
                let m = FiniteMagma::from_raw(n, table);
                let report = check_axioms(&m);
                if !axioms.iter().all(|a| a.holds(&report)) {
                    return;
                }
                part.count += 1;
                if iso {
                    part.canonical
                        .insert(canonical_form(&m).expect("order within canonical bound"));
                } else if keep {
                    part.labeled.push(m);
                }
            });
            part
        })
        .reduce(Partial::default, Partial::merge);

    let (count, witnesses) = if iso {
        let count = result.canonical.len() as u64;
        (count, keep.then(|| result.canonical.into_iter().collect()))
    } else {
        let mut labeled = result.labeled;
        labeled.sort();
        (result.count, keep.then_some(labeled))
    };
    Ok(CountReport {
        query: query.clone(),
        count,
        witnesses,
    })
}

/// Iso-class representatives of all magmas of order `n` satisfying `axioms`.
pub fn iso_classes(n: usize, axioms: &[Axiom]) -> Result<Vec<FiniteMagma>> {
    let q = EnumerationQuery::new(n, axioms.iter().copied(), CountMode::IsoClasses)
        .with_witnesses(true);
    Ok(enumerate(&q)?.witnesses.unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub associative_shelves: u64,
    pub associative_spindles: u64,
    pub unital_shelves: u64,
    pub published: [u64; 3],
    /// Pre-unital shelves of order `n - 1` (0 when `n = 1`).
    pub pre_unital_previous: u64,
}

impl CountRow {
    pub fn mismatches(&self) -> Vec<&'static str> {
        let computed = [
            self.associative_shelves,
            self.associative_spindles,
            self.unital_shelves,
        ];
        ["AS", "ASp", "US"]
            .into_iter()
            .zip(computed.iter().zip(self.published.iter()))
            .filter_map(|(name, (c, p))| (c != p).then_some(name))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTableReport {
    pub rows: Vec<CountRow>,
}

impl CountTableReport {
    pub fn render(&self) -> String {
        let mut out = String::from("n  #AS (pub)   #ASp (pub)   #US (pub)   #pre-unital(n-1)\n");
        for r in &self.rows {
            let mark = |c: u64, p: u64| if c == p { ' ' } else { '!' };
            out.push_str(&format!(
                "{}  {:>3} ({:>3}){}  {:>3} ({:>3}){}  {:>3} ({:>3}){}  {:>3}\n",
                r.n,
                r.associative_shelves,
                r.published[0],
                mark(r.associative_shelves, r.published[0]),
                r.associative_spindles,
                r.published[1],
                mark(r.associative_spindles, r.published[1]),
                r.unital_shelves,
                r.published[2],
                mark(r.unital_shelves, r.published[2]),
                r.pre_unital_previous,
            ));
        }
        for r in &self.rows {
            let bad = r.mismatches();
            if !bad.is_empty() {
                out.push_str(&format!("mismatch at n={}: {}\n", r.n, bad.join(", ")));
            }
        }
        out
    }
}

/// Iso-class counts of associative shelves, associative spindles and unital shelves.
pub fn reproduce_count_table(nmax: usize) -> Result<CountTableReport> {
    if nmax > DEFAULT_ORDER_BOUND {
        return Err(Error::BoundExceeded {
            what: "reproduce_count_table",
            order: nmax,
            bound: DEFAULT_ORDER_BOUND,
            hint: "",
        });
    }
    let count = |n: usize, axioms: &[Axiom]| -> Result<u64> {
        let q = EnumerationQuery::new(n, axioms.iter().copied(), CountMode::IsoClasses)
            .with_witnesses(false);
        Ok(enumerate(&q)?.count)
    };
    let mut rows = Vec::new();
    for n in 1..=nmax {
        rows.push(CountRow {
            n,
            associative_shelves: count(n, &[Axiom::Associative, Axiom::Shelf])?,
            associative_spindles: count(n, &[Axiom::Associative, Axiom::Spindle])?,
            unital_shelves: count(n, &[Axiom::Unital])?,
            published: [
                reference::ASSOCIATIVE_SHELF_COUNTS[n - 1],
                reference::ASSOCIATIVE_SPINDLE_COUNTS[n - 1],
                reference::UNITAL_SHELF_COUNTS_PUBLISHED[n - 1],
            ],
            pre_unital_previous: if n > 1 {
                count(n - 1, &[Axiom::PreUnital])?
            } else {
                0
            },
        });
    }
    Ok(CountTableReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::automorphism_count;

    /// Independent oracle: every table of order `n`, filtered by the full axiom report.
    fn brute_force(n: usize, axioms: &[Axiom]) -> Vec<FiniteMagma> {
        let cells = n * n;
        let total = n.pow(cells as u32);
        (0..total)
            .filter_map(|mut code| {
                let mut table = vec![0usize; cells];
                for slot in table.iter_mut() {
                    *slot = code % n;
                    code /= n;
                }
                let m = FiniteMagma::new(n, table).unwrap();
                let r = check_axioms(&m);
                axioms.iter().all(|a| a.holds(&r)).then_some(m)
            })
            .collect()
    }

    #[test]
    fn small_order_counts() {
        let q = EnumerationQuery::new(2, [Axiom::Associative, Axiom::Shelf], CountMode::IsoClasses);
        assert_eq!(enumerate(&q).unwrap().count, 4);
        let q = EnumerationQuery::new(2, [Axiom::Associative, Axiom::Shelf], CountMode::Labeled);
        assert_eq!(enumerate(&q).unwrap().count, 6);
        for axioms in [
            vec![Axiom::Shelf],
            vec![Axiom::Shelf, Axiom::Associative],
            vec![Axiom::Quandle],
        ] {
            let q = EnumerationQuery::new(1, axioms, CountMode::IsoClasses);
            assert_eq!(enumerate(&q).unwrap().count, 1);
        }
    }

    #[test]
    fn labeled_search_matches_brute_force() {
        for n in 1..=3 {
            for axioms in [
                vec![Axiom::Shelf],
                vec![Axiom::Associative, Axiom::Shelf],
                vec![Axiom::Spindle, Axiom::Associative],
                vec![Axiom::Unital],
                vec![Axiom::ProtoUnital],
                vec![Axiom::PreUnital],
                vec![Axiom::Rack],
                vec![Axiom::Quasigroup],
            ] {
                let q = EnumerationQuery::new(n, axioms.clone(), CountMode::Labeled)
                    .with_witnesses(true);
                let got = enumerate(&q).unwrap();
                let mut expected = brute_force(n, &axioms);
                expected.sort();
                assert_eq!(got.count as usize, expected.len(), "n={n} {axioms:?}");
                assert_eq!(got.witnesses.unwrap(), expected, "n={n} {axioms:?}");
            }
        }
    }

    #[test]
    fn orbit_counting_identity() {
        for n in 1..=3 {
            let axioms = [Axiom::Associative, Axiom::Shelf];
            let labeled = enumerate(&EnumerationQuery::new(n, axioms, CountMode::Labeled))
                .unwrap()
                .count;
            let classes = iso_classes(n, &axioms).unwrap();
            let fact: usize = (1..=n).product();
            let orbit_sum: usize = classes.iter().map(|m| fact / automorphism_count(m)).sum();
            assert_eq!(orbit_sum as u64, labeled);
        }
    }

    #[test]
    fn iso_count_independent_of_cell_order() {
        // Relabel every labeled witness by a fixed permutation; the canonical set is unchanged.
        let axioms = [Axiom::Associative, Axiom::Shelf];
        let q = EnumerationQuery::new(3, axioms, CountMode::Labeled).with_witnesses(true);
        let labeled = enumerate(&q).unwrap().witnesses.unwrap();
        let shuffled: BTreeSet<_> = labeled
            .iter()
            .map(|m| canonical_form(&m.permute(&[2, 0, 1]).unwrap()).unwrap())
            .collect();
        assert_eq!(shuffled.len(), iso_classes(3, &axioms).unwrap().len());
    }

    #[test]
    fn order_bound_enforced() {
        let q = EnumerationQuery::new(5, [Axiom::Shelf], CountMode::Labeled);
        assert!(matches!(enumerate(&q), Err(Error::BoundExceeded { .. })));
        let q = EnumerationQuery::new(6, [Axiom::Shelf], CountMode::Labeled).with_order5_override();
        assert!(matches!(enumerate(&q), Err(Error::BoundExceeded { .. })));
        let q = EnumerationQuery::new(2, [], CountMode::Labeled);
        assert_eq!(enumerate(&q), Err(Error::EmptyAxiomSet));
    }

    #[test]
    fn axiom_names_parse() {
        assert_eq!(
            parse_axiom_list("shelf,associative").unwrap(),
            [Axiom::Shelf, Axiom::Associative].into_iter().collect()
        );
        assert_eq!("proto-unital".parse::<Axiom>().unwrap(), Axiom::ProtoUnital);
        assert!(parse_axiom_list("shelf,bogus").is_err());
        assert_eq!(parse_axiom_list(""), Err(Error::EmptyAxiomSet));
    }

    #[test]
    fn count_table_small() {
        let r = reproduce_count_table(2).unwrap();
        assert_eq!(r.rows[0].associative_shelves, 1);
        assert_eq!(r.rows[0].unital_shelves, 1);
        assert_eq!(r.rows[1].associative_shelves, 4);
        assert_eq!(r.rows[1].associative_spindles, 3);
    }
}

//! Published reference tables used by the golden tests and `verify-paper`.
//!
//! Letter-labelled tables are translated to indices preserving row and column order
//! (`a, b, c, d -> 0, 1, 2, 3`). Laver tables are kept in their native 1-indexed form.

/// An associative spindle that is not a quandle.
pub const ASSOCIATIVE_SPINDLE_4: [[usize; 4]; 4] =
    [[0, 0, 2, 3], [0, 1, 2, 3], [0, 0, 2, 3], [0, 3, 2, 3]];

/// The same table as typeset, with rows `a` and `b` exchanged. Not idempotent
/// (`b*b = a`), not a shelf, not associative; swapping the two rows back is the
/// only correction of at most two cells that yields an associative spindle.
pub const ASSOCIATIVE_SPINDLE_4_AS_PRINTED: [[usize; 4]; 4] =
    [[0, 1, 2, 3], [0, 0, 2, 3], [0, 0, 2, 3], [0, 3, 2, 3]];

/// A Latin square of order 4.
pub const LATIN_SQUARE_4: [[usize; 4]; 4] =
    [[0, 2, 3, 1], [3, 1, 0, 2], [1, 3, 2, 0], [2, 0, 1, 3]];

/// Associative shelf with right zeros 0, 2, 3 that is not proto-unital.
pub const NON_PROTO_UNITAL_WITH_RIGHT_ZEROS: [[usize; 4]; 4] =
    [[0, 0, 2, 3], [0, 0, 2, 3], [0, 0, 2, 3], [0, 2, 2, 3]];

/// `x*y = min(x, y)`; no right-fixed element.
pub const SAMPLE_MIN_CHAIN: [[usize; 4]; 4] =
    [[0, 0, 0, 0], [0, 1, 1, 1], [0, 1, 2, 2], [0, 1, 2, 3]];

/// `x*y = g(x)` with `g = (0, 0, 0, 3)`.
pub const SAMPLE_ROW_CONST_0003: [[usize; 4]; 4] =
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [3, 3, 3, 3]];

/// `x*y = g(x)` with `g = (0, 0, 2, 3)`.
pub const SAMPLE_ROW_CONST_0023: [[usize; 4]; 4] =
    [[0, 0, 0, 0], [0, 0, 0, 0], [2, 2, 2, 2], [3, 3, 3, 3]];

/// `x*y = x`.
pub const LEFT_PROJECTION_4: [[usize; 4]; 4] =
    [[0, 0, 0, 0], [1, 1, 1, 1], [2, 2, 2, 2], [3, 3, 3, 3]];

/// Associative shelf whose column 3 is the constant 3.
pub const SAMPLE_RIGHT_ZERO_3: [[usize; 4]; 4] =
    [[0, 0, 0, 3], [0, 0, 0, 3], [0, 0, 2, 3], [0, 0, 3, 3]];

/// `x*y = (x & 1) | (y & 2)`.
pub const SAMPLE_BIT_MIX: [[usize; 4]; 4] =
    [[0, 0, 2, 2], [1, 1, 3, 3], [0, 0, 2, 2], [1, 1, 3, 3]];

/// Right projection except on the first two columns.
pub const SAMPLE_NEAR_RIGHT_PROJECTION: [[usize; 4]; 4] =
    [[0, 0, 2, 3], [0, 1, 2, 3], [0, 0, 2, 3], [0, 0, 2, 3]];

/// `x*y = y`.
pub const RIGHT_PROJECTION_4: [[usize; 4]; 4] =
    [[0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3]];

/// A homology sample: table, theory, and the free ranks of `H_0, H_1, H_2` (all torsion-free).
#[derive(Debug, Clone, Copy)]
pub struct HomologySample {
    pub name: &'static str,
    pub table: [[usize; 4]; 4],
    pub two_term: bool,
    pub ranks: [usize; 3],
}

pub const HOMOLOGY_SAMPLES: [HomologySample; 8] = [
    HomologySample {
        name: "T1",
        table: SAMPLE_MIN_CHAIN,
        two_term: true,
        ranks: [1, 1, 1],
    },
    HomologySample {
        name: "T2",
        table: SAMPLE_ROW_CONST_0003,
        two_term: true,
        ranks: [2, 4, 8],
    },
    HomologySample {
        name: "T3",
        table: SAMPLE_ROW_CONST_0023,
        two_term: true,
        ranks: [3, 9, 27],
    },
    HomologySample {
        name: "T4",
        table: LEFT_PROJECTION_4,
        two_term: true,
        ranks: [4, 16, 64],
    },
    HomologySample {
        name: "T5",
        table: SAMPLE_RIGHT_ZERO_3,
        two_term: false,
        ranks: [1, 0, 0],
    },
    HomologySample {
        name: "T6",
        table: SAMPLE_BIT_MIX,
        two_term: false,
        ranks: [2, 4, 16],
    },
    HomologySample {
        name: "T7",
        table: SAMPLE_NEAR_RIGHT_PROJECTION,
        two_term: false,
        ranks: [3, 8, 32],
    },
    HomologySample {
        name: "T8",
        table: RIGHT_PROJECTION_4,
        two_term: false,
        ranks: [4, 12, 48],
    },
];

/// Iso-class counts of associative shelves, associative spindles and unital shelves, n = 1..4.
pub const ASSOCIATIVE_SHELF_COUNTS: [u64; 4] = [1, 4, 16, 93];
pub const ASSOCIATIVE_SPINDLE_COUNTS: [u64; 4] = [1, 3, 9, 38];
pub const UNITAL_SHELF_COUNTS_PUBLISHED: [u64; 4] = [1, 1, 4, 6];

/// Element order of the published FAS(2) table, words over `a, b`.
pub const FAS2_ELEMENTS: [&str; 18] = [
    "a", "b", "ab", "ba", "aa", "bb", "bbb", "abb", "bab", "bba", "aab", "aba", "baa", "aaa",
    "babb", "abaa", "aabb", "bbaa",
];

pub const FAS2_TABLE: [[usize; 18]; 18] = [
    [
        4, 2, 10, 11, 13, 7, 7, 16, 10, 11, 10, 11, 15, 13, 16, 15, 16, 15,
    ],
    [3, 5, 8, 9, 12, 6, 6, 14, 8, 9, 8, 9, 17, 12, 14, 17, 14, 17],
    [
        11, 7, 10, 11, 15, 7, 7, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        12, 8, 8, 9, 12, 14, 14, 14, 8, 9, 8, 9, 17, 12, 14, 17, 14, 17,
    ],
    [
        13, 10, 10, 11, 13, 16, 16, 16, 10, 11, 10, 11, 15, 13, 16, 15, 16, 15,
    ],
    [9, 6, 8, 9, 17, 6, 6, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17],
    [9, 6, 8, 9, 17, 6, 6, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17],
    [
        11, 7, 10, 11, 15, 7, 7, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        9, 14, 8, 9, 17, 14, 14, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17,
    ],
    [
        17, 8, 8, 9, 17, 14, 14, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17,
    ],
    [
        11, 16, 10, 11, 15, 16, 16, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        15, 10, 10, 11, 15, 16, 16, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        12, 8, 8, 9, 12, 14, 14, 14, 8, 9, 8, 9, 17, 12, 14, 17, 14, 17,
    ],
    [
        13, 10, 10, 11, 13, 16, 16, 16, 10, 11, 10, 11, 15, 13, 16, 15, 16, 15,
    ],
    [
        9, 14, 8, 9, 17, 14, 14, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17,
    ],
    [
        15, 10, 10, 11, 15, 16, 16, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        11, 16, 10, 11, 15, 16, 16, 16, 10, 11, 10, 11, 15, 15, 16, 15, 16, 15,
    ],
    [
        17, 8, 8, 9, 17, 14, 14, 14, 8, 9, 8, 9, 17, 17, 14, 17, 14, 17,
    ],
];

/// Free proto-unital shelf on two letters, as words.
pub const FPUS2_ELEMENTS: [&str; 6] = ["a", "aa", "ab", "b", "bb", "ba"];
pub const FPUS2_TABLE: [[&str; 6]; 6] = [
    ["aa", "aa", "ab", "ab", "ab", "ba"],
    ["aa", "aa", "ab", "ab", "ab", "ba"],
    ["ba", "ba", "ab", "ab", "ab", "ba"],
    ["ba", "ba", "ab", "bb", "bb", "ba"],
    ["ba", "ba", "ab", "bb", "bb", "ba"],
    ["ba", "ba", "ab", "ab", "ab", "ba"],
];

/// Free pre-unital shelf on two letters, as words.
pub const FPTUS2_ELEMENTS: [&str; 4] = ["a", "b", "ab", "ba"];
pub const FPTUS2_TABLE: [[&str; 4]; 4] = [
    ["a", "ab", "ab", "ba"],
    ["ba", "b", "ab", "ba"],
    ["ba", "ab", "ab", "ba"],
    ["ba", "ab", "ab", "ba"],
];

/// Sizes of the free pre-unital shelves, n = 1..6.
pub const PRE_UNITAL_FREE_SIZES: [u64; 6] = [1, 4, 15, 64, 325, 1956];

/// Laver tables A_2, A_3, A_4 (left self-distributive, 1-indexed).
pub const LAVER_A2: [[usize; 4]; 4] = [[2, 4, 2, 4], [3, 4, 3, 4], [4, 4, 4, 4], [1, 2, 3, 4]];

pub const LAVER_A3: [[usize; 8]; 8] = [
    [2, 4, 6, 8, 2, 4, 6, 8],
    [3, 4, 7, 8, 3, 4, 7, 8],
    [4, 8, 4, 8, 4, 8, 4, 8],
    [5, 6, 7, 8, 5, 6, 7, 8],
    [6, 8, 6, 8, 6, 8, 6, 8],
    [7, 8, 7, 8, 7, 8, 7, 8],
    [8, 8, 8, 8, 8, 8, 8, 8],
    [1, 2, 3, 4, 5, 6, 7, 8],
];

pub const LAVER_A4: [[usize; 16]; 16] = [
    [2, 12, 14, 16, 2, 12, 14, 16, 2, 12, 14, 16, 2, 12, 14, 16],
    [3, 12, 15, 16, 3, 12, 15, 16, 3, 12, 15, 16, 3, 12, 15, 16],
    [4, 8, 12, 16, 4, 8, 12, 16, 4, 8, 12, 16, 4, 8, 12, 16],
    [5, 6, 7, 8, 13, 14, 15, 16, 5, 6, 7, 8, 13, 14, 15, 16],
    [6, 8, 14, 16, 6, 8, 14, 16, 6, 8, 14, 16, 6, 8, 14, 16],
    [7, 8, 15, 16, 7, 8, 15, 16, 7, 8, 15, 16, 7, 8, 15, 16],
    [8, 16, 8, 16, 8, 16, 8, 16, 8, 16, 8, 16, 8, 16, 8, 16],
    [9, 10, 11, 12, 13, 14, 15, 16, 9, 10, 11, 12, 13, 14, 15, 16],
    [
        10, 12, 14, 16, 10, 12, 14, 16, 10, 12, 14, 16, 10, 12, 14, 16,
    ],
    [
        11, 12, 15, 16, 11, 12, 15, 16, 11, 12, 15, 16, 11, 12, 15, 16,
    ],
    [
        12, 16, 12, 16, 12, 16, 12, 16, 12, 16, 12, 16, 12, 16, 12, 16,
    ],
    [
        13, 14, 15, 16, 13, 14, 15, 16, 13, 14, 15, 16, 13, 14, 15, 16,
    ],
    [
        14, 16, 14, 16, 14, 16, 14, 16, 14, 16, 14, 16, 14, 16, 14, 16,
    ],
    [
        15, 16, 15, 16, 15, 16, 15, 16, 15, 16, 15, 16, 15, 16, 15, 16,
    ],
    [
        16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16,
    ],
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
];

/// Every named order-4 table above, for bulk property checks.
pub fn all_named_tables() -> Vec<[[usize; 4]; 4]> {
    let mut v = vec![
        ASSOCIATIVE_SPINDLE_4,
        LATIN_SQUARE_4,
        NON_PROTO_UNITAL_WITH_RIGHT_ZEROS,
    ];
    v.extend(HOMOLOGY_SAMPLES.iter().map(|s| s.table));
    v
}

pub fn laver_reference(k: u32) -> Option<Vec<Vec<usize>>> {
    fn rows<const N: usize>(t: &[[usize; N]; N]) -> Vec<Vec<usize>> {
        t.iter().map(|r| r.to_vec()).collect()
    }
    match k {
        2 => Some(rows(&LAVER_A2)),
        3 => Some(rows(&LAVER_A3)),
        4 => Some(rows(&LAVER_A4)),
        _ => None,
    }
}

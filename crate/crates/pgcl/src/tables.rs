//! Reference tables used as regression fixtures: the known admissible
//! patterns, feasible weight distributions and pattern-count solutions for
//! the small parameter cases, the planar-section coordinates in PG(2,5) for
//! the x=12 reconstruction, and the admissible parameter lists for q in
//! {7, 8}. Everything downstream is computed from scratch; these tables only
//! pin the expected outputs bit-exactly.

/// q=3, x=5: patterns of class lines (T1, T2).
pub const Q3_X5_PATTERNS_IN: [[[u8; 4]; 4]; 2] = [
    [[0, 0, 0, 1], [2, 2, 2, 3], [2, 2, 2, 3], [2, 2, 2, 3]],
    [[0, 1, 2, 2], [0, 1, 2, 2], [1, 2, 3, 3], [1, 2, 3, 3]],
];

/// q=3, x=5: patterns of complement lines (T3, T4).
pub const Q3_X5_PATTERNS_OUT: [[[u8; 4]; 4]; 2] = [
    [[0, 0, 0, 2], [1, 1, 1, 3], [1, 1, 1, 3], [1, 1, 1, 3]],
    [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 2, 2], [2, 2, 3, 3]],
];

/// q=3, x=5: the unique weight distribution, on N = {2,6,10} / M = {3,7,11}.
pub const Q3_X5_POINT_DIST: [u64; 3] = [10, 15, 15];
pub const Q3_X5_PLANE_DIST: [u64; 3] = [15, 15, 10];

/// q=3, x=5: the unique pattern-count solution (z1..z4).
pub const Q3_X5_Z: [u64; 4] = [20, 45, 20, 45];

/// q=5, x=13, first weight-set group (N = {0,6,...,30}, M = {1,7,...,31}):
/// patterns of class lines, T1..T8.
pub const X13G1_PATTERNS_IN: [[[u8; 6]; 6]; 8] = [
    [
        [0, 0, 0, 1, 2, 2],
        [2, 2, 2, 3, 4, 4],
        [2, 2, 2, 3, 4, 4],
        [2, 2, 2, 3, 4, 4],
        [3, 3, 3, 4, 5, 5],
        [3, 3, 3, 4, 5, 5],
    ],
    [
        [0, 0, 1, 1, 1, 2],
        [1, 1, 2, 2, 2, 3],
        [2, 2, 3, 3, 3, 4],
        [3, 3, 4, 4, 4, 5],
        [3, 3, 4, 4, 4, 5],
        [3, 3, 4, 4, 4, 5],
    ],
    [
        [0, 1, 1, 3, 3, 3],
        [1, 2, 2, 4, 4, 4],
        [1, 2, 2, 4, 4, 4],
        [1, 2, 2, 4, 4, 4],
        [1, 2, 2, 4, 4, 4],
        [2, 3, 3, 5, 5, 5],
    ],
    [
        [0, 1, 2, 2, 3, 3],
        [0, 1, 2, 2, 3, 3],
        [1, 2, 3, 3, 4, 4],
        [1, 2, 3, 3, 4, 4],
        [2, 3, 4, 4, 5, 5],
        [2, 3, 4, 4, 5, 5],
    ],
    [
        [0, 2, 2, 2, 2, 3],
        [0, 2, 2, 2, 2, 3],
        [0, 2, 2, 2, 2, 3],
        [2, 4, 4, 4, 4, 5],
        [2, 4, 4, 4, 4, 5],
        [2, 4, 4, 4, 4, 5],
    ],
    [
        [1, 1, 1, 2, 3, 3],
        [1, 1, 1, 2, 3, 3],
        [1, 1, 1, 2, 3, 3],
        [3, 3, 3, 4, 5, 5],
        [3, 3, 3, 4, 5, 5],
        [3, 3, 3, 4, 5, 5],
    ],
    [
        [1, 1, 3, 4, 4, 4],
        [1, 1, 3, 4, 4, 4],
        [1, 1, 3, 4, 4, 4],
        [1, 1, 3, 4, 4, 4],
        [1, 1, 3, 4, 4, 4],
        [1, 1, 3, 4, 4, 4],
    ],
    [
        [1, 2, 2, 3, 4, 5],
        [1, 2, 2, 3, 4, 5],
        [1, 2, 2, 3, 4, 5],
        [1, 2, 2, 3, 4, 5],
        [1, 2, 2, 3, 4, 5],
        [1, 2, 2, 3, 4, 5],
    ],
];

/// q=5, x=13, first group: patterns of complement lines, T9..T16.
pub const X13G1_PATTERNS_OUT: [[[u8; 6]; 6]; 8] = [
    [
        [0, 0, 0, 0, 0, 0],
        [1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 2, 2],
        [3, 3, 3, 3, 3, 3],
        [3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4],
    ],
    [
        [0, 0, 0, 1, 2, 3],
        [1, 1, 1, 2, 3, 4],
        [1, 1, 1, 2, 3, 4],
        [1, 1, 1, 2, 3, 4],
        [2, 2, 2, 3, 4, 5],
        [2, 2, 2, 3, 4, 5],
    ],
    [
        [0, 0, 0, 2, 2, 2],
        [0, 0, 0, 2, 2, 2],
        [1, 1, 1, 3, 3, 3],
        [2, 2, 2, 4, 4, 4],
        [2, 2, 2, 4, 4, 4],
        [2, 2, 2, 4, 4, 4],
    ],
    [
        [0, 0, 0, 2, 2, 2],
        [1, 1, 1, 3, 3, 3],
        [1, 1, 1, 3, 3, 3],
        [1, 1, 1, 3, 3, 3],
        [1, 1, 1, 3, 3, 3],
        [3, 3, 3, 5, 5, 5],
    ],
    [
        [0, 0, 1, 1, 1, 3],
        [0, 0, 1, 1, 1, 3],
        [1, 1, 2, 2, 2, 4],
        [2, 2, 3, 3, 3, 5],
        [2, 2, 3, 3, 3, 5],
        [2, 2, 3, 3, 3, 5],
    ],
    [
        [0, 0, 1, 1, 2, 2],
        [0, 0, 1, 1, 2, 2],
        [1, 1, 2, 2, 3, 3],
        [1, 1, 2, 2, 3, 3],
        [2, 2, 3, 3, 4, 4],
        [3, 3, 4, 4, 5, 5],
    ],
    [
        [0, 1, 1, 1, 1, 2],
        [0, 1, 1, 1, 1, 2],
        [0, 1, 1, 1, 1, 2],
        [2, 3, 3, 3, 3, 4],
        [2, 3, 3, 3, 3, 4],
        [3, 4, 4, 4, 4, 5],
    ],
    [
        [1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 2, 2],
        [4, 4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4, 4],
    ],
];

/// q=5, x=13, first group: the 3 feasible weight distributions
/// (n_0, n_6, n_12, n_18, n_24, n_30) / (m_1, m_7, m_13, m_19, m_25, m_31).
pub const X13G1_POINT_DISTS: [[u64; 6]; 3] = [
    [0, 37, 19, 72, 28, 0],
    [0, 33, 31, 60, 32, 0],
    [1, 31, 31, 62, 31, 0],
];
pub const X13G1_PLANE_DISTS: [[u64; 6]; 3] = [
    [0, 28, 72, 19, 37, 0],
    [0, 32, 60, 31, 33, 0],
    [0, 31, 62, 31, 31, 1],
];

/// q=5, x=13, first group: pattern-count solutions (z1..z16), one per
/// distribution, in the T-numbering of the two tables above.
pub const X13G1_Z: [[u64; 16]; 3] = [
    [198, 24, 111, 18, 1, 18, 33, 0, 0, 24, 18, 1, 198, 18, 111, 33],
    [112, 86, 85, 96, 1, 2, 21, 0, 0, 86, 2, 1, 112, 96, 85, 21],
    [93, 93, 93, 93, 0, 0, 0, 31, 31, 93, 0, 0, 93, 93, 93, 0],
];

/// q=5, x=12 (N = M = {0,6,...,30}): patterns of class lines, T1..T4.
pub const X12_PATTERNS_IN: [[[u8; 6]; 6]; 4] = [
    [
        [0, 0, 0, 1, 2, 2],
        [1, 1, 1, 2, 3, 3],
        [2, 2, 2, 3, 4, 4],
        [2, 2, 2, 3, 4, 4],
        [3, 3, 3, 4, 5, 5],
        [3, 3, 3, 4, 5, 5],
    ],
    [
        [0, 0, 1, 1, 1, 2],
        [1, 1, 2, 2, 2, 3],
        [1, 1, 2, 2, 2, 3],
        [3, 3, 4, 4, 4, 5],
        [3, 3, 4, 4, 4, 5],
        [3, 3, 4, 4, 4, 5],
    ],
    [
        [0, 1, 1, 3, 3, 3],
        [0, 1, 1, 3, 3, 3],
        [1, 2, 2, 4, 4, 4],
        [1, 2, 2, 4, 4, 4],
        [1, 2, 2, 4, 4, 4],
        [2, 3, 3, 5, 5, 5],
    ],
    [
        [0, 1, 2, 2, 3, 3],
        [0, 1, 2, 2, 3, 3],
        [0, 1, 2, 2, 3, 3],
        [1, 2, 3, 3, 4, 4],
        [2, 3, 4, 4, 5, 5],
        [2, 3, 4, 4, 5, 5],
    ],
];

/// q=5, x=12: patterns of complement lines, T5..T10.
pub const X12_PATTERNS_OUT: [[[u8; 6]; 6]; 6] = [
    [
        [0, 0, 0, 0, 0, 0],
        [1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 2, 2],
        [2, 2, 2, 2, 2, 2],
        [3, 3, 3, 3, 3, 3],
        [4, 4, 4, 4, 4, 4],
    ],
    [
        [0, 0, 0, 1, 2, 3],
        [1, 1, 1, 2, 3, 4],
        [1, 1, 1, 2, 3, 4],
        [1, 1, 1, 2, 3, 4],
        [1, 1, 1, 2, 3, 4],
        [2, 2, 2, 3, 4, 5],
    ],
    [
        [0, 0, 1, 1, 1, 3],
        [0, 0, 1, 1, 1, 3],
        [1, 1, 2, 2, 2, 4],
        [1, 1, 2, 2, 2, 4],
        [2, 2, 3, 3, 3, 5],
        [2, 2, 3, 3, 3, 5],
    ],
    [
        [0, 0, 1, 1, 2, 2],
        [0, 0, 1, 1, 2, 2],
        [1, 1, 2, 2, 3, 3],
        [1, 1, 2, 2, 3, 3],
        [1, 1, 2, 2, 3, 3],
        [3, 3, 4, 4, 5, 5],
    ],
    [
        [0, 1, 1, 1, 1, 2],
        [0, 1, 1, 1, 1, 2],
        [0, 1, 1, 1, 1, 2],
        [1, 2, 2, 2, 2, 3],
        [2, 3, 3, 3, 3, 4],
        [3, 4, 4, 4, 4, 5],
    ],
    [
        [0, 1, 2, 2, 3, 4],
        [0, 1, 2, 2, 3, 4],
        [0, 1, 2, 2, 3, 4],
        [0, 1, 2, 2, 3, 4],
        [0, 1, 2, 2, 3, 4],
        [0, 1, 2, 2, 3, 4],
    ],
];

/// q=5, x=12: the unique weight distribution (points = planes).
pub const X12_DIST: [u64; 6] = [1, 31, 62, 31, 31, 0];

/// q=5, x=12: the unique pattern-count solution (z1..z10).
pub const X12_Z: [u64; 10] = [93, 93, 93, 93, 31, 93, 93, 93, 93, 31];

/// q=5, x=13, second group (N = {3,...,27}, M = {4,...,28}): patterns of
/// class lines, T1..T6.
pub const X13G2_PATTERNS_IN: [[[u8; 6]; 6]; 6] = [
    [
        [0, 0, 0, 0, 0, 2],
        [3, 3, 3, 3, 3, 5],
        [3, 3, 3, 3, 3, 5],
        [3, 3, 3, 3, 3, 5],
        [3, 3, 3, 3, 3, 5],
        [3, 3, 3, 3, 3, 5],
    ],
    [
        [0, 1, 1, 2, 2, 2],
        [1, 2, 2, 3, 3, 3],
        [1, 2, 2, 3, 3, 3],
        [1, 2, 2, 3, 3, 3],
        [3, 4, 4, 5, 5, 5],
        [3, 4, 4, 5, 5, 5],
    ],
    [
        [0, 2, 2, 3, 3, 4],
        [0, 2, 2, 3, 3, 4],
        [0, 2, 2, 3, 3, 4],
        [1, 3, 3, 4, 4, 5],
        [1, 3, 3, 4, 4, 5],
        [1, 3, 3, 4, 4, 5],
    ],
    [
        [0, 2, 3, 3, 3, 3],
        [0, 2, 3, 3, 3, 3],
        [0, 2, 3, 3, 3, 3],
        [0, 2, 3, 3, 3, 3],
        [1, 3, 4, 4, 4, 4],
        [2, 4, 5, 5, 5, 5],
    ],
    [
        [1, 1, 1, 1, 2, 2],
        [1, 1, 1, 1, 2, 2],
        [2, 2, 2, 2, 3, 3],
        [3, 3, 3, 3, 4, 4],
        [4, 4, 4, 4, 5, 5],
        [4, 4, 4, 4, 5, 5],
    ],
    [
        [1, 1, 2, 2, 4, 4],
        [1, 1, 2, 2, 4, 4],
        [1, 1, 2, 2, 4, 4],
        [2, 2, 3, 3, 5, 5],
        [2, 2, 3, 3, 5, 5],
        [2, 2, 3, 3, 5, 5],
    ],
];

/// q=5, x=13, second group: patterns of complement lines, T7..T12.
pub const X13G2_PATTERNS_OUT: [[[u8; 6]; 6]; 6] = [
    [
        [0, 0, 0, 0, 0, 3],
        [2, 2, 2, 2, 2, 5],
        [2, 2, 2, 2, 2, 5],
        [2, 2, 2, 2, 2, 5],
        [2, 2, 2, 2, 2, 5],
        [2, 2, 2, 2, 2, 5],
    ],
    [
        [0, 0, 0, 1, 1, 1],
        [0, 0, 0, 1, 1, 1],
        [2, 2, 2, 3, 3, 3],
        [2, 2, 2, 3, 3, 3],
        [3, 3, 3, 4, 4, 4],
        [3, 3, 3, 4, 4, 4],
    ],
    [
        [0, 0, 0, 1, 1, 1],
        [1, 1, 1, 2, 2, 2],
        [1, 1, 1, 2, 2, 2],
        [2, 2, 2, 3, 3, 3],
        [2, 2, 2, 3, 3, 3],
        [4, 4, 4, 5, 5, 5],
    ],
    [
        [0, 0, 1, 2, 3, 3],
        [0, 0, 1, 2, 3, 3],
        [1, 1, 2, 3, 4, 4],
        [1, 1, 2, 3, 4, 4],
        [1, 1, 2, 3, 4, 4],
        [1, 1, 2, 3, 4, 4],
    ],
    [
        [0, 0, 2, 2, 2, 3],
        [0, 0, 2, 2, 2, 3],
        [0, 0, 2, 2, 2, 3],
        [1, 1, 3, 3, 3, 4],
        [1, 1, 3, 3, 3, 4],
        [2, 2, 4, 4, 4, 5],
    ],
    [
        [0, 1, 2, 2, 2, 2],
        [0, 1, 2, 2, 2, 2],
        [0, 1, 2, 2, 2, 2],
        [0, 1, 2, 2, 2, 2],
        [1, 2, 3, 3, 3, 3],
        [3, 4, 5, 5, 5, 5],
    ],
];

/// q=5, x=13, second group: the 2 feasible weight distributions
/// (n_3, n_9, n_15, n_21, n_27) / (m_4, m_10, m_16, m_22, m_28).
pub const X13G2_POINT_DISTS: [[u64; 5]; 2] = [[1, 50, 65, 15, 25], [26, 0, 65, 65, 0]];
pub const X13G2_PLANE_DISTS: [[u64; 5]; 2] = [[25, 15, 65, 50, 1], [0, 65, 65, 0, 26]];

/// q=5, x=13, second group: pattern-count solutions (z1..z12).
pub const X13G2_Z: [[u64; 12]; 2] = [
    [3, 150, 25, 75, 150, 0, 3, 0, 25, 150, 150, 75],
    [78, 0, 0, 0, 0, 325, 78, 325, 0, 0, 0, 0],
];

/// Parameters q+1 <= x <= (q^2+1)/2 passing the modular gate for q = 7.
pub const Q7_ADMISSIBLE: [u32; 10] = [8, 9, 10, 13, 16, 17, 18, 21, 24, 25];

/// Parameters q+1 <= x <= (q^2+1)/2 passing the modular gate for q = 8.
pub const Q8_ADMISSIBLE: [u32; 14] = [9, 10, 11, 13, 16, 18, 19, 20, 22, 25, 27, 28, 29, 31];

/// Planar sections in PG(2,5) for the x=12 reconstruction, given as dual
/// coordinates of lines. Weight 6.
pub const S6: [[u8; 3]; 6] = [
    [1, 0, 0],
    [0, 0, 1],
    [0, 1, 2],
    [1, 3, 3],
    [1, 3, 0],
    [1, 4, 0],
];

/// Weight 12, first type.
pub const S12_1: [[u8; 3]; 12] = [
    [1, 0, 0],
    [0, 1, 2],
    [1, 4, 3],
    [0, 1, 1],
    [1, 4, 4],
    [0, 0, 1],
    [1, 3, 3],
    [0, 1, 0],
    [1, 4, 0],
    [1, 0, 3],
    [1, 2, 0],
    [1, 2, 1],
];

/// Weight 12, second type (the one compatible with the frame pattern).
pub const S12_2: [[u8; 3]; 12] = [
    [1, 0, 0],
    [1, 1, 1],
    [1, 2, 0],
    [1, 2, 2],
    [1, 3, 0],
    [1, 3, 4],
    [1, 0, 3],
    [1, 0, 1],
    [1, 3, 2],
    [1, 1, 4],
    [1, 4, 1],
    [1, 3, 1],
];

/// Weight 18.
pub const S18: [[u8; 3]; 18] = [
    [1, 0, 0],
    [1, 3, 1],
    [1, 4, 0],
    [1, 3, 3],
    [1, 0, 2],
    [0, 0, 1],
    [0, 1, 1],
    [0, 1, 3],
    [1, 4, 1],
    [1, 0, 1],
    [1, 2, 1],
    [1, 3, 4],
    [1, 0, 4],
    [1, 3, 0],
    [0, 1, 2],
    [0, 1, 0],
    [1, 1, 3],
    [1, 1, 2],
];

/// Weight 24, given by the 7 lines of its complement.
pub const S24_COMPLEMENT: [[u8; 3]; 7] = [
    [0, 1, 4],
    [1, 0, 4],
    [1, 3, 0],
    [1, 2, 0],
    [1, 0, 2],
    [1, 0, 1],
    [1, 3, 1],
];

/// The frame pattern for the x=12 search: entries t(P_i, pi_j) with rows
/// ordered (e1, e2, P3..P6) and columns ordered (pi_1, ..., pi_6). pi_1 is
/// the weight-12 plane and pi_2 the weight-18 plane; the third column is the
/// weight-24 plane and the last three are the weight-6 planes. The search
/// designates pi_3 = <e1,e2,e3+e4> as either the weight-24 column (index 2)
/// or a weight-6 column (index 3).
pub const X12_FRAME: [[u8; 6]; 6] = [
    [1, 2, 3, 0, 0, 0],
    [3, 4, 5, 2, 2, 2],
    [2, 3, 4, 1, 1, 1],
    [2, 3, 4, 1, 1, 1],
    [2, 3, 4, 1, 1, 1],
    [2, 3, 4, 1, 1, 1],
];

/// Quotient-plane point-set search (x=13, first group): admissible rows for
/// selected points (weight-12 rows of the class-line patterns that can occur).
pub const BSET_ROWS_IN: [[u8; 6]; 5] = [
    [1, 1, 2, 2, 2, 3],
    [0, 1, 1, 3, 3, 3],
    [0, 1, 2, 2, 3, 3],
    [0, 2, 2, 2, 2, 3],
    [1, 1, 1, 2, 3, 3],
];

/// Index (into `BSET_ROWS_IN`) of the row that must occur exactly once.
pub const BSET_UNIQUE_ROW: usize = 3;

/// Admissible rows for unselected points.
pub const BSET_ROWS_OUT: [[u8; 6]; 5] = [
    [1, 1, 1, 2, 3, 4],
    [1, 1, 1, 3, 3, 3],
    [1, 1, 2, 2, 2, 4],
    [1, 1, 2, 2, 3, 3],
    [2, 2, 2, 2, 2, 2],
];

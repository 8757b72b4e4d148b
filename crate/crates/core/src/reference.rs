//! Published counts for 2-regular digraphs with loops and multiarcs.

/// Unlabeled classes by weak component count, `U[n-1][c-1]` for `n = 1..=9`
/// (OEIS A306892; row sums A006372).
pub const UNLABELED_BY_COMPONENTS: [&[u64]; 9] = [
    &[1],
    &[2, 1],
    &[5, 2, 1],
    &[14, 8, 2, 1],
    &[50, 24, 8, 2, 1],
    &[265, 93, 28, 8, 2, 1],
    &[1601, 435, 108, 28, 8, 2, 1],
    &[11984, 2486, 507, 113, 28, 8, 2, 1],
    &[101884, 17211, 2811, 527, 113, 28, 8, 2, 1],
];

/// Unlabeled totals for `n = 0..=9`.
pub const UNLABELED_TOTALS: [u64; 10] = [1, 1, 3, 8, 25, 85, 397, 2183, 15129, 122585];

/// Labeled digraphs by weak component count, `L[n-1][c-1]` for `n = 1..=7`
/// (OEIS A307804).
pub const LABELED_BY_COMPONENTS: [&[u64]; 7] = [
    &[1],
    &[2, 1],
    &[14, 6, 1],
    &[201, 68, 12, 1],
    &[4704, 1285, 200, 20, 1],
    &[160890, 36214, 4815, 460, 30, 1],
    &[7538040, 1422288, 160594, 13755, 910, 42, 1],
];

/// Labeled totals for `n = 1..=7` (OEIS A000681).
pub const LABELED_TOTALS: [u64; 7] = [1, 3, 21, 282, 6210, 202410, 9135630];

/// Unlabeled classes with `r` marked nodes, `ROOTED[n-1][r]`. Rows 7 and 8
/// list `r = 0..=6` only.
pub const ROOTED: [&[u64]; 8] = [
    &[1, 1],
    &[3, 3, 3],
    &[8, 13, 13, 8],
    &[25, 58, 88, 58, 25],
    &[85, 310, 588, 588, 310, 85],
    &[397, 1909, 4626, 6035, 4626, 1909, 397],
    &[2183, 13843, 40417, 66471, 66471, 40417, 13843],
    &[15129, 114821, 395324, 782257, 975715, 782257, 395324],
];

/// Classes without multiarcs for `n = 2..=5` (OEIS A005641).
pub const NO_MULTIARCS_FROM_2: [u64; 4] = [1, 3, 8, 27];

/// Classes with neither multiarcs nor loops for `n = 3..=6` (OEIS A219889).
pub const SIMPLE_LOOPLESS_FROM_3: [u64; 4] = [1, 2, 5, 23];

/// Classes without loops (multiarcs allowed) for `n = 2..=6` (OEIS A307180).
pub const LOOPLESS_FROM_2: [u64; 5] = [1, 2, 6, 15, 68];

/// Cycle indices at `n = 3` and how many classes carry each.
pub const CYCLE_INDICES_N3: [(&str, usize); 4] = [
    ("(t1^3)/1", 1),
    ("(t1^3+t1t2)/2", 3),
    ("(t1^3+2t3)/3", 2),
    ("(t1^3+3t1t2+2t3)/6", 2),
];

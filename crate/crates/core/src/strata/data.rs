//! Compiled-in stratum data: Euler numbers of the strata Σᵢ, stabilizer
//! orders and the spectral sets Yᵢ.
//!
//! Each spectral row is (a_order, a_exp, xi_order, xi_exp, multiplicity),
//! meaning a = ε_{a_order}^{a_exp} and ξ = ε_{xi_order}^{xi_exp}.
//!
//! The printed source lists the 24-element set under Y₉ *and* again under a
//! first Y₁₁, the ε₁₄ set under Y₁₀, and the 12-element set under a second
//! Y₁₁. |Yᵢ| = #Gᵢ/4 forces the assignment used here: Y₉ has 24 entries
//! (#G₉ = 96), Y₁₀ has 12 (#G₁₀ = 48), Y₁₁ is the ε₁₄ set with 7
//! (#G₁₁ = 28). The duplicate row is dropped.

pub(crate) type Row = (u32, i64, u32, i64, u32);

pub(crate) struct RawStratum {
    pub index: u32,
    pub name: &'static str,
    pub order: u32,
    pub euler: i64,
    pub spectra: &'static [Row],
}

pub(crate) const BUILTIN: [RawStratum; 11] = [
    RawStratum {
        index: 1,
        name: "(C_2, 1)",
        order: 4,
        euler: -1,
        spectra: &[(1, 0, 1, 0, 1)],
    },
    RawStratum {
        index: 2,
        name: "(C_4, 1)",
        order: 8,
        euler: 2,
        spectra: &[(1, 0, 1, 0, 1), (4, 1, 1, 0, 1)],
    },
    RawStratum {
        index: 3,
        name: "(Q_8, 1)",
        order: 16,
        euler: 1,
        spectra: &[(1, 0, 1, 0, 1), (4, 1, 1, 0, 3)],
    },
    RawStratum {
        index: 4,
        name: "(C_4, chi^2)",
        order: 8,
        euler: 1,
        spectra: &[(1, 0, 1, 0, 1), (4, 1, 4, 1, 1)],
    },
    RawStratum {
        index: 5,
        name: "(Q_16, 1)",
        order: 32,
        euler: -2,
        spectra: &[(1, 0, 1, 0, 1), (16, 2, 1, 0, 1), (16, 6, 1, 0, 1), (4, 1, 1, 0, 5)],
    },
    RawStratum {
        index: 6,
        name: "(Q_8, chi_0)",
        order: 16,
        euler: -2,
        spectra: &[(1, 0, 1, 0, 1), (4, 1, 1, 0, 1), (4, 1, 4, 1, 2)],
    },
    RawStratum {
        index: 7,
        name: "(Q_12, 1)",
        order: 24,
        euler: -2,
        spectra: &[(1, 0, 1, 0, 1), (12, 2, 1, 0, 1), (12, 4, 1, 0, 1), (4, 1, 1, 0, 3)],
    },
    RawStratum {
        index: 8,
        name: "(Q_32, chi_-)",
        order: 64,
        euler: 1,
        spectra: &[
            (1, 0, 1, 0, 1),
            (16, 1, 4, 1, 1),
            (16, 2, 1, 0, 1),
            (16, 3, 4, 1, 1),
            (16, 5, 4, 1, 1),
            (16, 6, 1, 0, 1),
            (16, 7, 4, 1, 1),
            (4, 1, 4, 1, 4),
            (4, 1, 1, 0, 5),
        ],
    },
    RawStratum {
        index: 9,
        name: "(O, 1)",
        order: 96,
        euler: 1,
        spectra: &[
            (1, 0, 1, 0, 1),
            (4, 1, 1, 0, 9),
            (12, 2, 1, 0, 4),
            (12, 4, 1, 0, 4),
            (16, 2, 1, 0, 3),
            (16, 6, 1, 0, 3),
        ],
    },
    RawStratum {
        index: 10,
        name: "(Q_24, chi_-)",
        order: 48,
        euler: 1,
        spectra: &[
            (1, 0, 1, 0, 1),
            (12, 1, 4, 1, 1),
            (12, 5, 4, 1, 1),
            (12, 2, 1, 0, 1),
            (12, 4, 1, 0, 1),
            (4, 1, 4, 1, 4),
            (4, 1, 1, 0, 3),
        ],
    },
    RawStratum {
        index: 11,
        name: "(C_14, chi^6)",
        order: 28,
        euler: 1,
        spectra: &[
            (1, 0, 1, 0, 1),
            (14, 1, 14, 3, 1),
            (14, 2, 14, 6, 1),
            (14, 3, 14, 9, 1),
            (14, 4, 14, 12, 1),
            (14, 5, 14, 1, 1),
            (14, 6, 14, 4, 1),
        ],
    },
];

/// Closure relations between strata as drawn in the stratification diagram:
/// (i, j) means G′ᵢ ≤ G′ⱼ, so Σⱼ lies in the closure of Σᵢ.
pub const CLOSURE_EDGES: [(u32, u32); 14] = [
    (1, 2),
    (1, 11),
    (2, 3),
    (2, 4),
    (3, 5),
    (3, 6),
    (4, 6),
    (4, 7),
    (5, 8),
    (5, 9),
    (6, 8),
    (6, 10),
    (7, 9),
    (7, 10),
];

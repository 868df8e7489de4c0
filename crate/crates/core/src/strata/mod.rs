//! The stratification of H₃ by stabilizer group and the stratified sum
//!
//!   e_c(H₃, V_λ) = Σᵢ e_c(Σᵢ) · dim V_λ^{Gᵢ},
//!
//! with each invariant dimension obtained by averaging the Sp(6) character
//! over the group elements recorded in Yᵢ.

mod data;
mod file;

pub use data::CLOSURE_EDGES;
pub use file::{default_strata_text, parse_strata_file, parse_strata_records, render_strata_file, STRATA_FILE_ENV};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::characters::{character_from_h, complete_homogeneous_upto, max_j_index, Partition, SpectralTriple};
use crate::cyclotomic::{CyclotomicError, RootOfUnity};
use crate::CyclotomicInteger;

pub const STRATUM_COUNT: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("stratum {index}: {source}")]
    Root {
        index: u32,
        #[source]
        source: CyclotomicError,
    },
    #[error("stratum {index}: multiplicity must be at least 1")]
    ZeroMultiplicity { index: u32 },
    #[error("stratum {index}: group order {order} is not 2·#G′ (must be even and positive)")]
    OddOrder { index: u32, order: u32 },
    #[error("stratum {index}: |Y| = {cardinality} but #G/4 = {order}/4")]
    Cardinality { index: u32, cardinality: u32, order: u32 },
    #[error("Table-2 sum: Euler numbers of the strata sum to {sum}, expected 1")]
    EulerSum { sum: i64 },
    #[error("expected strata 1..=11 in order, found index {found} at position {position}")]
    Indexing { position: usize, found: u32 },
    #[error("stratum {index}, λ = {lambda}: invariant dimension {detail}")]
    Inconsistent { index: u32, lambda: Partition, detail: String },
    #[error("strata file: {0}")]
    Parse(String),
}

/// (a, ξ) with multiplicity; stands for the four group elements (±a, ±ξ)
/// each repeated `multiplicity` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpectralPair {
    pub a: RootOfUnity,
    pub xi: RootOfUnity,
    pub multiplicity: u32,
}

impl SpectralPair {
    /// Eigenvalues of the element on H¹:
    /// (a²ξ, a⁻²ξ⁻¹, a⁻²ξ, a²ξ⁻¹, ξ, ξ⁻¹).
    pub fn six_eigenvalues(&self) -> [RootOfUnity; 6] {
        let a2 = self.a.pow(2);
        let a2i = a2.inverse();
        let xi = self.xi;
        let xii = xi.inverse();
        [a2 * xi, a2i * xii, a2i * xi, a2 * xii, xi, xii]
    }

    /// The evaluation point (a²ξ, a⁻²ξ, ξ).
    pub fn triple(&self) -> [RootOfUnity; 3] {
        let a2 = self.a.pow(2);
        [a2 * self.xi, a2.inverse() * self.xi, self.xi]
    }

    /// The four sign variants (±a, ±ξ).
    pub fn sign_variants(&self) -> [SpectralPair; 4] {
        let m = self.multiplicity;
        [
            SpectralPair { a: self.a, xi: self.xi, multiplicity: m },
            SpectralPair { a: -self.a, xi: self.xi, multiplicity: m },
            SpectralPair { a: self.a, xi: -self.xi, multiplicity: m },
            SpectralPair { a: -self.a, xi: -self.xi, multiplicity: m },
        ]
    }
}

impl fmt::Display for SpectralPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.xi)?;
        if self.multiplicity > 1 {
            write!(f, "^{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// One stratum Σᵢ: its stabilizer Gᵢ, Euler number and spectral set Yᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub index: u32,
    pub group_name: String,
    pub group_order: u32,
    pub euler_number: i64,
    pub spectra: Vec<SpectralPair>,
}

impl StratumRecord {
    /// Σ multiplicities, i.e. |Yᵢ|.
    pub fn cardinality(&self) -> u32 {
        self.spectra.iter().map(|p| p.multiplicity).sum()
    }

    /// The SL(2) image G′ from the group label, e.g. "Q_8" for "(Q_8, chi_0)".
    pub fn image_group(&self) -> &str {
        self.group_name
            .trim_start_matches('(')
            .split(',')
            .next()
            .unwrap_or("")
            .trim()
    }

    /// Every group element as a spectral pair, with multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = SpectralPair> + '_ {
        self.spectra.iter().flat_map(|p| p.sign_variants())
    }

    /// Record-level invariants: positive multiplicities, even order,
    /// |Yᵢ| = #Gᵢ/4.
    pub fn validate(&self) -> Result<(), StrataError> {
        let index = self.index;
        if self.spectra.iter().any(|p| p.multiplicity == 0) {
            return Err(StrataError::ZeroMultiplicity { index });
        }
        if self.group_order == 0 || self.group_order % 2 != 0 {
            return Err(StrataError::OddOrder { index, order: self.group_order });
        }
        if 4 * self.cardinality() != self.group_order {
            return Err(StrataError::Cardinality {
                index,
                cardinality: self.cardinality(),
                order: self.group_order,
            });
        }
        Ok(())
    }
}

/// Σᵢ e_c(Σᵢ) must equal e_c(H₃) = 1.
pub fn check_euler_sum(records: &[StratumRecord]) -> Result<(), StrataError> {
    let sum: i64 = records.iter().map(|r| r.euler_number).sum();
    if sum != 1 {
        return Err(StrataError::EulerSum { sum });
    }
    Ok(())
}

/// Exactly eleven strata, indexed 1..=11 in order.
pub fn check_indexing(records: &[StratumRecord]) -> Result<(), StrataError> {
    for (position, r) in records.iter().enumerate() {
        if r.index as usize != position + 1 {
            return Err(StrataError::Indexing { position, found: r.index });
        }
    }
    if records.len() != STRATUM_COUNT {
        return Err(StrataError::Indexing {
            position: records.len(),
            found: 0,
        });
    }
    Ok(())
}

/// All table-level and record-level invariants.
pub fn validate_records(records: &[StratumRecord]) -> Result<(), StrataError> {
    check_indexing(records)?;
    records.iter().try_for_each(StratumRecord::validate)?;
    check_euler_sum(records)
}

fn build_builtin() -> Result<Vec<StratumRecord>, StrataError> {
    let records = data::BUILTIN
        .iter()
        .map(|raw| {
            let spectra = raw
                .spectra
                .iter()
                .map(|&(ao, ae, xo, xe, m)| {
                    let err = |source| StrataError::Root { index: raw.index, source };
                    Ok(SpectralPair {
                        a: RootOfUnity::new(ao, ae).map_err(err)?,
                        xi: RootOfUnity::new(xo, xe).map_err(err)?,
                        multiplicity: m,
                    })
                })
                .collect::<Result<Vec<_>, StrataError>>()?;
            Ok(StratumRecord {
                index: raw.index,
                group_name: raw.name.to_string(),
                group_order: raw.order,
                euler_number: raw.euler,
                spectra,
            })
        })
        .collect::<Result<Vec<_>, StrataError>>()?;
    validate_records(&records)?;
    Ok(records)
}

/// The eleven strata. Panics on first use if the compiled table violates an
/// invariant.
pub fn builtin_strata() -> &'static [StratumRecord] {
    static STRATA: OnceLock<Vec<StratumRecord>> = OnceLock::new();
    STRATA.get_or_init(|| build_builtin().unwrap_or_else(|e| panic!("compiled strata table is corrupt: {e}")))
}

/// Canonical key of a spectral triple up to the Weyl group of C₃:
/// each xᵢ may be inverted and the three permuted.
fn weyl_key(triple: &[RootOfUnity; 3]) -> [u32; 3] {
    let mut key = triple.map(|r| {
        let m = r.exponent_336();
        m.min((336 - m) % 336)
    });
    key.sort_unstable();
    key
}

/// Evaluates characters at stabilizer elements, memoizing h-sequences per
/// Weyl orbit of triples, characters per (λ, orbit) and invariant
/// dimensions per (stratum, λ). Safe to share between threads.
#[derive(Default)]
pub struct StrataEvaluator {
    h_cache: Mutex<HashMap<[u32; 3], Vec<CyclotomicInteger>>>,
    chi_cache: Mutex<HashMap<(Partition, [u32; 3]), CyclotomicInteger>>,
    dim_cache: Mutex<HashMap<(u32, Partition), u64>>,
}

impl StrataEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    fn h_sequence(&self, triple: &[RootOfUnity; 3], len: usize) -> Vec<CyclotomicInteger> {
        let key = weyl_key(triple);
        if let Some(h) = self.h_cache.lock().expect("cache").get(&key) {
            if h.len() >= len {
                return h[..len].to_vec();
            }
        }
        let t = SpectralTriple::new(triple.map(|r| r.embed()), triple.map(|r| r.inverse().embed()))
            .expect("roots of unity are invertible");
        // compute a little beyond the request so neighbouring λ reuse it
        let h = complete_homogeneous_upto(len.max(12) - 1, &t.six_values());
        self.h_cache.lock().expect("cache").insert(key, h.clone());
        h[..len].to_vec()
    }

    /// χ_λ(a²ξ, a⁻²ξ, ξ) in Z[ζ₃₃₆].
    pub fn character(&self, lambda: &Partition, pair: &SpectralPair) -> CyclotomicInteger {
        let triple = pair.triple();
        let key = (*lambda, weyl_key(&triple));
        if let Some(v) = self.chi_cache.lock().expect("cache").get(&key) {
            return v.clone();
        }
        let h = self.h_sequence(&triple, max_j_index(lambda) + 1);
        let v = character_from_h(lambda, &h);
        self.chi_cache.lock().expect("cache").insert(key, v.clone());
        v
    }

    /// dim V_λ^{G} = (1/#G) Σ_{g∈G} χ_λ(g).
    pub fn dim_invariants(&self, record: &StratumRecord, lambda: &Partition) -> Result<u64, StrataError> {
        let key = (record.index, *lambda);
        if let Some(&d) = self.dim_cache.lock().expect("cache").get(&key) {
            return Ok(d);
        }
        let d = self.compute_dim(record, lambda)?;
        self.dim_cache.lock().expect("cache").insert(key, d);
        Ok(d)
    }

    fn compute_dim(&self, record: &StratumRecord, lambda: &Partition) -> Result<u64, StrataError> {
        let inconsistent = |detail: String| StrataError::Inconsistent {
            index: record.index,
            lambda: *lambda,
            detail,
        };
        if lambda.weight() % 2 == 1 {
            // −1 ∈ Gᵢ acts by (−1)^{|λ|}; the sum below would vanish anyway
            return Ok(0);
        }
        let mut total = CyclotomicInteger::zero();
        for g in record.expanded() {
            total = total + self.character(lambda, &g).scale_i64(g.multiplicity as i64);
        }
        let sum = total
            .as_rational()
            .ok_or_else(|| inconsistent(format!("character sum is not rational: {total:?}")))?;
        let order = record.group_order as i128;
        if sum % order != 0 {
            return Err(inconsistent(format!("{sum}/{order} is not an integer")));
        }
        let dim = sum / order;
        u64::try_from(dim).map_err(|_| inconsistent(format!("{dim} is negative")))
    }

    /// Σᵢ e_c(Σᵢ)·dim V_λ^{Gᵢ} over the given strata.
    pub fn euler_characteristic_with(&self, records: &[StratumRecord], lambda: &Partition) -> Result<i64, StrataError> {
        records.iter().try_fold(0i64, |acc, r| {
            Ok(acc + r.euler_number * self.dim_invariants(r, lambda)? as i64)
        })
    }

    pub fn euler_characteristic(&self, lambda: &Partition) -> Result<i64, StrataError> {
        self.euler_characteristic_with(builtin_strata(), lambda)
    }
}

use crate::scalar::Ring as _;

fn shared_evaluator() -> &'static StrataEvaluator {
    static EVALUATOR: OnceLock<StrataEvaluator> = OnceLock::new();
    EVALUATOR.get_or_init(StrataEvaluator::new)
}

/// dim V_λ^{G} for one stratum, through a process-wide memo.
pub fn dim_invariants(record: &StratumRecord, lambda: &Partition) -> Result<u64, StrataError> {
    if builtin_strata().get(record.index as usize - 1) == Some(record) {
        shared_evaluator().dim_invariants(record, lambda)
    } else {
        StrataEvaluator::new().dim_invariants(record, lambda)
    }
}

/// e_c(H₃, V_λ).
pub fn euler_characteristic(lambda: &Partition) -> Result<i64, StrataError> {
    shared_evaluator().euler_characteristic(lambda)
}

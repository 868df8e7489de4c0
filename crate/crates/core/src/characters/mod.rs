//! Sp(6) characters through complete homogeneous symmetric functions.
//!
//! Everything is generic over [`Ring`], so the same code evaluates characters
//! at roots of unity in Q(ζ₃₃₆) and at rescaled Frobenius eigenvalues in
//! Q(√q).

mod oracle;
mod partition;

pub use oracle::{weyl_character_oracle, LaurentPolynomial, WeylCharacter};
pub use partition::{Partition, PartitionError};

use thiserror::Error;

use crate::scalar::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("spectral value {index} is not invertible with the supplied inverse")]
    NotInvertible { index: usize },
    #[error("alternant denominator vanishes at this point; perturb the evaluation point")]
    DegeneratePoint,
    #[error("exact division by {0} failed in the coefficient ring")]
    InexactDivision(i64),
    #[error("alternant quotient is not exact")]
    NonExactQuotient,
}

/// Three spectral values x₁, x₂, x₃ together with their inverses. The six
/// numbers x₁^{±1}, x₂^{±1}, x₃^{±1} are the eigenvalues of a symplectic
/// element.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTriple<T> {
    values: [T; 3],
    inverses: [T; 3],
}

impl<T: Ring> SpectralTriple<T> {
    /// Pairs each value with a supplied inverse, checking xᵢ·xᵢ⁻¹ = 1.
    pub fn new(values: [T; 3], inverses: [T; 3]) -> Result<Self, CharacterError> {
        for (index, (x, y)) in values.iter().zip(&inverses).enumerate() {
            if !(x.clone() * y.clone()).is_one() {
                return Err(CharacterError::NotInvertible { index });
            }
        }
        Ok(Self { values, inverses })
    }

    /// Builds a triple with an inversion rule, failing if the rule does.
    pub fn with_inverse(
        values: [T; 3],
        invert: impl Fn(&T) -> Option<T>,
    ) -> Result<Self, CharacterError> {
        let mut inverses = Vec::with_capacity(3);
        for (index, x) in values.iter().enumerate() {
            inverses.push(invert(x).ok_or(CharacterError::NotInvertible { index })?);
        }
        let inverses: [T; 3] = inverses.try_into().expect("three inverses");
        Self::new(values, inverses)
    }

    pub fn values(&self) -> &[T; 3] {
        &self.values
    }

    pub fn inverses(&self) -> &[T; 3] {
        &self.inverses
    }

    /// (x₁, x₁⁻¹, x₂, x₂⁻¹, x₃, x₃⁻¹).
    pub fn six_values(&self) -> [T; 6] {
        let [a, b, c] = self.values.clone();
        let [ai, bi, ci] = self.inverses.clone();
        [a, ai, b, bi, c, ci]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SpectralTriple<U> {
        SpectralTriple {
            values: [f(&self.values[0]), f(&self.values[1]), f(&self.values[2])],
            inverses: [
                f(&self.inverses[0]),
                f(&self.inverses[1]),
                f(&self.inverses[2]),
            ],
        }
    }
}

/// h₀, …, h_max of the given values, by multiplying out Π 1/(1 − vᵢt)
/// truncated at degree `max`.
pub fn complete_homogeneous_upto<T: Ring>(max: usize, values: &[T]) -> Vec<T> {
    let mut h = vec![T::zero(); max + 1];
    h[0] = T::one();
    for v in values {
        for d in 1..=max {
            h[d] = h[d].clone() + v.clone() * h[d - 1].clone();
        }
    }
    h
}

/// h_d of the values; zero for d < 0.
pub fn complete_homogeneous<T: Ring>(d: i64, values: &[T]) -> T {
    if d < 0 {
        return T::zero();
    }
    complete_homogeneous_upto(d as usize, values).pop().expect("h_d")
}

/// J_d(x₁, x₂, x₃) = h_d(x₁, x₁⁻¹, x₂, x₂⁻¹, x₃, x₃⁻¹).
pub fn j_value<T: Ring>(d: i64, t: &SpectralTriple<T>) -> T {
    complete_homogeneous(d, &t.six_values())
}

/// Largest J-index the determinant for `lambda` touches.
pub fn max_j_index(lambda: &Partition) -> usize {
    lambda.parts()[0] as usize + 2
}

/// Entry (row, col), 0-based, of the symplectic Jacobi–Trudi matrix: the
/// first column is J_{λᵢ−i+1}, column j ≥ 2 is J_{λᵢ−i+j} + J_{λᵢ−i−j+2}
/// (1-based i, j).
///
/// The published row repeats J_{λᵢ−i+2} in its first slot; that version
/// disagrees with the Weyl character formula (see the tests), this one does
/// not.
fn determinant_entry<T: Ring>(lambda: &Partition, row: usize, col: usize, j: &impl Fn(i64) -> T) -> T {
    let li = lambda.parts()[row] as i64;
    let (i, c) = (row as i64 + 1, col as i64 + 1);
    if c == 1 {
        j(li - i + 1)
    } else {
        j(li - i + c) + j(li - i - c + 2)
    }
}

fn det3<T: Ring>(m: &[[T; 3]; 3]) -> T {
    let minor = |a: usize, b: usize| {
        m[1][a].clone() * m[2][b].clone() - m[1][b].clone() * m[2][a].clone()
    };
    m[0][0].clone() * minor(1, 2) - m[0][1].clone() * minor(0, 2) + m[0][2].clone() * minor(0, 1)
}

/// The Sp(6) character of V_λ given the sequence h₀, h₁, … of the six
/// eigenvalues. `h` must reach index λ₁ + 2.
pub fn character_from_h<T: Ring>(lambda: &Partition, h: &[T]) -> T {
    assert!(
        h.len() > max_j_index(lambda),
        "need h_0..h_{} for {lambda}",
        max_j_index(lambda)
    );
    let j = |d: i64| {
        if d < 0 {
            T::zero()
        } else {
            h[d as usize].clone()
        }
    };
    let m: [[T; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| determinant_entry(lambda, r, c, &j)));
    det3(&m)
}

/// Character of the irreducible Sp(6)-module V_λ at a symplectic element
/// with eigenvalues x₁^{±1}, x₂^{±1}, x₃^{±1}.
pub fn symplectic_character<T: Ring>(lambda: &Partition, t: &SpectralTriple<T>) -> T {
    let h = complete_homogeneous_upto(max_j_index(lambda), &t.six_values());
    character_from_h(lambda, &h)
}

/// dim V_λ by the type C₃ Weyl dimension formula.
pub fn weyl_dimension(lambda: &Partition) -> u128 {
    let rho = [3i128, 2, 1];
    let l: Vec<i128> = lambda
        .parts()
        .iter()
        .zip(rho)
        .map(|(&p, r)| p as i128 + r)
        .collect();
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..3 {
        num *= l[i];
        den *= rho[i];
        for j in i + 1..3 {
            num *= (l[i] - l[j]) * (l[i] + l[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
    }
    assert_eq!(num % den, 0);
    (num / den) as u128
}

/// h₀..h_d from power sums s₁..s_d by Newton's identity
/// d·h_d = Σ_{i=1..d} s_i·h_{d−i}.
pub fn h_from_power_sums<T: Ring>(s: &[T]) -> Result<Vec<T>, CharacterError> {
    let mut h = Vec::with_capacity(s.len() + 1);
    h.push(T::one());
    for d in 1..=s.len() {
        let acc = (1..=d).fold(T::zero(), |acc, i| acc + s[i - 1].clone() * h[d - i].clone());
        h.push(
            acc.div_exact_i64(d as i64)
                .ok_or(CharacterError::InexactDivision(d as i64))?,
        );
    }
    Ok(h)
}

//! Weyl character formula for type C₃, used as an independent check on the
//! determinant formula.
//!
//! The character of V_λ is the alternant quotient
//!
//!   det(x_j^{l_i} − x_j^{−l_i}) / det(x_j^{ρ_i} − x_j^{−ρ_i}),
//!   l = λ + ρ, ρ = (3, 2, 1),
//!
//! computed here as an exact quotient of Laurent polynomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CharacterError, Partition, SpectralTriple};
use crate::scalar::{pow, Ring};

type Exponent = [i32; 3];

/// Sparse Laurent polynomial in x₁, x₂, x₃ with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn monomial(exp: Exponent, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::default();
        p.add_term(exp, coeff.into());
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by x^shift.
    fn shifted(&self, shift: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]], c.clone()))
                .collect(),
        }
    }

    /// Smallest exponent of each variable.
    fn min_exponents(&self) -> Exponent {
        let mut m = [i32::MAX; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                m[v] = m[v].min(e[v]);
            }
        }
        m
    }

    /// Exact quotient self / divisor. Both are first multiplied by monomials
    /// making them honest polynomials; the polynomial division then runs
    /// with the lexicographic order on exponents.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, CharacterError> {
        if divisor.is_empty() {
            return Err(CharacterError::NonExactQuotient);
        }
        if self.is_empty() {
            return Ok(Self::default());
        }
        let sn = self.min_exponents().map(|m| -m);
        let sd = divisor.min_exponents().map(|m| -m);
        let mut rem = self.shifted(sn);
        let den = divisor.shifted(sd);
        let (lead_exp, lead_coeff) = den.terms.iter().next_back().map(|(e, c)| (*e, c.clone())).expect("nonempty");
        let mut quot = Self::default();
        while let Some((exp, coeff)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let q_exp = [exp[0] - lead_exp[0], exp[1] - lead_exp[1], exp[2] - lead_exp[2]];
            if q_exp.iter().any(|&e| e < 0) {
                return Err(CharacterError::NonExactQuotient);
            }
            let (q_coeff, r) = coeff.div_rem(&lead_coeff);
            if !r.is_zero() {
                return Err(CharacterError::NonExactQuotient);
            }
            for (e, c) in &den.terms {
                rem.add_term([e[0] + q_exp[0], e[1] + q_exp[1], e[2] + q_exp[2]], -(c * &q_coeff));
            }
            quot.add_term(q_exp, q_coeff);
        }
        // undo the monomial shifts: quotient · x^{sd − sn}
        Ok(quot.shifted([sd[0] - sn[0], sd[1] - sn[1], sd[2] - sn[2]]))
    }

    /// Evaluates at a spectral triple, using the supplied inverses for
    /// negative exponents.
    pub fn eval<T: Ring>(&self, t: &SpectralTriple<T>) -> T {
        let powers = |v: usize, e: i32| -> T {
            if e >= 0 {
                pow(&t.values()[v], e as u32)
            } else {
                pow(&t.inverses()[v], e.unsigned_abs())
            }
        };
        let mut cache: BTreeMap<(usize, i32), T> = BTreeMap::new();
        let mut total = T::zero();
        for (e, c) in &self.terms {
            let mut term = T::from_i64(c.to_i64().expect("oracle coefficient fits in i64"));
            for (v, &ev) in e.iter().enumerate() {
                let pw = cache.entry((v, ev)).or_insert_with(|| powers(v, ev)).clone();
                term = term * pw;
            }
            total = total + term;
        }
        total
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

const PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([0, 2, 1], -1),
    ([1, 0, 2], -1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([2, 1, 0], -1),
];

/// det(x_j^{l_i} − x_j^{−l_i}).
fn alternant(l: [i32; 3]) -> LaurentPolynomial {
    let entry = |var: usize, e: i32| {
        let mut pos = [0; 3];
        let mut neg = [0; 3];
        pos[var] = e;
        neg[var] = -e;
        &LaurentPolynomial::monomial(pos, 1) + &LaurentPolynomial::monomial(neg, -1)
    };
    let mut det = LaurentPolynomial::default();
    for (perm, sign) in PERMUTATIONS {
        let mut term = LaurentPolynomial::monomial([0, 0, 0], sign);
        for (row, &var) in perm.iter().enumerate() {
            term = &term * &entry(var, l[row]);
        }
        det = &det + &term;
    }
    det
}

const RHO: [i32; 3] = [3, 2, 1];

/// The character of V_λ as an explicit Laurent polynomial.
#[derive(Clone, Debug)]
pub struct WeylCharacter {
    lambda: Partition,
    polynomial: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl WeylCharacter {
    pub fn new(lambda: &Partition) -> Result<Self, CharacterError> {
        let p = lambda.parts();
        let l = [p[0] as i32 + RHO[0], p[1] as i32 + RHO[1], p[2] as i32 + RHO[2]];
        let denominator = alternant(RHO);
        let polynomial = alternant(l).exact_div(&denominator)?;
        Ok(Self {
            lambda: *lambda,
            polynomial,
            denominator,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn polynomial(&self) -> &LaurentPolynomial {
        &self.polynomial
    }

    /// Evaluates the quotient, refusing points where the Weyl denominator
    /// vanishes.
    pub fn eval<T: Ring>(&self, t: &SpectralTriple<T>) -> Result<T, CharacterError> {
        if self.denominator.eval(t).is_zero() {
            return Err(CharacterError::DegeneratePoint);
        }
        Ok(self.polynomial.eval(t))
    }
}

/// Weyl character formula for Sp(6) at a non-degenerate triple.
pub fn weyl_character_oracle<T: Ring>(
    lambda: &Partition,
    t: &SpectralTriple<T>,
) -> Result<T, CharacterError> {
    WeylCharacter::new(lambda)?.eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::weyl_dimension;

    #[test]
    fn division_round_trip() {
        let a = alternant([4, 2, 1]);
        let b = alternant([3, 2, 1]);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert_eq!(b.exact_div(&a), Err(CharacterError::NonExactQuotient));
    }

    #[test]
    fn quotient_coefficients_sum_to_dimension() {
        for w in 0..=6 {
            for lambda in Partition::of_weight(w) {
                let chi = WeylCharacter::new(&lambda).unwrap();
                let total: BigInt = chi.polynomial().terms().map(|(_, c)| c.clone()).sum();
                assert_eq!(total, BigInt::from(weyl_dimension(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn standard_representation_polynomial() {
        let chi = WeylCharacter::new(&Partition::new(1, 0, 0).unwrap()).unwrap();
        assert_eq!(chi.polynomial().len(), 6);
        for (e, c) in chi.polynomial().terms() {
            assert_eq!(c, &BigInt::from(1));
            assert_eq!(e.iter().map(|x| x.abs()).sum::<i32>(), 1);
        }
    }
}

//! Frobenius data of a genus-3 curve and traces on V_λ(H¹).
//!
//! The six Frobenius eigenvalues αᵢ pair as α·(q/α) = q. Dividing by √q
//! turns them into a symplectic spectrum βᵢ^{±1}, and
//!
//!   Tr(F, V_λ(H¹)) = q^{|λ|/2} · χ_λ(β).
//!
//! The βᵢ are never computed. Their power sums live in Q(√q), which
//! [`QuadExt`] models exactly; the h-sequence follows from Newton's
//! identities and feeds the determinant formula directly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::FfError;
use crate::characters::{character_from_h, h_from_power_sums, max_j_index, Partition};
use crate::scalar::Ring;
use crate::Rational;

/// a + b·√D over a coefficient ring `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<T, const D: u64> {
    pub a: T,
    pub b: T,
}

impl<T: Ring, const D: u64> QuadExt<T, D> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn rational(a: T) -> Self {
        Self { a, b: T::zero() }
    }

    /// √D.
    pub fn sqrt() -> Self {
        Self { a: T::zero(), b: T::one() }
    }

    pub fn as_rational(&self) -> Option<&T> {
        self.b.is_zero().then_some(&self.a)
    }

    /// a − b√D.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// a² − D·b².
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * T::from_i64(D as i64)
    }
}

impl<const D: u64> QuadExt<Rational, D> {
    /// Inverse through the norm; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self { a: c.a / n.clone(), b: c.b / n })
    }
}

impl<T: Ring, const D: u64> Zero for QuadExt<T, D> {
    fn zero() -> Self {
        Self::rational(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Ring, const D: u64> One for QuadExt<T, D> {
    fn one() -> Self {
        Self::rational(T::one())
    }
}

impl<T: Ring, const D: u64> Add for QuadExt<T, D> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<T: Ring, const D: u64> Sub for QuadExt<T, D> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<T: Ring, const D: u64> Neg for QuadExt<T, D> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl<T: Ring, const D: u64> Mul for QuadExt<T, D> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let d = T::from_i64(D as i64);
        Self {
            a: self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * d,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<T: Ring, const D: u64> Ring for QuadExt<T, D> {
    fn from_i64(n: i64) -> Self {
        Self::rational(T::from_i64(n))
    }

    fn div_exact_i64(&self, n: i64) -> Option<Self> {
        Some(Self {
            a: self.a.div_exact_i64(n)?,
            b: self.b.div_exact_i64(n)?,
        })
    }
}

impl<T: Ring, const D: u64> fmt::Debug for QuadExt<T, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}*sqrt({D})", self.a, self.b)
    }
}

/// Power sums and Weil polynomial of one curve over F_q.
///
/// s_k = q^k + 1 − #C(F_{q^k}) = Σ αᵢ^k; `weil_e` are the elementary
/// symmetric functions e₁..e₆ of the αᵢ, so the characteristic polynomial
/// of Frobenius on H¹ is X⁶ − e₁X⁵ + e₂X⁴ − … + e₆.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusData {
    pub q: u64,
    pub s: [i64; 3],
    pub weil_e: [i64; 6],
}

impl FrobeniusData {
    /// Power sums s₁..s_n of the eigenvalues from the Weil polynomial.
    pub fn power_sums(&self, n: usize) -> Vec<i64> {
        let mut s: Vec<i64> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut acc = 0i64;
            for j in 1..=k.min(6) {
                let sign = if j % 2 == 1 { 1 } else { -1 };
                let term = if j == k { k as i64 * self.weil_e[j - 1] } else { self.weil_e[j - 1] * s[k - j - 1] };
                acc += sign * term;
            }
            s.push(acc);
        }
        s
    }
}

/// |s| ≤ 6·q^{k/2}, compared as s² ≤ 36·q^k.
pub fn within_weil_bound(s: i64, q: u64, k: u32) -> bool {
    (s as i128) * (s as i128) <= 36 * (q as i128).pow(k)
}

/// Reconstructs e₁..e₆ from s₁, s₂, s₃ with the functional equation
/// e₄ = q·e₂, e₅ = q²·e₁, e₆ = q³.
pub fn weil_polynomial(s1: i64, s2: i64, s3: i64, q: u64) -> Result<FrobeniusData, FfError> {
    let s = [s1, s2, s3];
    for (k, &sk) in s.iter().enumerate() {
        if !within_weil_bound(sk, q, k as u32 + 1) {
            return Err(FfError::WeilBound { k: k as u32 + 1, s: sk, q });
        }
    }
    let exact = |num: i64, den: i64| {
        if num % den == 0 {
            Ok(num / den)
        } else {
            Err(FfError::NonIntegralWeil { s, q })
        }
    };
    let qi = q as i64;
    let e1 = s1;
    let e2 = exact(e1 * s1 - s2, 2)?;
    let e3 = exact(e2 * s1 - e1 * s2 + s3, 3)?;
    Ok(FrobeniusData {
        q,
        s,
        weil_e: [e1, e2, e3, qi * e2, qi * qi * e1, qi * qi * qi],
    })
}

/// n / q^{j/2} in Q(√q).
fn rescale<const Q: u64>(n: i64, j: u32) -> QuadExt<Rational, Q> {
    let q = BigInt::from(Q);
    if j % 2 == 0 {
        QuadExt::rational(Rational::new(BigInt::from(n), q.pow(j / 2)))
    } else {
        // n / (q^{(j-1)/2} √q) = n √q / q^{(j+1)/2}
        QuadExt::new(Rational::zero(), Rational::new(BigInt::from(n), q.pow((j + 1) / 2)))
    }
}

/// Rescaled power sums σ_k = s_k / q^{k/2} for k = 1..=n: the first three
/// from the counts, the rest by Newton's recurrence on the rescaled Weil
/// polynomial, whose coefficients are e_j / q^{j/2}.
pub fn rescaled_power_sums<const Q: u64>(data: &FrobeniusData, n: usize) -> Vec<QuadExt<Rational, Q>> {
    let e: Vec<QuadExt<Rational, Q>> = (0..6).map(|j| rescale::<Q>(data.weil_e[j], j as u32 + 1)).collect();
    let mut sigma: Vec<QuadExt<Rational, Q>> = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= 3 {
            sigma.push(rescale::<Q>(data.s[k - 1], k as u32));
            continue;
        }
        let mut acc = QuadExt::zero();
        for j in 1..=k.min(6) {
            let term = if j == k {
                e[j - 1].scale_i64(k as i64)
            } else {
                e[j - 1].clone() * sigma[k - j - 1].clone()
            };
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        sigma.push(acc);
    }
    sigma
}

fn trace_with<const Q: u64>(data: &FrobeniusData, lambda: &Partition) -> Result<BigInt, FfError> {
    let inconsistent = |detail: String| FfError::Inconsistent {
        lambda: *lambda,
        s: data.s,
        detail,
    };
    let top = max_j_index(lambda);
    let sigma = rescaled_power_sums::<Q>(data, top);
    let h = h_from_power_sums(&sigma).map_err(|e| inconsistent(e.to_string()))?;
    let chi = character_from_h(lambda, &h);
    let twisted = chi * QuadExt::rational(Rational::from_integer(BigInt::from(Q).pow(lambda.weight() / 2)));
    let value = twisted
        .as_rational()
        .ok_or_else(|| inconsistent(format!("trace {twisted:?} is not rational")))?;
    if !value.is_integer() {
        return Err(inconsistent(format!("trace {value} is not an integer")));
    }
    Ok(value.to_integer())
}

macro_rules! dispatch_q {
    ($q:expr, $data:expr, $lambda:expr, $($p:literal)*) => {
        match $q {
            $($p => trace_with::<$p>($data, $lambda),)*
            other => Err(FfError::UnsupportedCharacteristic(other as u32)),
        }
    };
}

/// Tr(F, V_λ(H¹)) = q^{|λ|/2} χ_λ(α/√q). Odd weight gives 0.
pub fn frobenius_trace(data: &FrobeniusData, lambda: &Partition) -> Result<BigInt, FfError> {
    if lambda.weight() % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if lambda.weight() == 0 {
        return Ok(BigInt::one());
    }
    dispatch_q!(data.q, data, lambda, 3 5 7 11 13 17 19 23 29 31)
}

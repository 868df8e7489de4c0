//! Integer polynomials in the Lefschetz class L.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::Partition;

/// Σ c_k L^k with finitely many nonzero c_k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MotivicPolynomial {
    coefficients: BTreeMap<u32, i64>,
}

impl MotivicPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: &[(u32, i64)]) -> Self {
        let mut coefficients = BTreeMap::new();
        for &(k, c) in terms {
            *coefficients.entry(k).or_insert(0) += c;
        }
        coefficients.retain(|_, c| *c != 0);
        Self { coefficients }
    }

    pub fn coefficient(&self, k: u32) -> i64 {
        self.coefficients.get(&k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coefficients.iter().map(|(&k, &c)| (k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn eval(&self, l: i64) -> BigInt {
        let l = BigInt::from(l);
        self.coefficients
            .iter()
            .fold(BigInt::zero(), |acc, (&k, &c)| acc + BigInt::from(c) * num_traits::pow(l.clone(), k as usize))
    }
}

impl fmt::Display for MotivicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.coefficients.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "L")?,
                _ => write!(f, "L^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial in L: {0:?}")]
pub struct ParseMotivicError(String);

impl FromStr for MotivicPolynomial {
    type Err = ParseMotivicError;

    /// Accepts sums like "-L^6 + L^2 - 1", "3*L^2", "2L", "0".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMotivicError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(err()),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, power) = match term.find('L') {
                None => (term, None),
                Some(i) => match term[..i].strip_suffix('*') {
                    Some("") => return Err(err()),
                    Some(c) => (c, Some(&term[i + 1..])),
                    None => (&term[..i], Some(&term[i + 1..])),
                },
            };
            let c: i64 = if coef.is_empty() {
                if power.is_none() {
                    return Err(err());
                }
                1
            } else {
                coef.parse().map_err(|_| err())?
            };
            let k: u32 = match power {
                None => 0,
                Some("") => 1,
                Some(p) => p.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?,
            };
            terms.push((k, sign * c));
        }
        Ok(Self::from_terms(&terms))
    }
}

impl One for MotivicPolynomial {
    fn one() -> Self {
        Self::from_terms(&[(0, 1)])
    }
}

impl std::ops::Mul for MotivicPolynomial {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut terms = Vec::new();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                terms.push((a + b, x * y));
            }
        }
        Self::from_terms(&terms)
    }
}

/// The conjectured motivic Euler characteristics for small λ.
pub fn table5() -> BTreeMap<Partition, MotivicPolynomial> {
    let rows: [((u32, u32, u32), &[(u32, i64)]); 7] = [
        ((0, 0, 0), &[(5, 1)]),
        ((2, 0, 0), &[(0, -1)]),
        ((1, 1, 0), &[]),
        ((4, 0, 0), &[(2, 1), (0, -2)]),
        ((3, 1, 0), &[(2, 1), (0, -1)]),
        ((2, 2, 0), &[(6, -1), (2, 1), (0, -1)]),
        ((2, 1, 1), &[(5, 1), (4, -1), (3, -1), (2, 1)]),
    ];
    rows.into_iter()
        .map(|((a, b, c), t)| (Partition::new(a, b, c).expect("table row"), MotivicPolynomial::from_terms(t)))
        .collect()
}

/// Parses rows "a,b,c: polynomial", one per line; blank lines and lines
/// starting with '#' are skipped.
pub fn parse_table5(text: &str) -> Result<BTreeMap<Partition, MotivicPolynomial>, String> {
    let mut rows = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lambda, poly) = line.split_once(':').ok_or_else(|| format!("line {}: missing ':'", n + 1))?;
        let lambda: Partition = lambda.trim().parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        let poly: MotivicPolynomial = poly.parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        if rows.insert(lambda, poly).is_some() {
            return Err(format!("line {}: duplicate row {lambda}", n + 1));
        }
    }
    Ok(rows)
}

/// The inverse of [`parse_table5`].
pub fn render_table5(rows: &BTreeMap<Partition, MotivicPolynomial>) -> String {
    let mut out = String::new();
    for (lambda, poly) in rows {
        let [a, b, c] = lambda.parts();
        out.push_str(&format!("{a},{b},{c}: {poly}\n"));
    }
    out
}

//! Genus-3 hyperelliptic curves y² = f(x) over a prime field F_p, p odd.

use std::fmt;

use super::field::{Elem, FiniteField};
use super::FfError;

/// f(X) = Σ cᵢXⁱ over F_p with deg f ∈ {7, 8} and f squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveEquation {
    p: u32,
    coeffs: [u8; 9],
    degree: u8,
}

impl CurveEquation {
    pub fn new(p: u32, coeffs: [u8; 9]) -> Result<Self, FfError> {
        if coeffs.iter().any(|&c| c as u32 >= p) {
            return Err(FfError::InvalidCurve(format!("coefficient out of range for p = {p}")));
        }
        let degree = match (coeffs[8], coeffs[7]) {
            (0, 0) => return Err(FfError::InvalidCurve("degree below 7".into())),
            (0, _) => 7,
            _ => 8,
        };
        if !is_squarefree(p, &coeffs[..=degree as usize]) {
            return Err(FfError::InvalidCurve(format!("f = {} is not squarefree", Poly(&coeffs))));
        }
        Ok(Self { p, coeffs, degree })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coefficients(&self) -> &[u8; 9] {
        &self.coeffs
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn leading_coefficient(&self) -> u8 {
        self.coeffs[self.degree as usize]
    }

    /// f(x) in an extension of F_p, by Horner.
    pub fn eval(&self, field: &FiniteField, x: Elem) -> Elem {
        self.coeffs[..=self.degree as usize]
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c as Elem))
    }
}

struct Poly<'a>(&'a [u8]);

impl fmt::Display for Poly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{c}X^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for CurveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {} over F_{}", Poly(&self.coeffs), self.p)
    }
}

// --- polynomial arithmetic over F_p ------------------------------------------

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// a mod b for b ≠ 0.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                a[idx] = (a[idx] + p * p - c * bi % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// gcd(f, f′) is a nonzero constant.
pub fn is_squarefree(p: u32, coeffs: &[u8]) -> bool {
    let f = trim(coeffs.iter().map(|&c| c as u32).collect());
    if f.len() <= 1 {
        return !f.is_empty();
    }
    let df = trim((1..f.len()).map(|i| (i as u32 % p) * f[i] % p).collect());
    if df.is_empty() {
        return false;
    }
    let (mut a, mut b) = (f, df);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Every squarefree f over F_p of degree exactly 7 or 8, each once: degree 7
/// first, then 8; within a degree ordered by the coefficient vector read as
/// a base-p number (c₀ least significant).
pub fn enumerate_curves(p: u32) -> impl Iterator<Item = CurveEquation> {
    [7u32, 8].into_iter().flat_map(move |deg| {
        let low = (p as u64).pow(deg);
        (1..p as u64).flat_map(move |lc| {
            (0..low).filter_map(move |n| {
                let mut coeffs = [0u8; 9];
                let mut m = n;
                for c in coeffs.iter_mut().take(deg as usize) {
                    *c = (m % p as u64) as u8;
                    m /= p as u64;
                }
                coeffs[deg as usize] = lc as u8;
                CurveEquation::new(p, coeffs).ok()
            })
        })
    })
}

/// Points at infinity on the smooth model: one for degree 7, 1 + χ(c₈) for
/// degree 8.
pub fn points_at_infinity(f: &CurveEquation, field: &FiniteField) -> i64 {
    if f.degree() == 7 {
        1
    } else {
        1 + field.chi(f.leading_coefficient() as Elem) as i64
    }
}

/// #C(F_{p^k}) where `field` is F_{p^k}.
pub fn point_count(f: &CurveEquation, field: &FiniteField) -> Result<u64, FfError> {
    if field.spec().p() != f.p() {
        return Err(FfError::FieldMismatch { curve: f.p(), field: field.spec().p() });
    }
    let affine: i64 = field.elements().map(|x| 1 + field.chi(f.eval(field, x)) as i64).sum();
    Ok((affine + points_at_infinity(f, field)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u32, terms: &[(usize, u8)]) -> CurveEquation {
        let mut c = [0u8; 9];
        for &(i, v) in terms {
            c[i] = v;
        }
        CurveEquation::new(p, c).unwrap()
    }

    /// Number of squarefree polynomials of degree 7 or 8, by brute force over
    /// the raw coefficient space, independent of the enumerator.
    fn brute_force_count(p: u32) -> u64 {
        let mut n = 0;
        for deg in [7usize, 8] {
            for code in 0..(p as u64).pow(deg as u32 + 1) {
                let coeffs: Vec<u8> = (0..=deg).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u8).collect();
                if coeffs[deg] != 0 && is_squarefree(p, &coeffs) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn squarefree_count_q3() {
        let n = enumerate_curves(3).count() as u64;
        assert_eq!(n, 11664);
        assert_eq!(n, 2 * (3u64.pow(8) - 3u64.pow(6)));
        assert_eq!(brute_force_count(3), n);
    }

    #[test]
    fn rejects_x7_plus_x_over_f3() {
        let mut c = [0u8; 9];
        c[7] = 1;
        c[1] = 1;
        assert!(!is_squarefree(3, &c[..8]));
        assert!(matches!(CurveEquation::new(3, c), Err(FfError::InvalidCurve(_))));
    }

    #[test]
    fn squarefree_small_cases() {
        assert!(is_squarefree(5, &[1, 0, 1])); // x² + 1 = (x−2)(x+2)
        assert!(is_squarefree(5, &[4, 2, 1])); // discriminant 3 ≠ 0
        assert!(!is_squarefree(5, &[1, 2, 1])); // (x+1)²
        assert!(!is_squarefree(3, &[1, 2, 1])); // (x+1)²
        assert!(!is_squarefree(3, &[0, 0, 0, 1])); // x³, derivative vanishes
        assert!(is_squarefree(3, &[1]));
    }

    #[test]
    fn point_count_example() {
        let f3 = FiniteField::standard(3, 1).unwrap();
        // X⁷ − 1
        let f = curve(3, &[(7, 1), (0, 2)]);
        assert_eq!(point_count(&f, &f3).unwrap(), 4);
    }

    #[test]
    fn infinity_rules() {
        let f3 = FiniteField::standard(3, 1).unwrap();
        let f9 = FiniteField::standard(3, 2).unwrap();
        let square_lc = curve(3, &[(8, 1), (0, 1)]);
        let nonsquare_lc = curve(3, &[(8, 2), (0, 1)]);
        assert_eq!(points_at_infinity(&square_lc, &f3), 2);
        assert_eq!(points_at_infinity(&nonsquare_lc, &f3), 0);
        // 2 is a square in F_9
        assert_eq!(points_at_infinity(&nonsquare_lc, &f9), 2);
        let deg7 = curve(3, &[(7, 1), (0, 2)]);
        assert_eq!(points_at_infinity(&deg7, &f9), 1);
    }

    #[test]
    fn point_count_bounds_q3() {
        let f3 = FiniteField::standard(3, 1).unwrap();
        for f in enumerate_curves(3) {
            assert!(point_count(&f, &f3).unwrap() <= 8);
        }
    }

    #[test]
    fn field_mismatch() {
        let f5 = FiniteField::standard(5, 1).unwrap();
        let f = curve(3, &[(7, 1), (0, 2)]);
        assert!(matches!(point_count(&f, &f5), Err(FfError::FieldMismatch { .. })));
    }

    #[test]
    fn display() {
        let f = curve(3, &[(7, 1), (0, 2)]);
        assert_eq!(f.to_string(), "y^2 = X^7 + 2 over F_3");
    }
}

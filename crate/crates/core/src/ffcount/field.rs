//! Small finite fields F_{p^k}, k ≤ 3, as lookup tables.
//!
//! Elements are indices 0..p^k encoding the polynomial basis coordinates in
//! base p (least significant digit = constant term), so the prime subfield
//! F_p sits at indices 0..p.

use super::FfError;

/// Largest field the table representation accepts.
pub const MAX_FIELD_SIZE: usize = 1024;

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// p^k together with a monic irreducible modulus of degree k over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    p: u32,
    k: u32,
    /// Low to high, length k + 1, leading coefficient 1.
    modulus: Vec<u32>,
}

impl PrimePower {
    pub fn new(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self, FfError> {
        if !is_prime(p) || p == 2 {
            return Err(FfError::UnsupportedCharacteristic(p));
        }
        if !(1..=3).contains(&k) {
            return Err(FfError::UnsupportedDegree(k));
        }
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FfError::ReducibleModulus { p, modulus });
        }
        // degree 2 or 3: irreducible iff no root in F_p
        let has_root = k > 1 && (0..p).any(|x| {
            modulus
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                == 0
        });
        if has_root {
            return Err(FfError::ReducibleModulus { p, modulus });
        }
        Ok(Self { p, k, modulus })
    }

    /// Fixed moduli: x²+1, x³−x−1 over F₃; x²−2, x³+x+1 over F₅; otherwise
    /// the lexicographically first irreducible monic polynomial.
    pub fn standard(p: u32, k: u32) -> Result<Self, FfError> {
        let fixed: Option<Vec<u32>> = match (p, k) {
            (_, 1) => Some(vec![0, 1]),
            (3, 2) => Some(vec![1, 0, 1]),
            (3, 3) => Some(vec![2, 2, 0, 1]),
            (5, 2) => Some(vec![3, 0, 1]),
            (5, 3) => Some(vec![1, 1, 0, 1]),
            _ => None,
        };
        if let Some(m) = fixed {
            return Self::new(p, k, m);
        }
        if !is_prime(p) || p == 2 {
            return Err(FfError::UnsupportedCharacteristic(p));
        }
        let count = (p as u64).pow(k);
        for n in 0..count {
            let mut m: Vec<u32> = (0..k).map(|i| ((n / (p as u64).pow(i)) % p as u64) as u32).collect();
            m.push(1);
            if let Ok(pp) = Self::new(p, k, m) {
                return Ok(pp);
            }
        }
        Err(FfError::UnsupportedDegree(k))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.k)
    }
}

/// Element index in a [`FiniteField`].
pub type Elem = u16;

/// Table-driven arithmetic in F_{p^k}.
#[derive(Clone, Debug)]
pub struct FiniteField {
    spec: PrimePower,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    chi: Vec<i8>,
}

impl FiniteField {
    pub fn new(spec: PrimePower) -> Result<Self, FfError> {
        let size = spec.size();
        if size > MAX_FIELD_SIZE {
            return Err(FfError::FieldTooLarge(size));
        }
        let p = spec.p as usize;
        let k = spec.k as usize;
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| (x / p.pow(i as u32)) % p).collect() };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        let mut neg = vec![0; size];
        for x in 0..size {
            let dx = digits(x);
            neg[x] = encode(&dx.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as Elem;
            for y in 0..size {
                let dy = digits(y);
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * size + y] = encode(&sum) as Elem;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                for top in (k..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (i, &m) in spec.modulus[..k].iter().enumerate() {
                        let idx = top - k + i;
                        prod[idx] = (prod[idx] + p * p - c * m as usize % p) % p;
                    }
                    prod[top] = 0;
                }
                prod.truncate(k);
                mul[x * size + y] = encode(&prod) as Elem;
            }
        }
        let mut field = Self {
            spec,
            size,
            add,
            mul,
            neg,
            chi: vec![0; size],
        };
        let half = (size - 1) / 2;
        for u in 1..size {
            let r = field.pow(u as Elem, half as u64);
            field.chi[u] = if r == 1 {
                1
            } else if r == field.neg[1] {
                -1
            } else {
                unreachable!("u^((q-1)/2) must be ±1")
            };
        }
        Ok(field)
    }

    /// F_{p^k} with the standard modulus.
    pub fn standard(p: u32, k: u32) -> Result<Self, FfError> {
        Self::new(PrimePower::standard(p, k)?)
    }

    pub fn spec(&self) -> &PrimePower {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The image of an integer under F_p ⊂ F_{p^k}.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.spec.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc: Elem = 1;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, x: Elem) -> Result<Elem, FfError> {
        if x == 0 {
            return Err(FfError::ZeroInverse);
        }
        Ok(self.pow(x, self.size as u64 - 2))
    }

    /// Quadratic character: +1 on nonzero squares, −1 on non-squares, 0 at 0.
    #[inline]
    pub fn chi(&self, x: Elem) -> i8 {
        self.chi[x as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(|x| x as Elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_character_f3() {
        let f = FiniteField::standard(3, 1).unwrap();
        assert_eq!(f.chi(0), 0);
        assert_eq!(f.chi(1), 1);
        assert_eq!(f.chi(2), -1);
    }

    #[test]
    fn f9_squares_and_nonsquares() {
        let f = FiniteField::standard(3, 2).unwrap();
        assert_eq!(f.spec().modulus(), &[1, 0, 1]);
        let squares: std::collections::HashSet<Elem> = f.elements().skip(1).map(|u| f.mul(u, u)).collect();
        assert_eq!(squares.len(), 4);
        for u in f.elements().skip(1) {
            assert_eq!(f.chi(f.mul(u, u)), 1);
            assert_eq!(f.chi(u), if squares.contains(&u) { 1 } else { -1 });
        }
        // every element of F_3 is a square in F_9
        assert_eq!(f.chi(2), 1);
    }

    #[test]
    fn multiplicative_orders() {
        for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3), (7, 2)] {
            let f = FiniteField::standard(p, k).unwrap();
            let q1 = f.size() as u64 - 1;
            for u in f.elements().skip(1) {
                assert_eq!(f.pow(u, q1), 1);
                assert_eq!(f.mul(u, f.inverse(u).unwrap()), 1);
            }
            // a generator exists: the group is cyclic
            assert!(f.elements().skip(1).any(|g| (1..q1).all(|e| f.pow(g, e) != 1)));
            assert_eq!(f.inverse(0), Err(FfError::ZeroInverse));
        }
    }

    #[test]
    fn field_axioms_f27() {
        let f = FiniteField::standard(3, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.add(x, f.neg(x)), 0);
            for y in f.elements() {
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for z in [1, 5, 13, 26] {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn moduli_validation() {
        assert!(PrimePower::new(3, 2, vec![2, 0, 1]).is_err()); // x² − 1
        assert!(PrimePower::new(5, 2, vec![1, 0, 1]).is_err()); // x² + 1 = (x−2)(x+2)
        assert_eq!(PrimePower::new(2, 1, vec![0, 1]), Err(FfError::UnsupportedCharacteristic(2)));
        assert_eq!(PrimePower::new(9, 1, vec![0, 1]), Err(FfError::UnsupportedCharacteristic(9)));
        assert_eq!(PrimePower::new(3, 4, vec![0; 5]), Err(FfError::UnsupportedDegree(4)));
        assert_eq!(PrimePower::standard(7, 3).unwrap().modulus().len(), 4);
        assert!(matches!(FiniteField::standard(11, 3), Err(FfError::FieldTooLarge(1331))));
    }
}

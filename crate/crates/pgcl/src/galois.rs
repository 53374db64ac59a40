//! Arithmetic in GF(q) for q in {2,3,4,5,7,8,9}.
//!
//! Elements are indices in `0..q`. For prime q the index is the residue
//! itself; for q = p^e the index encodes the polynomial representation in
//! base-p digits, little-endian, so 0 and 1 are always the additive and
//! multiplicative identities. The prime-power fields are built over fixed
//! irreducible polynomials so that every downstream index (points, lines,
//! canonical forms, file formats) is stable across versions:
//!
//! * GF(4):  x^2 + x + 1
//! * GF(8):  x^3 + x + 1
//! * GF(9):  x^2 + 1
//!
//! All operations go through full lookup tables; the field axioms are checked
//! exhaustively at construction (at most 9^3 triples per law).

use thiserror::Error;

pub const SUPPORTED_ORDERS: [u16; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(u16),
    #[error("inversion of zero")]
    ZeroInverse,
}

/// GF(q) with full add/mul/inv/neg tables.
#[derive(Clone, Debug)]
pub struct Field {
    pub q: u16,
    pub p: u16,
    pub e: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // inv[0] unused
}

fn irreducible(p: u16, e: u32) -> Vec<u16> {
    // Coefficients little-endian, degree e monic.
    match (p, e) {
        (2, 2) => vec![1, 1, 1],    // x^2+x+1
        (2, 3) => vec![1, 1, 0, 1], // x^3+x+1
        (3, 2) => vec![1, 0, 1],    // x^2+1
        _ => unreachable!("no irreducible polynomial registered for p={p} e={e}"),
    }
}

fn digits(mut v: u16, p: u16, e: u32) -> Vec<u16> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(v % p);
        v /= p;
    }
    d
}

fn undigits(d: &[u16], p: u16) -> u16 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    pub fn new(q: u16) -> Result<Field, GaloisError> {
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(GaloisError::UnsupportedOrder(q));
        }
        let (p, e) = match q {
            2 | 3 | 5 | 7 => (q, 1),
            4 => (2, 2),
            8 => (2, 3),
            9 => (3, 2),
            _ => unreachable!(),
        };
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        if e == 1 {
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = ((a + b) % q) as u8;
                    mul[(a * q + b) as usize] = ((a * b) % q) as u8;
                }
            }
        } else {
            let modpoly = irreducible(p, e);
            for a in 0..q {
                let da = digits(a, p, e);
                for b in 0..q {
                    let db = digits(b, p, e);
                    // addition: digit-wise mod p
                    let ds: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = undigits(&ds, p) as u8;
                    // multiplication: polynomial product reduced mod modpoly
                    let mut prod = vec![0u16; 2 * e as usize];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    for i in (e as usize..prod.len()).rev() {
                        let c = prod[i];
                        if c != 0 {
                            prod[i] = 0;
                            for (k, &m) in modpoly.iter().enumerate().take(e as usize) {
                                let idx = i - e as usize + k;
                                prod[idx] = (prod[idx] + (p - m % p) % p * c) % p;
                            }
                        }
                    }
                    mul[(a * q + b) as usize] = undigits(&prod[..e as usize], p) as u8;
                }
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * n + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let f = Field { q, p, e, add, mul, neg, inv };
        f.check_axioms();
        Ok(f)
    }

    /// Exhaustive verification of the field axioms over all element triples.
    fn check_axioms(&self) {
        let q = self.q as u8;
        for a in 0..q {
            assert_eq!(self.add(a, 0), a);
            assert_eq!(self.mul(a, 1), a);
            assert_eq!(self.add(a, self.neg(a)), 0);
            if a != 0 {
                assert_eq!(self.mul(a, self.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(self.add(a, b), self.add(b, a));
                assert_eq!(self.mul(a, b), self.mul(b, a));
                for c in 0..q {
                    assert_eq!(self.add(self.add(a, b), c), self.add(a, self.add(b, c)));
                    assert_eq!(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c))
                    );
                }
            }
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Result<u8, GaloisError> {
        if a == 0 {
            Err(GaloisError::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x -> x^p, the generating field automorphism.
    pub fn frobenius(&self, a: u8) -> u8 {
        let mut r = a;
        for _ in 1..self.p {
            r = self.mul(r, a);
        }
        r
    }

    pub fn pow(&self, a: u8, mut n: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Solve the 2x2 system a*x + b*y = e, c*x + d*y = f. Returns None when
    /// the coefficient matrix is singular.
    pub fn solve_linear_2x2(&self, a: u8, b: u8, c: u8, d: u8, e: u8, f: u8) -> Option<(u8, u8)> {
        let det = self.sub(self.mul(a, d), self.mul(b, c));
        if det == 0 {
            return None;
        }
        let det_inv = self.inv(det).expect("nonzero determinant");
        let x = self.mul(self.sub(self.mul(e, d), self.mul(b, f)), det_inv);
        let y = self.mul(self.sub(self.mul(a, f), self.mul(e, c)), det_inv);
        Some((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_orders_build() {
        for q in SUPPORTED_ORDERS {
            Field::new(q).unwrap();
        }
        assert_eq!(Field::new(6).unwrap_err(), GaloisError::UnsupportedOrder(6));
    }

    #[test]
    fn gf5_characteristic() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.add(1, 4), 0);
        assert_eq!(f.inv(2).unwrap(), 3); // 2*3 = 6 = 1
    }

    #[test]
    fn gf4_multiplicative_group() {
        let f = Field::new(4).unwrap();
        for a in 1..4u8 {
            assert_eq!(f.pow(a, 3), 1);
        }
    }

    #[test]
    fn frobenius_order_and_fixed_field() {
        let f8 = Field::new(8).unwrap();
        for a in 0..8u8 {
            let mut x = a;
            for _ in 0..3 {
                x = f8.frobenius(x);
            }
            assert_eq!(x, a); // Galois group has order e = 3
        }
        let f9 = Field::new(9).unwrap();
        let fixed = (0..9u8).filter(|&a| f9.frobenius(a) == a).count();
        assert_eq!(fixed, 3); // fixed field GF(3)
    }

    #[test]
    fn frobenius_is_additive() {
        for q in SUPPORTED_ORDERS {
            let f = Field::new(q).unwrap();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn solve_2x2() {
        let f = Field::new(7).unwrap();
        // 2x + 3y = 1, x + y = 4  ->  x = 4 - y; 2(4-y)+3y = 1 -> y = -7 = 0, x = 4
        let (x, y) = f.solve_linear_2x2(2, 3, 1, 1, 1, 4).unwrap();
        assert_eq!((x, y), (4, 0));
        assert!(f.solve_linear_2x2(1, 2, 2, 4, 1, 2).is_none());
    }
}

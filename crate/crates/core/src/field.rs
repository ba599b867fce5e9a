//! Finite fields of order `q = p^k`, `q ≡ 1 (mod 4)`, `q ≤ 64`.
//!
//! Element `i` is the polynomial whose base-`p` digits are the coefficients
//! of `i`, constant term least significant. Extension fields use a fixed
//! irreducible `x² + c`.

use crate::error::{Error, Result};
use crate::mask::ColorMask;

pub const MAX_FIELD_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    pub q: usize,
    pub p: usize,
    pub k: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    pub squares: ColorMask,
}

/// Constant `c` of the modulus `x² + c` used for each quadratic extension.
fn quadratic_modulus(q: usize) -> Option<usize> {
    match q {
        9 => Some(1),
        25 => Some(2),
        49 => Some(1),
        _ => None,
    }
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FieldTable {
    pub fn new(q: usize) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidField { q, reason: reason.to_string() };
        let (p, k) = prime_power(q).ok_or_else(|| invalid("not a prime power"))?;
        if q % 4 != 1 {
            return Err(invalid("not congruent to 1 mod 4"));
        }
        if q > MAX_FIELD_ORDER {
            return Err(invalid("order exceeds 64"));
        }
        let (add, mul) = match k {
            1 => {
                let mut add = vec![0u8; q * q];
                let mut mul = vec![0u8; q * q];
                for a in 0..q {
                    for b in 0..q {
                        add[a * q + b] = ((a + b) % q) as u8;
                        mul[a * q + b] = (a * b % q) as u8;
                    }
                }
                (add, mul)
            }
            2 => {
                let c = quadratic_modulus(q).ok_or_else(|| invalid("no modulus configured"))?;
                let split = |a: usize| (a % p, a / p);
                let join = |a0: usize, a1: usize| a0 + a1 * p;
                let mut add = vec![0u8; q * q];
                let mut mul = vec![0u8; q * q];
                for a in 0..q {
                    for b in 0..q {
                        let (a0, a1) = split(a);
                        let (b0, b1) = split(b);
                        add[a * q + b] = join((a0 + b0) % p, (a1 + b1) % p) as u8;
                        // x² = -c
                        let high = a1 * b1 % p;
                        let c0 = (a0 * b0 + (p - c) * high) % p;
                        let c1 = (a0 * b1 + a1 * b0) % p;
                        mul[a * q + b] = join(c0, c1) as u8;
                    }
                }
                (add, mul)
            }
            _ => return Err(invalid("unsupported extension degree")),
        };
        let mut neg = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
        }
        let squares: ColorMask = (1..q).map(|a| mul[a * q + a] as usize).collect();
        let field = FieldTable { q, p, k, add, mul, neg, squares };
        if !field.has_inverses() {
            return Err(invalid("modulus is reducible"));
        }
        Ok(field)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    #[inline]
    pub fn is_square(&self, a: usize) -> bool {
        self.squares.contains(a)
    }

    fn has_inverses(&self) -> bool {
        (1..self.q).all(|a| self.inverse(a).is_some())
    }

    /// Human-readable name of element `a`, e.g. `2x+1`.
    pub fn element_name(&self, a: usize) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let (a0, a1) = (a % self.p, a / self.p);
        match (a1, a0) {
            (0, c) => c.to_string(),
            (1, 0) => "x".into(),
            (h, 0) => format!("{h}x"),
            (1, c) => format!("x+{c}"),
            (h, c) => format!("{h}x+{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_orders() {
        for q in [0, 1, 4, 6, 7, 15, 27, 81, 89] {
            assert!(FieldTable::new(q).is_err(), "q={q}");
        }
    }

    #[test]
    fn supported_orders_are_fields() {
        for q in [5, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61] {
            let f = FieldTable::new(q).unwrap();
            assert_eq!(f.squares.len(), (q - 1) / 2, "q={q}");
            assert!(f.is_square(f.neg(1)), "q={q}");
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in (0..q).step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn small_square_sets() {
        let f5 = FieldTable::new(5).unwrap();
        assert_eq!(f5.squares, [1, 4].into_iter().collect());
        let f13 = FieldTable::new(13).unwrap();
        assert_eq!(f13.squares, [1, 3, 4, 9, 10, 12].into_iter().collect());
        // in F_9 with x² = -1: squares are 1, 2, x, 2x
        let f9 = FieldTable::new(9).unwrap();
        assert_eq!(f9.squares, [1, 2, 3, 6].into_iter().collect());
        assert_eq!(f9.element_name(7), "2x+1");
    }
}

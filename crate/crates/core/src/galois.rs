//! Arithmetic over GF(2^m) for m up to 8, table driven.
//!
//! Elements are plain `u8` values holding the polynomial-basis representation.
//! The primitive element is always α = 0x02. Polynomials over the field are
//! slices of coefficients, lowest degree first.

use crate::error::{Error, Result};

/// Default primitive reduction polynomials, indexed by m.
const DEFAULT_POLYS: [u32; 9] = [0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D];

/// A finite field GF(2^m) with log/antilog tables.
#[derive(Clone, Debug)]
pub struct GaloisField {
    m: u32,
    poly: u32,
    /// Multiplicative group order, 2^m - 1.
    order: usize,
    /// exp[i] = α^i, doubled in length so that exp[log a + log b] needs no reduction.
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u16>,
}

impl GaloisField {
    /// GF(256) with reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.
    pub fn gf256() -> Self {
        Self::new(8, 0x11D).expect("0x11D is primitive")
    }

    /// Field of size 2^m using the built-in primitive polynomial for that degree.
    pub fn with_degree(m: u32) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::UnsupportedFieldDegree(m));
        }
        Self::new(m, DEFAULT_POLYS[m as usize])
    }

    /// Builds the field from an explicit reduction polynomial (bit m must be set).
    /// Fails unless α = 0x02 generates the whole multiplicative group.
    pub fn new(m: u32, poly: u32) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::UnsupportedFieldDegree(m));
        }
        if poly >> m != 1 {
            return Err(Error::NotPrimitive { m, poly });
        }
        let size = 1usize << m;
        let order = size - 1;
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u16; size];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                // α has order i < 2^m - 1
                return Err(Error::NotPrimitive { m, poly });
            }
            exp[i] = x as u8;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { m, poly });
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self {
            m,
            poly,
            order,
            exp,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> usize {
        self.order + 1
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    /// α^e for any integer exponent, negative exponents included.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u8 {
        self.exp[e.rem_euclid(self.order as i64) as usize]
    }

    /// Discrete logarithm base α; `None` for zero.
    #[inline]
    pub fn log(&self, a: u8) -> Option<usize> {
        (a != 0).then(|| self.log[a as usize] as usize)
    }

    pub fn pow(&self, a: u8, e: i64) -> u8 {
        if a == 0 {
            // 0^0 = 1 by convention
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as i64;
        self.alpha_pow(l * e.rem_euclid(self.order as i64))
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.exp[self.order - self.log[a as usize] as usize])
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplies by a fixed nonzero factor given by its logarithm.
    #[inline]
    pub(crate) fn mul_by_log(&self, a: u8, log_factor: usize) -> u8 {
        if a == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + log_factor]
        }
    }

    /// Evaluates p(x) by Horner's rule.
    pub fn poly_eval(&self, p: &[u8], x: u8) -> u8 {
        p.iter().rev().fold(0u8, |acc, &c| self.mul(acc, x) ^ c)
    }

    pub fn poly_add(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] ^= c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] ^= c;
        }
        poly_normalize(&mut out);
        out
    }

    pub fn poly_mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= self.mul(x, y);
            }
        }
        poly_normalize(&mut out);
        out
    }

    /// Returns (quotient, remainder) with `a = q·b + r` and deg r < deg b.
    pub fn poly_divmod(&self, a: &[u8], b: &[u8]) -> Result<(Vec<u8>, Vec<u8>)> {
        let mut b = b.to_vec();
        poly_normalize(&mut b);
        let Some(&lead) = b.last() else {
            return Err(Error::DivisionByZeroPolynomial);
        };
        let lead_inv = self.inv(lead)?;
        let mut rem = a.to_vec();
        poly_normalize(&mut rem);
        if rem.len() < b.len() {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![0u8; rem.len() - b.len() + 1];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + b.len() - 1];
            if top == 0 {
                continue;
            }
            let q = self.mul(top, lead_inv);
            quot[shift] = q;
            for (j, &bj) in b.iter().enumerate() {
                rem[shift + j] ^= self.mul(q, bj);
            }
        }
        rem.truncate(b.len() - 1);
        poly_normalize(&mut rem);
        poly_normalize(&mut quot);
        Ok((quot, rem))
    }
}

/// Strips zero leading coefficients; the zero polynomial becomes empty.
pub fn poly_normalize(p: &mut Vec<u8>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of a polynomial, `None` for the zero polynomial.
pub fn poly_degree(p: &[u8]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

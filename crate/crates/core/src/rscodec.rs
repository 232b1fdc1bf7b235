//! Shortened Reed–Solomon codes over GF(2^m) with errors-and-erasures decoding.
//!
//! A word `c` of length n is a codeword iff its syndromes
//! `S_i = Σ_j c_j α^(i·j)` vanish for i = 1 ..= ε - 1, i.e. the polynomial
//! `c(x) = Σ c_j x^j` has roots α, α², …, α^(ε-1). Position j has locator α^j.
//! The code is the parent (2^m - 1, 2^m - ε) code with its high positions
//! n ..= 2^m - 2 fixed at zero.
//!
//! Systematic encoding places the ε - 1 parity symbols at positions
//! 0 ..= ε - 2 and the message at positions ε - 1 ..= n - 1.
//!
//! Decoding uses Berlekamp–Massey seeded with the erasure locator, a Chien
//! search over the n live positions and Forney's formula. Anything that does
//! not end in a verified codeword within the correction radius is reported as
//! a failure and the input is left untouched, which is what lets the
//! iterative decoder skip a component instead of miscorrecting it.

use crate::error::{Error, Result};
use crate::galois::{poly_degree, GaloisField};

/// Parameters of a shortened RS code: length n and design distance ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RsParams {
    n: usize,
    epsilon: usize,
    parent_n: usize,
}

impl RsParams {
    /// ε must be odd with 3 <= ε <= n, and n must not exceed 2^m - 1.
    pub fn new(n: usize, epsilon: usize, field: &GaloisField) -> Result<Self> {
        let parent_n = field.order();
        if n == 0 || n > parent_n {
            return Err(Error::OutOfRange {
                what: "block length",
                value: n as i64,
                lo: 1,
                hi: parent_n as i64,
            });
        }
        if epsilon % 2 == 0 || epsilon < 3 || epsilon > n {
            return Err(Error::InvalidParameter(format!(
                "design distance must be odd and in 3..={n}, got {epsilon}"
            )));
        }
        Ok(Self {
            n,
            epsilon,
            parent_n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> usize {
        self.epsilon
    }

    pub fn k(&self) -> usize {
        self.n - (self.epsilon - 1)
    }

    /// Number of parity symbols, ε - 1.
    pub fn parity_len(&self) -> usize {
        self.epsilon - 1
    }

    /// Error-correction radius ⌊ε/2⌋.
    pub fn t(&self) -> usize {
        self.epsilon / 2
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RsStatus {
    Corrected,
    /// Decoding was refused; the word is returned exactly as received.
    UnchangedFailure,
}

/// Result of decoding one component word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsOutcome {
    pub status: RsStatus,
    pub word: Vec<u8>,
    /// Symbol errors fixed outside the declared erasures.
    pub errors_corrected: usize,
    /// Declared erasures taken into the locator.
    pub erasures_used: usize,
}

/// Summary of an in-place decode; the word itself is modified in place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InPlace {
    Corrected {
        errors_corrected: usize,
        erasures_used: usize,
        symbols_changed: usize,
    },
    Failed,
}

#[derive(Clone, Debug)]
pub struct RsCodec {
    field: GaloisField,
    params: RsParams,
    /// g(x) = Π (x - α^i), i = 1 ..= ε - 1, lowest degree first, monic.
    generator: Vec<u8>,
}

impl RsCodec {
    pub fn new(field: GaloisField, params: RsParams) -> Self {
        let mut generator = vec![1u8];
        for i in 1..params.epsilon {
            generator = field.poly_mul(&generator, &[field.alpha_pow(i as i64), 1]);
        }
        Self {
            field,
            params,
            generator,
        }
    }

    /// The length-31 component code over GF(256) used on the PG(5, 2) graph.
    pub fn gf256(n: usize, epsilon: usize) -> Result<Self> {
        let field = GaloisField::gf256();
        let params = RsParams::new(n, epsilon, &field)?;
        Ok(Self::new(field, params))
    }

    pub fn params(&self) -> &RsParams {
        &self.params
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn generator_poly(&self) -> &[u8] {
        &self.generator
    }

    /// Systematic encoding of k message symbols into an n-symbol codeword.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        let p = &self.params;
        if message.len() != p.k() {
            return Err(Error::LengthMismatch {
                expected: p.k(),
                got: message.len(),
            });
        }
        let r = p.parity_len();
        let mut word = vec![0u8; p.n];
        word[r..].copy_from_slice(message);
        // remainder of m(x)·x^r modulo g(x), computed by synthetic division
        // from the highest coefficient down
        let mut rem = vec![0u8; r];
        for &m in message.iter().rev() {
            let feedback = m ^ rem[r - 1];
            for j in (1..r).rev() {
                rem[j] = rem[j - 1] ^ self.field.mul(feedback, self.generator[j]);
            }
            rem[0] = self.field.mul(feedback, self.generator[0]);
        }
        word[..r].copy_from_slice(&rem);
        Ok(word)
    }

    /// Syndromes S_1 ..= S_(ε-1).
    pub fn syndromes(&self, word: &[u8]) -> Vec<u8> {
        let mut s = vec![0u8; self.params.parity_len()];
        self.syndromes_into(word, &mut s);
        s
    }

    fn syndromes_into(&self, word: &[u8], out: &mut [u8]) {
        let f = &self.field;
        for (i, s) in out.iter_mut().enumerate() {
            let log_x = i + 1;
            // Horner in α^i over positions from high to low
            let mut acc = 0u8;
            for &c in word.iter().rev() {
                acc = f.mul_by_log(acc, log_x) ^ c;
            }
            *s = acc;
        }
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        word.len() == self.params.n && self.syndromes(word).iter().all(|&s| s == 0)
    }

    /// Decodes `received` with the given erasure positions.
    pub fn decode(&self, received: &[u8], erasures: &[usize]) -> Result<RsOutcome> {
        let mut word = received.to_vec();
        match self.decode_in_place(&mut word, erasures)? {
            InPlace::Corrected {
                errors_corrected,
                erasures_used,
                ..
            } => Ok(RsOutcome {
                status: RsStatus::Corrected,
                word,
                errors_corrected,
                erasures_used,
            }),
            InPlace::Failed => Ok(RsOutcome {
                status: RsStatus::UnchangedFailure,
                word,
                errors_corrected: 0,
                erasures_used: 0,
            }),
        }
    }

    /// Decodes in place. On `Failed` the word is left bit-exactly as it was.
    pub fn decode_in_place(&self, word: &mut [u8], erasures: &[usize]) -> Result<InPlace> {
        let p = &self.params;
        let f = &self.field;
        if word.len() != p.n {
            return Err(Error::LengthMismatch {
                expected: p.n,
                got: word.len(),
            });
        }
        let nsyn = p.parity_len();
        if erasures.len() > nsyn {
            return Err(Error::TooManyErasures {
                count: erasures.len(),
                max: nsyn,
            });
        }
        for (i, &e) in erasures.iter().enumerate() {
            if e >= p.n {
                return Err(Error::ErasureOutOfRange {
                    position: e,
                    n: p.n,
                });
            }
            if erasures[..i].contains(&e) {
                return Err(Error::InvalidParameter(format!(
                    "erasure position {e} listed twice"
                )));
            }
        }

        let mut syn = [0u8; 256];
        let syn = &mut syn[..nsyn];
        self.syndromes_into(word, syn);
        if syn.iter().all(|&s| s == 0) {
            return Ok(InPlace::Corrected {
                errors_corrected: 0,
                erasures_used: 0,
                symbols_changed: 0,
            });
        }

        let n_eras = erasures.len();
        // erasure locator Γ(x) = Π (1 + α^e x)
        let mut gamma = vec![1u8];
        for &e in erasures {
            gamma = f.poly_mul(&gamma, &[1, f.alpha_pow(e as i64)]);
        }

        // Berlekamp–Massey continued from the erasure locator
        let mut lambda = gamma.clone();
        lambda.resize(nsyn + 1, 0);
        let mut prev = lambda.clone();
        let mut len = n_eras;
        for r in n_eras..nsyn {
            let mut delta = 0u8;
            for j in 0..=r.min(nsyn) {
                delta ^= f.mul(lambda[j], syn[r - j]);
            }
            // prev ← x·prev
            prev.pop();
            prev.insert(0, 0);
            if delta == 0 {
                continue;
            }
            let next: Vec<u8> = lambda
                .iter()
                .zip(&prev)
                .map(|(&l, &b)| l ^ f.mul(delta, b))
                .collect();
            if 2 * len <= r + n_eras {
                let dinv = f.inv(delta)?;
                prev = lambda.iter().map(|&l| f.mul(l, dinv)).collect();
                len = r + 1 + n_eras - len;
            }
            lambda = next;
        }

        let Some(deg) = poly_degree(&lambda) else {
            return Ok(InPlace::Failed);
        };
        // errors e = deg - f must satisfy 2e + f <= ε - 1
        if deg != len || deg < n_eras || 2 * deg - n_eras > nsyn {
            return Ok(InPlace::Failed);
        }
        lambda.truncate(deg + 1);

        // Chien search over the live positions only; a root in the shortened
        // region shows up as a missing root
        let mut positions = Vec::with_capacity(deg);
        for j in 0..p.n {
            if f.poly_eval(&lambda, f.alpha_pow(-(j as i64))) == 0 {
                positions.push(j);
            }
        }
        if positions.len() != deg {
            return Ok(InPlace::Failed);
        }

        // Forney: e_j = Ω(X⁻¹) / Λ'(X⁻¹) with Ω = S·Λ mod x^(ε-1)
        let mut omega = f.poly_mul(syn, &lambda);
        omega.truncate(nsyn);
        let dlambda: Vec<u8> = lambda
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        let mut corrections = Vec::with_capacity(deg);
        for &j in &positions {
            let xinv = f.alpha_pow(-(j as i64));
            let den = f.poly_eval(&dlambda, xinv);
            if den == 0 {
                return Ok(InPlace::Failed);
            }
            let value = f.div(f.poly_eval(&omega, xinv), den)?;
            corrections.push((j, value));
        }

        // verify before touching the caller's word
        let mut candidate = word.to_vec();
        for &(j, v) in &corrections {
            candidate[j] ^= v;
        }
        self.syndromes_into(&candidate, syn);
        if syn.iter().any(|&s| s != 0) {
            return Ok(InPlace::Failed);
        }
        let mut errors_corrected = 0;
        let mut symbols_changed = 0;
        for &(j, v) in &corrections {
            if v != 0 {
                symbols_changed += 1;
                if !erasures.contains(&j) {
                    errors_corrected += 1;
                }
            }
        }
        word.copy_from_slice(&candidate);
        Ok(InPlace::Corrected {
            errors_corrected,
            erasures_used: n_eras,
            symbols_changed,
        })
    }
}

//! Arithmetic in GF(2^m) for the small extension degrees used by the codes
//! in this crate, plus univariate polynomials and linear solves over them.
//!
//! Elements are plain unsigned integers below `q = 2^m`; bit `i` is the
//! coefficient of `α^i` in the polynomial basis. Addition is XOR and
//! multiplication goes through log/antilog tables built once per field.

mod linear;
mod poly;

pub use linear::{mat_vec, solve_linear};
pub use poly::{poly_mod, Poly};

use std::fmt;

use thiserror::Error;

/// A field element. Every supported field has `q <= 1024`.
pub type Symbol = u16;

/// Extension degrees with a pinned primitive polynomial.
pub const SUPPORTED_DEGREES: [u32; 6] = [1, 2, 3, 4, 8, 10];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("unsupported extension degree m = {0}")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} is not primitive of degree {m}")]
    NotPrimitive { m: u32, modulus: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
}

/// The pinned primitive polynomial for each supported degree, as a bit mask
/// including the leading term.
pub fn default_modulus(m: u32) -> Option<u32> {
    match m {
        1 => Some(0x3),
        2 => Some(0x7),
        3 => Some(0xB),
        4 => Some(0x13),
        8 => Some(0x11D),
        10 => Some(0x409),
        _ => None,
    }
}

/// GF(2^m) with primitive element `α = ξ` (the integer 2, or 1 when m = 1).
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    modulus: u32,
    /// `exp[i] = α^i`, stored for `0 <= i < 2(q-1)` so that sums of two logs
    /// index without reduction.
    exp: Vec<Symbol>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

impl Field {
    /// Field with the pinned primitive polynomial for `m`.
    pub fn new(m: u32) -> Result<Self, GfError> {
        let modulus = default_modulus(m).ok_or(GfError::UnsupportedDegree(m))?;
        Self::with_modulus(m, modulus)
    }

    /// Field from an explicit modulus; fails unless the modulus is primitive.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self, GfError> {
        if !SUPPORTED_DEGREES.contains(&m) {
            return Err(GfError::UnsupportedDegree(m));
        }
        if modulus >> m != 1 {
            return Err(GfError::NotPrimitive { m, modulus });
        }
        let q = 1usize << m;
        let order = q - 1;
        let mut exp = vec![0 as Symbol; 2 * order];
        let mut log = vec![0u16; q];
        let mut seen = vec![false; q];
        // m = 1 is GF(2): the only nonzero element is 1 and alpha = 1.
        let generator: u32 = if m == 1 { 1 } else { 2 };
        let mut x: u32 = 1;
        for (i, e) in exp.iter_mut().enumerate().take(order) {
            if seen[x as usize] {
                return Err(GfError::NotPrimitive { m, modulus });
            }
            seen[x as usize] = true;
            *e = x as Symbol;
            log[x as usize] = i as u16;
            x = mul_shift_reduce(x, generator, m, modulus);
        }
        if x != 1 {
            return Err(GfError::NotPrimitive { m, modulus });
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Field { m, modulus, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size `q = 2^m`.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    /// The primitive element.
    pub fn alpha(&self) -> Symbol {
        self.exp[1 % self.order()]
    }

    pub fn contains(&self, a: Symbol) -> bool {
        (a as usize) < self.size()
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Symbol) -> Symbol {
        assert!(a != 0, "inverse of zero");
        let order = self.order();
        self.exp[(order - self.log[a as usize] as usize) % order]
    }

    #[inline]
    pub fn div(&self, a: Symbol, b: Symbol) -> Symbol {
        assert!(b != 0, "division by zero");
        if a == 0 {
            0
        } else {
            let order = self.order();
            self.exp[self.log[a as usize] as usize + order - self.log[b as usize] as usize]
        }
    }

    /// `α^e` for any exponent (reduced mod q-1).
    #[inline]
    pub fn exp(&self, e: usize) -> Symbol {
        self.exp[e % self.order()]
    }

    /// Discrete log base α. `None` for zero.
    #[inline]
    pub fn log(&self, a: Symbol) -> Option<usize> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize] as usize)
        }
    }

    pub fn pow(&self, a: Symbol, e: usize) -> Symbol {
        if e == 0 {
            return 1;
        }
        match self.log(a) {
            None => 0,
            Some(l) => self.exp((l * (e % self.order())) % self.order()),
        }
    }

    /// `a * α^e` without a table lookup for `α^e`.
    #[inline]
    pub fn mul_exp(&self, a: Symbol, e: usize) -> Symbol {
        if a == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + e % self.order()]
        }
    }
}

/// Carry-less multiply followed by reduction modulo `modulus`.
fn mul_shift_reduce(mut a: u32, mut b: u32, m: u32, modulus: u32) -> u32 {
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m != 0 {
            a ^= modulus;
        }
    }
    acc
}

/// Symbol-wise difference of two vectors (same as sum in characteristic 2).
pub fn vec_add(a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// Hamming distance between two equal-length vectors.
pub fn hamming_distance(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn hamming_weight(a: &[Symbol]) -> usize {
    a.iter().filter(|&&x| x != 0).count()
}

//! Polynomial checksums `h(ξ) = x(ξ) mod g(ξ)` over the symbol field.
//!
//! A small registry of generators keeps packet headers portable: the header
//! only carries the registry id.

use thiserror::Error;

use crate::gf::{poly_mod, Field, Poly, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrcError {
    #[error("unknown CRC id {0}")]
    UnknownId(u8),
    #[error("CRC id {id} needs a binary symbol field, got GF(2^{m})")]
    NeedsBinary { id: u8, m: u32 },
    #[error("generator must have degree >= 0 and a nonzero constant term")]
    BadGenerator,
}

pub const CRC_NONE: u8 = 0;
pub const CRC_QUADRATIC: u8 = 1;
pub const CRC_12: u8 = 2;
pub const CRC_16_CCITT: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrcSpec {
    id: u8,
    field: Field,
    gen: Poly,
}

/// Result of matching a decoder list against a received checksum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrcSelection {
    /// Index of the only matching candidate.
    Unique(usize),
    NoMatch,
    /// Number of candidates that matched (at least two).
    Ambiguous(usize),
}

fn binary_poly(mask: u32) -> Poly {
    Poly::from_coeffs((0..32).map(|i| ((mask >> i) & 1) as Symbol).collect())
}

impl CrcSpec {
    /// Arbitrary generator; `gen(0)` must be nonzero.
    pub fn custom(id: u8, field: Field, gen: Poly) -> Result<Self, CrcError> {
        if gen.is_zero() || gen.coeff(0) == 0 {
            return Err(CrcError::BadGenerator);
        }
        Ok(CrcSpec { id, field, gen })
    }

    /// No checksum (`ρ = 0`); every candidate matches.
    pub fn none(field: Field) -> Self {
        CrcSpec {
            id: CRC_NONE,
            field,
            gen: Poly::one(),
        }
    }

    /// `ξ² + α·ξ + 1` over `field`.
    pub fn quadratic(field: Field) -> Self {
        let a = field.alpha();
        CrcSpec {
            id: CRC_QUADRATIC,
            field,
            gen: Poly::from_coeffs(vec![1, a, 1]),
        }
    }

    /// CRC-12, `ξ¹² + ξ¹¹ + ξ³ + ξ² + ξ + 1`, over GF(2).
    pub fn crc12() -> Self {
        CrcSpec {
            id: CRC_12,
            field: Field::new(1).expect("GF(2)"),
            gen: binary_poly(0x180F),
        }
    }

    /// CRC-16/CCITT, `ξ¹⁶ + ξ¹² + ξ⁵ + 1`, over GF(2).
    pub fn crc16_ccitt() -> Self {
        CrcSpec {
            id: CRC_16_CCITT,
            field: Field::new(1).expect("GF(2)"),
            gen: binary_poly(0x11021),
        }
    }

    /// Default: 12 bits for binary symbols, two symbols otherwise.
    pub fn default_for(field: &Field) -> Self {
        if field.degree() == 1 {
            Self::crc12()
        } else {
            Self::quadratic(field.clone())
        }
    }

    /// Registry lookup for a code whose symbols live in `field`.
    pub fn from_id(id: u8, field: &Field) -> Result<Self, CrcError> {
        match id {
            CRC_NONE => Ok(Self::none(field.clone())),
            CRC_QUADRATIC => Ok(Self::quadratic(field.clone())),
            CRC_12 | CRC_16_CCITT if field.degree() != 1 => Err(CrcError::NeedsBinary {
                id,
                m: field.degree(),
            }),
            CRC_12 => Ok(Self::crc12()),
            CRC_16_CCITT => Ok(Self::crc16_ccitt()),
            _ => Err(CrcError::UnknownId(id)),
        }
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &Poly {
        &self.gen
    }

    /// Number of checksum symbols, `deg g`.
    pub fn rho(&self) -> usize {
        self.gen.degree().unwrap_or(0)
    }
}

/// `x(ξ) mod g(ξ)` padded to exactly `ρ` symbols. Entries of `x` must be
/// elements of the spec's field.
pub fn crc_compute(x: &[Symbol], spec: &CrcSpec) -> Vec<Symbol> {
    let r = poly_mod(&Poly::from_coeffs(x.to_vec()), &spec.gen, &spec.field)
        .expect("generator is nonzero");
    r.to_padded(spec.rho())
}

/// Picks the candidate whose checksum equals `h`.
pub fn crc_select<V: AsRef<[Symbol]>>(candidates: &[V], h: &[Symbol], spec: &CrcSpec) -> CrcSelection {
    let mut found = None;
    let mut count = 0;
    for (i, c) in candidates.iter().enumerate() {
        if crc_compute(c.as_ref(), spec) == h {
            found.get_or_insert(i);
            count += 1;
        }
    }
    match (found, count) {
        (None, _) => CrcSelection::NoMatch,
        (Some(i), 1) => CrcSelection::Unique(i),
        _ => CrcSelection::Ambiguous(count),
    }
}

/// Smallest `ρ` with `q^ρ >= list_size`.
pub fn required_rho(list_size: u64, q: u64) -> usize {
    assert!(q >= 2, "field size must be at least 2");
    let mut rho = 0;
    let mut cap: u128 = 1;
    while cap < list_size as u128 {
        cap *= q as u128;
        rho += 1;
    }
    rho
}

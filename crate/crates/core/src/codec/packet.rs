//! Wire format of a syndrome packet.
//!
//! ```text
//! "SWLD" | version u8 | family u8 | m u8 | n u16 BE | k u16 BE | crc_id u8 | rho u8
//! | n-k syndrome symbols | rho CRC symbols
//! ```
//!
//! RS symbols take `⌈m/8⌉` bytes each, big-endian. BCH symbols are bits and
//! take one byte each.

use thiserror::Error;

use crate::gf::{default_modulus, Symbol};
use crate::planner::Family;

pub const MAGIC: &[u8; 4] = b"SWLD";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PacketError {
    #[error("packet shorter than its header")]
    Truncated,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("unknown code family {0}")]
    BadFamily(u8),
    #[error("inconsistent code parameters: {0}")]
    BadParameters(String),
    #[error("payload is {got} bytes, header implies {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("symbol {0} out of range")]
    BadSymbol(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromePacket {
    pub family: Family,
    /// Locator field degree; `n = 2^m - 1`.
    pub m: u8,
    pub n: usize,
    pub k: usize,
    pub crc_id: u8,
    /// `n - k` symbols.
    pub syndrome: Vec<Symbol>,
    /// `ρ` symbols.
    pub crc: Vec<Symbol>,
}

/// Bytes per packed symbol.
pub fn symbol_width(family: Family, m: u32) -> usize {
    match family {
        Family::Rs => (m as usize).div_ceil(8),
        Family::Bch => 1,
    }
}

/// Number of distinct symbol values.
pub fn alphabet(family: Family, m: u32) -> usize {
    match family {
        Family::Rs => 1 << m,
        Family::Bch => 2,
    }
}

/// Append symbols as `width`-byte big-endian words.
pub fn pack_symbols(symbols: &[Symbol], width: usize, out: &mut Vec<u8>) {
    for &s in symbols {
        match width {
            1 => out.push(s as u8),
            _ => out.extend_from_slice(&s.to_be_bytes()),
        }
    }
}

/// Inverse of [`pack_symbols`]; trailing bytes short of a word are dropped.
pub fn unpack_symbols(bytes: &[u8], width: usize) -> Vec<Symbol> {
    bytes
        .chunks_exact(width)
        .map(|c| c.iter().fold(0, |acc, &b| (acc << 8) | b as Symbol))
        .collect()
}

impl SyndromePacket {
    pub fn rho(&self) -> usize {
        self.crc.len()
    }

    pub fn symbol_width(&self) -> usize {
        symbol_width(self.family, self.m as u32)
    }

    /// Total symbols carried, `n - k + ρ`.
    pub fn payload_symbols(&self) -> usize {
        self.syndrome.len() + self.crc.len()
    }

    /// Header fields are self-consistent.
    pub fn validate(&self) -> Result<(), PacketError> {
        let m = self.m as u32;
        if default_modulus(m).is_none() {
            return Err(PacketError::BadParameters(format!("unsupported m = {m}")));
        }
        let n = (1usize << m) - 1;
        if self.n != n {
            return Err(PacketError::BadParameters(format!("n = {} but 2^m - 1 = {n}", self.n)));
        }
        if self.k == 0 || self.k > n {
            return Err(PacketError::BadParameters(format!("k = {} outside [1, {n}]", self.k)));
        }
        if self.syndrome.len() != n - self.k {
            return Err(PacketError::BadLength {
                expected: n - self.k,
                got: self.syndrome.len(),
            });
        }
        if self.crc.len() > u8::MAX as usize {
            return Err(PacketError::BadParameters("rho above 255".into()));
        }
        let q = alphabet(self.family, m);
        if let Some(&s) = self
            .syndrome
            .iter()
            .chain(&self.crc)
            .find(|&&s| s as usize >= q)
        {
            return Err(PacketError::BadSymbol(s));
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, PacketError> {
        self.validate()?;
        let width = self.symbol_width();
        let mut out = Vec::with_capacity(HEADER_LEN + width * self.payload_symbols());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(match self.family {
            Family::Rs => 0,
            Family::Bch => 1,
        });
        out.push(self.m);
        out.extend_from_slice(&(self.n as u16).to_be_bytes());
        out.extend_from_slice(&(self.k as u16).to_be_bytes());
        out.push(self.crc_id);
        out.push(self.crc.len() as u8);
        pack_symbols(&self.syndrome, width, &mut out);
        pack_symbols(&self.crc, width, &mut out);
        Ok(out)
    }

    /// Byte length of the packet whose header starts `bytes`.
    pub fn framed_len(bytes: &[u8]) -> Result<usize, PacketError> {
        if bytes.len() < HEADER_LEN {
            return Err(PacketError::Truncated);
        }
        let family = match bytes[5] {
            0 => Family::Rs,
            1 => Family::Bch,
            f => return Err(PacketError::BadFamily(f)),
        };
        let n = u16::from_be_bytes([bytes[7], bytes[8]]) as usize;
        let k = u16::from_be_bytes([bytes[9], bytes[10]]) as usize;
        if k > n {
            return Err(PacketError::BadParameters(format!("n = {n}, k = {k}")));
        }
        Ok(HEADER_LEN + (n - k + bytes[12] as usize) * symbol_width(family, bytes[6] as u32))
    }

    /// Parse the first of several concatenated packets.
    pub fn split_first(bytes: &[u8]) -> Result<(Self, &[u8]), PacketError> {
        let len = Self::framed_len(bytes)?;
        if bytes.len() < len {
            return Err(PacketError::Truncated);
        }
        let (head, rest) = bytes.split_at(len);
        Ok((Self::from_bytes(head)?, rest))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, PacketError> {
        if bytes.len() < HEADER_LEN {
            return Err(PacketError::Truncated);
        }
        if &bytes[..4] != MAGIC {
            return Err(PacketError::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(PacketError::BadVersion(bytes[4]));
        }
        let family = match bytes[5] {
            0 => Family::Rs,
            1 => Family::Bch,
            f => return Err(PacketError::BadFamily(f)),
        };
        let m = bytes[6];
        let n = u16::from_be_bytes([bytes[7], bytes[8]]) as usize;
        let k = u16::from_be_bytes([bytes[9], bytes[10]]) as usize;
        let crc_id = bytes[11];
        let rho = bytes[12] as usize;
        if default_modulus(m as u32).is_none() || k > n {
            return Err(PacketError::BadParameters(format!("m = {m}, n = {n}, k = {k}")));
        }
        let width = symbol_width(family, m as u32);
        let expected = (n - k + rho) * width;
        let body = &bytes[HEADER_LEN..];
        if body.len() != expected {
            return Err(PacketError::BadLength {
                expected,
                got: body.len(),
            });
        }
        let mut symbols = unpack_symbols(body, width);
        let crc = symbols.split_off(n - k);
        let pkt = SyndromePacket {
            family,
            m,
            n,
            k,
            crc_id,
            syndrome: symbols,
            crc,
        };
        pkt.validate()?;
        Ok(pkt)
    }
}

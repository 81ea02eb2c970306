//! The syndrome encoder and the side-information decoder.
//!
//! The encoder sends `s = H·xᵀ` and a checksum of `x`. The decoder picks one
//! vector `a` with syndrome `s`, list decodes `y - a` in the code, shifts
//! the list back by `a`, and keeps the candidate whose checksum matches.

mod feedback;
mod packet;

pub use feedback::{
    feedback_run, write_transcript_csv, FeedbackDecoder, FeedbackRun, FeedbackSession, Increment, RoundRecord,
    TRANSCRIPT_HEADER,
};
pub use packet::{alphabet, pack_symbols, symbol_width, unpack_symbols, PacketError, SyndromePacket, HEADER_LEN, MAGIC, VERSION};

use std::fmt;

use thiserror::Error;

use crate::bchcode::{bch_ladder, build_bch, BchCode};
use crate::crc::{crc_compute, crc_select, CrcError, CrcSelection, CrcSpec};
use crate::gf::{hamming_weight, vec_add, Field, Symbol};
use crate::listdecode::{
    coset_ball, gs_list_decode, gs_radius, GsConfig, LinearCode, ListDecodeError, ListDecodeResult,
};
use crate::planner::Family;
use crate::rscode::{check_len, check_symbols, CodeError, RsCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Crc(#[from] CrcError),
    #[error(transparent)]
    Packet(#[from] PacketError),
    #[error(transparent)]
    Decode(#[from] ListDecodeError),
    #[error("malformed packet: {0}")]
    Malformed(String),
    #[error("feedback ladder exhausted")]
    LadderExhausted,
}

/// A code usable by the codec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Code {
    Rs(RsCode),
    Bch(BchCode),
}

impl Code {
    pub fn rs(m: u32, k: usize) -> Result<Self, CodeError> {
        Ok(Code::Rs(RsCode::new(Field::new(m)?, k)?))
    }

    /// The BCH code of length `2^m - 1` and dimension `k`, built from its
    /// Bose distance.
    pub fn bch(m: u32, k: usize) -> Result<Self, CodeError> {
        let p = bch_ladder(m)?
            .into_iter()
            .find(|p| p.k == k)
            .ok_or_else(|| CodeError::InvalidParameters(format!("no BCH code with n = 2^{m}-1, k = {k}")))?;
        Ok(Code::Bch(build_bch(m, p.delta)?))
    }

    pub fn from_packet(pkt: &SyndromePacket) -> Result<Self, CodecError> {
        pkt.validate()?;
        Ok(match pkt.family {
            Family::Rs => Self::rs(pkt.m as u32, pkt.k)?,
            Family::Bch => Self::bch(pkt.m as u32, pkt.k)?,
        })
    }

    pub fn family(&self) -> Family {
        match self {
            Code::Rs(_) => Family::Rs,
            Code::Bch(_) => Family::Bch,
        }
    }

    /// Locator field degree.
    pub fn m(&self) -> u32 {
        match self {
            Code::Rs(c) => c.field().degree(),
            Code::Bch(c) => c.locator_field().degree(),
        }
    }

    pub fn n(&self) -> usize {
        self.block_len()
    }

    pub fn k(&self) -> usize {
        self.dimension()
    }

    pub fn redundancy(&self) -> usize {
        self.n() - self.k()
    }

    pub fn syndrome(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.syndrome_of(x)
    }

    /// Radius of the list decoder used by [`decode`] at `multiplicity`.
    pub fn runtime_radius(&self, multiplicity: usize) -> Result<usize, ListDecodeError> {
        match self {
            Code::Rs(c) => gs_radius(c.n(), c.k(), multiplicity),
            Code::Bch(c) => gs_radius(c.n(), c.supercode().k(), multiplicity),
        }
    }

    pub fn list_decode(&self, r: &[Symbol], cfg: &GsConfig) -> Result<ListDecodeResult, ListDecodeError> {
        match self {
            Code::Rs(c) => gs_list_decode(r, c, cfg),
            Code::Bch(c) => c.list_decode(r, self.runtime_radius(cfg.multiplicity)?, cfg),
        }
    }
}

impl LinearCode for Code {
    fn symbol_field(&self) -> &Field {
        match self {
            Code::Rs(c) => c.field(),
            Code::Bch(c) => c.symbol_field(),
        }
    }
    fn block_len(&self) -> usize {
        match self {
            Code::Rs(c) => c.n(),
            Code::Bch(c) => c.n(),
        }
    }
    fn dimension(&self) -> usize {
        match self {
            Code::Rs(c) => c.k(),
            Code::Bch(c) => c.k(),
        }
    }
    fn basis(&self) -> Vec<Vec<Symbol>> {
        match self {
            Code::Rs(c) => c.basis(),
            Code::Bch(c) => c.basis(),
        }
    }
    fn syndrome_of(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        match self {
            Code::Rs(c) => c.syndrome(x),
            Code::Bch(c) => c.syndrome(x),
        }
    }
    fn coset_member(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        match self {
            Code::Rs(c) => c.coset_representative(s),
            Code::Bch(c) => c.coset_representative(s),
        }
    }
}

fn check_crc_field(code: &Code, crc: &CrcSpec) -> Result<(), CodecError> {
    if crc.field() != code.symbol_field() {
        return Err(CodecError::Malformed(format!(
            "CRC {} is over {:?}, code symbols are in {:?}",
            crc.id(),
            crc.field(),
            code.symbol_field()
        )));
    }
    Ok(())
}

/// Syndrome and checksum of the source block `x`.
pub fn encode(x: &[Symbol], code: &Code, crc: &CrcSpec) -> Result<SyndromePacket, CodecError> {
    check_crc_field(code, crc)?;
    check_len(code.n(), x.len())?;
    check_symbols(x, code.symbol_field().size())?;
    Ok(SyndromePacket {
        family: code.family(),
        m: code.m() as u8,
        n: code.n(),
        k: code.k(),
        crc_id: crc.id(),
        syndrome: code.syndrome(x)?,
        crc: crc_compute(x, crc),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    ListEmpty,
    NoCrcMatch,
    AmbiguousCrc,
    ListOverflow,
}

impl DecodeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecodeStatus::Success => "SUCCESS",
            DecodeStatus::ListEmpty => "LIST_EMPTY",
            DecodeStatus::NoCrcMatch => "NO_CRC_MATCH",
            DecodeStatus::AmbiguousCrc => "AMBIGUOUS_CRC",
            DecodeStatus::ListOverflow => "LIST_OVERFLOW",
        }
    }
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// Present exactly on success.
    pub recovered: Option<Vec<Symbol>>,
    /// Source candidates in the coset within the radius, ascending by
    /// distance to `y` then lexicographically by the shifted codeword.
    pub candidates: Vec<Vec<Symbol>>,
    pub list_size: usize,
    pub radius_used: usize,
    /// Distance from the recovered block to the side information.
    pub distance: Option<usize>,
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }
}

fn check_packet(pkt: &SyndromePacket, y: &[Symbol]) -> Result<(Code, CrcSpec), CodecError> {
    let code = Code::from_packet(pkt)?;
    let crc = CrcSpec::from_id(pkt.crc_id, code.symbol_field())?;
    if crc.rho() != pkt.rho() {
        return Err(CodecError::Malformed(format!(
            "CRC id {} has {} symbols, packet carries {}",
            pkt.crc_id,
            crc.rho(),
            pkt.rho()
        )));
    }
    check_len(code.n(), y.len())?;
    check_symbols(y, code.symbol_field().size())?;
    Ok((code, crc))
}

fn select(candidates: Vec<Vec<Symbol>>, distances: Vec<usize>, pkt: &SyndromePacket, crc: &CrcSpec, radius: usize) -> DecodeOutcome {
    let list_size = candidates.len();
    let (status, pick) = if candidates.is_empty() {
        (DecodeStatus::ListEmpty, None)
    } else {
        match crc_select(&candidates, &pkt.crc, crc) {
            CrcSelection::Unique(i) => (DecodeStatus::Success, Some(i)),
            CrcSelection::NoMatch => (DecodeStatus::NoCrcMatch, None),
            CrcSelection::Ambiguous(_) => (DecodeStatus::AmbiguousCrc, None),
        }
    };
    DecodeOutcome {
        status,
        recovered: pick.map(|i| candidates[i].clone()),
        distance: pick.map(|i| distances[i]),
        candidates,
        list_size,
        radius_used: radius,
    }
}

fn overflow(found: usize, radius: usize) -> DecodeOutcome {
    DecodeOutcome {
        status: DecodeStatus::ListOverflow,
        recovered: None,
        candidates: Vec::new(),
        list_size: found,
        radius_used: radius,
        distance: None,
    }
}

/// Recover the source block from its packet and the side information by
/// shifting to the coset representative and list decoding.
pub fn decode(pkt: &SyndromePacket, y: &[Symbol], cfg: &GsConfig) -> Result<DecodeOutcome, CodecError> {
    let (code, crc) = check_packet(pkt, y)?;
    decode_checked(&code, &crc, pkt, y, cfg)
}

/// [`decode`] with the code and CRC already built and checked against
/// the packet, so repeated decodes can reuse them.
pub(crate) fn decode_checked(
    code: &Code,
    crc: &CrcSpec,
    pkt: &SyndromePacket,
    y: &[Symbol],
    cfg: &GsConfig,
) -> Result<DecodeOutcome, CodecError> {
    let radius = code.runtime_radius(cfg.multiplicity)?;
    let a = code.coset_member(&pkt.syndrome)?;
    let shifted = vec_add(y, &a);
    let list = match code.list_decode(&shifted, cfg) {
        Ok(list) => list,
        Err(ListDecodeError::ListOverflow { found, .. }) => return Ok(overflow(found, radius)),
        Err(e) => return Err(e.into()),
    };
    let distances = list.candidates.iter().map(|c| c.distance).collect();
    let candidates = list
        .candidates
        .into_iter()
        .map(|c| vec_add(&c.word, &a))
        .collect();
    Ok(select(candidates, distances, pkt, crc, list.radius_used))
}

/// Exhaustive counterpart of [`decode`]: enumerate the noise vectors `u`
/// of weight at most `radius` with `H·uᵀ = H·yᵀ - s`, and offer `y - u`.
/// More than `max_list` candidates is reported as an overflow. Only for
/// codes small enough for the coset oracle.
pub fn decode_oracle(
    pkt: &SyndromePacket,
    y: &[Symbol],
    radius: usize,
    max_list: usize,
) -> Result<DecodeOutcome, CodecError> {
    let (code, crc) = check_packet(pkt, y)?;
    let s_u = vec_add(&code.syndrome(y)?, &pkt.syndrome);
    let noise = coset_ball(&s_u, &code, radius)?;
    if noise.len() > max_list {
        return Ok(overflow(noise.len(), radius));
    }
    let mut scored: Vec<(usize, Vec<Symbol>, Vec<Symbol>)> = noise
        .into_iter()
        .map(|u| {
            let x = vec_add(y, &u);
            let c = vec_add(&x, &code.coset_member(&pkt.syndrome).expect("checked syndrome"));
            (hamming_weight(&u), c, x)
        })
        .collect();
    scored.sort();
    let distances = scored.iter().map(|s| s.0).collect();
    let candidates = scored.into_iter().map(|s| s.2).collect();
    Ok(select(candidates, distances, pkt, &crc, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::add_exact_errors;
    use crate::gf::hamming_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_block(n: usize, q: usize, rng: &mut ChaCha8Rng) -> Vec<Symbol> {
        (0..n).map(|_| rng.gen_range(0..q as Symbol)).collect()
    }

    #[test]
    fn zero_block_has_zero_packet() {
        let code = Code::rs(8, 88).unwrap();
        let crc = CrcSpec::quadratic(Field::new(8).unwrap());
        let pkt = encode(&[0; 255], &code, &crc).unwrap();
        assert!(pkt.syndrome.iter().all(|&s| s == 0));
        assert_eq!(pkt.crc, vec![0, 0]);
        assert_eq!(pkt.payload_symbols(), 169);
    }

    #[test]
    fn codeword_has_zero_syndrome() {
        let Code::Rs(rs) = Code::rs(4, 7).unwrap() else { unreachable!() };
        let code = Code::Rs(rs.clone());
        let crc = CrcSpec::quadratic(rs.field().clone());
        let c = rs.encode(&[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let pkt = encode(&c, &code, &crc).unwrap();
        assert!(pkt.syndrome.iter().all(|&s| s == 0));
        assert_eq!(pkt.crc, crc_compute(&c, &crc));
    }

    #[test]
    fn noiseless_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let code = Code::rs(8, 128).unwrap();
        let crc = CrcSpec::quadratic(Field::new(8).unwrap());
        let x = random_block(255, 256, &mut rng);
        let pkt = encode(&x, &code, &crc).unwrap();
        let out = decode(&pkt, &x, &GsConfig::with_multiplicity(4)).unwrap();
        assert!(out.is_success());
        assert_eq!(out.recovered.as_deref(), Some(&x[..]));
        assert_eq!(out.distance, Some(0));
    }

    #[test]
    fn bch_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let code = Code::bch(4, 7).unwrap();
        let crc = CrcSpec::none(Field::new(1).unwrap());
        for _ in 0..50 {
            let x = random_block(15, 2, &mut rng);
            let y = add_exact_errors(&x, 2, 2, &mut rng);
            let pkt = encode(&x, &code, &crc).unwrap();
            let out = decode(&pkt, &y, &GsConfig::default()).unwrap();
            assert_eq!(out.recovered.as_deref(), Some(&x[..]));
        }
    }

    #[test]
    fn approaches_agree_on_small_rs() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let code = Code::rs(4, 7).unwrap();
        let crc = CrcSpec::quadratic(Field::new(4).unwrap());
        let cfg = GsConfig::with_multiplicity(4);
        let radius = code.runtime_radius(4).unwrap();
        for _ in 0..50 {
            let x = random_block(15, 16, &mut rng);
            let e = rng.gen_range(0..=radius + 1);
            let y = add_exact_errors(&x, e, 16, &mut rng);
            let pkt = encode(&x, &code, &crc).unwrap();
            let a = decode(&pkt, &y, &cfg).unwrap();
            let b = decode_oracle(&pkt, &y, radius, cfg.max_list).unwrap();
            let mut ca = a.candidates.clone();
            let mut cb = b.candidates.clone();
            ca.sort();
            cb.sort();
            assert_eq!(ca, cb);
            assert_eq!(a.status, b.status);
            assert_eq!(a.recovered, b.recovered);
            for c in &ca {
                assert!(hamming_distance(c, &y) <= radius);
            }
        }
    }

    #[test]
    fn oracle_in_coset_returns_y() {
        let code = Code::rs(4, 7).unwrap();
        let crc = CrcSpec::quadratic(Field::new(4).unwrap());
        let y: Vec<Symbol> = (0..15).collect();
        let pkt = encode(&y, &code, &crc).unwrap();
        let out = decode_oracle(&pkt, &y, 3, 64).unwrap();
        assert_eq!(out.candidates[0], y);
        assert!(out.is_success());
    }

    #[test]
    fn malformed_packets_are_faults() {
        let code = Code::rs(4, 7).unwrap();
        let crc = CrcSpec::quadratic(Field::new(4).unwrap());
        let x = vec![0; 15];
        let mut pkt = encode(&x, &code, &crc).unwrap();
        pkt.crc_id = 42;
        assert!(matches!(decode(&pkt, &x, &GsConfig::default()), Err(CodecError::Crc(_))));
        let mut pkt = encode(&x, &code, &crc).unwrap();
        pkt.crc.push(0);
        assert!(matches!(decode(&pkt, &x, &GsConfig::default()), Err(CodecError::Malformed(_))));
        assert!(encode(&x, &code, &CrcSpec::crc12()).is_err());
    }
}

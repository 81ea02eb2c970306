use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swld::codec::{alphabet, encode, Code, SyndromePacket};
use swld::crc::CrcSpec;
use swld::gf::{Field, Symbol};
use swld::planner::Family;

fn random_packet(family: Family, rng: &mut ChaCha8Rng) -> SyndromePacket {
    let m = *[2u8, 3, 4, 8, 10].get(rng.gen_range(0..5)).unwrap();
    let n = (1usize << m) - 1;
    let k = rng.gen_range(1..=n);
    let q = alphabet(family, m as u32);
    let rho = rng.gen_range(0..=16);
    let mut sym = |len: usize| -> Vec<Symbol> { (0..len).map(|_| rng.gen_range(0..q) as Symbol).collect() };
    SyndromePacket {
        family,
        m,
        n,
        k,
        crc_id: 0,
        syndrome: sym(n - k),
        crc: sym(rho),
    }
}

#[test]
fn random_packets_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    for family in [Family::Rs, Family::Bch] {
        for _ in 0..1000 {
            let pkt = random_packet(family, &mut rng);
            let bytes = pkt.to_bytes().unwrap();
            let back = SyndromePacket::from_bytes(&bytes).unwrap();
            assert_eq!(back, pkt);
            assert_eq!(back.to_bytes().unwrap(), bytes);
        }
    }
}

/// The packet stored in `fixtures/golden_rs.bin`.
fn golden_rs() -> SyndromePacket {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let x: Vec<Symbol> = (0..255).map(|_| rng.gen_range(0..256)).collect();
    let code = Code::rs(8, 88).unwrap();
    encode(&x, &code, &CrcSpec::quadratic(Field::new(8).unwrap())).unwrap()
}

/// The packet stored in `fixtures/golden_bch.bin`.
fn golden_bch() -> SyndromePacket {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let x: Vec<Symbol> = (0..1023).map(|_| rng.gen_range(0..2)).collect();
    encode(&x, &Code::bch(10, 56).unwrap(), &CrcSpec::crc12()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn check_golden(name: &str, pkt: SyndromePacket) {
    let bytes = pkt.to_bytes().unwrap();
    if std::env::var_os("SWLD_BLESS").is_some() {
        std::fs::write(fixture(name), &bytes).unwrap();
    }
    let stored = std::fs::read(fixture(name)).unwrap();
    assert_eq!(bytes, stored);
    assert_eq!(SyndromePacket::from_bytes(&stored).unwrap(), pkt);
}

#[test]
fn golden_rs_packet() {
    check_golden("golden_rs.bin", golden_rs());
}

#[test]
fn golden_bch_packet() {
    check_golden("golden_bch.bin", golden_bch());
}

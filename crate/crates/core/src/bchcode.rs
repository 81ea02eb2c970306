//! Narrow-sense primitive binary BCH codes.
//!
//! The generator is the product of the minimal polynomials of the cyclotomic
//! cosets meeting `{1, …, δ-1}`. Viewed over GF(2^m), every codeword is a
//! codeword of the Reed-Solomon code with zeros `α^1 … α^{δ-1}`, which is
//! what list decoding works with.
//!
//! Two syndromes are exposed. [`BchCode::syndrome`] is the binary remainder
//! `x(ξ) mod g(ξ)` (n - k bits, what a packet carries). [`BchCode::bch_syndrome`]
//! is the vector of `δ - 1` evaluations `x(α^i)` over the locator field.

use std::collections::BTreeSet;

use crate::gf::{hamming_distance, Field, Poly, Symbol};
use crate::listdecode::{self, GsConfig, ListDecodeError, ListDecodeResult};
use crate::rscode::{check_len, check_symbols, CodeError, RsCode};

/// The cyclotomic coset of `s` modulo `n` under doubling, ascending.
pub fn cyclotomic_coset(s: usize, n: usize) -> Vec<usize> {
    let mut out = BTreeSet::new();
    let mut e = s % n;
    while out.insert(e) {
        e = (2 * e) % n;
    }
    out.into_iter().collect()
}

/// A (Bose distance, dimension) pair of the binary BCH family at length n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BchParams {
    pub delta: usize,
    pub k: usize,
}

/// Every distinct narrow-sense primitive BCH code of length `2^m - 1`,
/// listed by increasing Bose distance (so by decreasing dimension).
pub fn bch_ladder(m: u32) -> Result<Vec<BchParams>, CodeError> {
    let field = Field::new(m)?;
    let n = field.order();
    let mut covered = vec![false; n];
    let mut zeros = 0;
    let mut out = Vec::new();
    for delta in 2..=n {
        if !covered[delta - 1] {
            for e in cyclotomic_coset(delta - 1, n) {
                covered[e] = true;
                zeros += 1;
            }
        }
        if delta == n || !covered[delta] {
            out.push(BchParams { delta, k: n - zeros });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BchCode {
    field: Field,
    binary: Field,
    n: usize,
    designed: usize,
    bose: usize,
    k: usize,
    /// Binary generator coefficients, low degree first.
    gen: Vec<Symbol>,
    supercode: RsCode,
}

/// Build the code of designed distance `delta` over GF(2^m).
pub fn build_bch(m: u32, delta: usize) -> Result<BchCode, CodeError> {
    let field = Field::new(m)?;
    let n = field.order();
    if !(2..=n).contains(&delta) {
        return Err(CodeError::InvalidParameters(format!(
            "designed distance {delta} outside [2, {n}]"
        )));
    }
    let mut covered = vec![false; n];
    let mut gen = Poly::one();
    for s in 1..delta {
        if covered[s] {
            continue;
        }
        let coset = cyclotomic_coset(s, n);
        let mut minpoly = Poly::one();
        for &e in &coset {
            covered[e] = true;
            minpoly = minpoly.mul(&Poly::from_coeffs(vec![field.exp(e), 1]), &field);
        }
        gen = gen.mul(&minpoly, &field);
    }
    let gen = gen.into_coeffs();
    debug_assert!(gen.iter().all(|&c| c <= 1));
    let bose = (delta..n).find(|&b| !covered[b]).unwrap_or(n);
    let k = n - (gen.len() - 1);
    let supercode = RsCode::new(field.clone(), n + 1 - delta)?;
    Ok(BchCode {
        field,
        binary: Field::new(1)?,
        n,
        designed: delta,
        bose,
        k,
        gen,
        supercode,
    })
}

impl BchCode {
    /// GF(2^m), where the code's zeros live.
    pub fn locator_field(&self) -> &Field {
        &self.field
    }

    /// GF(2), the symbol field of codewords and packet syndromes.
    pub fn symbol_field(&self) -> &Field {
        &self.binary
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn designed_distance(&self) -> usize {
        self.designed
    }

    /// Largest `b` such that `α^1 … α^{b-1}` are all zeros of the code.
    pub fn bose_distance(&self) -> usize {
        self.bose
    }

    /// Designed relative distance `δ/n`.
    pub fn relative_distance(&self) -> f64 {
        self.designed as f64 / self.n as f64
    }

    /// `⌊(δ-1)/2⌋` with the designed δ.
    pub fn unique_radius(&self) -> usize {
        (self.designed - 1) / 2
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &[Symbol] {
        &self.gen
    }

    /// The RS code over GF(2^m) with zeros `α^1 … α^{δ-1}`.
    pub fn supercode(&self) -> &RsCode {
        &self.supercode
    }

    /// Non-systematic encoding `u(ξ)·g(ξ)`.
    pub fn encode(&self, u: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.k, u.len())?;
        check_symbols(u, 2)?;
        let mut c = vec![0; self.n];
        for (i, _) in u.iter().enumerate().filter(|(_, &b)| b == 1) {
            for (j, &g) in self.gen.iter().enumerate() {
                c[i + j] ^= g;
            }
        }
        Ok(c)
    }

    /// Rows `ξ^i g(ξ)`, `0 <= i < k`.
    pub fn generator_matrix(&self) -> Vec<Vec<Symbol>> {
        (0..self.k)
            .map(|i| {
                let mut row = vec![0; self.n];
                row[i..i + self.gen.len()].copy_from_slice(&self.gen);
                row
            })
            .collect()
    }

    /// Binary remainder `x(ξ) mod g(ξ)` as `n - k` bits.
    pub fn syndrome(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.n, x.len())?;
        check_symbols(x, 2)?;
        let r = self.redundancy();
        let mut rem = x.to_vec();
        // g is monic, so long division is a sequence of conditional XORs
        for i in (r..self.n).rev() {
            if rem[i] == 1 {
                for (j, &g) in self.gen.iter().enumerate() {
                    rem[i - r + j] ^= g;
                }
            }
        }
        rem.truncate(r);
        Ok(rem)
    }

    /// `x(α^{i+1})` for `0 <= i < δ - 1`.
    pub fn bch_syndrome(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.n, x.len())?;
        check_symbols(x, 2)?;
        self.supercode.syndrome(x)
    }

    pub fn is_codeword(&self, x: &[Symbol]) -> bool {
        self.syndrome(x).is_ok_and(|s| s.iter().all(|&b| b == 0))
    }

    /// A vector whose remainder is `s`: `s` itself, zero padded.
    pub fn coset_representative(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.redundancy(), s.len())?;
        check_symbols(s, 2)?;
        let mut a = s.to_vec();
        a.resize(self.n, 0);
        Ok(a)
    }

    /// All codewords within `radius` of the binary word `y`, found by
    /// list decoding `y` in the RS supercode and keeping binary results.
    /// Fails if the supercode decoder cannot reach `radius` at the
    /// configured multiplicity.
    pub fn list_decode(
        &self,
        y: &[Symbol],
        radius: usize,
        cfg: &GsConfig,
    ) -> Result<ListDecodeResult, ListDecodeError> {
        check_len(self.n, y.len())?;
        check_symbols(y, 2)?;
        let mut res = listdecode::gs_list_decode_within(y, &self.supercode, cfg, radius)?;
        res.candidates.retain(|c| c.word.iter().all(|&s| s <= 1));
        debug_assert!(res
            .candidates
            .iter()
            .all(|c| hamming_distance(&c.word, y) == c.distance && self.is_codeword(&c.word)));
        Ok(res)
    }
}

/// Free-function form of [`BchCode::list_decode`].
pub fn bch_list_decode(
    y: &[Symbol],
    code: &BchCode,
    radius: usize,
    cfg: &GsConfig,
) -> Result<ListDecodeResult, ListDecodeError> {
    code.list_decode(y, radius, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn as_vec(positions: &[usize], n: usize) -> Vec<Symbol> {
        let mut v = vec![0; n];
        for &p in positions {
            v[p] = 1;
        }
        v
    }

    #[test]
    fn cosets_mod_15() {
        assert_eq!(cyclotomic_coset(1, 15), vec![1, 2, 4, 8]);
        assert_eq!(cyclotomic_coset(3, 15), vec![3, 6, 9, 12]);
        assert_eq!(cyclotomic_coset(5, 15), vec![5, 10]);
        assert_eq!(cyclotomic_coset(0, 15), vec![0]);
    }

    #[test]
    fn bch_15_7() {
        let c = build_bch(4, 5).unwrap();
        assert_eq!((c.n(), c.k()), (15, 7));
        // ξ⁸+ξ⁷+ξ⁶+ξ⁴+1
        assert_eq!(c.generator(), &as_vec(&[0, 4, 6, 7, 8], 9)[..]);
        assert_eq!(c.bose_distance(), 5);
    }

    #[test]
    fn hamming_type_codes() {
        for m in [3, 4, 8, 10] {
            let c = build_bch(m, 2).unwrap();
            assert_eq!(c.k(), c.n() - m as usize);
            assert_eq!(c.bose_distance(), 3);
        }
    }

    #[test]
    fn length_1023_examples() {
        let c = build_bch(10, 383).unwrap();
        assert_eq!(c.k(), 56);
        let c = build_bch(10, 511).unwrap();
        assert_eq!(c.k(), 11);
    }

    #[test]
    fn generator_divides_xn_minus_1() {
        for (m, delta) in [(4, 5), (4, 7), (8, 11), (8, 33), (10, 383)] {
            let c = build_bch(m, delta).unwrap();
            let mut xn1 = vec![0; c.n() + 1];
            xn1[0] = 1;
            xn1[c.n()] = 1;
            let f = c.locator_field();
            let (_, rem) = Poly::from_coeffs(xn1)
                .div_rem(&Poly::from_coeffs(c.generator().to_vec()), f)
                .unwrap();
            assert!(rem.is_zero());
        }
    }

    #[test]
    fn ladder_matches_direct_construction() {
        let ladder = bch_ladder(8).unwrap();
        let mut prev_k = usize::MAX;
        for p in &ladder {
            let c = build_bch(8, p.delta).unwrap();
            assert_eq!(c.k(), p.k);
            assert_eq!(c.bose_distance(), p.delta);
            assert!(p.k < prev_k);
            prev_k = p.k;
        }
        let ladder = bch_ladder(10).unwrap();
        assert!(ladder.contains(&BchParams { delta: 383, k: 56 }));
        assert!(ladder.contains(&BchParams { delta: 511, k: 11 }));
    }

    #[test]
    fn dimension_non_increasing_in_delta() {
        let mut prev = usize::MAX;
        for delta in 2..=15 {
            let k = build_bch(4, delta).unwrap().k();
            assert!(k <= prev);
            prev = k;
        }
    }

    #[test]
    fn syndromes() {
        let c = build_bch(4, 5).unwrap();
        let f = c.locator_field();
        assert!(c.bch_syndrome(&[0; 15]).unwrap().iter().all(|&s| s == 0));
        let g = as_vec(&[0, 4, 6, 7, 8], 15);
        assert!(c.bch_syndrome(&g).unwrap().iter().all(|&s| s == 0));
        assert!(c.syndrome(&g).unwrap().iter().all(|&s| s == 0));
        for j in 0..15 {
            let s = c.bch_syndrome(&as_vec(&[j], 15)).unwrap();
            for (i, &v) in s.iter().enumerate() {
                assert_eq!(v, f.exp((i + 1) * j));
            }
        }
        assert!(c.syndrome(&[2; 15]).is_err());
    }

    #[test]
    fn subcode_of_supercode_exhaustive_15_7() {
        let c = build_bch(4, 5).unwrap();
        for msg in 0u32..128 {
            let u: Vec<Symbol> = (0..7).map(|i| ((msg >> i) & 1) as Symbol).collect();
            let cw = c.encode(&u).unwrap();
            assert!(c.supercode().is_codeword(&cw));
            assert!(c.is_codeword(&cw));
        }
    }

    #[test]
    fn subcode_of_supercode_random_1023() {
        let c = build_bch(10, 383).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let u: Vec<Symbol> = (0..c.k()).map(|_| rng.gen_range(0..2)).collect();
            let cw = c.encode(&u).unwrap();
            assert!(c.supercode().is_codeword(&cw));
        }
    }

    #[test]
    fn remainder_coset_representative() {
        let c = build_bch(4, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let x: Vec<Symbol> = (0..15).map(|_| rng.gen_range(0..2)).collect();
            let s = c.syndrome(&x).unwrap();
            let a = c.coset_representative(&s).unwrap();
            assert_eq!(c.syndrome(&a).unwrap(), s);
            let diff: Vec<Symbol> = a.iter().zip(&x).map(|(p, q)| p ^ q).collect();
            assert!(c.is_codeword(&diff));
        }
    }

    #[test]
    fn list_decode_codeword_at_radius_zero() {
        let c = build_bch(4, 5).unwrap();
        let cw = c.encode(&[1, 0, 1, 1, 0, 0, 1]).unwrap();
        let res = c.list_decode(&cw, 0, &GsConfig::default()).unwrap();
        assert_eq!(res.candidates.len(), 1);
        assert_eq!(res.candidates[0].word, cw);
    }

    #[test]
    fn list_decode_refuses_unreachable_radius() {
        let c = build_bch(4, 5).unwrap();
        let r = c.list_decode(&[0; 15], 4, &GsConfig::default());
        assert!(matches!(r, Err(ListDecodeError::RadiusUnsupported { .. })));
    }
}

use super::{Field, GfError, Symbol};

/// A univariate polynomial over GF(2^m); `coeffs[i]` is the coefficient of
/// `ξ^i`. Always normalized so the last stored coefficient is nonzero; the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Symbol>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Symbol>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `c · ξ^d`.
    pub fn monomial(c: Symbol, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Symbol] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Symbol> {
        self.coeffs
    }

    /// Coefficient of `ξ^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Symbol {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Symbol {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Coefficients padded (or truncated) to exactly `len` entries.
    pub fn to_padded(&self, len: usize) -> Vec<Symbol> {
        let mut v = self.coeffs.clone();
        v.resize(len, 0);
        v
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: Symbol, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul(a, b);
            }
        }
        Poly::from_coeffs(out)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: Symbol, f: &Field) -> Symbol {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Quotient and remainder of schoolbook long division.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly), GfError> {
        let dd = divisor.degree().ok_or(GfError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading());
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &g) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] ^= f.mul(factor, g);
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }
}

/// Remainder of `x` modulo `g`, `deg r < deg g`.
pub fn poly_mod(x: &Poly, g: &Poly, f: &Field) -> Result<Poly, GfError> {
    x.div_rem(g, f).map(|(_, r)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf16() -> Field {
        Field::new(4).unwrap()
    }

    fn poly_strategy(max_len: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(0u16..16, 0..max_len).prop_map(Poly::from_coeffs)
    }

    #[test]
    fn degree_convention() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_coeffs(vec![3, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::monomial(5, 4).degree(), Some(4));
    }

    #[test]
    fn mod_of_zero_and_self() {
        let f = gf16();
        let g = Poly::from_coeffs(vec![1, 2, 1]);
        assert!(poly_mod(&Poly::zero(), &g, &f).unwrap().is_zero());
        assert!(poly_mod(&g, &g, &f).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let f = gf16();
        assert_eq!(
            poly_mod(&Poly::one(), &Poly::zero(), &f),
            Err(GfError::DivisionByZero)
        );
    }

    #[test]
    fn eval_matches_naive_sum() {
        let f = gf16();
        let p = Poly::from_coeffs(vec![3, 7, 0, 9]);
        for x in 0..16 {
            let mut acc = 0;
            for (i, &c) in p.coeffs().iter().enumerate() {
                acc ^= f.mul(c, f.pow(x, i));
            }
            assert_eq!(p.eval(x, &f), acc);
        }
    }

    proptest! {
        #[test]
        fn mod_recovers_constructed_remainder(
            g in poly_strategy(5).prop_filter("nonzero, deg >= 1", |g| g.degree().unwrap_or(0) >= 1),
            w in poly_strategy(12),
            r_raw in proptest::collection::vec(0u16..16, 0..4),
        ) {
            let f = gf16();
            let dg = g.degree().unwrap();
            let r = Poly::from_coeffs(r_raw.into_iter().take(dg).collect());
            let x = g.mul(&w, &f).add(&r);
            prop_assert_eq!(poly_mod(&x, &g, &f).unwrap(), r);
        }

        #[test]
        fn mod_is_stable_under_multiples(
            x in poly_strategy(16),
            g in poly_strategy(5).prop_filter("nonzero", |g| !g.is_zero()),
            w in poly_strategy(8),
        ) {
            let f = gf16();
            let shifted = x.add(&g.mul(&w, &f));
            prop_assert_eq!(poly_mod(&shifted, &g, &f).unwrap(), poly_mod(&x, &g, &f).unwrap());
        }

        #[test]
        fn div_rem_reconstructs(x in poly_strategy(16), g in poly_strategy(6).prop_filter("nonzero", |g| !g.is_zero())) {
            let f = gf16();
            let (q, r) = x.div_rem(&g, &f).unwrap();
            prop_assert_eq!(q.mul(&g, &f).add(&r), x);
            prop_assert!(r.degree() < g.degree());
        }
    }
}

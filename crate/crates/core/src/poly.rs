//! Dense polynomials over the two-element field, packed 64 coefficients per
//! word. Bit `i` of `words[i / 64]` is the coefficient of `x^i`.

use std::fmt;

/// A polynomial over GF(2). The zero polynomial is the empty word vector;
/// nonzero polynomials never carry trailing zero words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        BinaryPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinaryPoly { words: vec![1] }
    }

    /// Build from 0/1 coefficients, lowest degree first.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            debug_assert!(b <= 1);
            if b == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut poly = BinaryPoly { words };
        poly.trim();
        poly
    }

    /// Build by toggling the listed exponents; an exponent appearing an even
    /// number of times cancels out.
    pub fn from_exponents(exponents: impl IntoIterator<Item = u64>) -> Self {
        let mut words: Vec<u64> = Vec::new();
        for e in exponents {
            let e = usize::try_from(e).expect("exponent too large");
            if words.len() <= e / 64 {
                words.resize(e / 64 + 1, 0);
            }
            words[e / 64] ^= 1 << (e % 64);
        }
        let mut poly = BinaryPoly { words };
        poly.trim();
        poly
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(n: u64) -> Self {
        Self::from_exponents([0, n])
    }

    /// The layer polynomial `1 + x^(p^n) + x^(2 p^n) + ... + x^((p-1) p^n)`,
    /// whose roots are exactly the primitive `p^(n+1)`-th roots of unity.
    pub fn cyclotomic_layer(p: u64, n: u32) -> Self {
        let step = p.checked_pow(n).expect("p^n overflows u64");
        Self::from_exponents((0..p).map(|k| k * step))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let w = self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - w.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Value at `x = 1`, i.e. the parity of the coefficient count.
    pub fn eval_at_one(&self) -> u8 {
        (self.weight() & 1) as u8
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// `self ^= other << shift` (shift in bit positions).
    pub fn xor_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + word_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                self.words[i + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        self.trim();
    }

    /// Remainder of `self` divided by `divisor`. Panics on a zero divisor.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            r.xor_shifted(divisor, rd - d);
        }
        r
    }

    /// Greatest common divisor by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({self})")
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_degree() {
        assert!(BinaryPoly::zero().is_zero());
        assert_eq!(BinaryPoly::zero().degree(), None);
        assert_eq!(BinaryPoly::one().degree(), Some(0));
        assert_eq!(BinaryPoly::from_bits(&[1, 1, 0, 1]).degree(), Some(3));
        assert_eq!(BinaryPoly::from_bits(&[0, 0, 0]), BinaryPoly::zero());
        assert_eq!(BinaryPoly::x_pow_plus_one(121).degree(), Some(121));
        // Toggling twice cancels.
        assert_eq!(BinaryPoly::from_exponents([5, 3, 5]).degree(), Some(3));
    }

    #[test]
    fn layer_polynomial_shape() {
        let phi = BinaryPoly::cyclotomic_layer(5, 1); // 1 + x^5 + x^10 + x^15 + x^20
        assert_eq!(phi.degree(), Some(20));
        assert_eq!(phi.weight(), 5);
        assert!(phi.coeff(10) && !phi.coeff(3));
        // (x^(p^(n+1)) + 1) = (x^(p^n) + 1) * layer
        let lhs = BinaryPoly::x_pow_plus_one(25);
        assert!(lhs.rem(&phi).rem(&BinaryPoly::x_pow_plus_one(5)).is_zero());
    }

    #[test]
    fn rem_small_cases() {
        // x^3 + 1 = (x + 1)(x^2 + x + 1)
        let x3p1 = BinaryPoly::x_pow_plus_one(3);
        let xp1 = BinaryPoly::x_pow_plus_one(1);
        assert!(x3p1.rem(&xp1).is_zero());
        let quad = BinaryPoly::from_bits(&[1, 1, 1]);
        assert!(x3p1.rem(&quad).is_zero());
        assert_eq!(quad.rem(&xp1), BinaryPoly::one());
    }

    #[test]
    fn gcd_small_cases() {
        let s = BinaryPoly::from_bits(&[1, 1]); // 1 + x
        let m = BinaryPoly::x_pow_plus_one(3);
        assert_eq!(BinaryPoly::gcd(&s, &m), s);
        assert_eq!(BinaryPoly::gcd(&BinaryPoly::zero(), &m), m);
        assert_eq!(BinaryPoly::gcd(&BinaryPoly::one(), &m).degree(), Some(0));
    }

    #[test]
    fn display_formatting() {
        let p = BinaryPoly::from_exponents([9, 5, 0]);
        assert_eq!(p.to_string(), "x^9 + x^5 + 1");
        assert_eq!(BinaryPoly::zero().to_string(), "0");
        assert_eq!(BinaryPoly::from_exponents([1]).to_string(), "x");
    }

    #[test]
    fn xor_shifted_across_word_boundary() {
        let mut a = BinaryPoly::from_exponents([0]);
        a.xor_shifted(&BinaryPoly::from_exponents([63, 1]), 63);
        assert_eq!(a, BinaryPoly::from_exponents([0, 64, 126]));
    }
}

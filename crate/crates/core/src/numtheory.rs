//! Exact modular arithmetic on 64-bit words and the number-theoretic
//! predicates that gate the fast complexity engines.
//!
//! All intermediate products go through 128-bit arithmetic, so any modulus
//! that fits in a `u64` is safe. Primality is deterministic trial division;
//! inputs here are desk-scale by design.

use serde::Serialize;

use crate::error::{Error, Result};

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    let mut result = 1u64;
    let mut base = base % modulus;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    result
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `u` modulo `modulus`, by the extended Euclidean algorithm.
pub fn mod_inv(u: u64, modulus: u64) -> Result<u64> {
    assert!(modulus >= 2, "modulus must be at least 2");
    let (mut r0, mut r1) = (modulus as i128, (u % modulus) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { value: u, modulus });
    }
    Ok(t0.rem_euclid(modulus as i128) as u64)
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization `[(prime, exponent), ...]` in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient via trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// All divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Smallest `t >= 1` with `a^t = 1 (mod modulus)`.
///
/// Starts from the group order and strips prime factors, so it costs a
/// handful of exponentiations rather than a scan.
pub fn multiplicative_order(a: u64, modulus: u64) -> Result<u64> {
    assert!(modulus >= 2, "modulus must be at least 2");
    if gcd(a % modulus, modulus) != 1 {
        return Err(Error::NotInvertible { value: a, modulus });
    }
    let mut t = euler_phi(modulus);
    for (q, _) in factorize(t) {
        while t.is_multiple_of(q) && mod_pow(a, t / q, modulus) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// Smallest primitive root modulo `p^j` for an odd prime `p`.
///
/// A residue `g` is primitive iff `g^(phi/q) != 1` for every prime `q`
/// dividing `phi(p^j)`. For `j = 2` the returned root is primitive modulo
/// `p^j` for every `j >= 1`.
pub fn find_primitive_root(p: u64, j: u32) -> u64 {
    debug_assert!(is_prime(p) && p % 2 == 1);
    let modulus = p.checked_pow(j).expect("p^j overflows u64");
    let phi = p.pow(j - 1) * (p - 1);
    let test_exponents: Vec<u64> = factorize(phi).iter().map(|&(q, _)| phi / q).collect();
    'next: for g in 2..modulus {
        if g % p == 0 {
            continue;
        }
        for &e in &test_exponents {
            if mod_pow(g, e, modulus) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("primitive roots exist for every odd prime power")
}

/// True iff `2^(p-1) = 1 (mod p^2)`.
pub fn is_wieferich(p: u64) -> bool {
    debug_assert!(is_prime(p) && p % 2 == 1);
    let p2 = p.checked_mul(p).expect("p^2 overflows u64");
    mod_pow(2, p - 1, p2) == 1
}

/// The two predicates required by the fast complexity engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    /// `2^(p-1) = 1 (mod p^2)`: when true the fast engines refuse.
    pub wieferich: bool,
    /// `gcd((p-1)/ord_p(2), f) = 1`.
    pub gcd_ok: bool,
}

impl AssumptionReport {
    /// Both conditions hold, so the fast engines apply.
    pub fn satisfied(&self) -> bool {
        !self.wieferich && self.gcd_ok
    }
}

/// Evaluate both engine assumptions for `(p, f)`. Errors if `f` does not
/// divide `p - 1`.
pub fn check_assumptions(p: u64, f: u64) -> Result<AssumptionReport> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotOddPrime(p));
    }
    if f == 0 || !(p - 1).is_multiple_of(f) {
        return Err(Error::BadCofactor { f, pm1: p - 1 });
    }
    let ord2 = multiplicative_order(2, p)?;
    Ok(AssumptionReport {
        wieferich: is_wieferich(p),
        gcd_ok: gcd((p - 1) / ord2, f) == 1,
    })
}

/// The arithmetic frame shared by every module: an odd prime `p`, a period
/// exponent `r`, the factorization `p - 1 = e * f`, a primitive root `g`
/// modulo `p^2` (hence modulo every `p^j`), and the derived facts the
/// engines consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    p: u64,
    r: u32,
    e: u64,
    f: u64,
    g: u64,
    ord2: u64,
    wieferich: bool,
}

impl Params {
    /// Validate `(p, r, f)` and pick the smallest primitive root modulo
    /// `p^2`, so outputs are reproducible across runs.
    pub fn new(p: u64, r: u32, f: u64) -> Result<Self> {
        Self::validate_frame(p, r, f)?;
        Self::with_g(p, r, f, find_primitive_root(p, 2))
    }

    /// Same as [`Params::new`] but with a caller-chosen primitive root.
    ///
    /// `g` is kept exactly as given: its residue modulo `p^j` matters at
    /// every level `j <= r`, so it must not be reduced modulo `p^2` here.
    pub fn with_g(p: u64, r: u32, f: u64, g: u64) -> Result<Self> {
        Self::validate_frame(p, r, f)?;
        let p2 = p * p;
        if g == 0 || g.is_multiple_of(p) || multiplicative_order(g % p2, p2)? != p * (p - 1) {
            return Err(Error::NotPrimitiveRoot { g, modulus: p2 });
        }
        Ok(Params {
            p,
            r,
            e: (p - 1) / f,
            f,
            g,
            ord2: multiplicative_order(2, p)?,
            wieferich: is_wieferich(p),
        })
    }

    fn validate_frame(p: u64, r: u32, f: u64) -> Result<()> {
        if !is_prime(p) || p == 2 {
            return Err(Error::NotOddPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroExponent);
        }
        if f == 0 || !(p - 1).is_multiple_of(f) {
            return Err(Error::BadCofactor { f, pm1: p - 1 });
        }
        if p.checked_pow(r).is_none() {
            return Err(Error::PeriodTooLarge { p, r });
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    /// Multiplicative order of 2 modulo `p`.
    pub fn ord2(&self) -> u64 {
        self.ord2
    }

    pub fn wieferich(&self) -> bool {
        self.wieferich
    }

    /// The period `p^r`.
    pub fn period(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// `p^j`, asserting it fits.
    pub fn pow_p(&self, j: u32) -> u64 {
        self.p.checked_pow(j).expect("p^j overflows u64")
    }

    /// Number of cyclotomic classes at level `j`: `f * p^(j-1)`.
    pub fn index_modulus(&self, j: u32) -> u64 {
        self.f * self.pow_p(j - 1)
    }

    pub fn assumptions(&self) -> AssumptionReport {
        AssumptionReport {
            wieferich: self.wieferich,
            gcd_ok: gcd((self.p - 1) / self.ord2, self.f) == 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: scan for the inverse.
    fn inv_by_scan(u: u64, m: u64) -> Option<u64> {
        (1..m).find(|&v| (u as u128 * v as u128) % m as u128 == 1)
    }

    /// Brute-force oracle: scan for the order.
    fn order_by_scan(a: u64, m: u64) -> u64 {
        let mut x = a % m;
        let mut t = 1;
        while x != 1 {
            x = mul_mod(x, a, m);
            t += 1;
        }
        t
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 10, 121), 56); // 1024 - 8*121
        assert_eq!(mod_pow(7, 0, 25), 1);
        assert_eq!(mod_pow(2, 4, 25), 16);
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(1, 17).unwrap(), 1);
        assert_eq!(mod_inv(2, 5).unwrap(), 3);
        assert_eq!(mod_inv(7, 25).unwrap(), 18);
        assert_eq!(inv_by_scan(7, 25), Some(18));
        assert!(matches!(
            mod_inv(10, 25),
            Err(Error::NotInvertible {
                value: 10,
                modulus: 25
            })
        ));
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 11).unwrap(), 10);
        assert_eq!(multiplicative_order(1, 9).unwrap(), 1);
        assert!(multiplicative_order(6, 9).is_err());
    }

    #[test]
    fn multiplicative_order_matches_scan() {
        for m in [5u64, 9, 11, 25, 27, 121, 125] {
            for a in 2..m.min(60) {
                if gcd(a, m) != 1 {
                    continue;
                }
                assert_eq!(
                    multiplicative_order(a, m).unwrap(),
                    order_by_scan(a, m),
                    "order of {a} mod {m}"
                );
            }
        }
    }

    #[test]
    fn order_divides_group_order() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            for a in 1..p {
                assert_eq!((p - 1) % multiplicative_order(a, p).unwrap(), 0);
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(find_primitive_root(5, 2), 2); // ord(2) mod 25 = 20
        assert_eq!(find_primitive_root(11, 2), 2); // 2^10 = 56 != 1 mod 121
        assert_eq!(find_primitive_root(3, 1), 2);
    }

    #[test]
    fn primitive_root_has_full_order_at_all_levels() {
        for p in [3u64, 5, 7, 11, 13] {
            let g = find_primitive_root(p, 2);
            for j in 1..=3u32 {
                let m = p.pow(j);
                let phi = p.pow(j - 1) * (p - 1);
                assert_eq!(multiplicative_order(g, m).unwrap(), phi, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn pow_inv_consistency() {
        // a^(phi(m)-1) is the inverse of a for prime-power m.
        for m in [5u64, 25, 27, 121] {
            let phi = euler_phi(m);
            for a in 2..m.min(40) {
                if gcd(a, m) != 1 {
                    continue;
                }
                assert_eq!(mod_pow(a, phi - 1, m), mod_inv(a, m).unwrap());
            }
        }
    }

    #[test]
    fn wieferich_primes() {
        assert!(is_wieferich(1093));
        assert!(is_wieferich(3511));
        assert!(!is_wieferich(11)); // 2^10 = 56 mod 121
    }

    #[test]
    fn no_wieferich_below_1000() {
        for p in (3..1000u64).filter(|&p| is_prime(p)) {
            assert!(!is_wieferich(p), "p = {p}");
        }
    }

    #[test]
    fn assumption_examples() {
        let a = check_assumptions(11, 5).unwrap();
        assert!(!a.wieferich && a.gcd_ok && a.satisfied());

        // ord_7(2) = 3, (7-1)/3 = 2, gcd(2, 2) = 2.
        let a = check_assumptions(7, 2).unwrap();
        assert!(!a.wieferich && !a.gcd_ok && !a.satisfied());

        let a = check_assumptions(5, 2).unwrap();
        assert!(a.satisfied());

        assert!(check_assumptions(11, 4).is_err());
    }

    #[test]
    fn params_validation() {
        let params = Params::new(11, 2, 5).unwrap();
        assert_eq!(params.e(), 2);
        assert_eq!(params.g(), 2);
        assert_eq!(params.ord2(), 10);
        assert_eq!(params.period(), 121);
        assert_eq!(params.index_modulus(2), 55);
        assert!(!params.wieferich());

        assert!(matches!(Params::new(9, 1, 2), Err(Error::NotOddPrime(9))));
        assert!(matches!(Params::new(2, 1, 1), Err(Error::NotOddPrime(2))));
        assert!(matches!(Params::new(11, 0, 5), Err(Error::ZeroExponent)));
        assert!(matches!(
            Params::new(11, 1, 4),
            Err(Error::BadCofactor { .. })
        ));
        assert!(matches!(
            Params::with_g(11, 1, 5, 3),
            Err(Error::NotPrimitiveRoot { .. })
        )); // ord(3) mod 121 = 5
        assert!(Params::with_g(11, 1, 5, 2).is_ok());
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(10), vec![1, 2, 5, 10]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(121), 110);
    }
}

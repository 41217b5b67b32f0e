//! Generalized cyclotomic classes of `Z*_{p^j}`, the Euler-quotient
//! partition, index reduction and multiplication laws, and the p-element
//! fibers that the complexity engines decompose supports into.
//!
//! At level `j` the classes are the cosets of the subgroup generated by
//! `g^(f p^(j-1))`, indexed by `n` in `[0, f p^(j-1))`:
//! `D_n = { g^(n + k f p^(j-1)) mod p^j : 0 <= k < e }`. Every class has
//! exactly `e` elements and together they partition `Z*_{p^j}`.

use crate::error::{Error, Result};
use crate::numtheory::{mod_pow, mul_mod, Params};

/// Position of a cyclotomic class: a level `j >= 1` and a flat index
/// `n` in `[0, f p^(j-1))`. The index decomposes uniquely as
/// `n = l + m p^(j-1)` with `l < p^(j-1)` and `m < f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassIndex {
    pub level: u32,
    pub index: u64,
}

impl ClassIndex {
    pub fn new(level: u32, index: u64) -> Self {
        ClassIndex { level, index }
    }

    /// The `(l, m)` pair view of the flat index.
    pub fn pair(&self, p: u64) -> (u64, u64) {
        let base = p.pow(self.level - 1);
        (self.index % base, self.index / base)
    }

    pub fn from_pair(level: u32, p: u64, l: u64, m: u64) -> Self {
        ClassIndex {
            level,
            index: l + m * p.pow(level - 1),
        }
    }
}

/// The p-element arithmetic progression `{v + k p^n mod p^(n+1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub v: u64,
    pub n: u32,
    pub elements: Vec<u64>,
}

/// The fiber based at `v` (a residue below `p^n`) inside `Z_{p^(n+1)}`.
pub fn fiber(p: u64, n: u32, v: u64) -> Fiber {
    let base = p.checked_pow(n).expect("p^n overflows u64");
    assert!(v < base, "fiber base {v} out of range [0, {base})");
    Fiber {
        v,
        n,
        elements: (0..p).map(|k| v + k * base).collect(),
    }
}

fn check_index(params: &Params, idx: ClassIndex) -> Result<()> {
    if idx.level == 0 || idx.level > 64 {
        return Err(Error::LevelOutOfRange {
            level: idx.level,
            bound: 64,
        });
    }
    let bound = params.index_modulus(idx.level);
    if idx.index >= bound {
        return Err(Error::ClassIndexOutOfRange {
            index: idx.index,
            bound,
            level: idx.level,
        });
    }
    Ok(())
}

/// Elements of the class at `idx`, sorted ascending. Always `e` of them.
pub fn class_elements(params: &Params, idx: ClassIndex) -> Result<Vec<u64>> {
    check_index(params, idx)?;
    let modulus = params.pow_p(idx.level);
    let step = mod_pow(params.g(), params.index_modulus(idx.level), modulus);
    let mut x = mod_pow(params.g(), idx.index, modulus);
    let mut out = Vec::with_capacity(params.e() as usize);
    for _ in 0..params.e() {
        out.push(x);
        x = mul_mod(x, step, modulus);
    }
    out.sort_unstable();
    Ok(out)
}

/// The unique class index containing `u` at level `j`, found by walking the
/// powers of `g`. For repeated lookups build a [`ClassTable`] instead.
pub fn class_of(params: &Params, u: u64, j: u32) -> Result<ClassIndex> {
    let modulus = params.pow_p(j);
    let u = u % modulus;
    if u.is_multiple_of(params.p()) {
        return Err(Error::NotCoprime {
            value: u,
            p: params.p(),
        });
    }
    let phi = params.pow_p(j - 1) * (params.p() - 1);
    let mut x = 1u64;
    for k in 0..phi {
        if x == u {
            return Ok(ClassIndex::new(j, k % params.index_modulus(j)));
        }
        x = mul_mod(x, params.g(), modulus);
    }
    unreachable!("powers of a primitive root cover Z*_{{p^j}}")
}

/// Index of the product class: multiplying the class `l` elementwise by any
/// member of class `l2` lands in class `(l + l2) mod f p^(j-1)`.
pub fn mul_class_index(params: &Params, j: u32, l: u64, l2: u64) -> ClassIndex {
    let m = params.index_modulus(j);
    ClassIndex::new(j, (l % m + l2 % m) % m)
}

/// Index of the class obtained by reducing the level-`from_j` class `n`
/// modulo `p^to_j`. With `n = l + m p^(from_j - 1)` the result is
/// `(l mod P) + ((floor(l / P) + m) mod f) P` where `P = p^(to_j - 1)`;
/// the reduction maps the `e` elements bijectively onto the target class.
pub fn reduce_index(params: &Params, from_j: u32, to_j: u32, n: u64) -> Result<ClassIndex> {
    if to_j == 0 || to_j > from_j {
        return Err(Error::BadLevelReduction {
            from: from_j,
            to: to_j,
        });
    }
    check_index(params, ClassIndex::new(from_j, n))?;
    let (l, m) = ClassIndex::new(from_j, n).pair(params.p());
    let base = params.pow_p(to_j - 1);
    Ok(ClassIndex::new(
        to_j,
        (l % base) + ((l / base + m) % params.f()) * base,
    ))
}

/// The Euler quotient `Q_{p^r}(u)`: zero on multiples of `p`, otherwise
/// `(u^phi(p^r) - 1) / p^r mod p^r`, computed exactly by exponentiating
/// modulo `p^(2r)` and dividing out `p^r`.
pub fn euler_quotient(p: u64, r: u32, u: u64) -> u64 {
    if u.is_multiple_of(p) {
        return 0;
    }
    let pr = p.checked_pow(r).expect("p^r overflows u64");
    let p2r = pr.checked_mul(pr).expect("p^(2r) overflows u64");
    let phi = p.pow(r - 1) * (p - 1);
    let a = mod_pow(u, phi, p2r);
    debug_assert_eq!((a - 1) % pr, 0);
    (a - 1) / pr % pr
}

/// All residues `u < p^(r+1)` coprime to `p` with `Q_{p^r}(u) = l`.
/// Each of the `p^r` classes has exactly `p - 1` elements.
pub fn euler_class_elements(p: u64, r: u32, l: u64) -> Vec<u64> {
    let top = p.checked_pow(r + 1).expect("p^(r+1) overflows u64");
    (0..top)
        .filter(|&u| u % p != 0 && euler_quotient(p, r, u) == l)
        .collect()
}

/// Smallest primitive root `g` modulo `p^j` with `Q_{p^(j-1)}(g) = 1`, the
/// normalization under which the Euler-quotient classes coincide with
/// unions of cyclotomic classes. Returns `None` if no candidate survives.
pub fn normalized_primitive_root(p: u64, j: u32) -> Option<u64> {
    assert!(j >= 2, "normalization needs a quotient level j - 1 >= 1");
    let modulus = p.checked_pow(j)?;
    let phi = p.pow(j - 1) * (p - 1);
    let test_exponents: Vec<u64> = crate::numtheory::factorize(phi)
        .iter()
        .map(|&(q, _)| phi / q)
        .collect();
    'next: for g in 2..modulus {
        if g % p == 0 {
            continue;
        }
        for &e in &test_exponents {
            if mod_pow(g, e, modulus) == 1 {
                continue 'next;
            }
        }
        if euler_quotient(p, j - 1, g) == 1 {
            return Some(g);
        }
    }
    None
}

/// Precomputed discrete-log table for one level, built once from the power
/// table of `g` and then read-only.
#[derive(Debug, Clone)]
pub struct ClassTable {
    level: u32,
    p: u64,
    modulus: u64,
    index_modulus: u64,
    dlog: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl ClassTable {
    pub fn new(params: &Params, j: u32) -> Self {
        let modulus = params.pow_p(j);
        let phi = params.pow_p(j - 1) * (params.p() - 1);
        assert!(phi < NO_LOG as u64, "level too large for a dense table");
        let mut dlog = vec![NO_LOG; modulus as usize];
        let mut x = 1u64;
        for k in 0..phi {
            dlog[x as usize] = k as u32;
            x = mul_mod(x, params.g(), modulus);
        }
        ClassTable {
            level: j,
            p: params.p(),
            modulus,
            index_modulus: params.index_modulus(j),
            dlog,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Discrete log of `u` base `g`, in `[0, phi(p^j))`.
    pub fn dlog(&self, u: u64) -> Result<u64> {
        let d = self.dlog[(u % self.modulus) as usize];
        if d == NO_LOG {
            return Err(Error::NotCoprime {
                value: u % self.modulus,
                p: self.p,
            });
        }
        Ok(d as u64)
    }

    pub fn class_of(&self, u: u64) -> Result<ClassIndex> {
        Ok(ClassIndex::new(
            self.level,
            self.dlog(u)? % self.index_modulus,
        ))
    }

    /// All classes at this level: `f p^(j-1)` sorted element lists of
    /// length `e`, indexed by class index.
    pub fn classes(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.index_modulus as usize];
        for (residue, &d) in self.dlog.iter().enumerate() {
            if d != NO_LOG {
                out[(d as u64 % self.index_modulus) as usize].push(residue as u64);
            }
        }
        out
    }
}

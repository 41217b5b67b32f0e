//! Support sets and the binary sequences they define.
//!
//! A support spec holds one index set `X_t` per level `t = 1..=r`. The
//! support of the sequence is
//! `C_1 = {0} + union over t of p^(r-t) * D_i  for i in X_t`,
//! and bit `i` of the period is 1 exactly when `i` lies in `C_1`. The
//! level-`t` part consists of the residues with p-adic valuation exactly
//! `r - t`, so the union is disjoint and `|C_1| = 1 + e * sum |X_t|`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cyclotomy::{class_elements, ClassIndex};
use crate::error::{Error, Result};
use crate::numtheory::Params;
use crate::rng::SplitMix64;

/// Per-level index sets selecting which cyclotomic classes light up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSpec {
    params: Params,
    x: Vec<Vec<u64>>,
    b: Option<u64>,
}

impl SupportSpec {
    /// Validate and normalize (sort, dedupe) the index sets. `x[t-1]` must
    /// lie inside `[0, f p^(t-1))`.
    pub fn new(params: Params, x: Vec<Vec<u64>>) -> Result<Self> {
        Self::with_shift(params, x, None)
    }

    fn with_shift(params: Params, mut x: Vec<Vec<u64>>, b: Option<u64>) -> Result<Self> {
        if x.len() != params.r() as usize {
            return Err(Error::SupportArity {
                got: x.len(),
                expected: params.r(),
            });
        }
        for (i, set) in x.iter_mut().enumerate() {
            let t = i as u32 + 1;
            let bound = params.index_modulus(t);
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&v| v >= bound) {
                return Err(Error::SupportIndexOutOfRange {
                    index: bad,
                    bound,
                    t,
                });
            }
        }
        Ok(SupportSpec { params, x, b })
    }

    /// The halved-window preset: at every level, take the `f p^(t-1) / 2`
    /// consecutive indices starting at `b` (wrapping). Requires even `f`.
    pub fn xiao(params: Params, b: u64) -> Result<Self> {
        if !params.f().is_multiple_of(2) {
            return Err(Error::OddCofactor(params.f()));
        }
        let top = params.index_modulus(params.r());
        if b >= top {
            return Err(Error::ShiftOutOfRange { b, bound: top });
        }
        let x = (1..=params.r())
            .map(|t| {
                let modulus = params.index_modulus(t);
                (0..modulus / 2).map(|i| (b + i) % modulus).collect()
            })
            .collect();
        Self::with_shift(params, x, Some(b))
    }

    /// Each index at each level joins with probability 1/2, drawn from the
    /// supplied deterministic generator in level-then-index order.
    pub fn random(params: Params, rng: &mut SplitMix64) -> Self {
        let x = (1..=params.r())
            .map(|t| {
                (0..params.index_modulus(t))
                    .filter(|_| rng.next_bool())
                    .collect()
            })
            .collect();
        SupportSpec { params, x, b: None }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// All index sets, `x()[t-1]` being the level-`t` set.
    pub fn x(&self) -> &[Vec<u64>] {
        &self.x
    }

    /// The level-`t` index set (1-based).
    pub fn x_at(&self, t: u32) -> &[u64] {
        &self.x[(t - 1) as usize]
    }

    /// The shift this spec was built from, when it came from the preset.
    pub fn b(&self) -> Option<u64> {
        self.b
    }

    /// The `(l, m)` pair view of the level-`t` index set.
    pub fn pairs_at(&self, t: u32) -> Vec<(u64, u64)> {
        self.x_at(t)
            .iter()
            .map(|&n| ClassIndex::new(t, n).pair(self.params.p()))
            .collect()
    }

    /// `|C_1| = 1 + e * sum |X_t|`.
    pub fn support_size(&self) -> u64 {
        1 + self.params.e() * self.x.iter().map(|s| s.len() as u64).sum::<u64>()
    }

    /// The support set itself, sorted ascending. Always starts with 0.
    pub fn support_residues(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.support_size() as usize);
        out.push(0);
        for t in 1..=self.params.r() {
            let scale = self.params.pow_p(self.params.r() - t);
            for &i in self.x_at(t) {
                let class = class_elements(&self.params, ClassIndex::new(t, i))
                    .expect("indices validated at construction");
                out.extend(class.into_iter().map(|u| scale * u));
            }
        }
        out.sort_unstable();
        debug_assert!(
            out.windows(2).all(|w| w[0] < w[1]),
            "support union overlaps"
        );
        out
    }

    /// Materialize one period of the sequence.
    pub fn generate(&self) -> BitSequence {
        let mut bits = vec![0u8; self.params.period() as usize];
        for i in self.support_residues() {
            bits[i as usize] = 1;
        }
        BitSequence {
            params: self.params,
            bits,
        }
    }

    pub fn to_json(&self) -> String {
        let file = SupportFile {
            p: self.params.p(),
            r: self.params.r(),
            f: self.params.f(),
            g: Some(self.params.g()),
            b: self.b,
            x: self.x.clone(),
        };
        serde_json::to_string(&file).expect("support file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SupportFile =
            serde_json::from_str(text).map_err(|e| Error::BadSupportFile(e.to_string()))?;
        let params = match file.g {
            Some(g) => Params::with_g(file.p, file.r, file.f, g)?,
            None => Params::new(file.p, file.r, file.f)?,
        };
        Self::with_shift(params, file.x, file.b)
    }
}

/// On-disk form of a support spec: `{"p":..,"r":..,"f":..,"g":..,"b":..,"X":[[..],..]}`.
#[derive(Serialize, Deserialize)]
struct SupportFile {
    p: u64,
    r: u32,
    f: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<u64>,
    #[serde(rename = "X")]
    x: Vec<Vec<u64>>,
}

/// One period of a binary sequence together with its arithmetic frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    params: Params,
    bits: Vec<u8>,
}

impl BitSequence {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Hamming weight of one period.
    pub fn weight(&self) -> u64 {
        self.bits.iter().map(|&b| b as u64).sum()
    }

    /// Weight parity; this is the value of the generating polynomial at 1.
    pub fn parity_delta(&self) -> u8 {
        (self.weight() & 1) as u8
    }

    /// One line of ASCII '0'/'1', newline-terminated.
    pub fn to_line(&self) -> String {
        let mut s = String::with_capacity(self.bits.len() + 1);
        s.extend(self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }));
        s.push('\n');
        s
    }
}

/// Parse a sequence file: a single line of '0'/'1' characters.
pub fn parse_bit_line(text: &str) -> Result<Vec<u8>> {
    let line = text.trim_end_matches(['\n', '\r']);
    if line.is_empty() {
        return Err(Error::BadSequenceFile("empty".into()));
    }
    line.bytes()
        .map(|c| match c {
            b'0' => Ok(0),
            b'1' => Ok(1),
            other => Err(Error::BadSequenceFile(format!(
                "unexpected byte {:?}",
                other as char
            ))),
        })
        .collect()
}

/// Reduce a multiset modulo `modulus` and keep the residues that occur an
/// odd number of times. This is the enumeration convention every engine
/// shares: over GF(2) a residue seen twice cancels.
pub fn reduce_multiset_mod2(values: impl IntoIterator<Item = u64>, modulus: u64) -> BTreeSet<u64> {
    assert!(modulus >= 1);
    let mut odd = BTreeSet::new();
    for v in values {
        let v = v % modulus;
        if !odd.insert(v) {
            odd.remove(&v);
        }
    }
    odd
}

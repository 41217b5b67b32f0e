//! The four linear-complexity engines and the assembler that combines the
//! per-level verdicts into `L = delta + (p-1) * sum(delta_n * p^n)`.
//!
//! * [`berlekamp_massey`] — LFSR synthesis on two concatenated periods; the
//!   unconditional ground truth for any binary sequence.
//! * [`gcd_lc`] — `N - deg gcd(S(x), x^N - 1)`. For odd `N` the modulus
//!   `x^N - 1` is squarefree in characteristic 2, so the gcd degree counts
//!   exactly the N-th-root-of-unity zeros of `S`; no extension-field
//!   arithmetic is needed.
//! * [`fiber_lc`] — per level `n`, reduces the support modulo `p^(n+1)` as
//!   a mod-2 multiset and asks whether it is a union of complete fibers.
//! * [`lemma6_lc`] — the same decision made purely on the index sets,
//!   without ever materializing residues or bits.
//!
//! The two fast engines are only valid under the assumptions
//! `2^(p-1) != 1 (mod p^2)` and `gcd((p-1)/ord_p(2), f) = 1`, which force
//! each level's root set to vanish all-or-nothing; they refuse otherwise
//! rather than return a possibly wrong answer.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cyclotomy::class_of;
use crate::error::{Error, Result};
use crate::numtheory::{AssumptionReport, Params};
use crate::poly::BinaryPoly;
use crate::seqgen::{reduce_multiset_mod2, SupportSpec};

/// Which engine produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bm,
    Gcd,
    Fiber,
    Lemma6,
    Theorem,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Bm => "bm",
            Engine::Gcd => "gcd",
            Engine::Fiber => "fiber",
            Engine::Lemma6 => "lemma6",
            Engine::Theorem => "theorem",
        }
    }
}

/// Which vanishing condition fired at a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VanishCondition {
    /// The deepest contributing layer folds onto all of `Z_f` and the
    /// residue 0 has odd multiplicity: together they fill the zero fiber.
    FullLayer,
    /// The deepest layer folds to nothing and the residue 0 cancels too.
    EmptyLayer,
}

/// Evidence attached to a vanishing level (`delta_n = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LevelWitness {
    /// Fiber engine: the bases `v` of the fully covered fibers.
    FiberUnion(Vec<u64>),
    /// Index engine: the progression bases `W`, one set per folded level,
    /// plus the condition that closed the zero fiber.
    Progressions {
        condition: VanishCondition,
        w_sets: Vec<Vec<u64>>,
    },
}

/// Per-level verdict: does every primitive `p^(n+1)`-th root of unity
/// annihilate the generating polynomial?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOutcome {
    pub level: u32,
    /// 0 when the whole level vanishes (contributing nothing to `L`),
    /// 1 otherwise.
    pub delta: u8,
    /// Present exactly when `delta == 0`.
    pub witness: Option<LevelWitness>,
}

/// Result of one engine run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcReport {
    pub engine: Engine,
    pub l: u64,
    /// Weight parity; `None` for the sequence-only engines.
    pub delta: Option<u8>,
    /// `delta_0 .. delta_(r-1)`; `None` for the sequence-only engines.
    pub deltas: Option<Vec<u8>>,
    pub assumptions: Option<AssumptionReport>,
    pub witnesses: Option<Vec<Option<LevelWitness>>>,
}

/// Minimal LFSR synthesis for a finite bit sequence: the textbook
/// Berlekamp-Massey algorithm, with the connection polynomial kept packed
/// so each discrepancy costs `O(L/64)` words.
pub fn lfsr_synthesis(seq: &[u8]) -> (u64, BinaryPoly) {
    let t = seq.len();
    // Reversed packed copy: bit k of `rev` is seq[t-1-k]. The discrepancy
    // at position `pos` is then a word-aligned dot product of the
    // connection polynomial against `rev >> (t-1-pos)`.
    let mut rev = vec![0u64; t.div_ceil(64)];
    for (i, &bit) in seq.iter().enumerate() {
        debug_assert!(bit <= 1);
        if bit == 1 {
            let k = t - 1 - i;
            rev[k / 64] |= 1 << (k % 64);
        }
    }

    let mut current = BinaryPoly::one();
    let mut previous = BinaryPoly::one();
    let mut l = 0usize;
    let mut last_change = -1i64;

    for pos in 0..t {
        let off = t - 1 - pos;
        if discrepancy(&current, &rev, off) == 1 {
            let gap = (pos as i64 - last_change) as usize;
            if 2 * l <= pos {
                let snapshot = current.clone();
                current.xor_shifted(&previous, gap);
                previous = snapshot;
                l = pos + 1 - l;
                last_change = pos as i64;
            } else {
                current.xor_shifted(&previous, gap);
            }
        }
    }
    (l as u64, current)
}

fn discrepancy(connection: &BinaryPoly, rev: &[u64], off: usize) -> u8 {
    let word_off = off / 64;
    let bit_off = off % 64;
    let mut acc = 0u64;
    for (j, &cw) in connection.words().iter().enumerate() {
        if cw == 0 {
            continue;
        }
        let idx = word_off + j;
        let mut w = rev.get(idx).copied().unwrap_or(0) >> bit_off;
        if bit_off != 0 {
            w |= rev.get(idx + 1).copied().unwrap_or(0) << (64 - bit_off);
        }
        acc ^= cw & w;
    }
    (acc.count_ones() & 1) as u8
}

/// Linear complexity of the periodic sequence whose period is `period`.
///
/// Synthesis runs on two concatenated periods: `2N` symbols always pin down
/// the complexity of an `N`-periodic sequence, which is at most `N`.
pub fn berlekamp_massey(period: &[u8]) -> (u64, BinaryPoly) {
    assert!(!period.is_empty(), "empty period");
    let doubled: Vec<u8> = period.iter().chain(period).copied().collect();
    let (l, poly) = lfsr_synthesis(&doubled);
    (l.min(period.len() as u64), poly)
}

/// Linear complexity as `N - deg gcd(S(x), x^N - 1)`, odd `N` only.
pub fn gcd_lc(period: &[u8]) -> Result<u64> {
    let n = period.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenPeriod(n));
    }
    let s = BinaryPoly::from_bits(period);
    let g = BinaryPoly::gcd(&s, &BinaryPoly::x_pow_plus_one(n as u64));
    let shared = g.degree().expect("x^N + 1 is nonzero") as u64;
    Ok(n as u64 - shared)
}

/// Per-level gcd degrees `deg gcd(S(x), layer_n(x))` for `n = 0..r-1`.
/// Under the engine assumptions each entry is 0 or `(p-1) p^n`.
pub fn lemma3_level_degrees(period: &[u8], p: u64, r: u32) -> Vec<u64> {
    let s = BinaryPoly::from_bits(period);
    (0..r)
        .map(|n| {
            let layer = BinaryPoly::cyclotomic_layer(p, n);
            BinaryPoly::gcd(&s, &layer)
                .degree()
                .expect("layer polynomial is nonzero") as u64
        })
        .collect()
}

fn ensure_assumptions(params: &Params) -> Result<()> {
    let report = params.assumptions();
    if !report.satisfied() {
        return Err(Error::AssumptionsViolated(report));
    }
    Ok(())
}

fn ensure_level(params: &Params, n: u32) -> Result<()> {
    if n >= params.r() {
        return Err(Error::LevelOutOfRange {
            level: n,
            bound: params.r(),
        });
    }
    Ok(())
}

/// Fiber engine for one level: the level vanishes iff the support, reduced
/// modulo `p^(n+1)` as a mod-2 multiset, is a union of complete fibers
/// `{v + k p^n}`. Refuses when the assumptions fail.
pub fn fiber_delta(spec: &SupportSpec, n: u32) -> Result<LevelOutcome> {
    ensure_assumptions(spec.params())?;
    ensure_level(spec.params(), n)?;
    Ok(fiber_level(spec.params(), &spec.support_residues(), n))
}

fn fiber_level(params: &Params, support: &[u64], n: u32) -> LevelOutcome {
    let p = params.p();
    let modulus = params.pow_p(n + 1);
    let base = params.pow_p(n);
    let folded = reduce_multiset_mod2(support.iter().copied(), modulus);
    // Only fibers that intersect the folded support matter; an untouched
    // fiber is vacuously outside the union.
    let bases: BTreeSet<u64> = folded.iter().map(|x| x % base).collect();
    let mut covered = Vec::with_capacity(bases.len());
    for v in bases {
        if (0..p).all(|k| folded.contains(&(v + k * base))) {
            covered.push(v);
        } else {
            return LevelOutcome {
                level: n,
                delta: 1,
                witness: None,
            };
        }
    }
    LevelOutcome {
        level: n,
        delta: 0,
        witness: Some(LevelWitness::FiberUnion(covered)),
    }
}

/// Index engine for one level: the same decision as [`fiber_delta`] made on
/// the index sets alone. Refuses when the assumptions fail.
pub fn lemma6_delta(spec: &SupportSpec, n: u32) -> Result<LevelOutcome> {
    ensure_assumptions(spec.params())?;
    ensure_level(spec.params(), n)?;
    Ok(lemma6_level(spec, n))
}

fn lemma6_level(spec: &SupportSpec, n: u32) -> LevelOutcome {
    let params = spec.params();
    let (p, f, r) = (params.p(), params.f(), params.r());
    let fail = LevelOutcome {
        level: n,
        delta: 1,
        witness: None,
    };

    // Shallower layers (valuation j < n): each index set, folded into the
    // level n-j index range, must split into complete progressions of
    // stride f p^(n-j-1) — the index-space image of a union of fibers.
    let mut w_sets = Vec::with_capacity(n as usize);
    for j in 0..n {
        let step = f * params.pow_p(n - j - 1);
        let folded = reduce_multiset_mod2(spec.x_at(r - j).iter().copied(), step * p);
        match progression_cover(&folded, step, p) {
            Some(w) => w_sets.push(w),
            None => return fail,
        }
    }

    // The valuation-n layer folds modulo f onto a union of level-1 classes;
    // it must be everything (filling the zero fiber except the origin) or
    // nothing. Deeper layers and the explicit 0 collapse onto the origin,
    // whose parity has to match.
    let layer = reduce_multiset_mod2(spec.x_at(r - n).iter().copied(), f);
    let deeper: u64 = (1..r - n).map(|t| spec.x_at(t).len() as u64).sum();
    let origin_parity = (1 + params.e() * deeper) % 2;
    let condition = if layer.len() as u64 == f && origin_parity == 1 {
        VanishCondition::FullLayer
    } else if layer.is_empty() && origin_parity == 0 {
        VanishCondition::EmptyLayer
    } else {
        return fail;
    };
    LevelOutcome {
        level: n,
        delta: 0,
        witness: Some(LevelWitness::Progressions { condition, w_sets }),
    }
}

/// Is `set` (a subset of `[0, step * p)`) a union of complete progressions
/// `{w + k step : k = 0..p-1}`? Returns the bases on success.
fn progression_cover(set: &BTreeSet<u64>, step: u64, p: u64) -> Option<Vec<u64>> {
    let bases: BTreeSet<u64> = set.iter().map(|x| x % step).collect();
    let mut out = Vec::with_capacity(bases.len());
    for w in bases {
        if (0..p).all(|k| set.contains(&(w + k * step))) {
            out.push(w);
        } else {
            return None;
        }
    }
    Some(out)
}

/// `delta + (p-1) * sum(delta_n * p^n)`.
fn assemble(params: &Params, delta: u8, deltas: &[u8]) -> u64 {
    let p = params.p();
    let sum: u64 = deltas
        .iter()
        .enumerate()
        .map(|(i, &d)| d as u64 * p.pow(i as u32))
        .sum();
    delta as u64 + (p - 1) * sum
}

/// Weight parity straight from the support cardinality; the unions behind
/// `C_1` are disjoint, so no bits need generating.
fn structural_delta(spec: &SupportSpec) -> u8 {
    (spec.support_size() % 2) as u8
}

fn build_report(engine: Engine, spec: &SupportSpec, outcomes: Vec<LevelOutcome>) -> LcReport {
    let delta = structural_delta(spec);
    let deltas: Vec<u8> = outcomes.iter().map(|o| o.delta).collect();
    LcReport {
        engine,
        l: assemble(spec.params(), delta, &deltas),
        delta: Some(delta),
        deltas: Some(deltas),
        assumptions: Some(spec.params().assumptions()),
        witnesses: Some(outcomes.into_iter().map(|o| o.witness).collect()),
    }
}

/// Full fiber-engine run over all levels.
pub fn fiber_lc(spec: &SupportSpec) -> Result<LcReport> {
    ensure_assumptions(spec.params())?;
    let support = spec.support_residues();
    let outcomes = (0..spec.params().r())
        .map(|n| fiber_level(spec.params(), &support, n))
        .collect();
    Ok(build_report(Engine::Fiber, spec, outcomes))
}

/// Full index-engine run over all levels.
pub fn lemma6_lc(spec: &SupportSpec) -> Result<LcReport> {
    ensure_assumptions(spec.params())?;
    let outcomes = (0..spec.params().r())
        .map(|n| lemma6_level(spec, n))
        .collect();
    Ok(build_report(Engine::Lemma6, spec, outcomes))
}

/// The assembler: index-engine deltas cross-checked level by level against
/// the fiber engine. A mismatch is a bug, reported as an error rather than
/// silently picking one side.
pub fn theorem_lc(spec: &SupportSpec) -> Result<LcReport> {
    ensure_assumptions(spec.params())?;
    let support = spec.support_residues();
    let mut outcomes = Vec::with_capacity(spec.params().r() as usize);
    for n in 0..spec.params().r() {
        let by_index = lemma6_level(spec, n);
        let by_fiber = fiber_level(spec.params(), &support, n);
        if by_index.delta != by_fiber.delta {
            return Err(Error::EngineDisagreement {
                level: n,
                fiber: by_fiber.delta,
                lemma6: by_index.delta,
            });
        }
        outcomes.push(by_index);
    }
    Ok(build_report(Engine::Theorem, spec, outcomes))
}

/// The conjectured closed form for the halved-window construction:
/// `p^r - (p-1)/2 - d` when 2 lies in the zeroth level-1 class, else
/// `p^r - d`, where `d = 1` iff `(p^r + 1)/2` is even. Requires even `f`
/// and a non-Wieferich `p`.
pub fn conjecture_lc(params: &Params) -> Result<u64> {
    if !params.f().is_multiple_of(2) {
        return Err(Error::OddCofactor(params.f()));
    }
    if params.wieferich() {
        return Err(Error::WieferichPrime(params.p()));
    }
    let n = params.period();
    let correction = u64::from(n.div_ceil(2).is_multiple_of(2));
    let two_in_zeroth = class_of(params, 2, 1)?.index == 0;
    Ok(if two_in_zeroth {
        n - (params.p() - 1) / 2 - correction
    } else {
        n - correction
    })
}

/// Invert `L = delta + (p-1) * sum(delta_i p^i)` by greedy base-p digits.
/// Odd `p` makes the decomposition unique when it exists.
pub fn decompose_l(p: u64, r: u32, l: u64) -> Option<(u8, Vec<u8>)> {
    for delta in 0..=1u64 {
        if l < delta || !(l - delta).is_multiple_of(p - 1) {
            continue;
        }
        let mut q = (l - delta) / (p - 1);
        let mut digits = Vec::with_capacity(r as usize);
        for _ in 0..r {
            digits.push((q % p) as u8);
            q /= p;
        }
        if q == 0 && digits.iter().all(|&d| d <= 1) {
            return Some((delta as u8, digits));
        }
    }
    None
}

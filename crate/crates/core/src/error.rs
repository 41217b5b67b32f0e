use crate::numtheory::AssumptionReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by parameter validation and the complexity engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("exponent r must be at least 1")]
    ZeroExponent,

    #[error("f = {f} does not divide p - 1 = {pm1}")]
    BadCofactor { f: u64, pm1: u64 },

    #[error("{g} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { g: u64, modulus: u64 },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("{value} is divisible by p = {p}, so it lies in no cyclotomic class")]
    NotCoprime { value: u64, p: u64 },

    #[error("class index {index} out of range [0, {bound}) at level {level}")]
    ClassIndexOutOfRange { index: u64, bound: u64, level: u32 },

    #[error("cannot reduce from level {from} to higher level {to}")]
    BadLevelReduction { from: u32, to: u32 },

    #[error("level {level} out of range [0, {bound})")]
    LevelOutOfRange { level: u32, bound: u32 },

    #[error("support index {index} out of range [0, {bound}) in X_{t}")]
    SupportIndexOutOfRange { index: u64, bound: u64, t: u32 },

    #[error("support spec has {got} index sets, expected r = {expected}")]
    SupportArity { got: usize, expected: u32 },

    #[error("the halved-window preset requires even f, got f = {0}")]
    OddCofactor(u64),

    #[error("shift b = {b} out of range [0, {bound})")]
    ShiftOutOfRange { b: u64, bound: u64 },

    #[error("p^r = {p}^{r} does not fit in 64 bits")]
    PeriodTooLarge { p: u64, r: u32 },

    #[error("period {0} is even; the gcd engine requires an odd period")]
    EvenPeriod(usize),

    #[error("empty sequence")]
    EmptySequence,

    #[error(
        "theorem assumptions violated (wieferich = {}, gcd_ok = {}); fast engines refuse",
        .0.wieferich, .0.gcd_ok
    )]
    AssumptionsViolated(AssumptionReport),

    #[error("p = {0} is a Wieferich prime; the conjectured formula does not apply")]
    WieferichPrime(u64),

    #[error("engines disagree at level {level}: fiber says {fiber}, lemma6 says {lemma6}")]
    EngineDisagreement { level: u32, fiber: u8, lemma6: u8 },

    #[error("bad support file: {0}")]
    BadSupportFile(String),

    #[error("bad sequence file: {0}")]
    BadSequenceFile(String),
}

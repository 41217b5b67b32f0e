//! Generalized cyclotomic binary sequences of period `p^r` and their linear
//! complexity over GF(2).
//!
//! The crate builds sequences whose support is an arbitrary union of scaled
//! generalized cyclotomic classes (plus zero), then computes the linear
//! complexity by four mutually checking engines:
//!
//! * [`lincomp::berlekamp_massey`] — LFSR synthesis, the unconditional oracle;
//! * [`lincomp::gcd_lc`] — root counting via `N - deg gcd(S(x), x^N - 1)`;
//! * [`lincomp::fiber_lc`] — fiber decomposition of the support set;
//! * [`lincomp::lemma6_lc`] — the combinatorial index-set test, no sequence
//!   materialization at all.
//!
//! The two fast engines require an odd prime `p` with `2^(p-1) != 1
//! (mod p^2)` and `gcd((p-1)/ord_p(2), f) = 1`; they refuse otherwise.
//!
//! ```
//! use gencyclo::{lincomp, Params, SupportSpec};
//!
//! let params = Params::new(5, 3, 2)?;
//! let spec = SupportSpec::new(
//!     params,
//!     vec![vec![0, 1], vec![0, 2, 4, 6, 8], vec![0, 10, 20, 30, 40]],
//! )?;
//!
//! let report = lincomp::theorem_lc(&spec)?;
//! assert_eq!(report.l, 25);
//! assert_eq!(report.deltas.as_deref(), Some(&[1, 1, 0][..]));
//!
//! // The synthesis oracle agrees on the generated bits.
//! let seq = spec.generate();
//! assert_eq!(lincomp::berlekamp_massey(seq.bits()).0, 25);
//! # Ok::<(), gencyclo::Error>(())
//! ```

pub mod cyclotomy;
pub mod error;
pub mod lincomp;
pub mod numtheory;
pub mod poly;
pub mod rng;
pub mod seqgen;

pub use error::{Error, Result};
pub use lincomp::{Engine, LcReport};
pub use numtheory::{AssumptionReport, Params};
pub use poly::BinaryPoly;
pub use rng::SplitMix64;
pub use seqgen::{BitSequence, SupportSpec};

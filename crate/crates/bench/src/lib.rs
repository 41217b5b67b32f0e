//! Fixtures shared by the benchmark targets.

use gencyclo::{Params, SplitMix64, SupportSpec};

/// Halved-window spec with shift 0.
pub fn xiao_spec(p: u64, r: u32, f: u64) -> SupportSpec {
    SupportSpec::xiao(Params::new(p, r, f).unwrap(), 0).unwrap()
}

/// A spec with a handful of seeded indices per level, so the structural
/// engines can be timed at periods where sequences are never materialized.
pub fn compact_spec(p: u64, r: u32, f: u64, seed: u64) -> SupportSpec {
    let params = Params::new(p, r, f).unwrap();
    let mut rng = SplitMix64::new(seed);
    let sets = (1..=r)
        .map(|t| {
            let modulus = params.index_modulus(t);
            (0..4).map(|_| rng.below(modulus)).collect()
        })
        .collect();
    SupportSpec::new(params, sets).unwrap()
}

//! Counter-based deterministic random streams.
//!
//! Every draw is a pure function of a master seed, a domain tag, and a
//! small integer key, so a value never depends on how many draws other
//! code performed before it. Optimizer agents, simulation frames, and
//! sweep points can therefore be evaluated in any order (or skipped on
//! untaken branches) without perturbing each other's randomness, which
//! is what makes identical runs byte-identical.

/// Domain tags keep unrelated consumers of the same seed decorrelated.
pub mod domain {
    pub const USERS: u64 = 1;
    pub const POP_INIT: u64 = 2;
    pub const WOA: u64 = 3;
    pub const PSO: u64 = 4;
    pub const CHURN: u64 = 5;
    pub const JITTER: u64 = 6;
    pub const REOPT: u64 = 7;
    pub const SWEEP: u64 = 8;
    pub const COMPARE: u64 = 9;
    pub const PAIRING: u64 = 10;
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer. Bijective on u64 with strong avalanche.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Collapses (seed, domain, a, b, c) into one well-mixed 64-bit word.
pub fn mix(seed: u64, domain: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut h = splitmix64(seed);
    for part in [domain, a, b, c] {
        h = splitmix64(h ^ part.wrapping_mul(GOLDEN));
    }
    h
}

/// Uniform draw in [0, 1) keyed by (seed, domain, a, b, c).
pub fn unit(seed: u64, domain: u64, a: u64, b: u64, c: u64) -> f64 {
    // Top 53 bits give every representable multiple of 2^-53 once.
    (mix(seed, domain, a, b, c) >> 11) as f64 / (1u64 << 53) as f64
}

/// Uniform draw in [-1, 1) keyed by (seed, domain, a, b, c).
pub fn symmetric_unit(seed: u64, domain: u64, a: u64, b: u64, c: u64) -> f64 {
    2.0 * unit(seed, domain, a, b, c) - 1.0
}

/// Standard normal draw via Box-Muller on two keyed uniforms.
pub fn gaussian(seed: u64, domain: u64, a: u64, b: u64, c: u64) -> f64 {
    let u1 = unit(seed, domain, a, b, 2 * c);
    let u2 = unit(seed, domain, a, b, 2 * c + 1);
    // 1 - u1 lies in (0, 1], keeping the log finite.
    (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Derives an independent sub-seed, e.g. one per sweep point or pair index.
pub fn derive_seed(seed: u64, domain: u64, index: u64) -> u64 {
    mix(seed, domain, index, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_pure_functions_of_their_key() {
        let x = unit(42, domain::WOA, 3, 7, 1);
        for _ in 0..10 {
            assert_eq!(x, unit(42, domain::WOA, 3, 7, 1));
        }
    }

    #[test]
    fn distinct_keys_decorrelate() {
        let a = unit(42, domain::WOA, 0, 0, 0);
        let b = unit(42, domain::WOA, 0, 0, 1);
        let c = unit(42, domain::PSO, 0, 0, 0);
        let d = unit(43, domain::WOA, 0, 0, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn unit_stays_in_half_open_interval() {
        for k in 0..10_000u64 {
            let u = unit(7, domain::CHURN, k, 0, 0);
            assert!((0.0..1.0).contains(&u), "draw {u} outside [0,1)");
        }
    }

    #[test]
    fn unit_mean_is_near_half() {
        let n = 20_000u64;
        let sum: f64 = (0..n).map(|k| unit(123, domain::POP_INIT, k, 0, 0)).sum();
        let mean = sum / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean} far from 0.5");
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let n = 20_000u64;
        let draws: Vec<f64> = (0..n).map(|k| gaussian(99, domain::JITTER, k, 0, 0)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05, "mean {mean} far from 0");
        assert!((var - 1.0).abs() < 0.05, "variance {var} far from 1");
    }
}

//! Seed derivation and the samplers shared by every randomized routine.
//! Each trial gets its own stream derived from `(seed, index)`, so results
//! never depend on evaluation order.

use alloc::vec::Vec;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;

/// Bound for random rational (integer) coordinates.
pub const INT_RANGE: i64 = 10_000;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix(splitmix(seed) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Independent generator for stream `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

pub fn nonzero_mod<R: Rng + ?Sized>(rng: &mut R, fld: &PrimeField) -> u64 {
    rng.gen_range(1..fld.modulus())
}

pub fn point_mod<R: Rng + ?Sized>(rng: &mut R, fld: &PrimeField, n: usize) -> Vec<u64> {
    (0..n).map(|_| nonzero_mod(rng, fld)).collect()
}

pub fn nonzero_int<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 {
            return a;
        }
    }
}

/// Integer point with entries in `[-10^4, 10^4] \ {0}`.
pub fn point_q<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| BigRational::from_integer(nonzero_int(rng, INT_RANGE).into()))
        .collect()
}

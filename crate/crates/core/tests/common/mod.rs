#![allow(dead_code)]

use alcove::affine_weyl::BallElement;
use alcove::{AffineWeylGroup, CartanType, ShiVariety};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ct(t: &str) -> CartanType {
    t.parse().unwrap()
}

pub fn group(t: &str) -> AffineWeylGroup {
    AffineWeylGroup::from_type(ct(t))
}

pub fn variety(t: &str) -> ShiVariety {
    ShiVariety::from_type(ct(t))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Elements of length exactly `len`, taken from a breadth-first ball.
pub fn sphere(ball: &[BallElement], len: usize) -> impl Iterator<Item = &BallElement> {
    ball.iter().filter(move |b| b.length() == len)
}

//! Seeded sampling of scalars and vectors.
//!
//! The raw stream is SplitMix64 (state advance by the golden-ratio constant
//! `0x9e3779b97f4a7c15`, then the standard 64-bit finalizer). Draws are
//! mapped to field elements as follows, so that seeds reproduce across
//! implementations:
//!
//! * integer in `lo..=hi`: `lo + next_u64() % (hi - lo + 1)`;
//! * rational: numerator in `-20..=20`, then denominator in `1..=20`;
//! * prime field: `next_u64() % p`;
//! * extension: one base draw per coefficient, constant term first;
//! * function field: a polynomial of degree at most 2 (three base draws,
//!   constant term first) over denominator 1.
//!
//! Sub-streams are derived with [`derive_seed`], which hashes a label with
//! FNV-1a and mixes it with the parent seed and an index.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::field::{Field, FieldElement, FieldKind};
use crate::linalg::Vector;

pub const HEIGHT: i64 = 20;
const PHI: u64 = 0x9e37_79b9_7f4a_7c15;

fn fnv1a(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Seed of the `index`-th sub-stream named `label` under `seed`.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    let state = (seed ^ fnv1a(label)).wrapping_add(index.wrapping_mul(PHI));
    SplitMix64::seed_from_u64(state).next_u64()
}

pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn derived(seed: u64, label: &str, index: u64) -> Self {
        Self::new(derive_seed(seed, label, index))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform-ish integer in `lo..=hi` (plain modulo reduction).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn scalar(&mut self, field: &Field) -> FieldElement {
        match field.kind() {
            FieldKind::Rationals => {
                let num = self.int_in(-HEIGHT, HEIGHT);
                let den = self.int_in(1, HEIGHT);
                field
                    .from_i64(num)
                    .checked_div(&field.from_i64(den))
                    .expect("positive denominator")
            }
            FieldKind::Prime(p) => {
                let r = self.next_u64() % p;
                field.from_i64(r as i64)
            }
            FieldKind::Extension { base, modulus, .. } => {
                let coeffs = (0..modulus.len() - 1).map(|_| self.scalar(base)).collect();
                field.from_poly(coeffs)
            }
            FieldKind::FunctionField { base, .. } => {
                let coeffs = (0..3).map(|_| self.scalar(base)).collect();
                field.from_poly(coeffs)
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: &Field) -> FieldElement {
        loop {
            let x = self.scalar(field);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn vector(&mut self, field: &Field, n: usize) -> Vector {
        (0..n).map(|_| self.scalar(field)).collect()
    }

    /// A vector with small integer entries in `-bound..=bound`.
    pub fn small_vector(&mut self, field: &Field, n: usize, bound: i64) -> Vector {
        (0..n).map(|_| field.from_i64(self.int_in(-bound, bound))).collect()
    }
}

//! Generator for perfectly packable bin-packing instances.

use std::fmt::Write;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A generated instance: `sizes[i]` is the size of item `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BppInstance {
    pub cap: i64,
    pub bins: usize,
    pub sizes: Vec<i64>,
}

impl BppInstance {
    pub fn total(&self) -> i64 {
        self.sizes.iter().sum()
    }

    /// Facts over bcap/1, bin/1, item/1 and size/2.
    pub fn to_program(&self) -> String {
        let mut s = String::new();
        writeln!(s, "bcap({}).", self.cap).unwrap();
        writeln!(s, "bin(1..{}).", self.bins).unwrap();
        writeln!(s, "item(1..{}).", self.sizes.len()).unwrap();
        for (i, size) in self.sizes.iter().enumerate() {
            writeln!(s, "size({},{size}).", i + 1).unwrap();
        }
        s
    }
}

/// Splits each of `bins` capacities into item sizes summing to exactly `cap`.
pub fn gen_bpp(items: usize, cap: i64, bins: usize, seed: u64) -> Result<BppInstance> {
    if items == 0 || cap < 1 || bins == 0 {
        return Err(Error::Args("items, cap and bins must be positive".into()));
    }
    if items < bins || items as u128 > bins as u128 * cap as u128 {
        return Err(Error::Args(format!(
            "{items} items cannot fill {bins} bins of capacity {cap} exactly"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![1usize; bins];
    for _ in bins..items {
        let open: Vec<usize> = (0..bins).filter(|&b| (counts[b] as i64) < cap).collect();
        counts[open[rng.gen_range(0..open.len())]] += 1;
    }
    let mut sizes = Vec::with_capacity(items);
    for k in counts {
        let mut cuts: Vec<i64> = sample(&mut rng, cap as usize - 1, k - 1)
            .into_iter()
            .map(|c| c as i64 + 1)
            .collect();
        cuts.sort_unstable();
        let mut prev = 0;
        for c in cuts.into_iter().chain([cap]) {
            sizes.push(c - prev);
            prev = c;
        }
    }
    sizes.shuffle(&mut rng);
    Ok(BppInstance { cap, bins, sizes })
}

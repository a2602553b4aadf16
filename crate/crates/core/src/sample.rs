//! Reproducible random partitions.

use rand::Rng;

use crate::partition::Partition;

/// Draws `parts` independent parts uniformly from `[1, 2 * target / parts - 1]`
/// and sorts them into a partition, so the expected size is `target`.
///
/// When `target < parts` the range collapses to `[1, 1]`.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, target: u64, parts: usize) -> Partition {
    let parts = parts.max(1);
    let upper = (2 * target / parts as u64).saturating_sub(1).max(1);
    let upper = u32::try_from(upper).unwrap_or(u32::MAX);
    let mut values: Vec<u32> = (0..parts).map(|_| rng.gen_range(1..=upper)).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_sorted_unchecked(values)
}

/// A random partition of at most `max_size` cells with a random number of
/// parts; used to spread test inputs over many shapes.
pub fn random_small_partition<R: Rng + ?Sized>(rng: &mut R, max_size: u64) -> Partition {
    let target = rng.gen_range(1..=max_size.max(1));
    loop {
        let parts = rng.gen_range(1..=target as usize);
        let p = random_partition(rng, target, parts);
        if p.size() <= max_size {
            return p;
        }
    }
}

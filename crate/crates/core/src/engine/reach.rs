use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::partition::{MoveKind, Partition};

/// All positions reachable in one or more moves. Excludes the start, and
/// includes `()` whenever the start is nonempty.
pub fn reachable_positions(p: &Partition) -> BTreeSet<Partition> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![p.clone()];
    while let Some(q) = frontier.pop() {
        if q.is_empty() {
            continue;
        }
        for kind in MoveKind::ALL {
            let next = q.apply(kind).expect("nonempty");
            if !seen.contains(&next) {
                seen.insert(next.clone());
                frontier.push(next);
            }
        }
    }
    seen
}

/// Number of distinct labelled move sequences from `p` down to `()`.
///
/// `L` and `T` count as different plays even when they lead to the same
/// position, so `(1)` has two plays.
pub fn count_plays(p: &Partition) -> BigUint {
    let parts = p.parts();
    let Some(&width) = parts.first() else {
        return BigUint::from(1u32);
    };
    let one = BigUint::from(1u32);
    let width = width as usize;
    let mut below: Vec<BigUint> = vec![BigUint::default(); width];
    let mut current: Vec<BigUint> = vec![BigUint::default(); width];
    let mut below_len = 0usize;
    for &len in parts.iter().rev() {
        let len = len as usize;
        for col in (0..len).rev() {
            let right = if col + 1 < len {
                &current[col + 1]
            } else {
                &one
            };
            let down = if col < below_len { &below[col] } else { &one };
            let sum = right + down;
            current[col] = sum;
        }
        std::mem::swap(&mut below, &mut current);
        below_len = len;
    }
    below.swap_remove(0)
}

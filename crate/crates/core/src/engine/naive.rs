use super::GrundyValue;
use crate::error::{Error, Result};
use crate::partition::{MoveKind, Partition};

/// Largest position (in cells) the naive evaluator accepts.
pub const NAIVE_LIMIT: u64 = 30;

/// Plain game-tree recursion: SG(()) = 0, SG(p) = mex(SG(L p), SG(T p)).
pub fn sg_naive(p: &Partition) -> Result<GrundyValue> {
    let size = p.size();
    if size > NAIVE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: NAIVE_LIMIT,
        });
    }
    Ok(recurse(p))
}

fn recurse(p: &Partition) -> GrundyValue {
    if p.is_empty() {
        return GrundyValue::ZERO;
    }
    GrundyValue::mex_of(
        MoveKind::ALL
            .iter()
            .map(|&kind| recurse(&p.apply(kind).expect("nonempty"))),
    )
}

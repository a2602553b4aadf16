use std::collections::HashMap;

use super::GrundyValue;
use crate::partition::Partition;

/// Memo key: run-length form flattened as `[v1, e1, v2, e2, ...]`, largest
/// value first. The empty partition is the empty key.
type Key = Vec<u32>;

fn key_of(p: &Partition) -> Key {
    p.runs().into_iter().flat_map(|(v, e)| [v, e]).collect()
}

fn key_top(key: &[u32]) -> Key {
    let mut next = key.to_vec();
    next[1] -= 1;
    if next[1] == 0 {
        next.drain(0..2);
    }
    next
}

fn key_left(key: &[u32]) -> Key {
    let mut next = key.to_vec();
    for run in next.chunks_exact_mut(2) {
        run[0] -= 1;
    }
    if next[next.len() - 2] == 0 {
        next.truncate(next.len() - 2);
    }
    next
}

/// Dictionary from positions to their values, seeded with `() -> 0`.
#[derive(Clone, Debug)]
pub struct MemoTable {
    values: HashMap<Key, GrundyValue>,
}

impl Default for MemoTable {
    fn default() -> Self {
        MemoTable::new()
    }
}

impl MemoTable {
    pub fn new() -> Self {
        let mut values = HashMap::new();
        values.insert(Key::new(), GrundyValue::ZERO);
        MemoTable { values }
    }

    /// Number of stored positions, the seeded empty partition included.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, p: &Partition) -> Option<GrundyValue> {
        self.values.get(&key_of(p)).copied()
    }
}

/// Memoized recursion: a position's value is computed once, from the values
/// of its two followers, and then looked up.
///
/// The recursion is driven by an explicit stack so tall diagrams cannot
/// overflow the call stack.
pub fn sg_memo(p: &Partition, table: &mut MemoTable) -> GrundyValue {
    let root = key_of(p);
    if let Some(&v) = table.values.get(&root) {
        return v;
    }
    let mut stack = vec![root.clone()];
    while let Some(key) = stack.last() {
        if table.values.contains_key(key) {
            stack.pop();
            continue;
        }
        let top = key_top(key);
        let left = key_left(key);
        match (table.values.get(&top), table.values.get(&left)) {
            (Some(&t), Some(&l)) => {
                let key = stack.pop().expect("nonempty stack");
                table.values.insert(key, GrundyValue::mex_of([t, l]));
            }
            (t, l) => {
                let need_top = t.is_none();
                let need_left = l.is_none() && left != top;
                if need_top {
                    stack.push(top);
                }
                if need_left {
                    stack.push(left);
                }
            }
        }
    }
    table.values[&root]
}

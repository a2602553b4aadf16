use super::GrundyValue;
use crate::partition::Partition;

/// mex of a two-element multiset, without allocating.
#[inline]
fn mex2(a: u8, b: u8) -> u8 {
    if a != 0 && b != 0 {
        0
    } else if a != 1 && b != 1 {
        1
    } else {
        2
    }
}

/// Value of every subposition, one per cell of the diagram.
///
/// `get(row, col)` is the value of the position reached after `col`
/// left-column moves and `row` top-row moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridTable {
    rows: Vec<Vec<GrundyValue>>,
}

impl GridTable {
    pub fn get(&self, row: usize, col: usize) -> Option<GrundyValue> {
        self.rows.get(row).and_then(|r| r.get(col)).copied()
    }

    pub fn rows(&self) -> &[Vec<GrundyValue>] {
        &self.rows
    }

    /// Total number of cells, equal to the size of the partition.
    pub fn cells(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// The value of the whole position; zero for the empty partition.
    pub fn value(&self) -> GrundyValue {
        self.get(0, 0).unwrap_or(GrundyValue::ZERO)
    }
}

pub fn grid_table(p: &Partition) -> GridTable {
    let parts = p.parts();
    let mut rows: Vec<Vec<GrundyValue>> = Vec::with_capacity(parts.len());
    for &len in parts.iter().rev() {
        let len = len as usize;
        let below = rows.last();
        let mut row = vec![GrundyValue::ZERO; len];
        let mut right = 0u8;
        for col in (0..len).rev() {
            let down = below.and_then(|b| b.get(col)).map_or(0, |v| v.value());
            right = mex2(right, down);
            row[col] = GrundyValue::new(right);
        }
        rows.push(row);
    }
    rows.reverse();
    GridTable { rows }
}

/// Linear-time evaluation keeping two lines of the table, swept along the
/// shorter side of the diagram so the buffers hold `min(rows, cols)` cells.
pub fn sg_grid(p: &Partition) -> GrundyValue {
    let parts = p.parts();
    let Some(&width) = parts.first() else {
        return GrundyValue::ZERO;
    };
    if parts.len() <= width as usize {
        sg_by_columns(parts)
    } else {
        sg_by_rows(parts)
    }
}

/// Rows bottom to top, each right to left.
fn sg_by_rows(parts: &[u32]) -> GrundyValue {
    let width = parts[0] as usize;
    let mut below = vec![0u8; width];
    let mut current = vec![0u8; width];
    let mut below_len = 0usize;
    for &len in parts.iter().rev() {
        let len = len as usize;
        let mut right = 0u8;
        for col in (0..len).rev() {
            let down = if col < below_len { below[col] } else { 0 };
            right = mex2(right, down);
            current[col] = right;
        }
        std::mem::swap(&mut below, &mut current);
        below_len = len;
    }
    GrundyValue::new(below[0])
}

/// Columns right to left, each bottom to top. Column `col` holds one cell
/// for every part longer than `col`.
fn sg_by_columns(parts: &[u32]) -> GrundyValue {
    let mut right_col = vec![0u8; parts.len()];
    let mut current = vec![0u8; parts.len()];
    let mut right_len = 0usize;
    let mut height = 0usize;
    for col in (0..parts[0]).rev() {
        while height < parts.len() && parts[height] > col {
            height += 1;
        }
        let mut down = 0u8;
        for row in (0..height).rev() {
            let right = if row < right_len { right_col[row] } else { 0 };
            down = mex2(right, down);
            current[row] = down;
        }
        std::mem::swap(&mut right_col, &mut current);
        right_len = height;
    }
    GrundyValue::new(right_col[0])
}

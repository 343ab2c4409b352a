//! Rank of sparse matrices over the two-element field.

/// Rank of the matrix whose columns are given as sorted, duplicate-free row
/// index lists; `rows` bounds every index.
///
/// Standard column reduction: each column is cancelled against earlier
/// pivot columns by its lowest entry until it is empty or has a fresh low.
pub fn rank(rows: usize, columns: Vec<Vec<u32>>) -> usize {
    let mut pivot_of_low: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(columns.len());
    let mut scratch = Vec::new();
    let mut rank = 0;
    for mut col in columns {
        debug_assert!(col.windows(2).all(|w| w[0] < w[1]));
        while let Some(&low) = col.last() {
            let p = pivot_of_low[low as usize];
            if p == u32::MAX {
                break;
            }
            xor_into(&col, &reduced[p as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
        if let Some(&low) = col.last() {
            pivot_of_low[low as usize] = reduced.len() as u32;
            reduced.push(col);
            rank += 1;
        }
    }
    rank
}

/// Symmetric difference of two sorted lists.
fn xor_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

//! Set-partition enumeration via restricted growth strings.
//!
//! An assignment `a` with `a[0] = 0` and `a[i] <= max(a[0..i]) + 1` is the
//! canonical representative of a partition of `{0..n-1}`, so enumerating
//! these strings visits every partition exactly once (block labels are
//! normalized away). `max_blocks` caps the number of blocks, which is how
//! c-partite assignments are enumerated without the `c!` relabeling blowup.

use std::ops::ControlFlow;

/// Calls `visit(assignment, block_count)` once per partition of `0..n`
/// into at most `max_blocks` nonempty blocks. Returns `false` when the
/// visitor broke out early.
pub(crate) fn for_each_partition<F>(n: usize, max_blocks: usize, visit: &mut F) -> bool
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    assert!(n >= 1, "partition enumeration needs a nonempty ground set");
    if max_blocks == 0 {
        return true;
    }
    let mut assignment = vec![0usize; n];
    descend(&mut assignment, 1, 1, max_blocks, visit)
}

fn descend<F>(
    assignment: &mut [usize],
    index: usize,
    used: usize,
    max_blocks: usize,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    if index == assignment.len() {
        return visit(assignment, used) != ControlFlow::Break(());
    }
    let top = if used < max_blocks { used } else { used - 1 };
    for block in 0..=top {
        assignment[index] = block;
        let next_used = used.max(block + 1);
        if !descend(assignment, index + 1, next_used, max_blocks, visit) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, max_blocks: usize) -> usize {
        let mut c = 0;
        for_each_partition(n, max_blocks, &mut |_, _| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    #[test]
    fn bell_numbers() {
        // B(1)..B(7)
        let bell = [1, 2, 5, 15, 52, 203, 877];
        for (i, &b) in bell.iter().enumerate() {
            assert_eq!(count(i + 1, i + 1), b);
        }
    }

    #[test]
    fn bounded_block_counts() {
        // partitions of 4 elements into at most 2 blocks: S(4,1)+S(4,2) = 1+7
        assert_eq!(count(4, 2), 8);
        // at most 3 blocks: +S(4,3) = 6
        assert_eq!(count(4, 3), 14);
    }

    #[test]
    fn early_break_stops() {
        let mut seen = 0;
        let all = for_each_partition(5, 5, &mut |_, _| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!all);
        assert_eq!(seen, 3);
    }
}

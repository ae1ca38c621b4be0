use num_rational::Ratio;

use super::window::IntegerWindow;
use crate::error::{Error, Result};

/// Largest gap between consecutive members, counting the gaps from `lo` to
/// the first member and from the last member to `hi`. `None` when empty.
pub fn syndetic_gap(a: &IntegerWindow) -> Option<i64> {
    let m = a.members();
    let (first, last) = (*m.first()?, *m.last()?);
    let inner = m.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    Some(inner.max(first - a.lo()).max(a.hi() - last))
}

/// Maximum over all runs of `block_len` consecutive integers inside the
/// window of the fraction of them that are members.
pub fn banach_density_upper(a: &IntegerWindow, block_len: u64) -> Result<Ratio<u64>> {
    if block_len == 0 || block_len > a.span() {
        return Err(Error::InvalidParameter(format!(
            "block length {block_len} must be in 1..={}",
            a.span()
        )));
    }
    let m = a.members();
    let last_start = a.hi() - block_len as i64 + 1;
    // the best block can be taken to start at a member (or at lo if empty)
    let mut best = 0usize;
    let mut j = 0usize;
    for (i, &start) in m.iter().enumerate() {
        let start = start.min(last_start);
        let end = start + block_len as i64 - 1;
        j = j.max(i);
        while j < m.len() && m[j] <= end {
            j += 1;
        }
        let from = m.partition_point(|&v| v < start);
        best = best.max(j - from);
    }
    Ok(Ratio::new(best as u64, block_len))
}

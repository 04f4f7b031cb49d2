//! Schreier norm: `sup { sum_{i in F} |x_i| : F finite, min F >= |F| }`.
//!
//! An optimal admissible set of size `s` lives in `[s, inf)` and greedily
//! takes the largest magnitudes there, so the norm is the max over `s` of the
//! sum of the `s` largest `|x_i|` among indices `>= s`. The sum is
//! nondecreasing in `s` while the suffix is constant, so only `s` equal to a
//! support index needs to be evaluated.

use crate::error::Result;

pub fn eval(entries: &[(u64, f64)]) -> Result<f64> {
    // `entries` is sorted by index.
    let n = entries.len();
    let mut best = 0.0f64;
    for j in 0..n {
        let s = entries[j].0 as usize;
        let mut tail: Vec<f64> = entries[j..].iter().map(|&(_, v)| v.abs()).collect();
        tail.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        let take = s.min(tail.len());
        best = best.max(tail[..take].iter().sum());
    }
    Ok(best)
}

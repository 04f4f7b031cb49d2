//! Norm `sup |sum_{i=1}^N (-1)^i x_{n_i}|` over all increasing subsequences
//! `n_1 < n_2 < ...` of the integers.
//!
//! Dynamic program over positions with two states: the sign the next picked
//! slot would carry. Unpicked zero positions between support points let the
//! parity reset, which the DP models by merging the two states once per gap.
//! The absolute value is `max(|max|, |min|)` over both sign states.

use crate::error::Result;

pub fn eval(entries: &[(u64, f64)]) -> Result<f64> {
    // State `neg`: the next picked element gets coefficient -1 (an even
    // number picked so far); `pos`: coefficient +1.
    let mut max_neg = 0.0f64;
    let mut max_pos = f64::NEG_INFINITY;
    let mut min_neg = 0.0f64;
    let mut min_pos = f64::INFINITY;

    let merge = |a: &mut f64, b: &mut f64, take_max: bool| {
        let m = if take_max { a.max(*b) } else { a.min(*b) };
        *a = m;
        *b = m;
    };

    let mut prev_index: u64 = 0; // position 0 acts as a virtual left edge
    for &(index, value) in entries {
        if index > prev_index + 1 {
            // At least one zero position in between: picking a zero swaps
            // parity for free, so both states collapse to their best.
            merge(&mut max_neg, &mut max_pos, true);
            merge(&mut min_neg, &mut min_pos, false);
        }
        let (mn, mp) = (max_neg, max_pos);
        max_neg = mn.max(mp + value);
        max_pos = mp.max(mn - value);
        let (mn, mp) = (min_neg, min_pos);
        min_neg = mn.min(mp + value);
        min_pos = mp.min(mn - value);
        prev_index = index;
    }

    let hi = max_neg.max(max_pos);
    let lo = min_neg.min(min_pos);
    Ok(hi.max(-lo).max(0.0))
}

//! Empirical basis-constant estimation with explicit one-sidedness: every
//! report says whether its number is exact over the enumerated range or only
//! a lower bound for the true supremum.
//!
//! ```bash
//! cargo run --example estimate_constants
//! ```

use greedylab::constants::{
    basis_constant_estimate, coordinate_product, democracy_constant, quasi_greedy_estimate,
    suppression_unconditional_estimate, t_quasi_greedy_estimate, PairFamily,
};
use greedylab::greedy::DEFAULT_ENUMERATION_CAP;
use greedylab::samples::default_family;
use greedylab::spaces::SpaceSpec;
use greedylab::{Result, WeightFunction};

fn main() -> Result<()> {
    let family = default_family(12, 60, 6, 0);
    println!("sample family: {}", family.description);

    for space in [SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::Schreier, SpaceSpec::SignedSubsequence] {
        println!("--- {}", space.describe());
        let democracy = democracy_constant(&space, None, 5, 12, PairFamily::AllPairs)?;
        println!("democracy: {:.4} ({:?})", democracy.estimate, democracy.bound_direction);
        let signed = democracy_constant(&space, None, 4, 10, PairFamily::Signed)?;
        println!("super-democracy (signed): {:.4} ({:?})", signed.estimate, signed.bound_direction);
        let suppression = suppression_unconditional_estimate(&space, &family.vectors)?;
        println!("suppression: {:.4} ({:?})", suppression.estimate, suppression.bound_direction);
        let quasi = quasi_greedy_estimate(&space, &family.vectors, DEFAULT_ENUMERATION_CAP)?;
        println!("quasi-greedy: {:.4}", quasi.estimate);
        let weak = t_quasi_greedy_estimate(&space, &family.vectors, 0.5, DEFAULT_ENUMERATION_CAP)?;
        println!("0.5-quasi-greedy: {:.4}", weak.estimate);
        let basis = basis_constant_estimate(&space, &family.vectors)?;
        println!("basis constant: {:.4}", basis.estimate);
    }

    // The alternating rank weight cannot be told apart from the plain
    // indicator on the signed-subsequence space: both constants are 1.
    let f = WeightFunction::Alternating;
    let weighted = democracy_constant(&SpaceSpec::SignedSubsequence, Some(&f), 5, 12, PairFamily::AllPairs)?;
    println!("--- signed-subsequence with alternating weight: {:.4}", weighted.estimate);

    let product = coordinate_product(&SpaceSpec::Schreier, 10, 0)?;
    println!("--- Schreier coordinate product lower bound: {:.4}", product.estimate);
    Ok(())
}

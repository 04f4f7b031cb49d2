//! Evaluate every norm kind on a few hand-picked vectors.
//!
//! ```bash
//! cargo run --example eval_norms
//! ```

use greedylab::spaces::{SpaceSpec, SumMode};
use greedylab::{eval_norm, Coord, FiniteVector, Result};

fn main() -> Result<()> {
    let x = FiniteVector::flat(&[(1, 1.0), (2, -2.0), (5, 0.5), (6, 1.0)], 8)?;
    println!("x = {}", x.to_json_value());

    let flat_spaces = vec![
        SpaceSpec::lp(1.0),
        SpaceSpec::lp(2.0),
        SpaceSpec::C0Sup,
        SpaceSpec::Schreier,
        SpaceSpec::AlternatingTailL1Sum { block_sizes: vec![2, 3, 4] },
        SpaceSpec::SignedSubsequence,
        SpaceSpec::WeightedMixed,
        SpaceSpec::GenericBlockSum {
            block_sizes: vec![3, 5],
            mode: SumMode::C0,
            inner: Box::new(SpaceSpec::lp(1.0)),
        },
    ];
    for space in &flat_spaces {
        println!("{:<40} {:.6}", space.describe(), eval_norm(space, &x)?);
    }

    // The prefix indicator in the Schreier space: an admissible set may only
    // reach half of a prefix, so the norm is ceil(m / 2).
    for m in [4u64, 5, 9] {
        let prefix = FiniteVector::flat(&(1..=m).map(|i| (i, 1.0)).collect::<Vec<_>>(), m)?;
        println!("Schreier prefix m = {m}: {}", eval_norm(&SpaceSpec::Schreier, &prefix)?);
    }

    // Block-addressed coordinates: a space whose second block is far too
    // large for absolute indices still evaluates exactly.
    let space_json = r#"{
        "kind": "Section4Block",
        "params": {
            "certified": true,
            "blocks": [
                {"log_scale": -5.163, "log_size": 5.257, "size": 192},
                {"log_scale": -136.13, "log_size": 137.649, "size": null}
            ]
        }
    }"#;
    let block_space = SpaceSpec::from_json_str(space_json)?;
    let y = FiniteVector::from_entries(
        [(Coord::in_block(1, 3), 1.0), (Coord::in_block(2, 1), 0.25)],
        2,
    )?;
    println!("{:<40} {:.6}", block_space.describe(), eval_norm(&block_space, &y)?);
    Ok(())
}

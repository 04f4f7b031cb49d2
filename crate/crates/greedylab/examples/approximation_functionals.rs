//! The three approximation functionals and their witnesses: free
//! coefficients (`sigma_m`), projected coefficients (`sigma_tilde_m`), and
//! distance to the span of a rank-weighted indicator (`d_m_f`).
//!
//! ```bash
//! cargo run --example approximation_functionals
//! ```

use greedylab::functionals::{d_m_f, default_candidates, sigma_m, sigma_tilde_m, SearchBudget};
use greedylab::spaces::SpaceSpec;
use greedylab::{FiniteVector, Result, WeightFunction};

fn main() -> Result<()> {
    let x = FiniteVector::flat(&[(1, 3.0), (2, 2.0), (3, 1.0)], 4)?;
    let budget = SearchBudget::default();

    for space in [SpaceSpec::lp(2.0), SpaceSpec::lp(1.0), SpaceSpec::Schreier] {
        println!("--- {}", space.describe());
        for m in 0..=2 {
            let candidates = default_candidates(&space, &x, m);
            let sigma = sigma_m(&space, &x, m, &candidates, &budget)?;
            let tilde = sigma_tilde_m(&space, &x, m, &candidates, &budget)?;
            println!(
                "m = {m}: sigma = {:.6} (witness {:?}), sigma_tilde = {:.6}",
                sigma.value, sigma.witness_set, tilde.value
            );
        }
        let f = WeightFunction::Constant(1.0);
        let candidates = default_candidates(&space, &x, 1);
        let d = d_m_f(&space, &x, 1, &f, &candidates, &budget)?;
        println!(
            "distance to best 1-term indicator span: {:.6} at alpha = {:.6} on {:?} ({:?})",
            d.value, d.witness_coefficients[0], d.witness_set, d.optimizer_status
        );
    }

    // Non-monotone norms can push the optimal set beyond the support; the
    // candidate horizon extends past it for that reason.
    let x = FiniteVector::flat(&[(1, 1.0), (2, 1.0)], 3)?;
    let space = SpaceSpec::SignedSubsequence;
    let candidates = default_candidates(&space, &x, 1);
    let d = d_m_f(&space, &x, 1, &WeightFunction::Constant(1.0), &candidates, &budget)?;
    println!(
        "--- {}\nbest 1-term span witness {:?} with alpha = {:.4}, value {:.6}",
        space.describe(),
        d.witness_set,
        d.witness_coefficients[0],
        d.value
    );
    Ok(())
}

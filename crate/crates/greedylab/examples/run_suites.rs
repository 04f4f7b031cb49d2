//! Run a few verification suites and persist one of the reports the same way
//! the command-line front end does.
//!
//! ```bash
//! cargo run --example run_suites
//! ```

use greedylab::cli::{Command, ExperimentConfig, Format, Params};
use greedylab::samples::default_family;
use greedylab::spaces::SpaceSpec;
use greedylab::verify::{suite_disjoint_democracy, suite_space_witnesses, suite_t_weak};
use greedylab::Result;

fn main() -> Result<()> {
    // The example-space gallery: every growth witness and certified bound.
    let gallery = suite_space_witnesses(0)?;
    println!("{}", gallery.summary());
    for check in &gallery.checks {
        println!(
            "  [{:?}] {} {}",
            check.status,
            check.statement_id,
            check.worst_ratio.map(|r| format!("= {r:.6}")).unwrap_or_default()
        );
    }

    // Disjoint democracy controls full democracy with a squared constant.
    let disjoint = suite_disjoint_democracy(&SpaceSpec::Schreier, 6, 12)?;
    println!("{}", disjoint.summary());

    // t-weak greedy projections stay bounded on a monotone-norm space.
    let family = default_family(10, 40, 5, 0);
    let weak = suite_t_weak(&SpaceSpec::lp(1.5), &family.vectors, 0.5, Some(1.0))?;
    println!("{}", weak.summary());

    // The same run through the batch front end, written atomically to disk.
    let config = ExperimentConfig {
        space: SpaceSpec::Schreier,
        command: Command::Suite {
            which: "disjoint_democracy".into(),
            params: Params { max_size: Some(6), horizon: Some(12), ..Default::default() },
        },
        seed: 0,
        format: Format::Json,
    };
    let out = std::env::temp_dir().join("greedylab-example-report.json");
    let outcome = greedylab::cli::run(&config, Some(&out))?;
    println!("{}", outcome.summary);
    Ok(())
}

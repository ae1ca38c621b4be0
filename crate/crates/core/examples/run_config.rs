//! Runs an inline config through the report pipeline, verifies the report
//! and shows that an edited witness is caught.

use reclab::cli::report::{ReportOutcome, SearchResult};
use reclab::cli::{parse_config, run_all, verify_report};

const CONFIG: &str = r#"
[[experiments]]
kind = "rp-witness"
system = { type = "rotation", alpha = "golden" }
x = 0
y = 0
d = 1
eps = "7/50"
budget = { window = [1, 100] }

[[experiments]]
kind = "ramsey-sg2"
p = { seed = 3, slack = 3, count = 8 }
window = [1, 19683]
"#;

fn main() -> reclab::Result<()> {
    let report = run_all(&parse_config(CONFIG)?)?;
    println!("hash {}", report.canonical_sha256);
    println!("verify: {:?}", verify_report(&report));

    let mut tampered = report.clone();
    if let ReportOutcome::RpWitness { search: SearchResult::Found { witness } } = &mut tampered.experiments[0].outcome {
        witness.verified_sums[2] += 1;
    }
    println!("verify after editing a sum: {:?}", verify_report(&tampered));
    Ok(())
}

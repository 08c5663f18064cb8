//! Running the seeded property suites from code.
//!
//! ```bash
//! cargo run --release --example verify_suites -- 25 7
//! ```

use abelian_connections::cli::{run_suite, Suite, SuiteConfig};
use abelian_connections::monodromy::DEFAULT_TOLERANCE;

fn main() {
    let mut args = std::env::args().skip(1);
    let cases = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let config = SuiteConfig { cases, seed, max_degree: 4, tolerance: DEFAULT_TOLERANCE };
    for outcome in run_suite(Suite::All, &config) {
        println!("{}", outcome.summary());
        for f in &outcome.failures {
            println!("  {f}");
        }
    }
}

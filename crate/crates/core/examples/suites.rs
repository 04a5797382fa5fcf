//! Running suites from code, the same way `cellwork suite` does.

use cellwork::workbench::suite::status;
use cellwork::workbench::{exit_code, load, run_suites, RunConfig, BUILTIN_ALIAS};

fn main() {
    let inst = load(BUILTIN_ALIAS).unwrap();
    let cfg = RunConfig {
        samples: Some(100),
        suites: ["coherence", "effective-unions", "left-cancel", "symmetry"].map(String::from).to_vec(),
        ..RunConfig::default()
    };
    let reports = run_suites(&inst, &cfg).unwrap();
    for r in &reports {
        println!(
            "{:<18} {:<22} {:?} failures {:?}",
            r.suite,
            format!("{:?}", r.verdict),
            status(r, &inst.notion),
            r.failure_kinds()
        );
    }
    println!("exit code {}", exit_code(&reports, &inst.notion));
}

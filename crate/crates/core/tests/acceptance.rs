//! Acceptance criteria A1–A11. `ACCEPTANCE_ONLY=A4,A6` restricts the run.

use pxp_floquet::acceptance::{run_one, CRITERIA};

fn main() {
    let only: Option<Vec<String>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| {
        s.split(',')
            .map(|t| t.trim().to_ascii_uppercase())
            .collect()
    });
    let mut failed = 0;
    for (id, ..) in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.iter().any(|x| x == id)) {
            continue;
        }
        let outcome = run_one(id).expect("known id");
        println!("{outcome}");
        failed += usize::from(!outcome.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

// Runs the eight acceptance criteria and prints one line for each.

use cli::criteria::run;
use cli::Budget;

fn main() {
    let budget = Budget::new(1800.0).expect("positive budget");
    let verdicts = run(&budget, |v| println!("{v}"));
    let failed = verdicts.iter().filter(|v| !v.ok).count();
    println!("acceptance: {} of {} criteria pass", verdicts.len() - failed, verdicts.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

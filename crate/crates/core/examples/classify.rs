//! Classify a few maps and print the lowest-order equation each one solves.
//!
//! cargo run --example classify -- "x^2 - 2"

use denv::algebra::Field;
use denv::cli::{format_ratfun, parse_ratfun};
use denv::solver::{classify, SolveCaps, Verdict};

fn main() -> Result<(), denv::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["x^3".to_string(), "2*x^2 - 1".into(), "(x^2+1)^2/(4*x^3-4*x)".into(), "x^2 + 1".into(), "x + 1".into()]
    } else {
        args
    };
    let caps = SolveCaps::default();
    for src in inputs {
        let r = parse_ratfun(&src, Field::Rational)?;
        let report = classify(&r, &caps)?;
        match &report.verdict {
            Verdict::Nontrivial { order, equation } => {
                println!("{:<28} order {order}  {equation}  [{}]", format_ratfun(&r), report.family_guess.label())
            }
            Verdict::TrivialWithinCaps => println!("{:<28} trivial within caps", format_ratfun(&r)),
        }
    }
    Ok(())
}

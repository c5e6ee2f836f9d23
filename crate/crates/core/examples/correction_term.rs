//! The correction term computed along both routes, with the contribution of
//! each number `k` of components, for every one-nodal problem in `P^3` of
//! degree at most three.

use nodalcount::format_rational;
use nodalcount::nodal::Calculator;
use nodalcount::problem::nodal_problems;

fn main() -> nodalcount::Result<()> {
    let calc = Calculator::new(3);
    for d in 1..=3 {
        for spec in nodal_problems(3, d) {
            let values = calc.cr1(&spec)?;
            let terms: Vec<String> = values
                .terms
                .iter()
                .map(|t| format!("k={}: {}", t.k, format_rational(&t.eta_route)))
                .collect();
            println!(
                "{spec}: eta route {}, theta route {}  ({})",
                format_rational(&values.eta),
                format_rational(&values.theta),
                terms.join(", ")
            );
        }
    }
    Ok(())
}

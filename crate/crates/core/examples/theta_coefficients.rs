//! Prints the coefficients Θ(k, m) next to their closed form, and the table of
//! set-partition numbers they are built from.

use nodalcount::combinatorics::{stirling_split, theta_closed, ThetaTable};
use nodalcount::format_rational;

fn main() {
    let table = ThetaTable::new();
    println!("Θ(k, m) for 2k + m <= 9");
    for k in 1..=4u32 {
        let row: Vec<String> = (0..=(9 - 2 * k))
            .map(|m| {
                let v = table.theta(k, m);
                assert_eq!(v, theta_closed(k, m));
                format!("{:>8}", format_rational(&v))
            })
            .collect();
        println!("k={k}: {}", row.join(""));
    }

    println!("\nsplits of a k*-set into k blocks");
    for k_star in 1..=7u32 {
        let row: Vec<String> = (1..=k_star)
            .map(|k| format!("{:>6}", stirling_split(k_star, k)))
            .collect();
        println!("k*={k_star}: {}", row.join(""));
    }
}

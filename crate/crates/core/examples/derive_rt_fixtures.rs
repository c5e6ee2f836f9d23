//! Writes the RT fixture file used by the table reproduction tests.
//!
//! The genus-one invariants are not computed by the library. This program
//! derives them from the genus-0 numbers by the degeneration formula
//! `RT_{1,d}(μ) = Σ_{e+f=n} <h^e, h^f, μ>_{0,d}` (the elliptic curve
//! degenerated to a rational curve with its two branch points glued along the
//! diagonal of `P^n`) and stores them keyed by canonical problem key.
//!
//!     cargo run --example derive_rt_fixtures -- crates/core/fixtures/rt_fixtures.json

use std::path::PathBuf;

use nodalcount::genus0::Genus0Engine;
use nodalcount::nodal::RTFixtureTable;
use nodalcount::problem::{nodal_problems, ProblemSpec};
use num_bigint::BigInt;

fn from_counts(n: u32, d: u32, counts: &[usize]) -> ProblemSpec {
    let codims = counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 2, c))
        .collect();
    ProblemSpec::new(n, d, codims).expect("valid constraints")
}

fn degeneration(engine: &Genus0Engine, spec: &ProblemSpec) -> BigInt {
    let n = spec.n;
    let mut counts = spec.mu.counts(n);
    let mut total = BigInt::from(0);
    for e in 0..=n {
        let f = n - e;
        counts[e as usize] += 1;
        counts[f as usize] += 1;
        total += engine.primary(spec.d, &counts);
        counts[e as usize] -= 1;
        counts[f as usize] -= 1;
    }
    total
}

fn main() -> nodalcount::Result<()> {
    let mut problems = vec![
        from_counts(3, 4, &[5, 5]),
        from_counts(4, 4, &[5, 1, 4]),
        from_counts(5, 4, &[5, 1, 0, 4]),
        from_counts(5, 6, &[2, 1, 1, 7]),
        from_counts(6, 6, &[2, 1, 1, 1, 6]),
    ];
    for (n, max_d) in [(2, 5), (3, 3), (4, 2)] {
        for d in 1..=max_d {
            problems.extend(nodal_problems(n, d));
        }
    }

    let mut table = RTFixtureTable::new();
    for spec in &problems {
        spec.require_nodal()?;
        let engine = Genus0Engine::new(spec.n);
        let rt = degeneration(&engine, spec);
        eprintln!("{spec}: RT = {rt}");
        table.insert(spec, rt);
    }

    match std::env::args_os().nth(1) {
        Some(path) => table.save(&PathBuf::from(path))?,
        None => println!("{}", table.to_json()),
    }
    Ok(())
}

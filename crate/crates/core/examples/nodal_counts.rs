//! One-nodal counts from the bundled RT fixtures: the published table rows
//! and the plane identity `C(d−1, 2) n_d`.

use nodalcount::format_rational;
use nodalcount::nodal::{rt_lookup, Calculator, RTFixtureTable};
use nodalcount::selftest::{spec_from_counts, TABLE_ROWS};

fn main() -> nodalcount::Result<()> {
    let fixtures = RTFixtureTable::bundled();
    for (n, d, counts, published) in TABLE_ROWS {
        let spec = spec_from_counts(n, d, counts)?;
        let calc = Calculator::new(n);
        let rt = rt_lookup(&spec, &fixtures)?;
        let cr1 = calc.cr1(&spec)?;
        let count = calc.count_nodal(&spec, &fixtures)?;
        println!(
            "{spec}: RT {rt}, CR1 {}, count {} (published {published})",
            format_rational(&cr1.eta),
            format_rational(&count)
        );
    }

    let plane = Calculator::new(2);
    for d in 1..=5 {
        println!(
            "plane identity d={d}: {}",
            plane.plane_identity_check(d, &fixtures)?
        );
    }
    Ok(())
}

//! Intersection numbers `<a^l η̃_r>` and `<a^l η_r>` on the spaces of
//! `k`-tuples of rational curves with a common point, for conics in `P^3`
//! through seven lines.

use nodalcount::format_rational;
use nodalcount::problem::{vbar_dimension, ProblemSpec};
use nodalcount::vbar::VbarIntersections;

fn main() -> nodalcount::Result<()> {
    let spec = ProblemSpec::new(3, 2, vec![2; 7])?;
    spec.require_nodal()?;
    let vbar = VbarIntersections::new(spec.n);
    println!("{spec}");
    println!(
        "{:>3} {:>3} {:>3} {:>3} {:>12} {:>12}",
        "k", "m", "l", "r", "eta_tilde", "eta"
    );
    for k in 1..=2 {
        for m in 0..=spec.mu.len() as u32 {
            let dim = vbar_dimension(spec.n, k, m);
            if dim < 0 {
                break;
            }
            for l in 0..=dim as u32 {
                let r = dim as u32 - l;
                let tilde = vbar.eta_tilde_number(&spec, k, m, l, r)?;
                let eta = vbar.eta_number(&spec, k, m, l, r)?;
                println!(
                    "{k:>3} {m:>3} {l:>3} {r:>3} {:>12} {:>12}",
                    format_rational(&tilde),
                    format_rational(&eta)
                );
            }
        }
    }
    Ok(())
}

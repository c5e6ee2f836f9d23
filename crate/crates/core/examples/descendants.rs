//! One-point descendant invariants `<ψ^b h^c ; μ>_d`. The ψ exponent is the
//! one the dimension of the moduli space leaves over.

use nodalcount::format_rational;
use nodalcount::genus0::{DescendantSpec, Genus0Engine};
use nodalcount::problem::ConstraintTuple;

fn psi_power(n: u32, d: u32, c: u32, codims: &[u32]) -> Option<u32> {
    let marked = codims.len() as i64 + 1;
    let dim = (n as i64 + 1) * d as i64 + n as i64 - 3 + marked;
    let used = c as i64 + codims.iter().map(|&x| x as i64).sum::<i64>();
    u32::try_from(dim - used).ok()
}

fn show(engine: &Genus0Engine, d: u32, c: u32, codims: Vec<u32>) -> nodalcount::Result<()> {
    let n = engine.n();
    let Some(b) = psi_power(n, d, c, &codims) else {
        return Ok(());
    };
    let spec = DescendantSpec {
        n,
        d,
        b,
        c,
        constraints: ConstraintTuple::new(codims)?,
    };
    println!(
        "  P^{n} d={d} <ψ^{b} h^{c} ; {}> = {}",
        spec.constraints,
        format_rational(&engine.descendant(&spec))
    );
    Ok(())
}

fn main() -> nodalcount::Result<()> {
    let plane = Genus0Engine::new(2);
    println!("lines and conics in the plane");
    for d in 1..=2 {
        for points in 0..=(3 * d as usize - 1) {
            show(&plane, d, 0, vec![2; points])?;
        }
    }

    let space = Genus0Engine::new(3);
    println!("conics in P^3 through lines, ψ at a point on a plane");
    for lines in 4..=8 {
        show(&space, 2, 1, vec![2; lines])?;
    }
    Ok(())
}

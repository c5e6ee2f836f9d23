//! Genus-0 counts from the associativity recursion, checked against Schubert
//! calculus for lines and the classical recursion for plane curves.

use nodalcount::genus0::oracles::{plane_recursion_oracle, schubert_lines_oracle};
use nodalcount::genus0::Genus0Engine;
use nodalcount::problem::{genus0_problems, ProblemSpec};
use nodalcount::{format_rational, ExactRational};

fn main() -> nodalcount::Result<()> {
    println!("lines in P^3 and P^4");
    for n in 3..=4 {
        let engine = Genus0Engine::new(n);
        for spec in genus0_problems(n, 1) {
            let got = engine.count_rational(&spec)?;
            let want = schubert_lines_oracle(n, spec.mu.codims())?;
            assert_eq!(got, ExactRational::from_integer(want));
            println!("  {spec}: {}", format_rational(&got));
        }
    }

    println!("plane curves through 3d-1 points");
    let plane = Genus0Engine::new(2);
    for d in 1..=6 {
        let spec = ProblemSpec::new(2, d, vec![2; 3 * d as usize - 1])?;
        let got = plane.count_rational(&spec)?;
        assert_eq!(got, ExactRational::from_integer(plane_recursion_oracle(d)));
        println!("  d={d}: {}", format_rational(&got));
    }

    println!("twisted cubics in P^3 through 12 lines");
    let space = Genus0Engine::new(3);
    let spec = ProblemSpec::new(3, 3, vec![2; 12])?;
    println!("  {}", format_rational(&space.count_rational(&spec)?));
    Ok(())
}

//! The Hopf algebroid presenting displays and their isomorphisms: the
//! structure maps, the symbolic axioms and the invariant ideal (p, beta0_hh).

use rand::SeedableRng;
use witt_display::moduli::{build_presentation, numeric_axioms};

fn main() -> witt_display::Result<()> {
    let pres = build_presentation(3, 2, 2)?;
    println!("A = {}", pres.a_ring());
    println!("Gamma = {}", pres.gamma());
    if let Some(eta_r) = pres.eta_r() {
        for (gen, image) in eta_r.iter().take(2) {
            println!("eta_R({gen}) = {image}");
        }
    }
    for report in pres.check_axioms()? {
        println!("{}: {} checks, passed {}", report.name, report.checked, report.passed());
    }
    let cert = pres.invariant_ideal_certificate()?;
    println!("eta_R(beta0_22) = ({}) beta0_22 + 3 ({})", cert.unit, cert.quotient);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for report in numeric_axioms(&mut rng, 5, 3, 3, 20)? {
        println!("numeric {} at p = 5, h = 3: passed {}", report.name, report.passed());
    }
    Ok(())
}

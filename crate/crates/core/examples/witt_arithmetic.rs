//! Arithmetic in W_N(R): sums, products, ghost components, Frobenius,
//! Verschiebung, Teichmüller lifts and inverses.

use witt_display::witt::table::{generate_universal_polynomials, WittOp};
use witt_display::{Ring, WittVector};

fn main() -> witt_display::Result<()> {
    let z = Ring::integers();
    let one = WittVector::parse(2, &z, &["1", "0"])?;
    println!("[1, 0] + [1, 0] = {} in W_2(Z) at p = 2", one.add(&one));

    let table = generate_universal_polynomials(3, 2)?;
    println!("S_1 at p = 3: {}", table.get(WittOp::Sum, 1).expect("generated"));

    let r = Ring::parse("Z/9[u]/(u)^4")?;
    let x = WittVector::parse(3, &r, &["1 + u", "u^2", "2"])?;
    println!("x = {x} over {r}");
    println!("ghost components: {:?}", x.ghosts().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("f(x) = {}", x.frobenius()?);
    println!("v(x) = {}", x.verschiebung());
    println!("x^-1 = {}", x.invert()?);
    println!("[u] = {}", WittVector::teichmuller(3, &r.var("u")?, 3));
    Ok(())
}

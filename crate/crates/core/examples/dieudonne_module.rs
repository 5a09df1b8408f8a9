//! The Dieudonné module of a display over a finite field and the relations
//! FV = VF = p.

use rand::SeedableRng;
use witt_display::dieudonne::to_dieudonne;
use witt_display::display::random::random_display;
use witt_display::Ring;

fn main() -> witt_display::Result<()> {
    let k = Ring::parse("GF(2^2)")?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let d = random_display(&mut rng, 2, 3, 2, 3, &k)?;
    let m = to_dieudonne(&d)?;
    println!("F =\n{}\nV =\n{}", m.f_matrix(), m.v_matrix());
    println!("FV = VF = p: {}", m.check_fv()?);

    // over a prime field the dual module has F and V transposed and swapped
    let f3 = Ring::integers_mod(3)?;
    let d = random_display(&mut rng, 3, 3, 2, 3, &f3)?;
    let m = to_dieudonne(&d)?;
    let md = to_dieudonne(&d.dual()?)?.permute(&[1, 2, 0]);
    println!("dual F = V^t: {}", md.f_matrix() == &m.v_matrix().transpose());
    println!("dual V = F^t: {}", md.v_matrix() == &m.f_matrix().transpose());
    Ok(())
}

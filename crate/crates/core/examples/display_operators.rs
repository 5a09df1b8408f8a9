//! A display in matrix form: the operators F and V^-1, nilpotence, a change
//! of coordinates and the dual display.

use rand::SeedableRng;
use witt_display::display::corpus::{lubin_tate, lubin_tate_ring};
use witt_display::display::random::random_change;
use witt_display::display::{basis_vector, reduce_h2};
use witt_display::WittVector;

fn main() -> witt_display::Result<()> {
    let r = lubin_tate_ring(3, 2, 4)?;
    let d = lubin_tate(3, 2, 3, &r)?;
    println!("Lubin-Tate display over {r}:\n{}", d.matrix_form());

    let e1 = basis_vector(&d, 0);
    let e2 = basis_vector(&d, 1);
    println!("F e1 = {:?}", d.apply_f(&e1)?.iter().map(WittVector::to_string).collect::<Vec<_>>());
    println!("V^-1 e2 = {:?}", d.apply_vinv(&e2)?.iter().map(WittVector::to_string).collect::<Vec<_>>());
    println!("nilpotence: {:?}", d.is_nilpotent(None)?);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let phi = random_change(&mut rng, 3, 2, 1, 3, &r)?;
    let (moved, factor) = d.change_of_coords(&phi)?;
    println!("after a random change:\n{}\n1-form factor {factor}", moved.matrix_form());
    let (normal, _) = reduce_h2(&moved)?;
    println!("normal form:\n{}", normal.matrix_form());

    let dual = d.dual()?;
    println!("dual (h = {}, d = {}):\n{}", dual.height(), dual.dimension(), dual.matrix_form());
    Ok(())
}

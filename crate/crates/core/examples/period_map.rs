//! Horizontal sections A with Psi sigma(A) = A Psi_bar and the resulting
//! approximation of the period map, compared with the display point.

use witt_display::deformation::projective_point;
use witt_display::display::corpus::{lubin_tate, lubin_tate_ring};
use witt_display::period::{compare_with_display_point, horizontal_sections, period_map};

fn main() -> witt_display::Result<()> {
    for (p, h) in [(2, 2), (3, 3)] {
        let order = (p * p + 1) as u32;
        let pa = horizontal_sections(p, h, order)?;
        println!("p = {p}, h = {h}, modulo J^{order}, {} iterations:\nA = {}", pa.iterations(), pa.a());
        println!("functional equation: {}", pa.functional_equation_holds());
        println!("period map: {}", period_map(&pa)?);
        let point = projective_point(&lubin_tate(p, h, 2, &lubin_tate_ring(p, h, 4)?)?)?;
        println!("agrees with {point} modulo J^{p}: {}", compare_with_display_point(&pa, &point)?);
    }
    Ok(())
}

//! The action of a primitive element zeta of F_{p^h} on the Lubin-Tate
//! display: the diagonal Teichmüller change carries the pulled-back display
//! back to the original and scales the invariant 1-form by zeta.

use witt_display::display::corpus::zeta_fixture;

fn main() -> witt_display::Result<()> {
    for (p, h) in [(3, 2), (5, 2), (3, 3)] {
        let fx = zeta_fixture(p, h, 2, 3)?;
        let (back, factor) = fx.pulled_back.change_of_coords(&fx.change)?;
        println!(
            "p = {p}, h = {h}: zeta = {}, carried back: {}, factor = {}",
            fx.zeta,
            back == fx.display,
            factor.get(0, 0)
        );
    }
    Ok(())
}

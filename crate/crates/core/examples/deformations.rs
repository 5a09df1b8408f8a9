//! The point [w0(B_1h) : ... : w0(B_hh)], the Jacobian étale test on its
//! charts and the enumeration of first-order lifts.

use witt_display::deformation::{etale_all_charts, jacobian_etale_check, projective_point, tangent_lift_oracle, DEFAULT_BUDGET};
use witt_display::display::corpus::{lubin_tate, lubin_tate_matrix, lubin_tate_ring};
use witt_display::display::DisplayMatrix;
use witt_display::{Elem, Ring};

fn main() -> witt_display::Result<()> {
    let d = lubin_tate(2, 3, 2, &lubin_tate_ring(2, 3, 4)?)?;
    let point = projective_point(&d)?;
    let chart = point.chart(0)?;
    let report = jacobian_etale_check(&chart)?;
    println!("{point}: étale on chart 0: {}, Jacobian determinant {:?}", report.etale, report.jacobian_det.map(|x| x.to_string()));
    println!("étale on every unit chart: {}", etale_all_charts(&point)?.etale);

    for (p, h) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let k = Ring::integers_mod(p)?;
        let us: Vec<Elem> = (1..h).map(|_| k.zero()).collect();
        let d = DisplayMatrix::new(p, h, h - 1, lubin_tate_matrix(p, 2, &us)?)?;
        let rep = tangent_lift_oracle(&d, DEFAULT_BUDGET, true)?;
        println!(
            "p = {p}, h = {h}: {} lifts in {} classes, closed form predicts {}, agrees: {}",
            rep.lift_count, rep.class_count, rep.expected, rep.closed_form_agrees
        );
    }
    Ok(())
}

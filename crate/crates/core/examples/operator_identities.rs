//! Position and momentum shifts produced by the boost operator.

use geophase::boost::apply_boost_commuted;
use geophase::{apply_boost, check_operator_transforms, states, BoostParams, Grid};

fn main() -> geophase::Result<()> {
    let grid = Grid::new(512, -30.0, 60.0 / 512.0)?;
    let psi = states::gaussian(grid, 0.5, 0.8, 0.7)?;
    for (v, t) in [(0.5, 1.0), (-1.5, 2.0), (2.0, 0.3)] {
        let b = BoostParams::new(v, 1.0, 1.0)?;
        let moved = apply_boost(&psi, t, &b)?;
        let r = check_operator_transforms(&psi, t, &b)?;
        let other_order = apply_boost_commuted(&psi, t, &b)?;
        let ordering_gap = moved
            .amplitudes()
            .iter()
            .zip(other_order.amplitudes())
            .map(|(a, c)| (a - c).norm())
            .fold(0.0, f64::max);
        println!(
            "v = {v:+.1}, t = {t}: <Q> {:+.4} -> {:+.4}, <P> {:+.4} -> {:+.4}, r_Q {:.1e}, r_P {:.1e}, orderings differ by {:.1e}",
            psi.expect_q()?,
            moved.expect_q()?,
            psi.expect_p()?,
            moved.expect_p()?,
            r.position,
            r.momentum,
            ordering_gap
        );
    }
    Ok(())
}

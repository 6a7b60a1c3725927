//! Curve stitching: the parabola between two axes, a circle and a cardioid.

use ornata::curves::PlaneCurve;
use ornata::export::{stitch_svg, SvgStyle};
use ornata::stitch::{circle_stitch, multiplier_stitch, two_rail_stitch};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;
    let style = SvgStyle::default();

    let n = 20;
    let x_axis = PlaneCurve::segment([0.0, 0.0], [1.0, 0.0], n - 1)?;
    let y_axis = PlaneCurve::segment([0.0, 0.0], [0.0, 1.0], n - 1)?;
    let parabola = two_rail_stitch(&x_axis, &y_axis, n, true)?;
    println!("parabola: {} chords over {} pins", parabola.chords.len(), parabola.pins.len());
    std::fs::write(out.join("parabola.svg"), stitch_svg(&parabola, &style)?)?;

    std::fs::write(out.join("circle.svg"), stitch_svg(&circle_stitch(48, 17, 1.0)?, &style)?)?;
    std::fs::write(out.join("cardioid.svg"), stitch_svg(&multiplier_stitch(120, 2, 1.0)?, &style)?)?;
    Ok(())
}

//! The four-petal polar flower and its hodograph, written as SVG.

use std::f64::consts::TAU;

use ornata::curves::{derivative_curve, sample, CurveDef};
use ornata::export::{curve_svg, SvgStyle};
use ornata::expr::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let flower = CurveDef::polar(parse("sin(4*t)^2+cos(4*t)")?, 0.0, TAU)?;
    let points = sample(&flower, 720)?;
    std::fs::write(out.join("flower.svg"), curve_svg(&points, &SvgStyle::default())?)?;

    let hodograph = sample(&derivative_curve(&flower)?, 720)?;
    std::fs::write(out.join("flower_hodograph.svg"), curve_svg(&hodograph, &SvgStyle::default())?)?;
    println!("wrote {} and {} points to {}", points.len(), hodograph.len(), out.display());
    Ok(())
}

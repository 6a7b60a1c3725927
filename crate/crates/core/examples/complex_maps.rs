//! A grid of lines pushed through exp and a fractional power.

use ornata::cmap::{check_conformal, map_curve, ComplexMap};
use ornata::curves::{sample, CurveDef};
use ornata::export::{curves_svg, SvgStyle};
use ornata::expr::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let map = ComplexMap::Exp {}.then(ComplexMap::recip_power(0.5)?);
    let mut images = Vec::new();
    for k in -4..=4 {
        let y = 0.3 * k as f64;
        let horizontal = CurveDef::parametric(parse("t")?, parse(&y.to_string())?, -1.5, 1.5)?;
        let vertical = CurveDef::parametric(parse(&y.to_string())?, parse("t")?, -1.2, 1.2)?;
        for line in [horizontal, vertical] {
            images.push(map_curve(&map, &sample(&line, 200)?)?);
        }
    }
    println!("angle error at 0.2+0.1i: {:.1e}", check_conformal(&map, [0.2, 0.1], 1e-4)?);
    std::fs::write(out.join("exp_sqrt_grid.svg"), curves_svg(&images, &SvgStyle::default())?)?;
    Ok(())
}

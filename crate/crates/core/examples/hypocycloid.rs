//! Spirograph curves: find how many turns close the curve, then draw it.

use ornata::curves::{closing_turns, make_hypocycloid, sample};
use ornata::export::{curves_svg, SvgStyle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let mut curves = Vec::new();
    for (a, b, c) in [(5.0, 3.0, 5.0), (7.0, 2.0, 1.5), (10.0, 3.5, 3.0)] {
        let turns = closing_turns(a, b, 1000).expect("rational radii close");
        println!("a={a} b={b} c={c}: closes after {turns} turns");
        curves.push(sample(&make_hypocycloid(a, b, c, turns)?, 2000)?);
    }
    std::fs::write(out.join("hypocycloids.svg"), curves_svg(&curves, &SvgStyle::default())?)?;
    Ok(())
}

//! The three regular tilings of the plane, three rings deep.

use ornata::export::{tiling_svg, SvgStyle};
use ornata::solids::polygon_tiling;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    for p in [3, 4, 6] {
        let tiles = polygon_tiling(p, 3)?;
        println!("{p}-gons: {} tiles", tiles.len());
        std::fs::write(out.join(format!("tiling_{p}.svg")), tiling_svg(&tiles, &SvgStyle::default())?)?;
    }
    if let Err(e) = polygon_tiling(5, 1) {
        println!("{e}");
    }
    Ok(())
}

//! Fold-up nets: the dodecahedron with glue tabs and an elevated cube.

use ornata::export::{net_svg, to_obj, SvgStyle};
use ornata::solids::{build_solid, elevate, unfold_net, SchlafliPair, Spanning};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let dodeca = build_solid(SchlafliPair::DODECAHEDRON)?;
    let net = unfold_net(&dodeca, &Spanning::Dress)?.with_tabs();
    println!("dodecahedron: {} faces, {} folds, {} tabs", net.faces.len(), net.folds.len(), net.tabs.len());
    std::fs::write(out.join("dodecahedron_net.svg"), net_svg(&net, &SvgStyle::default())?)?;

    let stellated = elevate(&build_solid(SchlafliPair::CUBE)?)?;
    std::fs::write(out.join("elevated_cube.obj"), to_obj(&stellated.mesh)?)?;
    let net = unfold_net(&stellated, &Spanning::BreadthFirst { root: 0 })?;
    match net.overlap {
        None => println!("elevated cube: net of {} triangles lies flat", net.faces.len()),
        Some((a, b)) => println!("elevated cube: faces {a} and {b} overlap, cut the net in two"),
    }
    std::fs::write(out.join("elevated_cube_net.svg"), net_svg(&net, &SvgStyle::default())?)?;
    Ok(())
}

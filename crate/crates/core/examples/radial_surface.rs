//! A star-shaped surface of revolution given by its radius rho(theta, psi).

use ornata::export::to_obj;
use ornata::expr::parse;
use ornata::surfaces::{revolve_radial, ParametricSurfaceDef};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let def = ParametricSurfaceDef::sphere_like(parse("1 + 0.3*sin(5*theta)*sin(psi)^2")?);
    let mesh = revolve_radial(&def, 128, 64)?;
    println!("closed: {}, volume {:.4}", mesh.is_closed(), mesh.signed_volume());
    std::fs::write(out.join("star.obj"), to_obj(&mesh)?)?;
    Ok(())
}

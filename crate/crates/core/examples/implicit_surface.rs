//! Polygonize an implicit surface to OBJ and shade it from above as PNG.

use ornata::export::{to_obj, to_png};
use ornata::expr::parse;
use ornata::surfaces::{polygonize, raster_render, Bounds, Camera, ImplicitSurface, ViewAxis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let torus = ImplicitSurface::new(parse("(sqrt(x^2+y^2)-1)^2+z^2-0.1")?, Bounds::cube(1.5))?;
    let p = polygonize(&torus, 64)?;
    println!(
        "{} vertices, {} triangles, Euler characteristic {}",
        p.mesh.vertices.len(),
        p.mesh.triangles.len(),
        p.mesh.euler_characteristic()
    );
    std::fs::write(out.join("torus.obj"), to_obj(&p.mesh)?)?;

    let img = raster_render(&torus, &Camera { axis: ViewAxis::PosZ, width: 256, height: 256 })?;
    std::fs::write(out.join("torus.png"), to_png(&img)?)?;
    Ok(())
}

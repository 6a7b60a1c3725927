//! Product, sum and morph of two implicit surfaces.

use ornata::export::to_obj;
use ornata::expr::parse;
use ornata::surfaces::{combine, polygonize, Bounds, CombineMode, ImplicitSurface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let sphere = ImplicitSurface::new(parse("x^2+y^2+z^2-1")?, Bounds::default())?;
    let cube = ImplicitSurface::new(parse("x^8+y^8+z^8-0.5")?, Bounds::default())?;
    for (name, mode, s) in [("product", CombineMode::Product, 0.0), ("sum", CombineMode::Sum, 0.0), ("morph", CombineMode::Morph, 0.5)] {
        let mesh = polygonize(&combine(&sphere, &cube, mode, s)?, 48)?.mesh;
        println!("{name}: {} triangles", mesh.triangles.len());
        std::fs::write(out.join(format!("{name}.obj")), to_obj(&mesh)?)?;
    }
    Ok(())
}

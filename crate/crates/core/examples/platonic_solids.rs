//! Enumerate the Platonic solids and write each one as OBJ.

use ornata::export::to_obj;
use ornata::solids::{build_solid, enumerate_platonic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    for s in enumerate_platonic() {
        let solid = build_solid(s)?;
        let name = s.name().unwrap_or("solid");
        println!(
            "{{{},{}}} {name}: V={} E={} F={}",
            s.p,
            s.q,
            solid.vertex_count(),
            solid.edges().len(),
            solid.face_count()
        );
        std::fs::write(out.join(format!("{name}.obj")), to_obj(&solid.mesh)?)?;
    }
    Ok(())
}

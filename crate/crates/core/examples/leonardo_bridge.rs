//! Woven bridges of growing length; long ones curl until no span fits.

use ornata::export::to_obj;
use ornata::frame::{leonardo_bridge, preset_span, StrutDims};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let strut = StrutDims::default();
    for n in [3, 5, 7, 9, 11] {
        let span = preset_span(n, strut);
        match leonardo_bridge(n, strut, span) {
            Ok(bridge) => {
                println!("{n} rows: span {span:.3}, {} struts", bridge.struts.len());
                std::fs::write(out.join(format!("bridge_{n}.obj")), to_obj(&bridge.to_mesh())?)?;
            }
            Err(e) => println!("{n} rows: {e}"),
        }
    }
    Ok(())
}

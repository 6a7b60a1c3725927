//! A reciprocal-frame dome: solve the layout, then print its cut list.

use ornata::export::{cut_list_csv, to_obj};
use ornata::frame::{cut_list, leonardo_dome, StrutDims};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let strut = StrutDims { length: 1.2, width: 0.09, thickness: 0.045 };
    let dome = leonardo_dome(3, 10, strut, 5.0)?;
    println!("{} struts, {} contacts, gap residual {:.1e}", dome.struts.len(), dome.contacts.len(), dome.residual());
    let classes = cut_list(&dome)?;
    print!("{}", cut_list_csv(&classes)?);
    std::fs::write(out.join("dome.obj"), to_obj(&dome.to_mesh())?)?;
    Ok(())
}

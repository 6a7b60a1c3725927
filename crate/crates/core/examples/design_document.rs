//! Build a design document, save it, load it back and render every entry.

use std::f64::consts::TAU;

use ornata::cli::render_entry;
use ornata::cmap::ComplexMap;
use ornata::curves::CurveDef;
use ornata::export::{load_design, save_design, DesignDoc, Entry, StitchSpec};
use ornata::expr::parse;
use ornata::frame::{FrameSpec, StrutDims};
use ornata::surfaces::{Bounds, ImplicitSurface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "ornata-out".into()));
    std::fs::create_dir_all(&out)?;

    let doc = DesignDoc::new()
        .with("flower", Entry::Curve { def: CurveDef::polar(parse("sin(4*t)^2+cos(4*t)")?, 0.0, TAU)?, samples: None })
        .with(
            "ring",
            Entry::Curve { def: CurveDef::parametric(parse("2+cos(t)")?, parse("sin(t)")?, 0.0, TAU)?, samples: Some(400) },
        )
        .with("ring_image", Entry::Map { map: ComplexMap::recip_power(1.5)?, source: "ring".into() })
        .with("ball", Entry::Surface { surface: ImplicitSurface::new(parse("x^2+y^2+z^2-1")?, Bounds::default())? })
        .with("rose", Entry::Stitch { stitch: StitchSpec::Multiplier { pins: 100, factor: 3, radius: 1.0 } })
        .with("dome", Entry::Frame { frame: FrameSpec::Dome { rings: 2, segments: 8, strut: StrutDims::default(), radius: None } });
    doc.validate()?;

    let text = save_design(&doc);
    std::fs::write(out.join("design.json"), &text)?;
    let back = load_design(&text)?;
    assert_eq!(back, doc);

    for name in back.entries.keys() {
        for (file, bytes) in render_entry(&back, name)? {
            println!("{file}: {} bytes", bytes.len());
            std::fs::write(out.join(file), bytes)?;
        }
    }
    Ok(())
}

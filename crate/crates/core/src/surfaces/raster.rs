use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Gradient, ImplicitSurface, SurfaceError};
use crate::mesh::{dot, norm, Vec3};

pub const MIN_IMAGE_SIZE: usize = 16;

/// Viewing direction: the camera sits on the named side of the bounds and
/// looks back through them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViewAxis {
    #[serde(rename = "+x")]
    PosX,
    #[serde(rename = "-x")]
    NegX,
    #[serde(rename = "+y")]
    PosY,
    #[serde(rename = "-y")]
    NegY,
    #[serde(rename = "+z")]
    PosZ,
    #[serde(rename = "-z")]
    NegZ,
}

impl ViewAxis {
    /// (depth axis, depth sign, right axis, right sign, up axis).
    /// Screen right × up equals the axis pointing at the viewer.
    fn frame(self) -> (usize, f64, usize, f64, usize) {
        match self {
            ViewAxis::PosZ => (2, 1.0, 0, 1.0, 1),
            ViewAxis::NegZ => (2, -1.0, 0, -1.0, 1),
            ViewAxis::PosX => (0, 1.0, 1, 1.0, 2),
            ViewAxis::NegX => (0, -1.0, 1, -1.0, 2),
            ViewAxis::PosY => (1, 1.0, 0, -1.0, 2),
            ViewAxis::NegY => (1, -1.0, 0, 1.0, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Camera {
    pub axis: ViewAxis,
    pub width: usize,
    pub height: usize,
}

/// Grayscale image with shades in `[0, 1]`, row-major from the top row.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<f64>,
}

impl GrayImage {
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// 8-bit quantization used by the PNG export.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.pixels
            .iter()
            .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect()
    }
}

/// Orthographic ray-marched render. Each pixel's ray is sampled at uniform
/// depth steps; the first sign change is bisected to 1e-6 of the ray length
/// and shaded by `|<ray, n>|` with `n` the unit gradient. Rays that miss or
/// fail to shade stay at background 0.
pub fn raster_render(surface: &ImplicitSurface, camera: &Camera) -> Result<GrayImage, SurfaceError> {
    surface.validate()?;
    if camera.width < MIN_IMAGE_SIZE || camera.height < MIN_IMAGE_SIZE {
        return Err(SurfaceError::Invalid(format!(
            "image must be at least {MIN_IMAGE_SIZE}x{MIN_IMAGE_SIZE}, got {}x{}",
            camera.width, camera.height
        )));
    }
    let (depth, sign, right, right_sign, up) = camera.axis.frame();
    let b = surface.bounds.0;
    let steps = 64.max(2 * camera.width.max(camera.height));
    let ray_len = b[depth][1] - b[depth][0];
    let tolerance = 1e-6 * ray_len;
    let gradient = Gradient::new(surface);
    let mut ray_dir = [0.0; 3];
    ray_dir[depth] = -sign;

    let shade = |px: usize, py: usize| -> f64 {
        let fx = (px as f64 + 0.5) / camera.width as f64;
        let fy = (py as f64 + 0.5) / camera.height as f64;
        let (rlo, rhi) = (b[right][0], b[right][1]);
        let u = if right_sign > 0.0 {
            rlo + fx * (rhi - rlo)
        } else {
            rhi - fx * (rhi - rlo)
        };
        let v = b[up][1] - fy * (b[up][1] - b[up][0]);
        let start = if sign > 0.0 { b[depth][1] } else { b[depth][0] };
        let point = |s: f64| -> Vec3 {
            let mut p = [0.0; 3];
            p[right] = u;
            p[up] = v;
            p[depth] = start - sign * s;
            p
        };
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=steps {
            let s = ray_len * i as f64 / steps as f64;
            let Ok(f) = surface.eval(point(s)) else {
                prev = None;
                continue;
            };
            if let Some((s0, f0)) = prev {
                if (f0 > 0.0) != (f > 0.0) {
                    let (mut lo, mut hi, mut flo) = (s0, s, f0);
                    while hi - lo > tolerance {
                        let mid = 0.5 * (lo + hi);
                        let Ok(fm) = surface.eval(point(mid)) else {
                            return 0.0;
                        };
                        if (fm > 0.0) == (flo > 0.0) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    let hit = point(0.5 * (lo + hi));
                    return match gradient.at(hit) {
                        Some(g) if norm(g) > 0.0 => (dot(ray_dir, g) / norm(g)).abs(),
                        _ => 0.0,
                    };
                }
            }
            prev = Some((s, f));
        }
        0.0
    };

    let pixels = (0..camera.width * camera.height)
        .into_par_iter()
        .map(|i| shade(i % camera.width, i / camera.width))
        .collect();
    Ok(GrayImage {
        width: camera.width,
        height: camera.height,
        pixels,
    })
}

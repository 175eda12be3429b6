//! Parallel grid evaluation and the fixed color maps.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::grid::{FieldGrid, GridSpec, PixelValue};

/// Fixed 8-color cyclic palette indexed by the fractional part of Re Φ, so
/// consecutive unit bands (the +1 translation structure) alternate colors.
pub const PALETTE: [[u8; 3]; 8] = [
    [230, 25, 75],
    [245, 130, 48],
    [255, 225, 25],
    [60, 180, 75],
    [70, 240, 240],
    [0, 130, 200],
    [145, 30, 180],
    [240, 50, 230],
];

pub const EXTERIOR_COLOR: [u8; 3] = [0, 0, 0];
pub const POLE_COLOR: [u8; 3] = [255, 255, 255];
pub const NOCONV_COLOR: [u8; 3] = [96, 96, 96];

/// Evaluates `f` at every pixel center. Pixels are independent; the result
/// is assembled by index, so scheduling order never affects output.
pub fn eval_grid<F>(spec: GridSpec, f: F) -> FieldGrid
where
    F: Fn(Complex64) -> PixelValue + Sync,
{
    let values = (0..spec.len())
        .into_par_iter()
        .map(|idx| f(spec.point_at(idx)))
        .collect();
    FieldGrid { spec, values }
}

/// Equipotential shading: band color from frac(Re Φ), exterior black,
/// poles white, non-converged gray.
pub fn shade(v: &PixelValue) -> [u8; 3] {
    match v {
        PixelValue::Value(w) => {
            let frac = w.re - w.re.floor();
            PALETTE[((frac * 8.0) as usize).min(7)]
        }
        PixelValue::Exterior => EXTERIOR_COLOR,
        PixelValue::Pole => POLE_COLOR,
        PixelValue::NoConv => NOCONV_COLOR,
    }
}

/// Membership mask shading: interior white, exterior black.
pub fn mask_shade(v: &PixelValue) -> [u8; 3] {
    match v {
        PixelValue::Value(_) => [255, 255, 255],
        _ => EXTERIOR_COLOR,
    }
}

/// Installs the global worker pool: `--threads` wins, then the
/// PARALIN_THREADS env var, then the rayon default. Safe to call once.
pub fn init_threads(flag: Option<usize>) -> anyhow::Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("PARALIN_THREADS") {
            Ok(s) => Some(s.parse().map_err(|_| {
                crate::UsageError(format!("PARALIN_THREADS must be a thread count, got {s:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(crate::UsageError("thread count must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    Ok(())
}

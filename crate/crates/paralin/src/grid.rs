//! Rectangular pixel grids in the w-plane and the per-pixel field values.

use anyhow::Result;
use num_complex::Complex64;

use crate::UsageError;

pub const MAX_PIXELS_PER_AXIS: u32 = 8192;

/// Pixel layout over the rectangle [x0, x1] × [y0, y1]; row 0 is the top
/// edge (y = y1), samples are pixel centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: u32,
    pub ny: u32,
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl GridSpec {
    pub fn new(nx: u32, ny: u32, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if nx == 0 || ny == 0 || nx > MAX_PIXELS_PER_AXIS || ny > MAX_PIXELS_PER_AXIS {
            return Err(UsageError(format!(
                "grid must be between 1x1 and {0}x{0}, got {nx}x{ny}",
                MAX_PIXELS_PER_AXIS
            ))
            .into());
        }
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(UsageError(format!(
                "bounds must satisfy x0 < x1 and y0 < y1, got {x0},{x1},{y0},{y1}"
            ))
            .into());
        }
        Ok(Self {
            nx,
            ny,
            x0,
            x1,
            y0,
            y1,
        })
    }

    /// Parses `"NXxNY"` and `"x0,x1,y0,y1"` flag strings.
    pub fn parse(grid: &str, bounds: &str) -> Result<Self> {
        let (nx, ny) = grid
            .split_once('x')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| UsageError(format!("--grid expects NXxNY, got {grid:?}")))?;
        let parts: Vec<f64> = bounds
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| UsageError(format!("--bounds expects x0,x1,y0,y1, got {bounds:?}")))?;
        if parts.len() != 4 {
            return Err(
                UsageError(format!("--bounds expects 4 numbers, got {}", parts.len())).into(),
            );
        }
        Self::new(nx, ny, parts[0], parts[1], parts[2], parts[3])
    }

    pub fn len(&self) -> usize {
        self.nx as usize * self.ny as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Center of pixel (i, j), i along x, j downward from the top row.
    pub fn point(&self, i: u32, j: u32) -> Complex64 {
        let dx = (self.x1 - self.x0) / self.nx as f64;
        let dy = (self.y1 - self.y0) / self.ny as f64;
        Complex64::new(
            self.x0 + (i as f64 + 0.5) * dx,
            self.y1 - (j as f64 + 0.5) * dy,
        )
    }

    pub fn point_at(&self, index: usize) -> Complex64 {
        let i = (index % self.nx as usize) as u32;
        let j = (index / self.nx as usize) as u32;
        self.point(i, j)
    }

    /// Pixel whose cell contains `w`, if any.
    pub fn locate(&self, w: Complex64) -> Option<(u32, u32)> {
        let fx = (w.re - self.x0) / (self.x1 - self.x0) * self.nx as f64;
        let fy = (self.y1 - w.im) / (self.y1 - self.y0) * self.ny as f64;
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (i, j) = (fx as u32, fy as u32);
        (i < self.nx && j < self.ny).then_some((i, j))
    }
}

/// Per-pixel outcome of a field evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PixelValue {
    Value(Complex64),
    Exterior,
    Pole,
    NoConv,
}

impl PixelValue {
    pub fn status(&self) -> &'static str {
        match self {
            PixelValue::Value(_) => "ok",
            PixelValue::Exterior => "exterior",
            PixelValue::Pole => "pole",
            PixelValue::NoConv => "noconv",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub values: Vec<PixelValue>,
}

impl FieldGrid {
    pub fn value_at(&self, i: u32, j: u32) -> &PixelValue {
        &self.values[j as usize * self.spec.nx as usize + i as usize]
    }
}

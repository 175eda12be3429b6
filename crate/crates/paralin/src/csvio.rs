//! CSV input/output: the field schema `re,im,status,value_re,value_im` and
//! point-list files.

use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64;

use crate::grid::{FieldGrid, PixelValue};
use crate::UsageError;

/// Writes a field grid in row-major pixel order. Value columns are empty
/// for non-`ok` rows.
pub fn write_field(path: &Path, field: &FieldGrid) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["re", "im", "status", "value_re", "value_im"])?;
    for (idx, v) in field.values.iter().enumerate() {
        let p = field.spec.point_at(idx);
        let (vr, vi) = match v {
            PixelValue::Value(z) => (format_f64(z.re), format_f64(z.im)),
            _ => (String::new(), String::new()),
        };
        w.write_record([
            format_f64(p.re),
            format_f64(p.im),
            v.status().to_string(),
            vr,
            vi,
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip representation; stable across runs.
pub fn format_f64(v: f64) -> String {
    v.to_string()
}

/// Reads a point list: header `re,im`, one complex point per row.
pub fn read_points(path: &Path) -> Result<Vec<Complex64>> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = r.headers()?.clone();
    let re_idx = headers.iter().position(|h| h.trim() == "re");
    let im_idx = headers.iter().position(|h| h.trim() == "im");
    let (re_idx, im_idx) = match (re_idx, im_idx) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(UsageError(format!(
                "point file {} must have 're' and 'im' columns",
                path.display()
            ))
            .into())
        }
    };
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let parse = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| {
                    UsageError(format!(
                        "bad number in {} data row {}",
                        path.display(),
                        line + 1
                    ))
                    .into()
                })
        };
        out.push(Complex64::new(parse(re_idx)?, parse(im_idx)?));
    }
    if out.is_empty() {
        return Err(UsageError(format!("point file {} is empty", path.display())).into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    #[test]
    fn field_round_trip_schema() {
        let spec = GridSpec::parse("2x1", "0,1,0,1").unwrap();
        let field = FieldGrid {
            spec,
            values: vec![
                PixelValue::Value(Complex64::new(1.5, -2.0)),
                PixelValue::Exterior,
            ],
        };
        let dir = std::env::temp_dir().join("paralin-csv-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.csv");
        write_field(&path, &field).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("re,im,status,value_re,value_im"));
        assert_eq!(lines.next(), Some("0.25,0.5,ok,1.5,-2"));
        assert_eq!(lines.next(), Some("0.75,0.5,exterior,,"));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn points_file_round_trip() {
        let dir = std::env::temp_dir().join("paralin-csv-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pts.csv");
        std::fs::write(&path, "re,im\n-0.5,0\n0.25,-0.125\n").unwrap();
        let pts = read_points(&path).unwrap();
        assert_eq!(
            pts,
            vec![Complex64::new(-0.5, 0.0), Complex64::new(0.25, -0.125)]
        );
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn points_file_rejects_missing_columns() {
        let dir = std::env::temp_dir().join("paralin-csv-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "x,y\n1,2\n").unwrap();
        assert!(read_points(&path).is_err());
        std::fs::remove_file(&path).ok();
    }
}

//! Binary P6 PPM writer. No compression, no metadata, byte-for-byte
//! reproducible for identical inputs.

use std::io::Write;
use std::path::Path;

use anyhow::{ensure, Context, Result};

pub fn write_p6(path: &Path, nx: u32, ny: u32, pixels: &[[u8; 3]]) -> Result<()> {
    ensure!(
        pixels.len() == nx as usize * ny as usize,
        "pixel buffer length {} does not match {nx}x{ny}",
        pixels.len()
    );
    let mut buf = Vec::with_capacity(pixels.len() * 3 + 32);
    write!(buf, "P6\n{nx} {ny}\n255\n")?;
    for px in pixels {
        buf.extend_from_slice(px);
    }
    std::fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_payload() {
        let dir = std::env::temp_dir().join("paralin-ppm-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.ppm");
        write_p6(&path, 2, 1, &[[255, 0, 0], [0, 0, 255]]).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..11], b"P6\n2 1\n255\n");
        assert_eq!(&bytes[11..], &[255, 0, 0, 0, 0, 255]);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn rejects_length_mismatch() {
        let path = std::env::temp_dir().join("paralin-ppm-bad.ppm");
        assert!(write_p6(&path, 2, 2, &[[0, 0, 0]]).is_err());
    }
}

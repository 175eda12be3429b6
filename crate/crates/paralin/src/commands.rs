//! The five subcommand implementations. Each returns the process exit code:
//! 0 on success, 3 when a checked criterion fails; domain and usage
//! violations are reported as errors and mapped to exit 2 by the caller.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paralin_core::coordinates::{convergence_experiment, FatouCoordinate, PhiDirect};
use paralin_core::polylog;
use paralin_core::{family, FamilyParams, Linearizer, LinearizerConfig, SectorDomain};

use crate::csvio::{self, format_f64};
use crate::grid::{FieldGrid, GridSpec, PixelValue};
use crate::render;
use crate::UsageError;

/// Maps a per-pixel evaluation failure to its status code. Anything not
/// recognized as exterior or a pole counts as non-convergence.
fn pixel_of(res: paralin_core::Result<Complex64>) -> PixelValue {
    match res {
        Ok(v) if v.is_finite() => PixelValue::Value(v),
        Ok(_) => PixelValue::NoConv,
        Err(paralin_core::Error::NotInBasin) => PixelValue::Exterior,
        Err(paralin_core::Error::Pole) => PixelValue::Pole,
        Err(_) => PixelValue::NoConv,
    }
}

fn csv_sibling(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

/// Filled-Julia-set membership mask: interior white, exterior black.
/// Writes the PPM at `out` and a mirror CSV beside it.
pub fn julia(lambda: f64, spec: GridSpec, max_iter: usize, out: &Path) -> Result<i32> {
    let params = FamilyParams::new(lambda)?;
    let field = render::eval_grid(spec, |w| {
        if family::in_filled_julia_interior(&params, w, max_iter) {
            PixelValue::Value(Complex64::new(0.0, 0.0))
        } else {
            PixelValue::Exterior
        }
    });
    write_outputs(&field, out, render::mask_shade)?;
    Ok(0)
}

/// Equipotential field of the normalized coordinate: Φ_f for λ < 1, the
/// Fatou coordinate Φ_g at λ = 1. Per-pixel failures become status codes,
/// never aborts.
pub fn equipotential(
    lambda: f64,
    spec: GridSpec,
    tol: f64,
    max_iter: usize,
    out: &Path,
) -> Result<i32> {
    let params = FamilyParams::new(lambda)?;
    let field = if params.is_parabolic() {
        let fatou = FatouCoordinate::new(0.05, tol)?;
        render::eval_grid(spec, |w| {
            if !family::in_filled_julia_interior(&params, w, max_iter) {
                return PixelValue::Exterior;
            }
            pixel_of(fatou.phi(w))
        })
    } else {
        let direct = PhiDirect::new(params)?;
        render::eval_grid(spec, |w| {
            if !family::in_filled_julia_interior(&params, w, max_iter) {
                return PixelValue::Exterior;
            }
            pixel_of(direct.eval(w))
        })
    };
    write_outputs(&field, out, render::shade)?;
    Ok(0)
}

fn write_outputs(
    field: &FieldGrid,
    out: &Path,
    shade: impl Fn(&PixelValue) -> [u8; 3],
) -> Result<()> {
    let pixels: Vec<[u8; 3]> = field.values.iter().map(shade).collect();
    crate::ppm::write_p6(out, field.spec.nx, field.spec.ny, &pixels)?;
    csvio::write_field(&csv_sibling(out), field)
}

/// Evaluates `u_ε` at one point of the conjugated plane and reports the
/// normalization constant, the work done and both error measures, as human
/// text plus one JSON line.
#[allow(clippy::too_many_arguments)]
pub fn linearize(
    lambda: f64,
    z: Complex64,
    base: Option<Complex64>,
    radius: f64,
    alpha: f64,
    sigma: f64,
    m_bound: f64,
    tol: f64,
) -> Result<i32> {
    let params = FamilyParams::new(lambda)?;
    let sector = SectorDomain::new(radius, alpha)?;
    let cfg = LinearizerConfig::new(sector, sigma, m_bound, tol, 1_000_000)?;
    if !sector.in_pi(z, 2.0 * radius) {
        return Err(paralin_core::Error::Domain(
            "z must lie in the sector Pi(2R) of the conjugated plane",
        )
        .into());
    }
    let lin = match base {
        Some(a) => Linearizer::with_base_point(params.conjugated(), cfg, a)?,
        None => Linearizer::new(params.conjugated(), cfg)?,
    };
    let res = lin.u(z)?;
    println!("lambda      = {}", format_f64(lambda));
    println!("z           = {} + {}i", format_f64(z.re), format_f64(z.im));
    println!(
        "base point  = {} + {}i",
        format_f64(lin.base_point().re),
        format_f64(lin.base_point().im)
    );
    println!(
        "u(z)        = {} + {}i",
        format_f64(res.value.re),
        format_f64(res.value.im)
    );
    println!(
        "B           = {} + {}i  (|B-1| = {:.3e})",
        format_f64(res.b.re),
        format_f64(res.b.im),
        (res.b - Complex64::new(1.0, 0.0)).norm()
    );
    println!("iterations  = {}", res.iterations);
    println!("residual    = {:.3e}", res.residual);
    println!("tail bound  = {:.3e}", res.tail_bound);
    let record = serde_json::json!({
        "lambda": lambda,
        "z": [z.re, z.im],
        "base": [lin.base_point().re, lin.base_point().im],
        "u": [res.value.re, res.value.im],
        "b": [res.b.re, res.b.im],
        "iterations": res.iterations,
        "residual": res.residual,
        "tail_bound": res.tail_bound,
    });
    println!("{record}");
    Ok(0)
}

/// Sampling for the convergence experiment: a point file wins, otherwise the
/// real segment [x0, x1] is sampled `count` times, evenly spaced without a
/// seed and uniformly at random with one.
pub fn sample_points(
    points_file: Option<&Path>,
    segment: (f64, f64),
    count: usize,
    seed: Option<u64>,
) -> Result<Vec<Complex64>> {
    if let Some(path) = points_file {
        return csvio::read_points(path);
    }
    if count == 0 {
        return Err(UsageError("--count must be positive".into()).into());
    }
    let (x0, x1) = segment;
    if !(x0 < x1 && x0.is_finite() && x1.is_finite()) {
        return Err(UsageError(format!("--segment expects x0 < x1, got {x0},{x1}")).into());
    }
    let pts = match seed {
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            (0..count)
                .map(|_| Complex64::new(rng.gen_range(x0..x1), 0.0))
                .collect()
        }
        None => (0..count)
            .map(|i| {
                let t = (i as f64 + 0.5) / count as f64;
                Complex64::new(x0 + t * (x1 - x0), 0.0)
            })
            .collect(),
    };
    Ok(pts)
}

/// Convergence table sup_E |Φ_f − Φ_g| over a λ list approaching 1. Exit 0
/// iff the raw column decreases and its final entry is below the threshold;
/// exit 3 otherwise.
pub fn converge(
    points: &[Complex64],
    lambdas: &[f64],
    max_iter: usize,
    threshold: f64,
    out: &Path,
) -> Result<i32> {
    if lambdas.is_empty() {
        return Err(UsageError("--lambdas must be non-empty".into()).into());
    }
    let rows = convergence_experiment(points, lambdas, max_iter)?;
    let mut w =
        csv::Writer::from_path(out).with_context(|| format!("creating {}", out.display()))?;
    w.write_record(["lambda", "sup_raw", "sup_rebased", "failures"])?;
    for row in &rows {
        let failures: Vec<String> = row.failures.iter().map(|i| i.to_string()).collect();
        w.write_record([
            format_f64(row.lambda),
            format_f64(row.sup_raw),
            format_f64(row.sup_rebased),
            failures.join(";"),
        ])?;
        println!(
            "lambda = {:<10} sup|Phi_f - Phi_g| = {:<12.6e} rebased = {:<12.6e} failures = {}",
            row.lambda,
            row.sup_raw,
            row.sup_rebased,
            row.failures.len()
        );
    }
    w.flush()?;

    let sups: Vec<f64> = rows.iter().map(|r| r.sup_raw).collect();
    let finite = sups.iter().all(|s| s.is_finite());
    let decreasing = sups.windows(2).all(|p| p[1] <= p[0]);
    let final_ok = sups.last().is_some_and(|&s| s < threshold);
    if finite && decreasing && final_ok {
        println!(
            "converge: pass (final {:.3e} < {:.3e})",
            sups.last().unwrap(),
            threshold
        );
        Ok(0)
    } else {
        println!(
            "converge: FAIL (finite={finite} decreasing={decreasing} final<{threshold}={final_ok})"
        );
        Ok(3)
    }
}

/// Growth-bound table for `Li_s(1−ε)`; exit 0 iff every row passes.
pub fn polylog_table(sigma: f64, eps_list: &[f64], tol: f64, out: Option<&Path>) -> Result<i32> {
    if eps_list.is_empty() {
        return Err(UsageError("--eps must be non-empty".into()).into());
    }
    let s = Complex64::new(sigma, 0.0);
    let rows = polylog::bound_check(s, eps_list, tol)?;
    if let Some(path) = out {
        let mut w =
            csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        w.write_record([
            "eps",
            "li_abs",
            "bound",
            "sharp_bound",
            "edge_abs",
            "edge_bound",
            "pass",
        ])?;
        for r in &rows {
            w.write_record([
                format_f64(r.eps),
                format_f64(r.li_abs),
                format_f64(r.bound),
                format_f64(r.sharp_bound),
                format_f64(r.edge_abs),
                format_f64(r.edge_bound),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
    }
    let mut all_pass = true;
    println!(
        "{:>12} {:>14} {:>14} {:>14} {:>14} {:>14} {:>5}",
        "eps", "|Li|", "C*eps^-q", "sharp", "|(z-1)Li|", "edge bound", "pass"
    );
    for r in &rows {
        all_pass &= r.pass;
        println!(
            "{:>12.3e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>5}",
            r.eps, r.li_abs, r.bound, r.sharp_bound, r.edge_abs, r.edge_bound, r.pass
        );
    }
    Ok(if all_pass { 0 } else { 3 })
}

//! Deterministic OBJ and CSV writers for tube grids.
//!
//! Both writers iterate the grid in row-major order and format floats
//! with a fixed precision, so identical grids produce byte-identical
//! files: 17 significant digits in CSV (f64 round-trip), 9 in OBJ.

use std::io::{self, Write};

use minktube::minkowski::MinkVector;
use minktube::surface::{fundamental_forms, mean_curvature, Metric};
use minktube::tube::{TubeGrid, TubeSurface};

/// Euclidean cross product, used only to orient mesh faces for viewers
/// (which shade with the Euclidean geometry of the coordinates).
fn euclid_cross(a: MinkVector, b: MinkVector) -> MinkVector {
    MinkVector::new(
        a.y2 * b.y3 - a.y3 * b.y2,
        a.y3 * b.y1 - a.y1 * b.y3,
        a.y1 * b.y2 - a.y2 * b.y1,
    )
}

fn euclid_dot(a: MinkVector, b: MinkVector) -> f64 {
    a.y1 * b.y1 + a.y2 * b.y2 + a.y3 * b.y3
}

/// Write a triangulated OBJ mesh: one vertex per grid point (row-major,
/// `t` outer), `2 (nt - 1) ntheta` triangles closing the angular seam by
/// index wraparound, 1-based indices. Face winding is chosen once, from
/// the first cell, so that the Euclidean face normal points along the
/// surface normal; `vn` records are written when `normals` is set.
pub fn write_obj(grid: &TubeGrid, normals: bool, out: &mut impl Write) -> io::Result<()> {
    let (nt, ntheta) = (grid.nt(), grid.ntheta());
    writeln!(out, "# tube mesh: {} vertices, {} faces", nt * ntheta, 2 * (nt - 1) * ntheta)?;
    for p in &grid.points {
        writeln!(out, "v {:.8e} {:.8e} {:.8e}", p.position.y1, p.position.y2, p.position.y3)?;
    }
    if normals {
        for p in &grid.points {
            writeln!(out, "vn {:.8e} {:.8e} {:.8e}", p.normal.y1, p.normal.y2, p.normal.y3)?;
        }
    }
    // Orientation probe on the first cell: wind faces so the Euclidean
    // geometric normal agrees with the surface normal there.
    let (a, b, c) = (grid.at(0, 0), grid.at(0, 1), grid.at(1, 1));
    let face_normal =
        euclid_cross(b.position - a.position, c.position - a.position);
    let flip = euclid_dot(face_normal, a.normal) < 0.0;
    for i in 0..nt - 1 {
        for j in 0..ntheta {
            let jn = (j + 1) % ntheta;
            // 1-based corner indices of the (i, j) cell.
            let v00 = i * ntheta + j + 1;
            let v01 = i * ntheta + jn + 1;
            let v10 = (i + 1) * ntheta + j + 1;
            let v11 = (i + 1) * ntheta + jn + 1;
            for (p, q, s) in [(v00, v01, v11), (v00, v11, v10)] {
                let (p, q, s) = if flip { (p, s, q) } else { (p, q, s) };
                if normals {
                    writeln!(out, "f {p}//{p} {q}//{q} {s}//{s}")?;
                } else {
                    writeln!(out, "f {p} {q} {s}")?;
                }
            }
        }
    }
    Ok(())
}

/// CSV column header for the curvature export.
pub const CSV_HEADER: &str = "t,theta,K,H_paper,H_oracle,KII,KII_valid";

/// Write the curvature fields as CSV: closed-form `K`, both
/// mean-curvature values (closed form and definitional oracle, whose
/// signs differ by a global factor), and the second Gaussian curvature
/// with its validity flag. Masked `KII` cells are left empty with
/// `KII_valid = 0`.
pub fn write_curvature_csv(
    tube: &TubeSurface,
    grid: &TubeGrid,
    out: &mut impl Write,
) -> minktube::error::Result<()> {
    writeln!(out, "{CSV_HEADER}").map_err(minktube::error::Error::Io)?;
    let patch = tube.patch();
    for p in &grid.points {
        let forms = fundamental_forms(Metric::Lorentzian, &patch, p.t, p.theta)?;
        let h_oracle = mean_curvature(&forms)?;
        let (kii, valid) = match p.kii {
            Some(v) => (format!("{v:.16e}"), 1),
            None => (String::new(), 0),
        };
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
            p.t, p.theta, p.k, p.h, h_oracle, kii, valid
        )
        .map_err(minktube::error::Error::Io)?;
    }
    Ok(())
}

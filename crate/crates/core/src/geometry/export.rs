//! Text exports. Reals are written with 17 significant digits so a
//! reader recovers the exact `f64`.
//!
//! * `4OFF` (C² mesh): header `4OFF`, counts line `V F 0`, one vertex per
//!   line `Re z₁ Im z₁ Re z₂ Im z₂`, one face per line `3 a b c`.
//! * `OFF` (stereographic mesh): same layout with three coordinates.
//! * metadata: `key=value` lines, `#` comments; seam lines are
//!   `seam=a b deck_power family`.
//! * curves: one point per line, coordinates separated by spaces.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::geometry::mesh::{QuotientMesh, StereoMesh};

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_faces(out: &mut String, faces: &[[usize; 3]]) {
    for f in faces {
        let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
    }
}

pub fn render_4off(mesh: &QuotientMesh) -> String {
    let mut out = String::from("4OFF\n");
    let _ = writeln!(out, "{} {} 0", mesh.vertices.len(), mesh.faces.len());
    for z in &mesh.vertices {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            real(z[0].re),
            real(z[0].im),
            real(z[1].re),
            real(z[1].im)
        );
    }
    push_faces(&mut out, &mesh.faces);
    out
}

pub fn render_off(mesh: &StereoMesh) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} 0", mesh.vertices.len(), mesh.faces.len());
    for v in &mesh.vertices {
        let _ = writeln!(out, "{} {} {}", real(v[0]), real(v[1]), real(v[2]));
    }
    push_faces(&mut out, &mesh.faces);
    out
}

/// Seam pairs plus caller-supplied summary entries, in the given order.
pub fn render_metadata(mesh: &QuotientMesh, summary: &[(String, String)]) -> String {
    let mut out = String::from("# seam=a b deck_power family\n");
    let _ = writeln!(out, "space={}", mesh.space);
    let _ = writeln!(out, "resolution={}", mesh.resolution);
    let _ = writeln!(out, "vertices={}", mesh.vertices.len());
    let _ = writeln!(out, "faces={}", mesh.faces.len());
    let _ = writeln!(out, "seams={}", mesh.seams.len());
    for (k, v) in summary {
        let _ = writeln!(out, "{k}={v}");
    }
    for s in &mesh.seams {
        let _ = writeln!(out, "seam={} {} {} {}", s.a, s.b, s.deck_power, s.family);
    }
    out
}

pub fn render_curve(points: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for p in points {
        let line: Vec<String> = p.iter().map(|&x| real(x)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_4off(path: &Path, mesh: &QuotientMesh) -> io::Result<()> {
    std::fs::write(path, render_4off(mesh))
}

pub fn write_off(path: &Path, mesh: &StereoMesh) -> io::Result<()> {
    std::fs::write(path, render_off(mesh))
}

pub fn write_metadata(
    path: &Path,
    mesh: &QuotientMesh,
    summary: &[(String, String)],
) -> io::Result<()> {
    std::fs::write(path, render_metadata(mesh, summary))
}

pub fn write_curve(path: &Path, points: &[Vec<f64>]) -> io::Result<()> {
    std::fs::write(path, render_curve(points))
}

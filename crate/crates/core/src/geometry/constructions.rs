//! Klein bottles assembled from pieces: two Möbius bands in `S¹ × S²` or in
//! the Heegaard tori of `L(4n, 2n±1)`, and the handle decomposition on the
//! splitting torus.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::complex::{grid_faces, IdentifiedComplex, SurfaceSummary};
use crate::lens::{apply_gluing, BasisTag, GluingMatrix, LensSpace, Sign, TorusClass};

/// `[(t, r)] ↦ (e^{2πit}, r e^{±πit})` from the Möbius band
/// `[0,1] × [-1,1] / (1,r) ∼ (0,−r)` into `S¹ × D²`. `Plus` gives boundary
/// `2λ + μ`, `Minus` gives `2λ − μ`.
pub fn moebius_in_solid_torus_twisted(t: f64, r: f64, twist: Sign) -> Result<[Complex64; 2]> {
    if !(0.0..=1.0).contains(&t) || !(-1.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "(t, r) = ({t}, {r}) outside [0,1] x [-1,1]"
        )));
    }
    let half_turn = twist.as_i64() as f64 * PI * t;
    Ok([
        Complex64::from_polar(1.0, TAU * t),
        Complex64::from_polar(r, half_turn),
    ])
}

pub fn moebius_in_solid_torus(t: f64, r: f64) -> Result<[Complex64; 2]> {
    moebius_in_solid_torus_twisted(t, r, Sign::Plus)
}

/// The boundary circle `{r = ±1}`: `t ∈ [0,1]` at `r = 1`, then
/// `t ∈ [0,1]` at `r = −1`, which closes up through the identification.
pub fn moebius_boundary_trace(samples: usize, twist: Sign) -> Vec<[Complex64; 2]> {
    let half = samples.max(4) / 2;
    let mut pts = Vec::with_capacity(2 * half + 1);
    for r in [1.0, -1.0] {
        for i in 0..half {
            let t = i as f64 / half as f64;
            pts.push(moebius_in_solid_torus_twisted(t, r, twist).expect("inside domain"));
        }
    }
    pts.push(pts[0]);
    pts
}

/// Winding numbers `(longitude, meridian)` of a closed curve in
/// `S¹ × (D² ∖ 0)` by accumulating angle increments.
pub fn winding_numbers(curve: &[[Complex64; 2]]) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for w in curve.windows(2) {
        acc.0 += (w[1][0] / w[0][0]).arg();
        acc.1 += (w[1][1] / w[0][1]).arg();
    }
    (acc.0 / TAU, acc.1 / TAU)
}

pub fn moebius_boundary_winding(samples: usize, twist: Sign) -> (f64, f64) {
    winding_numbers(&moebius_boundary_trace(samples, twist))
}

/// Triangulated Möbius band, vertex `(i, j)` at `t = i/cols`,
/// `r = −1 + 2j/rows`, with the column `t = 1` glued back reversed.
fn moebius_grid(cols: usize, rows: usize, offset: usize, family: usize) -> IdentifiedComplex {
    let idx = |i: usize, j: usize| offset + i * (rows + 1) + j;
    IdentifiedComplex {
        vertex_count: (cols + 1) * (rows + 1),
        faces: grid_faces(cols, rows, offset),
        identifications: (0..=rows)
            .map(|j| (idx(cols, j), idx(0, rows - j), family))
            .collect(),
    }
}

#[derive(Debug, Clone)]
pub struct S1xS2Report {
    /// Boundary of the band in the first solid torus.
    pub side1_class: TorusClass,
    /// Its image under `μ₁ ∼ μ₂, λ₁ ∼ λ₂`.
    pub side2_image: TorusClass,
    /// Boundary of the band in the second solid torus.
    pub side2_class: TorusClass,
    pub classes_match: bool,
    /// Largest distance between glued boundary samples in `S¹ × D²`.
    pub boundary_residual: f64,
    pub surface: SurfaceSummary,
}

impl S1xS2Report {
    pub fn passed(&self) -> bool {
        self.classes_match
            && self.boundary_residual < 1e-12
            && self.surface.euler_characteristic() == 0
            && self.surface.closed
            && !self.surface.orientable
    }
}

/// Two Möbius bands, one in each solid torus of `S¹ × S² = (S¹ × D²) ∪ (S¹ × D²)`
/// glued by the identity on the boundary, close up to a Klein bottle.
pub fn klein_in_s1xs2(resolution: usize) -> Result<S1xS2Report> {
    if resolution < 2 {
        return Err(Error::Domain("resolution must be at least 2".into()));
    }
    let side1_class = TorusClass::new(1, 2, BasisTag::HeegaardSide1);
    let side2_image = TorusClass::new(side1_class.mu, side1_class.lambda, BasisTag::HeegaardSide2);
    let side2_class = TorusClass::new(1, 2, BasisTag::HeegaardSide2);

    let (cols, rows) = (2 * resolution, resolution);
    let band1 = moebius_grid(cols, rows, 0, 0);
    let offset = band1.vertex_count;
    let band2 = moebius_grid(cols, rows, offset, 1);
    let idx = |i: usize, j: usize| i * (rows + 1) + j;
    let mut residual: f64 = 0.0;
    let mut glue = Vec::new();
    for i in 0..=cols {
        let t = i as f64 / cols as f64;
        for j in [0, rows] {
            let r = if j == 0 { -1.0 } else { 1.0 };
            let p1 = moebius_in_solid_torus(t, r)?;
            let p2 = moebius_in_solid_torus(t, r)?;
            residual = residual.max((p1[0] - p2[0]).norm().max((p1[1] - p2[1]).norm()));
            glue.push((idx(i, j), offset + idx(i, j), 2));
        }
    }
    let complex = IdentifiedComplex {
        vertex_count: 2 * offset,
        faces: band1
            .faces
            .iter()
            .chain(band2.faces.iter())
            .copied()
            .collect(),
        identifications: band1
            .identifications
            .into_iter()
            .chain(band2.identifications)
            .chain(glue)
            .collect(),
    };
    Ok(S1xS2Report {
        side1_class,
        side2_image,
        side2_class,
        classes_match: side2_image == side2_class,
        boundary_residual: residual,
        surface: complex.summarize(),
    })
}

#[derive(Debug, Clone)]
pub struct TwoMoebiusReport {
    pub n: i64,
    pub sign: Sign,
    pub space: LensSpace,
    pub gluing: GluingMatrix,
    /// `2λ₁ + μ₁`, the boundary of the band in the first Heegaard torus.
    pub side1_class: TorusClass,
    pub image: TorusClass,
    /// `±(2λ₂ − μ₂)`.
    pub expected: TorusClass,
    pub matches: bool,
}

/// Gluing a `2λ+μ` band in one Heegaard torus of `L(4n, 2n±1)` to a
/// `2λ−μ` band in the other, using the witnesses `r = n`, `s = −(2n∓1)`.
pub fn two_moebius_construction(n: i64, sign: Sign) -> Result<TwoMoebiusReport> {
    let space = LensSpace::klein_family(n, sign)?;
    let (r, s) = (n, -(2 * n - sign.as_i64()));
    let gluing = GluingMatrix::with_witnesses(space, r, s)?;
    let side1_class = 2 * TorusClass::longitude(BasisTag::HeegaardSide1)
        + TorusClass::meridian(BasisTag::HeegaardSide1);
    let image = apply_gluing(&gluing, &side1_class)?;
    let band2 = 2 * TorusClass::longitude(BasisTag::HeegaardSide2)
        - TorusClass::meridian(BasisTag::HeegaardSide2);
    let expected = sign.as_i64() * band2;
    Ok(TwoMoebiusReport {
        n,
        sign,
        space,
        gluing,
        side1_class,
        image,
        expected,
        matches: image == expected,
    })
}

/// One strand of the boundary curve of the 1-handlebody on the splitting
/// torus, between two attaching ports, with its crossing counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleSegment {
    pub label: &'static str,
    pub from: usize,
    pub to: usize,
    /// Intersections with `μ₂`.
    pub mu_hits: u64,
    /// Intersections with `λ₂`.
    pub lambda_hits: u64,
}

/// Combinatorial shadow of the 0-handle + two twisted 1-handles drawn on
/// the square model of the splitting torus (horizontal `μ₂`, vertical `λ₂`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleLayout {
    pub n: i64,
    pub sign: Sign,
    pub segments: Vec<HandleSegment>,
    /// How often the second 1-handle runs over the first.
    pub passes_over_first: u64,
    /// Sign of each `μ₂` crossing.
    pub mu_orientation: i64,
    /// Sign of each `λ₂` crossing; the `Minus` layout is the mirror image
    /// under `(z₁, z₂) ↦ (z₁, z̄₂)`, which reverses `μ₂`.
    pub lambda_orientation: i64,
}

impl HandleLayout {
    /// The layout for `L(4n, 2n+1)` (`Plus`) or its mirror (`Minus`).
    pub fn standard(n: i64, sign: Sign) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("n = {n} must be at least 1")));
        }
        let over = (n - 1) as u64;
        let seg = |label, from, to, mu_hits, lambda_hits| HandleSegment {
            label,
            from,
            to,
            mu_hits,
            lambda_hits,
        };
        Ok(HandleLayout {
            n,
            sign,
            segments: vec![
                seg("first 1-handle", 0, 1, 2, 2),
                seg("second 1-handle, outward strand", 1, 2, 1, 1),
                seg(
                    "outward strand over first 1-handle",
                    2,
                    3,
                    2 * over,
                    2 * over,
                ),
                seg("second 1-handle, return strand", 3, 4, 1, 0),
                seg("return strand over first 1-handle", 4, 0, 2 * over, 0),
            ],
            passes_over_first: over,
            mu_orientation: 1,
            lambda_orientation: match sign {
                Sign::Plus => -1,
                Sign::Minus => 1,
            },
        })
    }

    /// The segments must chain into one closed curve: every port is used
    /// exactly twice and the port graph is connected.
    pub fn validate(&self) -> Result<()> {
        let ports = self
            .segments
            .iter()
            .flat_map(|s| [s.from, s.to])
            .max()
            .map_or(0, |m| m + 1);
        let mut degree = vec![0usize; ports];
        for s in &self.segments {
            degree[s.from] += 1;
            degree[s.to] += 1;
        }
        if self.segments.is_empty() || degree.iter().any(|&d| d != 2) {
            return Err(Error::Construction(format!(
                "handlebody boundary is not a single closed curve (port degrees {degree:?})"
            )));
        }
        let mut seen = vec![false; ports];
        let mut stack = vec![self.segments[0].from];
        while let Some(p) = stack.pop() {
            if std::mem::replace(&mut seen[p], true) {
                continue;
            }
            for s in &self.segments {
                if s.from == p {
                    stack.push(s.to);
                }
                if s.to == p {
                    stack.push(s.from);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Construction(
                "handlebody boundary splits into several curves".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HandleReport {
    pub n: i64,
    pub sign: Sign,
    pub mu_terms: Vec<u64>,
    pub lambda_terms: Vec<u64>,
    pub mu_intersections: u64,
    pub lambda_intersections: u64,
    pub passes_over_first: u64,
    pub class: TorusClass,
    /// The lens space whose `μ₁` is compared against, `L(4n, ±(2n+1))` raw.
    pub space: LensSpace,
    pub meridian_image: TorusClass,
    pub matches: bool,
}

/// Boundary class of the 1-handlebody from the layout's crossing counts,
/// compared with the image of `μ₁` under the Heegaard gluing.
pub fn handle_boundary_class(layout: &HandleLayout) -> Result<HandleReport> {
    layout.validate()?;
    let mu_terms: Vec<u64> = layout.segments.iter().map(|s| s.mu_hits).collect();
    let lambda_terms: Vec<u64> = layout.segments.iter().map(|s| s.lambda_hits).collect();
    let mu_intersections: u64 = mu_terms.iter().sum();
    let lambda_intersections: u64 = lambda_terms.iter().sum();
    // a curve xλ₂ + yμ₂ meets μ₂ in |x| points and λ₂ in |y| points
    let class = TorusClass::new(
        layout.lambda_orientation * lambda_intersections as i64,
        layout.mu_orientation * mu_intersections as i64,
        BasisTag::HeegaardSide2,
    );
    let n = layout.n;
    let q = match layout.sign {
        Sign::Plus => 2 * n + 1,
        Sign::Minus => -(2 * n + 1),
    };
    let space = LensSpace::new(4 * n, q)?;
    let gluing = GluingMatrix::with_witnesses(space, n, -(q.signum()) * (2 * n - 1))?;
    let meridian_image = apply_gluing(&gluing, &TorusClass::meridian(BasisTag::HeegaardSide1))?;
    Ok(HandleReport {
        n,
        sign: layout.sign,
        mu_terms,
        lambda_terms,
        mu_intersections,
        lambda_intersections,
        passes_over_first: layout.passes_over_first,
        class,
        space,
        meridian_image,
        matches: class == meridian_image,
    })
}

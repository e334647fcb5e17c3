//! The Klein bottle in the lens model of `L(4n, 2n±1)`.
//!
//! The rectangle `[0, π/2n] × [0, π]` maps into the fundamental lens
//! `{arg z₁ ∈ [0, 2π/p]}` of `S³` by
//! `ι(φ, θ) = (sin θ · e^{iφ}, cos θ · e^{±iφ})`. Its edges are glued by the
//! deck group: `ι(φ, π) = σ^{2n} ι(φ, 0)` and `ι(π/2n, π−θ) = σ ι(0, θ)`,
//! which are exactly the Klein-bottle identifications of the rectangle.
//! `ι` is an isometric immersion of the flat rectangle, so parameter
//! distances are geodesic distances on the surface.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::complex::{grid_faces, IdentifiedComplex, SurfaceSummary};
use crate::lens::{check_on_sphere, LensSpace, Sign, SPHERE_TOLERANCE};
use crate::C2;

/// Residual allowed for identities that are exact in real arithmetic.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
/// `|z₁|` below this counts as `z₁ = 0` when canonicalizing.
pub const CORE_TOLERANCE: f64 = 1e-9;

/// Two raw vertices identified in the quotient: `b = σ^deck_power(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeamPair {
    pub a: usize,
    pub b: usize,
    pub deck_power: i64,
    /// 0 for `(φ,0) ∼ (φ,π)`, 1 for `(0,θ) ∼ (π/2n, π−θ)`.
    pub family: usize,
}

/// The rectangle `[0, width] × [0, π]` with the Klein-bottle gluings
/// `(φ,0) ∼ (φ,π)` and `(0,θ) ∼ (width, π−θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinRectangle {
    pub width: f64,
}

impl KleinRectangle {
    /// Distance in the quotient flat metric, taken over the nearest lifts.
    pub fn distance(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        let mut best = f64::INFINITY;
        for a in -1i32..=1 {
            // glide G(φ,θ) = (φ + width, π − θ), applied a times
            let (phi, theta) = if a % 2 == 0 {
                (y[0], y[1])
            } else {
                (y[0], PI - y[1])
            };
            let phi = phi + a as f64 * self.width;
            for b in -1i32..=1 {
                let theta = theta + b as f64 * PI;
                best = best.min((x[0] - phi).hypot(x[1] - theta));
            }
        }
        best
    }
}

/// A sampled surface in `S³` together with the seams that glue it into a
/// closed surface in the lens space.
#[derive(Debug, Clone)]
pub struct QuotientMesh {
    pub space: LensSpace,
    pub resolution: usize,
    pub vertices: Vec<C2>,
    /// Parameter point `(φ, θ)` of each vertex.
    pub params: Vec<[f64; 2]>,
    pub faces: Vec<[usize; 3]>,
    pub seams: Vec<SeamPair>,
    pub domain: KleinRectangle,
}

impl QuotientMesh {
    /// Assembles a mesh without verifying anything; use [`verify_seams`].
    pub fn from_parts(
        space: LensSpace,
        resolution: usize,
        vertices: Vec<C2>,
        params: Vec<[f64; 2]>,
        faces: Vec<[usize; 3]>,
        seams: Vec<SeamPair>,
        domain: KleinRectangle,
    ) -> Result<Self> {
        if vertices.len() != params.len() {
            return Err(Error::Construction(
                "one parameter point per vertex required".into(),
            ));
        }
        let n = vertices.len();
        if faces
            .iter()
            .flatten()
            .chain(seams.iter().flat_map(|s| [&s.a, &s.b]))
            .any(|&i| i >= n)
        {
            return Err(Error::Construction(
                "face or seam index out of range".into(),
            ));
        }
        Ok(QuotientMesh {
            space,
            resolution,
            vertices,
            params,
            faces,
            seams,
            domain,
        })
    }

    pub fn complex(&self) -> IdentifiedComplex {
        IdentifiedComplex {
            vertex_count: self.vertices.len(),
            faces: self.faces.clone(),
            identifications: self.seams.iter().map(|s| (s.a, s.b, s.family)).collect(),
        }
    }

    pub fn surface(&self) -> SurfaceSummary {
        self.complex().summarize()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.surface().euler_characteristic()
    }

    /// Largest parameter spacing between neighbouring grid samples.
    pub fn grid_spacing(&self) -> f64 {
        let cells = self.resolution.saturating_sub(1).max(1) as f64;
        self.domain.width.max(PI) / cells
    }

    pub fn max_sphere_deviation(&self) -> f64 {
        self.vertices
            .iter()
            .map(|z| (z[0].norm_sqr() + z[1].norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `ι(φ, θ)` for `L(4n, 2n±1)`.
pub fn lens_model_point(sign: Sign, phi: f64, theta: f64) -> C2 {
    let s = sign.as_i64() as f64;
    [
        Complex64::from_polar(theta.sin(), phi),
        Complex64::from_polar(theta.cos(), s * phi),
    ]
}

/// Samples `ι` on a `resolution × resolution` grid (endpoints included),
/// records both seam families and checks them to `1e-12`.
pub fn klein_lens_embedding(n: i64, sign: Sign, resolution: usize) -> Result<QuotientMesh> {
    if resolution < 4 {
        return Err(Error::Domain(format!("resolution {resolution} below 4")));
    }
    let space = LensSpace::klein_family(n, sign)?;
    let width = PI / (2 * n) as f64;
    let res = resolution;
    let last = res - 1;
    let idx = |i: usize, j: usize| i * res + j;

    let mut vertices = Vec::with_capacity(res * res);
    let mut params = Vec::with_capacity(res * res);
    for i in 0..res {
        let phi = width * i as f64 / last as f64;
        for j in 0..res {
            let theta = PI * j as f64 / last as f64;
            vertices.push(lens_model_point(sign, phi, theta));
            params.push([phi, theta]);
        }
    }

    let mut seams = Vec::with_capacity(2 * res);
    for i in 0..res {
        seams.push(SeamPair {
            a: idx(i, 0),
            b: idx(i, last),
            deck_power: 2 * n,
            family: 0,
        });
    }
    for j in 0..res {
        seams.push(SeamPair {
            a: idx(0, j),
            b: idx(last, last - j),
            deck_power: 1,
            family: 1,
        });
    }

    let mesh = QuotientMesh::from_parts(
        space,
        res,
        vertices,
        params,
        grid_faces(last, last, 0),
        seams,
        KleinRectangle { width },
    )?;
    let check = verify_seams(&mesh, IDENTITY_TOLERANCE);
    if !check.passed {
        return Err(Error::Internal(format!(
            "seam residual {:.3e} exceeds {IDENTITY_TOLERANCE:e}",
            check.max_residual
        )));
    }
    Ok(mesh)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeamCheck {
    pub max_residual: f64,
    pub pairs: usize,
    pub passed: bool,
}

/// `max |b − σ^k(a)|` over the seam pairs, in the max-coordinate norm.
pub fn verify_seams(mesh: &QuotientMesh, tolerance: f64) -> SeamCheck {
    let max_residual = mesh
        .seams
        .iter()
        .map(|s| {
            let image = mesh.space.deck_power(&mesh.vertices[s.a], s.deck_power);
            let b = &mesh.vertices[s.b];
            (image[0] - b[0]).norm().max((image[1] - b[1]).norm())
        })
        .fold(0.0, f64::max);
    SeamCheck {
        max_residual,
        pairs: mesh.seams.len(),
        passed: max_residual < tolerance && !mesh.seams.is_empty(),
    }
}

fn arg_positive(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        // a tiny negative angle rounds to exactly 2π
        let b = a + TAU;
        if b >= TAU {
            0.0
        } else {
            b
        }
    } else {
        a
    }
}

/// Sector index `m` with `arg ∈ [2πm/p, 2π(m+1)/p)`.
fn sector(arg: f64, p: i64) -> i64 {
    ((arg / TAU * p as f64).floor() as i64).rem_euclid(p)
}

/// Moves `z` into the lens `arg z₁ ∈ [0, 2π/p)` by a deck transformation and
/// returns `(σ^k z, k)` with `0 ≤ k < p`. On the core circle `z₁ = 0` the
/// orbit instead normalizes `arg z₂` into `[0, 2π/p)`.
pub fn lens_fundamental_domain_canonicalize(space: &LensSpace, z: &C2) -> Result<(C2, i64)> {
    check_on_sphere(z, SPHERE_TOLERANCE)?;
    let p = space.p();
    let core = z[0].norm() < CORE_TOLERANCE;
    // σ advances arg z₁ by one sector and arg z₂ by q sectors
    let per_sector = if core { inverse_mod(space.q(), p) } else { 1 };
    let mut k = 0;
    let mut w = *z;
    // rounding on a sector wall can need a second pass
    for _ in 0..p.max(2) {
        let coord = if core { w[1] } else { w[0] };
        let m = sector(arg_positive(coord), p);
        if m == 0 {
            break;
        }
        k = (k - m * per_sector).rem_euclid(p);
        w = space.deck_power(z, k);
    }
    Ok((w, k))
}

fn inverse_mod(a: i64, m: i64) -> i64 {
    use num_integer::Integer;
    if m == 1 {
        return 0;
    }
    a.rem_euclid(m).extended_gcd(&m).x.rem_euclid(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InjectivityReport {
    pub passed: bool,
    /// Smallest orbit distance between two distinct quotient samples found
    /// within the search radius.
    pub min_separation: f64,
    /// `min_separation` is only a lower bound (no pair within the radius).
    pub lower_bound_only: bool,
    pub search_radius: f64,
    /// Pairs at parameter distance at most this are the same sample.
    pub param_threshold: f64,
    pub pairs_compared: usize,
    /// `(vertex, vertex, deck power)` realizing the minimum.
    pub closest: Option<(usize, usize, i64)>,
}

fn hash_cell(z: &C2, cell: f64) -> [i64; 4] {
    [z[0].re, z[0].im, z[1].re, z[1].im].map(|x| (x / cell).floor() as i64)
}

fn c2_distance(a: &C2, b: &C2) -> f64 {
    ((a[0] - b[0]).norm_sqr() + (a[1] - b[1]).norm_sqr()).sqrt()
}

/// Checks that samples far apart on the surface stay apart in the lens
/// space: for every pair at quotient-parameter distance above half a grid
/// step, the distance between their deck orbits must exceed `min_sep`.
///
/// All `p` translates of every vertex go into a spatial hash; the search
/// radius covers at least two grid steps, so the nearest non-identified
/// neighbour is always inside it.
pub fn embedded_injectivity_check(
    mesh: &QuotientMesh,
    space: &LensSpace,
    min_sep: f64,
) -> InjectivityReport {
    let h = mesh.grid_spacing();
    let param_threshold = 0.5 * h;
    let radius = (2.0 * h).max(2.0 * min_sep);
    let p = space.p();

    let mut grid: HashMap<[i64; 4], Vec<(usize, i64, C2)>> = HashMap::new();
    for (v, z) in mesh.vertices.iter().enumerate() {
        for k in 0..p {
            let w = space.deck_power(z, k);
            grid.entry(hash_cell(&w, radius))
                .or_default()
                .push((v, k, w));
        }
    }

    let mut best = f64::INFINITY;
    let mut closest = None;
    let mut pairs = 0usize;
    for (x, z) in mesh.vertices.iter().enumerate() {
        let c = hash_cell(z, radius);
        for d0 in -1..=1 {
            for d1 in -1..=1 {
                for d2 in -1..=1 {
                    for d3 in -1..=1 {
                        let key = [c[0] + d0, c[1] + d1, c[2] + d2, c[3] + d3];
                        let Some(bucket) = grid.get(&key) else {
                            continue;
                        };
                        for &(y, k, ref w) in bucket {
                            if y <= x {
                                continue;
                            }
                            if mesh.domain.distance(mesh.params[x], mesh.params[y])
                                <= param_threshold
                            {
                                continue;
                            }
                            pairs += 1;
                            let d = c2_distance(z, w);
                            if d < best {
                                best = d;
                                closest = Some((x, y, k));
                            }
                        }
                    }
                }
            }
        }
    }
    let lower_bound_only = closest.is_none();
    let min_separation = if lower_bound_only { radius } else { best };
    InjectivityReport {
        passed: min_separation > min_sep,
        min_separation,
        lower_bound_only,
        search_radius: radius,
        param_threshold,
        pairs_compared: pairs,
        closest,
    }
}

/// Orthonormal basis of the tangent hyperplane `pole^⊥ ⊂ R⁴`.
fn complement_basis(pole: &[f64; 4]) -> [[f64; 4]; 3] {
    let dot = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut basis: Vec<[f64; 4]> = vec![*pole];
    let mut candidates: Vec<[f64; 4]> = (0..4)
        .map(|i| {
            let mut e = [0.0; 4];
            e[i] = 1.0;
            e
        })
        .collect();
    // most orthogonal standard vectors first, for conditioning
    candidates.sort_by(|a, b| dot(a, pole).abs().total_cmp(&dot(b, pole).abs()));
    for e in candidates {
        if basis.len() == 4 {
            break;
        }
        let mut v = e;
        for b in &basis {
            let c = dot(&v, b);
            for i in 0..4 {
                v[i] -= c * b[i];
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-6 {
            basis.push(v.map(|x| x / norm));
        }
    }
    [basis[1], basis[2], basis[3]]
}

fn to_r4(z: &C2) -> [f64; 4] {
    [z[0].re, z[0].im, z[1].re, z[1].im]
}

fn from_r4(x: &[f64; 4]) -> C2 {
    [Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])]
}

/// Projection of `S³ ∖ {pole}` to `R³` (coordinates in a fixed orthonormal
/// basis of `pole^⊥`); `−pole` goes to the origin.
#[derive(Debug, Clone)]
pub struct Stereographic {
    pole: [f64; 4],
    basis: [[f64; 4]; 3],
}

impl Stereographic {
    pub fn new(pole: &C2) -> Result<Self> {
        check_on_sphere(pole, SPHERE_TOLERANCE)?;
        let pole = to_r4(pole);
        Ok(Stereographic {
            pole,
            basis: complement_basis(&pole),
        })
    }

    pub fn project(&self, z: &C2) -> Result<[f64; 3]> {
        let x = to_r4(z);
        let along: f64 = x.iter().zip(&self.pole).map(|(a, b)| a * b).sum();
        let gap = c2_distance(z, &from_r4(&self.pole));
        if gap < SPHERE_TOLERANCE {
            return Err(Error::Domain(
                "point coincides with the projection pole".into(),
            ));
        }
        let denom = 1.0 - along;
        Ok(self
            .basis
            .map(|b| x.iter().zip(&b).map(|(a, c)| a * c).sum::<f64>() / denom))
    }

    pub fn inverse(&self, y: &[f64; 3]) -> C2 {
        let mut w = [0.0; 4];
        for (coef, b) in y.iter().zip(&self.basis) {
            for i in 0..4 {
                w[i] += coef * b[i];
            }
        }
        let s: f64 = y.iter().map(|c| c * c).sum();
        let x: [f64; 4] =
            std::array::from_fn(|i| (2.0 * w[i] + (s - 1.0) * self.pole[i]) / (s + 1.0));
        from_r4(&x)
    }
}

/// A mesh in `R³` with the seam data carried along as annotations.
#[derive(Debug, Clone)]
pub struct StereoMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub seams: Vec<SeamPair>,
}

pub fn stereographic_export(mesh: &QuotientMesh, pole: &C2) -> Result<StereoMesh> {
    let proj = Stereographic::new(pole)?;
    let vertices = mesh
        .vertices
        .iter()
        .map(|z| proj.project(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(StereoMesh {
        vertices,
        faces: mesh.faces.clone(),
        seams: mesh.seams.clone(),
    })
}

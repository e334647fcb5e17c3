//! The full property sweep behind `kleinlens verify`.
//!
//! Suites run in a fixed order and each stops at its first counterexample.
//! The report holds only deterministic quantities; timing goes to stderr.

use num_complex::Complex64;
use num_integer::Integer;

use kleinlens::abelian::{dehn_filling_h1, AbelianGroup};
use kleinlens::geometry::mesh::IDENTITY_TOLERANCE;
use kleinlens::geometry::{
    embedded_injectivity_check, handle_boundary_class, heegaard_identification_from_fibration,
    klein_lens_embedding, two_moebius_construction, verify_seams, HandleLayout,
};
use kleinlens::groups::{
    build_metacyclic_table, check_group_axioms, element_order, group_order, is_abelian,
    table_abelianization,
};
use kleinlens::{
    are_homeomorphic, heegaard_gluing, klein_bottle_embeds, lens_from_meridian_image,
    projective_plane_embeds, LensSpace, Sign,
};

use crate::{real, CliError, Options, Report};

/// Largest `n` whose mesh also gets the injectivity check.
pub const INJECTIVITY_MAX_N: i64 = 8;
pub const INJECTIVITY_MIN_SEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyArgs {
    pub max_n: i64,
    pub max_p: i64,
    pub resolution: usize,
    /// Test-only negative control: corrupts one seam of the first mesh.
    pub inject_fault: bool,
}

type Suite = Result<usize, String>;
type SuiteRun<'a> = Box<dyn Fn() -> Suite + 'a>;

fn canonical_spaces(max_p: i64) -> Vec<LensSpace> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        for q in 0..p.max(1) {
            if p.gcd(&q) == 1 {
                out.push(LensSpace::new(p, q).expect("coprime"));
            }
        }
    }
    out
}

fn classification(max_p: i64) -> Suite {
    let spaces = canonical_spaces(max_p);
    for s in &spaces {
        let by_search = (1..=s.p() / 4).any(|n| {
            [Sign::Plus, Sign::Minus].iter().any(|&sign| {
                are_homeomorphic(s, &LensSpace::klein_family(n, sign).expect("n >= 1"))
            })
        });
        if klein_bottle_embeds(s).embeds != by_search {
            return Err(format!("{s}: closed form disagrees with enumeration"));
        }
        if projective_plane_embeds(s) != (s.p() == 2) {
            return Err(format!("{s}: projective plane verdict"));
        }
    }
    Ok(spaces.len())
}

fn gluing(max_p: i64) -> Suite {
    let spaces = canonical_spaces(max_p);
    for s in &spaces {
        let g = heegaard_gluing(s);
        if g.determinant() != -1 || s.p() * g.r() + s.q() * g.s() != 1 {
            return Err(format!(
                "{s}: det {} r={} s={}",
                g.determinant(),
                g.r(),
                g.s()
            ));
        }
        match lens_from_meridian_image(&g.meridian_image()) {
            Ok(back) if back == *s => {}
            other => return Err(format!("{s}: meridian image gives {other:?}")),
        }
    }
    Ok(spaces.len())
}

fn homology(max_n: i64) -> Suite {
    let mut cases = 0;
    for n in 1..=max_n {
        for l in -max_n..=max_n {
            if n.gcd(&l) != 1 {
                continue;
            }
            let h = dehn_filling_h1(n, l).map_err(|e| e.to_string())?;
            let expected = if l % 2 != 0 {
                AbelianGroup::cyclic(4 * n as u64)
            } else {
                AbelianGroup::from_factors(&[2, 2 * n as u64], 0).map_err(|e| e.to_string())?
            };
            if h != expected {
                return Err(format!("({n}, {l}): H1 = {h}, expected {expected}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn groups(max_n: i64, cap: u64) -> Suite {
    let mut cases = 0;
    for n in 1..=max_n {
        for l in (-max_n..=max_n).filter(|&l| l != 0) {
            let t = match build_metacyclic_table(n, l, cap) {
                Ok(t) => t,
                Err(kleinlens::Error::Resource { .. }) => continue,
                Err(e) => return Err(format!("({n}, {l}): {e}")),
            };
            let a = l.unsigned_abs() as usize;
            if group_order(&t) != 4 * n as usize * a || !check_group_axioms(&t).holds() {
                return Err(format!("({n}, {l}): not a group of order 4n|l|"));
            }
            if element_order(&t, 0, 1) != 2 * a || is_abelian(&t) != (a == 1) {
                return Err(format!("({n}, {l}): ord(v) or commutativity"));
            }
            if n.gcd(&l) == 1 {
                let h = dehn_filling_h1(n, l).map_err(|e| e.to_string())?;
                if table_abelianization(&t) != h {
                    return Err(format!("({n}, {l}): abelianization differs from {h}"));
                }
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn heegaard(max_n: i64) -> Suite {
    let mut cases = 0;
    for n in 1..=max_n {
        for sign in [Sign::Plus, Sign::Minus] {
            let bands = two_moebius_construction(n, sign).map_err(|e| e.to_string())?;
            if !bands.matches {
                return Err(format!("two bands n={n} {sign}: {}", bands.image));
            }
            let layout = HandleLayout::standard(n, sign).map_err(|e| e.to_string())?;
            let handles = handle_boundary_class(&layout).map_err(|e| e.to_string())?;
            if !handles.matches {
                return Err(format!("handles n={n} {sign}: {}", handles.class));
            }
            cases += 2;
        }
        let f = heegaard_identification_from_fibration(n).map_err(|e| e.to_string())?;
        if f.lens.canonical() != LensSpace::new(4 * n, 2 * n - 1).map_err(|e| e.to_string())? {
            return Err(format!("fibration n={n}: {}", f.lens));
        }
        cases += 1;
    }
    Ok(cases)
}

fn geometry(max_n: i64, resolution: usize, tolerance: f64, inject_fault: bool) -> Suite {
    let mut cases = 0;
    for n in 1..=max_n {
        for sign in [Sign::Plus, Sign::Minus] {
            let mut mesh = klein_lens_embedding(n, sign, resolution).map_err(|e| e.to_string())?;
            if inject_fault && cases == 0 {
                let b = mesh.seams[mesh.seams.len() - 2].b;
                mesh.vertices[b][0] *= Complex64::from_polar(1.0, 1e-6);
            }
            let seams = verify_seams(&mesh, tolerance);
            if !seams.passed {
                return Err(format!(
                    "n={n} {sign}: seam residual {}",
                    real(seams.max_residual)
                ));
            }
            let s = mesh.surface();
            if s.euler_characteristic() != 0 || !s.closed || s.orientable {
                return Err(format!("n={n} {sign}: {s:?}"));
            }
            if n <= INJECTIVITY_MAX_N {
                let inj = embedded_injectivity_check(&mesh, &mesh.space, INJECTIVITY_MIN_SEP);
                if !inj.passed {
                    return Err(format!(
                        "n={n} {sign}: separation {}",
                        real(inj.min_separation)
                    ));
                }
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn negative_control(resolution: usize) -> Suite {
    let mut mesh = klein_lens_embedding(2, Sign::Plus, resolution).map_err(|e| e.to_string())?;
    let b = mesh.seams[mesh.seams.len() - 2].b;
    mesh.vertices[b][0] *= Complex64::from_polar(1.0, 1e-6);
    if verify_seams(&mesh, IDENTITY_TOLERANCE).passed {
        return Err("corrupted seam passed verification".into());
    }
    Ok(1)
}

pub fn verify(args: &VerifyArgs, opts: &Options) -> Result<Report, CliError> {
    let VerifyArgs {
        max_n,
        max_p,
        resolution,
        inject_fault,
    } = *args;
    if max_n < 1 || max_p < 1 {
        return Err(CliError::Usage("verify bounds must be positive".into()));
    }
    if resolution < 4 {
        return Err(CliError::Usage(format!("resolution {resolution} below 4")));
    }
    let mut r = Report::new(format!("verify {max_n} {max_p}"));
    r.input("max_n", max_n)
        .input("max_p", max_p)
        .input("resolution", resolution)
        .input("tolerance", real(opts.tolerance))
        .input("cap", opts.cap);
    if inject_fault {
        r.notice("fault injected: one seam of the first mesh is corrupted");
    }
    let suites: Vec<(&str, SuiteRun)> = vec![
        ("classification", Box::new(move || classification(max_p))),
        ("gluing", Box::new(move || gluing(max_p))),
        ("homology", Box::new(move || homology(max_n))),
        ("groups", Box::new(move || groups(max_n, opts.cap))),
        ("heegaard", Box::new(move || heegaard(max_n))),
        (
            "geometry",
            Box::new(move || geometry(max_n, resolution, opts.tolerance, inject_fault)),
        ),
        (
            "negative_control",
            Box::new(move || negative_control(resolution)),
        ),
    ];
    for (name, run) in suites {
        match run() {
            Ok(cases) => {
                r.result(&format!("suite.{name}"), format!("{cases} cases"));
                r.check(name, true, format!("{cases} cases"));
            }
            Err(first) => {
                r.result(&format!("suite.{name}"), "failed");
                r.check(name, false, format!("first counterexample: {first}"));
            }
        }
    }
    Ok(r)
}

//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! quantity and the wall-clock time against its budget.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;

use kleinlens::abelian::{dehn_filling_h1, AbelianGroup};
use kleinlens::geometry::constructions::{handle_boundary_class, moebius_boundary_winding};
use kleinlens::geometry::mesh::IDENTITY_TOLERANCE;
use kleinlens::geometry::{
    embedded_injectivity_check, heegaard_identification_from_fibration, klein_lens_embedding,
    two_moebius_construction, verify_seams, HandleLayout,
};
use kleinlens::groups::{
    abelianization, build_metacyclic_table, check_group_axioms, dehn_filling_presentation,
    element_order, group_order, is_abelian, table_abelianization, DEFAULT_ORDER_CAP,
};
use kleinlens::{
    heegaard_gluing, klein_bottle_embeds, projective_plane_embeds, BasisTag, LensSpace, Sign,
    TorusClass,
};

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

/// Canonical `(p, q)`: `q ∈ [0, p)` coprime to `p`, with `L(1,0)` for `p = 1`.
fn canonical_spaces(max_p: i64) -> Vec<LensSpace> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        for q in 0..p.max(1) {
            if p.gcd(&q) == 1 {
                out.push(LensSpace::new(p, q).unwrap());
            }
        }
    }
    out
}

/// `(Z ⊕ Z₂)/⟨(2n, ℓ mod 2)⟩` by brute force: elements `(a, b)` with
/// `0 ≤ a < 2n`, reduced by the relation, and the largest element order.
/// An abelian group of order `4n` and exponent `4n` is `Z_{4n}`; with
/// exponent `2n` it is `Z_{2n} ⊕ Z₂`.
fn filling_h1_by_enumeration(n: i64, l: i64) -> AbelianGroup {
    let m = 2 * n;
    let e = l.rem_euclid(2);
    let reduce = |a: i64, b: i64| {
        let wraps = a.div_euclid(m);
        (a.rem_euclid(m), (b - wraps * e).rem_euclid(2))
    };
    let mut exponent = 1i64;
    for a in 0..m {
        for b in 0..2 {
            let mut x = (a, b);
            let mut k = 1;
            while x != (0, 0) {
                x = reduce(x.0 + a, x.1 + b);
                k += 1;
            }
            exponent = exponent.lcm(&k);
        }
    }
    let order = 2 * m;
    if exponent == order {
        AbelianGroup::cyclic(order as u64)
    } else {
        AbelianGroup::from_factors(&[2, (order / 2) as u64], 0).unwrap()
    }
}

fn classification() -> Outcome {
    let expected: BTreeSet<(i64, i64)> = [
        (4, 1),
        (4, 3),
        (8, 3),
        (8, 5),
        (12, 5),
        (12, 7),
        (16, 7),
        (16, 9),
    ]
    .into();
    let mut found = BTreeSet::new();
    let spaces = canonical_spaces(16);
    for s in &spaces {
        let v = klein_bottle_embeds(s);
        if v.embeds {
            found.insert((s.p(), s.q()));
            let (n, sign) = (v.n.unwrap(), v.sign.unwrap());
            if LensSpace::klein_family(n, sign).unwrap().canonical() != *s {
                return fail(format!(
                    "{s}: witness n={n}, sign={sign} does not rebuild it"
                ));
            }
        }
    }
    if found != expected {
        return fail(format!("embeds on {found:?}"));
    }
    pass(format!(
        "yes on exactly 8 of {} canonical spaces with p <= 16",
        spaces.len()
    ))
}

fn homology() -> Outcome {
    let mut cases = 0;
    for n in 1..=50i64 {
        for l in -25..=25i64 {
            if n.gcd(&l) != 1 {
                continue;
            }
            let h = dehn_filling_h1(n, l).unwrap();
            let closed_form = if l % 2 != 0 {
                AbelianGroup::cyclic(4 * n as u64)
            } else {
                AbelianGroup::from_factors(&[2, 2 * n as u64], 0).unwrap()
            };
            if h != closed_form || h != filling_h1_by_enumeration(n, l) {
                return fail(format!(
                    "(n, l) = ({n}, {l}): got {h}, expected {closed_form}"
                ));
            }
            cases += 1;
        }
    }
    pass(format!(
        "{cases} coprime pairs match the closed form and the enumeration"
    ))
}

fn groups() -> Outcome {
    let mut cases = 0;
    for n in 1..=12i64 {
        for l in (-12..=12i64).filter(|&l| l != 0) {
            let t = match build_metacyclic_table(n, l, DEFAULT_ORDER_CAP) {
                Ok(t) => t,
                Err(e) => return fail(format!("({n}, {l}): {e}")),
            };
            let a = l.unsigned_abs() as usize;
            if group_order(&t) != 4 * n as usize * a {
                return fail(format!("({n}, {l}): order {}", group_order(&t)));
            }
            if !check_group_axioms(&t).holds() {
                return fail(format!("({n}, {l}): group axioms fail"));
            }
            if element_order(&t, 0, 1) != 2 * a {
                return fail(format!("({n}, {l}): ord(v) = {}", element_order(&t, 0, 1)));
            }
            if is_abelian(&t) != (a == 1) {
                return fail(format!("({n}, {l}): abelian = {}", is_abelian(&t)));
            }
            // H1 needs a primitive slope; otherwise compare with the presentation
            let expected = match dehn_filling_h1(n, l) {
                Ok(h) => h,
                Err(_) => abelianization(&dehn_filling_presentation(n, l)),
            };
            if table_abelianization(&t) != expected {
                return fail(format!(
                    "({n}, {l}): abelianization differs from {expected}"
                ));
            }
            cases += 1;
        }
    }
    pass(format!(
        "{cases} tables: order 4n|l|, axioms, ord(v) = 2|l|, abelian iff |l| = 1, G^ab = H1"
    ))
}

fn heegaard() -> Outcome {
    let mut gluings = 0;
    for s in canonical_spaces(500) {
        let g = heegaard_gluing(&s);
        let (p, q) = (s.p(), s.q());
        if g.determinant() != -1 || p * g.r() + q * g.s() != 1 {
            return fail(format!(
                "{s}: det {} r={} s={}",
                g.determinant(),
                g.r(),
                g.s()
            ));
        }
        gluings += 1;
    }
    let side2 = |mu: i64, lambda: i64| TorusClass::new(mu, lambda, BasisTag::HeegaardSide2);
    for n in 1..=100i64 {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = two_moebius_construction(n, sign).unwrap();
            if !r.matches || r.image != sign.as_i64() * side2(-1, 2) {
                return fail(format!("two bands, n={n} {sign}: image {}", r.image));
            }
            let h = handle_boundary_class(&HandleLayout::standard(n, sign).unwrap()).unwrap();
            if !h.matches {
                return fail(format!("handles, n={n} {sign}: class {}", h.class));
            }
        }
        let h = handle_boundary_class(&HandleLayout::standard(n, Sign::Plus).unwrap()).unwrap();
        if h.class != side2(-(2 * n + 1), 4 * n) {
            return fail(format!("handles, n={n}: class {}", h.class));
        }
        let f = heegaard_identification_from_fibration(n).unwrap();
        let target = LensSpace::new(4 * n, 2 * n - 1).unwrap();
        if f.meridian_image != side2(-(2 * n + 1), -4 * n) || f.lens.canonical() != target {
            return fail(format!(
                "fibration, n={n}: {} gives {}",
                f.meridian_image, f.lens
            ));
        }
    }
    pass(format!("{gluings} gluings with det -1 and Bezout; band, handle and fibration identities for n <= 100"))
}

fn geometry() -> Outcome {
    let mut worst = 0.0f64;
    let mut tightest = f64::INFINITY;
    for n in 1..=16i64 {
        for sign in [Sign::Plus, Sign::Minus] {
            let mesh = match klein_lens_embedding(n, sign, 64) {
                Ok(m) => m,
                Err(e) => return fail(format!("n={n} {sign}: {e}")),
            };
            let seams = verify_seams(&mesh, IDENTITY_TOLERANCE);
            worst = worst.max(seams.max_residual);
            if !seams.passed {
                return fail(format!(
                    "n={n} {sign}: seam residual {:.3e}",
                    seams.max_residual
                ));
            }
            let surface = mesh.surface();
            if surface.euler_characteristic() != 0 || !surface.closed || surface.orientable {
                return fail(format!("n={n} {sign}: surface {surface:?}"));
            }
            if n <= 8 {
                let inj = embedded_injectivity_check(&mesh, &mesh.space, 1e-4);
                if !inj.passed {
                    return fail(format!(
                        "n={n} {sign}: separation {:.3e}",
                        inj.min_separation
                    ));
                }
                tightest = tightest.min(inj.min_separation);
            }
        }
    }
    for (twist, mer) in [(Sign::Plus, 1.0), (Sign::Minus, -1.0)] {
        let (lon, m) = moebius_boundary_winding(4096, twist);
        if lon.round() != 2.0
            || m.round() != mer
            || (lon - 2.0).abs() > 1e-9
            || (m - mer).abs() > 1e-9
        {
            return fail(format!("band boundary winding ({lon}, {m})"));
        }
    }
    pass(format!(
        "seam residual {worst:.3e} < 1e-12, chi = 0, min separation {tightest:.3e} >= 1e-4, windings (2, +-1)"
    ))
}

fn negative_controls() -> Outcome {
    let rp2: Vec<_> = canonical_spaces(200)
        .into_iter()
        .filter(projective_plane_embeds)
        .collect();
    if rp2 != [LensSpace::new(2, 1).unwrap()] {
        return fail(format!("RP2 embeds in {rp2:?}"));
    }
    for n in 1..=50i64 {
        for l in (-24..=24i64).step_by(2) {
            if n.gcd(&l) == 1 && dehn_filling_h1(n, l).unwrap().is_cyclic() {
                return fail(format!("even l = {l}, n = {n} gives a cyclic H1"));
            }
        }
    }
    let mut mesh = klein_lens_embedding(2, Sign::Plus, 32).unwrap();
    // a mid-height vertex on the glide seam, nudged along the z₁ circle
    let b = mesh
        .seams
        .iter()
        .find(|s| s.family == 1 && s.a == 16)
        .unwrap()
        .b;
    mesh.vertices[b][0] *= num_complex::Complex64::from_polar(1.0, 1e-6);
    let check = verify_seams(&mesh, IDENTITY_TOLERANCE);
    if check.passed {
        return fail("corrupted seam passed verification");
    }
    pass(format!(
        "RP2 only in L(2,1); even l never cyclic; corrupted seam residual {:.3e}",
        check.max_residual
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("classification", classification, Duration::from_secs(1)),
        ("homology", homology, Duration::from_secs(5)),
        ("groups", groups, Duration::from_secs(60)),
        ("heegaard", heegaard, Duration::from_secs(2)),
        ("geometry", geometry, Duration::from_secs(30)),
        (
            "negative-controls",
            negative_controls,
            Duration::from_secs(60),
        ),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.passed && elapsed < *budget;
        all &= ok;
        println!(
            "{} {}. {name}: {} [{:.3} s, budget {} s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

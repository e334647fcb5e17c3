//! Subcommands of the `kleinlens` binary. Each returns a [`Report`]; the
//! binary prints it and maps the outcome to an exit code.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use kleinlens::abelian::{cokernel, dehn_filling_h1, inclusion_map_h1, AbelianGroup, IntMatrix};
use kleinlens::geometry::constructions::{moebius_boundary_trace, moebius_boundary_winding};
use kleinlens::geometry::export::{write_4off, write_curve, write_metadata, write_off};
use kleinlens::geometry::{
    embedded_injectivity_check, fiber_through, handle_boundary_class,
    heegaard_identification_from_fibration, klein_in_s1xs2, klein_lens_embedding, seifert_over_rp2,
    seifert_over_s2, stereographic_export, two_moebius_construction, verify_seams, DehnFilling,
    HandleLayout, NuKModel,
};
use kleinlens::groups::{
    abelianization, build_metacyclic_table, check_group_axioms, dehn_filling_presentation,
    group_order, is_abelian, is_cyclic, table_abelianization, torsion_diagnostic,
};
use kleinlens::{
    are_homeomorphic, heegaard_gluing, klein_bottle_embeds, lens_from_meridian_image,
    projective_plane_embeds, Error, LensSpace, Sign, TorusClass,
};

pub mod report;
pub mod verify;

pub use report::{real, Format, Report};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Seam and identity residual bound.
    pub tolerance: f64,
    /// Largest group order for which a multiplication table is built.
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// I/O or internal failure: exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_VERIFICATION_FAILURE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::Internal(_) | Error::Resource { .. } => {
                CliError::Failure(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Failure(format!("{}: {e}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify(p: i64, q: i64) -> Result<Report, CliError> {
    let mut r = Report::new(format!("classify {p} {q}"));
    r.input("p", p).input("q", q);
    let space = LensSpace::new(p, q)?;
    let canon = space.canonical();
    r.result("normalized", canon);

    let kb = klein_bottle_embeds(&canon);
    r.result("klein_bottle", yes_no(kb.embeds));
    if let (Some(n), Some(sign)) = (kb.n, kb.sign) {
        r.result("klein_bottle.n", n)
            .result("klein_bottle.sign", sign);
        let rebuilt = LensSpace::klein_family(n, sign)?.canonical();
        r.check("klein_witness_rebuilds_space", rebuilt == canon, rebuilt);
    }
    r.result("projective_plane", yes_no(projective_plane_embeds(&canon)));

    let g = heegaard_gluing(&canon);
    let [[a, b], [c, d]] = g.entries();
    r.result("gluing.matrix", format!("[[{a}, {b}], [{c}, {d}]]"))
        .result("gluing.r", g.r())
        .result("gluing.s", g.s())
        .result("gluing.meridian_image", g.meridian_image())
        .result("gluing.longitude_image", g.longitude_image());
    r.check("determinant", g.determinant() == -1, g.determinant());
    let bezout = canon.p() * g.r() + canon.q() * g.s();
    r.check("bezout", bezout == 1, format!("p*r + q*s = {bezout}"));
    let back = lens_from_meridian_image(&g.meridian_image())?;
    r.check("meridian_image_recovers_space", back == canon, back);
    Ok(r)
}

pub fn filling(n: i64, l: i64, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new(format!("filling {n} {l}"));
    r.input("n", n).input("l", l).input("cap", opts.cap);
    let slope = TorusClass::nuk(n, l);
    r.result("slope", slope);

    let h1 = match dehn_filling_h1(n, l) {
        Ok(h) => h,
        Err(Error::NotPrimitive { .. }) => {
            r.notice(format!(
                "slope {slope} is not primitive: no Dehn filling realizes it; H1 below is the quotient group"
            ));
            let (x, e) = inclusion_map_h1(&slope)?;
            let rel = IntMatrix::from_rows(&[vec![x, e as i64]]);
            cokernel(&rel, &AbelianGroup::from_factors(&[2], 1)?)?
        }
        Err(e) => return Err(e.into()),
    };
    r.result("h1", &h1)
        .result("h1_cyclic", yes_no(h1.is_cyclic()));
    if !h1.is_cyclic() {
        r.notice(format!("H1 = {h1} is not cyclic: not a lens-space filling"));
    }

    let pres = dehn_filling_presentation(n, l);
    r.result("presentation", &pres);
    let pres_ab = abelianization(&pres);
    r.check(
        "presentation_abelianization_equals_h1",
        pres_ab == h1,
        &pres_ab,
    );

    // G(n, l) and G(-n, -l) coincide: u² centralizes v
    let (tn, tl) = if n < 0 { (-n, -l) } else { (n, l) };
    if tn == 0 || tl == 0 {
        r.result("group_order", "infinite");
        r.notice("no finite multiplication table: the group is infinite");
    } else {
        match build_metacyclic_table(tn, tl, opts.cap) {
            Ok(t) => {
                let order = group_order(&t);
                r.result("group_order", order)
                    .result("abelian", yes_no(is_abelian(&t)))
                    .result("cyclic", yes_no(is_cyclic(&t)));
                let expected = 4 * tn.unsigned_abs() as usize * tl.unsigned_abs() as usize;
                r.check("order_is_4n|l|", order == expected, order);
                let axioms = check_group_axioms(&t);
                r.check(
                    "group_axioms",
                    axioms.holds(),
                    if axioms.all_triples {
                        "all triples"
                    } else {
                        "generator test"
                    },
                );
                let tab = table_abelianization(&t);
                r.check("table_abelianization_equals_h1", tab == h1, &tab);
            }
            Err(Error::Resource { order, cap }) => {
                r.result("group_order", order);
                r.notice(format!(
                    "group order {order} exceeds cap {cap}: table checks skipped (partial report)"
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }

    if n != 0 || l != 0 {
        let t = torsion_diagnostic(n, l, opts.cap)?;
        r.result("torsion.element", t.element)
            .result("torsion.order_bound", t.order_bound)
            .result(
                "torsion.exact_order",
                t.exact_order
                    .map_or("unknown".to_string(), |o| o.to_string()),
            )
            .result("torsion.witness", &t.witness);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Construction {
    #[value(name = "lens_model")]
    LensModel,
    #[value(name = "seifert")]
    Seifert,
    #[value(name = "two_moebius")]
    TwoMoebius,
    #[value(name = "handles")]
    Handles,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::LensModel => "lens_model",
            Construction::Seifert => "seifert",
            Construction::TwoMoebius => "two_moebius",
            Construction::Handles => "handles",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedArgs {
    pub n: i64,
    pub sign: String,
    pub construction: Construction,
    pub resolution: usize,
    pub out: Option<PathBuf>,
    pub min_sep: f64,
}

/// Projection pole for the exported mesh: `arg z₁ = π` lies outside the
/// sampled wedge `arg z₁ ∈ [0, π/2n]`.
fn export_pole() -> kleinlens::C2 {
    [
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ]
}

pub fn embed(args: &EmbedArgs, opts: &Options) -> Result<Report, CliError> {
    let sign: Sign = args.sign.parse()?;
    let mut r = Report::new(format!(
        "embed {} {} {}",
        args.n,
        sign,
        args.construction.name()
    ));
    r.input("n", args.n)
        .input("sign", sign)
        .input("construction", args.construction.name())
        .input("tolerance", real(opts.tolerance));
    let space = LensSpace::klein_family(args.n, sign)?;
    r.result("space", space)
        .result("space.normalized", space.canonical());
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(io_failure(dir))?;
    }
    match args.construction {
        Construction::LensModel => embed_lens_model(&mut r, args, sign, opts)?,
        Construction::Seifert => embed_seifert(&mut r, args, sign)?,
        Construction::TwoMoebius => embed_two_moebius(&mut r, args, sign, opts)?,
        Construction::Handles => embed_handles(&mut r, args, sign)?,
    }
    Ok(r)
}

fn out_file(r: &mut Report, dir: &Path, name: &str) -> PathBuf {
    r.result("file", name);
    dir.join(name)
}

fn embed_lens_model(
    r: &mut Report,
    args: &EmbedArgs,
    sign: Sign,
    opts: &Options,
) -> Result<(), CliError> {
    r.input("resolution", args.resolution)
        .input("min_sep", real(args.min_sep));
    let mesh = klein_lens_embedding(args.n, sign, args.resolution)?;
    let surface = mesh.surface();
    let seams = verify_seams(&mesh, opts.tolerance);
    let inj = embedded_injectivity_check(&mesh, &mesh.space, args.min_sep);
    let chi = surface.euler_characteristic();
    r.result("vertices", mesh.vertices.len())
        .result("faces", mesh.faces.len())
        .result("seam_pairs", seams.pairs)
        .result("euler_characteristic", chi)
        .result("orientable", yes_no(surface.orientable))
        .result("closed", yes_no(surface.closed))
        .result("max_sphere_deviation", real(mesh.max_sphere_deviation()));
    r.check("seams", seams.passed, real(seams.max_residual))
        .check("euler_characteristic_zero", chi == 0, chi)
        .check(
            "closed_nonorientable",
            surface.closed && !surface.orientable,
            yes_no(surface.closed),
        )
        .check("injectivity", inj.passed, real(inj.min_separation));
    if let Some(dir) = &args.out {
        let summary = vec![
            ("seam_residual".to_string(), real(seams.max_residual)),
            ("seam_check".to_string(), pass_fail(seams.passed)),
            ("euler_characteristic".to_string(), chi.to_string()),
            (
                "orientable".to_string(),
                yes_no(surface.orientable).to_string(),
            ),
            (
                "injectivity_min_separation".to_string(),
                real(inj.min_separation),
            ),
            ("injectivity_check".to_string(), pass_fail(inj.passed)),
            (
                "stereographic_pole".to_string(),
                "-0.70710678118654752 0 0.70710678118654752 0".into(),
            ),
        ];
        let path = out_file(r, dir, "mesh.4off");
        write_4off(&path, &mesh).map_err(io_failure(&path))?;
        let path = out_file(r, dir, "mesh.meta");
        write_metadata(&path, &mesh, &summary).map_err(io_failure(&path))?;
        let stereo = stereographic_export(&mesh, &export_pole())?;
        let path = out_file(r, dir, "mesh.off");
        write_off(&path, &stereo).map_err(io_failure(&path))?;
    }
    Ok(())
}

fn pass_fail(b: bool) -> String {
    if b { "pass" } else { "fail" }.to_string()
}

fn embed_seifert(r: &mut Report, args: &EmbedArgs, sign: Sign) -> Result<(), CliError> {
    let n = args.n;
    let filling = DehnFilling::new(n)?;
    for (key, d) in [("rp2", seifert_over_rp2(n)?), ("s2", seifert_over_s2(n)?)] {
        let fibre = d.fiber_class_on_t();
        r.result(&format!("{key}.base"), d.base_name())
            .result(&format!("{key}.fiber_class"), fibre)
            .result(
                &format!("{key}.fiber_class_filling"),
                filling.to_filling(&fibre)?,
            );
    }
    let id = heegaard_identification_from_fibration(n)?;
    for (i, step) in id.steps.iter().enumerate() {
        r.result(
            &format!("identification.{i}"),
            format!("{}: {}", step.description, step.class),
        );
    }
    r.result("identification.meridian_image", id.meridian_image)
        .result("identification.space", id.lens);
    let target = LensSpace::klein_family(n, sign)?;
    r.check(
        "fibration_space_matches",
        are_homeomorphic(&id.lens, &target),
        id.lens,
    );

    let model = NuKModel;
    let generic = fiber_through(&model, 1.0, 0.5, 64)?;
    let exceptional = fiber_through(&model, 0.0, 0.0, 64)?;
    r.check("generic_fiber_double", generic.length == 2, generic.length)
        .check(
            "exceptional_fiber_single",
            exceptional.length == 1,
            exceptional.length,
        );
    if let Some(dir) = &args.out {
        for (name, fibre) in [
            ("fiber_generic.txt", &generic),
            ("fiber_exceptional.txt", &exceptional),
        ] {
            let pts: Vec<Vec<f64>> = fibre
                .points
                .iter()
                .map(|p| vec![p.t, p.theta, p.r])
                .collect();
            let path = out_file(r, dir, name);
            write_curve(&path, &pts).map_err(io_failure(&path))?;
        }
    }
    Ok(())
}

fn embed_two_moebius(
    r: &mut Report,
    args: &EmbedArgs,
    sign: Sign,
    opts: &Options,
) -> Result<(), CliError> {
    let rep = two_moebius_construction(args.n, sign)?;
    r.result("gluing.r", rep.gluing.r())
        .result("gluing.s", rep.gluing.s())
        .result("band1.boundary", rep.side1_class)
        .result("band1.boundary_image", rep.image)
        .result("band2.boundary", rep.expected);
    r.check("boundaries_glue", rep.matches, rep.image);

    let (lon, mer) = moebius_boundary_winding(4096, Sign::Plus);
    let winding_ok = (lon - 2.0).abs() < 1e-9 && (mer - 1.0).abs() < 1e-9;
    r.check(
        "band_boundary_winding",
        winding_ok,
        format!("({}, {})", real(lon), real(mer)),
    );

    let s = klein_in_s1xs2(16)?;
    r.result("s1xs2.boundary_class", s.side1_class).result(
        "s1xs2.euler_characteristic",
        s.surface.euler_characteristic(),
    );
    r.check(
        "s1xs2_klein_bottle",
        s.passed() && s.boundary_residual < opts.tolerance,
        real(s.boundary_residual),
    );

    if let Some(dir) = &args.out {
        let pts: Vec<Vec<f64>> = moebius_boundary_trace(256, Sign::Plus)
            .iter()
            .map(|z| vec![z[0].re, z[0].im, z[1].re, z[1].im])
            .collect();
        let path = out_file(r, dir, "band_boundary.txt");
        write_curve(&path, &pts).map_err(io_failure(&path))?;
    }
    Ok(())
}

fn embed_handles(r: &mut Report, args: &EmbedArgs, sign: Sign) -> Result<(), CliError> {
    let layout = HandleLayout::standard(args.n, sign)?;
    for (i, s) in layout.segments.iter().enumerate() {
        r.result(
            &format!("segment.{i}"),
            format!(
                "{} (mu hits {}, lambda hits {})",
                s.label, s.mu_hits, s.lambda_hits
            ),
        );
    }
    let rep = handle_boundary_class(&layout)?;
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" + ");
    r.result(
        "mu_intersections",
        format!("{} = {}", join(&rep.mu_terms), rep.mu_intersections),
    )
    .result(
        "lambda_intersections",
        format!("{} = {}", join(&rep.lambda_terms), rep.lambda_intersections),
    )
    .result("boundary_class", rep.class)
    .result("meridian_image", rep.meridian_image);
    let n = args.n as u64;
    r.check(
        "mu_count_4n",
        rep.mu_intersections == 4 * n,
        rep.mu_intersections,
    )
    .check(
        "lambda_count_2n+1",
        rep.lambda_intersections == 2 * n + 1,
        rep.lambda_intersections,
    )
    .check("boundary_is_meridian_image", rep.matches, rep.class);
    Ok(())
}

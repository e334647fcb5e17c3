use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::lens::{lens_from_meridian_image, BasisTag, LensSpace, TorusClass};

/// Angle and membership tolerance for parameter-space predicates.
const PARAM_TOLERANCE: f64 = 1e-9;

/// A point `[(t, θ, r)]` of `νK = ([0,1] × S¹ × [-1,1]) / (1,θ,r) ∼ (0,−θ,−r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuKPoint {
    pub t: f64,
    pub theta: f64,
    pub r: f64,
}

fn wrap_angle(theta: f64) -> f64 {
    theta.rem_euclid(TAU)
}

fn angles_close(a: f64, b: f64) -> bool {
    let d = wrap_angle(a - b);
    d < PARAM_TOLERANCE || TAU - d < PARAM_TOLERANCE
}

/// The twisted `I`-bundle over the Klein bottle, `K = {r = 0}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NuKModel;

impl NuKModel {
    /// Partner of a point on the end faces `t = 0` or `t = 1`.
    pub fn identify(&self, x: NuKPoint) -> Option<NuKPoint> {
        let flip = |t| NuKPoint {
            t,
            theta: wrap_angle(-x.theta),
            r: -x.r,
        };
        if (x.t - 1.0).abs() < PARAM_TOLERANCE {
            Some(flip(0.0))
        } else if x.t.abs() < PARAM_TOLERANCE {
            Some(flip(1.0))
        } else {
            None
        }
    }

    /// Basis `(a, b)` of `H₁(∂νK)`.
    pub fn boundary_basis(&self) -> (TorusClass, TorusClass) {
        (TorusClass::nuk(1, 0), TorusClass::nuk(0, 1))
    }

    pub fn same_point(&self, x: &NuKPoint, y: &NuKPoint) -> bool {
        let close = |a: &NuKPoint, b: &NuKPoint| {
            (a.t - b.t).abs() < PARAM_TOLERANCE
                && angles_close(a.theta, b.theta)
                && (a.r - b.r).abs() < PARAM_TOLERANCE
        };
        close(x, y) || self.identify(*x).is_some_and(|x2| close(&x2, y))
    }
}

/// Dehn filling of `νK` with the meridian `μ` glued to `(n, 1)` and the
/// longitude `λ` to `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DehnFilling {
    pub n: i64,
}

impl DehnFilling {
    pub fn new(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("n = {n} must be at least 1")));
        }
        Ok(DehnFilling { n })
    }

    pub fn meridian_on_t(&self) -> TorusClass {
        TorusClass::nuk(self.n, 1)
    }

    pub fn longitude_on_t(&self) -> TorusClass {
        TorusClass::nuk(1, 0)
    }

    /// Rewrites a class on `∂νK` in the filling basis:
    /// `a = λ`, `b = μ − nλ`.
    pub fn to_filling(&self, c: &TorusClass) -> Result<TorusClass> {
        if c.basis != BasisTag::NuKBoundary {
            return Err(Error::Usage(format!("expected a class on nuk, got {c}")));
        }
        let (x, y) = (c.interval(), c.fiber());
        Ok(TorusClass::new(y, x - self.n * y, BasisTag::FillingTorus))
    }

    pub fn from_filling(&self, c: &TorusClass) -> Result<TorusClass> {
        if c.basis != BasisTag::FillingTorus {
            return Err(Error::Usage(format!(
                "expected a class on filling, got {c}"
            )));
        }
        Ok(TorusClass::nuk(c.mu * self.n + c.lambda, c.mu))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseOrbifold {
    RP2,
    S2,
}

/// A Seifert fibration of the Dehn filling of `νK` along `(n, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeifertDescriptor {
    base: BaseOrbifold,
    singular_fibers: Vec<u64>,
    fiber_class_on_t: TorusClass,
    /// Positions `(θ, r)` in the base of `νK` over which the fibres are
    /// exceptional (only recorded where the model exhibits them).
    exceptional_points: Vec<(f64, f64)>,
}

impl SeifertDescriptor {
    pub fn new(
        base: BaseOrbifold,
        singular_fibers: Vec<u64>,
        fiber_class_on_t: TorusClass,
        exceptional_points: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let ok = match base {
            BaseOrbifold::RP2 => singular_fibers.len() == 1 && singular_fibers[0] >= 1,
            BaseOrbifold::S2 => singular_fibers == [2, 2],
        };
        if !ok {
            return Err(Error::Construction(format!(
                "{base:?} cannot carry singular fibres {singular_fibers:?}"
            )));
        }
        Ok(SeifertDescriptor {
            base,
            singular_fibers,
            fiber_class_on_t,
            exceptional_points,
        })
    }

    pub fn base(&self) -> BaseOrbifold {
        self.base
    }

    pub fn singular_fibers(&self) -> &[u64] {
        &self.singular_fibers
    }

    /// Multiplicities greater than one.
    pub fn genuine_singular_fibers(&self) -> Vec<u64> {
        self.singular_fibers
            .iter()
            .copied()
            .filter(|&m| m > 1)
            .collect()
    }

    pub fn fiber_class_on_t(&self) -> TorusClass {
        self.fiber_class_on_t
    }

    pub fn exceptional_points(&self) -> &[(f64, f64)] {
        &self.exceptional_points
    }

    pub fn base_name(&self) -> String {
        let orders: Vec<String> = self
            .genuine_singular_fibers()
            .iter()
            .map(u64::to_string)
            .collect();
        let name = match self.base {
            BaseOrbifold::RP2 => "RP2",
            BaseOrbifold::S2 => "S2",
        };
        if orders.is_empty() {
            name.to_string()
        } else {
            format!("{name}({})", orders.join(","))
        }
    }
}

/// Fibration by the `S¹` fibres of `νK → Möbius band`, extended over the
/// filling torus; the spine of the filling becomes a fibre of order `n`.
pub fn seifert_over_rp2(n: i64) -> Result<SeifertDescriptor> {
    DehnFilling::new(n)?;
    SeifertDescriptor::new(
        BaseOrbifold::RP2,
        vec![n as u64],
        TorusClass::nuk(0, 1),
        Vec::new(),
    )
}

/// Fibration by the `[0,1]`-direction circles; the fibre class `(1,0)` is
/// the filling longitude, so the product fibration of the filling extends it.
pub fn seifert_over_s2(n: i64) -> Result<SeifertDescriptor> {
    DehnFilling::new(n)?;
    SeifertDescriptor::new(
        BaseOrbifold::S2,
        vec![2, 2],
        TorusClass::nuk(1, 0),
        vec![(0.0, 0.0), (PI, 0.0)],
    )
}

/// A fibre of the `S²(2,2)` fibration of `νK` as a closed polyline.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub points: Vec<NuKPoint>,
    /// Number of `[0,1]` intervals traversed: 1 for the two exceptional
    /// fibres, 2 otherwise.
    pub length: u8,
}

pub fn fiber_through(
    model: &NuKModel,
    theta: f64,
    r: f64,
    samples_per_interval: usize,
) -> Result<Fiber> {
    let _ = model;
    if !(-1.0..=1.0).contains(&r) || !theta.is_finite() {
        return Err(Error::Domain(format!(
            "(theta, r) = ({theta}, {r}) outside S1 x [-1,1]"
        )));
    }
    let samples = samples_per_interval.max(2);
    let theta = wrap_angle(theta);
    let exceptional = r.abs() < PARAM_TOLERANCE && angles_close(theta, -theta);
    let segment = |theta: f64, r: f64| {
        (0..samples).map(move |i| NuKPoint {
            t: i as f64 / (samples - 1) as f64,
            theta,
            r,
        })
    };
    let mut points: Vec<NuKPoint> = segment(theta, r).collect();
    let length = if exceptional {
        1
    } else {
        points.extend(segment(wrap_angle(-theta), -r));
        2
    };
    Ok(Fiber { points, length })
}

/// One step of the class bookkeeping behind the fibration-derived gluing.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentificationStep {
    pub description: &'static str,
    pub class: TorusClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FibrationIdentification {
    pub n: i64,
    pub steps: Vec<IdentificationStep>,
    /// Class of `μ₁` on `∂V₂`.
    pub meridian_image: TorusClass,
    pub lens: LensSpace,
}

/// Follows a meridian of the neighbourhood `V₁` of one exceptional fibre
/// across the filling to `∂V₂`, where the regular fibre is `2λ₂ + μ₂`.
pub fn heegaard_identification_from_fibration(n: i64) -> Result<FibrationIdentification> {
    let filling = DehnFilling::new(n)?;
    let mut steps = Vec::new();
    let mut record = |description, class| steps.push(IdentificationStep { description, class });

    // μ₁' meets T in two circles, each in the fibre class b
    let circle = TorusClass::nuk(0, 1);
    record("circle of mu1' on T", circle);
    let in_filling = filling.to_filling(&circle)?;
    record("same circle on the filling torus", in_filling);
    // μ bounds a meridian disc of the filling torus
    let pushed = TorusClass::new(0, in_filling.lambda, BasisTag::FillingTorus);
    record("isotoped across the filling torus", pushed);
    let doubled = filling.from_filling(&(2 * pushed))?;
    record("both circles, back on T", doubled);
    if doubled.fiber() != 0 {
        return Err(Error::Internal(format!(
            "{doubled} is not a multiple of the regular fibre"
        )));
    }
    let regular_on_v2 = TorusClass::new(1, 2, BasisTag::HeegaardSide2);
    let fibres = doubled.interval() * regular_on_v2;
    record("regular fibres on dV2", fibres);
    let meridian_image = -TorusClass::meridian(BasisTag::HeegaardSide2) + fibres;
    record("mu1 on dV2", meridian_image);

    let lens = lens_from_meridian_image(&meridian_image)?;
    let expected = LensSpace::new(4 * n, 2 * n - 1)?.canonical();
    if lens != expected {
        return Err(Error::Internal(format!(
            "fibration gives {lens}, expected {expected}"
        )));
    }
    Ok(FibrationIdentification {
        n,
        steps,
        meridian_image,
        lens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::{are_homeomorphic, klein_bottle_embeds, Sign};

    #[test]
    fn identification_is_an_involution() {
        let m = NuKModel;
        for &(theta, r) in &[(0.3, 0.2), (PI, -1.0), (0.0, 0.0)] {
            let x = NuKPoint { t: 1.0, theta, r };
            let y = m.identify(x).unwrap();
            assert_eq!(y.t, 0.0);
            let back = m.identify(y).unwrap();
            assert!(m.same_point(&back, &x));
        }
        assert!(m
            .identify(NuKPoint {
                t: 0.5,
                theta: 0.0,
                r: 0.0
            })
            .is_none());
    }

    #[test]
    fn rp2_descriptor() {
        let d = seifert_over_rp2(1).unwrap();
        assert!(d.genuine_singular_fibers().is_empty());
        assert_eq!(d.base_name(), "RP2");
        let d = seifert_over_rp2(3).unwrap();
        assert_eq!(d.singular_fibers(), &[3]);
        assert_eq!(d.fiber_class_on_t(), TorusClass::nuk(0, 1));
        assert_eq!(d.base_name(), "RP2(3)");
        let filling = DehnFilling::new(3).unwrap();
        assert_eq!(
            filling.to_filling(&d.fiber_class_on_t()).unwrap(),
            TorusClass::new(1, -3, BasisTag::FillingTorus)
        );
        assert!(matches!(seifert_over_rp2(0), Err(Error::Domain(_))));
    }

    #[test]
    fn s2_descriptor() {
        for n in 1..6 {
            let d = seifert_over_s2(n).unwrap();
            assert_eq!(d.singular_fibers(), &[2, 2]);
            assert_eq!(d.base_name(), "S2(2,2)");
            let filling = DehnFilling::new(n).unwrap();
            assert_eq!(
                filling.to_filling(&d.fiber_class_on_t()).unwrap(),
                TorusClass::longitude(BasisTag::FillingTorus)
            );
            assert_eq!(d.exceptional_points(), &[(0.0, 0.0), (PI, 0.0)]);
        }
    }

    #[test]
    fn descriptor_invariants_enforced() {
        let c = TorusClass::nuk(1, 0);
        assert!(SeifertDescriptor::new(BaseOrbifold::S2, vec![2, 3], c, vec![]).is_err());
        assert!(SeifertDescriptor::new(BaseOrbifold::RP2, vec![2, 2], c, vec![]).is_err());
    }

    #[test]
    fn filling_basis_round_trip() {
        let f = DehnFilling::new(4).unwrap();
        for (x, y) in [(1, 0), (0, 1), (4, 1), (-3, 7)] {
            let c = TorusClass::nuk(x, y);
            assert_eq!(f.from_filling(&f.to_filling(&c).unwrap()).unwrap(), c);
        }
        assert_eq!(
            f.to_filling(&f.meridian_on_t()).unwrap(),
            TorusClass::meridian(BasisTag::FillingTorus)
        );
    }

    #[test]
    fn fiber_lengths() {
        let m = NuKModel;
        assert_eq!(fiber_through(&m, 0.0, 0.0, 8).unwrap().length, 1);
        assert_eq!(fiber_through(&m, PI, 0.0, 8).unwrap().length, 1);
        let f = fiber_through(&m, PI / 3.0, 0.5, 8).unwrap();
        assert_eq!(f.length, 2);
        let last = f.points.last().unwrap();
        assert!(angles_close(last.theta, -PI / 3.0) && (last.r + 0.5).abs() < 1e-15);
        // the far end of the second segment closes back onto the start
        assert!(m.same_point(&m.identify(*last).unwrap(), &f.points[0]));
        assert!(fiber_through(&m, 0.0, 1.5, 8).is_err());
    }

    #[test]
    fn fiber_grid() {
        let m = NuKModel;
        for i in 0..100 {
            let theta = i as f64 * TAU / 100.0;
            for j in 0..21 {
                let r = -1.0 + j as f64 / 10.0;
                let expected = if (i == 0 || i == 50) && j == 10 { 1 } else { 2 };
                assert_eq!(
                    fiber_through(&m, theta, r, 2).unwrap().length,
                    expected,
                    "{i} {j}"
                );
            }
        }
    }

    #[test]
    fn identification_examples() {
        let id = heegaard_identification_from_fibration(1).unwrap();
        assert_eq!(
            id.meridian_image,
            TorusClass::new(-3, -4, BasisTag::HeegaardSide2)
        );
        assert_eq!(id.lens, LensSpace::new(4, 1).unwrap());
        let id = heegaard_identification_from_fibration(2).unwrap();
        assert_eq!(
            id.meridian_image,
            TorusClass::new(-5, -8, BasisTag::HeegaardSide2)
        );
        assert_eq!(id.lens, LensSpace::new(8, 3).unwrap());
        assert!(are_homeomorphic(&id.lens, &LensSpace::new(8, 5).unwrap()));
        for n in 1..=50 {
            let id = heegaard_identification_from_fibration(n).unwrap();
            let v = klein_bottle_embeds(&id.lens);
            assert_eq!((v.embeds, v.n, v.sign), (true, Some(n), Some(Sign::Minus)));
        }
    }
}

//! Lens-space arithmetic.
//!
//! `L(p,q)` is the quotient of the unit sphere `S³ ⊂ C²` by the cyclic group
//! generated by `σ(z₁,z₂) = (e^{2πi/p} z₁, e^{2πiq/p} z₂)`. The unit sphere is
//! used throughout; a model of radius `√2` only rescales points.
//!
//! Homeomorphism here is unoriented: `L(p,q) ≅ L(p,q')` iff
//! `q' ≡ ±q^{±1} (mod p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::C2;

/// Tolerance for `|z|² = 1` when a point is handed to the deck action.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "Plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "Minus" | "m" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("unknown sign {other:?}"))),
        }
    }
}

/// A lens space `L(p,q)` with `p ≥ 1` and `gcd(p,q) = 1`.
///
/// Values built with [`LensSpace::new`] keep the raw `q`; [`normalize`]
/// reduces it into `1 ≤ q ≤ p-1` (and `S³` to `L(1,0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 {
            return Err(Error::Domain(format!(
                "lens space order p = {p} must be positive"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotLensSpace { p, q });
        }
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn canonical(&self) -> LensSpace {
        if self.p == 1 {
            return LensSpace { p: 1, q: 0 };
        }
        LensSpace {
            p: self.p,
            q: self.q.rem_euclid(self.p),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// `L(4n, 2n+1)` for `Plus`, `L(4n, 2n-1)` for `Minus`.
    pub fn klein_family(n: i64, sign: Sign) -> Result<LensSpace> {
        if n < 1 {
            return Err(Error::Domain(format!("n = {n} must be at least 1")));
        }
        LensSpace::new(4 * n, 2 * n + sign.as_i64())
    }

    /// Applies `σ^k`, computing the rotation angles directly rather than by
    /// iteration.
    pub fn deck_power(&self, point: &C2, k: i64) -> C2 {
        let p = self.p as f64;
        let k1 = k.rem_euclid(self.p) as f64;
        let k2 = (k as i128 * self.q as i128).rem_euclid(self.p as i128) as f64;
        let tau = std::f64::consts::TAU;
        [
            point[0] * Complex64::from_polar(1.0, tau * k1 / p),
            point[1] * Complex64::from_polar(1.0, tau * k2 / p),
        ]
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("L(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected L(p,q), got {s:?}")))?;
        let (p, q) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected L(p,q), got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        LensSpace::new(parse(p)?, parse(q)?)
    }
}

/// Reduces `(p,q)` to the canonical representative of `L(p,q)`.
pub fn normalize(p: i64, q: i64) -> Result<LensSpace> {
    LensSpace::new(p, q).map(|l| l.canonical())
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Unoriented homeomorphism: equal orders and `q_b ≡ ±q_a^{±1} (mod p)`.
pub fn are_homeomorphic(a: &LensSpace, b: &LensSpace) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p;
    if p <= 2 {
        return true;
    }
    let qa = a.q.rem_euclid(p);
    let qb = b.q.rem_euclid(p);
    let inv = mod_inverse(qa, p).expect("coprime by construction");
    [qa, (p - qa) % p, inv, (p - inv) % p].contains(&qb)
}

/// Deck transformation `σ` of `L(p,q)` on a point of the unit sphere.
pub fn deck_generator(space: &LensSpace, point: &C2) -> Result<C2> {
    check_on_sphere(point, SPHERE_TOLERANCE)?;
    Ok(space.deck_power(point, 1))
}

pub(crate) fn check_on_sphere(point: &C2, tolerance: f64) -> Result<()> {
    let norm_sq = point[0].norm_sqr() + point[1].norm_sqr();
    if (norm_sq - 1.0).abs() > tolerance || !norm_sq.is_finite() {
        return Err(Error::Domain(format!(
            "point is off the unit sphere: |z|^2 = {norm_sq:.17e}"
        )));
    }
    Ok(())
}

/// Which torus, and which basis on it, a homology class is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisTag {
    /// `(μ₁, λ₁)` on the boundary of the first Heegaard solid torus.
    HeegaardSide1,
    /// `(μ₂, λ₂)` on the boundary of the second Heegaard solid torus.
    HeegaardSide2,
    /// `(a, b)` on `∂νK`: `a` the interval-direction circle, `b` the fibre
    /// circle. The `mu` slot holds the `a` coefficient.
    NuKBoundary,
    /// `(μ, λ)` of the solid torus used to Dehn fill `νK`.
    FillingTorus,
}

impl BasisTag {
    fn tag(self) -> &'static str {
        match self {
            BasisTag::HeegaardSide1 => "side1",
            BasisTag::HeegaardSide2 => "side2",
            BasisTag::NuKBoundary => "nuk",
            BasisTag::FillingTorus => "filling",
        }
    }

    fn symbols(self) -> (&'static str, &'static str) {
        match self {
            BasisTag::NuKBoundary => ("a", "b"),
            _ => ("mu", "lambda"),
        }
    }
}

impl FromStr for BasisTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            BasisTag::HeegaardSide1,
            BasisTag::HeegaardSide2,
            BasisTag::NuKBoundary,
            BasisTag::FillingTorus,
        ]
        .into_iter()
        .find(|b| b.tag() == s.trim())
        .ok_or_else(|| Error::Parse(format!("unknown basis tag {s:?}")))
    }
}

/// A first-homology class `mu·μ + lambda·λ` on a 2-torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusClass {
    pub mu: i64,
    pub lambda: i64,
    pub basis: BasisTag,
}

impl TorusClass {
    pub fn new(mu: i64, lambda: i64, basis: BasisTag) -> Self {
        TorusClass { mu, lambda, basis }
    }

    /// The class `n·a + l·b` on `∂νK`.
    pub fn nuk(n: i64, l: i64) -> Self {
        TorusClass::new(n, l, BasisTag::NuKBoundary)
    }

    pub fn zero(basis: BasisTag) -> Self {
        TorusClass::new(0, 0, basis)
    }

    pub fn meridian(basis: BasisTag) -> Self {
        TorusClass::new(1, 0, basis)
    }

    pub fn longitude(basis: BasisTag) -> Self {
        TorusClass::new(0, 1, basis)
    }

    /// Interval-circle coefficient of a class on `∂νK`.
    pub fn interval(&self) -> i64 {
        self.mu
    }

    /// Fibre-circle coefficient of a class on `∂νK`.
    pub fn fiber(&self) -> i64 {
        self.lambda
    }

    pub fn is_primitive(&self) -> bool {
        self.mu.gcd(&self.lambda) == 1
    }

    fn same_basis(&self, other: &TorusClass) {
        assert_eq!(
            self.basis, other.basis,
            "torus classes live in different bases"
        );
    }
}

impl Add for TorusClass {
    type Output = TorusClass;

    fn add(self, rhs: TorusClass) -> TorusClass {
        self.same_basis(&rhs);
        TorusClass::new(self.mu + rhs.mu, self.lambda + rhs.lambda, self.basis)
    }
}

impl Sub for TorusClass {
    type Output = TorusClass;

    fn sub(self, rhs: TorusClass) -> TorusClass {
        self + (-rhs)
    }
}

impl Neg for TorusClass {
    type Output = TorusClass;

    fn neg(self) -> TorusClass {
        TorusClass::new(-self.mu, -self.lambda, self.basis)
    }
}

impl Mul<TorusClass> for i64 {
    type Output = TorusClass;

    fn mul(self, rhs: TorusClass) -> TorusClass {
        TorusClass::new(self * rhs.mu, self * rhs.lambda, rhs.basis)
    }
}

impl fmt::Display for TorusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, l) = self.basis.symbols();
        let op = if self.lambda < 0 { '-' } else { '+' };
        write!(
            f,
            "{}*{m}{op}{}*{l}@{}",
            self.mu,
            self.lambda.unsigned_abs(),
            self.basis.tag()
        )
    }
}

impl FromStr for TorusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a*mu+b*lambda@basis, got {s:?}"));
        let (body, tag) = s.trim().rsplit_once('@').ok_or_else(bad)?;
        let basis: BasisTag = tag.parse()?;
        let (m, l) = basis.symbols();
        let (first, rest) = body.split_once(&format!("*{m}")).ok_or_else(bad)?;
        let second = rest.strip_suffix(&format!("*{l}")).ok_or_else(bad)?;
        let (neg, digits) = if let Some(d) = second.strip_prefix('+') {
            (false, d)
        } else if let Some(d) = second.strip_prefix('-') {
            (true, d)
        } else {
            return Err(bad());
        };
        let mu: i64 = first.parse().map_err(|_| bad())?;
        let lambda: i64 = digits.parse().map_err(|_| bad())?;
        Ok(TorusClass::new(
            mu,
            if neg { -lambda } else { lambda },
            basis,
        ))
    }
}

/// The gluing of a genus-1 Heegaard splitting of `L(p,q)`:
/// `μ₁ ↦ pλ₂ − qμ₂`, `λ₁ ↦ sλ₂ + rμ₂` with `pr + qs = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingMatrix {
    space: LensSpace,
    /// Row-major in `(μ₂, λ₂)` coordinates; column 0 is the image of `μ₁`,
    /// column 1 the image of `λ₁`.
    entries: [[i64; 2]; 2],
    r: i64,
    s: i64,
}

impl GluingMatrix {
    /// Builds the gluing from explicit Bézout witnesses.
    pub fn with_witnesses(space: LensSpace, r: i64, s: i64) -> Result<Self> {
        let (p, q) = (space.p, space.q);
        if p as i128 * r as i128 + q as i128 * s as i128 != 1 {
            return Err(Error::Internal(format!(
                "Bezout witnesses fail for {space}: {p}*{r} + {q}*{s} != 1"
            )));
        }
        Ok(GluingMatrix {
            space,
            entries: [[-q, r], [p, s]],
            r,
            s,
        })
    }

    pub fn space(&self) -> LensSpace {
        self.space
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn meridian_image(&self) -> TorusClass {
        TorusClass::new(
            self.entries[0][0],
            self.entries[1][0],
            BasisTag::HeegaardSide2,
        )
    }

    pub fn longitude_image(&self) -> TorusClass {
        TorusClass::new(
            self.entries[0][1],
            self.entries[1][1],
            BasisTag::HeegaardSide2,
        )
    }
}

/// Heegaard gluing of `space` with the deterministic witness choice
/// `r ∈ [0, |q|)`.
pub fn heegaard_gluing(space: &LensSpace) -> GluingMatrix {
    let (p, q) = (space.p, space.q);
    let (r, s) = if q == 0 {
        // only L(1,0)
        (1, 0)
    } else {
        let m = q.abs();
        let r = if m == 1 {
            0
        } else {
            mod_inverse(p, m).expect("gcd(p,q) = 1")
        };
        let s = (1 - p as i128 * r as i128) / q as i128;
        (r, s as i64)
    };
    GluingMatrix::with_witnesses(*space, r, s).expect("witnesses satisfy pr + qs = 1")
}

/// Transports a class on the first Heegaard torus to the second.
pub fn apply_gluing(g: &GluingMatrix, c: &TorusClass) -> Result<TorusClass> {
    if c.basis != BasisTag::HeegaardSide1 {
        return Err(Error::Usage(format!(
            "apply_gluing expects a class on side1, got {c}"
        )));
    }
    let [[a, b], [cc, d]] = g.entries;
    Ok(TorusClass::new(
        a * c.mu + b * c.lambda,
        cc * c.mu + d * c.lambda,
        BasisTag::HeegaardSide2,
    ))
}

/// Reads off the lens space whose first meridian is glued to `c`
/// (a class on side 2), up to orientation of the curve.
pub fn lens_from_meridian_image(c: &TorusClass) -> Result<LensSpace> {
    if c.basis != BasisTag::HeegaardSide2 {
        return Err(Error::Usage(format!("expected a class on side2, got {c}")));
    }
    // μ₁ ∼ pλ₂ − qμ₂; flip the curve so p > 0
    let (p, q) = if c.lambda < 0 {
        (-c.lambda, c.mu)
    } else {
        (c.lambda, -c.mu)
    };
    normalize(p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddabilityVerdict {
    pub embeds: bool,
    pub n: Option<i64>,
    /// `Plus` when `q ≡ 2n+1`, `Minus` when `q ≡ 2n−1 (mod 4n)`.
    pub sign: Option<Sign>,
}

/// Decides whether the Klein bottle embeds in `space`: exactly for
/// `L(4n, 2n±1)`.
pub fn klein_bottle_embeds(space: &LensSpace) -> EmbeddabilityVerdict {
    let no = EmbeddabilityVerdict {
        embeds: false,
        n: None,
        sign: None,
    };
    let p = space.p;
    if p % 4 != 0 {
        return no;
    }
    let n = p / 4;
    let q = space.q.rem_euclid(p);
    let sign = if q == (2 * n + 1) % p {
        Sign::Plus
    } else if q == 2 * n - 1 {
        Sign::Minus
    } else {
        return no;
    };
    EmbeddabilityVerdict {
        embeds: true,
        n: Some(n),
        sign: Some(sign),
    }
}

/// `RP²` embeds only in `L(2,1)`.
pub fn projective_plane_embeds(space: &LensSpace) -> bool {
    space.canonical() == LensSpace { p: 2, q: 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(4, 7).unwrap(), l(4, 3));
        assert_eq!(normalize(4, -1).unwrap(), l(4, 3));
        assert_eq!(normalize(5, 2).unwrap(), l(5, 2));
        assert_eq!(normalize(1, 17).unwrap(), l(1, 0));
        assert_eq!(normalize(1, 0).unwrap(), l(1, 0));
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(normalize(6, 4), Err(Error::NotLensSpace { p: 6, q: 4 }));
        assert!(matches!(normalize(0, 1), Err(Error::Domain(_))));
        assert!(matches!(normalize(-3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(are_homeomorphic(&l(8, 3), &l(8, 5)));
        assert!(are_homeomorphic(&l(4, 1), &l(4, 3)));
        assert!(!are_homeomorphic(&l(5, 1), &l(5, 2)));
        assert!(!are_homeomorphic(&l(5, 1), &l(7, 1)));
        // 2·3 = 6 ≡ -1 mod 7, so 3⁻¹ = -2 and L(7,2) ≅ L(7,3)
        assert!(are_homeomorphic(&l(7, 2), &l(7, 3)));
    }

    #[test]
    fn deck_generator_examples() {
        let z = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let w = deck_generator(&l(4, 1), &z).unwrap();
        assert!((w[0] - Complex64::i()).norm() < 1e-15);
        assert!(w[1].norm() < 1e-15);

        let z = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let w = deck_generator(&l(2, 1), &z).unwrap();
        assert!((w[1] + 1.0).norm() < 1e-15);

        let off = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(
            deck_generator(&l(3, 1), &off),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn heegaard_examples() {
        let g = heegaard_gluing(&l(5, 2));
        assert_eq!((g.r(), g.s()), (1, -2));
        assert_eq!(
            g.meridian_image(),
            TorusClass::new(-2, 5, BasisTag::HeegaardSide2)
        );
        assert_eq!(
            g.longitude_image(),
            TorusClass::new(1, -2, BasisTag::HeegaardSide2)
        );
        assert_eq!(g.determinant(), -1);

        let g = heegaard_gluing(&l(4, 3));
        assert_eq!(
            g.meridian_image(),
            TorusClass::new(-3, 4, BasisTag::HeegaardSide2)
        );

        let g = heegaard_gluing(&l(1, 0));
        assert_eq!((g.r(), g.s(), g.determinant()), (1, 0, -1));
        let g = heegaard_gluing(&l(7, 1));
        assert_eq!((g.r(), g.s()), (0, 1));
    }

    #[test]
    fn bad_witnesses_rejected() {
        assert!(matches!(
            GluingMatrix::with_witnesses(l(5, 2), 1, 1),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn apply_gluing_examples() {
        let n = 3;
        let g = GluingMatrix::with_witnesses(l(4 * n, 2 * n + 1), n, -(2 * n - 1)).unwrap();
        let c = 2 * TorusClass::longitude(BasisTag::HeegaardSide1)
            + TorusClass::meridian(BasisTag::HeegaardSide1);
        assert_eq!(
            apply_gluing(&g, &c).unwrap(),
            TorusClass::new(-1, 2, BasisTag::HeegaardSide2)
        );
        assert_eq!(
            apply_gluing(&g, &TorusClass::zero(BasisTag::HeegaardSide1)).unwrap(),
            TorusClass::zero(BasisTag::HeegaardSide2)
        );

        let g = GluingMatrix::with_witnesses(l(4, 3), 1, -1).unwrap();
        let m = apply_gluing(&g, &TorusClass::meridian(BasisTag::HeegaardSide1)).unwrap();
        assert_eq!(m, TorusClass::new(-3, 4, BasisTag::HeegaardSide2));

        assert!(matches!(
            apply_gluing(&g, &TorusClass::nuk(1, 1)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn klein_examples() {
        let v = klein_bottle_embeds(&l(4, 1));
        assert_eq!(
            v,
            EmbeddabilityVerdict {
                embeds: true,
                n: Some(1),
                sign: Some(Sign::Minus)
            }
        );
        let v = klein_bottle_embeds(&l(8, 3));
        assert_eq!(
            v,
            EmbeddabilityVerdict {
                embeds: true,
                n: Some(2),
                sign: Some(Sign::Minus)
            }
        );
        assert_eq!(klein_bottle_embeds(&l(8, 5)).sign, Some(Sign::Plus));
        assert!(!klein_bottle_embeds(&l(7, 3)).embeds);
        assert!(!klein_bottle_embeds(&l(8, 1)).embeds);
        assert!(!klein_bottle_embeds(&l(1, 0)).embeds);
        // raw q outside the canonical range
        assert_eq!(klein_bottle_embeds(&l(4, -1)).sign, Some(Sign::Plus));
    }

    #[test]
    fn projective_plane_examples() {
        assert!(projective_plane_embeds(&l(2, 1)));
        assert!(projective_plane_embeds(&l(2, -1)));
        assert!(!projective_plane_embeds(&l(4, 1)));
        assert!(!projective_plane_embeds(&l(1, 0)));
    }

    #[test]
    fn lens_from_meridian() {
        let c = TorusClass::new(-3, -4, BasisTag::HeegaardSide2);
        assert_eq!(lens_from_meridian_image(&c).unwrap(), l(4, 1));
        let c = TorusClass::new(-3, 4, BasisTag::HeegaardSide2);
        assert_eq!(lens_from_meridian_image(&c).unwrap(), l(4, 3));
    }

    #[test]
    fn text_forms() {
        assert_eq!(l(8, 3).to_string(), "L(8,3)");
        assert_eq!("L(8, 3)".parse::<LensSpace>().unwrap(), l(8, 3));
        assert!("L(8,4)".parse::<LensSpace>().is_err());
        let c = TorusClass::new(-3, 4, BasisTag::HeegaardSide2);
        assert_eq!(c.to_string(), "-3*mu+4*lambda@side2");
        assert_eq!(TorusClass::nuk(2, -1).to_string(), "2*a-1*b@nuk");
        assert!("3*mu+4*lambda".parse::<TorusClass>().is_err());
    }

    fn sphere_point() -> impl Strategy<Value = C2> {
        prop::array::uniform4(-1.0f64..1.0)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                [
                    Complex64::new(v[0] / n, v[1] / n),
                    Complex64::new(v[2] / n, v[3] / n),
                ]
            })
    }

    proptest! {
        #[test]
        fn torus_class_text_round_trip(mu in -1000i64..1000, lambda in -1000i64..1000, b in 0usize..4) {
            let basis = [BasisTag::HeegaardSide1, BasisTag::HeegaardSide2, BasisTag::NuKBoundary, BasisTag::FillingTorus][b];
            let c = TorusClass::new(mu, lambda, basis);
            prop_assert_eq!(c.to_string().parse::<TorusClass>().unwrap(), c);
        }

        #[test]
        fn deck_orbit_closes(p in 1i64..60, q in -60i64..60, z in sphere_point()) {
            prop_assume!(p.gcd(&q) == 1);
            let space = LensSpace::new(p, q).unwrap();
            let mut w = z;
            for _ in 0..p {
                w = deck_generator(&space, &w).unwrap();
                let norm = w[0].norm_sqr() + w[1].norm_sqr();
                prop_assert!((norm - 1.0).abs() < 1e-12);
            }
            prop_assert!((w[0] - z[0]).norm() < 1e-9 && (w[1] - z[1]).norm() < 1e-9);
        }

        #[test]
        fn gluing_is_additive(p in 1i64..200, q in 0i64..200, a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500) {
            prop_assume!(p.gcd(&q) == 1);
            let g = heegaard_gluing(&LensSpace::new(p, q).unwrap());
            let x = TorusClass::new(a, b, BasisTag::HeegaardSide1);
            let y = TorusClass::new(c, d, BasisTag::HeegaardSide1);
            let lhs = apply_gluing(&g, &(x + y)).unwrap();
            let rhs = apply_gluing(&g, &x).unwrap() + apply_gluing(&g, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

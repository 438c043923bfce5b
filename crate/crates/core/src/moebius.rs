//! Möbius transformations `z -> (az+b)/(cz+d)` on the Riemann sphere.

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact_arith::{
    contains_point, rat_int, sqrt_bounds, ConstructionError, GaussianRational, Membership,
    Rational, RationalDisk,
};
use crate::hp::{self, HpComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoebiusError {
    #[error("map is degenerate (ad - bc = 0)")]
    DegenerateMap,
    #[error("point is the pole or infinity")]
    PoleError,
    #[error("pole lies in the closed disk; image is not a disk")]
    NotADisk,
    #[error("image disk construction failed: {0}")]
    Construction(#[from] ConstructionError),
    #[error("cannot parse Möbius map: {0}")]
    Parse(String),
}

/// Scalars a Möbius map can be built over.
pub trait Scalar: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o).ok()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if *o == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self / o)
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum SpherePoint<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> SpherePoint<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

impl fmt::Display for SpherePoint<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Moebius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type ExactMoebius = Moebius<GaussianRational>;

impl<T: Scalar> Moebius<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self, MoebiusError> {
        let m = Moebius { a, b, c, d };
        if m.det().is_zero() {
            return Err(MoebiusError::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Moebius {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> T {
        self.a.add(&self.d)
    }

    /// `tr(A)^2 / det(A)`, independent of the matrix representative.
    pub fn tr_squared(&self) -> T {
        let t = self.trace();
        t.mul(&t).div(&self.det()).expect("invertible map")
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Matrix product `self * other`, i.e. the map `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        Moebius {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// Adjugate matrix; represents the inverse map.
    pub fn inverse(&self) -> Self {
        let zero = T::zero();
        Moebius {
            a: self.d.clone(),
            b: zero.sub(&self.b),
            c: zero.sub(&self.c),
            d: self.a.clone(),
        }
    }

    pub fn apply(&self, z: &SpherePoint<T>) -> SpherePoint<T> {
        match z {
            SpherePoint::Infinity => match self.a.div(&self.c) {
                Some(v) => SpherePoint::Finite(v),
                None => SpherePoint::Infinity,
            },
            SpherePoint::Finite(z) => {
                let num = self.a.mul(z).add(&self.b);
                let den = self.c.mul(z).add(&self.d);
                match num.div(&den) {
                    Some(v) => SpherePoint::Finite(v),
                    None => SpherePoint::Infinity,
                }
            }
        }
    }

    /// Image of a finite point, `None` at the pole.
    pub fn eval(&self, z: &T) -> Option<T> {
        let num = self.a.mul(z).add(&self.b);
        let den = self.c.mul(z).add(&self.d);
        num.div(&den)
    }

    /// `(ad-bc)/(cz+d)^2`.
    pub fn derivative_at(&self, z: &SpherePoint<T>) -> Result<T, MoebiusError> {
        let z = z.finite().ok_or(MoebiusError::PoleError)?;
        let den = self.c.mul(z).add(&self.d);
        self.det()
            .div(&den.mul(&den))
            .ok_or(MoebiusError::PoleError)
    }

    /// The point sent to infinity, if finite.
    pub fn pole(&self) -> SpherePoint<T> {
        match T::zero().sub(&self.d).div(&self.c) {
            Some(p) => SpherePoint::Finite(p),
            None => SpherePoint::Infinity,
        }
    }

    /// `self^n` by repeated squaring.
    pub fn power(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            n >>= 1;
        }
        acc
    }
}

/// `z -> λ/(1+z)`.
pub fn f_lambda<T: Scalar>(lambda: &T) -> Result<Moebius<T>, MoebiusError> {
    Moebius::new(T::zero(), lambda.clone(), T::one(), T::one())
}

/// `f_μ ∘ f_χ`, matrix `((μ, μ), (1, 1+χ))`.
pub fn g_map<T: Scalar>(mu: &T, chi: &T) -> Result<Moebius<T>, MoebiusError> {
    Ok(f_lambda(mu)?.compose(&f_lambda(chi)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MoebiusKind {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
    /// Floating input too close to a class boundary to decide.
    Unreliable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoebiusClass {
    pub kind: MoebiusKind,
}

/// Exact classification by the value of `tr^2`.
pub fn classify(m: &ExactMoebius) -> MoebiusClass {
    if m.is_identity() {
        return MoebiusClass {
            kind: MoebiusKind::Identity,
        };
    }
    let t = m.tr_squared();
    let four = rat_int(4);
    let kind = if !t.im.is_zero() {
        MoebiusKind::Loxodromic
    } else if t.re == four {
        MoebiusKind::Parabolic
    } else if !t.re.is_negative() && t.re < four {
        MoebiusKind::Elliptic
    } else {
        MoebiusKind::Loxodromic
    };
    MoebiusClass { kind }
}

/// Classification of a floating map; values within `tol` of a class boundary are `Unreliable`.
pub fn classify_approx(m: &Moebius<Complex64>, tol: f64) -> MoebiusClass {
    let scale = m.a.norm().max(m.b.norm()).max(m.c.norm()).max(m.d.norm());
    let near_identity =
        m.b.norm() <= tol * scale && m.c.norm() <= tol * scale && (m.a - m.d).norm() <= tol * scale;
    if near_identity {
        return MoebiusClass {
            kind: MoebiusKind::Unreliable,
        };
    }
    let t = m.tr_squared();
    let kind = if t.im.abs() > tol {
        MoebiusKind::Loxodromic
    } else if (t.re - 4.0).abs() <= tol || t.re.abs() <= tol {
        MoebiusKind::Unreliable
    } else if t.re > 0.0 && t.re < 4.0 {
        MoebiusKind::Elliptic
    } else {
        MoebiusKind::Loxodromic
    };
    MoebiusClass { kind }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FixedTag {
    Attracting,
    Repelling,
    Neutral,
}

/// A fixed point, exact when the discriminant is a square in the field.
#[derive(Clone, Debug)]
pub enum FixedPoint {
    Exact(SpherePoint<GaussianRational>),
    Approx {
        value: HpComplex,
        precision_bits: usize,
    },
}

impl FixedPoint {
    pub fn approx_c64(&self) -> Option<Complex64> {
        match self {
            FixedPoint::Exact(SpherePoint::Finite(z)) => Some(z.to_complex64()),
            FixedPoint::Exact(SpherePoint::Infinity) => None,
            FixedPoint::Approx { value, .. } => Some(value.to_c64()),
        }
    }

    pub fn hp(&self, p: usize) -> Option<HpComplex> {
        match self {
            FixedPoint::Exact(SpherePoint::Finite(z)) => Some(HpComplex::from_gq(z, p)),
            FixedPoint::Exact(SpherePoint::Infinity) => None,
            FixedPoint::Approx { value, .. } => Some(value.clone()),
        }
    }
}

/// Exact square root in `Q[i]` when one exists.
pub fn exact_sqrt(w: &GaussianRational) -> Option<GaussianRational> {
    fn rat_sqrt(q: &Rational) -> Option<Rational> {
        if q.is_negative() {
            return None;
        }
        let n = q.numer().sqrt();
        let d = q.denom().sqrt();
        if &n * &n == *q.numer() && &d * &d == *q.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
    if w.is_zero() {
        return Some(GaussianRational::zero());
    }
    let m = rat_sqrt(&w.norm_sqr())?;
    let two = rat_int(2);
    let u = rat_sqrt(&((&m + &w.re) / &two))?;
    if u.is_zero() {
        let v = rat_sqrt(&((&m - &w.re) / &two))?;
        return Some(GaussianRational::new(u, v));
    }
    let v = &w.im / (&u * &two);
    let r = GaussianRational::new(u, v);
    if &r * &r == *w {
        Some(r)
    } else {
        None
    }
}

fn tag_exact(m: &ExactMoebius, z: &SpherePoint<GaussianRational>) -> FixedTag {
    // |det|^2 vs |cz+d|^4 for finite z; multiplier d/a at a fixed infinity.
    let (num, den) = match z {
        SpherePoint::Finite(z) => {
            let q = &(&m.c * z) + &m.d;
            let q2 = q.norm_sqr();
            (m.det().norm_sqr(), &q2 * &q2)
        }
        SpherePoint::Infinity => (m.d.norm_sqr(), m.a.norm_sqr()),
    };
    match num.cmp(&den) {
        std::cmp::Ordering::Less => FixedTag::Attracting,
        std::cmp::Ordering::Greater => FixedTag::Repelling,
        std::cmp::Ordering::Equal => FixedTag::Neutral,
    }
}

fn tag_approx(m: &ExactMoebius, z: &HpComplex) -> FixedTag {
    let p = z.prec;
    let q = HpComplex::from_gq(&m.c, p)
        .mul(z)
        .add(&HpComplex::from_gq(&m.d, p));
    let q2 = q.norm_sqr();
    let q4 = q2.mul(&q2, p, astro_float::RoundingMode::ToEven);
    let det = HpComplex::from_gq(&m.det(), p).norm_sqr();
    let diff = hp::to_rational(&det) - hp::to_rational(&q4);
    let scale = hp::to_rational(&det).abs();
    let tol = &scale / Rational::from_integer(num_bigint::BigInt::from(1u8) << (p - 32));
    if diff.abs() <= tol {
        FixedTag::Neutral
    } else if diff.is_negative() {
        FixedTag::Attracting
    } else {
        FixedTag::Repelling
    }
}

/// Fixed points of a non-identity exact map, tagged by `|m'|` against 1.
///
/// Falls back to `prec`-bit floats when the discriminant has no square root in `Q[i]`.
pub fn fixed_points(m: &ExactMoebius, prec: usize) -> [(FixedPoint, FixedTag); 2] {
    // c z^2 + (d - a) z - b = 0
    let dm = &m.d - &m.a;
    if m.c.is_zero() {
        let inf = SpherePoint::Infinity;
        if dm.is_zero() {
            return [
                (FixedPoint::Exact(inf.clone()), FixedTag::Neutral),
                (FixedPoint::Exact(inf), FixedTag::Neutral),
            ];
        }
        let z = SpherePoint::Finite(&m.b / &(&m.a - &m.d));
        let tz = tag_exact(m, &z);
        let ti = tag_exact(m, &inf);
        return [(FixedPoint::Exact(z), tz), (FixedPoint::Exact(inf), ti)];
    }
    let disc = &(&dm * &dm) + &(&(&m.b * &m.c) * &GaussianRational::from_int(4));
    let two_c = &m.c * &GaussianRational::from_int(2);
    if disc.is_zero() {
        let z = SpherePoint::Finite(&(-&dm) / &two_c);
        return [
            (FixedPoint::Exact(z.clone()), FixedTag::Neutral),
            (FixedPoint::Exact(z), FixedTag::Neutral),
        ];
    }
    if let Some(s) = exact_sqrt(&disc) {
        let z1 = SpherePoint::Finite(&(&(-&dm) + &s) / &two_c);
        let z2 = SpherePoint::Finite(&(&(-&dm) - &s) / &two_c);
        let t1 = tag_exact(m, &z1);
        let t2 = tag_exact(m, &z2);
        return [(FixedPoint::Exact(z1), t1), (FixedPoint::Exact(z2), t2)];
    }
    let p = prec.max(128);
    let s = HpComplex::from_gq(&disc, p + 64).sqrt();
    let mdm = HpComplex::from_gq(&(-&dm), p + 64);
    let tc = HpComplex::from_gq(&two_c, p + 64);
    let mk = |v: HpComplex| HpComplex { prec: p, ..v };
    let z1 = mk(mdm.add(&s).div(&tc));
    let z2 = mk(mdm.sub(&s).div(&tc));
    let t1 = tag_approx(m, &z1);
    let t2 = tag_approx(m, &z2);
    [
        (
            FixedPoint::Approx {
                value: z1,
                precision_bits: p,
            },
            t1,
        ),
        (
            FixedPoint::Approx {
                value: z2,
                precision_bits: p,
            },
            t2,
        ),
    ]
}

/// The attracting fixed point of a loxodromic map, if any.
pub fn attracting_fixed_point(m: &ExactMoebius, prec: usize) -> Option<FixedPoint> {
    fixed_points(m, prec)
        .into_iter()
        .find(|(_, t)| *t == FixedTag::Attracting)
        .map(|(p, _)| p)
}

pub fn repelling_fixed_point(m: &ExactMoebius, prec: usize) -> Option<FixedPoint> {
    fixed_points(m, prec)
        .into_iter()
        .find(|(_, t)| *t == FixedTag::Repelling)
        .map(|(p, _)| p)
}

/// Image of an open disk whose closure avoids the pole.
pub fn disk_image(m: &ExactMoebius, d: &RationalDisk) -> Result<RationalDisk, MoebiusError> {
    if let SpherePoint::Finite(p) = m.pole() {
        if contains_point(d, &p) != Membership::Outside {
            return Err(MoebiusError::NotADisk);
        }
    }
    let [p1, p2, p3] = d.points();
    let img = |p: &GaussianRational| m.eval(p).ok_or(MoebiusError::NotADisk);
    Ok(RationalDisk::new(img(p1)?, img(p2)?, img(p3)?)?)
}

/// Rational interval `[lo, hi]` containing `|m'(z)|` for all `z` in the closed disk.
///
/// Requires the pole outside the closed disk.
pub fn derivative_modulus_bounds(
    m: &ExactMoebius,
    d: &RationalDisk,
    bits: u32,
) -> Result<(Rational, Rational), MoebiusError> {
    // |m'| = |det| / |cz+d|^2 and |cz+d| ranges over [|c|(dist - r), |c|(dist + r)].
    let det2 = m.det().norm_sqr();
    let (det_lo, det_hi) = sqrt_bounds(&det2, bits);
    let (_, r_hi) = sqrt_bounds(d.radius_sq(), bits);
    let (lo_q, hi_q) = if m.c.is_zero() {
        sqrt_bounds(&m.d.norm_sqr(), bits)
    } else {
        let pole = match m.pole() {
            SpherePoint::Finite(p) => p,
            SpherePoint::Infinity => unreachable!(),
        };
        let (c_lo, c_hi) = sqrt_bounds(&m.c.norm_sqr(), bits);
        let (dist_lo, dist_hi) = sqrt_bounds(&(d.center() - &pole).norm_sqr(), bits);
        let near = &dist_lo - &r_hi;
        if !near.is_positive() {
            return Err(MoebiusError::NotADisk);
        }
        (&c_lo * &near, &c_hi * (&dist_hi + &r_hi))
    };
    Ok((&det_lo / (&hi_q * &hi_q), &det_hi / (&lo_q * &lo_q)))
}

impl fmt::Display for ExactMoebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

impl std::str::FromStr for ExactMoebius {
    type Err = MoebiusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(MoebiusError::Parse(s.to_string()));
        }
        let p = |t: &str| {
            t.parse::<GaussianRational>()
                .map_err(|_| MoebiusError::Parse(s.to_string()))
        };
        Moebius::new(p(parts[0])?, p(parts[1])?, p(parts[2])?, p(parts[3])?)
    }
}

impl ExactMoebius {
    pub fn to_c64(&self) -> Moebius<Complex64> {
        Moebius {
            a: self.a.to_complex64(),
            b: self.b.to_complex64(),
            c: self.c.to_complex64(),
            d: self.d.to_complex64(),
        }
    }

    pub fn to_hp(&self, p: usize) -> [HpComplex; 4] {
        [
            HpComplex::from_gq(&self.a, p),
            HpComplex::from_gq(&self.b, p),
            HpComplex::from_gq(&self.c, p),
            HpComplex::from_gq(&self.d, p),
        ]
    }
}

/// Evaluate a map given as multi-precision coefficients.
pub fn hp_eval(m: &[HpComplex; 4], z: &HpComplex) -> HpComplex {
    m[0].mul(z).add(&m[1]).div(&m[2].mul(z).add(&m[3]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn fin(s: &str) -> SpherePoint<GaussianRational> {
        SpherePoint::Finite(g(s))
    }

    #[test]
    fn f_lambda_values() {
        assert_eq!(f_lambda(&g("1")).unwrap().apply(&fin("0")), fin("1"));
        assert_eq!(
            f_lambda(&g("-1/4")).unwrap().apply(&fin("-1/2")),
            fin("-1/2")
        );
        assert_eq!(
            f_lambda(&g("2")).unwrap().apply(&SpherePoint::Infinity),
            fin("0")
        );
        assert_eq!(
            f_lambda(&g("2")).unwrap().apply(&fin("-1")),
            SpherePoint::Infinity
        );
        assert_eq!(f_lambda(&g("0")).unwrap_err(), MoebiusError::DegenerateMap);
        assert_eq!(f_lambda(&g("3")).unwrap().det(), g("-3"));
    }

    #[test]
    fn trace_squared() {
        let l = g("2/7-1/3i");
        assert_eq!(f_lambda(&l).unwrap().tr_squared(), -(&g("1") / &l));
        assert_eq!(f_lambda(&g("-1/4")).unwrap().tr_squared(), g("4"));
        let rot = Moebius::new(g("-1"), g("0"), g("0"), g("1")).unwrap();
        assert_eq!(rot.tr_squared(), g("0"));
    }

    #[test]
    fn classification() {
        let k = |s: &str| classify(&f_lambda(&g(s)).unwrap()).kind;
        assert_eq!(k("-1"), MoebiusKind::Elliptic);
        assert_eq!(k("-1/4"), MoebiusKind::Parabolic);
        assert_eq!(k("1"), MoebiusKind::Loxodromic);
        assert_eq!(k("-1/5"), MoebiusKind::Loxodromic);
        assert_eq!(classify(&Moebius::identity()).kind, MoebiusKind::Identity);
    }

    #[test]
    fn fixed_point_examples() {
        let [(p1, t1), (p2, t2)] = fixed_points(&f_lambda(&g("-1/4")).unwrap(), 128);
        assert!(matches!(p1, FixedPoint::Exact(ref z) if *z == fin("-1/2")));
        assert!(matches!(p2, FixedPoint::Exact(ref z) if *z == fin("-1/2")));
        assert_eq!((t1, t2), (FixedTag::Neutral, FixedTag::Neutral));

        let m = f_lambda(&g("2")).unwrap();
        let pts = fixed_points(&m, 128);
        for (p, t) in pts {
            match p {
                FixedPoint::Exact(z) if z == fin("1") => assert_eq!(t, FixedTag::Attracting),
                FixedPoint::Exact(z) if z == fin("-2") => assert_eq!(t, FixedTag::Repelling),
                other => panic!("unexpected {other:?}"),
            }
        }

        let m = f_lambda(&g("1")).unwrap();
        let a = attracting_fixed_point(&m, 256)
            .unwrap()
            .approx_c64()
            .unwrap();
        assert!((a.re - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn composition_matrix() {
        let mu = g("1/3+i");
        let chi = g("-2/5");
        let gm = g_map(&mu, &chi).unwrap();
        assert_eq!(
            gm,
            Moebius {
                a: mu.clone(),
                b: mu.clone(),
                c: g("1"),
                d: &g("1") + &chi
            }
        );
        let z = g("1/7-2i");
        let expect = &(&mu * &chi)
            / &{
                let s = &(&g("1") + &z) + &chi;
                &s * &s
            };
        assert_eq!(gm.derivative_at(&SpherePoint::Finite(z)).unwrap(), expect);
        let id = gm.compose(&gm.inverse());
        assert!(id.is_identity());
    }

    #[test]
    fn derivative_examples() {
        let l = g("3-i");
        assert_eq!(f_lambda(&l).unwrap().derivative_at(&fin("0")).unwrap(), -&l);
        let id: ExactMoebius = Moebius::identity();
        assert_eq!(id.derivative_at(&fin("5/2")).unwrap(), g("1"));
        assert_eq!(
            f_lambda(&l).unwrap().derivative_at(&fin("-1")).unwrap_err(),
            MoebiusError::PoleError
        );
    }

    #[test]
    fn disk_images() {
        let unit = RationalDisk::new(g("1"), g("i"), g("-1")).unwrap();
        let id: ExactMoebius = Moebius::identity();
        assert_eq!(disk_image(&id, &unit).unwrap(), unit);
        let dbl = Moebius::new(g("2"), g("0"), g("0"), g("1")).unwrap();
        let img = disk_image(&dbl, &unit).unwrap();
        assert_eq!(img.points(), &[g("2"), g("2i"), g("-2")]);
        let f1 = f_lambda(&g("1")).unwrap();
        let d = RationalDisk::from_center_radius(&g("3"), &rat_int(1)).unwrap();
        let img = disk_image(&f1, &d).unwrap();
        assert_eq!(contains_point(&img, &g("1/5")), Membership::OnBoundary);
        assert_eq!(contains_point(&img, &g("1/3")), Membership::OnBoundary);
        assert_eq!(contains_point(&img, &g("1/4")), Membership::Inside);
        assert_eq!(disk_image(&f1, &unit).unwrap_err(), MoebiusError::NotADisk);
    }

    #[test]
    fn serialization_round_trip() {
        let m = g_map(&g("1/3+i"), &g("-2/5")).unwrap();
        let s = m.to_string();
        assert_eq!(s, "1/3+1i 1/3+1i 1 3/5");
        assert_eq!(s.parse::<ExactMoebius>().unwrap(), m);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&g("-4")), Some(g("2i")));
        assert_eq!(exact_sqrt(&g("2i")), Some(g("1+i")));
        assert_eq!(exact_sqrt(&g("9/4")), Some(g("3/2")));
        assert_eq!(exact_sqrt(&g("2")), None);
        assert_eq!(exact_sqrt(&g("-3+4i")), Some(g("1+2i")));
    }
}

//! Gaussian rationals, bit sizes and exact disk geometry.
//!
//! Every predicate here is square-root free: radii only ever appear squared.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot parse Gaussian rational from {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("disk boundary points must be pairwise distinct")]
    Repeated,
    #[error("disk boundary points are collinear")]
    Collinear,
    #[error("disk radius must be positive")]
    NonPositiveRadius,
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rat_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(rat(n, d), Rational::zero())
    }

    pub fn from_real(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    /// `a/b + (c/d) i` from small integers.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(rat(a, b), rat(c, d))
    }

    /// Exact dyadic value of a finite `f64` pair.
    pub fn from_f64_exact(z: Complex64) -> Option<Self> {
        Some(Self::new(
            Rational::from_float(z.re)?,
            Rational::from_float(z.im)?,
        ))
    }

    /// Nearest point of the lattice `2^-bits (Z + iZ)`.
    pub fn round_dyadic(z: Complex64, bits: u32) -> Self {
        let s = (bits as f64).exp2();
        let den = BigInt::one() << bits;
        let re = BigInt::from((z.re * s).round() as i128);
        let im = BigInt::from((z.im * s).round() as i128);
        Self::new(Rational::new(re, den.clone()), Rational::new(im, den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn bit_size(&self) -> SizeMeasure {
        SizeMeasure {
            bits: rational_bits(&self.re) + rational_bits(&self.im),
        }
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators and denominators: shift both down first.
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let shift = (nb.max(db) - 1000).max(0) as usize;
        let n = r.numer() >> shift;
        let d = r.denom() >> shift;
        if d.is_zero() {
            return if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
    })
}

/// Bit length of `|n|` plus one for the sign.
pub fn int_bits(n: &BigInt) -> u64 {
    n.bits() + 1
}

pub fn rational_bits(r: &Rational) -> u64 {
    int_bits(r.numer()) + int_bits(r.denom())
}

/// Total bit count under the additive size convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SizeMeasure {
    pub bits: u64,
}

impl Add for SizeMeasure {
    type Output = SizeMeasure;
    fn add(self, o: SizeMeasure) -> SizeMeasure {
        SizeMeasure {
            bits: self.bits + o.bits,
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use `checked_div` when the divisor may vanish.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self.checked_div(o)
            .expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", fmt_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            fmt_rational(&self.re),
            sign,
            fmt_rational(&self.im.abs())
        )
    }
}

fn parse_unsigned_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = ArithError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::Parse(input.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        // Split into signed terms.
        let bytes = s.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let mut i = 0;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
            i = 1;
        }
        while i < bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                terms.push((neg, &s[start..i]));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &s[start..]));
        if terms.len() > 2 {
            return Err(err());
        }
        let mut re: Option<Rational> = None;
        let mut im: Option<Rational> = None;
        for (neg, t) in terms {
            let (body, imag) = match t.strip_suffix('i') {
                Some(b) => (b, true),
                None => (t, false),
            };
            let mut v = if imag && body.is_empty() {
                Rational::one()
            } else {
                parse_unsigned_rational(body).ok_or_else(err)?
            };
            if neg {
                v = -v;
            }
            let slot = if imag { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err());
            }
            *slot = Some(v);
        }
        Ok(GaussianRational::new(
            re.unwrap_or_else(Rational::zero),
            im.unwrap_or_else(Rational::zero),
        ))
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let z: GaussianRational = s.parse()?;
    if !z.im.is_zero() {
        return Err(ArithError::Parse(s.to_string()));
    }
    Ok(z.re)
}

pub fn format_rational(r: &Rational) -> String {
    fmt_rational(r)
}

/// Closest rational to `q` with denominator at most `max_den`.
pub fn limit_denominator(q: &Rational, max_den: &BigInt) -> Rational {
    if q.denom() <= max_den {
        return q.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (max_den - &q0).div_floor(&q1);
    let b1 = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let b2 = Rational::new(p1, q1);
    if (&b2 - q).abs() <= (&b1 - q).abs() {
        b2
    } else {
        b1
    }
}

/// Floor and ceiling rational bounds on `sqrt(q)` with denominator `2^bits`.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    let den = BigInt::one() << bits;
    // floor(sqrt(q) * 2^bits) = floor(sqrt(num * 4^bits / den)) computed as isqrt(floor(num*4^bits/den)).
    let scaled = (q.numer() << (2 * bits as usize)).div_floor(q.denom());
    let lo = scaled.sqrt();
    let exact = &lo * &lo == scaled && (q.numer() << (2 * bits as usize)).is_multiple_of(q.denom());
    let hi = if exact { lo.clone() } else { &lo + 1 };
    (Rational::new(lo, den.clone()), Rational::new(hi, den))
}

/// Where a point sits relative to an open disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    OnBoundary,
    Outside,
}

/// Open disk given by three distinct boundary points, with its center and squared radius cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDisk {
    points: [GaussianRational; 3],
    center: GaussianRational,
    radius_sq: Rational,
}

impl RationalDisk {
    pub fn new(
        p1: GaussianRational,
        p2: GaussianRational,
        p3: GaussianRational,
    ) -> Result<Self, ConstructionError> {
        if p1 == p2 || p2 == p3 || p1 == p3 {
            return Err(ConstructionError::Repeated);
        }
        let center = circumcenter_of(&p1, &p2, &p3)?;
        let radius_sq = (&p1 - &center).norm_sqr();
        Ok(RationalDisk {
            points: [p1, p2, p3],
            center,
            radius_sq,
        })
    }

    /// Disk with rational center and rational radius, through `c+r`, `c+ri`, `c-r`.
    pub fn from_center_radius(
        c: &GaussianRational,
        r: &Rational,
    ) -> Result<Self, ConstructionError> {
        if !r.is_positive() {
            return Err(ConstructionError::NonPositiveRadius);
        }
        let rr = GaussianRational::from_real(r.clone());
        let p1 = c + &rr;
        let p2 = c + &rr.mul_i();
        let p3 = c - &rr;
        Ok(RationalDisk {
            center: c.clone(),
            radius_sq: r * r,
            points: [p1, p2, p3],
        })
    }

    pub fn points(&self) -> &[GaussianRational; 3] {
        &self.points
    }

    pub fn center(&self) -> &GaussianRational {
        &self.center
    }

    pub fn radius_sq(&self) -> &Rational {
        &self.radius_sq
    }

    pub fn contains(&self, q: &GaussianRational) -> Membership {
        contains_point(self, q)
    }

    pub fn bit_size(&self) -> SizeMeasure {
        self.points[0].bit_size() + self.points[1].bit_size() + self.points[2].bit_size()
    }

    /// Approximate center and radius in double precision.
    pub fn approx(&self) -> (Complex64, f64) {
        (
            self.center.to_complex64(),
            rat_to_f64(&self.radius_sq).sqrt(),
        )
    }
}

fn circumcenter_of(
    p1: &GaussianRational,
    p2: &GaussianRational,
    p3: &GaussianRational,
) -> Result<GaussianRational, ConstructionError> {
    let (x1, y1) = (&p1.re, &p1.im);
    let (x2, y2) = (&p2.re, &p2.im);
    let (x3, y3) = (&p3.re, &p3.im);
    let den = (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2)) * rat_int(2);
    if den.is_zero() {
        return Err(ConstructionError::Collinear);
    }
    let s1 = x1 * x1 + y1 * y1;
    let s2 = x2 * x2 + y2 * y2;
    let s3 = x3 * x3 + y3 * y3;
    let x = (&s1 * (y2 - y3) + &s2 * (y3 - y1) + &s3 * (y1 - y2)) / &den;
    let y = (&s1 * (x3 - x2) + &s2 * (x1 - x3) + &s3 * (x2 - x1)) / &den;
    Ok(GaussianRational::new(x, y))
}

pub fn circumcenter(d: &RationalDisk) -> GaussianRational {
    d.center.clone()
}

pub fn squared_radius(d: &RationalDisk) -> Rational {
    d.radius_sq.clone()
}

pub fn contains_point(d: &RationalDisk, q: &GaussianRational) -> Membership {
    let dist = (q - &d.center).norm_sqr();
    match dist.cmp(&d.radius_sq) {
        std::cmp::Ordering::Less => Membership::Inside,
        std::cmp::Ordering::Equal => Membership::OnBoundary,
        std::cmp::Ordering::Greater => Membership::Outside,
    }
}

/// `|q - d.center| < r` or on the boundary.
pub fn in_closure(d: &RationalDisk, q: &GaussianRational) -> bool {
    contains_point(d, q) != Membership::Outside
}

/// Inner disk contained in outer disk, tangency allowed (both are open).
pub fn disk_in_disk(inner: &RationalDisk, outer: &RationalDisk) -> bool {
    let d2 = (&inner.center - &outer.center).norm_sqr();
    nested(&d2, &inner.radius_sq, &outer.radius_sq, false)
}

/// Closure of `inner` lies in the open disk `outer`.
pub fn closure_in_disk(inner: &RationalDisk, outer: &RationalDisk) -> bool {
    let d2 = (&inner.center - &outer.center).norm_sqr();
    nested(&d2, &inner.radius_sq, &outer.radius_sq, true)
}

/// `sqrt(d2) <= sqrt(ro2) - sqrt(ri2)` (or `<` when strict), without square roots.
pub fn nested(d2: &Rational, ri2: &Rational, ro2: &Rational, strict: bool) -> bool {
    if strict {
        if ro2 <= ri2 {
            return false;
        }
    } else if ro2 < ri2 {
        return false;
    }
    let t = ro2 + ri2 - d2;
    if t.is_negative() || (strict && t.is_zero()) {
        return false;
    }
    let lhs = &t * &t;
    let rhs = ro2 * ri2 * rat_int(4);
    if strict {
        lhs > rhs
    } else {
        lhs >= rhs
    }
}

/// The closed disk `closure(d)` and the closed disk of squared radius `r2` around `c` are disjoint.
pub fn closed_disks_disjoint(d: &RationalDisk, c: &GaussianRational, r2: &Rational) -> bool {
    // sqrt(d2) > sqrt(r2) + sqrt(R2)  <=>  d2 - r2 - R2 > 0 and (d2 - r2 - R2)^2 > 4 r2 R2
    let d2 = (&d.center - c).norm_sqr();
    let t = &d2 - r2 - &d.radius_sq;
    t.is_positive() && &t * &t > r2 * &d.radius_sq * rat_int(4)
}

/// Axis-aligned closed square cell `[x0, x0+s] x [y0, y0+s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub x0: Rational,
    pub y0: Rational,
    pub side: Rational,
}

impl Cell {
    pub fn corners(&self) -> [GaussianRational; 4] {
        let x1 = &self.x0 + &self.side;
        let y1 = &self.y0 + &self.side;
        [
            GaussianRational::new(self.x0.clone(), self.y0.clone()),
            GaussianRational::new(x1.clone(), self.y0.clone()),
            GaussianRational::new(x1, y1.clone()),
            GaussianRational::new(self.x0.clone(), y1),
        ]
    }

    pub fn center(&self) -> GaussianRational {
        let h = &self.side / rat_int(2);
        GaussianRational::new(&self.x0 + &h, &self.y0 + &h)
    }

    /// Circumscribed disk through three corners.
    pub fn circumdisk(&self) -> RationalDisk {
        let c = self.corners();
        RationalDisk::new(c[0].clone(), c[1].clone(), c[2].clone())
            .expect("square corners are never collinear")
    }

    pub fn split(&self) -> [Cell; 4] {
        let h = &self.side / rat_int(2);
        let xm = &self.x0 + &h;
        let ym = &self.y0 + &h;
        [
            Cell {
                x0: self.x0.clone(),
                y0: self.y0.clone(),
                side: h.clone(),
            },
            Cell {
                x0: xm.clone(),
                y0: self.y0.clone(),
                side: h.clone(),
            },
            Cell {
                x0: self.x0.clone(),
                y0: ym.clone(),
                side: h.clone(),
            },
            Cell {
                x0: xm,
                y0: ym,
                side: h,
            },
        ]
    }

    /// The closed cell misses the closed disk entirely.
    pub fn misses_closure(&self, d: &RationalDisk) -> bool {
        let c = d.center();
        let x1 = &self.x0 + &self.side;
        let y1 = &self.y0 + &self.side;
        let nx = clamp(&c.re, &self.x0, &x1);
        let ny = clamp(&c.im, &self.y0, &y1);
        let near = GaussianRational::new(nx, ny);
        contains_point(d, &near) == Membership::Outside
    }
}

fn clamp(v: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if v < lo {
        lo.clone()
    } else if v > hi {
        hi.clone()
    } else {
        v.clone()
    }
}

/// Sign of an exact rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn disk(a: &str, b: &str, c: &str) -> RationalDisk {
        RationalDisk::new(g(a), g(b), g(c)).unwrap()
    }

    #[test]
    fn circumcenters() {
        assert_eq!(circumcenter(&disk("1", "i", "-1")), g("0"));
        assert_eq!(circumcenter(&disk("2", "2i", "-2")), g("0"));
        assert_eq!(circumcenter(&disk("0", "2", "2i")), g("1+i"));
        assert_eq!(squared_radius(&disk("1", "i", "-1")), rat_int(1));
        assert_eq!(squared_radius(&disk("2", "2i", "-2")), rat_int(4));
        assert_eq!(squared_radius(&disk("0", "2", "2i")), rat_int(2));
    }

    #[test]
    fn degenerate_disks_rejected() {
        assert_eq!(
            RationalDisk::new(g("0"), g("1"), g("2")).unwrap_err(),
            ConstructionError::Collinear
        );
        assert_eq!(
            RationalDisk::new(g("0"), g("0"), g("i")).unwrap_err(),
            ConstructionError::Repeated
        );
    }

    #[test]
    fn membership() {
        let u = disk("1", "i", "-1");
        assert_eq!(contains_point(&u, &g("0")), Membership::Inside);
        assert_eq!(contains_point(&u, &g("1")), Membership::OnBoundary);
        assert_eq!(contains_point(&u, &g("2")), Membership::Outside);
    }

    #[test]
    fn nesting() {
        let u = disk("1", "i", "-1");
        let big = disk("2", "2i", "-2");
        let shifted = RationalDisk::from_center_radius(&g("1"), &rat_int(1)).unwrap();
        assert!(disk_in_disk(&u, &big));
        assert!(!disk_in_disk(&big, &u));
        assert!(disk_in_disk(&shifted, &big));
        assert!(!closure_in_disk(&shifted, &big));
        assert!(closure_in_disk(&u, &big));
        assert!(disk_in_disk(&u, &u));
    }

    #[test]
    fn bit_sizes() {
        assert_eq!(g("0").bit_size().bits, 1 + 2 + 1 + 2);
        assert_eq!(g("3/2").bit_size().bits, 3 + 3 + 1 + 2);
        assert_eq!(g("-4/27").bit_size().bits, 4 + 6 + 1 + 2);
    }

    #[test]
    fn text_format() {
        for s in ["0", "-4/27", "3i", "1/2+3/4i", "1/2-3/4i", "-7-1/3i", "-1i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("i"), g("1i"));
        assert_eq!(g(" 2/4 + 6/3 i "), g("1/2+2i"));
        assert_eq!(g("-i"), g("-1i"));
        for bad in ["", "1/0", "abc", "1+2+3i", "2i+3i", "1//2", "+"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let (lo, hi) = sqrt_bounds(&rat(2, 1), 20);
        assert!(&lo * &lo <= rat(2, 1) && &hi * &hi >= rat(2, 1));
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 3);
        assert_eq!(lo, rat(3, 2));
        assert_eq!(hi, rat(3, 2));
    }

    #[test]
    fn cell_geometry() {
        let cell = Cell {
            x0: rat_int(2),
            y0: rat_int(0),
            side: rat_int(1),
        };
        let u = disk("1", "i", "-1");
        assert!(cell.misses_closure(&u));
        let touching = Cell {
            x0: rat_int(1),
            y0: rat_int(0),
            side: rat_int(1),
        };
        assert!(!touching.misses_closure(&u));
        let cd = cell.circumdisk();
        assert_eq!(cd.center(), &g("5/2+1/2i"));
        assert_eq!(cd.radius_sq(), &rat(1, 2));
    }
}

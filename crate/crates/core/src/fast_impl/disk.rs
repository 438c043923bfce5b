//! Rational disk constructions: the sector disk inside `A ∩ B` and dyadic inner disks.

use astro_float::RoundingMode;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::FastImplError;
use crate::exact_arith::{
    contains_point, disk_in_disk, int_bits, rat, rat_int, sqrt_bounds, GaussianRational,
    Membership, Rational, RationalDisk,
};
use crate::hp::{self, HpComplex};

/// Disk centered at `c` with `boundary` on its boundary, through a quarter turn and the antipode.
fn disk_through(c: &GaussianRational, boundary: &GaussianRational) -> RationalDisk {
    let v = boundary - c;
    RationalDisk::new(boundary.clone(), c + &v.mul_i(), c - &v)
        .expect("distinct points on a circle")
}

/// Candidate disks in a sector of `x` assumed to lie in the closure of `y`.
fn sector_candidates(x: &RationalDisk, y: &RationalDisk) -> Vec<RationalDisk> {
    let c = x.center();
    let mut p = vec![x.points()[0].clone()];
    for k in 0..3 {
        let next = c + &(&p[k] - c).mul_i();
        p.push(next);
    }
    let inside: Vec<bool> = p
        .iter()
        .map(|q| contains_point(y, q) != Membership::Outside)
        .collect();
    let mut out = Vec::new();
    for k in 0..4 {
        if inside[k] && inside[(k + 1) % 4] {
            let r = (&p[k] + &p[(k + 1) % 4]).scale(&rat(1, 2));
            let cd = (c + &r.scale(&rat_int(3))).scale(&rat(1, 4));
            out.push(disk_through(&cd, &r));
        }
    }
    if out.is_empty() {
        let hits: Vec<usize> = (0..4).filter(|&k| inside[k]).collect();
        if hits.len() == 1 {
            let pk = &p[hits[0]];
            let cd = (c + &pk.scale(&rat_int(3))).scale(&rat(1, 4));
            out.push(disk_through(&cd, pk));
        }
    }
    out
}

/// A rational disk inside both `a` and `b` with at least `1/128` of the area of `a`.
///
/// Requires the center of `a` inside `b` and `b` not contained in `a`.
pub fn generate_disk(a: &RationalDisk, b: &RationalDisk) -> Result<RationalDisk, FastImplError> {
    if contains_point(b, a.center()) != Membership::Inside {
        return Err(FastImplError::GeometryPrecondition(
            "center of A is not inside B".into(),
        ));
    }
    if disk_in_disk(b, a) {
        return Err(FastImplError::GeometryPrecondition(
            "B is contained in A".into(),
        ));
    }
    let mut best: Option<RationalDisk> = None;
    for d in sector_candidates(a, b)
        .into_iter()
        .chain(sector_candidates(b, a))
    {
        if !(disk_in_disk(&d, a) && disk_in_disk(&d, b)) {
            continue;
        }
        if best
            .as_ref()
            .is_none_or(|cur| d.radius_sq() > cur.radius_sq())
        {
            best = Some(d);
        }
    }
    let d = best
        .ok_or_else(|| FastImplError::Internal("no sector disk fits inside both disks".into()))?;
    if d.radius_sq() * rat_int(128) < *a.radius_sq() {
        return Err(FastImplError::Internal(
            "sector disk is below 1/128 of the area".into(),
        ));
    }
    Ok(d)
}

/// `floor(log2 q)` up to one, for positive `q`.
pub(crate) fn log2_approx(q: &Rational) -> i64 {
    int_bits(q.numer()) as i64 - int_bits(q.denom()) as i64
}

fn round_to_grid(x: &Rational, bits: u32) -> Rational {
    let den = BigInt::one() << bits as usize;
    let v = x * Rational::from_integer(den.clone());
    Rational::new((v + rat(1, 2)).floor().to_integer(), den)
}

/// A disk with dyadic center and radius inside `d`, losing about `2^-slack_bits` of the radius.
pub fn inner_dyadic_disk(d: &RationalDisk, slack_bits: u32) -> RationalDisk {
    let scale = -(log2_approx(d.radius_sq()) / 2);
    let k = (slack_bits as i64 + scale.max(0) + 2) as u32;
    let c = d.center();
    let ch = GaussianRational::new(round_to_grid(&c.re, k), round_to_grid(&c.im, k));
    let (r_lo, _) = sqrt_bounds(d.radius_sq(), k + 4);
    let (_, off_hi) = sqrt_bounds(&(&ch - c).norm_sqr(), k + 4);
    let r = r_lo - off_hi;
    if !r.is_positive() {
        return d.clone();
    }
    let out = RationalDisk::from_center_radius(&ch, &r).expect("positive radius");
    debug_assert!(disk_in_disk(&out, d));
    out
}

/// `|z - c|^2 < r^2 (1 - 2^-margin_bits)` for the center and radius of `d`.
pub fn hp_inside(z: &HpComplex, d: &RationalDisk, margin_bits: u32) -> bool {
    let p = z.prec;
    let rm = RoundingMode::ToEven;
    let d2 = z.sub(&HpComplex::from_gq(d.center(), p)).norm_sqr();
    let shrink =
        Rational::one() - Rational::new(BigInt::one(), BigInt::one() << margin_bits as usize);
    let bound = hp::from_rational(&(d.radius_sq() * shrink), p);
    d2.sub(&bound, p, rm).is_negative()
}

/// `|z - c|^2 > r^2 (1 + 2^-margin_bits)`.
pub fn hp_outside_closure(z: &HpComplex, d: &RationalDisk, margin_bits: u32) -> bool {
    let p = z.prec;
    let rm = RoundingMode::ToEven;
    let d2 = z.sub(&HpComplex::from_gq(d.center(), p)).norm_sqr();
    let grow =
        Rational::one() + Rational::new(BigInt::one(), BigInt::one() << margin_bits as usize);
    let bound = hp::from_rational(&(d.radius_sq() * grow), p);
    d2.sub(&bound, p, rm).is_positive()
}

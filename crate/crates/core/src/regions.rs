//! Region predicates: the cardioid, the Shearer disk, `λ*(Δ)`, the zeros for `Δ = 2`
//! and candidates for exceptional zero parameters.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::{limit_denominator, GaussianRational, Rational};
use crate::hp::{self, HpComplex};
use crate::poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("degree bound {0} is too small")]
    BadDelta(usize),
    #[error("parameter {0} is outside (0, 1)")]
    BadT(String),
}

/// Margin below which cardioid verdicts are reported as unknown.
pub const CARDIOID_MARGIN_BITS: u32 = 64;

const ROOT_PREC: usize = 192;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum RegionStatus {
    Inside,
    Outside,
    Boundary,
    Unknown { margin: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionVerdict {
    #[serde(flatten)]
    pub status: RegionStatus,
    /// Approximate witness, e.g. the `z` with `λ = z/(1-z)^Δ`.
    pub witness: Option<[f64; 2]>,
    /// Exact witness when one is known.
    pub exact_witness: Option<GaussianRational>,
}

impl RegionVerdict {
    fn bare(status: RegionStatus) -> Self {
        RegionVerdict {
            status,
            witness: None,
            exact_witness: None,
        }
    }
}

fn check_delta(delta: usize, min: usize) -> Result<(), RegionError> {
    if delta < min {
        Err(RegionError::BadDelta(delta))
    } else {
        Ok(())
    }
}

fn pow_int(b: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

/// `(Δ-1)^(Δ-1) / Δ^Δ`.
pub fn shearer_radius(delta: usize) -> Rational {
    Rational::new(
        pow_int(delta as i64 - 1, delta - 1),
        pow_int(delta as i64, delta),
    )
}

pub fn lambda_star(delta: usize) -> Result<GaussianRational, RegionError> {
    check_delta(delta, 2)?;
    Ok(GaussianRational::from_real(-shearer_radius(delta)))
}

pub fn shearer_contains(
    lambda: &GaussianRational,
    delta: usize,
) -> Result<RegionVerdict, RegionError> {
    check_delta(delta, 2)?;
    let r = shearer_radius(delta);
    let status = match lambda.norm_sqr().cmp(&(&r * &r)) {
        std::cmp::Ordering::Less => RegionStatus::Inside,
        std::cmp::Ordering::Equal => RegionStatus::Boundary,
        std::cmp::Ordering::Greater => RegionStatus::Outside,
    };
    Ok(RegionVerdict::bare(status))
}

/// Coefficients of `λ(1-z)^Δ - z`, lowest degree first.
pub fn cardioid_polynomial(lambda: &GaussianRational, delta: usize) -> Vec<GaussianRational> {
    let mut coeffs = Vec::with_capacity(delta + 1);
    let mut binom = BigInt::one();
    for k in 0..=delta {
        let signed = if k % 2 == 0 {
            binom.clone()
        } else {
            -binom.clone()
        };
        coeffs.push(lambda.scale(&Rational::from_integer(signed)));
        binom = binom * BigInt::from(delta - k) / BigInt::from(k + 1);
    }
    coeffs[1] = &coeffs[1] - &GaussianRational::one();
    coeffs
}

/// Gaussian rational with small denominators close to an approximate root, if any.
fn rationalize(z: &HpComplex, max_den: u64) -> GaussianRational {
    let m = BigInt::from(max_den);
    let q = z.to_gq();
    GaussianRational::new(limit_denominator(&q.re, &m), limit_denominator(&q.im, &m))
}

/// Membership in the closed cardioid `{ z/(1-z)^Δ : |z| <= 1/(Δ-1) }`.
pub fn cardioid_contains(
    lambda: &GaussianRational,
    delta: usize,
) -> Result<RegionVerdict, RegionError> {
    check_delta(delta, 2)?;
    if lambda.is_zero() {
        return Ok(RegionVerdict {
            status: RegionStatus::Inside,
            witness: Some([0.0, 0.0]),
            exact_witness: Some(GaussianRational::zero()),
        });
    }
    let p = cardioid_polynomial(lambda, delta);
    let r = Rational::new(BigInt::one(), BigInt::from(delta - 1));
    let r2 = &r * &r;
    let rf = 1.0 / (delta - 1) as f64;
    let roots = poly::roots_gq(&p, ROOT_PREC);
    let ph: Vec<HpComplex> = p
        .iter()
        .map(|c| HpComplex::from_gq(c, ROOT_PREC + 64))
        .collect();
    let radii = poly::inclusion_radii(&ph, &roots);

    // Exact boundary detection for roots with small denominators.
    for z in &roots {
        let zc = z.to_c64();
        if (zc.norm() - rf).abs() < 1e-9 {
            let q = rationalize(z, 1 << 20);
            if q.norm_sqr() == r2 && poly::eval_gq(&p, &q).is_zero() {
                return Ok(RegionVerdict {
                    status: RegionStatus::Boundary,
                    witness: Some([zc.re, zc.im]),
                    exact_witness: Some(q),
                });
            }
        }
    }

    let margin = 2f64.powi(-(CARDIOID_MARGIN_BITS as i32));
    let moduli: Vec<f64> = roots.iter().map(|z| hp::to_f64(&z.abs())).collect();
    let centers: Vec<Complex64> = roots.iter().map(HpComplex::to_c64).collect();
    let isolated = |k: usize| {
        (0..roots.len()).all(|j| j == k || (centers[k] - centers[j]).norm() > radii[k] + radii[j])
    };
    let mut best: Option<usize> = None;
    for k in 0..roots.len() {
        if moduli[k] + radii[k] < rf - margin
            && isolated(k)
            && best.is_none_or(|b| moduli[k] < moduli[b])
        {
            best = Some(k);
        }
    }
    if let Some(k) = best {
        return Ok(RegionVerdict {
            status: RegionStatus::Inside,
            witness: Some([centers[k].re, centers[k].im]),
            exact_witness: None,
        });
    }
    let k_min = (0..roots.len())
        .min_by(|&a, &b| moduli[a].total_cmp(&moduli[b]))
        .unwrap();
    let witness = Some([centers[k_min].re, centers[k_min].im]);
    if (0..roots.len()).all(|k| moduli[k] - radii[k] > rf + margin) {
        return Ok(RegionVerdict {
            status: RegionStatus::Outside,
            witness,
            exact_witness: None,
        });
    }
    let gap = (0..roots.len())
        .map(|k| (moduli[k] - rf).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(RegionVerdict {
        status: RegionStatus::Unknown { margin: gap },
        witness,
        exact_witness: None,
    })
}

/// Value of `-1/(2(1 + cos(tπ)))`, exact when the cosine is rational.
#[derive(Clone, Debug)]
pub struct Delta2Zero {
    pub value: Rational,
    pub exact: bool,
}

impl Delta2Zero {
    pub fn to_f64(&self) -> f64 {
        crate::exact_arith::rat_to_f64(&self.value)
    }
}

pub fn delta2_zero(t: &Rational) -> Result<Delta2Zero, RegionError> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(RegionError::BadT(crate::exact_arith::format_rational(t)));
    }
    let half = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let exact_cos = if *t == half(1, 2) {
        Some(Rational::zero())
    } else if *t == half(1, 3) {
        Some(half(1, 2))
    } else if *t == half(2, 3) {
        Some(half(-1, 2))
    } else {
        None
    };
    if let Some(c) = exact_cos {
        let v =
            -Rational::one() / (Rational::from_integer(BigInt::from(2)) * (Rational::one() + c));
        return Ok(Delta2Zero {
            value: v,
            exact: true,
        });
    }
    let p = hp::PREC + 32;
    let rm = RoundingMode::ToEven;
    let x = hp::from_rational(t, p).mul(&hp::pi(p), p, rm);
    let c = hp::cos(&x, p);
    let den = c
        .add(&BigFloat::from_word(1, p), p, rm)
        .mul(&BigFloat::from_word(2, p), p, rm);
    let v = BigFloat::from_word(1, p).div(&den, hp::PREC, rm).neg();
    Ok(Delta2Zero {
        value: hp::to_rational(&v),
        exact: false,
    })
}

/// `(a + ib)^-1` for all nonzero Gaussian integers with `|a + ib| <= Δ^Δ/(Δ-1)^(Δ-1)`.
pub fn exceptional_candidates(delta: usize) -> Result<Vec<GaussianRational>, RegionError> {
    check_delta(delta, 3)?;
    let bound = Rational::one() / shearer_radius(delta);
    let b2 = &bound * &bound;
    let m = bound.floor().to_integer();
    let m: i64 = num_traits::ToPrimitive::to_i64(&m).expect("small bound");
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            let n = a * a + b * b;
            if n > 0 && Rational::from_integer(BigInt::from(n)) <= b2 {
                pts.push((a, b));
            }
        }
    }
    pts.sort_by_key(|&(a, b)| (a * a + b * b, a, b));
    Ok(pts
        .into_iter()
        .map(|(a, b)| {
            GaussianRational::from_parts(a, 1, b, 1)
                .inv()
                .expect("nonzero")
        })
        .collect())
}

pub fn is_exceptional_candidate(
    lambda: &GaussianRational,
    delta: usize,
) -> Result<bool, RegionError> {
    check_delta(delta, 3)?;
    if lambda.is_zero() {
        return Ok(false);
    }
    let w = lambda.inv().expect("nonzero");
    if !w.re.is_integer() || !w.im.is_integer() {
        return Ok(false);
    }
    let bound = Rational::one() / shearer_radius(delta);
    Ok(w.norm_sqr() <= &bound * &bound)
}

/// Boundary of the cardioid sampled at `n` equally spaced angles.
pub fn cardioid_boundary(delta: usize, n: usize) -> Result<Vec<Complex64>, RegionError> {
    check_delta(delta, 2)?;
    let r = 1.0 / (delta - 1) as f64;
    Ok((0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let z = Complex64::from_polar(r, th);
            z / (Complex64::new(1.0, 0.0) - z).powu(delta as u32)
        })
        .collect())
}

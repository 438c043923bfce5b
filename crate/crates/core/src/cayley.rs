//! Cayley-tree dynamics of `f_{λ,d}(z) = λ/(1+z)^d`: exact ratios, zeros and activity fields.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_arith::{rat_to_f64, GaussianRational, Rational};
use crate::graph_core::{GraphError, RootedGraph};
use crate::hp::HpComplex;
use crate::moebius::SpherePoint;
use crate::poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("λ = 0 is excluded")]
    ZeroLambda,
    #[error("down-degree must be at least 1")]
    BadDegree,
    #[error("depth {0} exceeds the guard of {MAX_ZERO_DEPTH}")]
    DepthGuard(usize),
    #[error("polynomial degree {0} exceeds the guard of {MAX_ZERO_DEGREE}")]
    DegreeGuard(usize),
    #[error("root refinement failed to certify {0} roots")]
    Uncertified(usize),
    #[error("depth must be at least 1")]
    BadDepth,
}

pub const MAX_ZERO_DEPTH: usize = 8;
pub const MAX_ZERO_DEGREE: usize = 1024;

/// One step of `f_{λ,d}` on the Riemann sphere.
pub fn f_step(
    lambda: &GaussianRational,
    d: u32,
    z: &SpherePoint<GaussianRational>,
) -> SpherePoint<GaussianRational> {
    match z {
        SpherePoint::Infinity => SpherePoint::Finite(GaussianRational::zero()),
        SpherePoint::Finite(z) => {
            let w = &GaussianRational::one() + z;
            if w.is_zero() {
                SpherePoint::Infinity
            } else {
                SpherePoint::Finite(lambda / &w.pow(d))
            }
        }
    }
}

/// `f_{λ,d}^{n+1}(0)`, the root ratio of the depth-`n` Cayley tree.
pub fn cayley_ratio(lambda: &GaussianRational, d: u32, n: usize) -> SpherePoint<GaussianRational> {
    let mut z = SpherePoint::Finite(GaussianRational::zero());
    for _ in 0..=n {
        z = f_step(lambda, d, &z);
    }
    z
}

/// Floating version with the same pole bookkeeping; `None` stands for ∞.
pub fn cayley_ratio_f64(lambda: Complex64, d: u32, n: usize) -> Option<Complex64> {
    let mut z = Some(Complex64::new(0.0, 0.0));
    for _ in 0..=n {
        z = match z {
            None => Some(Complex64::new(0.0, 0.0)),
            Some(z) => {
                let w = Complex64::new(1.0, 0.0) + z;
                if w == Complex64::new(0.0, 0.0) {
                    None
                } else {
                    Some(lambda / w.powu(d))
                }
            }
        };
    }
    z
}

pub fn cayley_zero_condition(
    lambda: &GaussianRational,
    d: u32,
    n: usize,
) -> Result<bool, CayleyError> {
    if lambda.is_zero() {
        return Err(CayleyError::ZeroLambda);
    }
    Ok(cayley_ratio(lambda, d, n) == SpherePoint::Finite(GaussianRational::from_int(-1)))
}

/// Depth-`n` Cayley tree with down-degree `d`, rooted at the top vertex.
pub fn cayley_tree(d: usize, n: usize) -> Result<RootedGraph, GraphError> {
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut count = 1;
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * d);
        for &u in &level {
            for _ in 0..d {
                edges.push((u, count));
                next.push(count);
                count += 1;
            }
        }
        level = next;
    }
    RootedGraph::new(count, &edges, 0, d + 1)
}

/// Integer polynomials `(N_n, D_n)` with `R_n = N_n / D_n` in lowest terms.
pub fn ratio_polynomials(d: usize, n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut num = vec![BigInt::zero(), BigInt::one()];
    let mut den = vec![BigInt::one()];
    for _ in 0..n {
        let s = poly::add_int(&num, &den);
        let new_num = poly::mul_int(&[BigInt::zero(), BigInt::one()], &poly::pow_int(&den, d));
        den = poly::pow_int(&s, d);
        num = new_num;
    }
    (num, den)
}

/// `Z_{T_n}(λ) = N_n + D_n`.
pub fn cayley_independence_polynomial(d: usize, n: usize) -> Vec<BigInt> {
    let (num, den) = ratio_polynomials(d, n);
    poly::add_int(&num, &den)
}

/// A certified zero of `Z_{T_n}`.
#[derive(Clone, Debug)]
pub struct CayleyZero {
    pub value: Complex64,
    pub rationalized: GaussianRational,
    /// `|Z_{T_n}|` at `rationalized`, evaluated exactly.
    pub residual: f64,
}

type GInt = (BigInt, BigInt);

fn gmul(x: &GInt, y: &GInt) -> GInt {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// `q^{e_n} · Z_{T_n}(A/q)` as a Gaussian integer together with `q^{e_n}`, where `e_0 = 1` and
/// `e_{k+1} = d·e_k + 1`: the recursion `N̂' = A·D̂^d`, `D̂' = q·(N̂ + D̂)^d` stays integral.
fn scaled_eval(d: usize, n: usize, z: &GaussianRational) -> (GInt, BigInt) {
    use num_integer::Integer;
    let q = z.re.denom().lcm(z.im.denom());
    let a: GInt = (
        z.re.numer() * (&q / z.re.denom()),
        z.im.numer() * (&q / z.im.denom()),
    );
    let mut num = a.clone();
    let mut den: GInt = (q.clone(), BigInt::zero());
    let mut scale = q.clone();
    for _ in 0..n {
        let s: GInt = (&num.0 + &den.0, &num.1 + &den.1);
        let (mut dp, mut sp) = (den.clone(), s.clone());
        for _ in 1..d {
            dp = gmul(&dp, &den);
            sp = gmul(&sp, &s);
        }
        num = gmul(&a, &dp);
        den = (&sp.0 * &q, &sp.1 * &q);
        scale = num_traits::pow(scale, d) * &q;
    }
    ((&num.0 + &den.0, &num.1 + &den.1), scale)
}

fn residual_ok(d: usize, n: usize, z: &GaussianRational, digits: u32) -> (bool, f64) {
    let ((re, im), scale) = scaled_eval(d, n, z);
    let n2 = &re * &re + &im * &im;
    let bound = num_traits::pow(BigInt::from(10), 2 * digits as usize);
    let ok = n2.clone() * bound < &scale * &scale;
    let res = if n2.is_zero() {
        0.0
    } else {
        (0.5 * big_ln(&n2) - big_ln(&scale)).exp()
    };
    (ok, res)
}

/// Natural log of a positive integer from its leading 64 bits.
fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top: BigInt = x >> shift;
    num_traits::ToPrimitive::to_f64(&top)
        .unwrap_or(f64::NAN)
        .ln()
        + shift as f64 * std::f64::consts::LN_2
}

/// `Z'/Z` for `Z = N_n + D_n` through the ratio recursion, with `ln|D_n · R_n'|`
/// (which equals `ln|Z'|` at a zero).
fn log_derivative_f64(lambda: Complex64, d: u32, n: usize) -> (Complex64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let (mut r, mut rp, mut l, mut log_d) = (lambda, one, Complex64::new(0.0, 0.0), 0.0f64);
    for _ in 0..n {
        let w = one + r;
        let wd = w.powu(d);
        l = (l + rp / w) * d as f64;
        log_d = (log_d + w.norm().ln()) * d as f64;
        let next = lambda / wd;
        rp = one / wd - lambda * rp * d as f64 / (wd * w);
        r = next;
    }
    (l + rp / (one + r), log_d + rp.norm().ln())
}

fn log_derivative_hp(lambda: &HpComplex, d: u32, n: usize) -> Option<HpComplex> {
    let prec = lambda.prec;
    let one = HpComplex::from_int(1, prec);
    let dd = HpComplex::from_int(d as i64, prec);
    let (mut r, mut rp, mut l) = (lambda.clone(), one.clone(), HpComplex::zero(prec));
    for _ in 0..n {
        let w = one.add(&r);
        if w.is_zero() {
            return None;
        }
        let mut wd = one.clone();
        for _ in 0..d {
            wd = wd.mul(&w);
        }
        l = l.add(&rp.div(&w)).mul(&dd);
        let next = lambda.div(&wd);
        rp = one.div(&wd).sub(&lambda.mul(&rp).mul(&dd).div(&wd.mul(&w)));
        r = next;
    }
    let w = one.add(&r);
    if w.is_zero() {
        return None;
    }
    Some(l.add(&rp.div(&w)))
}

/// Every root of `Z_{T_n}`, certified by `|Z_{T_n}(root)| < 10^-precision` at a rationalized root.
///
/// Roots are located with double-precision Aberth steps and refined by Newton at a precision
/// sized from `|Z'|`; both use the ratio recursion rather than the expanded polynomial.
pub fn cayley_zeros(d: usize, n: usize, precision: u32) -> Result<Vec<CayleyZero>, CayleyError> {
    if d == 0 {
        return Err(CayleyError::BadDegree);
    }
    if n > MAX_ZERO_DEPTH {
        return Err(CayleyError::DepthGuard(n));
    }
    let p = cayley_independence_polynomial(d, n);
    let deg = poly::degree(&p);
    if deg > MAX_ZERO_DEGREE {
        return Err(CayleyError::DegreeGuard(deg));
    }
    let du = d as u32;
    let pf: Vec<Complex64> = p
        .iter()
        .map(|c| Complex64::new(rat_to_f64(&Rational::from_integer(c.clone())), 0.0))
        .collect();
    let start = poly::aberth_with(
        |z| log_derivative_f64(z, du, n).0,
        poly::initial_guesses(&pf),
        2000,
    );
    let log2_dp = start
        .iter()
        .map(|&z| log_derivative_f64(z, du, n).1 / std::f64::consts::LN_2)
        .filter(|x| x.is_finite())
        .fold(0.0f64, f64::max);
    let mut prec = 128usize
        .max((log2_dp + precision as f64 * std::f64::consts::LOG2_10 + 16.0).ceil() as usize)
        + 64;
    let mut roots: Vec<HpComplex> = start
        .iter()
        .map(|z| HpComplex::from_c64(*z, prec))
        .collect();
    loop {
        let mut out = Vec::with_capacity(deg);
        let mut failed = 0;
        for z in roots.iter_mut() {
            *z = HpComplex::new(z.re.clone(), z.im.clone(), prec);
            poly::newton_with(|w| log_derivative_hp(w, du, n), z, prec, 100);
            let q = z.to_gq_rounded(prec as u32);
            let (ok, res) = residual_ok(d, n, &q, precision);
            if !ok {
                failed += 1;
            }
            out.push(CayleyZero {
                value: z.to_c64(),
                rationalized: q,
                residual: res,
            });
        }
        let mut distinct: Vec<&GaussianRational> = out.iter().map(|z| &z.rationalized).collect();
        distinct.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
        distinct.dedup();
        failed += deg - distinct.len();
        if failed == 0 {
            out.sort_by(|a, b| {
                a.value
                    .re
                    .total_cmp(&b.value.re)
                    .then(a.value.im.total_cmp(&b.value.im))
            });
            return Ok(out);
        }
        if prec >= 8192 {
            return Err(CayleyError::Uncertified(failed));
        }
        prec *= 2;
    }
}

/// Pixel rectangle in the λ-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

/// Spherical derivative of `λ ↦ f^{N+1}(0)` over a pixel grid, row 0 at the top.
#[derive(Clone, Debug)]
pub struct ActivityField {
    pub rect: Rect,
    pub width: usize,
    pub height: usize,
    pub depth: usize,
    pub values: Vec<f64>,
}

impl ActivityField {
    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.width + col]
    }

    /// Binary 8-bit PGM, white where `σ >= threshold`.
    pub fn to_pgm(&self, threshold: f64) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(
            self.values
                .iter()
                .map(|&s| if s >= threshold { 255u8 } else { 0u8 }),
        );
        out
    }
}

/// Pixel-center coordinate, antisymmetric about the middle of the range.
fn pixel_coord(lo: f64, hi: f64, count: usize, k: usize) -> f64 {
    let step = (hi - lo) / count as f64;
    let mid = (lo + hi) / 2.0;
    mid + (k as f64 - (count as f64 - 1.0) / 2.0) * step
}

pub fn pixel_lambda(rect: &Rect, width: usize, height: usize, col: usize, row: usize) -> Complex64 {
    let x = pixel_coord(rect.x0, rect.x1, width, col);
    let y = pixel_coord(rect.y0, rect.y1, height, height - 1 - row);
    Complex64::new(x, y)
}

/// `σ = |R'_N| / (1 + |R_N|^2)` for the pair recursion in `λ`; `+∞` on non-finite states.
pub fn spherical_derivative(lambda: Complex64, d: u32, depth: usize) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let mut r = lambda;
    let mut dr = one;
    for _ in 0..depth {
        let w = one + r;
        let wd = w.powu(d);
        let next = lambda / wd;
        let dnext = one / wd - lambda * (d as f64) / (wd * w) * dr;
        r = next;
        dr = dnext;
        if !(r.is_finite() && dr.is_finite()) {
            return f64::INFINITY;
        }
    }
    let s = dr.norm() / (1.0 + r.norm_sqr());
    if s.is_finite() {
        s
    } else {
        f64::INFINITY
    }
}

pub fn spherical_derivative_field(
    rect: Rect,
    width: usize,
    height: usize,
    d: u32,
    depth: usize,
) -> Result<ActivityField, CayleyError> {
    if depth == 0 {
        return Err(CayleyError::BadDepth);
    }
    let values: Vec<f64> = (0..width * height)
        .into_par_iter()
        .map(|k| {
            spherical_derivative(
                pixel_lambda(&rect, width, height, k % width, k / width),
                d,
                depth,
            )
        })
        .collect();
    Ok(ActivityField {
        rect,
        width,
        height,
        depth,
        values,
    })
}

//! Dense univariate polynomials: exact evaluation, real-root isolation and Aberth iteration.
//!
//! Coefficients are stored lowest degree first.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{GaussianRational, Rational};
use crate::hp::{self, HpComplex};

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree<T: Zero>(p: &[T]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn add_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow_int(a: &[BigInt], e: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..e {
        acc = mul_int(&acc, a);
    }
    acc
}

pub fn eval_int_gq(p: &[BigInt], z: &GaussianRational) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for c in p.iter().rev() {
        acc = &(&acc * z) + &GaussianRational::from_real(Rational::from_integer(c.clone()));
    }
    acc
}

pub fn eval_int_rat(p: &[BigInt], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = &acc * x + Rational::from_integer(c.clone());
    }
    acc
}

pub fn eval_gq(p: &[GaussianRational], z: &GaussianRational) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for c in p.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

fn derivative_rat(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
        .collect()
}

fn rem_rat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = trim(a.to_vec());
    let db = degree(b);
    let lead = &b[db];
    while !(r.len() == 1 && r[0].is_zero()) && degree(&r) >= db {
        let dr = degree(&r);
        let q = &r[dr] / lead;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            let t = &r[dr - db + k] - &q * c;
            r[dr - db + k] = t;
        }
        r = trim(r);
    }
    r
}

/// Sturm chain of a squarefree-agnostic polynomial.
fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![trim(p.to_vec()), trim(derivative_rat(p))];
    loop {
        let n = chain.len();
        if chain[n - 1].len() == 1 && chain[n - 1][0].is_zero() {
            chain.pop();
            break;
        }
        if degree(&chain[n - 1]) == 0 {
            break;
        }
        let r: Vec<Rational> = rem_rat(&chain[n - 2], &chain[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        chain.push(r);
    }
    chain
}

fn eval_rat(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

fn sign_changes(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in chain {
        let v = eval_rat(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Disjoint rational intervals `(lo, hi]` of width at most `width`, each holding exactly one
/// distinct real root of `p`, in increasing order.
pub fn isolate_real_roots(p: &[BigInt], width: &Rational) -> Vec<(Rational, Rational)> {
    let pr: Vec<Rational> = p
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    let d = degree(&pr);
    if d == 0 {
        return Vec::new();
    }
    // Cauchy bound.
    let lead = pr[d].abs();
    let m = pr[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = m + Rational::one();
    let chain = sturm_chain(&pr);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let k = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if k == 0 {
            continue;
        }
        if k == 1 && &hi - &lo <= *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `p'(z)/p(z)` without overflow, using the reversed polynomial for `|z| > 1`.
fn log_derivative_f64(p: &[Complex64], z: Complex64) -> Complex64 {
    let n = p.len() - 1;
    if z.norm() <= 1.0 {
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in p.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        dv / v
    } else {
        let w = z.inv();
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in p.iter() {
            dv = dv * w + v;
            v = v * w + c;
        }
        w * n as f64 - w * w * dv / v
    }
}

/// Starting points on circles read off the upper convex hull of `(k, log|c_k|)`.
pub fn initial_guesses(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let pts: Vec<(usize, f64)> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross =
                (b.0 as f64 - a.0 as f64) * (q.1 - a.1) - (b.1 - a.1) * (q.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut z = Vec::with_capacity(n);
    // Roots at zero for vanishing low-order coefficients.
    for _ in 0..hull[0].0 {
        z.push(Complex64::new(0.0, 0.0));
    }
    let mut offset = 0.4;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let r = ((li - lj) / m as f64).exp();
        for k in 0..m {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / m as f64 + offset;
            z.push(Complex64::from_polar(r, th));
        }
        offset += 1.1;
    }
    z
}

/// Double-precision Aberth iteration.
pub fn aberth_f64(p: &[Complex64], max_iter: usize) -> Vec<Complex64> {
    if p.len() <= 1 {
        return Vec::new();
    }
    aberth_with(|z| log_derivative_f64(p, z), initial_guesses(p), max_iter)
}

/// Aberth iteration driven by a log-derivative oracle `z ↦ p'(z)/p(z)`.
pub fn aberth_with<F: Fn(Complex64) -> Complex64>(
    ld: F,
    mut z: Vec<Complex64>,
    max_iter: usize,
) -> Vec<Complex64> {
    let n = z.len();
    for _ in 0..max_iter {
        let mut moved = 0.0f64;
        for k in 0..n {
            let l = ld(z[k]);
            if !l.is_finite() {
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let step = (l - s).inv();
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Newton refinement of a single root from a log-derivative oracle; `None` from the oracle stops.
pub fn newton_with<F: Fn(&HpComplex) -> Option<HpComplex>>(
    ld: F,
    z: &mut HpComplex,
    prec: usize,
    max_iter: usize,
) {
    let tol = pow2(16 - prec as i64, prec);
    let one = BigFloat::from_word(1, prec);
    let mut prev: Option<BigFloat> = None;
    for it in 0..max_iter {
        let l = match ld(z) {
            Some(l) if !l.is_zero() => l,
            _ => break,
        };
        let step = HpComplex::from_int(1, prec).div(&l);
        *z = z.sub(&step);
        let a = z.abs();
        let scale = if a.cmp(&one).is_none_or(|o| o < 0) {
            one.clone()
        } else {
            a
        };
        let rel = step
            .abs()
            .div(&scale, prec, astro_float::RoundingMode::ToEven);
        if rel.cmp(&tol).is_some_and(|o| o <= 0) {
            break;
        }
        if it >= 6
            && prev
                .as_ref()
                .is_some_and(|p| rel.cmp(p).is_none_or(|o| o >= 0))
        {
            break;
        }
        prev = Some(rel);
    }
}

fn eval_with_derivative_hp(p: &[HpComplex], z: &HpComplex) -> (HpComplex, HpComplex) {
    let prec = z.prec;
    let mut v = HpComplex::zero(prec);
    let mut dv = HpComplex::zero(prec);
    for c in p.iter().rev() {
        dv = dv.mul(z).add(&v);
        v = v.mul(z).add(c);
    }
    (v, dv)
}

pub fn eval_hp(p: &[HpComplex], z: &HpComplex) -> HpComplex {
    eval_with_derivative_hp(p, z).0
}

/// Polish approximate roots by simultaneous Aberth steps at `prec` bits.
///
/// A root is frozen once its correction drops below `2^-(prec-16)` relative to `max(1, |z|)`
/// or stops shrinking.
pub fn aberth_polish(p: &[HpComplex], roots: &mut [HpComplex], prec: usize, max_iter: usize) {
    let n = roots.len();
    let rm = astro_float::RoundingMode::ToEven;
    let tol = pow2(16 - prec as i64, prec);
    let one = BigFloat::from_word(1, prec);
    for r in roots.iter_mut() {
        *r = HpComplex::new(r.re.clone(), r.im.clone(), prec);
    }
    let floor = pow2(-(prec as i64) / 2, prec);
    let mut active = vec![true; n];
    let mut prev: Vec<Option<BigFloat>> = vec![None; n];
    for _ in 0..max_iter {
        if !active.iter().any(|&a| a) {
            break;
        }
        for k in 0..n {
            if !active[k] {
                continue;
            }
            let (v, dv) = eval_with_derivative_hp(p, &roots[k]);
            if v.is_zero() {
                active[k] = false;
                continue;
            }
            let ld = dv.div(&v);
            let mut s = HpComplex::zero(prec);
            for j in 0..n {
                if j != k {
                    let diff = roots[k].sub(&roots[j]);
                    if !diff.is_zero() {
                        s = s.add(&HpComplex::from_int(1, prec).div(&diff));
                    }
                }
            }
            let den = ld.sub(&s);
            if den.is_zero() {
                active[k] = false;
                continue;
            }
            let step = HpComplex::from_int(1, prec).div(&den);
            roots[k] = roots[k].sub(&step);
            let a = roots[k].abs();
            let scale = if a.cmp(&one).is_none_or(|o| o < 0) {
                one.clone()
            } else {
                a
            };
            let rel = step.abs().div(&scale, prec, rm);
            let stalled = rel.cmp(&floor).is_some_and(|o| o < 0)
                && prev[k]
                    .as_ref()
                    .is_some_and(|q| rel.cmp(q).is_none_or(|o| o >= 0));
            if rel.cmp(&tol).is_some_and(|o| o <= 0) || stalled {
                active[k] = false;
            }
            prev[k] = Some(rel);
        }
    }
}

/// Independent Newton refinement of each root at `prec` bits.
pub fn newton_polish(p: &[HpComplex], roots: &mut [HpComplex], prec: usize, max_iter: usize) {
    for z in roots.iter_mut() {
        z.prec = prec;
        newton_with(
            |w| {
                let (v, dv) = eval_with_derivative_hp(p, w);
                (!v.is_zero() && !dv.is_zero()).then(|| dv.div(&v))
            },
            z,
            prec,
            max_iter,
        );
    }
}

/// Smallest pairwise distance between approximate roots.
pub fn min_separation(roots: &[HpComplex]) -> f64 {
    let c: Vec<Complex64> = roots.iter().map(HpComplex::to_c64).collect();
    let mut best = f64::INFINITY;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            best = best.min((c[i] - c[j]).norm());
        }
    }
    best
}

pub fn pow2(e: i64, prec: usize) -> BigFloat {
    let two = BigFloat::from_word(2, prec);
    if e >= 0 {
        two.powi(e as usize, prec, astro_float::RoundingMode::ToEven)
    } else {
        BigFloat::from_word(1, prec).div(
            &two.powi((-e) as usize, prec, astro_float::RoundingMode::ToEven),
            prec,
            astro_float::RoundingMode::ToEven,
        )
    }
}

/// All complex roots of `p`, refined to about `prec` bits.
pub fn roots_gq(p: &[GaussianRational], prec: usize) -> Vec<HpComplex> {
    let p = trim(p.to_vec());
    let n = degree(&p);
    if n == 0 {
        return Vec::new();
    }
    let pf: Vec<Complex64> = p.iter().map(GaussianRational::to_complex64).collect();
    let start = aberth_f64(&pf, 500);
    let ph: Vec<HpComplex> = p.iter().map(|c| HpComplex::from_gq(c, prec + 64)).collect();
    let mut roots: Vec<HpComplex> = start
        .iter()
        .map(|z| HpComplex::from_c64(*z, prec + 64))
        .collect();
    aberth_polish(&ph, &mut roots, prec + 64, 200);
    roots
}

pub fn roots_int(p: &[BigInt], prec: usize) -> Vec<HpComplex> {
    let g: Vec<GaussianRational> = p
        .iter()
        .map(|c| GaussianRational::from_real(Rational::from_integer(c.clone())))
        .collect();
    roots_gq(&g, prec)
}

/// Inclusion radii `n |p(z_k)| / |a_n ∏_{j≠k} (z_k - z_j)|`; the union of the disks contains
/// every root and a disk disjoint from the others contains exactly one.
pub fn inclusion_radii(p: &[HpComplex], roots: &[HpComplex]) -> Vec<f64> {
    let n = roots.len();
    let lead = p[n].abs();
    (0..n)
        .map(|k| {
            let v = eval_hp(p, &roots[k]).abs();
            let mut den = lead.clone();
            for j in 0..n {
                if j != k {
                    den = den.mul(
                        &roots[k].sub(&roots[j]).abs(),
                        roots[k].prec,
                        astro_float::RoundingMode::ToEven,
                    );
                }
            }
            if den.is_zero() {
                return f64::INFINITY;
            }
            let r = v
                .mul(
                    &BigFloat::from_word(n as u64, roots[k].prec),
                    roots[k].prec,
                    astro_float::RoundingMode::ToEven,
                )
                .div(&den, roots[k].prec, astro_float::RoundingMode::ToEven);
            // Round upward to absorb evaluation error.
            hp::to_f64(&r) * 2.0
        })
        .collect()
}

//! Multi-precision real and complex floats, with exact conversion to and from rationals.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{GaussianRational, Rational};

/// Default working precision in bits.
pub const PREC: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let sign = if n.is_negative() {
        Sign::Neg
    } else {
        Sign::Pos
    };
    let words = n.magnitude().to_u64_digits();
    let e = (words.len() * 64) as i32;
    let mut f = BigFloat::from_words(&words, sign, e);
    f.set_precision(p, RM).expect("precision");
    f
}

pub fn from_rational(r: &Rational, p: usize) -> BigFloat {
    let n = from_bigint(r.numer(), p + 64);
    let d = from_bigint(r.denom(), p + 64);
    n.div(&d, p, RM)
}

pub fn from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

/// Exact rational value of a finite float.
pub fn to_rational(x: &BigFloat) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let (words, _bits, sign, e, _) = x.as_raw_parts().expect("finite float");
    let mag = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
            .collect::<Vec<u32>>(),
    );
    let mut m = BigInt::from(mag);
    if sign == Sign::Neg {
        m = -m;
    }
    let shift = e as i64 - (words.len() * 64) as i64;
    if shift >= 0 {
        Rational::from_integer(m << shift as usize)
    } else {
        Rational::new(m, BigInt::one() << (-shift) as usize)
    }
}

/// Nearest multiple of `2^-bits`.
pub fn round_dyadic(x: &BigFloat, bits: u32) -> Rational {
    let den = BigInt::one() << bits as usize;
    let v = to_rational(x) * Rational::from_integer(den.clone());
    Rational::new(
        (v + Rational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer(),
        den,
    )
}

pub fn to_f64(x: &BigFloat) -> f64 {
    crate::exact_arith::rat_to_f64(&to_rational(x))
}

pub fn pi(p: usize) -> BigFloat {
    with_cc(|cc| cc.pi(p, RM))
}

pub fn cos(x: &BigFloat, p: usize) -> BigFloat {
    with_cc(|cc| x.cos(p, RM, cc))
}

pub fn sin(x: &BigFloat, p: usize) -> BigFloat {
    with_cc(|cc| x.sin(p, RM, cc))
}

pub fn asin(x: &BigFloat, p: usize) -> BigFloat {
    with_cc(|cc| x.asin(p, RM, cc))
}

pub fn atan(x: &BigFloat, p: usize) -> BigFloat {
    with_cc(|cc| x.atan(p, RM, cc))
}

pub fn sqrt(x: &BigFloat, p: usize) -> BigFloat {
    x.sqrt(p, RM)
}

pub fn ln(x: &BigFloat, p: usize) -> BigFloat {
    with_cc(|cc| x.ln(p, RM, cc))
}

/// Argument in `(-pi, pi]`.
pub fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    let pp = p + 32;
    if x.is_zero() {
        let h = pi(pp).div(&BigFloat::from_word(2, pp), p, RM);
        return if y.is_negative() {
            h.neg()
        } else if y.is_zero() {
            BigFloat::from_word(0, p)
        } else {
            h
        };
    }
    let t = atan(&y.div(x, pp, RM), pp);
    if x.is_positive() {
        t
    } else if y.is_negative() {
        t.sub(&pi(pp), p, RM)
    } else {
        t.add(&pi(pp), p, RM)
    }
}

/// Complex number with multi-precision parts.
#[derive(Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

impl Clone for HpComplex {
    fn clone(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: self.im.clone(),
            prec: self.prec,
        }
    }
}

impl HpComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        HpComplex { re, im, prec }
    }

    pub fn zero(p: usize) -> Self {
        Self::new(BigFloat::from_word(0, p), BigFloat::from_word(0, p), p)
    }

    pub fn from_int(n: i64, p: usize) -> Self {
        Self::new(BigFloat::from_i64(n, p), BigFloat::from_word(0, p), p)
    }

    pub fn from_gq(z: &GaussianRational, p: usize) -> Self {
        Self::new(from_rational(&z.re, p), from_rational(&z.im, p), p)
    }

    pub fn from_c64(z: Complex64, p: usize) -> Self {
        Self::new(from_f64(z.re, p), from_f64(z.im, p), p)
    }

    pub fn to_gq(&self) -> GaussianRational {
        GaussianRational::new(to_rational(&self.re), to_rational(&self.im))
    }

    /// Both parts rounded to the nearest multiple of `2^-bits`.
    pub fn to_gq_rounded(&self, bits: u32) -> GaussianRational {
        GaussianRational::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec;
        Self::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec;
        Self::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        let q = p + 64;
        let re = self
            .re
            .mul(&o.re, q, RM)
            .sub(&self.im.mul(&o.im, q, RM), p, RM);
        let im = self
            .re
            .mul(&o.im, q, RM)
            .add(&self.im.mul(&o.re, q, RM), p, RM);
        Self::new(re, im, p)
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.prec;
        Self::new(self.re.mul(k, p, RM), self.im.mul(k, p, RM), p)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let q = self.prec + 64;
        self.re
            .mul(&self.re, q, RM)
            .add(&self.im.mul(&self.im, q, RM), self.prec, RM)
    }

    pub fn abs(&self) -> BigFloat {
        sqrt(&self.norm_sqr(), self.prec)
    }

    pub fn arg(&self) -> BigFloat {
        atan2(&self.im, &self.re, self.prec)
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec;
        let q = p + 64;
        let n = o.norm_sqr();
        let conj = Self::new(o.re.clone(), o.im.neg(), q);
        let num = Self {
            prec: q,
            ..self.clone()
        }
        .mul(&conj);
        Self::new(num.re.div(&n, p, RM), num.im.div(&n, p, RM), p)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        let q = p + 64;
        let r = self.abs();
        let two = BigFloat::from_word(2, q);
        if self.re.is_negative() {
            let t = sqrt(&r.sub(&self.re, q, RM).div(&two, q, RM), q);
            if t.is_zero() {
                return Self::zero(p);
            }
            let re = self.im.abs().div(&t.mul(&two, q, RM), p, RM);
            let im = if self.im.is_negative() { t.neg() } else { t };
            let mut im = im;
            im.set_precision(p, RM).ok();
            Self::new(re, im, p)
        } else {
            let t = sqrt(&r.add(&self.re, q, RM).div(&two, q, RM), q);
            if t.is_zero() {
                return Self::zero(p);
            }
            let im = self.im.div(&t.mul(&two, q, RM), p, RM);
            let mut re = t;
            re.set_precision(p, RM).ok();
            Self::new(re, im, p)
        }
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(1, self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// `|x|` bounded above by `2^k`; returns `k`, or `None` for zero.
pub fn log2_upper(x: &BigFloat) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    x.exponent().map(|e| e as i64)
}

/// Outward rational enclosure `[x - 2^-bits, x + 2^-bits]`.
pub fn enclose(x: &BigFloat, bits: u32) -> (BigRational, BigRational) {
    let v = to_rational(x);
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
    (&v - &eps, &v + &eps)
}

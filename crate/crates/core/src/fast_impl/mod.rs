//! Fast implementers at a fixed parameter `λ0`: certified search, the disk steps on rational
//! disks, and the pipeline that turns a target `P` and tolerance `ε` into an explicit tree.
//!
//! A fast implementer is a finite family of maps `g_i = f_{μ_i} ∘ f_{χ_i}`, where `μ_i` and `χ_i`
//! are ratios of catalog-built trees, together with a small rational disk `U` near the repelling
//! fixed point of `f_{λ0}`. Each `g_i` contracts `U` by a factor in `(1/17, 1/16)` while turning
//! it by just under `2π/3`, and the images `g_i(U)` cover `closure(U)`.

mod disk;
mod pipeline;
mod search;

use astro_float::RoundingMode;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{rat, GaussianRational, Rational, RationalDisk};
use crate::graph_core::{GraphError, PartitionPair, RootedGraph, Shape};
use crate::hp::{self, HpComplex};
use crate::moebius::{ExactMoebius, MoebiusError};

pub use disk::{generate_disk, hp_inside, hp_outside_closure, inner_dyadic_disk};
pub use pipeline::{
    close_to_p, emit_tree, fast_into_d1, quickly_to_zi, replay_into_d1, run_fast_implementation,
    ClosePrecomp, CloseToP, IntoD1,
};
pub use search::{
    default_catalog_size, scan_parameters, search_fast_implementer, search_with, SearchOptions,
    SEARCH_GRID,
};

/// Working precision for fixed points and angle bounds.
pub const HP_PREC: usize = 256;

/// Relative margin, in bits, for numeric disk membership of irrational points.
pub const MARGIN_BITS: u32 = 40;

#[derive(Debug, Error)]
pub enum FastImplError {
    #[error("degenerate seed: {0}")]
    DegenerateSeed(&'static str),
    #[error("search failed: {0}")]
    SearchFailed(Box<SearchDiagnostics>),
    #[error("geometry precondition violated: {0}")]
    GeometryPrecondition(String),
    #[error("target lies near the attracting fixed point; use forward iteration")]
    WrongBranch,
    #[error("Z^out vanishes at an exceptional parameter")]
    ExceptionalParameter,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// Counters reported when no certified implementer was found.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchDiagnostics {
    pub lambda0: String,
    pub reason: String,
    pub cloud_points: usize,
    pub fixed_point_outside: usize,
    pub sector_failures: usize,
    pub not_loxodromic: usize,
    pub uncovered_cells: usize,
    pub budget_exhausted: bool,
}

impl SearchDiagnostics {
    /// Name of the condition that rejected the most candidates.
    pub fn most_frequent(&self) -> &'static str {
        let counts = [
            (self.fixed_point_outside, "fixed point in U"),
            (self.sector_failures, "derivative in the sector"),
            (self.not_loxodromic, "loxodromic map"),
            (self.uncovered_cells, "cover of closure(U)"),
        ];
        counts
            .iter()
            .max_by_key(|c| c.0)
            .filter(|c| c.0 > 0)
            .map_or("none", |c| c.1)
    }
}

impl std::fmt::Display for SearchDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "λ0 = {}: {} (cloud points {}, most frequent failure: {})",
            self.lambda0,
            self.reason,
            self.cloud_points,
            self.most_frequent()
        )
    }
}

pub(crate) fn search_failed(
    lambda0: &GaussianRational,
    reason: impl Into<String>,
) -> FastImplError {
    FastImplError::SearchFailed(Box::new(SearchDiagnostics {
        lambda0: lambda0.to_string(),
        reason: reason.into(),
        ..Default::default()
    }))
}

/// The annular sector `{2π/3 − 1/100 < arg z < 2π/3, 1/17 < |z| < 1/16}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SectorSpec;

impl SectorSpec {
    pub fn modulus_bounds() -> (Rational, Rational) {
        (rat(1, 17), rat(1, 16))
    }

    pub fn arg_width() -> Rational {
        rat(1, 100)
    }

    /// `(2π/3 − 1/100, 2π/3)` at `prec` bits.
    pub fn arg_bounds(prec: usize) -> (astro_float::BigFloat, astro_float::BigFloat) {
        let rm = RoundingMode::ToEven;
        let hi = hp::pi(prec + 32)
            .mul(&astro_float::BigFloat::from_word(2, prec), prec + 32, rm)
            .div(&astro_float::BigFloat::from_word(3, prec), prec, rm);
        let lo = hi.sub(&hp::from_rational(&Self::arg_width(), prec), prec, rm);
        (lo, hi)
    }

    pub fn contains_c64(z: Complex64) -> bool {
        let third = 2.0 * std::f64::consts::PI / 3.0;
        let (a, m) = (z.arg(), z.norm());
        a > third - 0.01 && a < third && m > 1.0 / 17.0 && m < 1.0 / 16.0
    }

    /// Exact on the modulus; the argument is decided at `HP_PREC` bits with a `2^-200` margin,
    /// and `None` is returned when the margin does not settle it.
    pub fn contains(z: &GaussianRational) -> Option<bool> {
        let (lo, hi) = Self::modulus_bounds();
        let n = z.norm_sqr();
        if n <= &lo * &lo || n >= &hi * &hi {
            return Some(false);
        }
        let p = HP_PREC;
        let rm = RoundingMode::ToEven;
        let arg = HpComplex::from_gq(z, p).arg();
        let (alo, ahi) = Self::arg_bounds(p);
        let tiny = disk_pow2(-200, p);
        let inside = arg.sub(&alo, p, rm).sub(&tiny, p, rm).is_positive()
            && ahi.sub(&arg, p, rm).sub(&tiny, p, rm).is_positive();
        let outside = alo.sub(&arg, p, rm).sub(&tiny, p, rm).is_positive()
            || arg.sub(&ahi, p, rm).sub(&tiny, p, rm).is_positive();
        if inside {
            Some(true)
        } else if outside {
            Some(false)
        } else {
            None
        }
    }
}

pub(crate) fn disk_pow2(e: i64, p: usize) -> astro_float::BigFloat {
    crate::poly::pow2(e, p)
}

/// The sector point used to seed the search: `|α|^2 = 1/272`, `arg α = 2π/3 − 1/200`.
pub fn default_alpha(prec: usize) -> HpComplex {
    let rm = RoundingMode::ToEven;
    let (alo, ahi) = SectorSpec::arg_bounds(prec);
    let mid = alo
        .add(&ahi, prec, rm)
        .div(&astro_float::BigFloat::from_word(2, prec), prec, rm);
    let m = hp::sqrt(&hp::from_rational(&rat(1, 272), prec), prec);
    HpComplex::new(
        hp::cos(&mid, prec).mul(&m, prec, rm),
        hp::sin(&mid, prec).mul(&m, prec, rm),
        prec,
    )
}

/// `(μ0, χ0)` with `g_{μ0,χ0}(z0) = z0` and `g'_{μ0,χ0}(z0) = α`.
pub fn seed_pair(
    z0: &HpComplex,
    alpha: &HpComplex,
) -> Result<(HpComplex, HpComplex), FastImplError> {
    let p = z0.prec.max(alpha.prec);
    let tiny = disk_pow2(-(p as i64) / 2, p);
    let small = |w: &HpComplex| w.abs().sub(&tiny, p, RoundingMode::ToEven).is_negative();
    let one = HpComplex::from_int(1, p);
    let zp1 = z0.add(&one);
    if small(z0) || small(&zp1) {
        return Err(FastImplError::DegenerateSeed("z0 must avoid 0 and -1"));
    }
    if small(alpha) {
        return Err(FastImplError::DegenerateSeed("α must be nonzero"));
    }
    let den = z0.sub(&zp1.mul(alpha));
    if small(&den) {
        return Err(FastImplError::DegenerateSeed("α equals z0/(z0+1)"));
    }
    let chi = zp1.mul(&zp1).mul(alpha).div(&den);
    let mu = z0.mul(&z0.add(&chi).add(&one)).div(&zp1);
    Ok((mu, chi))
}

/// `g_{μ,χ}'(z) = μχ/(1+z+χ)^2`.
pub fn g_derivative(mu: &HpComplex, chi: &HpComplex, z: &HpComplex) -> HpComplex {
    let w = HpComplex::from_int(1, z.prec).add(z).add(chi);
    mu.mul(chi).div(&w.mul(&w))
}

/// One map of the implementer with the trees realizing its two ratios.
#[derive(Clone, Debug)]
pub struct ImplementerPair {
    pub mu_shape: Shape,
    pub chi_shape: Shape,
    pub mu_tree: RootedGraph,
    pub chi_tree: RootedGraph,
    pub mu: GaussianRational,
    pub chi: GaussianRational,
    /// Exact partition pairs of the two trees at `λ0`.
    pub mu_pair: PartitionPair,
    pub chi_pair: PartitionPair,
    pub g: ExactMoebius,
    pub g_inv: ExactMoebius,
    /// Attracting fixed point of `g` at `HP_PREC` bits.
    pub z_fix: HpComplex,
    /// Dyadic disk inside `g(U)` used for the cover.
    pub inner: RationalDisk,
}

/// How each defining condition was checked.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateChecks {
    /// Fixed points inside `U` and inside their cover disks: numeric, relative margin `2^-bits`.
    pub fixed_points_margin_bits: u32,
    /// Modulus of `g_i'` over `closure(U)`: exact rational bounds.
    pub sector_modulus: String,
    /// Argument of `g_i'` over `closure(U)`: multi-precision with the given margin.
    pub sector_arg_margin_bits: u32,
    pub cover_max_depth: u32,
    pub cover_depth_used: u32,
    pub cover_cells: usize,
    /// `closure(U) ⊂ f_{λ0}(U)`: exact.
    pub u_inside_image: bool,
    /// Attracting fixed point of `f_{λ0}` outside `closure(U)`: numeric margin.
    pub attracting_excluded_margin_bits: u32,
    pub rational_boundary_points: bool,
    pub all_loxodromic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairRecord {
    pub mu_tree: String,
    pub chi_tree: String,
    pub mu: GaussianRational,
    pub chi: GaussianRational,
    pub z_fix: [f64; 2],
    pub cover_disk: [GaussianRational; 3],
}

/// Serializable certificate; every disk is a triple of rational boundary points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub lambda0: GaussianRational,
    pub delta: usize,
    pub u: [GaussianRational; 3],
    pub pairs: Vec<PairRecord>,
    pub checks: CertificateChecks,
}

/// A certified fast implementer at `λ0`.
#[derive(Clone, Debug)]
pub struct FastImplementer {
    pub lambda0: GaussianRational,
    pub delta: usize,
    pub pairs: Vec<ImplementerPair>,
    pub u: RationalDisk,
    /// Repelling and attracting fixed points of `f_{λ0}`.
    pub z0: HpComplex,
    pub a: HpComplex,
    pub checks: CertificateChecks,
    pub close: ClosePrecomp,
}

impl FastImplementer {
    pub fn certificate(&self) -> Certificate {
        let pts = |d: &RationalDisk| d.points().clone();
        Certificate {
            lambda0: self.lambda0.clone(),
            delta: self.delta,
            u: pts(&self.u),
            pairs: self
                .pairs
                .iter()
                .map(|p| {
                    let z = p.z_fix.to_c64();
                    PairRecord {
                        mu_tree: p.mu_shape.to_parens(),
                        chi_tree: p.chi_shape.to_parens(),
                        mu: p.mu.clone(),
                        chi: p.chi.clone(),
                        z_fix: [z.re, z.im],
                        cover_disk: pts(&p.inner),
                    }
                })
                .collect(),
            checks: self.checks.clone(),
        }
    }

    pub fn certificate_json(&self) -> String {
        serde_json::to_string(&self.certificate()).expect("certificate serializes")
    }

    /// Rebuild from a certificate, re-deriving every ratio from its tree and re-checking all
    /// conditions.
    pub fn from_certificate(cert: &Certificate) -> Result<Self, FastImplError> {
        search::from_certificate(cert)
    }

    pub fn from_certificate_json(text: &str) -> Result<Self, FastImplError> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| FastImplError::Certificate(e.to_string()))?;
        Self::from_certificate(&cert)
    }

    /// Ratio attached to a plan label.
    pub fn label_value(&self, l: &Label) -> &GaussianRational {
        match *l {
            Label::Lambda0 => &self.lambda0,
            Label::Mu(i) => &self.pairs[i].mu,
            Label::Chi(i) => &self.pairs[i].chi,
        }
    }
}

/// A path label: the parameter itself or one of the two ratios of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Lambda0,
    Mu(usize),
    Chi(usize),
}

mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact_arith::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Labels `w_1, …, w_K` in application order, ending with `λ0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImplementationPlan {
    pub labels: Vec<Label>,
    pub target: GaussianRational,
    #[serde(with = "rational_str")]
    pub eps: Rational,
    /// Trailing `λ0` steps, cover steps and steps of the final contraction.
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    /// True when the target sat near the attracting fixed point and only `λ0` is used.
    pub forward_only: bool,
}

impl ImplementationPlan {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_formulas() {
        let p = 320;
        let z0 = HpComplex::from_int(1, p);
        let m = hp::from_rational(&rat(1, 17), p);
        let (alo, ahi) = SectorSpec::arg_bounds(p);
        let rm = RoundingMode::ToEven;
        let mid = alo
            .add(&ahi, p, rm)
            .div(&astro_float::BigFloat::from_word(2, p), p, rm);
        let alpha = HpComplex::new(
            hp::cos(&mid, p).mul(&m, p, rm),
            hp::sin(&mid, p).mul(&m, p, rm),
            p,
        );
        let (mu, chi) = seed_pair(&z0, &alpha).unwrap();
        let g = crate::moebius::hp_eval(
            &[
                mu.clone(),
                mu.clone(),
                HpComplex::from_int(1, p),
                HpComplex::from_int(1, p).add(&chi),
            ],
            &z0,
        );
        let tol = disk_pow2(-100, p);
        assert!(g.sub(&z0).abs().sub(&tol, p, rm).is_negative());
        let d = g_derivative(&mu, &chi, &z0);
        assert!(d.sub(&alpha).abs().sub(&tol, p, rm).is_negative());
    }

    #[test]
    fn degenerate_seeds() {
        let p = 128;
        let a = default_alpha(p);
        assert!(matches!(
            seed_pair(&HpComplex::from_int(0, p), &a),
            Err(FastImplError::DegenerateSeed(_))
        ));
        assert!(matches!(
            seed_pair(&HpComplex::from_int(-1, p), &a),
            Err(FastImplError::DegenerateSeed(_))
        ));
        assert!(matches!(
            seed_pair(&HpComplex::from_int(1, p), &HpComplex::zero(p)),
            Err(FastImplError::DegenerateSeed(_))
        ));
        // α = z0/(z0+1) = 1/2 for z0 = 1.
        let half = HpComplex::from_gq(&GaussianRational::from_ratio(1, 2), p);
        assert!(matches!(
            seed_pair(&HpComplex::from_int(1, p), &half),
            Err(FastImplError::DegenerateSeed(_))
        ));
    }

    #[test]
    fn sector_membership() {
        let a = default_alpha(HP_PREC);
        assert!(SectorSpec::contains_c64(a.to_c64()));
        let q = a.to_gq_rounded(64);
        assert_eq!(SectorSpec::contains(&q), Some(true));
        assert_eq!(
            SectorSpec::contains(&GaussianRational::from_ratio(1, 16)),
            Some(false)
        );
        let big = q.scale(&rat(2, 1));
        assert_eq!(SectorSpec::contains(&big), Some(false));
        assert!(!SectorSpec::contains_c64(Complex64::new(0.06, 0.0)));
    }
}

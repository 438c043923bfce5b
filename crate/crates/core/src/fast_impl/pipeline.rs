//! From a target `P` and tolerance `ε` to a path of labels and an explicit tree.

use astro_float::RoundingMode;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::disk::{generate_disk, hp_inside, inner_dyadic_disk, log2_approx};
use super::{FastImplError, FastImplementer, ImplementationPlan, Label, MARGIN_BITS};
use crate::exact_arith::{
    closure_in_disk, contains_point, disk_in_disk, rat, sqrt_bounds, GaussianRational, Membership,
    Rational, RationalDisk,
};
use crate::graph_core::{implement_on_path, PartitionPair, RootedGraph};
use crate::hp::{self, HpComplex};
use crate::moebius::{disk_image, f_lambda, ExactMoebius, SpherePoint};
use crate::regions::is_exceptional_candidate;

const MAX_STEPS: usize = 100_000;

/// Input-independent data for [`close_to_p`]: nested disks `D0 ⊃ D1 ⊃ D2 ⊃ D3` around the
/// attracting fixed point `a` of `f_{λ0}`, with `D_k` the complement of `f^{N+k}(U)`.
#[derive(Clone, Debug)]
pub struct ClosePrecomp {
    pub f: ExactMoebius,
    pub f_inv: ExactMoebius,
    pub n: usize,
    pub disks: [RationalDisk; 4],
    /// Disk around `a` on which `|f'| ≤ eta`.
    pub v: RationalDisk,
    pub eta: Rational,
    /// Lower bound on the gaps between `∂D0, ∂D1` and between `∂D2, ∂D3`.
    pub gap: Rational,
    /// `f^{-(N+3)}`.
    pub h: ExactMoebius,
}

fn dyadic_floor(x: &Rational, bits: u32) -> Rational {
    let den = BigInt::one() << bits as usize;
    Rational::new(
        (x * Rational::from_integer(den.clone()))
            .floor()
            .to_integer(),
        den,
    )
}

/// Rational lower bound on `r_outer - |c_outer - c_inner| - r_inner`.
fn gap_lower(inner: &RationalDisk, outer: &RationalDisk) -> Rational {
    let bits = (40 - log2_approx(outer.radius_sq()) / 2).max(40) as u32;
    let (ro, _) = sqrt_bounds(outer.radius_sq(), bits);
    let (_, ri) = sqrt_bounds(inner.radius_sq(), bits);
    let (_, dist) = sqrt_bounds(&(outer.center() - inner.center()).norm_sqr(), bits);
    ro - dist - ri
}

impl ClosePrecomp {
    pub fn new(
        lam: &GaussianRational,
        u: &RationalDisk,
        a: &HpComplex,
    ) -> Result<Self, FastImplError> {
        let f = f_lambda(lam)?;
        let f_inv = f.inverse();
        let one = GaussianRational::one();

        // V = B(â, ρ) with |λ| ≤ eta (|1+â| - ρ)^2, checked exactly on squares.
        let a_hat = a.to_gq_rounded(60);
        let fa = (lam.to_complex64() / (1.0 + a_hat.to_complex64()).powi(2)).norm();
        if fa >= 1.0 {
            return Err(FastImplError::Internal(
                "f_λ0 does not contract at its attracting point".into(),
            ));
        }
        let eta = dyadic_floor(
            &Rational::from_float(((1.0 + fa) / 2.0).max(0.9)).unwrap(),
            20,
        );
        let (l_lo, _) = sqrt_bounds(&(&one + &a_hat).norm_sqr(), 64);
        let lam2 = lam.norm_sqr();
        let bound_ok = |rho: &Rational| {
            let m = &l_lo - rho;
            m.is_positive() && &(&(&m * &m) * &(&m * &m)) * &(&eta * &eta) > lam2
        };
        let l_f = crate::exact_arith::rat_to_f64(&l_lo);
        let t = (lam.to_complex64().norm() / crate::exact_arith::rat_to_f64(&eta)).sqrt();
        let mut rho = dyadic_floor(
            &Rational::from_float(((l_f - t) / 2.0).max(1e-9)).unwrap(),
            40,
        );
        let mut tries = 0;
        while !bound_ok(&rho) {
            rho /= Rational::from_integer(BigInt::from(2));
            tries += 1;
            if tries > 60 || rho.is_zero() {
                return Err(FastImplError::Internal(
                    "no contraction disk around the attracting point".into(),
                ));
            }
        }
        let v = RationalDisk::from_center_radius(&a_hat, &rho).expect("positive radius");

        // Smallest N with the pole of f^N in U and the complement of f^N(U) inside V.
        let mut fnm = f.clone();
        let mut found = None;
        for n in 1..=2000 {
            if let SpherePoint::Finite(p) = fnm.pole() {
                if contains_point(u, &p) == Membership::Inside {
                    let img: Option<Vec<GaussianRational>> =
                        u.points().iter().map(|q| fnm.eval(q)).collect();
                    if let Some(img) = img {
                        if let Ok(d0) =
                            RationalDisk::new(img[0].clone(), img[1].clone(), img[2].clone())
                        {
                            if closure_in_disk(&d0, &v) {
                                found = Some((n, d0));
                                break;
                            }
                        }
                    }
                }
            }
            fnm = f.compose(&fnm);
        }
        let (n, d0) = found
            .ok_or_else(|| FastImplError::Internal("forward images of U never swallow V".into()))?;
        let d1 = disk_image(&f, &d0)?;
        let d2 = disk_image(&f, &d1)?;
        let d3 = disk_image(&f, &d2)?;
        if !(closure_in_disk(&d1, &d0) && closure_in_disk(&d2, &d1) && closure_in_disk(&d3, &d2)) {
            return Err(FastImplError::Internal(
                "disks around the attracting point are not nested".into(),
            ));
        }
        let g01 = gap_lower(&d1, &d0);
        let g23 = gap_lower(&d3, &d2);
        let gap = if g01 < g23 { g01 } else { g23 };
        if !gap.is_positive() {
            return Err(FastImplError::Internal("nested disks touch".into()));
        }
        let h = f.power(n as u64 + 3).inverse();
        Ok(ClosePrecomp {
            f,
            f_inv,
            n,
            disks: [d0, d1, d2, d3],
            v,
            eta,
            gap,
            h,
        })
    }
}

/// Result of [`close_to_p`]: `D ⊆ U` with `f^k(D) ⊆ B(P, ε)`.
#[derive(Clone, Debug)]
pub struct CloseToP {
    pub disk: RationalDisk,
    pub k: usize,
    pub pulled_back: usize,
}

fn hp_dist_below(z: &HpComplex, w: &GaussianRational, eps: &Rational) -> bool {
    let p = z.prec;
    let d = z.sub(&HpComplex::from_gq(w, p)).norm_sqr();
    d.sub(&hp::from_rational(&(eps * eps), p), p, RoundingMode::ToEven)
        .is_negative()
}

pub fn close_to_p(
    imp: &FastImplementer,
    p: &GaussianRational,
    eps: &Rational,
) -> Result<CloseToP, FastImplError> {
    if !eps.is_positive() {
        return Err(FastImplError::InvalidInput("ε must be positive".into()));
    }
    let cp = &imp.close;
    if hp_dist_below(&imp.a, p, &(eps * rat(1, 2))) {
        return Err(FastImplError::WrongBranch);
    }
    let half_gap = &cp.gap * rat(1, 2);
    let eps_eff = if *eps < half_gap {
        eps.clone()
    } else {
        half_gap
    };
    let mut q = p.clone();
    let mut pulled = 0usize;
    while contains_point(&cp.disks[2], &q) == Membership::Inside {
        q = cp
            .f_inv
            .eval(&q)
            .ok_or_else(|| FastImplError::Internal("pull-back hit the pole".into()))?;
        pulled += 1;
        if pulled > MAX_STEPS {
            return Err(FastImplError::Internal(
                "pull-back does not leave D2".into(),
            ));
        }
    }
    let target = RationalDisk::from_center_radius(&q, &eps_eff).expect("positive radius");
    let disk = disk_image(&cp.h, &target)?;
    if !disk_in_disk(&disk, &imp.u) {
        return Err(FastImplError::Internal(
            "pulled-back disk is not inside U".into(),
        ));
    }
    let k = pulled + cp.n + 3;
    let goal = RationalDisk::from_center_radius(p, &eps_eff).expect("positive radius");
    let image = disk_image(&cp.f.power(k as u64), &disk)?;
    if !disk_in_disk(&image, &goal) {
        return Err(FastImplError::Internal(
            "forward replay leaves B(P, ε)".into(),
        ));
    }
    Ok(CloseToP {
        disk,
        k,
        pulled_back: pulled,
    })
}

/// Result of [`fast_into_d1`]: `g_{j_1} ∘ … ∘ g_{j_m}(D_K) ⊆ D_1` and `z_i ∈ D_K`.
#[derive(Clone, Debug)]
pub struct IntoD1 {
    pub i: usize,
    pub js: Vec<usize>,
    pub d_k: RationalDisk,
}

fn fixed_point_in(imp: &FastImplementer, d: &RationalDisk) -> Option<usize> {
    let (c, r) = d.approx();
    imp.pairs.iter().position(|pr| {
        (pr.z_fix.to_c64() - c).norm() < r * 1.01 && hp_inside(&pr.z_fix, d, MARGIN_BITS)
    })
}

fn cover_index(imp: &FastImplementer, q: &GaussianRational) -> Option<usize> {
    let qf = q.to_complex64();
    imp.pairs.iter().position(|pr| {
        let (c, r) = pr.inner.approx();
        (qf - c).norm() < r * (1.0 + 1e-9) && contains_point(&pr.inner, q) == Membership::Inside
    })
}

pub fn fast_into_d1(imp: &FastImplementer, d1: &RationalDisk) -> Result<IntoD1, FastImplError> {
    if !disk_in_disk(d1, &imp.u) {
        return Err(FastImplError::GeometryPrecondition(
            "D1 is not inside U".into(),
        ));
    }
    let mut d = d1.clone();
    let mut js = Vec::new();
    loop {
        if let Some(i) = fixed_point_in(imp, &d) {
            return Ok(IntoD1 { i, js, d_k: d });
        }
        let j = cover_index(imp, d.center())
            .ok_or_else(|| FastImplError::Internal("center of D_n is not covered".into()))?;
        let inner = &imp.pairs[j].inner;
        if disk_in_disk(inner, &d) {
            return Ok(IntoD1 { i: j, js, d_k: d });
        }
        let dt = generate_disk(&d, inner)?;
        let next = disk_image(&imp.pairs[j].g_inv, &dt)?;
        let two_area = d.radius_sq() * Rational::from_integer(BigInt::from(2));
        if *next.radius_sq() < two_area {
            return Err(FastImplError::Internal(format!(
                "area did not double at step {}",
                js.len() + 1
            )));
        }
        let rounded = inner_dyadic_disk(&next, MARGIN_BITS);
        d = if *rounded.radius_sq() >= two_area {
            rounded
        } else {
            next
        };
        js.push(j);
        if js.len() > MAX_STEPS {
            return Err(FastImplError::Internal(
                "fast_into_d1 does not terminate".into(),
            ));
        }
    }
}

/// Exact forward replay: the image of `D_K` under the reported composition lies in `D1`.
pub fn replay_into_d1(
    imp: &FastImplementer,
    d1: &RationalDisk,
    res: &IntoD1,
) -> Result<bool, FastImplError> {
    let mut x = res.d_k.clone();
    for &j in res.js.iter().rev() {
        x = disk_image(&imp.pairs[j].g, &x)?;
    }
    Ok(disk_in_disk(&x, d1))
}

fn neg_log2(eps: &Rational) -> usize {
    (-log2_approx(eps)).max(0) as usize + 1
}

/// Smallest `K` found with `|g_i^K(0) - Q| < ε`, checked exactly.
pub fn quickly_to_zi(
    imp: &FastImplementer,
    i: usize,
    q: &GaussianRational,
    eps: &Rational,
) -> Result<usize, FastImplError> {
    let pair = imp
        .pairs
        .get(i)
        .ok_or_else(|| FastImplError::InvalidInput(format!("no pair {i}")))?;
    if !eps.is_positive() {
        return Err(FastImplError::InvalidInput("ε must be positive".into()));
    }
    let bits = neg_log2(eps);
    let prec = 192 + 2 * bits;
    let z = HpComplex {
        prec,
        ..pair.z_fix.clone()
    };
    if !hp_dist_below(&z, q, eps) {
        return Err(FastImplError::GeometryPrecondition(
            "z_i is not within ε of Q".into(),
        ));
    }
    let m = pair.g.to_hp(prec);
    let eps2 = eps * eps;
    let mut w = HpComplex::zero(prec);
    let cap = 64 * bits + 400;
    let mut exact_tries = 0;
    for k in 1..=cap {
        w = crate::moebius::hp_eval(&m, &w);
        if hp_dist_below(&w, q, &(eps * (Rational::one() - rat(1, 1 << 20)))) {
            let v = pair
                .g
                .power(k as u64)
                .eval(&GaussianRational::zero())
                .ok_or_else(|| FastImplError::Internal("orbit of 0 hits the pole".into()))?;
            if (&v - q).norm_sqr() < eps2 {
                return Ok(k);
            }
            exact_tries += 1;
            if exact_tries > 8 {
                break;
            }
        }
    }
    Err(FastImplError::Internal(
        "no iterate of 0 lands in B(Q, ε)".into(),
    ))
}

/// Exact `(Z^in, Z^out)` of the path gluing of the label blocks.
fn plan_pair(imp: &FastImplementer, labels: &[Label]) -> Result<PartitionPair, FastImplError> {
    let one = GaussianRational::one();
    let lam_pair = PartitionPair {
        z_in: imp.lambda0.clone(),
        z_out: one.clone(),
    };
    let mut z_in = GaussianRational::zero();
    let mut z_out = one;
    for l in labels {
        let h = match *l {
            Label::Lambda0 => &lam_pair,
            Label::Mu(i) => &imp.pairs.get(i).ok_or_else(|| bad_label(i))?.mu_pair,
            Label::Chi(i) => &imp.pairs.get(i).ok_or_else(|| bad_label(i))?.chi_pair,
        };
        let total = &z_in + &z_out;
        z_in = &h.z_in * &z_out;
        z_out = &h.z_out * &total;
    }
    Ok(PartitionPair { z_in, z_out })
}

fn bad_label(i: usize) -> FastImplError {
    FastImplError::InvalidInput(format!("label refers to missing pair {i}"))
}

/// `|Z^in/Z^out - P|^2 < ε^2`, compared without dividing.
fn within(pair: &PartitionPair, p: &GaussianRational, eps: &Rational) -> bool {
    if pair.z_out.is_zero() {
        return false;
    }
    let diff = &pair.z_in - &(p * &pair.z_out);
    diff.norm_sqr() < &(eps * eps) * &pair.z_out.norm_sqr()
}

pub fn run_fast_implementation(
    imp: &FastImplementer,
    p: &GaussianRational,
    eps: &Rational,
) -> Result<ImplementationPlan, FastImplError> {
    if !eps.is_positive() {
        return Err(FastImplError::InvalidInput("ε must be positive".into()));
    }
    let plan = if hp_dist_below(&imp.a, p, &(eps * rat(1, 2))) {
        // Iterates of 0 converge to the attracting fixed point.
        let mut x = GaussianRational::zero();
        let mut k = 0usize;
        loop {
            x =
                imp.close.f.eval(&x).ok_or_else(|| {
                    FastImplError::Internal("critical orbit hits the pole".into())
                })?;
            k += 1;
            if (&x - p).norm_sqr() < eps * eps {
                break;
            }
            if k > MAX_STEPS {
                return Err(FastImplError::Internal(
                    "critical orbit does not reach B(P, ε)".into(),
                ));
            }
        }
        ImplementationPlan {
            labels: vec![Label::Lambda0; k],
            target: p.clone(),
            eps: eps.clone(),
            k1: k,
            k2: 0,
            k3: 0,
            forward_only: true,
        }
    } else {
        let close = close_to_p(imp, p, eps)?;
        let d1 = inner_dyadic_disk(&close.disk, MARGIN_BITS);
        let into = fast_into_d1(imp, &d1)?;
        let r2 = into.d_k.radius_sq();
        let bits = (64 - log2_approx(r2) / 2).max(64) as u32;
        let (eps_q, _) = sqrt_bounds(r2, bits);
        let k3 = quickly_to_zi(imp, into.i, into.d_k.center(), &eps_q)?;
        let mut labels = Vec::with_capacity(2 * (k3 + into.js.len()) + close.k);
        for _ in 0..k3 {
            labels.push(Label::Chi(into.i));
            labels.push(Label::Mu(into.i));
        }
        for &j in into.js.iter().rev() {
            labels.push(Label::Chi(j));
            labels.push(Label::Mu(j));
        }
        labels.extend(std::iter::repeat_n(Label::Lambda0, close.k));
        ImplementationPlan {
            labels,
            target: p.clone(),
            eps: eps.clone(),
            k1: close.k,
            k2: into.js.len(),
            k3,
            forward_only: false,
        }
    };
    let pair = plan_pair(imp, &plan.labels)?;
    if !within(&pair, p, eps) {
        return Err(FastImplError::Internal(
            "plan replays outside B(P, ε)".into(),
        ));
    }
    Ok(plan)
}

/// Glue the label trees along a path; returns the tree and its exact partition pair.
pub fn emit_tree(
    plan: &ImplementationPlan,
    imp: &FastImplementer,
) -> Result<(RootedGraph, PartitionPair), FastImplError> {
    if plan.labels.last() != Some(&Label::Lambda0) {
        return Err(FastImplError::InvalidInput("plan must end with λ0".into()));
    }
    let single = RootedGraph::single_vertex(imp.delta);
    let mut blocks = Vec::with_capacity(plan.labels.len());
    for l in &plan.labels {
        blocks.push(match *l {
            Label::Lambda0 => single.clone(),
            Label::Mu(i) => imp
                .pairs
                .get(i)
                .ok_or_else(|| bad_label(i))?
                .mu_tree
                .clone(),
            Label::Chi(i) => imp
                .pairs
                .get(i)
                .ok_or_else(|| bad_label(i))?
                .chi_tree
                .clone(),
        });
    }
    let tree = implement_on_path(&blocks)?;
    let pair = plan_pair(imp, &plan.labels)?;
    if pair.z_out.is_zero() {
        return Err(match is_exceptional_candidate(&imp.lambda0, imp.delta) {
            Ok(true) => FastImplError::ExceptionalParameter,
            _ => FastImplError::Internal("Z^out vanishes away from the exceptional set".into()),
        });
    }
    if !within(&pair, &plan.target, &plan.eps) {
        return Err(FastImplError::Internal(
            "emitted tree misses B(P, ε)".into(),
        ));
    }
    Ok((tree, pair))
}

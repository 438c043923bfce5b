//! Certified search for a fast implementer.
//!
//! Candidate ratios are generated in double precision as orbits of a two-step "hub" map
//! `ψ_{y1} ∘ ψ_{y2}`, where `ψ_y(x)` is the ratio of the tree `root - c - {T_x, T_y}`. The hub
//! is chosen with an attracting fixed point next to the wanted ratio, so its orbits form a
//! dense cloud there, and every cloud point carries a short recipe for its tree. Selected
//! candidates are then rebuilt exactly and every condition is checked on the exact maps.

use std::collections::{HashMap, HashSet};

use astro_float::RoundingMode;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use super::disk::{hp_inside, hp_outside_closure, inner_dyadic_disk};
use super::pipeline::ClosePrecomp;
use super::{
    default_alpha, search_failed, seed_pair, Certificate, CertificateChecks, FastImplError,
    FastImplementer, ImplementerPair, SearchDiagnostics, SectorSpec, HP_PREC, MARGIN_BITS,
};
use crate::exact_arith::{
    closure_in_disk, contains_point, disk_in_disk, rat_int, sqrt_bounds, Cell, GaussianRational,
    Membership, Rational, RationalDisk,
};
use crate::graph_core::{
    enumerate_catalog, tree_partition, PartitionPair, Ratio, Shape, TreeCatalog,
};
use crate::hp::{self, HpComplex};
use crate::moebius::{
    attracting_fixed_point, classify, derivative_modulus_bounds, disk_image, f_lambda, g_map,
    repelling_fixed_point, MoebiusKind, SpherePoint,
};
use crate::regions::{cardioid_contains, shearer_contains, RegionStatus};

type C = Complex64;

const NONE: u32 = u32::MAX;

/// Gaussian integers tried by [`scan_parameters`], in order.
pub const SEARCH_GRID: &[(i64, i64)] = &[
    (-2, 1),
    (-1, 1),
    (-3, 1),
    (-2, 2),
    (-1, 2),
    (-3, 2),
    (1, 1),
    (0, 1),
];

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Radius of `U` is `2^-log2_radius`.
    pub log2_radius: u32,
    /// Cloud points that may be examined before giving up.
    pub budget: u64,
    pub max_cover_depth: u32,
    pub repair_rounds: usize,
    /// Shifts the covering lattice; different seeds give different certificates.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            log2_radius: 11,
            budget: 2_000_000_000,
            max_cover_depth: 12,
            repair_rounds: 6,
            seed: 0,
        }
    }
}

/// Catalog size (maximum vertex count) used by default for a degree bound.
pub fn default_catalog_size(delta: usize) -> usize {
    match delta {
        0..=3 => 13,
        4 => 9,
        5 => 8,
        _ => 7,
    }
}

pub fn search_fast_implementer(
    lambda0: &GaussianRational,
    delta: usize,
    catalog: &TreeCatalog,
    budget: u64,
) -> Result<FastImplementer, FastImplError> {
    search_with(
        lambda0,
        delta,
        catalog,
        &SearchOptions {
            budget,
            ..Default::default()
        },
    )
}

/// Try the parameters of [`SEARCH_GRID`] outside the cardioid and return the first success.
pub fn scan_parameters(
    delta: usize,
    opts: &SearchOptions,
) -> Result<(GaussianRational, FastImplementer), FastImplError> {
    let mut last = None;
    for &(a, b) in SEARCH_GRID {
        let lam = GaussianRational::from_parts(a, 1, b, 1);
        let outside = matches!(
            cardioid_contains(&lam, delta).map(|v| v.status),
            Ok(RegionStatus::Outside)
        );
        if !outside {
            continue;
        }
        let cat = enumerate_catalog(delta, &lam, default_catalog_size(delta));
        match search_with(&lam, delta, &cat, opts) {
            Ok(imp) => return Ok((lam, imp)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        search_failed(
            &GaussianRational::zero(),
            "no grid parameter outside the cardioid",
        )
    }))
}

fn c_psi(lam: C, y: C, x: C) -> C {
    let k = (1.0 + x) * (1.0 + y);
    lam * k / (k + lam)
}

fn exact_psi(
    lam: &GaussianRational,
    y: &GaussianRational,
    x: &GaussianRational,
) -> Option<GaussianRational> {
    let one = GaussianRational::one();
    let k = &(&one + x) * &(&one + y);
    let den = &k + lam;
    (lam * &k).checked_div(&den).ok()
}

/// Shape of the tree `root - c - {x, y}` realizing `ψ_y(x)`.
fn psi_shape(y: &Shape, x: &Shape) -> Shape {
    Shape {
        children: vec![Shape {
            children: vec![x.clone(), y.clone()],
        }],
    }
}

fn mob(lam: C, y: C) -> [C; 4] {
    let k = 1.0 + y;
    [lam * k, lam * k, k, k + lam]
}

fn mat_mul(a: &[C; 4], b: &[C; 4]) -> [C; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn mob_apply(m: &[C; 4], x: C) -> C {
    (m[0] * x + m[1]) / (m[2] * x + m[3])
}

/// Attracting fixed point and its multiplier.
fn mob_attracting(m: &[C; 4]) -> Option<(C, C)> {
    let [a, b, c, d] = *m;
    if c.norm() == 0.0 {
        return None;
    }
    let disc = ((d - a) * (d - a) + 4.0 * b * c).sqrt();
    let det = a * d - b * c;
    let zs = [(a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c)];
    let ms = zs.map(|z| det / ((c * z + d) * (c * z + d)));
    let k = if ms[0].norm() <= ms[1].norm() { 0 } else { 1 };
    Some((zs[k], ms[k]))
}

/// Nearest-neighbour queries over points sorted by real part.
struct Nearest {
    pts: Vec<(f64, f64, u32)>,
}

impl Nearest {
    fn new(v: &[C]) -> Self {
        let mut pts: Vec<(f64, f64, u32)> = v
            .iter()
            .enumerate()
            .filter(|(_, z)| z.re.is_finite() && z.im.is_finite())
            .map(|(i, z)| (z.re, z.im, i as u32))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        Nearest { pts }
    }

    fn nearest(&self, q: C) -> Option<(usize, f64)> {
        if self.pts.is_empty() || !q.re.is_finite() || !q.im.is_finite() {
            return None;
        }
        let start = self.pts.partition_point(|p| p.0 < q.re);
        let mut best = (usize::MAX, f64::INFINITY);
        let d2 = |p: &(f64, f64, u32)| (p.0 - q.re).powi(2) + (p.1 - q.im).powi(2);
        for p in self.pts[start..].iter() {
            if (p.0 - q.re).powi(2) > best.1 {
                break;
            }
            let d = d2(p);
            if d < best.1 {
                best = (p.2 as usize, d);
            }
        }
        for p in self.pts[..start].iter().rev() {
            if (p.0 - q.re).powi(2) > best.1 {
                break;
            }
            let d = d2(p);
            if d < best.1 {
                best = (p.2 as usize, d);
            }
        }
        Some((best.0, best.1.sqrt()))
    }
}

/// Catalog values `V` and the one-step products `V2 = V ∪ ψ(V, V)`.
struct Base {
    lam: C,
    lam_exact: GaussianRational,
    v_exact: Vec<GaussianRational>,
    v_shape: Vec<Shape>,
    v_size: Vec<u32>,
    /// `V` first, then pairs; `(i, NONE)` marks a plain catalog value.
    v2: Vec<C>,
    v2_src: Vec<(u32, u32)>,
}

impl Base {
    fn new(catalog: &TreeCatalog) -> Self {
        let lam_exact = catalog.lambda0.clone();
        let lam = lam_exact.to_complex64();
        let minus_one = GaussianRational::from_int(-1);
        let mut v_exact = Vec::new();
        let mut v_shape = Vec::new();
        for e in &catalog.entries {
            if let SpherePoint::Finite(z) = &e.ratio {
                if *z != minus_one {
                    v_exact.push(z.clone());
                    v_shape.push(e.shape.clone());
                }
            }
        }
        let v: Vec<C> = v_exact.iter().map(GaussianRational::to_complex64).collect();
        let v_size = v_shape.iter().map(|s| s.size() as u32).collect();
        let mut v2 = v.clone();
        let mut v2_src: Vec<(u32, u32)> = (0..v.len() as u32).map(|i| (i, NONE)).collect();
        for i in 0..v.len() {
            for j in i..v.len() {
                let z = c_psi(lam, v[j], v[i]);
                if z.re.is_finite() && z.im.is_finite() {
                    v2.push(z);
                    v2_src.push((i as u32, j as u32));
                }
            }
        }
        Base {
            lam,
            lam_exact,
            v_exact,
            v_shape,
            v_size,
            v2,
            v2_src,
        }
    }

    fn v_len(&self) -> usize {
        self.v_exact.len()
    }

    fn base_size(&self, k: usize) -> u32 {
        match self.v2_src[k] {
            (i, NONE) => self.v_size[i as usize],
            (i, j) => self.v_size[i as usize] + self.v_size[j as usize] + 2,
        }
    }

    fn exact(&self, k: usize) -> Option<(GaussianRational, Shape)> {
        match self.v2_src[k] {
            (i, NONE) => Some((
                self.v_exact[i as usize].clone(),
                self.v_shape[i as usize].clone(),
            )),
            (i, j) => {
                let (i, j) = (i as usize, j as usize);
                let z = exact_psi(&self.lam_exact, &self.v_exact[j], &self.v_exact[i])?;
                Some((z, psi_shape(&self.v_shape[j], &self.v_shape[i])))
            }
        }
    }
}

/// `H = ψ_{y1} ∘ ψ_{y2}` with `y1 ∈ V2`, `y2 ∈ V`.
#[derive(Clone, Debug)]
struct Hub {
    y1: usize,
    y2: usize,
    m: [C; 4],
    fix: C,
    step_size: u32,
}

fn find_hub(base: &Base, nn2: &Nearest, target: C) -> Option<Hub> {
    let lam = base.lam;
    let v = &base.v2[..base.v_len()];
    let mut scored: Vec<(f64, usize, usize)> = Vec::new();
    for (j, &y2) in v.iter().enumerate() {
        let u = c_psi(lam, y2, target);
        let need = lam / ((1.0 + u) * (lam / target - 1.0)) - 1.0;
        if let Some((k, d)) = nn2.nearest(need) {
            scored.push((d, j, k));
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best: Option<(f64, Hub)> = None;
    for &(_, j, k) in scored.iter().take(2000) {
        let m = mat_mul(&mob(lam, base.v2[k]), &mob(lam, v[j]));
        let Some((p, mult)) = mob_attracting(&m) else {
            continue;
        };
        if mult.norm() >= 0.5 || !p.re.is_finite() {
            continue;
        }
        let d = (p - target).norm();
        if best.as_ref().is_none_or(|b| d < b.0) {
            let step_size = base.base_size(k) + base.v_size[j] + 4;
            best = Some((
                d,
                Hub {
                    y1: k,
                    y2: j,
                    m,
                    fix: p,
                    step_size,
                },
            ));
        }
    }
    best.map(|b| b.1)
}

/// Iterate the hub over `base[..count]`, reporting points within `radius` of `target`.
/// Returns the number of points evaluated and whether the budget ran out.
fn stream_cloud(
    hub: &Hub,
    base: &[C],
    max_iter: u32,
    target: C,
    radius: f64,
    budget: &mut u64,
    mut visit: impl FnMut(u32, usize, C),
) -> (u64, bool) {
    let mut x: Vec<C> = base.to_vec();
    let mut examined = 0u64;
    for n in 1..=max_iter {
        let mut spread = 0.0f64;
        for (k, z) in x.iter_mut().enumerate() {
            if *budget == 0 {
                return (examined, true);
            }
            *budget -= 1;
            examined += 1;
            *z = mob_apply(&hub.m, *z);
            let d = (*z - target).norm();
            if d < radius {
                visit(n, k, *z);
            }
            let s = (*z - hub.fix).norm();
            if s.is_finite() {
                spread = spread.max(s);
            }
        }
        if n > 5 && spread < radius / 100.0 {
            break;
        }
    }
    (examined, false)
}

/// Rebuild the ratio `H^n(x)` exactly together with its shape.
fn exact_orbit(base: &Base, hub: &Hub, n: u32, k: usize) -> Option<(GaussianRational, Shape)> {
    let (mut z, mut s) = base.exact(k)?;
    let (y1, y1s) = base.exact(hub.y1)?;
    let y2 = &base.v_exact[hub.y2];
    let y2s = &base.v_shape[hub.y2];
    for _ in 0..n {
        z = exact_psi(&base.lam_exact, y2, &z)?;
        z = exact_psi(&base.lam_exact, &y1, &z)?;
        s = psi_shape(&y1s, &psi_shape(y2s, &s));
    }
    Some((z, s))
}

#[derive(Clone, Copy, Debug)]
struct Cand {
    size: u32,
    n: u32,
    base: u32,
    cen: C,
    rad: f64,
}

impl Cand {
    fn key(&self) -> (u32, u32, u32) {
        (self.size, self.n, self.base)
    }
}

/// Why an exact candidate was rejected.
enum Reject {
    FixedPoint,
    Sector,
    NotLoxodromic,
    Other,
}

/// Data shared by every pair check.
pub(crate) struct PairContext<'a> {
    pub lam: &'a GaussianRational,
    pub delta: usize,
    pub u: &'a RationalDisk,
    pub chi_shape: &'a Shape,
    pub chi: &'a GaussianRational,
    pub chi_pair: &'a PartitionPair,
}

fn tree_ratio(
    shape: &Shape,
    lam: &GaussianRational,
    delta: usize,
) -> Result<
    (
        crate::graph_core::RootedGraph,
        PartitionPair,
        GaussianRational,
    ),
    FastImplError,
> {
    let tree = shape.to_graph(delta)?;
    let pair = tree_partition(&tree, lam)?;
    match pair.ratio() {
        Ratio::Finite(z) => Ok((tree, pair, z)),
        _ => Err(FastImplError::Internal(
            "catalog tree has no finite ratio".into(),
        )),
    }
}

/// The argument of `g'` over `closure(U)` lies in the sector with an HP margin.
fn sector_arg_ok(g: &crate::moebius::ExactMoebius, u: &RationalDisk) -> bool {
    let q = &(&g.c * u.center()) + &g.d;
    if q.is_zero() {
        return false;
    }
    let q2 = q.norm_sqr();
    let rho2 = &(&g.c.norm_sqr() * u.radius_sq()) / &q2;
    if rho2 >= Rational::one() {
        return false;
    }
    let p = HP_PREC;
    let rm = RoundingMode::ToEven;
    let w = g.det().checked_div(&(&q * &q)).expect("q is nonzero");
    let theta = HpComplex::from_gq(&w, p).arg();
    let (_, rho_hi) = sqrt_bounds(&rho2, 200);
    let two = astro_float::BigFloat::from_word(2, p);
    let spread = hp::asin(&hp::from_rational(&rho_hi, p), p).mul(&two, p, rm);
    let (lo, hi) = SectorSpec::arg_bounds(p);
    let tiny = super::disk_pow2(-200, p);
    let low_ok = theta
        .sub(&spread, p, rm)
        .sub(&lo, p, rm)
        .sub(&tiny, p, rm)
        .is_positive();
    let high_ok = hi
        .sub(&theta, p, rm)
        .sub(&spread, p, rm)
        .sub(&tiny, p, rm)
        .is_positive();
    low_ok && high_ok
}

fn certify_pair(
    ctx: &PairContext<'_>,
    mu_shape: &Shape,
    expected_mu: Option<&GaussianRational>,
    inner: Option<&RationalDisk>,
) -> Result<Result<ImplementerPair, Reject>, FastImplError> {
    let (mu_tree, mu_pair, mu) = match tree_ratio(mu_shape, ctx.lam, ctx.delta) {
        Ok(t) => t,
        Err(_) => return Ok(Err(Reject::Other)),
    };
    if let Some(e) = expected_mu {
        if *e != mu {
            return Err(FastImplError::Internal(
                "recipe ratio differs from the tree's ratio".into(),
            ));
        }
    }
    let Ok(g) = g_map(&mu, ctx.chi) else {
        return Ok(Err(Reject::Other));
    };
    if classify(&g).kind != MoebiusKind::Loxodromic {
        return Ok(Err(Reject::NotLoxodromic));
    }
    let Some(z) = attracting_fixed_point(&g, HP_PREC).and_then(|f| f.hp(HP_PREC)) else {
        return Ok(Err(Reject::NotLoxodromic));
    };
    if !hp_inside(&z, ctx.u, MARGIN_BITS) {
        return Ok(Err(Reject::FixedPoint));
    }
    let (lo17, hi16) = SectorSpec::modulus_bounds();
    match derivative_modulus_bounds(&g, ctx.u, 96) {
        Ok((lo, hi)) if lo > lo17 && hi < hi16 => {}
        _ => return Ok(Err(Reject::Sector)),
    }
    if !sector_arg_ok(&g, ctx.u) {
        return Ok(Err(Reject::Sector));
    }
    let Ok(img) = disk_image(&g, ctx.u) else {
        return Ok(Err(Reject::Other));
    };
    let inner = match inner {
        Some(d) => d.clone(),
        None => inner_dyadic_disk(&img, MARGIN_BITS),
    };
    if !disk_in_disk(&inner, &img) || !hp_inside(&z, &inner, MARGIN_BITS) {
        return Ok(Err(Reject::FixedPoint));
    }
    let chi_tree = ctx.chi_shape.to_graph(ctx.delta)?;
    Ok(Ok(ImplementerPair {
        mu_shape: mu_shape.clone(),
        chi_shape: ctx.chi_shape.clone(),
        mu_tree,
        chi_tree,
        mu,
        chi: ctx.chi.clone(),
        mu_pair,
        chi_pair: ctx.chi_pair.clone(),
        g_inv: g.inverse(),
        g,
        z_fix: z,
        inner,
    }))
}

/// Outcome of the quadtree cover check.
pub(crate) struct CoverReport {
    pub ok: bool,
    pub depth_used: u32,
    pub cells: usize,
    pub failing: Vec<Cell>,
}

/// Inner disks bucketed on a grid, for corner containment queries.
struct DiskIndex {
    origin: C,
    bucket: f64,
    approx: Vec<(C, f64)>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl DiskIndex {
    fn new(origin: C, disks: &[RationalDisk]) -> Self {
        let approx: Vec<(C, f64)> = disks
            .iter()
            .map(|d| {
                let (c, r) = d.approx();
                (c - origin, r)
            })
            .collect();
        let bucket = approx.iter().map(|a| a.1).fold(0.0, f64::max).max(1e-300) * 2.0;
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, (c, r)) in approx.iter().enumerate() {
            let x0 = ((c.re - r) / bucket).floor() as i64;
            let x1 = ((c.re + r) / bucket).floor() as i64;
            let y0 = ((c.im - r) / bucket).floor() as i64;
            let y1 = ((c.im + r) / bucket).floor() as i64;
            for bx in x0..=x1 {
                for by in y0..=y1 {
                    buckets.entry((bx, by)).or_default().push(i);
                }
            }
        }
        DiskIndex {
            origin,
            bucket,
            approx,
            buckets,
        }
    }

    fn containing_cell(&self, cell: &Cell, disks: &[RationalDisk]) -> Option<usize> {
        let corners = cell.corners();
        let cf: Vec<C> = corners
            .iter()
            .map(|q| q.to_complex64() - self.origin)
            .collect();
        let mid = (cf[0] + cf[2]) / 2.0;
        let key = (
            (mid.re / self.bucket).floor() as i64,
            (mid.im / self.bucket).floor() as i64,
        );
        let list = self.buckets.get(&key)?;
        for &i in list {
            let (c, r) = self.approx[i];
            if cf.iter().all(|q| (q - c).norm() < r * (1.0 - 1e-9))
                && corners
                    .iter()
                    .all(|q| contains_point(&disks[i], q) == Membership::Inside)
            {
                return Some(i);
            }
        }
        None
    }
}

pub(crate) fn certify_cover(
    u: &RationalDisk,
    inners: &[RationalDisk],
    max_depth: u32,
) -> CoverReport {
    let (cf, _) = u.approx();
    let index = DiskIndex::new(cf, inners);
    let (_, r_hi) = sqrt_bounds(u.radius_sq(), 64);
    // A dyadic bounding square of closure(U).
    let side_bits = -(super::disk::log2_approx(&r_hi)) + 2;
    let side = if side_bits >= 0 {
        Rational::new(BigInt::one(), BigInt::one() << side_bits as usize)
    } else {
        Rational::from_integer(BigInt::one() << (-side_bits) as usize)
    };
    let mut side = side;
    while side < &r_hi * rat_int(2) {
        side *= rat_int(2);
    }
    let c = u.center();
    let half = &side / rat_int(2);
    let root = Cell {
        x0: &c.re - &half,
        y0: &c.im - &half,
        side,
    };
    let mut stack = vec![(root, 0u32)];
    let mut report = CoverReport {
        ok: true,
        depth_used: 0,
        cells: 0,
        failing: Vec::new(),
    };
    while let Some((cell, depth)) = stack.pop() {
        if cell.misses_closure(u) || index.containing_cell(&cell, inners).is_some() {
            report.cells += 1;
            report.depth_used = report.depth_used.max(depth);
            continue;
        }
        if depth >= max_depth {
            report.ok = false;
            report.cells += 1;
            if report.failing.len() < 20_000 {
                report.failing.push(cell);
            }
            continue;
        }
        for sub in cell.split() {
            stack.push((sub, depth + 1));
        }
    }
    report
}

/// Conditions (U-1), (U-2) and (U-3) for a candidate `U`.
fn check_u(lam: &GaussianRational, u: &RationalDisk, a: &HpComplex) -> Result<(), String> {
    if !hp_outside_closure(a, u, MARGIN_BITS) {
        return Err("attracting fixed point of f_λ0 is not excluded from closure(U)".into());
    }
    let f = f_lambda(lam).map_err(|e| e.to_string())?;
    let img = disk_image(&f, u).map_err(|e| e.to_string())?;
    if !closure_in_disk(u, &img) {
        return Err("closure(U) is not inside f_λ0(U)".into());
    }
    Ok(())
}

fn fixed_points_of_f(lam: &GaussianRational) -> Result<(HpComplex, HpComplex), FastImplError> {
    let f = f_lambda(lam)?;
    let z0 = repelling_fixed_point(&f, HP_PREC).and_then(|p| p.hp(HP_PREC));
    let a = attracting_fixed_point(&f, HP_PREC).and_then(|p| p.hp(HP_PREC));
    match (z0, a) {
        (Some(z0), Some(a)) => Ok((z0, a)),
        _ => Err(search_failed(lam, "f_λ0 is not loxodromic")),
    }
}

fn validate(lam: &GaussianRational, delta: usize) -> Result<(), FastImplError> {
    if delta < 3 {
        return Err(search_failed(lam, "degree bound below 3"));
    }
    if lam.is_real() {
        return Err(search_failed(lam, "real parameter"));
    }
    if let Ok(v) = shearer_contains(lam, delta) {
        if v.status == RegionStatus::Inside {
            return Err(search_failed(
                lam,
                "parameter inside the Shearer disk: ratios stay bounded",
            ));
        }
    }
    Ok(())
}

fn checks_record(report: &CoverReport, max_depth: u32) -> CertificateChecks {
    CertificateChecks {
        fixed_points_margin_bits: MARGIN_BITS,
        sector_modulus: "exact rational bounds on |c z + d| over closure(U)".into(),
        sector_arg_margin_bits: 200,
        cover_max_depth: max_depth,
        cover_depth_used: report.depth_used,
        cover_cells: report.cells,
        u_inside_image: true,
        attracting_excluded_margin_bits: MARGIN_BITS,
        rational_boundary_points: true,
        all_loxodromic: true,
    }
}

pub fn search_with(
    lambda0: &GaussianRational,
    delta: usize,
    catalog: &TreeCatalog,
    opts: &SearchOptions,
) -> Result<FastImplementer, FastImplError> {
    validate(lambda0, delta)?;
    if catalog.delta != delta || catalog.lambda0 != *lambda0 {
        return Err(FastImplError::InvalidInput(
            "catalog was built for another parameter or degree bound".into(),
        ));
    }
    let mut diag = SearchDiagnostics {
        lambda0: lambda0.to_string(),
        ..Default::default()
    };
    let fail = |mut d: SearchDiagnostics, reason: &str| {
        d.reason = reason.into();
        FastImplError::SearchFailed(Box::new(d))
    };
    if opts.budget == 0 {
        diag.budget_exhausted = true;
        return Err(fail(diag, "budget is zero"));
    }
    let mut budget = opts.budget;

    let (z0, a) = fixed_points_of_f(lambda0)?;
    let (_, chi0) = seed_pair(&z0, &default_alpha(HP_PREC))?;
    let chi0 = chi0.to_c64();

    let base = Base::new(catalog);
    if base.v_len() < 2 {
        return Err(fail(diag, "catalog too small"));
    }
    let nn2 = Nearest::new(&base.v2);

    // The shared ratio χ, from a cloud over the catalog values.
    let chi_hub =
        find_hub(&base, &nn2, chi0).ok_or_else(|| fail(diag.clone(), "no hub near χ0"))?;
    let mut chi_best: Option<(f64, u32, usize)> = None;
    let (seen, out) = stream_cloud(
        &chi_hub,
        &base.v2[..base.v_len()],
        60,
        chi0,
        5e-4,
        &mut budget,
        |n, k, z| {
            let d = (z - chi0).norm();
            if chi_best.is_none_or(|b| d < b.0) {
                chi_best = Some((d, n, k));
            }
        },
    );
    diag.cloud_points += seen as usize;
    if out {
        diag.budget_exhausted = true;
        return Err(fail(diag, "budget exhausted while searching for χ"));
    }
    let (_, n, k) = chi_best.ok_or_else(|| fail(diag.clone(), "no catalog orbit reaches χ0"))?;
    let (chi, chi_shape) = exact_orbit(&base, &chi_hub, n, k)
        .ok_or_else(|| fail(diag.clone(), "χ recipe degenerates"))?;
    let (_, chi_pair, chi_check) = tree_ratio(&chi_shape, lambda0, delta)?;
    if chi_check != chi {
        return Err(FastImplError::Internal(
            "χ recipe differs from its tree".into(),
        ));
    }
    let chi_f = chi.to_complex64();

    // U: a dyadic disk around the repelling fixed point.
    let c = z0.to_gq_rounded(40);
    let r = Rational::new(BigInt::one(), BigInt::one() << opts.log2_radius as usize);
    let u = RationalDisk::from_center_radius(&c, &r).expect("positive radius");
    check_u(lambda0, &u, &a).map_err(|e| fail(diag.clone(), &e))?;
    let cf = c.to_complex64();
    let rf = crate::exact_arith::rat_to_f64(&r);

    // Candidate μ: the fixed point of g moves with μ like μ(z) = z(1+z+χ)/(1+z).
    let mu_star = cf * (1.0 + cf + chi_f) / (1.0 + cf);
    let dmu = 1.0 + chi_f / ((1.0 + cf) * (1.0 + cf));
    let r_mu = 1.5 * dmu.norm() * rf;
    let mu_hub =
        find_hub(&base, &nn2, mu_star).ok_or_else(|| fail(diag.clone(), "no hub near μ*"))?;

    let s = 1.0 + cf + chi_f;
    let s_abs = s.norm();
    let s2 = s.norm_sqr() - rf * rf;
    let spread = 2.0 * (rf / s_abs).asin();
    let (alo, ahi) = (
        2.0 * std::f64::consts::PI / 3.0 - 0.01,
        2.0 * std::f64::consts::PI / 3.0,
    );
    let img_of = |mu: C| -> (C, f64) {
        let cen = mu * (1.0 - chi_f * s.conj() / s2);
        let rad = (mu * chi_f).norm() * rf / s2;
        (cen, rad)
    };
    let r_img = img_of(mu_star).1;
    let pool_cell = 0.1 * r_img;
    let pool_origin = cf - C::new(1.3 * rf, 1.3 * rf);
    let cell_of = |z: C| -> (i32, i32) {
        let w = (z - pool_origin) / pool_cell;
        (w.re.floor() as i32, w.im.floor() as i32)
    };
    let mut pool: HashMap<(i32, i32), Cand> = HashMap::new();
    let (seen, out) = stream_cloud(
        &mu_hub,
        &base.v2,
        40,
        mu_star,
        r_mu,
        &mut budget,
        |n, k, mu| {
            // Attracting fixed point of g: z^2 + (1+χ-μ) z - μ = 0, the root nearer to c.
            let b = 1.0 + chi_f - mu;
            let disc = (b * b + 4.0 * mu).sqrt();
            let (r1, r2) = ((-b + disc) / 2.0, (-b - disc) / 2.0);
            let z = if (r1 - cf).norm() < (r2 - cf).norm() {
                r1
            } else {
                r2
            };
            if (z - cf).norm() > 0.95 * rf {
                return;
            }
            let w = mu * chi_f / (s * s);
            let (m, th) = (w.norm(), w.arg());
            let lo_m = m * s_abs * s_abs / ((s_abs + rf) * (s_abs + rf));
            let hi_m = m * s_abs * s_abs / ((s_abs - rf) * (s_abs - rf));
            if lo_m <= (1.0 / 17.0) * (1.0 + 1e-9) || hi_m >= (1.0 / 16.0) * (1.0 - 1e-9) {
                return;
            }
            if th - spread <= alo + 1e-9 || th + spread >= ahi - 1e-9 {
                return;
            }
            let (cen, rad) = img_of(mu);
            let key = cell_of(cen);
            let cand = Cand {
                size: base.base_size(k) + n * mu_hub.step_size,
                n,
                base: k as u32,
                cen,
                rad,
            };
            match pool.get(&key) {
                Some(old) if old.key() <= cand.key() => {}
                _ => {
                    pool.insert(key, cand);
                }
            }
        },
    );
    diag.cloud_points += seen as usize;
    diag.budget_exhausted = out;
    if pool.is_empty() {
        return Err(fail(diag, "no cloud point satisfies the sector condition"));
    }

    // Hexagonal lattice of targets; each needs one image disk containing B(L, ρ).
    let rho = 0.8 * r_img;
    let step = 3f64.sqrt() * rho;
    let shift = {
        let t = (opts.seed as f64 * 0.618_033_988_749_895).fract();
        C::new(t * step, (t * 1.618_033_988_749_895).fract() * 1.5 * rho)
    };
    let reach = rf + rho;
    let rows = (reach / (1.5 * rho)).ceil() as i64 + 1;
    let cols = (reach / step).ceil() as i64 + 1;
    let mut lattice = Vec::new();
    for iy in -rows..=rows {
        for ix in -cols..=cols {
            let off = if iy.rem_euclid(2) == 1 {
                step / 2.0
            } else {
                0.0
            };
            let l = cf + shift + C::new(ix as f64 * step + off, iy as f64 * 1.5 * rho);
            if (l - cf).norm() <= reach {
                lattice.push(l);
            }
        }
    }
    let candidates_for = |center: C, need: f64| -> Vec<Cand> {
        let span = (0.3 * r_img / pool_cell).ceil() as i32 + 1;
        let (kx, ky) = cell_of(center);
        let mut out: Vec<Cand> = Vec::new();
        for dx in -span..=span {
            for dy in -span..=span {
                if let Some(c) = pool.get(&(kx + dx, ky + dy)) {
                    if (c.cen - center).norm() + need + 0.05 * r_img <= c.rad {
                        out.push(*c);
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            a.key()
                .cmp(&b.key())
                .then((a.cen - center).norm().total_cmp(&(b.cen - center).norm()))
        });
        out
    };

    let ctx = PairContext {
        lam: lambda0,
        delta,
        u: &u,
        chi_shape: &chi_shape,
        chi: &chi,
        chi_pair: &chi_pair,
    };
    let mut pairs: Vec<ImplementerPair> = Vec::new();
    let mut used: HashSet<(u32, u32)> = HashSet::new();
    let mut rejected: HashSet<(u32, u32)> = HashSet::new();
    let mut try_build = |cands: &[Cand],
                         pairs: &mut Vec<ImplementerPair>,
                         diag: &mut SearchDiagnostics|
     -> Result<bool, FastImplError> {
        for cand in cands.iter().take(8) {
            let id = (cand.n, cand.base);
            if used.contains(&id) {
                return Ok(true);
            }
            if rejected.contains(&id) {
                continue;
            }
            let Some((mu, shape)) = exact_orbit(&base, &mu_hub, cand.n, cand.base as usize) else {
                rejected.insert(id);
                continue;
            };
            match certify_pair(&ctx, &shape, Some(&mu), None)? {
                Ok(p) => {
                    used.insert(id);
                    pairs.push(p);
                    return Ok(true);
                }
                Err(why) => {
                    rejected.insert(id);
                    match why {
                        Reject::FixedPoint => diag.fixed_point_outside += 1,
                        Reject::Sector => diag.sector_failures += 1,
                        Reject::NotLoxodromic => diag.not_loxodromic += 1,
                        Reject::Other => {}
                    }
                }
            }
        }
        Ok(false)
    };
    for l in &lattice {
        let cands = candidates_for(*l, rho);
        try_build(&cands, &mut pairs, &mut diag)?;
    }

    let mut report = certify_cover(&u, &inners(&pairs), opts.max_cover_depth);
    for _ in 0..opts.repair_rounds {
        if report.ok {
            break;
        }
        let mut progress = false;
        for cell in &report.failing {
            let (cc, cr) = cell.circumdisk().approx();
            let before = pairs.len();
            let cands = candidates_for(cc, cr);
            try_build(&cands, &mut pairs, &mut diag)?;
            progress |= pairs.len() > before;
        }
        if !progress {
            break;
        }
        report = certify_cover(&u, &inners(&pairs), opts.max_cover_depth);
    }
    if !report.ok {
        diag.uncovered_cells = report.failing.len();
        return Err(fail(diag, "image disks do not cover closure(U)"));
    }
    let checks = checks_record(&report, opts.max_cover_depth);
    let close = ClosePrecomp::new(lambda0, &u, &a)?;
    Ok(FastImplementer {
        lambda0: lambda0.clone(),
        delta,
        pairs,
        u,
        z0,
        a,
        checks,
        close,
    })
}

fn inners(pairs: &[ImplementerPair]) -> Vec<RationalDisk> {
    pairs.iter().map(|p| p.inner.clone()).collect()
}

pub(crate) fn from_certificate(cert: &Certificate) -> Result<FastImplementer, FastImplError> {
    let bad = |m: &str| FastImplError::Certificate(m.to_string());
    let lam = &cert.lambda0;
    validate(lam, cert.delta).map_err(|e| bad(&e.to_string()))?;
    let [p1, p2, p3] = cert.u.clone();
    let u = RationalDisk::new(p1, p2, p3).map_err(|e| bad(&e.to_string()))?;
    let (z0, a) = fixed_points_of_f(lam)?;
    if !hp_inside(&z0, &u, MARGIN_BITS) {
        return Err(bad("U does not contain the repelling fixed point"));
    }
    check_u(lam, &u, &a).map_err(|e| bad(&e))?;
    let first = cert.pairs.first().ok_or_else(|| bad("no pairs"))?;
    let chi_shape = Shape::from_parens(&first.chi_tree).ok_or_else(|| bad("malformed χ tree"))?;
    let (_, chi_pair, chi) = tree_ratio(&chi_shape, lam, cert.delta)?;
    let ctx = PairContext {
        lam,
        delta: cert.delta,
        u: &u,
        chi_shape: &chi_shape,
        chi: &chi,
        chi_pair: &chi_pair,
    };
    let mut pairs = Vec::with_capacity(cert.pairs.len());
    for (i, rec) in cert.pairs.iter().enumerate() {
        if rec.chi_tree != first.chi_tree || rec.chi != chi {
            return Err(bad(&format!("pair {i}: χ tree or value mismatch")));
        }
        let shape = Shape::from_parens(&rec.mu_tree).ok_or_else(|| bad("malformed μ tree"))?;
        let [q1, q2, q3] = rec.cover_disk.clone();
        let inner = RationalDisk::new(q1, q2, q3).map_err(|e| bad(&e.to_string()))?;
        let pair = certify_pair(&ctx, &shape, Some(&rec.mu), Some(&inner))
            .map_err(|e| bad(&format!("pair {i}: {e}")))?
            .map_err(|_| bad(&format!("pair {i} fails a defining condition")))?;
        pairs.push(pair);
    }
    let report = certify_cover(&u, &inners(&pairs), cert.checks.cover_max_depth);
    if !report.ok {
        return Err(bad("cover of closure(U) fails"));
    }
    let checks = checks_record(&report, cert.checks.cover_max_depth);
    let close = ClosePrecomp::new(lam, &u, &a)?;
    Ok(FastImplementer {
        lambda0: lam.clone(),
        delta: cert.delta,
        pairs,
        u,
        z0,
        a,
        checks,
        close,
    })
}

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use hardcore::cayley::{self, CayleyError, Rect};
use hardcore::exact_arith::{format_rational, parse_rational, GaussianRational, Rational};
use hardcore::fast_impl::{
    default_catalog_size, emit_tree, run_fast_implementation, search_with, FastImplError,
    FastImplementer, Label, SearchOptions,
};
use hardcore::graph_core::{
    enumerate_catalog, find_minimal_zero_tree, partition, GraphError, GraphJson, RootedGraph,
};
use hardcore::moebius::{
    classify as classify_map, f_lambda, fixed_points, ExactMoebius, FixedPoint, SpherePoint,
};
use hardcore::regions::{
    cardioid_boundary, cardioid_contains, is_exceptional_candidate, shearer_contains, RegionVerdict,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Search(String),
    #[error("internal error (please report): {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Search(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::DegreeBound { .. } | GraphError::OracleLimit(_) | GraphError::NotATree => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<FastImplError> for CliError {
    fn from(e: FastImplError) -> Self {
        match e {
            FastImplError::SearchFailed(d) => CliError::Search(format!("search failed: {d}")),
            FastImplError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::Uncertified(_) => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn gq(text: &str, what: &str) -> Result<GaussianRational, CliError> {
    text.parse().map_err(|_| {
        CliError::Parse(format!(
            "cannot parse {what} `{text}` as a Gaussian rational"
        ))
    })
}

fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text)
        .map_err(|_| CliError::Parse(format!("cannot parse {what} `{text}` as a rational")))
}

fn print_json<T: Serialize>(v: &T) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string(v).expect("output serializes")
    );
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn read_graph(arg: &str) -> Result<RootedGraph, CliError> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Parse(e.to_string()))?;
        s
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Parse(format!("cannot read {arg}: {e}")))?
    };
    let j: GraphJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("malformed graph JSON: {e}")))?;
    Ok(RootedGraph::from_json(&j)?)
}

#[derive(Serialize)]
struct RatioOut {
    z_in: String,
    z_out: String,
    ratio: String,
}

pub fn ratio(graph: &str, lambda: &str) -> Result<(), CliError> {
    let lam = gq(lambda, "λ")?;
    let g = read_graph(graph)?;
    let pp = partition(&g, &lam)?;
    print_json(&RatioOut {
        z_in: pp.z_in.to_string(),
        z_out: pp.z_out.to_string(),
        ratio: pp.ratio().to_string(),
    });
    Ok(())
}

#[derive(Serialize)]
struct ZerosOut {
    lambda: String,
    delta: usize,
    max_vertices: usize,
    found: bool,
    vertices: Option<usize>,
    tree: Option<GraphJson>,
    exceptional_candidate: Option<bool>,
}

pub fn zeros(lambda: &str, delta: usize, max_vertices: usize) -> Result<(), CliError> {
    let lam = gq(lambda, "λ")?;
    if lam.is_zero() {
        return Err(CliError::Domain("λ = 0 is excluded".into()));
    }
    if delta < 2 {
        return Err(CliError::Domain("degree bound must be at least 2".into()));
    }
    let tree = find_minimal_zero_tree(&lam, delta, max_vertices);
    let exceptional = is_exceptional_candidate(&lam, delta).ok();
    print_json(&ZerosOut {
        lambda: lam.to_string(),
        delta,
        max_vertices,
        found: tree.is_some(),
        vertices: tree.as_ref().map(RootedGraph::vertex_count),
        tree: tree.as_ref().map(RootedGraph::to_json),
        exceptional_candidate: exceptional,
    });
    Ok(())
}

#[derive(Serialize)]
struct FixedOut {
    tag: String,
    exact: Option<String>,
    approx: Option<[f64; 2]>,
    precision_bits: Option<usize>,
}

#[derive(Serialize)]
struct ClassifyOut {
    map: String,
    kind: String,
    tr_squared: String,
    fixed_points: Vec<FixedOut>,
}

pub fn classify(lambda: Option<&str>, map: Option<&str>) -> Result<(), CliError> {
    let m: ExactMoebius = match (lambda, map) {
        (Some(l), _) => {
            let lam = gq(l, "λ")?;
            f_lambda(&lam).map_err(|e| CliError::Domain(e.to_string()))?
        }
        (None, Some(s)) => s
            .parse()
            .map_err(|e: hardcore::moebius::MoebiusError| match e {
                hardcore::moebius::MoebiusError::DegenerateMap => CliError::Domain(e.to_string()),
                _ => CliError::Parse(e.to_string()),
            })?,
        (None, None) => return Err(CliError::Parse("give --lambda or --map".into())),
    };
    let class = classify_map(&m);
    let fps = if m.is_identity() {
        Vec::new()
    } else {
        fixed_points(&m, 128)
            .into_iter()
            .map(|(p, tag)| {
                let tag = format!("{tag:?}").to_lowercase();
                match p {
                    FixedPoint::Exact(SpherePoint::Finite(z)) => FixedOut {
                        tag,
                        exact: Some(z.to_string()),
                        approx: None,
                        precision_bits: None,
                    },
                    FixedPoint::Exact(SpherePoint::Infinity) => FixedOut {
                        tag,
                        exact: Some("inf".into()),
                        approx: None,
                        precision_bits: None,
                    },
                    FixedPoint::Approx {
                        value,
                        precision_bits,
                    } => {
                        let z = value.to_c64();
                        FixedOut {
                            tag,
                            exact: None,
                            approx: Some([z.re, z.im]),
                            precision_bits: Some(precision_bits),
                        }
                    }
                }
            })
            .collect()
    };
    print_json(&ClassifyOut {
        map: m.to_string(),
        kind: format!("{:?}", class.kind).to_lowercase(),
        tr_squared: m.tr_squared().to_string(),
        fixed_points: fps,
    });
    Ok(())
}

#[derive(Serialize)]
struct RegionLine<'a> {
    region: &'a str,
    delta: usize,
    lambda: String,
    #[serde(flatten)]
    verdict: RegionVerdict,
}

#[derive(Serialize)]
struct ExceptionalLine {
    region: &'static str,
    delta: usize,
    lambda: String,
    candidate: bool,
}

pub fn regions(lambda: &str, delta: usize) -> Result<(), CliError> {
    let lam = gq(lambda, "λ")?;
    let dom = |e: hardcore::regions::RegionError| CliError::Domain(e.to_string());
    let card = cardioid_contains(&lam, delta).map_err(dom)?;
    let shearer = shearer_contains(&lam, delta).map_err(dom)?;
    let exc = is_exceptional_candidate(&lam, delta).map_err(dom)?;
    print_json(&RegionLine {
        region: "cardioid",
        delta,
        lambda: lam.to_string(),
        verdict: card,
    });
    print_json(&RegionLine {
        region: "shearer",
        delta,
        lambda: lam.to_string(),
        verdict: shearer,
    });
    print_json(&ExceptionalLine {
        region: "exceptional",
        delta,
        lambda: lam.to_string(),
        candidate: exc,
    });
    Ok(())
}

pub struct ImplementRequest<'a> {
    pub lambda0: &'a str,
    pub delta: usize,
    pub target: &'a str,
    pub eps: &'a str,
    pub catalog_size: Option<usize>,
    pub certificate: Option<&'a Path>,
    pub certificate_out: Option<&'a Path>,
    pub seed: u64,
}

#[derive(Serialize)]
struct Timings {
    search_ms: u128,
    plan_ms: u128,
    tree_ms: u128,
}

#[derive(Serialize)]
struct ImplementOut {
    lambda0: String,
    delta: usize,
    target: String,
    eps: String,
    labels: Vec<String>,
    #[serde(rename = "K")]
    k: usize,
    k1: usize,
    k2: usize,
    k3: usize,
    pairs: usize,
    vertices: usize,
    tree: GraphJson,
    z_in: String,
    z_out: String,
    replay_error_squared: String,
    timings: Timings,
}

fn label_name(l: &Label) -> String {
    match l {
        Label::Lambda0 => "lambda0".into(),
        Label::Mu(i) => format!("mu{i}"),
        Label::Chi(i) => format!("chi{i}"),
    }
}

pub fn implement(req: &ImplementRequest<'_>) -> Result<(), CliError> {
    let lam = gq(req.lambda0, "λ0")?;
    let target = gq(req.target, "target")?;
    let eps = rational(req.eps, "ε")?;
    if eps <= Rational::from_integer(0.into()) {
        return Err(CliError::Domain("ε must be positive".into()));
    }
    if req.delta < 3 {
        return Err(CliError::Domain("degree bound must be at least 3".into()));
    }
    let t0 = Instant::now();
    let imp = match req.certificate {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            let imp = FastImplementer::from_certificate_json(&text)?;
            if imp.lambda0 != lam || imp.delta != req.delta {
                return Err(CliError::Domain(
                    "certificate is for another λ0 or degree bound".into(),
                ));
            }
            imp
        }
        None => {
            let size = req
                .catalog_size
                .unwrap_or_else(|| default_catalog_size(req.delta));
            let catalog = enumerate_catalog(req.delta, &lam, size);
            let opts = SearchOptions {
                seed: req.seed,
                ..Default::default()
            };
            search_with(&lam, req.delta, &catalog, &opts)?
        }
    };
    if let Some(path) = req.certificate_out {
        write_file(path, imp.certificate_json().as_bytes())?;
    }
    let t1 = Instant::now();
    let plan = run_fast_implementation(&imp, &target, &eps)?;
    let t2 = Instant::now();
    let (tree, pair) = emit_tree(&plan, &imp)?;
    let t3 = Instant::now();
    let ratio = pair
        .z_in
        .checked_div(&pair.z_out)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let err2 = (&ratio - &target).norm_sqr();
    print_json(&ImplementOut {
        lambda0: lam.to_string(),
        delta: req.delta,
        target: target.to_string(),
        eps: format_rational(&eps),
        labels: plan.labels.iter().map(label_name).collect(),
        k: plan.len(),
        k1: plan.k1,
        k2: plan.k2,
        k3: plan.k3,
        pairs: imp.pairs.len(),
        vertices: tree.vertex_count(),
        tree: tree.to_json(),
        z_in: pair.z_in.to_string(),
        z_out: pair.z_out.to_string(),
        replay_error_squared: format_rational(&err2),
        timings: Timings {
            search_ms: (t1 - t0).as_millis(),
            plan_ms: (t2 - t1).as_millis(),
            tree_ms: (t3 - t2).as_millis(),
        },
    });
    Ok(())
}

fn parse_rect(text: &str) -> Result<Rect, CliError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Parse(format!("bad rectangle `{text}`")))?;
    match v[..] {
        [x0, y0, x1, y1] if x0 < x1 && y0 < y1 => Ok(Rect { x0, y0, x1, y1 }),
        [_, _, _, _] => Err(CliError::Domain(format!("empty rectangle `{text}`"))),
        _ => Err(CliError::Parse(format!(
            "rectangle needs four numbers, got `{text}`"
        ))),
    }
}

fn parse_px(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Parse(format!("bad pixel size `{text}`, expected WxH"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: usize = w.trim().parse().map_err(|_| bad())?;
    let h: usize = h.trim().parse().map_err(|_| bad())?;
    if w == 0 || h == 0 {
        return Err(CliError::Domain(
            "image must have at least one pixel".into(),
        ));
    }
    Ok((w, h))
}

#[derive(Serialize)]
struct RenderOut {
    out: String,
    width: usize,
    height: usize,
    depth: usize,
    threshold: f64,
    white_pixels: usize,
}

pub fn render_activity(
    d: u32,
    depth: usize,
    rect: &str,
    px: &str,
    threshold: f64,
    out: &Path,
) -> Result<(), CliError> {
    let rect = parse_rect(rect)?;
    let (w, h) = parse_px(px)?;
    if d == 0 {
        return Err(CliError::Domain("down-degree must be at least 1".into()));
    }
    let field = cayley::spherical_derivative_field(rect, w, h, d, depth)?;
    write_file(out, &field.to_pgm(threshold))?;
    print_json(&RenderOut {
        out: out.display().to_string(),
        width: w,
        height: h,
        depth,
        threshold,
        white_pixels: field.values.iter().filter(|&&s| s >= threshold).count(),
    });
    Ok(())
}

pub fn render_cardioid(delta: usize, out: &Path) -> Result<(), CliError> {
    let pts = cardioid_boundary(delta, 4096).map_err(|e| CliError::Domain(e.to_string()))?;
    let mut csv = String::from("re,im\n");
    for z in &pts {
        let _ = writeln!(csv, "{},{}", z.re, z.im);
    }
    write_file(out, csv.as_bytes())
}

pub fn cayley_zeros(d: usize, n: usize, digits: u32, out: &Path) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Domain("depth must be at least 1".into()));
    }
    let tol = 10f64.powi(-(digits.min(300) as i32));
    let mut csv = String::from("n,re,im,residual\n");
    for depth in 1..=n {
        for z in cayley::cayley_zeros(d, depth, digits)? {
            let im = if z.value.im.abs() < tol {
                0.0
            } else {
                z.value.im
            };
            let _ = writeln!(csv, "{},{},{},{:e}", depth, z.value.re, im, z.residual);
        }
    }
    write_file(out, csv.as_bytes())
}

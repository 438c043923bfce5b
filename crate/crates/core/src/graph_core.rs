//! Bounded-degree rooted graphs, exact partition functions and the gluing calculus.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{GaussianRational, Rational};
use crate::moebius::SpherePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("repeated edge {0}-{1}")]
    MultiEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree} > {delta}")]
    DegreeBound {
        vertex: usize,
        degree: usize,
        delta: usize,
    },
    #[error("graph has {0} vertices; brute force is limited to {BRUTE_FORCE_LIMIT}")]
    OracleLimit(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("maximum degree bound must be at least 1")]
    BadDelta,
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Simple graph with a distinguished root and a maximum-degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedGraph {
    adj: Vec<Vec<usize>>,
    root: usize,
    delta: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub root: usize,
    pub delta: usize,
}

impl RootedGraph {
    pub fn new(
        vertices: usize,
        edges: &[(usize, usize)],
        root: usize,
        delta: usize,
    ) -> Result<Self, GraphError> {
        if vertices == 0 {
            return Err(GraphError::Empty);
        }
        if delta == 0 {
            return Err(GraphError::BadDelta);
        }
        if root >= vertices {
            return Err(GraphError::VertexOutOfRange(root));
        }
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            if u >= vertices {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= vertices {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(GraphError::MultiEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let g = RootedGraph { adj, root, delta };
        g.check_degrees()?;
        Ok(g)
    }

    fn check_degrees(&self) -> Result<(), GraphError> {
        for (v, nb) in self.adj.iter().enumerate() {
            if nb.len() > self.delta {
                return Err(GraphError::DegreeBound {
                    vertex: v,
                    degree: nb.len(),
                    delta: self.delta,
                });
            }
        }
        Ok(())
    }

    pub fn single_vertex(delta: usize) -> Self {
        RootedGraph {
            adj: vec![Vec::new()],
            root: 0,
            delta,
        }
    }

    /// Path `v_0 - ... - v_{n-1}` rooted at `v_{n-1}`.
    pub fn path(n: usize, delta: usize) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges, n.saturating_sub(1), delta)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Membership in the class of graphs whose root has degree at most `i`.
    pub fn in_class(&self, i: usize) -> bool {
        self.degree(self.root) <= i && self.max_degree() <= self.delta
    }

    pub fn with_delta(&self, delta: usize) -> Result<Self, GraphError> {
        let g = RootedGraph {
            adj: self.adj.clone(),
            root: self.root,
            delta,
        };
        g.check_degrees()?;
        Ok(g)
    }

    pub fn with_root(&self, root: usize) -> Result<Self, GraphError> {
        if root >= self.vertex_count() {
            return Err(GraphError::VertexOutOfRange(root));
        }
        Ok(RootedGraph {
            adj: self.adj.clone(),
            root,
            delta: self.delta,
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            root: self.root,
            delta: self.delta,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(j.vertices, &edges, j.root, j.delta)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        let _ = writeln!(s, "  {} [shape=doublecircle];", self.root);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    /// Parent array and a preorder from the root; `None` unless the graph is a tree.
    fn tree_order(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if !self.is_tree() {
            return None;
        }
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![self.root];
        parent[self.root] = self.root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        Some((parent, order))
    }

    /// AHU-style canonical encoding of a rooted tree.
    pub fn canonical_form(&self) -> Option<String> {
        let (parent, order) = self.tree_order()?;
        let mut code: Vec<String> = vec![String::new(); self.vertex_count()];
        for &u in order.iter().rev() {
            let mut kids: Vec<String> = self.adj[u]
                .iter()
                .filter(|&&v| parent[v] == u && v != u)
                .map(|&v| std::mem::take(&mut code[v]))
                .collect();
            kids.sort();
            code[u] = format!("({})", kids.concat());
        }
        Some(std::mem::take(&mut code[self.root]))
    }

    /// Disjoint union; returns the vertex offset of `other`.
    fn append(&mut self, other: &RootedGraph) -> usize {
        let off = self.adj.len();
        for nb in &other.adj {
            self.adj.push(nb.iter().map(|v| v + off).collect());
        }
        off
    }

    /// Identify vertex `b` into vertex `a` (`b > a` is removed by relabelling the last vertex).
    fn identify(&mut self, a: usize, b: usize) {
        let nb = std::mem::take(&mut self.adj[b]);
        for &w in &nb {
            for x in self.adj[w].iter_mut() {
                if *x == b {
                    *x = a;
                }
            }
        }
        self.adj[a].extend(nb);
        let last = self.adj.len() - 1;
        if b != last {
            self.adj.swap(b, last);
            for x in self.adj[b].clone() {
                for y in self.adj[x].iter_mut() {
                    if *y == last {
                        *y = b;
                    }
                }
            }
            if self.root == last {
                self.root = b;
            }
        }
        self.adj.pop();
    }
}

/// Exact pair `(Z^in, Z^out)` of a rooted graph at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPair {
    pub z_in: GaussianRational,
    pub z_out: GaussianRational,
}

/// Projective value of a partition pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    Finite(GaussianRational),
    Infinity,
    Indeterminate,
}

impl Ratio {
    pub fn to_sphere(&self) -> Option<SpherePoint<GaussianRational>> {
        match self {
            Ratio::Finite(z) => Some(SpherePoint::Finite(z.clone())),
            Ratio::Infinity => Some(SpherePoint::Infinity),
            Ratio::Indeterminate => None,
        }
    }

    pub fn finite(&self) -> Option<&GaussianRational> {
        match self {
            Ratio::Finite(z) => Some(z),
            _ => None,
        }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ratio::Finite(z) => write!(f, "{z}"),
            Ratio::Infinity => write!(f, "inf"),
            Ratio::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

impl PartitionPair {
    pub fn total(&self) -> GaussianRational {
        &self.z_in + &self.z_out
    }

    pub fn ratio(&self) -> Ratio {
        match (self.z_in.is_zero(), self.z_out.is_zero()) {
            (true, true) => Ratio::Indeterminate,
            (_, true) => Ratio::Infinity,
            _ => Ratio::Finite(&self.z_in / &self.z_out),
        }
    }
}

/// Independent-set counts by size, split by root membership.
pub fn independence_counts(g: &RootedGraph) -> Result<(Vec<u64>, Vec<u64>), GraphError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::OracleLimit(n));
    }
    let masks: Vec<u32> = (0..n)
        .map(|u| g.adj[u].iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let mut cin = vec![0u64; n + 1];
    let mut cout = vec![0u64; n + 1];
    // Depth-first over vertices in index order; `blocked` holds neighbours of chosen vertices.
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        n: usize,
        chosen: u32,
        blocked: u32,
        size: usize,
        masks: &[u32],
        root: usize,
        cin: &mut [u64],
        cout: &mut [u64],
    ) {
        if v == n {
            if chosen >> root & 1 == 1 {
                cin[size] += 1;
            } else {
                cout[size] += 1;
            }
            return;
        }
        rec(v + 1, n, chosen, blocked, size, masks, root, cin, cout);
        if blocked >> v & 1 == 0 {
            rec(
                v + 1,
                n,
                chosen | 1 << v,
                blocked | masks[v],
                size + 1,
                masks,
                root,
                cin,
                cout,
            );
        }
    }
    rec(0, n, 0, 0, 0, &masks, g.root, &mut cin, &mut cout);
    Ok((cin, cout))
}

fn horner(coeffs: &[u64], lambda: &GaussianRational) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * lambda)
            + &GaussianRational::from_real(Rational::from_integer(BigInt::from(*c)));
    }
    acc
}

/// Sum over all independent sets, split by whether the root is occupied.
pub fn brute_force_partition(
    g: &RootedGraph,
    lambda: &GaussianRational,
) -> Result<PartitionPair, GraphError> {
    let (cin, cout) = independence_counts(g)?;
    Ok(PartitionPair {
        z_in: horner(&cin, lambda),
        z_out: horner(&cout, lambda),
    })
}

/// Gaussian integer used for denominator-free tree recursions.
#[derive(Clone, Debug)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn mul(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn add(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

/// Write `λ = A / q` with `A` a Gaussian integer and `q > 0`.
fn split_lambda(lambda: &GaussianRational) -> (GInt, BigInt) {
    let q = lambda.re.denom().lcm(lambda.im.denom());
    let a = GInt {
        re: lambda.re.numer() * (&q / lambda.re.denom()),
        im: lambda.im.numer() * (&q / lambda.im.denom()),
    };
    (a, q)
}

/// Partition pair of a rooted tree by the leaf-to-root recursion.
///
/// Values are carried scaled by `q^size` so the recursion stays in Gaussian integers.
pub fn tree_partition(
    t: &RootedGraph,
    lambda: &GaussianRational,
) -> Result<PartitionPair, GraphError> {
    let (parent, order) = t.tree_order().ok_or(GraphError::NotATree)?;
    let (a, q) = split_lambda(lambda);
    let n = t.vertex_count();
    let mut zin: Vec<Option<GInt>> = vec![None; n];
    let mut zout: Vec<Option<GInt>> = vec![None; n];
    for &u in order.iter().rev() {
        let mut pin = a.clone();
        let mut pout = GInt {
            re: q.clone(),
            im: BigInt::zero(),
        };
        for &v in &t.adj[u] {
            if parent[v] != u {
                continue;
            }
            let vi = zin[v].take().expect("child evaluated");
            let vo = zout[v].take().expect("child evaluated");
            pin = pin.mul(&vo);
            pout = pout.mul(&vi.add(&vo));
        }
        zin[u] = Some(pin);
        zout[u] = Some(pout);
    }
    let qn = num_traits::pow(q, n);
    let unscale = |g: GInt| {
        GaussianRational::new(
            Rational::new(g.re, qn.clone()),
            Rational::new(g.im, qn.clone()),
        )
    };
    Ok(PartitionPair {
        z_in: unscale(zin[t.root].take().unwrap()),
        z_out: unscale(zout[t.root].take().unwrap()),
    })
}

/// Partition pair by tree recursion when possible, brute force otherwise.
pub fn partition(g: &RootedGraph, lambda: &GaussianRational) -> Result<PartitionPair, GraphError> {
    if g.is_tree() {
        tree_partition(g, lambda)
    } else {
        brute_force_partition(g, lambda)
    }
}

pub fn ratio(g: &RootedGraph, lambda: &GaussianRational) -> Result<Ratio, GraphError> {
    Ok(partition(g, lambda)?.ratio())
}

/// Glue `blocks[i]` at vertex `i` of a path, rooted at the last block's root.
pub fn implement_on_path(blocks: &[RootedGraph]) -> Result<RootedGraph, GraphError> {
    let k = blocks.len();
    if k == 0 {
        return Err(GraphError::Empty);
    }
    let delta = blocks.iter().map(RootedGraph::delta).max().unwrap();
    for (i, b) in blocks.iter().enumerate() {
        let path_deg = usize::from(i > 0) + usize::from(i + 1 < k);
        let d = b.degree(b.root) + path_deg;
        if d > delta {
            return Err(GraphError::DegreeBound {
                vertex: i,
                degree: d,
                delta,
            });
        }
    }
    let mut g = RootedGraph {
        adj: Vec::new(),
        root: 0,
        delta,
    };
    let mut prev: Option<usize> = None;
    for b in blocks {
        let off = g.append(b);
        let r = off + b.root;
        if let Some(p) = prev {
            g.adj[p].push(r);
            g.adj[r].push(p);
        }
        prev = Some(r);
    }
    g.root = prev.unwrap();
    Ok(g)
}

/// Attach a copy of `h` (by its root) at every vertex of `g`; the root of `g` is kept.
pub fn implement_copies(g: &RootedGraph, h: &RootedGraph) -> Result<RootedGraph, GraphError> {
    let delta = g.delta.max(h.delta);
    let hd = h.degree(h.root);
    for v in 0..g.vertex_count() {
        let d = g.degree(v) + hd;
        if d > delta {
            return Err(GraphError::DegreeBound {
                vertex: v,
                degree: d,
                delta,
            });
        }
    }
    let n = g.vertex_count();
    let hn = h.vertex_count();
    let mut adj: Vec<Vec<usize>> = g.adj.clone();
    adj.reserve(n * (hn - 1));
    for v in 0..n {
        // Vertices of this copy other than its root get fresh labels.
        let base = adj.len();
        let label = |x: usize| -> usize {
            if x == h.root {
                v
            } else if x < h.root {
                base + x
            } else {
                base + x - 1
            }
        };
        for _ in 1..hn {
            adj.push(Vec::new());
        }
        for (x, nb) in h.adj.iter().enumerate() {
            let lx = label(x);
            for &y in nb {
                adj[lx].push(label(y));
            }
        }
    }
    Ok(RootedGraph {
        adj,
        root: g.root,
        delta,
    })
}

/// Identify the roots of `g1` and `g2`.
pub fn merge_roots(g1: &RootedGraph, g2: &RootedGraph) -> Result<RootedGraph, GraphError> {
    let delta = g1.delta.max(g2.delta);
    let d = g1.degree(g1.root) + g2.degree(g2.root);
    if d > delta {
        return Err(GraphError::DegreeBound {
            vertex: g1.root,
            degree: d,
            delta,
        });
    }
    let mut g = g1.clone();
    g.delta = delta;
    let off = g.append(g2);
    g.identify(g1.root, off + g2.root);
    Ok(g)
}

/// Rooted tree shape: a vertex and the shapes hanging below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn leaf() -> Self {
        Shape {
            children: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Shape::size).sum::<usize>()
    }

    pub fn to_graph(&self, delta: usize) -> Result<RootedGraph, GraphError> {
        let mut edges = Vec::new();
        let mut count = 0usize;
        let mut stack: Vec<(&Shape, usize)> = vec![(self, 0)];
        count += 1;
        while let Some((s, id)) = stack.pop() {
            for c in &s.children {
                let cid = count;
                count += 1;
                edges.push((id, cid));
                stack.push((c, cid));
            }
        }
        RootedGraph::new(count, &edges, 0, delta)
    }

    /// Nested-parentheses encoding, `()` for a single vertex.
    pub fn to_parens(&self) -> String {
        let mut out = String::with_capacity(2 * self.size());
        let mut stack: Vec<(&Shape, usize)> = vec![(self, 0)];
        out.push('(');
        while let Some((s, k)) = stack.pop() {
            if k < s.children.len() {
                stack.push((s, k + 1));
                out.push('(');
                stack.push((&s.children[k], 0));
            } else {
                out.push(')');
            }
        }
        out
    }

    pub fn from_parens(text: &str) -> Option<Shape> {
        let mut stack: Vec<Shape> = Vec::new();
        let mut done: Option<Shape> = None;
        for ch in text.trim().chars() {
            if done.is_some() {
                return None;
            }
            match ch {
                '(' => stack.push(Shape::leaf()),
                ')' => {
                    let s = stack.pop()?;
                    match stack.last_mut() {
                        Some(parent) => parent.children.push(s),
                        None => done = Some(s),
                    }
                }
                _ => return None,
            }
        }
        if stack.is_empty() {
            done
        } else {
            None
        }
    }

    /// Exact occupation ratio `λ / ∏(1 + R_child)`.
    pub fn ratio(&self, lambda: &GaussianRational) -> Ratio {
        let mut prod = GaussianRational::one();
        for c in &self.children {
            match c.ratio(lambda) {
                Ratio::Finite(r) => prod = &prod * &(&GaussianRational::one() + &r),
                Ratio::Infinity => return Ratio::Finite(GaussianRational::zero()),
                Ratio::Indeterminate => return Ratio::Indeterminate,
            }
        }
        if prod.is_zero() {
            Ratio::Infinity
        } else {
            Ratio::Finite(lambda / &prod)
        }
    }
}

/// All rooted tree shapes with at most `max_vertices` vertices, grouped by size, where the root
/// has at most `root_children` children and every other vertex at most `max_children`.
///
/// Shapes inside each size class are listed in canonical order: children sorted by
/// (size, index) with a multiset construction, so no isomorphic duplicates arise.
pub fn rooted_shapes(
    max_vertices: usize,
    max_children: usize,
    root_children: usize,
) -> Vec<Vec<Shape>> {
    // planted[n]: shapes of size n whose root has at most `max_children` children.
    let mut planted: Vec<Vec<Shape>> = vec![Vec::new(); max_vertices + 1];
    let mut out: Vec<Vec<Shape>> = vec![Vec::new(); max_vertices + 1];
    for n in 1..=max_vertices {
        let with_limit = |limit: usize, dst: &mut Vec<Shape>, planted: &Vec<Vec<Shape>>| {
            let mut acc = Vec::new();
            multisets(planted, n - 1, limit, (1, 0), &mut acc, dst);
        };
        let mut p = Vec::new();
        with_limit(max_children, &mut p, &planted);
        let mut r = Vec::new();
        if root_children == max_children {
            r = p.clone();
        } else {
            with_limit(root_children, &mut r, &planted);
        }
        planted[n] = p;
        out[n] = r;
    }
    out
}

/// Emit every nondecreasing multiset of planted shapes with total size `remaining`,
/// at most `slots` members, each member at least `min` in (size, index) order.
fn multisets(
    planted: &[Vec<Shape>],
    remaining: usize,
    slots: usize,
    min: (usize, usize),
    acc: &mut Vec<(usize, usize)>,
    dst: &mut Vec<Shape>,
) {
    if remaining == 0 {
        dst.push(Shape {
            children: acc.iter().map(|&(s, i)| planted[s][i].clone()).collect(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    for s in min.0..=remaining {
        if s >= planted.len() {
            break;
        }
        let start = if s == min.0 { min.1 } else { 0 };
        for i in start..planted[s].len() {
            acc.push((s, i));
            multisets(planted, remaining - s, slots - 1, (s, i), acc, dst);
            acc.pop();
        }
    }
}

/// A catalog tree with its ratio at the catalog parameter.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub shape: Shape,
    pub tree: RootedGraph,
    pub ratio: SpherePoint<GaussianRational>,
}

/// Rooted trees with root degree at most one, deduplicated by ratio value.
#[derive(Clone, Debug)]
pub struct TreeCatalog {
    pub delta: usize,
    pub lambda0: GaussianRational,
    pub entries: Vec<CatalogEntry>,
}

/// Every rooted tree of root degree at most 1 and maximum degree at most `delta`, with at most
/// `max_vertices` vertices, keeping the first tree (by size, then canonical order) per ratio.
pub fn enumerate_catalog(
    delta: usize,
    lambda0: &GaussianRational,
    max_vertices: usize,
) -> TreeCatalog {
    assert!(delta >= 2, "degree bound must be at least 2");
    let shapes = rooted_shapes(max_vertices, delta - 1, 1);
    let mut seen: HashMap<Option<GaussianRational>, ()> = HashMap::new();
    let mut entries = Vec::new();
    for layer in shapes.iter() {
        for s in layer {
            let r = match s.ratio(lambda0) {
                Ratio::Finite(z) => SpherePoint::Finite(z),
                Ratio::Infinity => SpherePoint::Infinity,
                Ratio::Indeterminate => continue,
            };
            let key = r.finite().cloned();
            if seen.insert(key, ()).is_some() {
                continue;
            }
            let tree = s.to_graph(delta).expect("shape respects the degree bound");
            entries.push(CatalogEntry {
                shape: s.clone(),
                tree,
                ratio: r,
            });
        }
    }
    TreeCatalog {
        delta,
        lambda0: lambda0.clone(),
        entries,
    }
}

/// Smallest tree of root degree at most one with `Z_T(λ) = 0` and root ratio `-1`.
pub fn find_minimal_zero_tree(
    lambda: &GaussianRational,
    delta: usize,
    max_vertices: usize,
) -> Option<RootedGraph> {
    if lambda.is_zero() {
        return None;
    }
    let minus_one = GaussianRational::from_int(-1);
    let shapes = rooted_shapes(max_vertices, delta.saturating_sub(1), 1);
    for layer in shapes.iter() {
        for s in layer {
            let g = s.to_graph(delta).ok()?;
            let pp = tree_partition(&g, lambda).ok()?;
            if pp.total().is_zero() && pp.ratio() == Ratio::Finite(minus_one.clone()) {
                return Some(g);
            }
        }
    }
    None
}

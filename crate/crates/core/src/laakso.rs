//! Finite-level Laakso graphs.
//!
//! Level 0 is a single edge of length 1 between the endpoints `0` and `1`.
//! Each further level replaces every edge `u-v` of length `L` by six edges
//! of length `L/4`: `u-p`, `p-q₁`, `q₁-r`, `p-q₂`, `q₂-r`, `r-v`, so that
//! the middle half has two parallel branches. Vertex ids are stable across
//! levels and edges carry the address word of digits `0..6` recording the
//! construction history (`1, 2` form branch 0 through `q₁`, `3, 4` form
//! branch 1 through `q₂`).
//!
//! Distances are exact rationals from Dijkstra's algorithm; points inside an
//! edge are handled by splitting that edge. Geodesics between two points are
//! counted over the shortest-path DAG and enumerated in lexicographic order
//! of their edge addresses.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::GeodesicCurve;
use crate::error::{GeodesyError, Result};
use crate::scalar::{format_rational, rational_serde, rational_to_f64, Scalar, Tolerance};
use crate::space::{MetricSpace, SegmentMeet};

/// Largest supported level (`6⁶ = 46656` edges).
pub const MAX_LEVEL: u32 = 6;

/// A point of the level-n graph: a vertex, or a point strictly inside an
/// edge at `offset` from the edge's first endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LaaksoPoint {
    Vertex {
        vertex: usize,
    },
    OnEdge {
        edge: usize,
        #[serde(with = "rational_serde")]
        offset: BigRational,
    },
}

impl LaaksoPoint {
    pub fn vertex(id: usize) -> Self {
        LaaksoPoint::Vertex { vertex: id }
    }
}

impl fmt::Display for LaaksoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaaksoPoint::Vertex { vertex } => write!(f, "v{vertex}"),
            LaaksoPoint::OnEdge { edge, offset } => write!(f, "e{edge}+{}", format_rational(offset)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vertex {
    pub id: usize,
    /// Position along the unit span.
    #[serde(with = "rational_serde")]
    pub arc: BigRational,
    /// Planar layout for plotting.
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: usize,
    /// Endpoint nearer the start of the span.
    pub a: usize,
    pub b: usize,
    pub address: String,
}

type Labels = Arc<Vec<Option<BigRational>>>;

pub struct LaaksoGraph {
    level: u32,
    edge_length: BigRational,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Per vertex: `(neighbour, edge)` sorted by edge address.
    adjacency: Vec<Vec<(usize, usize)>>,
    cache: Mutex<HashMap<usize, Labels>>,
}

impl fmt::Debug for LaaksoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaaksoGraph")
            .field("level", &self.level)
            .field("vertices", &self.vertices.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl Clone for LaaksoGraph {
    fn clone(&self) -> Self {
        LaaksoGraph {
            level: self.level,
            edge_length: self.edge_length.clone(),
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for LaaksoGraph {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

/// JSON export: vertices with arc coordinates and layout, edges with
/// addresses.
#[derive(Debug, Clone, Serialize)]
pub struct LaaksoExport<'a> {
    pub level: u32,
    #[serde(with = "rational_serde")]
    pub edge_length: BigRational,
    pub vertices: &'a [Vertex],
    pub edges: &'a [Edge],
}

/// Result of [`LaaksoGraph::enumerate_geodesics`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub curves: Vec<GeodesicCurve<LaaksoPoint>>,
    /// Exact number of geodesics, from the DAG count.
    pub total: BigUint,
    /// True when `total` exceeds the cap and only the first `cap` curves
    /// were produced.
    pub truncated: bool,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LaaksoGraph {
    pub fn build(level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(GeodesyError::LevelCap(level, MAX_LEVEL));
        }
        let mut vertices = vec![
            Vertex {
                id: 0,
                arc: BigRational::zero(),
                x: 0.0,
                y: 0.0,
            },
            Vertex {
                id: 1,
                arc: BigRational::one(),
                x: 1.0,
                y: 0.0,
            },
        ];
        let mut edges: Vec<(usize, usize, String)> = vec![(0, 1, String::new())];
        for _ in 0..level {
            let mut next = Vec::with_capacity(edges.len() * 6);
            for (u, v, addr) in &edges {
                let (u, v) = (*u, *v);
                let (au, av) = (vertices[u].arc.clone(), vertices[v].arc.clone());
                let (ux, uy, vx, vy) = (vertices[u].x, vertices[u].y, vertices[v].x, vertices[v].y);
                let (dx, dy) = (vx - ux, vy - uy);
                let mut add = |frac: BigRational, fx: f64, side: f64| {
                    let id = vertices.len();
                    let (mx, my) = (ux + fx * dx, uy + fx * dy);
                    // parallel branches sit a quarter-length either side
                    vertices.push(Vertex {
                        id,
                        arc: &au + (&av - &au) * frac,
                        x: mx - side * dy / 4.0,
                        y: my + side * dx / 4.0,
                    });
                    id
                };
                let p = add(rat(1, 4), 0.25, 0.0);
                let q1 = add(rat(1, 2), 0.5, -1.0);
                let q2 = add(rat(1, 2), 0.5, 1.0);
                let r = add(rat(3, 4), 0.75, 0.0);
                for (digit, a, b) in [(0, u, p), (1, p, q1), (2, q1, r), (3, p, q2), (4, q2, r), (5, r, v)] {
                    next.push((a, b, format!("{addr}{digit}")));
                }
            }
            edges = next;
        }
        let edges: Vec<Edge> = edges
            .into_iter()
            .enumerate()
            .map(|(id, (a, b, address))| Edge { id, a, b, address })
            .collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            adjacency[e.a].push((e.b, e.id));
            adjacency[e.b].push((e.a, e.id));
        }
        // edges are numbered in address order already
        for list in &mut adjacency {
            list.sort_by_key(|&(_, e)| e);
        }
        Ok(LaaksoGraph {
            level,
            edge_length: BigRational::new(BigInt::one(), BigInt::from(4).pow(level)),
            vertices,
            edges,
            adjacency,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn edge_length(&self) -> &BigRational {
        &self.edge_length
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn export(&self) -> LaaksoExport<'_> {
        LaaksoExport {
            level: self.level,
            edge_length: self.edge_length.clone(),
            vertices: &self.vertices,
            edges: &self.edges,
        }
    }

    /// The endpoints of the unit span.
    pub fn endpoints(&self) -> (LaaksoPoint, LaaksoPoint) {
        (LaaksoPoint::vertex(0), LaaksoPoint::vertex(1))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency.get(a)?.iter().find(|(n, _)| *n == b).map(|&(_, e)| e)
    }

    /// Checks that a point belongs to this graph.
    pub fn validate(&self, p: &LaaksoPoint) -> Result<()> {
        match p {
            LaaksoPoint::Vertex { vertex } if *vertex < self.vertices.len() => Ok(()),
            LaaksoPoint::Vertex { vertex } => Err(GeodesyError::InvalidPoint(format!(
                "vertex {vertex} does not exist at level {}",
                self.level
            ))),
            LaaksoPoint::OnEdge { edge, offset } => {
                if *edge >= self.edges.len() {
                    return Err(GeodesyError::InvalidPoint(format!(
                        "edge {edge} does not exist at level {}",
                        self.level
                    )));
                }
                if !offset.is_positive() || *offset >= self.edge_length {
                    return Err(GeodesyError::InvalidPoint(format!(
                        "offset {} must lie strictly inside (0, {})",
                        format_rational(offset),
                        format_rational(&self.edge_length)
                    )));
                }
                Ok(())
            }
        }
    }

    /// The point at `offset ∈ [0, L]` along `edge`, in canonical form.
    pub fn at_offset(&self, edge: usize, offset: BigRational) -> LaaksoPoint {
        let e = &self.edges[edge];
        if offset.is_zero() {
            LaaksoPoint::vertex(e.a)
        } else if offset == self.edge_length {
            LaaksoPoint::vertex(e.b)
        } else {
            LaaksoPoint::OnEdge { edge, offset }
        }
    }

    /// Arc coordinate of a point along the unit span.
    pub fn arc(&self, p: &LaaksoPoint) -> BigRational {
        match p {
            LaaksoPoint::Vertex { vertex } => self.vertices[*vertex].arc.clone(),
            LaaksoPoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                let (a, b) = (&self.vertices[e.a].arc, &self.vertices[e.b].arc);
                a + (b - a) * (offset / &self.edge_length)
            }
        }
    }

    /// Planar layout position of a point.
    pub fn layout(&self, p: &LaaksoPoint) -> (f64, f64) {
        match p {
            LaaksoPoint::Vertex { vertex } => (self.vertices[*vertex].x, self.vertices[*vertex].y),
            LaaksoPoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                let t = rational_to_f64(&(offset / &self.edge_length));
                let (a, b) = (&self.vertices[e.a], &self.vertices[e.b]);
                (a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            }
        }
    }

    /// Dijkstra labels from a vertex over the unsplit graph, cached.
    fn vertex_labels(&self, source: usize) -> Labels {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&source) {
            return hit.clone();
        }
        let query = Query::new(self, &[]);
        let labels = Arc::new(query.dijkstra(source));
        self.cache.lock().expect("cache lock").insert(source, labels.clone());
        labels
    }

    fn vertex_distance(&self, a: usize, b: usize) -> BigRational {
        self.vertex_labels(a)[b].clone().expect("Laakso graphs are connected")
    }

    /// `(endpoint, distance to it)` pairs through which a point leaves its
    /// position.
    fn exits(&self, p: &LaaksoPoint) -> Vec<(usize, BigRational)> {
        match p {
            LaaksoPoint::Vertex { vertex } => vec![(*vertex, BigRational::zero())],
            LaaksoPoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                vec![(e.a, offset.clone()), (e.b, &self.edge_length - offset)]
            }
        }
    }

    /// Exact shortest-path distance.
    pub fn laakso_distance(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Result<BigRational> {
        self.validate(a)?;
        self.validate(b)?;
        if a == b {
            return Ok(BigRational::zero());
        }
        if let (LaaksoPoint::OnEdge { edge: e1, offset: o1 }, LaaksoPoint::OnEdge { edge: e2, offset: o2 }) = (a, b) {
            if e1 == e2 {
                // the direct stretch is never longer than leaving the edge
                return Ok((o1 - o2).abs());
            }
        }
        let mut best: Option<BigRational> = None;
        for (x, dx) in self.exits(a) {
            for (y, dy) in self.exits(b) {
                let d = &dx + self.vertex_distance(x, y) + &dy;
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        Ok(best.expect("at least one exit"))
    }

    fn dag(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Result<Dag<'_>> {
        self.validate(a)?;
        self.validate(b)?;
        if a == b {
            return Err(GeodesyError::DegenerateCurve);
        }
        let query = Query::new(self, &[a, b]);
        let (sa, sb) = (query.node_of(a), query.node_of(b));
        let forward = query.dijkstra(sa);
        let backward = query.dijkstra(sb);
        let total = forward[sb].clone().expect("connected");
        Ok(Dag {
            query,
            forward,
            backward,
            total,
            source: sa,
            target: sb,
        })
    }

    /// Number of geodesics from `a` to `b`, by dynamic programming over the
    /// shortest-path DAG.
    pub fn count_geodesics(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Result<BigUint> {
        let dag = self.dag(a, b)?;
        let mut order: Vec<usize> = (0..dag.query.len()).filter(|&n| dag.on_dag(n)).collect();
        order.sort_by(|x, y| dag.forward[*x].cmp(&dag.forward[*y]));
        let mut count = vec![BigUint::zero(); dag.query.len()];
        count[dag.source] = BigUint::one();
        for &u in &order {
            if count[u].is_zero() {
                continue;
            }
            let cu = count[u].clone();
            for (w, _) in dag.successors(u) {
                count[w] += &cu;
            }
        }
        Ok(count[dag.target].clone())
    }

    /// Up to `cap` geodesics from `a` to `b` as constant-speed curves, in
    /// lexicographic order of edge addresses, with the exact total.
    pub fn enumerate_geodesics(&self, a: &LaaksoPoint, b: &LaaksoPoint, cap: usize) -> Result<Enumeration> {
        let total = self.count_geodesics(a, b)?;
        let dag = self.dag(a, b)?;
        let mut curves = Vec::new();
        let mut path = vec![dag.source];
        let mut stack: Vec<std::vec::IntoIter<(usize, BigRational)>> = vec![dag.successors(dag.source).into_iter()];
        while let Some(iter) = stack.last_mut() {
            if curves.len() >= cap {
                break;
            }
            match iter.next() {
                Some((w, _)) => {
                    path.push(w);
                    if w == dag.target {
                        curves.push(dag.curve(&path)?);
                        path.pop();
                    } else {
                        stack.push(dag.successors(w).into_iter());
                    }
                }
                None => {
                    stack.pop();
                    path.pop();
                }
            }
        }
        let truncated = BigUint::from(curves.len()) < total;
        Ok(Enumeration {
            curves,
            total,
            truncated,
        })
    }

    /// Offset of `p` along `edge`, if `p` lies on it.
    fn offset_on(&self, p: &LaaksoPoint, edge: usize) -> Option<BigRational> {
        let e = &self.edges[edge];
        match p {
            LaaksoPoint::Vertex { vertex } if *vertex == e.a => Some(BigRational::zero()),
            LaaksoPoint::Vertex { vertex } if *vertex == e.b => Some(self.edge_length.clone()),
            LaaksoPoint::OnEdge { edge: pe, offset } if *pe == edge => Some(offset.clone()),
            _ => None,
        }
    }

    /// The edge shared by two distinct points and their offsets along it.
    fn common_edge(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Option<(usize, BigRational, BigRational)> {
        let candidates: Vec<usize> = match (a, b) {
            (LaaksoPoint::OnEdge { edge, .. }, _) | (_, LaaksoPoint::OnEdge { edge, .. }) => vec![*edge],
            (LaaksoPoint::Vertex { vertex: x }, LaaksoPoint::Vertex { vertex: y }) => {
                self.edge_between(*x, *y).into_iter().collect()
            }
        };
        candidates
            .into_iter()
            .find_map(|e| Some((e, self.offset_on(a, e)?, self.offset_on(b, e)?)))
    }

    /// A canonical segment as `(edge, start offset, end offset)`, or the
    /// point itself when degenerate.
    fn segment_geometry(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Result<SegmentGeometry> {
        if a == b {
            return Ok(SegmentGeometry::Point(a.clone()));
        }
        self.common_edge(a, b)
            .map(|(e, oa, ob)| SegmentGeometry::Edge(e, oa, ob))
            .ok_or_else(|| GeodesyError::InvalidCurve(format!("consecutive breakpoints {a} and {b} share no edge")))
    }

    /// Fraction along the segment at which `p` lies, if it does.
    fn locate_on(&self, seg: &SegmentGeometry, p: &LaaksoPoint) -> Option<Scalar> {
        match seg {
            SegmentGeometry::Point(q) => (q == p).then(Scalar::zero),
            SegmentGeometry::Edge(e, o0, o1) => {
                let op = self.offset_on(p, *e)?;
                let frac = (&op - o0) / (o1 - o0);
                (!frac.is_negative() && frac <= BigRational::one()).then_some(Scalar::Exact(frac))
            }
        }
    }
}

enum SegmentGeometry {
    Point(LaaksoPoint),
    Edge(usize, BigRational, BigRational),
}

/// The graph with up to two query points spliced into their edges as
/// virtual nodes numbered after the real vertices.
struct Query<'g> {
    graph: &'g LaaksoGraph,
    /// `(point, edge, offset)`, sorted by edge then offset.
    virtuals: Vec<(LaaksoPoint, usize, BigRational)>,
}

impl<'g> Query<'g> {
    fn new(graph: &'g LaaksoGraph, points: &[&LaaksoPoint]) -> Self {
        let mut virtuals: Vec<(LaaksoPoint, usize, BigRational)> = points
            .iter()
            .filter_map(|p| match p {
                LaaksoPoint::OnEdge { edge, offset } => Some(((*p).clone(), *edge, offset.clone())),
                LaaksoPoint::Vertex { .. } => None,
            })
            .collect();
        virtuals.sort_by(|x, y| (x.1, &x.2).cmp(&(y.1, &y.2)));
        virtuals.dedup_by(|x, y| x.0 == y.0);
        Query { graph, virtuals }
    }

    fn len(&self) -> usize {
        self.graph.vertices.len() + self.virtuals.len()
    }

    fn node_of(&self, p: &LaaksoPoint) -> usize {
        match p {
            LaaksoPoint::Vertex { vertex } => *vertex,
            LaaksoPoint::OnEdge { .. } => {
                self.graph.vertices.len() + self.virtuals.iter().position(|v| v.0 == *p).expect("registered")
            }
        }
    }

    fn point_of(&self, node: usize) -> LaaksoPoint {
        let n = self.graph.vertices.len();
        if node < n {
            LaaksoPoint::vertex(node)
        } else {
            self.virtuals[node - n].0.clone()
        }
    }

    /// Nodes along `edge` in offset order: `(node, offset)` including both
    /// endpoints.
    fn chain(&self, edge: usize) -> Vec<(usize, BigRational)> {
        let e = &self.graph.edges[edge];
        let n = self.graph.vertices.len();
        let mut chain = vec![(e.a, BigRational::zero())];
        for (i, v) in self.virtuals.iter().enumerate() {
            if v.1 == edge {
                chain.push((n + i, v.2.clone()));
            }
        }
        chain.push((e.b, self.graph.edge_length.clone()));
        chain
    }

    /// Neighbours with edge weights, in edge-address order.
    fn neighbours(&self, node: usize) -> Vec<(usize, BigRational)> {
        let n = self.graph.vertices.len();
        let mut out = Vec::new();
        let mut along = |edge: usize, me: usize| {
            let chain = self.chain(edge);
            let i = chain.iter().position(|(v, _)| *v == me).expect("node on its edge");
            if i > 0 {
                out.push((chain[i - 1].0, &chain[i].1 - &chain[i - 1].1));
            }
            if i + 1 < chain.len() {
                out.push((chain[i + 1].0, &chain[i + 1].1 - &chain[i].1));
            }
        };
        if node < n {
            for &(_, edge) in &self.graph.adjacency[node] {
                along(edge, node);
            }
        } else {
            along(self.virtuals[node - n].1, node);
        }
        out
    }

    fn dijkstra(&self, source: usize) -> Vec<Option<BigRational>> {
        let mut dist: Vec<Option<BigRational>> = vec![None; self.len()];
        let mut done = vec![false; self.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(BigRational::zero());
        heap.push(Reverse((BigRational::zero(), source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for (w, wt) in self.neighbours(u) {
                let nd = &d + &wt;
                if dist[w].as_ref().is_none_or(|cur| nd < *cur) {
                    dist[w] = Some(nd.clone());
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        dist
    }
}

struct Dag<'g> {
    query: Query<'g>,
    forward: Vec<Option<BigRational>>,
    backward: Vec<Option<BigRational>>,
    total: BigRational,
    source: usize,
    target: usize,
}

impl Dag<'_> {
    fn on_dag(&self, n: usize) -> bool {
        match (&self.forward[n], &self.backward[n]) {
            (Some(f), Some(b)) => f + b == self.total,
            _ => false,
        }
    }

    fn successors(&self, u: usize) -> Vec<(usize, BigRational)> {
        let Some(fu) = &self.forward[u] else { return vec![] };
        self.query
            .neighbours(u)
            .into_iter()
            .filter(|(w, wt)| self.on_dag(*w) && self.forward[*w].as_ref() == Some(&(fu + wt)))
            .collect()
    }

    fn curve(&self, path: &[usize]) -> Result<GeodesicCurve<LaaksoPoint>> {
        let points = path.iter().map(|&n| self.query.point_of(n)).collect();
        let cumulative: Vec<Scalar> = path
            .iter()
            .map(|&n| Scalar::Exact(self.forward[n].clone().expect("reachable")))
            .collect();
        GeodesicCurve::constant_speed(points, &cumulative)
    }
}

impl MetricSpace for LaaksoGraph {
    type Point = LaaksoPoint;

    fn distance(&self, a: &LaaksoPoint, b: &LaaksoPoint) -> Result<Scalar> {
        self.laakso_distance(a, b).map(Scalar::Exact)
    }

    fn interpolate(&self, a: &LaaksoPoint, b: &LaaksoPoint, frac: &Scalar) -> Result<LaaksoPoint> {
        let frac = frac.to_exact()?;
        if a == b || frac.is_zero() {
            return Ok(a.clone());
        }
        if frac.is_one() {
            return Ok(b.clone());
        }
        match self.segment_geometry(a, b)? {
            SegmentGeometry::Point(p) => Ok(p),
            SegmentGeometry::Edge(e, oa, ob) => {
                let offset = &oa + (&ob - &oa) * frac;
                Ok(self.at_offset(e, offset))
            }
        }
    }

    fn segment_meet(
        &self,
        a: (&LaaksoPoint, &LaaksoPoint),
        b: (&LaaksoPoint, &LaaksoPoint),
        _tol: Tolerance,
    ) -> Result<Option<SegmentMeet>> {
        let sa = self.segment_geometry(a.0, a.1)?;
        let sb = self.segment_geometry(b.0, b.1)?;
        let meet = match (&sa, &sb) {
            (SegmentGeometry::Point(p), _) => match self.locate_on(&sb, p) {
                Some(beta) => SegmentMeet::Point {
                    a: Scalar::zero(),
                    b: beta,
                },
                None => SegmentMeet::Empty,
            },
            (_, SegmentGeometry::Point(q)) => match self.locate_on(&sa, q) {
                Some(alpha) => SegmentMeet::Point {
                    a: alpha,
                    b: Scalar::zero(),
                },
                None => SegmentMeet::Empty,
            },
            (SegmentGeometry::Edge(ea, a0, a1), SegmentGeometry::Edge(eb, b0, b1)) if ea == eb => {
                let lo = a0.clone().min(a1.clone()).max(b0.clone().min(b1.clone()));
                let hi = a0.clone().max(a1.clone()).min(b0.clone().max(b1.clone()));
                let fa = |o: &BigRational| Scalar::Exact((o - a0) / (a1 - a0));
                let fb = |o: &BigRational| Scalar::Exact((o - b0) / (b1 - b0));
                if lo > hi {
                    SegmentMeet::Empty
                } else if lo == hi {
                    SegmentMeet::Point { a: fa(&lo), b: fb(&lo) }
                } else {
                    SegmentMeet::Overlap {
                        start: (fa(&lo), fb(&lo)),
                        end: (fa(&hi), fb(&hi)),
                    }
                }
            }
            (SegmentGeometry::Edge(ea, ..), SegmentGeometry::Edge(eb, ..)) => {
                let (x, y) = (&self.edges[*ea], &self.edges[*eb]);
                let shared = [x.a, x.b].into_iter().find(|v| *v == y.a || *v == y.b);
                let hit = shared.and_then(|v| {
                    let p = LaaksoPoint::vertex(v);
                    Some((self.locate_on(&sa, &p)?, self.locate_on(&sb, &p)?))
                });
                match hit {
                    Some((alpha, beta)) => SegmentMeet::Point { a: alpha, b: beta },
                    None => SegmentMeet::Empty,
                }
            }
        };
        Ok(Some(meet))
    }

    fn same_point(&self, a: &LaaksoPoint, b: &LaaksoPoint, _tol: Tolerance) -> Result<bool> {
        Ok(a == b)
    }
}

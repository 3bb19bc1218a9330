use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use geodesy::laakso::{LaaksoGraph, LaaksoPoint};
use geodesy::scalar::format_rational;
use geodesy::{CurveDocument, Mode, SpaceDescriptor, Tolerance};
use serde_json::{json, Value};

use crate::io::{decimal, emit, envelope, read_json, render, table_csv, write_numbered, Format};
use crate::{Global, Status};

#[derive(Subcommand)]
pub enum LaaksoCommand {
    /// Vertices (with arc coordinates and a planar layout) and edges
    Build(Level),
    /// Exact distance between two points
    Dist(Query),
    /// Exact number of geodesics between two points
    Count(Query),
    /// List geodesics in edge-address order; with --out, one curve file each
    Enumerate {
        #[command(flatten)]
        query: Query,
        /// Stop after this many curves
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
}

#[derive(Args)]
pub struct Level {
    /// Construction level n
    #[arg(long, short = 'n')]
    level: u32,
}

#[derive(Args)]
pub struct Query {
    #[command(flatten)]
    level: Level,
    /// Start point, e.g. '{"vertex": 0}' or '{"edge": 3, "offset": "1/32"}' (default: endpoint 0)
    #[arg(long)]
    from: Option<String>,
    /// End point (default: endpoint 1)
    #[arg(long)]
    to: Option<String>,
}

fn graph(level: &Level) -> Result<LaaksoGraph> {
    Ok(LaaksoGraph::build(level.level)?)
}

fn endpoints(g: &LaaksoGraph, q: &Query) -> Result<(LaaksoPoint, LaaksoPoint)> {
    let (a, b) = g.endpoints();
    let parse = |arg: &Option<String>, default: LaaksoPoint, flag: &str| -> Result<LaaksoPoint> {
        let Some(arg) = arg else { return Ok(default) };
        let p: LaaksoPoint = serde_json::from_value(read_json(arg)?).with_context(|| format!("invalid {flag}"))?;
        g.validate(&p).with_context(|| format!("invalid {flag}"))?;
        Ok(p)
    };
    Ok((parse(&q.from, a, "--from")?, parse(&q.to, b, "--to")?))
}

pub fn run(g: &Global, cmd: &LaaksoCommand) -> Result<Status> {
    match cmd {
        LaaksoCommand::Build(level) => build(g, level),
        LaaksoCommand::Dist(q) => {
            let graph = graph(&q.level)?;
            let (a, b) = endpoints(&graph, q)?;
            let d = graph.laakso_distance(&a, &b)?;
            let mut r = envelope("laakso dist", g.seed);
            r.insert("level".into(), q.level.level.into());
            r.insert("from".into(), serde_json::to_value(&a)?);
            r.insert("to".into(), serde_json::to_value(&b)?);
            r.insert("distance".into(), format_rational(&d).into());
            emit(&render(&Value::Object(r), g.format)?, g.out.as_deref())?;
            Ok(Status::Pass)
        }
        LaaksoCommand::Count(q) => {
            let graph = graph(&q.level)?;
            let (a, b) = endpoints(&graph, q)?;
            let count = graph.count_geodesics(&a, &b)?;
            let mut r = envelope("laakso count", g.seed);
            r.insert("level".into(), q.level.level.into());
            r.insert("from".into(), serde_json::to_value(&a)?);
            r.insert("to".into(), serde_json::to_value(&b)?);
            r.insert("count".into(), count.to_string().into());
            emit(&render(&Value::Object(r), g.format)?, g.out.as_deref())?;
            Ok(Status::Pass)
        }
        LaaksoCommand::Enumerate { query, cap } => enumerate(g, query, *cap),
    }
}

fn build(g: &Global, level: &Level) -> Result<Status> {
    let graph = graph(level)?;
    let text = match g.format {
        Format::Json => {
            let mut r = envelope("laakso build", g.seed);
            let vertices: Vec<Value> = graph
                .vertices()
                .iter()
                .map(|v| json!({"id": v.id, "arc": format_rational(&v.arc), "x": v.x, "y": v.y}))
                .collect();
            r.insert("level".into(), level.level.into());
            r.insert("edge_length".into(), format_rational(graph.edge_length()).into());
            r.insert("vertices".into(), vertices.into());
            r.insert("edges".into(), serde_json::to_value(graph.edges())?);
            render(&Value::Object(r), g.format)?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = graph
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (&graph.vertices()[e.a], &graph.vertices()[e.b]);
                    vec![
                        e.id.to_string(),
                        e.a.to_string(),
                        e.b.to_string(),
                        e.address.clone(),
                        decimal(a.x),
                        decimal(a.y),
                        decimal(b.x),
                        decimal(b.y),
                    ]
                })
                .collect();
            table_csv(&["edge", "a", "b", "address", "xa", "ya", "xb", "yb"], &rows)?
        }
    };
    emit(&text, g.out.as_deref())?;
    Ok(Status::Pass)
}

fn enumerate(g: &Global, q: &Query, cap: usize) -> Result<Status> {
    let graph = graph(&q.level)?;
    let (a, b) = endpoints(&graph, q)?;
    let found = graph.enumerate_geodesics(&a, &b, cap)?;
    let descriptor = SpaceDescriptor::Laakso { level: q.level.level };
    let space = descriptor.build(Tolerance::new(g.tol))?;
    let docs: Vec<Value> = found
        .curves
        .iter()
        .map(|c| {
            let curve = c.map_points(|p| geodesy::AnyPoint::Laakso(p.clone()));
            CurveDocument {
                descriptor: descriptor.clone(),
                mode: Mode::Exact,
                space: space.clone(),
                curve,
            }
            .to_value()
        })
        .collect();
    let mut r = envelope("laakso enumerate", g.seed);
    r.insert("level".into(), q.level.level.into());
    r.insert("total".into(), found.total.to_string().into());
    r.insert("emitted".into(), docs.len().into());
    r.insert("truncated".into(), found.truncated.into());
    match &g.out {
        Some(dir) => {
            let files = write_numbered(dir, "geodesic", &docs)?;
            r.insert("files".into(), files.into());
        }
        None => {
            r.insert("curves".into(), docs.into());
        }
    }
    emit(&render(&Value::Object(r), g.format)?, None)?;
    Ok(Status::Pass)
}

//! CSV data for the three figures: the ℓ¹ plane, the Laakso graph and the
//! continuous-function witness.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use geodesy::laakso::LaaksoGraph;
use geodesy::normed::{
    family_geodesic, FunctionSpace, NormedSpace, PNormSpace, PiecewiseFunction, Poly2, WitnessSearch,
};
use geodesy::scalar::format_rational;
use geodesy::{GeodesicCurve, MetricSpace, Mode, Scalar, Tolerance};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::io::{decimal, emit, envelope, read_json, render, table_csv, write_file};
use crate::{Global, Status};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Figure {
    Onenorm,
    Laakso,
    Cts,
}

#[derive(Args)]
pub struct PlotArgs {
    figure: Figure,
    /// Laakso construction level
    #[arg(long, default_value_t = 1)]
    level: u32,
    /// Family members λ = k/steps for onenorm
    #[arg(long, default_value_t = 10)]
    steps: u32,
    /// Sample points on [0, 1] for the cts functions
    #[arg(long, default_value_t = 101)]
    samples: u32,
    /// The function g for cts, as a piecewise-polynomial JSON document (default g(x) = 2x)
    #[arg(long)]
    function: Option<String>,
}

pub fn run(g: &Global, a: &PlotArgs) -> Result<Status> {
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let tol = Tolerance::new(g.tol);
    let (mut report, status) = match a.figure {
        Figure::Onenorm => onenorm(&dir, a.steps, tol)?,
        Figure::Laakso => laakso(&dir, a.level)?,
        Figure::Cts => cts(&dir, a, tol)?,
    };
    let mut r = envelope("plot-data", g.seed);
    r.append(&mut report);
    emit(&render(&Value::Object(r), g.format)?, None)?;
    Ok(status)
}

type Report = serde_json::Map<String, Value>;

fn write(dir: &Path, name: &str, text: &str, files: &mut Vec<String>) -> Result<()> {
    write_file(&dir.join(name), text)?;
    files.push(name.to_string());
    Ok(())
}

fn polyline_rows(label: &str, lambda: &str, curve: &GeodesicCurve<Vec<Scalar>>, rows: &mut Vec<Vec<String>>) {
    for (i, b) in curve.breakpoints().iter().enumerate() {
        let xy = &b.point;
        rows.push(vec![
            label.into(),
            lambda.into(),
            i.to_string(),
            decimal(xy[0].to_f64()),
            decimal(xy[1].to_f64()),
        ]);
    }
}

fn onenorm(dir: &Path, steps: u32, tol: Tolerance) -> Result<(Report, Status)> {
    anyhow::ensure!(steps >= 1, "--steps must be at least 1");
    let space = PNormSpace::l1(2);
    let p = |a: i64, b: i64| vec![Scalar::int(a), Scalar::int(b)];
    let (u, v) = (p(0, 0), p(1, 1));
    let half = Scalar::ratio(1, 2);
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut ok = true;
    for k in 0..=steps {
        let lambda = Scalar::ratio(k.into(), steps.into());
        // the corner sits at (λ, 1 − λ)
        let curve = family_geodesic(&space, &u, &v, &p(1, 0), &p(0, 1), &half, &lambda, tol)?;
        let length = polyline_length(&space, &curve)?;
        ok &= length == Scalar::int(2);
        let label = format!("family_{k:04}");
        polyline_rows(&label, &lambda.to_string(), &curve, &mut rows);
        summary.push(vec![label, decimal(lambda.to_f64()), decimal(length.to_f64())]);
    }
    let unique = GeodesicCurve::segment(p(0, 0), p(-1, 0));
    polyline_rows("unique", "", &unique, &mut rows);
    summary.push(vec![
        "unique".into(),
        String::new(),
        decimal(polyline_length(&space, &unique)?.to_f64()),
    ]);

    let mut files = Vec::new();
    write(
        dir,
        "onenorm.csv",
        &table_csv(&["curve", "lambda", "index", "x", "y"], &rows)?,
        &mut files,
    )?;
    write(
        dir,
        "onenorm_summary.csv",
        &table_csv(&["curve", "lambda", "l1_length"], &summary)?,
        &mut files,
    )?;
    let mut r = Report::new();
    r.insert("figure".into(), "onenorm".into());
    r.insert("curves".into(), (steps + 1).into());
    r.insert("lengths_equal_2".into(), ok.into());
    r.insert("files".into(), files.into());
    Ok((r, if ok { Status::Pass } else { Status::Fail }))
}

fn polyline_length(space: &PNormSpace, curve: &GeodesicCurve<Vec<Scalar>>) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (a, b) in curve.segments() {
        total = total + space.distance(&a.point, &b.point)?;
    }
    Ok(total)
}

fn laakso(dir: &Path, level: u32) -> Result<(Report, Status)> {
    let graph = LaaksoGraph::build(level)?;
    let vertices: Vec<Vec<String>> = graph
        .vertices()
        .iter()
        .map(|v| vec![v.id.to_string(), format_rational(&v.arc), decimal(v.x), decimal(v.y)])
        .collect();
    let edges: Vec<Vec<String>> = graph
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
    let mut files = Vec::new();
    write(
        dir,
        "laakso_vertices.csv",
        &table_csv(&["id", "arc", "x", "y"], &vertices)?,
        &mut files,
    )?;
    write(
        dir,
        "laakso_edges.csv",
        &table_csv(&["edge", "a", "b", "address", "xa", "ya", "xb", "yb"], &edges)?,
        &mut files,
    )?;
    let mut r = Report::new();
    r.insert("figure".into(), "laakso".into());
    r.insert("level".into(), level.into());
    r.insert("vertices".into(), vertices.len().into());
    r.insert("edges".into(), edges.len().into());
    r.insert("files".into(), files.into());
    Ok((r, Status::Pass))
}

fn cts(dir: &Path, a: &PlotArgs, tol: Tolerance) -> Result<(Report, Status)> {
    anyhow::ensure!(a.samples >= 2, "--samples must be at least 2");
    let space = FunctionSpace;
    let g = match &a.function {
        Some(arg) => {
            let any = geodesy::AnySpace::Function(FunctionSpace);
            match any.parse_point(&read_json(arg)?, Mode::Exact, "--function")? {
                geodesy::AnyPoint::Function(f) => f,
                _ => unreachable!(),
            }
        }
        None => PiecewiseFunction::polynomial(Poly2::linear(
            BigRational::from_integer(0.into()),
            BigRational::from_integer(2.into()),
        )),
    };
    let norm = space.norm(&g)?;
    if !norm.eq_tol(&Scalar::one(), tol) {
        bail!("g must have unit L¹ norm, got {norm}");
    }
    let w = space.find_witness(&g, tol)?;
    let (Some(c), Some(h)) = (w.c.clone(), w.y.clone()) else {
        bail!("no witness for this g: {}", serde_json::to_string(&w.status)?);
    };
    let c_exact = c.to_exact()?;
    let cg = g.scale(&c_exact);
    // h − Cg splits into the region above Cg and the region below it
    let d = h.sub(&cg);
    let signed = Scalar::Exact(d.integral());
    let total = d.l1_norm();
    let two = Scalar::int(2);
    let above = (total.clone() + signed.clone()) / two.clone();
    let below = (total - signed) / two;
    let difference = (above.clone() - below.clone()).abs();
    let equal = difference.to_f64() <= 1e-12;

    let n = a.samples - 1;
    let rows: Vec<Vec<String>> = (0..=n)
        .map(|i| {
            let x = BigRational::new(BigInt::from(i), BigInt::from(n));
            let f = |p: &PiecewiseFunction| decimal(Scalar::Exact(p.eval(&x)).to_f64());
            vec![
                decimal(Scalar::Exact(x.clone()).to_f64()),
                f(&g),
                f(&cg),
                f(&h),
                decimal(c.to_f64()),
            ]
        })
        .collect();
    let summary = vec![vec![
        decimal(c.to_f64()),
        decimal(below.to_f64()),
        decimal(above.to_f64()),
        decimal(difference.to_f64()),
    ]];
    let mut files = Vec::new();
    write(
        dir,
        "cts.csv",
        &table_csv(&["x", "g", "Cg", "h", "C"], &rows)?,
        &mut files,
    )?;
    write(
        dir,
        "cts_summary.csv",
        &table_csv(&["C", "area_below", "area_above", "difference"], &summary)?,
        &mut files,
    )?;
    let mut r = Report::new();
    r.insert("figure".into(), "cts".into());
    r.insert("C".into(), serde_json::to_value(&c)?);
    r.insert("area_below".into(), serde_json::to_value(&below)?);
    r.insert("area_above".into(), serde_json::to_value(&above)?);
    r.insert("areas_equal".into(), equal.into());
    r.insert("files".into(), files.into());
    Ok((r, if equal { Status::Pass } else { Status::Fail }))
}

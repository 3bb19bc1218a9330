use anyhow::{bail, Context, Result};
use clap::Args;
use geodesy::constructions::{
    branch_truncated, cross_geodesic, lift_geodesic, splice as splice_curves, AlternativeChooser, BranchPlan,
    GluedPoint, GluedSpace, LaaksoChooser, NormedChooser,
};
use geodesy::normed::{family_geodesic, search_witness, NormedSpace, PExponent};
use geodesy::scalar::parse_rational;
use geodesy::{
    curves_disjoint, first_deviation, verify_geodesic, verify_geodesic_upper, AnyChooser, AnyPoint, AnySpace,
    CurveDocument, Disjointness, GeodesicCurve, MetricSpace, Mode, ParamGrid, Scalar, SpaceDescriptor, Tolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::io::{emit, envelope, merge, read_json, read_source, render, write_file, write_numbered};
use crate::{Global, Status};

fn tolerance(g: &Global) -> Tolerance {
    Tolerance::new(g.tol)
}

pub fn load_curve(g: &Global) -> Result<CurveDocument> {
    let arg = g.curve.as_deref().context("--curve is required")?;
    load_curve_from(arg, g)
}

fn load_curve_from(arg: &str, g: &Global) -> Result<CurveDocument> {
    let text = read_source(arg)?;
    Ok(CurveDocument::parse(&text, tolerance(g))?)
}

/// The `--space` descriptor, or `default` when the flag is absent.
pub fn load_space(g: &Global, default: SpaceDescriptor) -> Result<(SpaceDescriptor, AnySpace)> {
    let descriptor = match &g.space {
        Some(arg) => serde_json::from_value(read_json(arg)?).context("invalid space descriptor")?,
        None => default,
    };
    let space = descriptor.build(tolerance(g)).context("invalid space descriptor")?;
    Ok((descriptor, space))
}

fn taxicab_plane() -> SpaceDescriptor {
    SpaceDescriptor::Pnorm {
        n: 2,
        p: PExponent::One,
    }
}

fn point(space: &AnySpace, arg: &str, flag: &str) -> Result<AnyPoint> {
    Ok(space.parse_point(&read_json(arg)?, Mode::Exact, flag)?)
}

fn rational(arg: &str, flag: &str) -> Result<Scalar> {
    Ok(Scalar::Exact(
        parse_rational(arg).with_context(|| format!("{flag} expects a rational number"))?,
    ))
}

fn finish(g: &Global, report: Map<String, Value>) -> Result<()> {
    emit(&render(&Value::Object(report), g.format)?, g.out.as_deref())
}

/// Report always on stdout; `--out` receives the curve document.
fn finish_with_curve(g: &Global, report: Map<String, Value>, curve: &Value) -> Result<()> {
    if let Some(path) = &g.out {
        write_file(path, &(serde_json::to_string_pretty(curve)? + "\n"))?;
    }
    emit(&render(&Value::Object(report), g.format)?, None)
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Check only d(γ(s), γ(t)) ≤ |s − t|·d(u, v)
    #[arg(long)]
    upper: bool,
}

pub fn verify(g: &Global, a: &VerifyArgs) -> Result<Status> {
    let doc = load_curve(g)?;
    let tol = tolerance(g);
    let grid = ParamGrid::new(g.grid, &[&doc.curve])?;
    let verdict = if a.upper {
        verify_geodesic_upper(&doc.space, &doc.curve, &grid, tol)?
    } else {
        verify_geodesic(&doc.space, &doc.curve, &grid, tol)?
    };
    let mut r = envelope("verify", g.seed);
    r.insert("check".into(), if a.upper { "upper" } else { "equality" }.into());
    r.insert("space".into(), doc.descriptor.kind().into());
    r.insert("grid".into(), g.grid.into());
    merge(&mut r, verdict.record())?;
    finish(g, r)?;
    Ok(if verdict.passed() { Status::Pass } else { Status::Fail })
}

#[derive(Args)]
pub struct WitnessArgs {
    /// Unit vector x, as a JSON point of the space
    #[arg(long)]
    point: String,
    /// Also run the randomised search with this many attempts (vector spaces only)
    #[arg(long)]
    search: Option<usize>,
}

pub fn witness(g: &Global, a: &WitnessArgs) -> Result<Status> {
    let (descriptor, space) = load_space(g, taxicab_plane())?;
    let x = point(&space, &a.point, "--point")?;
    let tol = tolerance(g);
    let w = space.find_witness(&x, tol)?;
    let mut r = envelope("witness", g.seed);
    r.insert("space".into(), serde_json::to_value(&descriptor)?);
    merge(&mut r, &w)?;
    if let Some(attempts) = a.search {
        let AnyPoint::Vector(v) = &x else {
            bail!("--search needs a vector space")
        };
        let found = match &space {
            AnySpace::PNorm(s) => search_witness(s, v, attempts, g.seed, tol)?,
            AnySpace::Step(s) => search_witness(s, v, attempts, g.seed, tol)?,
            _ => bail!("--search needs a vector space"),
        };
        r.insert("search".into(), serde_json::to_value(found)?);
    }
    finish(g, r)?;
    Ok(Status::Pass)
}

#[derive(Args)]
pub struct FamilyArgs {
    #[arg(long, default_value = r#"["0","0"]"#)]
    u: String,
    #[arg(long, default_value = r#"["1","1"]"#)]
    v: String,
    /// Intermediate point with ‖x − u‖ = C‖v − u‖ and ‖v − x‖ = (1 − C)‖v − u‖
    #[arg(long, default_value = r#"["1","0"]"#)]
    x: String,
    /// Second intermediate point with the same distances
    #[arg(long, default_value = r#"["0","1"]"#)]
    y: String,
    #[arg(long, default_value = "1/2")]
    c: String,
    /// Members λ = k/steps for k = 0, …, steps
    #[arg(long, default_value_t = 10)]
    steps: u32,
}

pub fn family(g: &Global, a: &FamilyArgs) -> Result<Status> {
    anyhow::ensure!(a.steps >= 1, "--steps must be at least 1");
    let (descriptor, space) = load_space(g, taxicab_plane())?;
    let normed = space.as_normed()?;
    let tol = tolerance(g);
    let [u, v, x, y] = [(&a.u, "--u"), (&a.v, "--v"), (&a.x, "--x"), (&a.y, "--y")].map(|(p, f)| point(&space, p, f));
    let (u, v, x, y) = (u?, v?, x?, y?);
    let c = rational(&a.c, "--c")?;
    let mut curves = Vec::new();
    let mut members = Vec::new();
    let mut all_pass = true;
    for k in 0..=a.steps {
        let lambda = Scalar::ratio(k.into(), a.steps.into());
        let curve = family_geodesic(&normed, &u, &v, &x, &y, &c, &lambda, tol)?;
        let verdict = verify_geodesic(&space, &curve, &ParamGrid::new(g.grid, &[&curve])?, tol)?;
        all_pass &= verdict.passed();
        members.push(json!({"lambda": lambda, "verdict": verdict.record()}));
        curves.push(curve);
    }
    let grid = ParamGrid::uniform(g.grid)?;
    let mut disjoint = 0usize;
    let mut exact = true;
    let mut meetings = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            match curves_disjoint(&space, &curves[i], &curves[j], &grid, tol)? {
                Disjointness::Disjoint { exact: e } => {
                    disjoint += 1;
                    exact &= e;
                }
                Disjointness::Intersect { s, t } => meetings.push(json!({"pair": [i, j], "s": s, "t": t})),
            }
        }
    }
    let docs: Vec<Value> = curves
        .iter()
        .map(|c| {
            CurveDocument {
                descriptor: descriptor.clone(),
                mode: Mode::Exact,
                space: space.clone(),
                curve: c.clone(),
            }
            .to_value()
        })
        .collect();
    let mut r = envelope("family", g.seed);
    r.insert("space".into(), serde_json::to_value(&descriptor)?);
    r.insert("C".into(), serde_json::to_value(&c)?);
    r.insert("members".into(), members.into());
    r.insert("pairs".into(), (curves.len() * (curves.len() - 1) / 2).into());
    r.insert("disjoint_pairs".into(), disjoint.into());
    r.insert("disjointness_exact".into(), exact.into());
    r.insert("intersections".into(), meetings.into());
    match &g.out {
        Some(dir) => {
            let files = write_numbered(dir, "family", &docs)?;
            r.insert("files".into(), files.into());
            emit(&render(&Value::Object(r), g.format)?, None)?;
        }
        None => {
            r.insert("curves".into(), docs.into());
            emit(&render(&Value::Object(r), g.format)?, None)?;
        }
    }
    Ok(if all_pass && disjoint == curves.len() * (curves.len() - 1) / 2 {
        Status::Pass
    } else {
        Status::Fail
    })
}

#[derive(Args)]
pub struct GlueArgs {
    /// Glue point y₀ in the base space (default: the origin)
    #[arg(long)]
    glue: Option<String>,
    /// Number of cross-copy geodesic pairs to construct
    #[arg(long, default_value_t = 100)]
    pairs: usize,
}

fn glued_parts(space: &AnySpace) -> &GluedSpace<AnySpace> {
    match space {
        AnySpace::Glued(g) => g,
        _ => unreachable!("built from a glued descriptor"),
    }
}

fn into_any(curve: GeodesicCurve<GluedPoint<AnyPoint>>) -> GeodesicCurve<AnyPoint> {
    curve.map_points(|p| AnyPoint::Glued(Box::new(p.clone())))
}

fn passes_through(space: &AnySpace, curve: &GeodesicCurve<AnyPoint>, p: &AnyPoint, tol: Tolerance) -> Result<bool> {
    for b in curve.breakpoints() {
        if space.same_point(&b.point, p, tol)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn glue(g: &Global, a: &GlueArgs) -> Result<Status> {
    let (base_descriptor, base) = load_space(g, taxicab_plane())?;
    let normed = base.as_normed()?;
    let tol = tolerance(g);
    let AnyPoint::Vector(origin) = normed.zero() else {
        bail!("glue needs a vector base space")
    };
    let glue_json = match &a.glue {
        Some(arg) => read_json(arg)?,
        None => serde_json::to_value(&origin)?,
    };
    let y0 = base.parse_point(&glue_json, Mode::Exact, "--glue")?;
    let AnyPoint::Vector(y0v) = &y0 else {
        bail!("glue needs a vector base space")
    };
    let descriptor = SpaceDescriptor::Glued {
        base: Box::new(base_descriptor),
        glue: glue_json,
    };
    let space = descriptor.build(tol)?;
    let glued = glued_parts(&space);
    let grid = ParamGrid::uniform(g.grid)?;
    // the pieces are segments and two-leg curves, checked at their breakpoints
    // plus a coarse grid before gluing; --grid drives the disjointness tests
    let pre = ParamGrid::uniform(g.grid.min(16))?;
    let offset = |rng: &mut ChaCha8Rng| -> AnyPoint {
        AnyPoint::Vector(y0v.iter().map(|c| c + &Scalar::int(rng.gen_range(-4..=4))).collect())
    };
    let alternative = |seg: &GeodesicCurve<AnyPoint>| NormedChooser.alternative(&normed, seg, tol).ok();

    let glue_point = AnyPoint::Glued(Box::new(glued.glue_point()));
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut constructed = 0usize;
    let mut at_glue = 0usize;
    let mut disjoint_cross = 0usize;
    let mut first_pair = None;
    let mut draws = 0usize;
    while constructed < a.pairs {
        draws += 1;
        anyhow::ensure!(
            draws <= 100 * a.pairs.max(1),
            "could not construct {} distinct cross pairs",
            a.pairs
        );
        let (x, y) = (offset(&mut rng), offset(&mut rng));
        if x == y0 || y == y0 {
            continue;
        }
        let (sx, sy) = (
            GeodesicCurve::segment(x, y0.clone()),
            GeodesicCurve::segment(y0.clone(), y),
        );
        let (ax, ay) = (alternative(&sx), alternative(&sy));
        if ax.is_none() && ay.is_none() {
            continue;
        }
        let c1 = into_any(cross_geodesic(glued, &sx, &sy, &pre, tol)?);
        let c2 = into_any(cross_geodesic(
            glued,
            ax.as_ref().unwrap_or(&sx),
            ay.as_ref().unwrap_or(&sy),
            &pre,
            tol,
        )?);
        constructed += 1;
        // curves_disjoint reports the first meeting, which may lie on a shared leg
        match curves_disjoint(&space, &c1, &c2, &grid, tol)? {
            Disjointness::Disjoint { .. } => disjoint_cross += 1,
            Disjointness::Intersect { .. } => {
                if passes_through(&space, &c1, &glue_point, tol)? && passes_through(&space, &c2, &glue_point, tol)? {
                    at_glue += 1;
                }
            }
        }
        if first_pair.is_none() {
            first_pair = Some((c1, c2));
        }
    }

    // a λ-family lifted into copy 1, away from the glue point
    let shift = |d: [i64; 2]| -> AnyPoint {
        AnyPoint::Vector(
            y0v.iter()
                .enumerate()
                .map(|(i, c)| c + &Scalar::int(*d.get(i).unwrap_or(&0)))
                .collect(),
        )
    };
    let same_copy = (|| -> Result<Value> {
        anyhow::ensure!(y0v.len() >= 2, "needs dimension at least 2");
        let (u, v, x, y) = (shift([1, 1]), shift([2, 2]), shift([2, 1]), shift([1, 2]));
        let mut lifted = Vec::new();
        for k in 0..=10 {
            let curve = family_geodesic(
                &normed,
                &u,
                &v,
                &x,
                &y,
                &Scalar::ratio(1, 2),
                &Scalar::ratio(k, 10),
                tol,
            )?;
            lifted.push(into_any(lift_geodesic(glued, &curve, 1, &pre, tol)?));
        }
        let mut disjoint = 0usize;
        let mut pairs = 0usize;
        for i in 0..lifted.len() {
            for j in i + 1..lifted.len() {
                pairs += 1;
                if let Disjointness::Disjoint { .. } = curves_disjoint(&space, &lifted[i], &lifted[j], &grid, tol)? {
                    disjoint += 1;
                }
            }
        }
        Ok(json!({"curves": lifted.len(), "pairs": pairs, "disjoint_pairs": disjoint}))
    })();
    let same_copy = same_copy.unwrap_or_else(|e| json!({"skipped": format!("{e:#}")}));
    let same_copy_ok = same_copy
        .get("pairs")
        .is_some_and(|p| Some(p) == same_copy.get("disjoint_pairs"));

    let mut r = envelope("glue", g.seed);
    r.insert("space".into(), serde_json::to_value(&descriptor)?);
    r.insert("cross_pairs".into(), constructed.into());
    r.insert("cross_pairs_meeting_at_glue".into(), at_glue.into());
    r.insert("cross_pairs_disjoint".into(), disjoint_cross.into());
    r.insert("same_copy".into(), same_copy);
    if let (Some(dir), Some((c1, c2))) = (&g.out, first_pair) {
        let docs: Vec<Value> = [c1, c2]
            .into_iter()
            .map(|c| {
                CurveDocument {
                    descriptor: descriptor.clone(),
                    mode: Mode::Exact,
                    space: space.clone(),
                    curve: c,
                }
                .to_value()
            })
            .collect();
        let files = write_numbered(dir, "cross", &docs)?;
        r.insert("files".into(), files.into());
    }
    emit(&render(&Value::Object(r), g.format)?, None)?;
    Ok(if at_glue == constructed && same_copy_ok {
        Status::Pass
    } else {
        Status::Fail
    })
}

#[derive(Args)]
pub struct SpliceArgs {
    /// Replacement geodesic from γ(s) to γ(t): a curve document path or inline JSON
    #[arg(long = "with")]
    with: String,
    /// Window start s
    #[arg(long)]
    from: String,
    /// Window end t
    #[arg(long)]
    to: String,
}

pub fn splice(g: &Global, a: &SpliceArgs) -> Result<Status> {
    let gamma = load_curve(g)?;
    let sigma = load_curve_from(&a.with, g).context("in --with")?;
    anyhow::ensure!(
        gamma.descriptor == sigma.descriptor,
        "--curve and --with live in different spaces"
    );
    let (s, t) = (rational(&a.from, "--from")?, rational(&a.to, "--to")?);
    let tol = tolerance(g);
    let out = gamma.with_curve(splice_curves(&gamma.space, &gamma.curve, &s, &t, &sigma.curve, tol)?);
    let verdict = verify_geodesic(&out.space, &out.curve, &ParamGrid::new(g.grid, &[&out.curve])?, tol)?;
    let mut r = envelope("splice", g.seed);
    r.insert("s".into(), serde_json::to_value(&s)?);
    r.insert("t".into(), serde_json::to_value(&t)?);
    merge(&mut r, verdict.record())?;
    let doc = out.to_value();
    if g.out.is_none() {
        r.insert("curve".into(), doc.clone());
    }
    finish_with_curve(g, r, &doc)?;
    Ok(if verdict.passed() { Status::Pass } else { Status::Fail })
}

#[derive(Args)]
pub struct BranchArgs {
    /// Branch time t ∈ (0, 1)
    #[arg(long)]
    t: String,
    /// Truncation depth M
    #[arg(long)]
    depth: u32,
    /// Start index n (default: the smallest n with t + 2⁻ⁿ < 1)
    #[arg(long)]
    start: Option<u32>,
    /// Enumeration cap used when choosing Laakso alternatives
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

pub fn branch(g: &Global, a: &BranchArgs) -> Result<Status> {
    let doc = load_curve(g)?;
    let t = parse_rational(&a.t).context("--t expects a rational number")?;
    let plan = match a.start {
        Some(n) => BranchPlan::with_start(t, n, a.depth)?,
        None => BranchPlan::new(t, a.depth)?,
    };
    let tol = tolerance(g);
    let grid = ParamGrid::uniform(g.grid)?;
    let chooser = AnyChooser {
        laakso: LaaksoChooser { cap: a.cap },
    };
    let result = branch_truncated(&doc.space, &doc.curve, &plan, &chooser, &grid, tol)?;
    let out = doc.with_curve(result.curve);
    let verdict = verify_geodesic(&out.space, &out.curve, &ParamGrid::new(g.grid, &[&out.curve])?, tol)?;
    let bracket = first_deviation(&doc.space, &doc.curve, &out.curve, &grid, tol)?;
    let (lo, hi) = result.windows.last().cloned().context("plan has no windows")?;
    let within = bracket
        .as_ref()
        .is_some_and(|b| b.agree_until >= lo && b.differs_at > lo && b.differs_at <= hi);
    let mut r = envelope("branch", g.seed);
    r.insert("plan".into(), serde_json::to_value(&plan)?);
    r.insert("windows".into(), serde_json::to_value(&result.windows)?);
    r.insert("agree_until".into(), serde_json::to_value(plan.agree_until())?);
    r.insert("deviation".into(), serde_json::to_value(&bracket)?);
    r.insert("deviation_in_last_window".into(), within.into());
    merge(&mut r, verdict.record())?;
    let curve = out.to_value();
    if g.out.is_none() {
        r.insert("curve".into(), curve.clone());
    }
    finish_with_curve(g, r, &curve)?;
    Ok(if verdict.passed() && within {
        Status::Pass
    } else {
        Status::Fail
    })
}

use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use super::{tolerance, Command, CurveSource, Ints, ManifoldArg, Window};
use crate::cattorus;
use crate::curves::{
    self, contact_defect, full_lutz_twist, perturb_critical_surface, reeb_velocity, torsion_count_relative,
    winding_angle, zero_torsion_witness, BottProfile, ClosedForm, LutzCurve, PerturbationBump,
};
use crate::fixtures;
use crate::flow::{self, angle_distance, FlowState};
use crate::graphlink::{
    bott_integrable_overtwisted, check_d2_algebra, euler_from_critical_link, graph_link_representable,
    jsj_complex, lutz_twist_bookkeeping, CriticalLinkDesc, D2Tuple, GraphManifoldDesc, PlaneField,
};
use crate::zlinalg::{graph_first_betti, smith_normal_form, IntMatrix, JsonInt, Presentation};
use crate::{Error, Execution, Result};

pub(super) struct Outcome {
    pub report: Value,
    /// Set when the command ran but a verification did not hold.
    pub failure: Option<String>,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Outcome { report, failure: None }
    }
}

pub(super) fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CheckContact { source, window } => check_contact(source, window),
        Command::ReebFlow {
            source,
            window,
            duration,
            dt,
            x1,
            x2,
            csv,
        } => reeb_flow(source, window, *duration, *dt, [*x1, *x2], csv.as_deref()),
        Command::Winding { source, window } => winding(source, window),
        Command::Torsion { source, window } => torsion(source, window),
        Command::LutzTwist { source, window, out } => lutz_twist(source, window, out.as_deref()),
        Command::Perturb { delta, epsilon } => perturb(*delta, *epsilon),
        Command::Homology { matrix, ngens, manifold } => homology(matrix.as_deref(), *ngens, manifold.as_deref()),
        Command::Snf { matrix, ngens } => snf(matrix.as_deref(), *ngens),
        Command::Jsj { manifold } => jsj(manifold),
        Command::DecideGraphlink { manifold, class } => decide_graphlink(manifold, class),
        Command::DecideBott { manifold, euler } => decide_bott(manifold, euler),
        Command::Euler { manifold, link } => euler(manifold, link.as_deref()),
        Command::D2 { manifold, tuple, class } => d2(manifold, tuple, class.as_ref()),
        Command::CatmapVerify { n } => catmap_verify(*n),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::field(path.display().to_string(), e.to_string()))
}

fn load_curve(source: &CurveSource, window: &Window) -> Result<LutzCurve> {
    match (&source.curve, source.n) {
        (Some(_), Some(_)) => Err(Error::Validation("give either --curve or --n, not both".into())),
        (Some(path), None) => LutzCurve::from_json(&read(path)?),
        (None, Some(n)) => LutzCurve::alpha_n(n, window.t0.unwrap_or(0.0), window.t1.unwrap_or(1.0)),
        (None, None) => Err(Error::Validation("one of --curve or --n is required".into())),
    }
}

/// The window flags, defaulting to the curve's domain.
fn interval(curve: &LutzCurve, window: &Window) -> Result<(f64, f64)> {
    let (lo, hi) = curve.domain();
    let a = window.t0.unwrap_or(lo);
    let b = window.t1.unwrap_or(hi);
    for t in [a, b] {
        if !curve.contains(t) {
            return Err(Error::Domain { t, lo, hi });
        }
    }
    Ok((a, b))
}

fn check_contact(source: &CurveSource, window: &Window) -> Result<Outcome> {
    let curve = load_curve(source, window)?;
    let (a, b) = interval(&curve, window)?;
    let ts: Vec<f64> = curves::grid(a, b, curves::CHECK_SAMPLES).collect();
    let deltas = Execution::default().try_map(&ts, |&t| contact_defect(&curve, t))?;
    let first_violation = ts.iter().zip(&deltas).find(|(_, d)| !(**d < 0.0)).map(|(t, _)| *t);
    let max = deltas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = deltas.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(json!({
        "contact": first_violation.is_none(),
        "interval": [a, b],
        "samples": ts.len(),
        "max_delta": max,
        "min_delta": min,
        "first_violation": first_violation,
    })
    .into())
}

fn reeb_flow(
    source: &CurveSource,
    window: &Window,
    duration: f64,
    dt: f64,
    x0: [f64; 2],
    csv: Option<&Path>,
) -> Result<Outcome> {
    // --t0 is the starting level here, not the domain start
    let curve = load_curve(source, &Window { t0: None, t1: window.t1 })?;
    let (lo, hi) = curve.domain();
    let t = window.t0.unwrap_or(0.5 * (lo + hi));
    let profile = BottProfile::Quadratic {
        center: 0.5 * (lo + hi),
        value: 0.0,
        sign: 1.0,
    };
    let start = FlowState::new(t, x0[0], x0[1]);
    let traj = match flow::integrate_reeb(&curve, &profile, start, duration, dt) {
        Ok(traj) => traj,
        Err(Error::FlowAborted { partial, cause }) => {
            if let Some(path) = csv {
                partial.write_csv(fs::File::create(path)?)?;
            }
            return Err(Error::FlowAborted { partial, cause });
        }
        Err(e) => return Err(e),
    };
    if let Some(path) = csv {
        traj.write_csv(fs::File::create(path)?)?;
    }
    let end = *traj.last();
    let back = flow::integrate_reeb_backward(&curve, &profile, end, duration, dt)?;
    let home = back.last();
    let reversibility = angle_distance(home.x1, start.x1)
        .max(angle_distance(home.x2, start.x2))
        .max((home.t - start.t).abs());
    Ok(json!({
        "start": start,
        "T": duration,
        "dt": dt,
        "steps": traj.states().len() - 1,
        "reeb_velocity": reeb_velocity(&curve, t)?,
        "final": end,
        "integral_drift": traj.integral_drift,
        "t_drift": traj.t_drift,
        "max_error_vs_exact": traj.max_error_vs_exact(&curve)?,
        "reversibility_error": reversibility,
    })
    .into())
}

fn winding(source: &CurveSource, window: &Window) -> Result<Outcome> {
    let curve = load_curve(source, window)?;
    let (a, b) = interval(&curve, window)?;
    let w = winding_angle(&curve, a, b)?;
    Ok(json!({ "interval": [a, b], "winding": w, "turns": w / TAU }).into())
}

fn torsion(source: &CurveSource, window: &Window) -> Result<Outcome> {
    let curve = load_curve(source, window)?;
    let (lo, hi) = curve.domain();
    let base = LutzCurve::alpha_n(0, lo, hi)?;
    Ok(json!({
        "domain": [lo, hi],
        "torsion": torsion_count_relative(&curve, &base)?,
        "zero_torsion_witness": zero_torsion_witness(&curve),
    })
    .into())
}

fn lutz_twist(source: &CurveSource, window: &Window, out: Option<&Path>) -> Result<Outcome> {
    let curve = if source.curve.is_none() && source.n.is_none() {
        LutzCurve::closed_form(ClosedForm::horizontal_segment(0.0, 1.0), -1.0, 1.0)?
    } else {
        load_curve(source, &Window { t0: None, t1: None })?
    };
    let (lo, hi) = curve.domain();
    let quarter = 0.25 * (hi - lo);
    let a = window.t0.unwrap_or(lo + quarter);
    let b = window.t1.unwrap_or(hi - quarter);
    if !(a < b) {
        return Err(Error::Validation(format!("empty twist window [{a}, {b}]")));
    }
    let s0 = 0.5 * (a + b);
    let eps = 0.5 * (b - a);
    let height = curve.eval(s0)?.h2;
    let twisted = full_lutz_twist(&curve, s0, eps, height)?;
    let before = winding_angle(&curve, lo, hi)?;
    let after = winding_angle(&twisted, lo, hi)?;
    let defects = twisted.sample_contact_defect(Execution::default())?;
    let worst = defects.iter().map(|(_, d)| *d).fold(f64::NEG_INFINITY, f64::max);
    if let Some(path) = out {
        fs::write(path, twisted.to_doc()?.to_json()?)?;
    }
    Ok(json!({
        "center": s0,
        "half_width": eps,
        "height": height,
        "winding_before": before,
        "winding_after": after,
        "winding_delta": after - before,
        "max_delta": worst,
        "contact": worst < 0.0,
    })
    .into())
}

fn perturb(delta: f64, epsilon: f64) -> Result<Outcome> {
    let bump = PerturbationBump::new(delta, epsilon)?;
    Ok(serde_json::to_value(perturb_critical_surface(&bump)?)?.into())
}

fn load_matrix(path: Option<&Path>, ngens: Option<usize>) -> Result<IntMatrix> {
    match path {
        None => Ok(cattorus::cat_h1_presentation()),
        Some(p) => {
            let rows: Vec<Vec<JsonInt>> = serde_json::from_str(&read(p)?)?;
            IntMatrix::from_json_rows(rows, ngens)
        }
    }
}

fn homology(matrix: Option<&Path>, ngens: Option<usize>, manifold: Option<&Path>) -> Result<Outcome> {
    let group = match manifold {
        Some(path) => {
            let desc = load_manifold(path)?;
            desc.presentation().group().with_free_summand(desc.k())
        }
        None => {
            let m = load_matrix(matrix, ngens)?;
            let width = ngens.unwrap_or(m.cols());
            Presentation::new(m, width)?.group()
        }
    };
    let mut report = serde_json::to_value(&group)?;
    report["group"] = json!(group.to_string());
    Ok(report.into())
}

fn snf(matrix: Option<&Path>, ngens: Option<usize>) -> Result<Outcome> {
    let m = load_matrix(matrix, ngens)?;
    let s = smith_normal_form(&m);
    let verified = s.verify(&m);
    let report = json!({
        "input": m,
        "d": s.d,
        "u": s.u,
        "v": s.v,
        "invariant_factors": s.invariant_factors().into_iter().map(JsonInt).collect::<Vec<_>>(),
        "rank": s.rank(),
        "verified": verified,
    });
    Ok(Outcome {
        report,
        failure: (!verified).then(|| "U M V = D does not hold".to_string()),
    })
}

fn load_manifold(path: &Path) -> Result<GraphManifoldDesc> {
    if !path.exists() {
        if let Some(text) = fixtures::by_name(&path.to_string_lossy()) {
            return GraphManifoldDesc::from_json(text);
        }
    }
    GraphManifoldDesc::from_json(&read(path)?)
}

fn jsj(m: &ManifoldArg) -> Result<Outcome> {
    let desc = load_manifold(&m.manifold)?;
    let g = jsj_complex(&desc)?;
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edges(),
        "components": g.connected_components(),
        "betti": graph_first_betti(&g),
    })
    .into())
}

fn decide_graphlink(m: &ManifoldArg, class: &Ints) -> Result<Outcome> {
    let desc = load_manifold(&m.manifold)?;
    let u = desc.class_from_coords(class.0.clone())?;
    Ok(json!({ "representable": graph_link_representable(&desc, &u)? }).into())
}

fn decide_bott(m: &ManifoldArg, euler: &Ints) -> Result<Outcome> {
    let desc = load_manifold(&m.manifold)?;
    let xi = PlaneField::new(desc.class_from_coords(euler.0.clone())?);
    Ok(json!({ "bott_integrable": bott_integrable_overtwisted(&desc, &xi)? }).into())
}

fn default_link(path: &Path) -> Result<CriticalLinkDesc> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    match name {
        "cat_torus.json" => Ok(fixtures::cat_alpha_link(1)),
        "seifert_vertex.json" => Ok(fixtures::seifert_links().swap_remove(0)),
        "cat_plus_s1s2.json" => Ok(fixtures::cat_plus_s1s2_link()),
        _ => Err(Error::Validation(
            "--link is required for descriptions other than the shipped fixtures".into(),
        )),
    }
}

fn euler(m: &ManifoldArg, link: Option<&Path>) -> Result<Outcome> {
    let desc = load_manifold(&m.manifold)?;
    let link = match link {
        Some(p) => serde_json::from_str(&read(p)?)?,
        None => default_link(&m.manifold)?,
    };
    let e = euler_from_critical_link(&desc, &link)?;
    Ok(json!({
        "components": link.components.len(),
        "euler_pd": e,
        "euler_pd_named": desc.describe(&e),
        "representable": graph_link_representable(&desc, &e)?,
    })
    .into())
}

fn d2(m: &ManifoldArg, tuple: &Path, class: Option<&Ints>) -> Result<Outcome> {
    let desc = load_manifold(&m.manifold)?;
    let tuple: D2Tuple = serde_json::from_str(&read(tuple)?)?;
    for (name, c) in [
        ("d12", Some(&tuple.d12)),
        ("d23", Some(&tuple.d23)),
        ("d13", Some(&tuple.d13)),
        ("e1", Some(&tuple.e1)),
        ("e2", Some(&tuple.e2)),
        ("d21", tuple.d21.as_ref()),
    ] {
        if let Some(c) = c {
            desc.check_class(c).map_err(|e| Error::field(name, e.to_string()))?;
        }
    }
    let report = check_d2_algebra(&desc, &tuple)?;
    let mut value = serde_json::to_value(report)?;
    if let Some(k) = class {
        let k = desc.class_from_coords(k.0.clone())?;
        let d13 = desc.canonical(&tuple.d13)?;
        value["after_twist"] = serde_json::to_value(lutz_twist_bookkeeping(&desc, &d13, &k)?)?;
    }
    Ok(Outcome {
        report: value,
        failure: (!report.all_pass()).then(|| "obstruction identities do not hold".to_string()),
    })
}

const FIBONACCI: [f64; 6] = [1.0, 1.0, 2.0, 3.0, 5.0, 8.0];
const VERIFY_SAMPLES: usize = 1000;

fn catmap_verify(n: u32) -> Result<Outcome> {
    let tol = tolerance()?;
    let ts: Vec<f64> = curves::grid(0.0, 3.0, VERIFY_SAMPLES - 1).collect();
    let exec = Execution::default();
    let equivariance = exec
        .map(&ts, |&t| cattorus::check_equivariance(n, t))
        .into_iter()
        .fold(0.0, f64::max);
    let determinant = exec
        .map(&ts, |&t| {
            (cattorus::alpha_n(n, t).delta() - cattorus::alpha_n_contact_determinant(n, t)).abs()
        })
        .into_iter()
        .fold(0.0, f64::max);
    let row = cattorus::fibonacci_row(n);
    let fib = row
        .iter()
        .zip(FIBONACCI)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let origin = cattorus::alpha_n(n, 0.0);
    let origin_residual = origin.h1.abs().max((origin.h2 - 1.0).abs());
    let curve = LutzCurve::alpha_n(n, 0.0, 1.0)?;
    let torsion = torsion_count_relative(&curve, &LutzCurve::alpha_n(0, 0.0, 1.0)?)?;
    let witness = zero_torsion_witness(&curve);

    let checks = [
        ("equivariance", equivariance < tol),
        ("contact_determinant", determinant < tol),
        ("fibonacci", fib < tol),
        ("initial_value", origin_residual < tol),
        ("torsion", torsion == i64::from(n)),
        ("zero_torsion_witness", witness == (n == 0)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    let report = json!({
        "n": n,
        "tolerance": tol,
        "samples": ts.len(),
        "equivariance_max_residual": equivariance,
        "contact_determinant_max_residual": determinant,
        "fibonacci_row": row,
        "fibonacci_max_residual": fib,
        "initial_value_residual": origin_residual,
        "torsion": torsion,
        "zero_torsion_witness": witness,
        "pass": failed.is_empty(),
    });
    Ok(Outcome {
        report,
        failure: (!failed.is_empty()).then(|| failed.join(", ")),
    })
}

// SPDX-License-Identifier: Apache-2.0

use serde_json::{json, Value};

use zxforge::infogeo::{
    bernoulli, bloch_theta, chart, diag_qubit, fisher_matrix, fs_pullback, fubini_study, kahler_check, kl_quadratic_check, qfi,
    qfi_report, qgt, score_covariance, DensityFamily, InfoGeoError, QfiMethod, StateFamily,
};
use zxforge::C64;

use crate::output::{matrix, real_matrix};
use crate::{Failure, Outcome};

/// Largest `n` for `chart-<n>`.
pub const MAX_CHART: usize = 16;

const KL_DELTAS: [f64; 3] = [1e-1, 1e-2, 1e-3];

enum Family {
    Bernoulli,
    BlochTheta,
    DiagQubit,
    Chart(usize),
}

fn family(name: &str) -> Result<Family, Failure> {
    match name {
        "bernoulli" => Ok(Family::Bernoulli),
        "bloch-theta" => Ok(Family::BlochTheta),
        "diag-qubit" => Ok(Family::DiagQubit),
        _ => {
            let n = name
                .strip_prefix("chart-")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Failure::input(format!("unknown family {name:?}")))?;
            if n == 0 {
                return Err(Failure::input("chart dimension must be positive"));
            }
            if n > MAX_CHART {
                return Err(Failure { code: 3, message: format!("chart dimension {n} exceeds the cap of {MAX_CHART}") });
            }
            Ok(Family::Chart(n))
        }
    }
}

fn geo(e: InfoGeoError) -> Failure {
    Failure::input(e.to_string())
}

fn params(theta: Option<&[f64]>, d: usize, default: f64) -> Result<Vec<f64>, Failure> {
    let t = theta.map(<[f64]>::to_vec).unwrap_or_else(|| vec![default; d]);
    if t.len() != d {
        return Err(Failure::input(format!("expected {d} parameter(s), got {}", t.len())));
    }
    Ok(t)
}

fn state_family(f: &Family) -> Option<StateFamily<f64>> {
    match f {
        Family::BlochTheta => Some(bloch_theta()),
        Family::Chart(n) => Some(chart(*n)),
        _ => None,
    }
}

fn fisher(theta: &[f64]) -> Result<Value, Failure> {
    let f = bernoulli::<f64>();
    let value = fisher_matrix(&f, theta).map_err(geo)?;
    let cov = score_covariance(&f, theta).map_err(geo)?;
    let dev = value.iter().flatten().zip(cov.iter().flatten()).fold(0f64, |m, (a, b)| m.max((a - b).abs()));
    let kl = kl_quadratic_check(&f, theta, &[1.0], &KL_DELTAS).map_err(geo)?;
    Ok(json!({
        "value": real_matrix(&value),
        "score_covariance": real_matrix(&cov),
        "covariance_deviation": dev,
        "kl": kl,
    }))
}

fn quantum_fisher(fam: &Family, theta: &[f64], method: QfiMethod) -> Result<Value, Failure> {
    let density = match fam {
        Family::DiagQubit => diag_qubit(),
        Family::BlochTheta => DensityFamily::pure(bloch_theta()).map_err(geo)?,
        _ => return Err(Failure::input("qfi supports diag-qubit and bloch-theta")),
    };
    let t = theta[0];
    let mut doc = json!({
        "method": method,
        "value": qfi(&density, t, method).map_err(geo)?,
        "report": qfi_report(&density, t).map_err(geo)?,
    });
    if let Family::BlochTheta = fam {
        let q = qgt(&bloch_theta(), theta).map_err(geo)?;
        doc["four_re_qgt"] = json!(4.0 * q[(0, 0)].re);
    }
    Ok(doc)
}

fn chart_point(theta: &[f64]) -> Vec<C64> {
    theta.chunks(2).map(|c| C64::new(c[0], c[1])).collect()
}

fn geometric_tensor(fam: &Family, theta: &[f64]) -> Result<Value, Failure> {
    let f = state_family(fam).ok_or_else(|| Failure::input("qgt supports bloch-theta and chart-<n>"))?;
    let q = qgt(&f, theta).map_err(geo)?;
    let mut doc = json!({ "value": matrix(&q), "hermiticity": q.max_abs_diff(&q.dagger()) });
    if let Family::Chart(_) = fam {
        let h = fs_pullback(&q).map_err(geo)?;
        let g = fubini_study(&chart_point(theta));
        doc["pullback"] = matrix(&h);
        doc["pullback_deviation"] = json!(h.max_abs_diff(&g));
    }
    Ok(doc)
}

fn fubini(fam: &Family, theta: &[f64]) -> Result<Value, Failure> {
    let Family::Chart(_) = fam else {
        return Err(Failure::input("fs supports chart-<n>"));
    };
    let z = chart_point(theta);
    let g = fubini_study(&z);
    let pulled = fs_pullback(&qgt(&chart(z.len()), theta).map_err(geo)?).map_err(geo)?;
    Ok(json!({
        "value": matrix(&g),
        "pullback_deviation": pulled.max_abs_diff(&g),
        "kahler_deviation": kahler_check(&z),
    }))
}

pub fn run(task: &str, family_name: &str, theta: Option<&[f64]>, method: &str) -> Result<Outcome, Failure> {
    let fam = family(family_name)?;
    let d = match fam {
        Family::Chart(n) => 2 * n,
        _ => 1,
    };
    let default = if let Family::Chart(_) = fam { 0.0 } else { 0.5 };
    let t = params(theta, d, default)?;
    let body = match task {
        "fisher" => match fam {
            Family::Bernoulli => fisher(&t)?,
            _ => return Err(Failure::input("fisher supports bernoulli")),
        },
        "qfi" => quantum_fisher(&fam, &t, method.parse().map_err(Failure::input)?)?,
        "qgt" => geometric_tensor(&fam, &t)?,
        "fs" => fubini(&fam, &t)?,
        _ => return Err(Failure::input(format!("unknown task {task:?}; expected fisher, qfi, qgt or fs"))),
    };
    let mut doc = json!({ "task": task, "family": family_name, "theta": t });
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, body) {
        dst.extend(src);
    }
    Ok(Outcome::ok(doc))
}

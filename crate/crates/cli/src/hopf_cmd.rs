// SPDX-License-Identifier: Apache-2.0

use serde_json::{json, Value};

use zxforge::hopf::{
    build_group_algebra, check_antipode, check_f_hopf, check_hopf, check_unnormalized_bialgebra, rescale_normalized, zx_structures,
    AxiomReport, HopfError, HopfStructure,
};
use zxforge::{Hopf, Matrix};

use crate::{Failure, Outcome};

/// Largest group order for `cyclic`; the bialgebra check is `O(n⁸)`.
pub const MAX_CYCLIC: usize = 8;

fn shape(e: HopfError) -> Failure {
    Failure { code: 4, message: e.to_string() }
}

fn report(r: &AxiomReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

type Named = Vec<(&'static str, AxiomReport)>;

/// The suites that must pass, plus the assembled bialgebra.
fn suites(red: &Hopf, green: &Hopf) -> Result<(Named, Hopf), Failure> {
    let bialgebra = HopfStructure::assemble(red, green).map_err(shape)?;
    let passing = vec![
        ("hopf", check_hopf(&bialgebra).map_err(shape)?),
        ("f_hopf", check_f_hopf(red, green).map_err(shape)?),
        ("normalized", check_hopf(&rescale_normalized(&bialgebra)).map_err(shape)?),
    ];
    Ok((passing, bialgebra))
}

pub fn run(target: &str, n: Option<usize>) -> Result<Outcome, Failure> {
    let (label, red, green) = match (target, n) {
        ("zx", None) => ("zx".to_string(), zx_structures::<f64>().0, zx_structures::<f64>().1),
        ("cyclic", Some(0)) => return Err(Failure::input("group order must be positive")),
        ("cyclic", Some(n)) if n > MAX_CYCLIC => {
            return Err(Failure { code: 3, message: format!("cyclic order {n} exceeds the cap of {MAX_CYCLIC}") })
        }
        ("cyclic", Some(n)) => {
            let (r, g) = build_group_algebra::<f64>(n);
            (format!("cyclic {n}"), r, g)
        }
        ("cyclic", None) => return Err(Failure::input("cyclic needs a group order, e.g. `cyclic 2`")),
        _ => return Err(Failure::input(format!("unknown target {target:?}; expected `zx` or `cyclic <n>`"))),
    };
    let (passing, bialgebra) = suites(&red, &green)?;

    // Controls: in dimension at least 2 a single colour is not a bialgebra,
    // and from order 3 on the identity is not an antipode.
    let mut expected_failures = Vec::new();
    if red.dim >= 2 {
        expected_failures.push(("green_bialgebra", check_unnormalized_bialgebra(&green).map_err(shape)?));
    }
    if red.dim >= 3 {
        let wrong = bialgebra.with_antipode(Matrix::identity(red.dim));
        expected_failures.push(("identity_antipode", check_antipode(&wrong).map_err(shape)?));
    }

    let pass = passing.iter().all(|(_, r)| r.passed()) && expected_failures.iter().all(|(_, r)| !r.passed());
    let mut doc = json!({
        "target": label,
        "dim": red.dim,
        "lozenge": bialgebra.lozenge,
        "pass": pass,
    });
    for (name, r) in &passing {
        doc[*name] = report(r);
    }
    doc["expected_failures"] = Value::Object(
        expected_failures
            .iter()
            .map(|(name, r)| (name.to_string(), json!({ "failed": !r.passed(), "report": report(r) })))
            .collect(),
    );
    Ok(Outcome { body: crate::Body::Json(doc), code: if pass { 0 } else { 4 } })
}

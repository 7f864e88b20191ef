// SPDX-License-Identifier: Apache-2.0

//! Line-oriented circuit text format.
//!
//! ```text
//! qubits 3
//! # comment
//! H 0
//! RZ 1/4 2
//! CNOT 0 1
//! ```

use super::{Circuit, CircuitError, Gate, GateKind};
use crate::phase::Phase;

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let head = tokens.next().expect("non-empty line has a token");
        let perr = |message: String| CircuitError::Parse { line, message };

        let Some(c) = circuit.as_mut() else {
            if head != "qubits" {
                return Err(perr(format!("expected `qubits <n>` header, found `{head}`")));
            }
            let n = tokens
                .next()
                .ok_or_else(|| perr("missing qubit count".into()))?
                .parse::<usize>()
                .map_err(|e| perr(format!("bad qubit count: {e}")))?;
            if n == 0 {
                return Err(perr("qubit count must be positive".into()));
            }
            if let Some(extra) = tokens.next() {
                return Err(perr(format!("unexpected token `{extra}` after qubit count")));
            }
            circuit = Some(Circuit::new(n));
            continue;
        };

        let kind = match head {
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "T" => GateKind::T,
            "SD" => GateKind::Sdg,
            "TD" => GateKind::Tdg,
            "CNOT" => GateKind::Cnot,
            "CCNOT" => GateKind::Ccnot,
            "RZ" | "RX" => {
                let angle = tokens.next().ok_or_else(|| perr(format!("{head} needs an angle `num/den`")))?;
                if !angle.contains('/') {
                    return Err(perr(format!("angle `{angle}` must be written `num/den`")));
                }
                let a: Phase = angle.parse().map_err(|e| perr(format!("{e}")))?;
                if head == "RZ" {
                    GateKind::Rz(a)
                } else {
                    GateKind::Rx(a)
                }
            }
            other => return Err(perr(format!("unknown gate `{other}`"))),
        };
        let targets = tokens
            .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad qubit index `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let gate = Gate::new(kind, targets).map_err(|e| perr(e.to_string()))?;
        if let Some(&index) = gate.targets().iter().find(|&&t| t >= c.n_qubits()) {
            return Err(CircuitError::IndexOutOfRange { line: Some(line), index, n_qubits: c.n_qubits() });
        }
        c.push(gate)?;
    }
    circuit.ok_or(CircuitError::Parse { line: 1, message: "empty circuit file".into() })
}

/// Canonical text: header, then one gate per line.
pub fn unparse_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for g in c.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bell_circuit() {
        let c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\n").unwrap();
        assert_eq!(c.n_qubits(), 2);
        assert_eq!(c.gates(), &[Gate::h(0), Gate::cnot(0, 1)]);
    }

    #[test]
    fn rz_angle() {
        let c = parse_circuit("qubits 1\nRZ 1/4 0\n").unwrap();
        assert_eq!(c.gates()[0].kind(), GateKind::Rz(Phase::new(1, 4).unwrap()));
    }

    #[test]
    fn out_of_range_target() {
        let e = parse_circuit("qubits 1\nH 3\n").unwrap_err();
        assert_eq!(e, CircuitError::IndexOutOfRange { line: Some(2), index: 3, n_qubits: 1 });
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("H 0\n", 1),
            ("qubits 2\n\n# c\nFOO 1\n", 4),
            ("qubits 2\nCNOT 0\n", 2),
            ("qubits 2\nCNOT 1 1\n", 2),
            ("qubits 1\nRZ 0\n", 2),
            ("qubits 1\nRZ 1/0 0\n", 2),
            ("qubits 1\nh 0\n", 2),
            ("qubits x\n", 1),
        ];
        for (text, line) in cases {
            match parse_circuit(text) {
                Err(CircuitError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_blank_lines_and_dagger_gates() {
        let c = parse_circuit("# header comment\n\nqubits 2\nSD 0 # trailing\nTD 1\n").unwrap();
        assert_eq!(c.gates()[0].kind(), GateKind::Sdg);
        assert_eq!(c.gates()[0].kind().z_phase(), Some(Phase::new(3, 2).unwrap()));
        assert_eq!(c.gates()[1].kind().z_phase(), Some(Phase::new(7, 4).unwrap()));
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        let single = prop_oneof![
            Just(GateKind::X),
            Just(GateKind::Y),
            Just(GateKind::Z),
            Just(GateKind::H),
            Just(GateKind::S),
            Just(GateKind::T),
            Just(GateKind::Sdg),
            Just(GateKind::Tdg),
            (-8i64..8, 1i64..8).prop_map(|(a, b)| GateKind::Rz(Phase::new(a, b).unwrap())),
            (-8i64..8, 1i64..8).prop_map(|(a, b)| GateKind::Rx(Phase::new(a, b).unwrap())),
        ];
        prop_oneof![
            (single, 0..n).prop_map(|(k, q)| Gate::single(k, q)),
            Just(Gate::cnot(0, n - 1)),
            Just(Gate::ccnot(n - 1, 0, 1)),
        ]
    }

    proptest! {
        #[test]
        fn parse_unparse_parse_is_identity(gates in prop::collection::vec(arb_gate(3), 0..12)) {
            let c = Circuit::from_gates(3, gates).unwrap();
            let text = unparse_circuit(&c);
            let back = parse_circuit(&text).unwrap();
            prop_assert_eq!(&back, &c);
            prop_assert_eq!(unparse_circuit(&back), text);
        }
    }
}

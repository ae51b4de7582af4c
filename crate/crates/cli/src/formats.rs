//! On-disk JSON formats for Choi matrices, POVMs, and circuits, plus the
//! CSV writers for iteration logs and tables.
//!
//! All matrix payloads are row-major `[re, im]` pairs of full-precision
//! doubles; serde_json prints shortest round-trip decimals, so a
//! serialize/parse cycle is bit exact. Every document carries its
//! ordering tag: `"in_out"` for the bipartite Choi ordering and
//! `"big_endian"` for qubit registers.

use serde::{Deserialize, Serialize};

use qmm_core::circuit::{Gate, GateCircuit};
use qmm_core::matrix::ComplexMatrix;
use qmm_core::multimeter::Povm;
use qmm_core::solver::IterationRecord;
use qmm_core::{ChoiMatrix, Complex, HermitianOperator};

use crate::CliError;

pub const CHOI_ORDERING: &str = "in_out";
pub const QUBIT_ORDERING: &str = "big_endian";

fn entries_to_pairs(matrix: &ComplexMatrix) -> Vec<[f64; 2]> {
    matrix.entries().iter().map(|z| [z.re, z.im]).collect()
}

fn pairs_to_matrix(dim: usize, pairs: &[[f64; 2]]) -> Result<ComplexMatrix, CliError> {
    let entries: Vec<Complex> = pairs.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
    ComplexMatrix::new(dim, dim, entries).map_err(CliError::from)
}

/// Serialized trace-preserving CP map in (input ⊗ output) ordering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChoiJson {
    pub dim_in: usize,
    pub dim_out: usize,
    /// Always `"in_out"`; rejected otherwise on load.
    pub ordering: String,
    /// Row-major `[re, im]` entries of the `(dim_in*dim_out)^2` matrix.
    pub entries: Vec<[f64; 2]>,
}

pub fn choi_to_json(chi: &ChoiMatrix) -> ChoiJson {
    ChoiJson {
        dim_in: chi.dim_in(),
        dim_out: chi.dim_out(),
        ordering: CHOI_ORDERING.to_string(),
        entries: entries_to_pairs(chi.matrix().matrix()),
    }
}

pub fn choi_from_json(doc: &ChoiJson) -> Result<ChoiMatrix, CliError> {
    if doc.ordering != CHOI_ORDERING {
        return Err(CliError::Config(format!(
            "unsupported Choi ordering {:?}, expected {CHOI_ORDERING:?}",
            doc.ordering
        )));
    }
    let dim = doc.dim_in * doc.dim_out;
    let matrix = pairs_to_matrix(dim, &doc.entries)?;
    let hermitian = HermitianOperator::new(matrix)?;
    ChoiMatrix::new(doc.dim_in, doc.dim_out, hermitian).map_err(CliError::from)
}

/// Serialized POVM: labeled PSD elements on a big-endian register.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    /// Always `"big_endian"`.
    pub ordering: String,
    pub labels: Vec<String>,
    /// One row-major `[re, im]` entry list per element.
    pub elements: Vec<Vec<[f64; 2]>>,
}

pub fn povm_to_json(povm: &Povm) -> PovmJson {
    PovmJson {
        dim: povm.dim(),
        ordering: QUBIT_ORDERING.to_string(),
        labels: povm.labels().to_vec(),
        elements: povm.elements().iter().map(|e| entries_to_pairs(e.matrix())).collect(),
    }
}

pub fn povm_from_json(doc: &PovmJson) -> Result<Povm, CliError> {
    if doc.ordering != QUBIT_ORDERING {
        return Err(CliError::Config(format!(
            "unsupported qubit ordering {:?}, expected {QUBIT_ORDERING:?}",
            doc.ordering
        )));
    }
    let elements = doc
        .elements
        .iter()
        .map(|pairs| Ok(HermitianOperator::new(pairs_to_matrix(doc.dim, pairs)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    Povm::new(elements, doc.labels.clone()).map_err(CliError::from)
}

/// One gate record of a serialized circuit.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum GateJson {
    Hadamard { wires: [usize; 1] },
    /// Control first, then the two swapped targets.
    Fredkin { wires: [usize; 3] },
    Unitary { wires: [usize; 1], matrix: Vec<[f64; 2]> },
}

/// Serialized gate list on a fixed-width big-endian register.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitJson {
    /// Always `"big_endian"`.
    pub qubit_ordering: String,
    pub num_qubits: usize,
    pub gates: Vec<GateJson>,
}

pub fn circuit_to_json(circuit: &GateCircuit) -> CircuitJson {
    let gates = circuit
        .gates()
        .iter()
        .map(|gate| match gate {
            Gate::Hadamard { target } => GateJson::Hadamard { wires: [*target] },
            Gate::Fredkin { control, targets } => GateJson::Fredkin {
                wires: [*control, targets.0, targets.1],
            },
            Gate::Unitary { target, matrix } => GateJson::Unitary {
                wires: [*target],
                matrix: entries_to_pairs(matrix),
            },
        })
        .collect();
    CircuitJson {
        qubit_ordering: QUBIT_ORDERING.to_string(),
        num_qubits: circuit.num_qubits(),
        gates,
    }
}

pub fn circuit_from_json(doc: &CircuitJson) -> Result<GateCircuit, CliError> {
    if doc.qubit_ordering != QUBIT_ORDERING {
        return Err(CliError::Config(format!(
            "unsupported qubit ordering {:?}, expected {QUBIT_ORDERING:?}",
            doc.qubit_ordering
        )));
    }
    let mut circuit = GateCircuit::new(doc.num_qubits);
    for gate in &doc.gates {
        let gate = match gate {
            GateJson::Hadamard { wires } => Gate::Hadamard { target: wires[0] },
            GateJson::Fredkin { wires } => Gate::Fredkin {
                control: wires[0],
                targets: (wires[1], wires[2]),
            },
            GateJson::Unitary { wires, matrix } => Gate::Unitary {
                target: wires[0],
                matrix: pairs_to_matrix(2, matrix)?,
            },
        };
        circuit.push(gate)?;
    }
    Ok(circuit)
}

/// Iteration log as CSV with header `iter,fidelity,step_norm,min_eig`.
pub fn iteration_log_csv(log: &[IterationRecord]) -> String {
    let mut out = String::from("iter,fidelity,step_norm,min_eig\n");
    for record in log {
        out.push_str(&format!(
            "{},{},{},{}\n",
            record.iter, record.fidelity, record.step_norm, record.min_eig
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmm_core::multimeter::joint_povm_identical;
    use qmm_core::solver::closed_form_chi;
    use qmm_core::state::ProgramKind;

    #[test]
    fn choi_json_round_trip_is_bit_exact() {
        let chi = closed_form_chi(ProgramKind::Orthogonal, 2).unwrap();
        let doc = choi_to_json(&chi);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: ChoiJson = serde_json::from_str(&text).unwrap();
        let restored = choi_from_json(&parsed).unwrap();
        for (a, b) in chi
            .matrix()
            .matrix()
            .entries()
            .iter()
            .zip(restored.matrix().matrix().entries())
        {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn povm_json_round_trip_preserves_labels_and_entries() {
        let povm = joint_povm_identical(2).unwrap();
        let doc = povm_to_json(&povm);
        let text = serde_json::to_string(&doc).unwrap();
        let restored = povm_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(restored.labels(), povm.labels());
        for (a, b) in povm.elements().iter().zip(restored.elements()) {
            assert_eq!(a.matrix().entries(), b.matrix().entries());
        }
    }

    #[test]
    fn ordering_tags_are_enforced() {
        let chi = closed_form_chi(ProgramKind::Identical, 1).unwrap();
        let mut doc = choi_to_json(&chi);
        doc.ordering = "out_in".to_string();
        assert!(choi_from_json(&doc).is_err());

        let mut povm_doc = povm_to_json(&joint_povm_identical(1).unwrap());
        povm_doc.ordering = "little_endian".to_string();
        assert!(povm_from_json(&povm_doc).is_err());
    }

    #[test]
    fn circuit_json_round_trips_and_validates_wiring() {
        let circuit = qmm_core::circuit::swap_test_circuit();
        let doc = circuit_to_json(&circuit);
        let restored = circuit_from_json(&doc).unwrap();
        assert_eq!(restored.num_qubits(), 3);
        assert_eq!(restored.gates().len(), 3);

        let bad = CircuitJson {
            qubit_ordering: QUBIT_ORDERING.to_string(),
            num_qubits: 2,
            gates: vec![GateJson::Fredkin { wires: [0, 1, 1] }],
        };
        assert!(circuit_from_json(&bad).is_err());
    }

    #[test]
    fn iteration_log_csv_has_expected_shape() {
        let log = vec![IterationRecord {
            iter: 0,
            fidelity: 0.5,
            step_norm: 0.0,
            min_eig: 0.25,
        }];
        let csv = iteration_log_csv(&log);
        assert!(csv.starts_with("iter,fidelity,step_norm,min_eig\n"));
        assert!(csv.contains("0,0.5,0,0.25"));
    }
}

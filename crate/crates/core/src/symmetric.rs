//! Qubit permutation operators and the projector onto the symmetric
//! (bosonic) subspace of an m-qubit register.

use alloc::vec;
use alloc::vec::Vec;

use crate::eig::HermitianOperator;
use crate::matrix::ComplexMatrix;
use crate::state::ProgramKind;
use crate::{Complex, Result};

/// Permutation operator on `m` qubits: wire `j` of the input feeds wire
/// `perm[j]` of the output. Composition satisfies
/// `P(sigma) * P(tau) = P(sigma ∘ tau)`.
pub fn permutation_operator(perm: &[usize]) -> ComplexMatrix {
    let m = perm.len();
    let dim = 1usize << m;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for src in 0..dim {
        let mut dst = 0usize;
        for j in 0..m {
            let bit = (src >> (m - 1 - j)) & 1;
            dst |= bit << (m - 1 - perm[j]);
        }
        out.set(dst, src, Complex::new(1.0, 0.0));
    }
    out
}

/// All permutations of `{0, .., m-1}` by Heap's algorithm.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity((1..=m).product());
    let mut counters = vec![0usize; m];
    out.push(items.clone());
    let mut i = 0;
    while i < m {
        if counters[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(counters[i], i);
            }
            out.push(items.clone());
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    out
}

/// Projector onto the symmetric subspace of `m` qubits, built as the
/// average of all `m!` permutation operators. Trace is `m + 1`.
pub fn symmetric_projector(m: usize) -> HermitianOperator {
    assert!(m >= 1, "symmetric projector needs m >= 1");
    let dim = 1usize << m;
    let mut sum = ComplexMatrix::zeros(dim, dim);
    let perms = permutations(m);
    let weight = 1.0 / perms.len() as f64;
    for perm in &perms {
        sum = &sum + &permutation_operator(perm);
    }
    HermitianOperator::new(sum.scale_re(weight)).expect("permutation average is Hermitian")
}

/// Projector onto the physically reachable input space of the multimeter
/// (signal qubit ⊗ span of the admissible program registers), embedded in
/// the full register space.
///
/// Identical programs only ever populate the symmetric subspace of the
/// program qubits, so the identity "on the input space" embeds as
/// `1_signal ⊗ sym_projector(n)`; for `n = 1` and for orthogonal programs
/// it is the full identity.
pub fn input_space_projector(kind: ProgramKind, n: usize) -> Result<HermitianOperator> {
    let program_qubits = kind.program_qubits(n)?;
    let matrix = match kind {
        ProgramKind::Identical if n >= 2 => {
            ComplexMatrix::identity(2).tensor(symmetric_projector(n).matrix())
        }
        _ => ComplexMatrix::identity(1usize << (1 + program_qubits)),
    };
    Ok(HermitianOperator::new(matrix).expect("projector is Hermitian"))
}

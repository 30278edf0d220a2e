// Test-only dense-matrix oracle. Builds explicit unitaries for pulses, gates
// and circuits on small registers by basis-state bookkeeping, independent of
// the in-place pair-sweep path in QuantumState, and multiplies them out.

#pragma once

#include "iontrap/circuit.hpp"
#include "iontrap/statevec.hpp"

#include <vector>

namespace testutil {

using iontrap::cplx;

// Column-major is irrelevant here; Mat is row x col with at(r, c).
class Mat {
  public:
    explicit Mat(std::size_t dim);
    static Mat identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    Mat operator*(const Mat& rhs) const;
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

  private:
    std::size_t dim_;
    std::vector<cplx> data_;
};

// Full-space (2^(n_qubits+1)) matrix of one pulse; CM is index bit 0.
Mat pulse_matrix(const iontrap::Pulse& p, int n_qubits);

// Product of the pulse matrices, later pulses on the left.
Mat sequence_matrix(const iontrap::PulseSequence& seq, int n_qubits);

// Ideal gate unitaries embedded on the full space (identity on the CM).
Mat ideal_gate_matrix(const iontrap::Gate& g, int n_qubits);
Mat ideal_circuit_matrix(const iontrap::Circuit& circuit);

// Amplitude vector of a simulator state.
std::vector<cplx> amplitudes(const iontrap::QuantumState& state);

bool equal_up_to_global_phase(const std::vector<cplx>& a, const std::vector<cplx>& b,
                              double tol);
// Compares columns of A and B up to one phase common to the whole matrix.
bool matrix_equal_up_to_global_phase(const Mat& a, const Mat& b, double tol);

// Pulse-built gates are contracted to equal the ideal gate on the CM=0
// subspace only (CM=1 input components may evolve differently). Checks the
// even-index block up to one common phase and that CM=0 columns do not leak
// into CM=1 rows.
bool matrix_equal_on_cm0(const Mat& actual, const Mat& ideal, double tol);

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace testutil

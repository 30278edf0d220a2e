// Fidelity and entropy over noise ensembles, plus the closed-form
// independent-qubit estimates they are compared against.

#pragma once

#include "iontrap/statevec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace iontrap {

// F = |<actual|ideal>|^2.
double fidelity(const QuantumState& actual, const QuantumState& ideal);

// Mean fidelity of l independent qubits subject to n_t/l erroneous pulses
// each, the CM treated separately with its n_cm sideband pulses:
//   [ (1 + e^{-2 n_t sigma^2 / l}) / 2 ]^l * (1 + e^{-2 sigma^2 n_cm}) / 2.
double mean_fidelity_estimate(double n_t, double n_cm, double l, double sigma);

// Same with a systematic shift eps_bar: each exponential is multiplied by
// cos(2 eps_bar n / l) (cos(2 eps_bar n_cm) for the CM factor). Known to
// under-predict the measured fidelity: gate constructions cancel part of the
// systematic error.
double mean_fidelity_systematic_estimate(double n_t, double n_cm, double l, double eps_bar,
                                         double sigma);

// Flattened M x M matrix of |<psi_i|psi_j>|^2 (row-major, diagonal included).
std::vector<double> pairwise_overlap_sq(std::span<const QuantumState> states);

// S_lin = -log2(Tr rho_av^2) over an ensemble of M pure states, computed from
// pairwise overlaps: Tr rho_av^2 = (1/M^2) sum_{i,j} |<psi_i|psi_j>|^2.
double linear_entropy_mc(std::span<const QuantumState> states);
double linear_entropy_from_overlaps(std::span<const double> overlap_sq, std::size_t m);

// Closed-form estimate:
//   l + 1 - log2[ (1 + e^{-4 n_t sigma^2 / l})^l (1 + e^{-4 n_cm sigma^2}) ].
double linear_entropy_estimate(double n_t, double n_cm, double l, double sigma);

// Per-ensemble results of one noise point.
struct EnsembleResult {
    std::vector<double> fidelities;
    std::vector<double> pair_overlap_sq; // M x M |<psi_i|psi_j>|^2, when collected
    double sigma = 0.0;
    double mean_eps = 0.0;
    std::size_t n_t = 0;  // erroneous pulse count of the compiled circuit
    std::size_t n_cm = 0; // sideband pulse count
    double l = 18.0;      // independent-qubit count used in the estimates

    std::size_t runs() const { return fidelities.size(); }
    double mean_fidelity() const;
    double fidelity_std() const;   // population standard deviation
    double std_error() const;      // std / sqrt(runs)
};

} // namespace iontrap

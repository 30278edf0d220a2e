// Dense state vector for a chain of two-level ions plus one two-level
// center-of-mass (CM) phonon mode.
//
// Index convention (fixed, not configurable):
//   bit 0        = CM phonon occupation (0 or 1)
//   bit k + 1    = qubit k (0 = |g>, 1 = |e>)
// so a state over n qubits has 2^(n+1) amplitudes.
//
// Angle convention: theta is the literal Rabi-evolution argument (Omega*t),
// i.e. the half-angle of the Bloch rotation. Full population transfer (a
// "pi-pulse" in Rabi-area language) is theta = pi/2.

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace iontrap {

using cplx = std::complex<double>;

// Computational basis label: ion bits plus CM occupation.
struct BasisLabel {
    std::uint64_t qubit_bits = 0;
    int cm = 0;

    std::uint64_t to_index() const { return (qubit_bits << 1) | std::uint64_t(cm & 1); }
    static BasisLabel from_index(std::uint64_t index) {
        return BasisLabel{index >> 1, int(index & 1)};
    }
};

class QuantumState {
  public:
    // Initializes |g...g>|0>_CM.
    explicit QuantumState(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return re_.size(); }

    cplx amplitude(std::uint64_t index) const { return {re_[index], im_[index]}; }
    void set_amplitude(std::uint64_t index, cplx value);

    // Clears all amplitudes and places unit weight on one basis state.
    void set_basis(std::uint64_t qubit_bits, int cm = 0);
    void zero();

    // Resonant pulse on one ion: the 2x2 matrix
    //   [ cos(theta)              -i e^{-i phi} sin(theta) ]
    //   [ -i e^{i phi} sin(theta)  cos(theta)              ]
    // acting on the (|g>, |e>) pair of that ion; CM and other bits untouched.
    void apply_resonant(int ion, double theta, double phi);

    // Off-resonant (sideband) pulse: the same matrix acting on the
    // (|g>|1>_CM, |e>|0>_CM) subspace of the ion; components with
    // (g,0) or (e,1) are unchanged.
    void apply_sideband(int ion, double theta, double phi);

    // Perfect 2pi Rabi cycle through the auxiliary level: multiplies every
    // amplitude with ion in |g> and CM = 1 by -1. The auxiliary level itself
    // is never represented.
    void apply_aux_2pi(int ion);

    // Phase-angle variant of the auxiliary pulse: multiplies the same
    // (g,1) components by e^{i alpha}. apply_aux_2pi is the alpha = pi case
    // (kept separate so the -1 stays exact).
    void apply_aux_phase(int ion, double alpha);

    // Projective measurement of one qubit (ion >= 0) or the CM (ion == -1).
    // Returns the probability of `outcome`; the state is collapsed onto that
    // branch and renormalized. A branch with probability < 1e-30 signals an
    // impossible outcome: the state is zeroed and 0 is returned.
    double project_qubit(int ion, int outcome);

    // Marginal distribution of the selected qubits, in selection order
    // (bit m of the result value = qubit bit_selection[m]), summed over all
    // unselected qubits and the CM.
    std::vector<double> register_distribution(std::span<const int> bit_selection) const;

    double norm_sq() const;

    // Text dump "index,re,im" for amplitudes with |amp|^2 > 1e-15,
    // 17 significant digits.
    void dump(std::ostream& os) const;

    std::span<const double> re() const { return re_; }
    std::span<const double> im() const { return im_; }

  private:
    void check_ion(int ion) const;

    int n_qubits_;
    std::vector<double> re_;
    std::vector<double> im_;
};

// Inner product <a|b>. Dimensions must match.
cplx overlap(const QuantumState& a, const QuantumState& b);

} // namespace iontrap

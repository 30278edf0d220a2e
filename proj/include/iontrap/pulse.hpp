// Pulse instruction set and the Cirac-Zoller constructions of one- and
// two-qubit gates as pulse sequences.
//
// Reminder on units: a "pi-pulse" in Rabi-area language is theta = pi/2 here
// (theta is the matrix argument Omega*t, see statevec.hpp). All tables below
// use that convention.
//
// Resonant and sideband pulses are erroneous (their theta and phi are
// perturbable); auxiliary-level pulses are modeled as perfect.

#pragma once

#include "iontrap/statevec.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace iontrap {

class RunRng; // noise.hpp

enum class PulseKind {
    Resonant, // single-qubit rotation, carrier transition
    Sideband, // (g,1) <-> (e,0) rotation via the CM bus
    Aux2Pi,   // perfect 2pi cycle through |e'>: phase -1 on (g,1)
    AuxPhase, // perfect conditional phase e^{i phi} on (g,1)
};

struct Pulse {
    PulseKind kind;
    int ion;
    double theta;   // 0 for Aux2Pi / AuxPhase
    double phi;     // conditional phase angle for AuxPhase
    bool erroneous; // true for Resonant and Sideband only

    static Pulse resonant(int ion, double theta, double phi);
    static Pulse sideband(int ion, double theta, double phi);
    static Pulse aux_2pi(int ion);
    static Pulse aux_phase(int ion, double phase);
};

struct PulseCounts {
    std::size_t n_resonant = 0;
    std::size_t n_sideband = 0;
    std::size_t n_aux = 0;

    std::size_t n_erroneous() const { return n_resonant + n_sideband; }
    std::size_t n_total() const { return n_resonant + n_sideband + n_aux; }

    PulseCounts& operator+=(const PulseCounts& o);
    friend bool operator==(const PulseCounts&, const PulseCounts&) = default;
};

class PulseSequence {
  public:
    void push(const Pulse& p);
    void append(const PulseSequence& other);

    std::size_t size() const { return pulses_.size(); }
    bool empty() const { return pulses_.empty(); }
    const Pulse& operator[](std::size_t i) const { return pulses_[i]; }
    auto begin() const { return pulses_.begin(); }
    auto end() const { return pulses_.end(); }
    const PulseCounts& counts() const { return counts_; }

    // Text dump "kind,ion,theta,phi,erroneous", 17 significant digits.
    void dump(std::ostream& os) const;

  private:
    std::vector<Pulse> pulses_;
    PulseCounts counts_;
};

// One resonant pulse.
PulseSequence single_qubit_rotation(int ion, double theta, double phi);

// Controlled-Z = diag(1,1,1,-1), exactly (no global phase):
//   Sideband(control, pi/2, 0); Aux2Pi(target); Sideband(control, pi/2, 0).
// Requires CM = |0> on entry; returns it to |0>.
PulseSequence cz_gate(int control, int target);

// Controlled-phase diag(1,1,1,e^{i angle}), exactly:
//   Sideband(control, pi/2, 0); AuxPhase(target, -angle);
//   Sideband(control, pi/2, angle + pi).
PulseSequence controlled_phase_gate(int control, int target, double angle);

// CNOT, exactly (no global phase): target rotations with phases 3pi/2 and
// pi/2 around a cz_gate. 5 pulses.
PulseSequence cnot_gate(int control, int target);

// Toffoli via the standard 6-CNOT network with T-phase and Hadamard
// composites; equals the doubly-controlled NOT up to a global phase.
PulseSequence toffoli_gate(int c1, int c2, int target);

// Two-pulse composites (net unitary up to the stated global phase).
PulseSequence hadamard_gate(int ion);           // -i H
PulseSequence phase_gate(int ion, double alpha); // -e^{-i alpha/2} diag(1, e^{i alpha})
PulseSequence x_gate(int ion);                   // -i X, one pulse

// Applies the pulses in order. If rng is non-null, each erroneous pulse's
// (theta, phi) are perturbed per the rng's noise parameters before
// application; perfect pulses are applied exactly.
void execute(QuantumState& state, const PulseSequence& seq, RunRng* rng = nullptr);

} // namespace iontrap

// Gate-level circuit IR and the compiler lowering it to pulse sequences.

#pragma once

#include "iontrap/pulse.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace iontrap {

enum class GateKind { Rotation, X, CZ, CNOT, Toffoli, ControlledPhase, Swap };

struct Gate {
    GateKind kind;
    int a = -1, b = -1, c = -1; // operands; unused ones stay -1
    double theta = 0.0;         // Rotation angle / ControlledPhase angle
    double phi = 0.0;           // Rotation phase
    bool checkpoint = false;    // interpreted by the watchdog module only

    int operand_count() const;

    static Gate rotation(int q, double theta, double phi);
    static Gate x(int q);
    static Gate cz(int control, int target);
    static Gate cnot(int control, int target);
    static Gate toffoli(int c1, int c2, int target);
    static Gate controlled_phase(int control, int target, double angle);
    static Gate swap(int q1, int q2);

    // True if the lowering goes through the CM bus (sideband pulses).
    bool uses_cm() const;
};

struct RegisterLayout {
    std::vector<int> register1;
    std::vector<int> register2;
    std::vector<int> work;
};

class Circuit {
  public:
    explicit Circuit(int n_qubits, RegisterLayout layout = {});

    void push(Gate g); // validates operand indices
    void append(const Circuit& other);
    void mark_checkpoint(); // flags the last gate

    int n_qubits() const { return n_qubits_; }
    const RegisterLayout& layout() const { return layout_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    // Text dump "kind,operands...,angles...,checkpoint", stable ordering.
    void dump(std::ostream& os) const;

  private:
    int n_qubits_;
    RegisterLayout layout_;
    std::vector<Gate> gates_;
};

// Pulse sequence of a single gate.
PulseSequence lower_gate(const Gate& g);

// Concatenation of per-gate lowerings, in gate order. Pure: the same circuit
// always compiles to the identical sequence.
PulseSequence compile(const Circuit& circuit);

// Tallies recomputed from the sequence contents.
PulseCounts pulse_counts(const PulseSequence& seq);

std::string gate_kind_name(GateKind k);

} // namespace iontrap

#include "iontrap/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace iontrap {

int Gate::operand_count() const {
    switch (kind) {
    case GateKind::Rotation:
    case GateKind::X: return 1;
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::ControlledPhase:
    case GateKind::Swap: return 2;
    case GateKind::Toffoli: return 3;
    }
    return 0;
}

bool Gate::uses_cm() const {
    switch (kind) {
    case GateKind::Rotation:
    case GateKind::X: return false;
    default: return true;
    }
}

Gate Gate::rotation(int q, double theta, double phi) {
    Gate g{GateKind::Rotation};
    g.a = q;
    g.theta = theta;
    g.phi = phi;
    return g;
}

Gate Gate::x(int q) {
    Gate g{GateKind::X};
    g.a = q;
    return g;
}

Gate Gate::cz(int control, int target) {
    Gate g{GateKind::CZ};
    g.a = control;
    g.b = target;
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g{GateKind::CNOT};
    g.a = control;
    g.b = target;
    return g;
}

Gate Gate::toffoli(int c1, int c2, int target) {
    Gate g{GateKind::Toffoli};
    g.a = c1;
    g.b = c2;
    g.c = target;
    return g;
}

Gate Gate::controlled_phase(int control, int target, double angle) {
    Gate g{GateKind::ControlledPhase};
    g.a = control;
    g.b = target;
    g.theta = angle;
    return g;
}

Gate Gate::swap(int q1, int q2) {
    Gate g{GateKind::Swap};
    g.a = q1;
    g.b = q2;
    return g;
}

Circuit::Circuit(int n_qubits, RegisterLayout layout)
    : n_qubits_(n_qubits), layout_(std::move(layout)) {
    if (n_qubits < 1)
        throw std::invalid_argument("Circuit: need at least one qubit");
    // Register sets must be disjoint and within the qubit count.
    std::vector<bool> seen(std::size_t(n_qubits), false);
    for (const auto* regs : {&layout_.register1, &layout_.register2, &layout_.work})
        for (int q : *regs) {
            if (q < 0 || q >= n_qubits)
                throw std::out_of_range("Circuit: register index out of range");
            if (seen[std::size_t(q)])
                throw std::invalid_argument("Circuit: register sets overlap");
            seen[std::size_t(q)] = true;
        }
}

void Circuit::push(Gate g) {
    const int ops[3] = {g.a, g.b, g.c};
    const int n = g.operand_count();
    for (int i = 0; i < n; ++i) {
        if (ops[i] < 0 || ops[i] >= n_qubits_)
            throw std::out_of_range("Circuit::push: operand out of range");
        for (int j = i + 1; j < n; ++j)
            if (ops[i] == ops[j])
                throw std::invalid_argument("Circuit::push: repeated operand");
    }
    if (!std::isfinite(g.theta) || !std::isfinite(g.phi))
        throw std::invalid_argument("Circuit::push: non-finite angle");
    gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits_ > n_qubits_)
        throw std::invalid_argument("Circuit::append: appended circuit is wider");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void Circuit::mark_checkpoint() {
    if (gates_.empty())
        throw std::logic_error("mark_checkpoint: empty circuit");
    gates_.back().checkpoint = true;
}

void Circuit::dump(std::ostream& os) const {
    char buf[160];
    for (const Gate& g : gates_) {
        const int n = g.operand_count();
        std::string ops = std::to_string(g.a);
        if (n > 1)
            ops += "," + std::to_string(g.b);
        if (n > 2)
            ops += "," + std::to_string(g.c);
        std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%d\n", gate_kind_name(g.kind).c_str(),
                      ops.c_str(), g.theta, g.phi, g.checkpoint ? 1 : 0);
        os << buf;
    }
}

PulseSequence lower_gate(const Gate& g) {
    switch (g.kind) {
    case GateKind::Rotation:
        return single_qubit_rotation(g.a, g.theta, g.phi);
    case GateKind::X:
        return x_gate(g.a);
    case GateKind::CZ:
        return cz_gate(g.a, g.b);
    case GateKind::CNOT:
        return cnot_gate(g.a, g.b);
    case GateKind::Toffoli:
        return toffoli_gate(g.a, g.b, g.c);
    case GateKind::ControlledPhase:
        return controlled_phase_gate(g.a, g.b, g.theta);
    case GateKind::Swap: {
        PulseSequence seq;
        seq.append(cnot_gate(g.a, g.b));
        seq.append(cnot_gate(g.b, g.a));
        seq.append(cnot_gate(g.a, g.b));
        return seq;
    }
    }
    throw std::invalid_argument("lower_gate: unknown gate kind");
}

PulseSequence compile(const Circuit& circuit) {
    PulseSequence seq;
    for (const Gate& g : circuit.gates())
        seq.append(lower_gate(g));
    return seq;
}

PulseCounts pulse_counts(const PulseSequence& seq) {
    PulseCounts counts;
    for (const Pulse& p : seq) {
        switch (p.kind) {
        case PulseKind::Resonant: ++counts.n_resonant; break;
        case PulseKind::Sideband: ++counts.n_sideband; break;
        case PulseKind::Aux2Pi:
        case PulseKind::AuxPhase: ++counts.n_aux; break;
        }
    }
    return counts;
}

std::string gate_kind_name(GateKind k) {
    switch (k) {
    case GateKind::Rotation: return "rotation";
    case GateKind::X: return "x";
    case GateKind::CZ: return "cz";
    case GateKind::CNOT: return "cnot";
    case GateKind::Toffoli: return "toffoli";
    case GateKind::ControlledPhase: return "cphase";
    case GateKind::Swap: return "swap";
    }
    return "?";
}

} // namespace iontrap

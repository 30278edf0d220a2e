#include "iontrap/watchdog.hpp"

#include <cmath>
#include <stdexcept>

namespace iontrap {

void WatchdogSchedule::validate(const Circuit& circuit) const {
    std::size_t prev = 0;
    bool first = true;
    for (const Checkpoint& cp : checkpoints) {
        if (cp.position >= circuit.size())
            throw std::out_of_range("WatchdogSchedule: position beyond circuit");
        if (!first && cp.position <= prev)
            throw std::invalid_argument("WatchdogSchedule: positions must increase");
        for (int q : cp.qubits)
            if (q < 0 || q >= circuit.n_qubits())
                throw std::out_of_range("WatchdogSchedule: qubit out of range");
        prev = cp.position;
        first = false;
    }
}

WatchdogSchedule make_default_schedule(const Circuit& circuit) {
    WatchdogSchedule schedule;
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.checkpoint) {
            Checkpoint cp;
            cp.position = i;
            cp.qubits = circuit.layout().work;
            cp.include_cm = true;
            schedule.checkpoints.push_back(std::move(cp));
        } else if (g.uses_cm()) {
            schedule.checkpoints.push_back(Checkpoint{i, {}, true});
        }
    }
    return schedule;
}

namespace {

// Executes one gate's pulses under noise.
void run_gate(QuantumState& state, const Gate& g, RunRng* rng) {
    execute(state, lower_gate(g), rng);
}

double project_correct(QuantumState& state, const Checkpoint& cp) {
    double p = 1.0;
    for (int q : cp.qubits) {
        p *= state.project_qubit(q, 0);
        if (p == 0.0)
            return 0.0;
    }
    if (cp.include_cm)
        p *= state.project_qubit(-1, 0);
    return p;
}

} // namespace

WatchdogOutcome run_with_watchdog(const Circuit& circuit, const WatchdogSchedule& schedule,
                                  RunRng* rng, const QuantumState* ideal_final) {
    schedule.validate(circuit);
    QuantumState state(circuit.n_qubits());
    WatchdogOutcome out{{}, 1.0, 0.0, QuantumState(circuit.n_qubits())};

    std::size_t next_cp = 0;
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        run_gate(state, gates[i], rng);
        if (next_cp < schedule.checkpoints.size() &&
            schedule.checkpoints[next_cp].position == i) {
            const double p = project_correct(state, schedule.checkpoints[next_cp]);
            out.checkpoint_probabilities.push_back(p);
            out.survival *= p;
            ++next_cp;
            if (p == 0.0)
                break;
        }
    }
    if (ideal_final)
        out.terminal_overlap_sq = std::norm(overlap(*ideal_final, state));
    if (schedule.checkpoints.empty())
        out.survival = out.terminal_overlap_sq;
    out.final_state = std::move(state);
    return out;
}

WatchdogOutcome run_with_full_projection(const Circuit& circuit,
                                         const WatchdogSchedule& schedule, RunRng* rng) {
    schedule.validate(circuit);
    QuantumState state(circuit.n_qubits());
    QuantumState twin(circuit.n_qubits()); // noiseless reference evolution
    WatchdogOutcome out{{}, 1.0, 0.0, QuantumState(circuit.n_qubits())};

    std::size_t next_cp = 0;
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        run_gate(state, gates[i], rng);
        run_gate(twin, gates[i], nullptr);
        if (next_cp < schedule.checkpoints.size() &&
            schedule.checkpoints[next_cp].position == i) {
            const double p = std::norm(overlap(twin, state));
            out.checkpoint_probabilities.push_back(p);
            out.survival *= p;
            state = twin;
            ++next_cp;
            if (p == 0.0)
                break;
        }
    }
    out.terminal_overlap_sq = std::norm(overlap(twin, state));
    if (schedule.checkpoints.empty())
        out.survival = out.terminal_overlap_sq;
    out.final_state = std::move(state);
    return out;
}

double ideal_watchdog_estimate(int k, double theta) {
    if (k < 0)
        throw std::invalid_argument("ideal_watchdog_estimate: k must be >= 0");
    return std::pow(std::cos(theta), 2.0 * k);
}

} // namespace iontrap

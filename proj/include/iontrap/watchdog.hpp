// Watchdog (quantum Zeno) stabilization: scheduled projective measurements of
// work qubits and the CM at checkpoints, with deterministic post-selection on
// the all-|0> branch. The survival probability of that branch is the
// watchdog fidelity.

#pragma once

#include "iontrap/circuit.hpp"
#include "iontrap/noise.hpp"

#include <cstddef>
#include <vector>

namespace iontrap {

struct Checkpoint {
    std::size_t position = 0;  // fires after executing gates[position]
    std::vector<int> qubits;   // projected onto |0>
    bool include_cm = false;   // also project the CM onto |0>
};

struct WatchdogSchedule {
    std::vector<Checkpoint> checkpoints; // positions strictly increasing
    void validate(const Circuit& circuit) const;
};

// Default schedule: CM checkpoint after every gate whose lowering uses the
// CM bus; work-qubit (plus CM) checkpoints at gates carrying a checkpoint
// marker (multiplier boundaries).
WatchdogSchedule make_default_schedule(const Circuit& circuit);

struct WatchdogOutcome {
    std::vector<double> checkpoint_probabilities; // correct-branch probability each
    double survival = 1.0;            // product of the above; the watchdog fidelity
    double terminal_overlap_sq = 0.0; // |<ideal|final>|^2, diagnostic
    QuantumState final_state;         // all-correct branch
};

// Noisy execution from |0...0> with |0>-projections at each checkpoint.
// With an empty schedule this is plain noisy execution and the survival is
// defined as the terminal overlap with the ideal state. ideal_final may be
// null (terminal overlap reported as 0).
WatchdogOutcome run_with_watchdog(const Circuit& circuit, const WatchdogSchedule& schedule,
                                  RunRng* rng, const QuantumState* ideal_final);

// Control experiment: at each checkpoint, record p = |<ideal|current>|^2
// against a noiselessly evolved twin and replace the state by the twin's.
WatchdogOutcome run_with_full_projection(const Circuit& circuit,
                                         const WatchdogSchedule& schedule, RunRng* rng);

// Single-qubit Zeno model: probability cos^{2k}(theta) of finding the qubit
// in |0> after k watched rotations by theta (unwatched: cos^2(k theta)).
double ideal_watchdog_estimate(int k, double theta);

} // namespace iontrap

#include "iontrap/pulse.hpp"

#include "iontrap/noise.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace iontrap {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_phi(double phi) {
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0)
        p += 2.0 * kPi;
    if (p == 2.0 * kPi)
        p = 0.0;
    return p;
}

void check_finite_angle(double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("pulse angle must be finite");
}

const char* kind_name(PulseKind k) {
    switch (k) {
    case PulseKind::Resonant: return "resonant";
    case PulseKind::Sideband: return "sideband";
    case PulseKind::Aux2Pi: return "aux2pi";
    case PulseKind::AuxPhase: return "auxphase";
    }
    return "?";
}

} // namespace

Pulse Pulse::resonant(int ion, double theta, double phi) {
    check_finite_angle(theta);
    check_finite_angle(phi);
    if (theta < 0.0) { // U(-theta, phi) = U(theta, phi + pi)
        theta = -theta;
        phi += kPi;
    }
    return Pulse{PulseKind::Resonant, ion, theta, norm_phi(phi), true};
}

Pulse Pulse::sideband(int ion, double theta, double phi) {
    check_finite_angle(theta);
    check_finite_angle(phi);
    if (theta < 0.0) {
        theta = -theta;
        phi += kPi;
    }
    return Pulse{PulseKind::Sideband, ion, theta, norm_phi(phi), true};
}

Pulse Pulse::aux_2pi(int ion) { return Pulse{PulseKind::Aux2Pi, ion, 0.0, 0.0, false}; }

Pulse Pulse::aux_phase(int ion, double phase) {
    check_finite_angle(phase);
    return Pulse{PulseKind::AuxPhase, ion, 0.0, norm_phi(phase), false};
}

PulseCounts& PulseCounts::operator+=(const PulseCounts& o) {
    n_resonant += o.n_resonant;
    n_sideband += o.n_sideband;
    n_aux += o.n_aux;
    return *this;
}

void PulseSequence::push(const Pulse& p) {
    pulses_.push_back(p);
    switch (p.kind) {
    case PulseKind::Resonant: ++counts_.n_resonant; break;
    case PulseKind::Sideband: ++counts_.n_sideband; break;
    case PulseKind::Aux2Pi:
    case PulseKind::AuxPhase: ++counts_.n_aux; break;
    }
}

void PulseSequence::append(const PulseSequence& other) {
    pulses_.insert(pulses_.end(), other.pulses_.begin(), other.pulses_.end());
    counts_ += other.counts_;
}

void PulseSequence::dump(std::ostream& os) const {
    char buf[128];
    for (const Pulse& p : pulses_) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%d\n", kind_name(p.kind), p.ion,
                      p.theta, p.phi, p.erroneous ? 1 : 0);
        os << buf;
    }
}

PulseSequence single_qubit_rotation(int ion, double theta, double phi) {
    PulseSequence seq;
    seq.push(Pulse::resonant(ion, theta, phi));
    return seq;
}

PulseSequence cz_gate(int control, int target) {
    if (control == target)
        throw std::invalid_argument("cz_gate: control == target");
    PulseSequence seq;
    seq.push(Pulse::sideband(control, kPi / 2, 0.0));
    seq.push(Pulse::aux_2pi(target));
    seq.push(Pulse::sideband(control, kPi / 2, 0.0));
    return seq;
}

PulseSequence controlled_phase_gate(int control, int target, double angle) {
    if (control == target)
        throw std::invalid_argument("controlled_phase_gate: control == target");
    PulseSequence seq;
    seq.push(Pulse::sideband(control, kPi / 2, 0.0));
    seq.push(Pulse::aux_phase(target, -angle));
    seq.push(Pulse::sideband(control, kPi / 2, angle + kPi));
    return seq;
}

PulseSequence cnot_gate(int control, int target) {
    if (control == target)
        throw std::invalid_argument("cnot_gate: control == target");
    PulseSequence seq;
    seq.push(Pulse::resonant(target, kPi / 4, 3 * kPi / 2));
    seq.append(cz_gate(control, target));
    seq.push(Pulse::resonant(target, kPi / 4, kPi / 2));
    return seq;
}

PulseSequence hadamard_gate(int ion) {
    PulseSequence seq;
    seq.push(Pulse::resonant(ion, kPi / 4, kPi / 2));
    seq.push(Pulse::resonant(ion, kPi / 2, 0.0));
    return seq;
}

PulseSequence phase_gate(int ion, double alpha) {
    PulseSequence seq;
    seq.push(Pulse::resonant(ion, kPi / 2, 0.0));
    seq.push(Pulse::resonant(ion, kPi / 2, alpha / 2));
    return seq;
}

PulseSequence x_gate(int ion) { return single_qubit_rotation(ion, kPi / 2, 0.0); }

PulseSequence toffoli_gate(int c1, int c2, int target) {
    if (c1 == c2 || c1 == target || c2 == target)
        throw std::invalid_argument("toffoli_gate: operands must be distinct");
    const double t = kPi / 4;
    PulseSequence seq;
    seq.append(hadamard_gate(target));
    seq.append(cnot_gate(c2, target));
    seq.append(phase_gate(target, -t));
    seq.append(cnot_gate(c1, target));
    seq.append(phase_gate(target, t));
    seq.append(cnot_gate(c2, target));
    seq.append(phase_gate(target, -t));
    seq.append(cnot_gate(c1, target));
    seq.append(phase_gate(c2, t));
    seq.append(phase_gate(target, t));
    seq.append(hadamard_gate(target));
    seq.append(cnot_gate(c1, c2));
    seq.append(phase_gate(c1, t));
    seq.append(phase_gate(c2, -t));
    seq.append(cnot_gate(c1, c2));
    return seq;
}

void execute(QuantumState& state, const PulseSequence& seq, RunRng* rng) {
    for (const Pulse& p : seq) {
        switch (p.kind) {
        case PulseKind::Resonant:
            if (rng) {
                const PerturbedAngles a = perturb(p, *rng);
                state.apply_resonant(p.ion, a.theta, a.phi);
            } else {
                state.apply_resonant(p.ion, p.theta, p.phi);
            }
            break;
        case PulseKind::Sideband:
            if (rng) {
                const PerturbedAngles a = perturb(p, *rng);
                state.apply_sideband(p.ion, a.theta, a.phi);
            } else {
                state.apply_sideband(p.ion, p.theta, p.phi);
            }
            break;
        case PulseKind::Aux2Pi:
            state.apply_aux_2pi(p.ion);
            break;
        case PulseKind::AuxPhase:
            state.apply_aux_phase(p.ion, p.phi);
            break;
        }
    }
}

} // namespace iontrap

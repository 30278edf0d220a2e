#include "iontrap/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace iontrap {

double fidelity(const QuantumState& actual, const QuantumState& ideal) {
    return std::norm(overlap(actual, ideal));
}

double mean_fidelity_estimate(double n_t, double n_cm, double l, double sigma) {
    if (n_t < 0 || n_cm < 0 || l < 1 || sigma < 0)
        throw std::invalid_argument("mean_fidelity_estimate: bad arguments");
    const double s2 = sigma * sigma;
    const double qubit_factor = 0.5 * (1.0 + std::exp(-2.0 * n_t * s2 / l));
    const double cm_factor = 0.5 * (1.0 + std::exp(-2.0 * s2 * n_cm));
    return std::pow(qubit_factor, l) * cm_factor;
}

double mean_fidelity_systematic_estimate(double n_t, double n_cm, double l, double eps_bar,
                                         double sigma) {
    if (n_t < 0 || n_cm < 0 || l < 1 || sigma < 0)
        throw std::invalid_argument("mean_fidelity_systematic_estimate: bad arguments");
    const double s2 = sigma * sigma;
    const double qubit_factor =
        0.5 * (1.0 + std::cos(2.0 * eps_bar * n_t / l) * std::exp(-2.0 * n_t * s2 / l));
    const double cm_factor =
        0.5 * (1.0 + std::cos(2.0 * eps_bar * n_cm) * std::exp(-2.0 * s2 * n_cm));
    return std::pow(qubit_factor, l) * cm_factor;
}

std::vector<double> pairwise_overlap_sq(std::span<const QuantumState> states) {
    const std::size_t m = states.size();
    // Diagonal terms are 1 for unit-norm states but are computed, not
    // assumed (norm drift is an observable).
    std::vector<double> out(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        out[i * m + i] = std::norm(overlap(states[i], states[i]));
        for (std::size_t j = i + 1; j < m; ++j) {
            const double o = std::norm(overlap(states[i], states[j]));
            out[i * m + j] = o;
            out[j * m + i] = o;
        }
    }
    return out;
}

double linear_entropy_mc(std::span<const QuantumState> states) {
    if (states.size() < 2)
        throw std::invalid_argument("linear_entropy_mc: need at least two states");
    return linear_entropy_from_overlaps(pairwise_overlap_sq(states), states.size());
}

double linear_entropy_from_overlaps(std::span<const double> overlap_sq, std::size_t m) {
    if (m < 2 || overlap_sq.size() != m * m)
        throw std::invalid_argument("linear_entropy_from_overlaps: bad ensemble");
    double purity = 0.0;
    for (double o : overlap_sq)
        purity += o;
    purity /= double(m) * double(m);
    return -std::log2(purity);
}

double linear_entropy_estimate(double n_t, double n_cm, double l, double sigma) {
    if (n_t < 0 || n_cm < 0 || l < 1 || sigma < 0)
        throw std::invalid_argument("linear_entropy_estimate: bad arguments");
    const double s2 = sigma * sigma;
    // log2[(1+e^{-4 n_t s2/l})^l (1+e^{-4 n_cm s2})], evaluated in log space.
    const double log2_interior = l * std::log2(1.0 + std::exp(-4.0 * n_t * s2 / l)) +
                                 std::log2(1.0 + std::exp(-4.0 * n_cm * s2));
    return l + 1.0 - log2_interior;
}

double EnsembleResult::mean_fidelity() const {
    if (fidelities.empty())
        return 0.0;
    double s = 0.0;
    for (double f : fidelities)
        s += f;
    return s / double(fidelities.size());
}

double EnsembleResult::fidelity_std() const {
    if (fidelities.size() < 2)
        return 0.0;
    const double mean = mean_fidelity();
    double s = 0.0;
    for (double f : fidelities)
        s += (f - mean) * (f - mean);
    return std::sqrt(s / double(fidelities.size()));
}

double EnsembleResult::std_error() const {
    if (fidelities.empty())
        return 0.0;
    return fidelity_std() / std::sqrt(double(fidelities.size()));
}

} // namespace iontrap

#include "iontrap/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iontrap {

void NoiseModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("NoiseModel: sigma must be finite and >= 0");
    if (!std::isfinite(mean_eps))
        throw std::invalid_argument("NoiseModel: mean_eps must be finite");
}

RunRng::RunRng(double sigma, double mean_eps, std::uint64_t master_seed, std::uint64_t run_index)
    : sigma_(sigma), mean_eps_(mean_eps) {
    std::seed_seq seq{
        std::uint32_t(master_seed), std::uint32_t(master_seed >> 32),
        std::uint32_t(run_index), std::uint32_t(run_index >> 32),
    };
    eng_.seed(seq);
}

double RunRng::gaussian() {
    constexpr double k = 1.0 / 9007199254740992.0; // 2^-53
    const double u1 = double((eng_() >> 11) + 1) * k; // (0, 1]
    const double u2 = double(eng_() >> 11) * k;       // [0, 1)
    ++draws_;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RunRng derive_run_rng(const NoiseModel& model, std::uint64_t run_index) {
    model.validate();
    return RunRng(model.sigma, model.mean_eps, model.master_seed, run_index);
}

PerturbedAngles perturb(const Pulse& pulse, RunRng& rng) {
    if (!pulse.erroneous)
        throw std::invalid_argument("perturb: pulse is not erroneous");
    const double eps_theta = rng.mean_eps() + rng.sigma() * rng.gaussian();
    const double eps_phi = rng.mean_eps() + rng.sigma() * rng.gaussian();
    return {pulse.theta + eps_theta, pulse.phi + eps_phi};
}

} // namespace iontrap

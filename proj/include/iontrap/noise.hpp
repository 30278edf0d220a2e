// Gaussian phase-drift error model: each erroneous pulse's rotation angle and
// laser phase are shifted by independent draws from Normal(mean_eps, sigma^2).
//
// Generation method (fixed so that seed -> outputs is reproducible on one
// build): mt19937_64 seeded via std::seed_seq from (master_seed, run_index);
// each Gaussian draw is Box-Muller in cosine form,
//   z = sqrt(-2 ln u1) * cos(2 pi u2),
// consuming exactly two 64-bit engine words (u1 in (0,1], u2 in [0,1)).

#pragma once

#include "iontrap/pulse.hpp"

#include <cstdint>
#include <random>

namespace iontrap {

struct NoiseModel {
    double sigma = 0.0;    // dispersion, radians
    double mean_eps = 0.0; // systematic shift, radians
    std::uint64_t master_seed = 0;

    void validate() const;
};

// Deterministic per-run random stream; carries the noise parameters so a
// pulse can be perturbed from the stream alone.
class RunRng {
  public:
    RunRng(double sigma, double mean_eps, std::uint64_t master_seed, std::uint64_t run_index);

    // One standard-normal draw.
    double gaussian();

    double sigma() const { return sigma_; }
    double mean_eps() const { return mean_eps_; }
    std::uint64_t gaussian_draws() const { return draws_; }

  private:
    std::mt19937_64 eng_;
    double sigma_;
    double mean_eps_;
    std::uint64_t draws_ = 0;
};

RunRng derive_run_rng(const NoiseModel& model, std::uint64_t run_index);

struct PerturbedAngles {
    double theta;
    double phi;
};

// Effective (theta, phi) of an erroneous pulse: exactly two Gaussian draws,
// theta first. Calling this on a perfect pulse is a usage error.
PerturbedAngles perturb(const Pulse& pulse, RunRng& rng);

} // namespace iontrap

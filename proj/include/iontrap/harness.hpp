// Experiment driver: noiseless/noisy ensembles, sigma sweeps, and the
// watchdog study, with CSV artifacts. Runs are parallelized across a worker
// pool; per-run streams are derived from (master_seed, run_index), so output
// is bit-identical regardless of the worker count.

#pragma once

#include "iontrap/metrics.hpp"
#include "iontrap/shor.hpp"
#include "iontrap/watchdog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iontrap {

enum class CircuitMode { Full, Truncated, Optimized };
enum class WatchdogMode { Off, Partial, Project };

struct ExperimentConfig {
    FactoringInstance instance;
    std::vector<double> sigmas = {0.0, 0.001, 0.0025, 0.005, 0.01, 0.02};
    double mean_eps = 0.0;
    std::optional<double> mean_eps_ratio; // when set, mean_eps = ratio * sigma
    int runs = 20;
    std::uint64_t master_seed = 1;
    CircuitMode circuit_mode = CircuitMode::Full;
    int truncated_multipliers = 3;
    WatchdogMode watchdog_mode = WatchdogMode::Off;
    std::string out_dir = "out";
    int jobs = 1;
    bool dump_pulses = false;
    bool dump_state = false;

    double eps_for(double sigma) const {
        return mean_eps_ratio ? *mean_eps_ratio * sigma : mean_eps;
    }
};

// Modular-exponentiation circuit for the configured mode (no QFT).
Circuit build_circuit_for(const ExperimentConfig& config);

// Noisy ensemble of one (sigma, eps) point over the compiled sequence;
// fidelities are measured against `reference`. Final states are returned in
// run order when keep_states is set.
EnsembleResult run_ensemble(const PulseSequence& seq, const QuantumState& reference,
                            const NoiseModel& model, int n_qubits, int runs, int jobs,
                            std::vector<QuantumState>* states_out);

struct Fig1SigmaResult {
    double sigma = 0.0;
    double fidelity_pre_ft = 0.0; // single-run fidelity vs the ideal pre-FT state
    double peak_mass = 0.0;       // post-FT probability on the ideal peak bins
    double contrast = 0.0;        // peak_mass / (n_peaks / q), 1 = uniform
    std::string joint_file;
    std::string pc_file;
};

struct Fig2Row {
    double sigma = 0.0;
    double mean_eps = 0.0;
    int runs = 0;
    double mean_fidelity = 0.0;
    double fidelity_std = 0.0;
    double eq2_estimate = 0.0;
    double slin_mc = 0.0;
    double eq3_estimate = 0.0;
    std::size_t n_t = 0;
    std::size_t n_cm = 0;
    double l = 18.0;
};

struct WatchdogStudyRow {
    double sigma = 0.0;
    double mean_eps = 0.0;
    WatchdogMode mode = WatchdogMode::Off;
    double mean_survival = 0.0;
    double survival_std = 0.0;
};

// Joint pre-FT distributions and post-FT register-1 distributions, one
// representative run per sigma (run index 0). Emits per-sigma
// fig1_joint_sigma*.csv ("j,x,probability"), fig1_pc_sigma*.csv
// ("c,probability") and a fig1_stats.csv summary.
std::vector<Fig1SigmaResult> run_fig1(const ExperimentConfig& config);

// Fidelity sweep vs sigma at the end of the modular exponentiation;
// emits fig2_sweep.csv with header
// "sigma,mean_eps,runs,mean_fidelity,fidelity_std,eq2_estimate,slin_mc,eq3_estimate,n_t,n_cm,l".
std::vector<Fig2Row> run_fig2(const ExperimentConfig& config);

// Paired off / partial / full-projection ensembles on matched seeds; emits
// watchdog_summary.csv ("sigma,mean_eps,mode,mean_survival,std") and
// per-checkpoint watchdog_runs_<mode>.csv ("run,checkpoint,probability,cumulative").
std::vector<WatchdogStudyRow> run_watchdog_study(const ExperimentConfig& config);

std::string watchdog_mode_name(WatchdogMode mode);

// Fixed-format float for CSV cells (17 significant digits).
std::string csv_num(double v);

} // namespace iontrap

#include "iontrap/harness.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace iontrap {

namespace {

// Runs fn(run_index) for every index in [0, runs) across up to `jobs`
// workers. Results must be written to per-index slots by the callers.
template <typename Fn>
void parallel_runs(int runs, int jobs, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, runs));
    if (jobs == 1) {
        for (int r = 0; r < runs; ++r)
            fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= runs)
                    return;
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : workers)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::string sigma_tag(double sigma) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", sigma);
    return buf;
}

QuantumState noiseless_final(const PulseSequence& seq, int n_qubits) {
    QuantumState state(n_qubits);
    execute(state, seq);
    return state;
}

void maybe_dump(const ExperimentConfig& config, const PulseSequence& seq,
                const QuantumState* state) {
    if (config.dump_pulses) {
        auto os = open_csv(config.out_dir, "pulses.csv");
        os << "kind,ion,theta,phi,erroneous\n";
        seq.dump(os);
    }
    if (config.dump_state && state) {
        auto os = open_csv(config.out_dir, "state.csv");
        os << "index,re,im\n";
        state->dump(os);
    }
}

} // namespace

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string watchdog_mode_name(WatchdogMode mode) {
    switch (mode) {
    case WatchdogMode::Off: return "off";
    case WatchdogMode::Partial: return "partial";
    case WatchdogMode::Project: return "project";
    }
    return "?";
}

Circuit build_circuit_for(const ExperimentConfig& config) {
    switch (config.circuit_mode) {
    case CircuitMode::Full:
        return build_modexp_circuit(config.instance);
    case CircuitMode::Truncated:
        return build_modexp_circuit(config.instance, config.truncated_multipliers);
    case CircuitMode::Optimized:
        return build_modexp_circuit(config.instance, -1, {.optimized = true});
    }
    throw std::invalid_argument("build_circuit_for: unknown mode");
}

EnsembleResult run_ensemble(const PulseSequence& seq, const QuantumState& reference,
                            const NoiseModel& model, int n_qubits, int runs, int jobs,
                            std::vector<QuantumState>* states_out) {
    if (runs < 1)
        throw std::invalid_argument("run_ensemble: need at least one run");
    EnsembleResult result;
    result.sigma = model.sigma;
    result.mean_eps = model.mean_eps;
    const PulseCounts counts = pulse_counts(seq);
    result.n_t = counts.n_erroneous();
    result.n_cm = counts.n_sideband;
    result.fidelities.assign(runs, 0.0);
    if (states_out)
        states_out->assign(runs, QuantumState(1));

    parallel_runs(runs, jobs, [&](int r) {
        RunRng rng = derive_run_rng(model, std::uint64_t(r));
        QuantumState state(n_qubits);
        execute(state, seq, &rng);
        result.fidelities[r] = fidelity(state, reference);
        if (states_out)
            (*states_out)[r] = std::move(state);
    });
    if (states_out)
        result.pair_overlap_sq = pairwise_overlap_sq(*states_out);
    return result;
}

std::vector<Fig1SigmaResult> run_fig1(const ExperimentConfig& config) {
    const FactoringInstance& inst = config.instance;
    const Circuit circ = build_circuit_for(config);
    const PulseSequence seq = compile(circ);
    const Circuit qft = build_qft_circuit(inst.exponent_bits);
    const PulseSequence qft_seq = compile(qft);

    const QuantumState reference = config.circuit_mode == CircuitMode::Full
                                       ? ideal_state(inst, Stage::PreFT)
                                       : noiseless_final(seq, circ.n_qubits());

    // Ideal peak bins: post-FT probability above the uniform level.
    const std::vector<double> pc_ideal = analytic_pc(inst);
    std::vector<int> peak_bins;
    for (int c = 0; c < inst.q(); ++c)
        if (pc_ideal[c] > 1.0 / double(inst.q()))
            peak_bins.push_back(c);

    const RegisterLayout lay = inst.layout();
    std::vector<int> joint_sel = lay.register1;
    joint_sel.insert(joint_sel.end(), lay.register2.begin(), lay.register2.end());

    std::vector<Fig1SigmaResult> results;
    for (double sigma : config.sigmas) {
        const NoiseModel model{sigma, config.eps_for(sigma), config.master_seed};
        RunRng rng = derive_run_rng(model, 0);
        QuantumState state(circ.n_qubits());
        execute(state, seq, sigma == 0.0 && model.mean_eps == 0.0 ? nullptr : &rng);

        Fig1SigmaResult res;
        res.sigma = sigma;
        res.fidelity_pre_ft = fidelity(state, reference);

        const std::vector<double> joint = state.register_distribution(joint_sel);
        res.joint_file = "fig1_joint_sigma" + sigma_tag(sigma) + ".csv";
        {
            auto os = open_csv(config.out_dir, res.joint_file);
            os << "j,x,probability\n";
            const int xdim = 1 << inst.value_bits();
            for (int j = 0; j < inst.q(); ++j)
                for (int x = 0; x < xdim; ++x)
                    os << j << ',' << x << ','
                       << csv_num(joint[std::size_t(j) | (std::size_t(x) << inst.exponent_bits)])
                       << '\n';
        }

        execute(state, qft_seq, sigma == 0.0 && model.mean_eps == 0.0 ? nullptr : &rng);
        const std::vector<double> pc = state.register_distribution(lay.register1);
        res.pc_file = "fig1_pc_sigma" + sigma_tag(sigma) + ".csv";
        {
            auto os = open_csv(config.out_dir, res.pc_file);
            os << "c,probability\n";
            for (int c = 0; c < inst.q(); ++c)
                os << c << ',' << csv_num(pc[c]) << '\n';
        }

        for (int c : peak_bins)
            res.peak_mass += pc[c];
        res.contrast = res.peak_mass / (double(peak_bins.size()) / double(inst.q()));
        results.push_back(std::move(res));
    }

    {
        auto os = open_csv(config.out_dir, "fig1_stats.csv");
        os << "sigma,fidelity_pre_ft,peak_mass,contrast\n";
        for (const auto& r : results)
            os << csv_num(r.sigma) << ',' << csv_num(r.fidelity_pre_ft) << ','
               << csv_num(r.peak_mass) << ',' << csv_num(r.contrast) << '\n';
    }
    maybe_dump(config, seq, nullptr);
    return results;
}

std::vector<Fig2Row> run_fig2(const ExperimentConfig& config) {
    const FactoringInstance& inst = config.instance;
    const Circuit circ = build_circuit_for(config);
    const PulseSequence seq = compile(circ);
    const PulseCounts counts = pulse_counts(seq);
    const double l = double(circ.n_qubits());

    const QuantumState reference = config.circuit_mode == CircuitMode::Full
                                       ? ideal_state(inst, Stage::PreFT)
                                       : noiseless_final(seq, circ.n_qubits());
    maybe_dump(config, seq, &reference);

    std::vector<Fig2Row> rows;
    for (double sigma : config.sigmas) {
        const NoiseModel model{sigma, config.eps_for(sigma), config.master_seed};
        std::vector<QuantumState> states;
        const EnsembleResult ens = run_ensemble(seq, reference, model, circ.n_qubits(),
                                                config.runs, config.jobs, &states);
        Fig2Row row;
        row.sigma = sigma;
        row.mean_eps = model.mean_eps;
        row.runs = config.runs;
        row.mean_fidelity = ens.mean_fidelity();
        row.fidelity_std = ens.fidelity_std();
        row.eq2_estimate = mean_fidelity_estimate(double(counts.n_erroneous()),
                                                  double(counts.n_sideband), l, sigma);
        row.slin_mc = config.runs >= 2
                          ? linear_entropy_from_overlaps(ens.pair_overlap_sq, states.size())
                          : 0.0;
        row.eq3_estimate = linear_entropy_estimate(double(counts.n_erroneous()),
                                                   double(counts.n_sideband), l, sigma);
        row.n_t = counts.n_erroneous();
        row.n_cm = counts.n_sideband;
        row.l = l;
        rows.push_back(row);
    }

    auto os = open_csv(config.out_dir, "fig2_sweep.csv");
    os << "sigma,mean_eps,runs,mean_fidelity,fidelity_std,eq2_estimate,slin_mc,eq3_estimate,"
          "n_t,n_cm,l\n";
    for (const Fig2Row& r : rows)
        os << csv_num(r.sigma) << ',' << csv_num(r.mean_eps) << ',' << r.runs << ','
           << csv_num(r.mean_fidelity) << ',' << csv_num(r.fidelity_std) << ','
           << csv_num(r.eq2_estimate) << ',' << csv_num(r.slin_mc) << ','
           << csv_num(r.eq3_estimate) << ',' << r.n_t << ',' << r.n_cm << ',' << csv_num(r.l)
           << '\n';
    return rows;
}

std::vector<WatchdogStudyRow> run_watchdog_study(const ExperimentConfig& config) {
    const Circuit circ = build_circuit_for(config);
    const WatchdogSchedule schedule = make_default_schedule(circ);
    const WatchdogSchedule empty_schedule;
    const QuantumState ideal_final = noiseless_final(compile(circ), circ.n_qubits());

    struct RunRecord {
        double survival = 0.0;
        std::vector<double> probabilities;
    };

    std::vector<WatchdogStudyRow> rows;
    std::vector<std::string> report_lines_partial, report_lines_project;

    for (double sigma : config.sigmas) {
        const NoiseModel model{sigma, config.eps_for(sigma), config.master_seed};
        const std::array<WatchdogMode, 3> modes = {WatchdogMode::Off, WatchdogMode::Partial,
                                                   WatchdogMode::Project};
        for (WatchdogMode mode : modes) {
            std::vector<RunRecord> records(config.runs);
            parallel_runs(config.runs, config.jobs, [&](int r) {
                RunRng rng = derive_run_rng(model, std::uint64_t(r));
                WatchdogOutcome out =
                    mode == WatchdogMode::Off
                        ? run_with_watchdog(circ, empty_schedule, &rng, &ideal_final)
                        : mode == WatchdogMode::Partial
                              ? run_with_watchdog(circ, schedule, &rng, &ideal_final)
                              : run_with_full_projection(circ, schedule, &rng);
                records[r] = {out.survival, std::move(out.checkpoint_probabilities)};
            });

            double mean = 0.0;
            for (const auto& rec : records)
                mean += rec.survival;
            mean /= config.runs;
            double var = 0.0;
            for (const auto& rec : records)
                var += (rec.survival - mean) * (rec.survival - mean);
            rows.push_back({sigma, model.mean_eps, mode, mean,
                            config.runs > 1 ? std::sqrt(var / config.runs) : 0.0});

            if (mode != WatchdogMode::Off) {
                auto& lines = mode == WatchdogMode::Partial ? report_lines_partial
                                                            : report_lines_project;
                for (int r = 0; r < config.runs; ++r) {
                    double cum = 1.0;
                    for (std::size_t cp = 0; cp < records[r].probabilities.size(); ++cp) {
                        cum *= records[r].probabilities[cp];
                        lines.push_back(std::to_string(r) + ',' + std::to_string(cp) + ',' +
                                        csv_num(records[r].probabilities[cp]) + ',' +
                                        csv_num(cum));
                    }
                }
            }
        }
    }

    {
        auto os = open_csv(config.out_dir, "watchdog_summary.csv");
        os << "sigma,mean_eps,mode,mean_survival,std\n";
        for (const auto& r : rows)
            os << csv_num(r.sigma) << ',' << csv_num(r.mean_eps) << ','
               << watchdog_mode_name(r.mode) << ',' << csv_num(r.mean_survival) << ','
               << csv_num(r.survival_std) << '\n';
    }
    for (const auto* pair : {&report_lines_partial, &report_lines_project}) {
        const bool partial = pair == &report_lines_partial;
        auto os = open_csv(config.out_dir, partial ? "watchdog_runs_partial.csv"
                                                   : "watchdog_runs_project.csv");
        os << "run,checkpoint,probability,cumulative\n";
        for (const std::string& line : *pair)
            os << line << '\n';
    }
    return rows;
}

} // namespace iontrap

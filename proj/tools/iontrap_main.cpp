// Command-line driver for the ion-trap factoring simulator.
//
//   itsim fig1     joint and post-QFT distributions per sigma
//   itsim fig2     fidelity / entropy sweep vs sigma
//   itsim watchdog paired off / partial / full-projection study
//   itsim factor   demonstration run: sample, extract order, print factors

#include "iontrap/harness.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <random>

namespace {

using namespace iontrap;

struct CliOptions {
    ExperimentConfig config;
    std::string circuit_spec = "full";
    std::string watchdog_spec = "off";
    double mean_eps = 0.0;
    double mean_eps_ratio = -1.0;
    bool sigmas_given = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    auto& cfg = opt.config;
    cmd->add_option("--n", cfg.instance.modulus, "number to factor (odd)");
    cmd->add_option("--y", cfg.instance.base, "coprime base");
    cmd->add_option("--q-bits", cfg.instance.exponent_bits, "register-1 width in bits");
    cmd->add_option("--sigma", cfg.sigmas, "noise dispersion (radians); repeatable")
        ->each([&](const std::string&) { opt.sigmas_given = true; });
    cmd->add_option("--mean-eps", opt.mean_eps, "systematic shift (radians)");
    cmd->add_option("--mean-eps-ratio", opt.mean_eps_ratio,
                    "systematic shift as a multiple of sigma");
    cmd->add_option("--runs", cfg.runs, "runs per sigma point");
    cmd->add_option("--seed", cfg.master_seed, "master seed");
    cmd->add_option("--circuit", opt.circuit_spec, "full | truncated:K | optimized");
    cmd->add_option("--watchdog", opt.watchdog_spec, "off | partial | project");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--jobs", cfg.jobs, "parallel workers");
    cmd->add_flag("--dump-pulses", cfg.dump_pulses, "dump the compiled pulse sequence");
    cmd->add_flag("--dump-state", cfg.dump_state, "dump the noiseless final state");
}

void finalize(CliOptions& opt) {
    auto& cfg = opt.config;
    if (opt.mean_eps_ratio >= 0.0)
        cfg.mean_eps_ratio = opt.mean_eps_ratio;
    else
        cfg.mean_eps = opt.mean_eps;

    if (opt.circuit_spec == "full") {
        cfg.circuit_mode = CircuitMode::Full;
    } else if (opt.circuit_spec == "optimized") {
        cfg.circuit_mode = CircuitMode::Optimized;
    } else if (opt.circuit_spec.rfind("truncated", 0) == 0) {
        cfg.circuit_mode = CircuitMode::Truncated;
        const auto colon = opt.circuit_spec.find(':');
        if (colon != std::string::npos)
            cfg.truncated_multipliers = std::stoi(opt.circuit_spec.substr(colon + 1));
    } else {
        throw CLI::ValidationError("--circuit", "expected full, truncated:K or optimized");
    }

    if (opt.watchdog_spec == "off")
        cfg.watchdog_mode = WatchdogMode::Off;
    else if (opt.watchdog_spec == "partial")
        cfg.watchdog_mode = WatchdogMode::Partial;
    else if (opt.watchdog_spec == "project")
        cfg.watchdog_mode = WatchdogMode::Project;
    else
        throw CLI::ValidationError("--watchdog", "expected off, partial or project");

    cfg.instance.validate();
}

int cmd_fig1(CliOptions& opt) {
    if (!opt.sigmas_given)
        opt.config.sigmas = {0.0, 0.01, 0.05};
    const auto results = run_fig1(opt.config);
    for (const auto& r : results)
        std::printf("sigma=%-8g fidelity=%.6f peak_mass=%.6f contrast=%.3f\n", r.sigma,
                    r.fidelity_pre_ft, r.peak_mass, r.contrast);
    std::printf("wrote %zu distribution pairs to %s\n", results.size(),
                opt.config.out_dir.c_str());
    return 0;
}

int cmd_fig2(CliOptions& opt) {
    const auto rows = run_fig2(opt.config);
    std::printf("n_t=%zu n_cm=%zu l=%g\n", rows.empty() ? 0 : rows[0].n_t,
                rows.empty() ? 0 : rows[0].n_cm, rows.empty() ? 0.0 : rows[0].l);
    for (const auto& r : rows)
        std::printf("sigma=%-8g F=%.4f +- %.4f   eq2=%.4f   Slin=%.3f eq3=%.3f\n", r.sigma,
                    r.mean_fidelity, r.fidelity_std, r.eq2_estimate, r.slin_mc, r.eq3_estimate);
    std::printf("wrote fig2_sweep.csv to %s\n", opt.config.out_dir.c_str());
    return 0;
}

int cmd_watchdog(CliOptions& opt) {
    if (!opt.sigmas_given)
        opt.config.sigmas = {0.001};
    const auto rows = run_watchdog_study(opt.config);
    for (const auto& r : rows)
        std::printf("sigma=%-8g mode=%-8s survival=%.4f +- %.4f\n", r.sigma,
                    watchdog_mode_name(r.mode).c_str(), r.mean_survival, r.survival_std);
    std::printf("wrote watchdog_summary.csv to %s\n", opt.config.out_dir.c_str());
    return 0;
}

int cmd_factor(CliOptions& opt) {
    const FactoringInstance& inst = opt.config.instance;
    const double sigma = opt.config.sigmas.size() == 1 ? opt.config.sigmas[0] : 0.0;
    const NoiseModel model{sigma, opt.config.eps_for(sigma), opt.config.master_seed};

    const Circuit circ = build_circuit_for(opt.config);
    QuantumState state(circ.n_qubits());
    RunRng rng = derive_run_rng(model, 0);
    execute(state, compile(circ), sigma > 0.0 || model.mean_eps != 0.0 ? &rng : nullptr);
    execute(state, compile(build_qft_circuit(inst.exponent_bits)),
            sigma > 0.0 || model.mean_eps != 0.0 ? &rng : nullptr);

    const auto pc = state.register_distribution(inst.layout().register1);
    std::mt19937_64 sampler(opt.config.master_seed ^ 0x5afe5afeULL);
    std::discrete_distribution<int> dist(pc.begin(), pc.end());
    std::printf("sampled register-1 measurements:\n");
    std::vector<MeasurementRecord> records;
    std::vector<int> samples;
    for (int s = 0; s < 8; ++s) {
        const int c = dist(sampler);
        records.push_back({c, pc[c]});
        samples.push_back(c);
    }
    for (const MeasurementRecord& rec : records)
        std::printf("  c=%-4d P(c)=%.6f\n", rec.c, rec.probability);

    const auto r = extract_order(samples, inst);
    if (!r) {
        std::printf("order extraction inconclusive; rerun with another seed\n");
        return 1;
    }
    std::printf("order r = %d\n", *r);
    const auto factors = factors_from_order(inst, *r);
    if (!factors) {
        std::printf("order %d yields trivial factors; retry with a new base\n", *r);
        return 1;
    }
    std::printf("%d = %d x %d\n", inst.modulus, factors->first, factors->second);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level ion-trap simulator: Shor factoring under phase-drift errors"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* fig1 = app.add_subcommand("fig1", "register distributions before/after the QFT");
    auto* fig2 = app.add_subcommand("fig2", "fidelity and entropy sweep vs sigma");
    auto* watchdog = app.add_subcommand("watchdog", "watchdog stabilization study");
    auto* factor = app.add_subcommand("factor", "end-to-end factoring demonstration");
    for (auto* cmd : {fig1, fig2, watchdog, factor})
        add_common_flags(cmd, opt);
    // Study defaults: truncated circuit, systematic shift 1.1 sigma.
    watchdog->parse_complete_callback([&] {
        if (watchdog->count("--circuit") == 0)
            opt.circuit_spec = "truncated:3";
        if (watchdog->count("--mean-eps-ratio") == 0 && watchdog->count("--mean-eps") == 0)
            opt.mean_eps_ratio = 1.1;
    });

    try {
        app.parse(argc, argv);
        finalize(opt);
        if (fig1->parsed())
            return cmd_fig1(opt);
        if (fig2->parsed())
            return cmd_fig2(opt);
        if (watchdog->parsed())
            return cmd_watchdog(opt);
        if (factor->parsed())
            return cmd_factor(opt);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

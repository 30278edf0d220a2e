#include "iontrap/harness.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace iontrap;
namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

ExperimentConfig quick_config(const std::string& out_dir) {
    ExperimentConfig config;
    config.circuit_mode = CircuitMode::Truncated;
    config.truncated_multipliers = 1;
    config.sigmas = {0.0, 0.002};
    config.runs = 3;
    config.master_seed = 2718;
    config.out_dir = out_dir;
    return config;
}

} // namespace

TEST_CASE("fig2 sweep is reproducible and independent of the worker count") {
    const std::string dir_a = "test_out/fig2_a";
    const std::string dir_b = "test_out/fig2_b";
    ExperimentConfig a = quick_config(dir_a);
    ExperimentConfig b = quick_config(dir_b);
    a.jobs = 1;
    b.jobs = 3;

    const auto rows_a = run_fig2(a);
    const auto rows_b = run_fig2(b);
    REQUIRE(rows_a.size() == 2);
    CHECK(slurp(dir_a + "/fig2_sweep.csv") == slurp(dir_b + "/fig2_sweep.csv"));

    // Sigma = 0 row: every run's fidelity is 1 and the error bar vanishes.
    CHECK(rows_a[0].mean_fidelity == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rows_a[0].fidelity_std == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(rows_a[0].eq2_estimate == doctest::Approx(1.0));
    // Noisy row: fidelity strictly below one, estimates finite.
    CHECK(rows_a[1].mean_fidelity < 1.0);
    CHECK(rows_a[1].n_t > 0);
    CHECK(rows_a[1].n_cm > 0);

    const std::string header = slurp(dir_a + "/fig2_sweep.csv");
    CHECK(header.rfind("sigma,mean_eps,runs,mean_fidelity,fidelity_std,eq2_estimate,"
                       "slin_mc,eq3_estimate,n_t,n_cm,l\n", 0) == 0);
}

TEST_CASE("fig1 emits normalized distributions") {
    ExperimentConfig config = quick_config("test_out/fig1");
    config.sigmas = {0.0};
    const auto results = run_fig1(config);
    REQUIRE(results.size() == 1);
    CHECK(results[0].fidelity_pre_ft == doctest::Approx(1.0).epsilon(1e-8));

    const std::string joint = slurp(config.out_dir + "/" + results[0].joint_file);
    CHECK(joint.rfind("j,x,probability\n", 0) == 0);

    std::istringstream is(joint);
    std::string line;
    std::getline(is, line); // header
    double total = 0.0;
    while (std::getline(is, line)) {
        const auto last = line.rfind(',');
        total += std::stod(line.substr(last + 1));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    const std::string pc = slurp(config.out_dir + "/" + results[0].pc_file);
    CHECK(pc.rfind("c,probability\n", 0) == 0);
    std::istringstream pcs(pc);
    std::getline(pcs, line);
    double pc_total = 0.0;
    int rows = 0;
    while (std::getline(pcs, line)) {
        pc_total += std::stod(line.substr(line.rfind(',') + 1));
        ++rows;
    }
    CHECK(rows == 256); // q rows
    CHECK(pc_total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("watchdog study orders the three modes") {
    ExperimentConfig config = quick_config("test_out/wd");
    config.sigmas = {0.0};
    config.runs = 2;
    config.mean_eps_ratio = 1.1;
    const auto rows = run_watchdog_study(config);
    REQUIRE(rows.size() == 3);
    // sigma = 0: all three modes report survival 1.
    for (const auto& row : rows)
        CHECK(row.mean_survival == doctest::Approx(1.0).epsilon(1e-8));

    const std::string summary = slurp(config.out_dir + "/watchdog_summary.csv");
    CHECK(summary.rfind("sigma,mean_eps,mode,mean_survival,std\n", 0) == 0);
    CHECK(summary.find(",off,") != std::string::npos);
    CHECK(summary.find(",partial,") != std::string::npos);
    CHECK(summary.find(",project,") != std::string::npos);

    const std::string report = slurp(config.out_dir + "/watchdog_runs_partial.csv");
    CHECK(report.rfind("run,checkpoint,probability,cumulative\n", 0) == 0);
}

TEST_CASE("pulse and state dumps are written on request") {
    ExperimentConfig config = quick_config("test_out/dumps");
    config.sigmas = {0.0};
    config.runs = 2;
    config.dump_pulses = true;
    config.dump_state = true;
    (void)run_fig2(config);
    CHECK(slurp(config.out_dir + "/pulses.csv").rfind("kind,ion,theta,phi,erroneous\n", 0) == 0);
    CHECK(slurp(config.out_dir + "/state.csv").rfind("index,re,im\n", 0) == 0);
}

#include "iontrap/statevec.hpp"

#include "doctest.h"
#include "oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace iontrap;
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

QuantumState random_state(int n_qubits, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    QuantumState state(n_qubits);
    state.zero();
    double norm = 0.0;
    std::vector<cplx> amps(state.dim());
    for (auto& a : amps) {
        a = {dist(eng), dist(eng)};
        norm += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < amps.size(); ++i)
        state.set_amplitude(i, amps[i] * inv);
    return state;
}

} // namespace

TEST_CASE("basis label round trip and state layout") {
    QuantumState state(3);
    CHECK(state.dim() == 16);
    CHECK(state.amplitude(0) == cplx{1.0, 0.0});

    const BasisLabel label{0b101, 1};
    CHECK(label.to_index() == 0b1011);
    const BasisLabel back = BasisLabel::from_index(0b1011);
    CHECK(back.qubit_bits == 0b101);
    CHECK(back.cm == 1);
}

TEST_CASE("resonant pulse on basis states") {
    QuantumState state(1);

    SUBCASE("|g>, theta=pi/2, phi=0 -> -i|e>") {
        state.apply_resonant(0, kPi / 2, 0.0);
        CHECK(std::abs(state.amplitude(0b10) - (-kI)) < 1e-12);
        CHECK(std::abs(state.amplitude(0b00)) < 1e-12);
    }
    SUBCASE("|e>, theta=pi -> -|e>") {
        state.set_basis(1);
        state.apply_resonant(0, kPi, 1.234);
        CHECK(std::abs(state.amplitude(0b10) - cplx{-1.0, 0.0}) < 1e-12);
    }
    SUBCASE("(|g>+|e>)/sqrt2, theta=pi/4, phi=pi/2 -> |e>") {
        // 2x2 matrix-vector product: U(pi/4, pi/2) = [[1,-1],[1,1]]/sqrt2.
        const double s = 1.0 / std::sqrt(2.0);
        state.zero();
        state.set_amplitude(0b00, s);
        state.set_amplitude(0b10, s);
        state.apply_resonant(0, kPi / 4, kPi / 2);
        CHECK(std::abs(state.amplitude(0b10) - cplx{1.0, 0.0}) < 1e-12);
        CHECK(std::abs(state.amplitude(0b00)) < 1e-12);
    }
    SUBCASE("index out of range") {
        CHECK_THROWS_AS(state.apply_resonant(1, 0.1, 0.0), std::out_of_range);
        CHECK_THROWS_AS(state.apply_resonant(-1, 0.1, 0.0), std::out_of_range);
    }
}

TEST_CASE("sideband pulse acts only on the (g,1)/(e,0) subspace") {
    QuantumState state(2);

    SUBCASE("|g>|0> unchanged for any angles") {
        state.apply_sideband(0, 0.77, 1.3);
        CHECK(std::abs(state.amplitude(0) - cplx{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("|g>|1> -> -i|e>|0>") {
        state.set_basis(0, 1);
        state.apply_sideband(0, kPi / 2, 0.0);
        CHECK(std::abs(state.amplitude(0b010) - (-kI)) < 1e-12);
    }
    SUBCASE("|e>|0> -> -i|g>|1>") {
        state.set_basis(0b01, 0);
        state.apply_sideband(0, kPi / 2, 0.0);
        CHECK(std::abs(state.amplitude(0b001) - (-kI)) < 1e-12);
    }
    SUBCASE("|e>|1> unchanged") {
        state.set_basis(0b01, 1);
        state.apply_sideband(0, 0.3, 0.9);
        CHECK(std::abs(state.amplitude(0b011) - cplx{1.0, 0.0}) < 1e-15);
    }
}

TEST_CASE("aux 2pi pulse phases") {
    QuantumState state(2);
    SUBCASE("|g>|1> -> -|g>|1>") {
        state.set_basis(0, 1);
        state.apply_aux_2pi(0);
        CHECK(state.amplitude(1) == cplx{-1.0, 0.0});
    }
    SUBCASE("|e>|1> unchanged") {
        state.set_basis(0b01, 1);
        state.apply_aux_2pi(0);
        CHECK(state.amplitude(0b011) == cplx{1.0, 0.0});
    }
    SUBCASE("|g>|0> unchanged") {
        state.apply_aux_2pi(0);
        CHECK(state.amplitude(0) == cplx{1.0, 0.0});
    }
    SUBCASE("aux phase generalizes the 2pi case") {
        state.set_basis(0, 1);
        state.apply_aux_phase(0, 0.7);
        CHECK(std::abs(state.amplitude(1) - std::exp(kI * 0.7)) < 1e-14);
    }
}

TEST_CASE("overlap") {
    QuantumState g(1);
    QuantumState e(1);
    e.set_basis(1);

    CHECK(std::abs(overlap(g, g) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(overlap(g, e)) < 1e-15);

    QuantumState plus(1);
    plus.zero();
    const double s = 1.0 / std::sqrt(2.0);
    plus.set_amplitude(0b00, s);
    plus.set_amplitude(0b10, s);
    CHECK(std::abs(overlap(g, plus) - cplx{s, 0.0}) < 1e-15);

    QuantumState wide(2);
    CHECK_THROWS_AS((void)overlap(g, wide), std::invalid_argument);
}

TEST_CASE("projective measurement") {
    SUBCASE("deterministic branch") {
        QuantumState state(1);
        const double p = state.project_qubit(0, 0);
        CHECK(p == doctest::Approx(1.0));
        CHECK(std::abs(state.amplitude(0) - cplx{1.0, 0.0}) < 1e-15);
    }
    SUBCASE("equal superposition collapses and renormalizes") {
        QuantumState state(1);
        state.zero();
        const double s = 1.0 / std::sqrt(2.0);
        state.set_amplitude(0b00, s);
        state.set_amplitude(0b10, s);
        const double p = state.project_qubit(0, 1);
        CHECK(p == doctest::Approx(0.5));
        CHECK(std::abs(state.amplitude(0b10) - cplx{1.0, 0.0}) < 1e-12);
        CHECK(state.norm_sq() == doctest::Approx(1.0));
    }
    SUBCASE("empty branch returns probability 0 and an error state") {
        QuantumState state(1);
        state.set_basis(1);
        const double p = state.project_qubit(0, 0);
        CHECK(p == 0.0);
        CHECK(state.norm_sq() == 0.0);
    }
    SUBCASE("CM designated by ion index -1") {
        QuantumState state(1);
        state.set_basis(0, 1);
        const double p = state.project_qubit(-1, 1);
        CHECK(p == doctest::Approx(1.0));
    }
}

TEST_CASE("register distribution") {
    SUBCASE("uniform two-qubit state") {
        QuantumState state(2);
        state.zero();
        for (std::uint64_t bits = 0; bits < 4; ++bits)
            state.set_amplitude(bits << 1, 0.5);
        const std::vector<int> sel = {0, 1};
        const auto dist = state.register_distribution(sel);
        REQUIRE(dist.size() == 4);
        for (double p : dist)
            CHECK(p == doctest::Approx(0.25));
    }
    SUBCASE("selection order defines bit order") {
        QuantumState state(2);
        state.set_basis(0b01); // qubit 0 = 1, qubit 1 = 0
        const std::vector<int> fwd = {0, 1}, rev = {1, 0};
        CHECK(state.register_distribution(fwd)[0b01] == doctest::Approx(1.0));
        CHECK(state.register_distribution(rev)[0b10] == doctest::Approx(1.0));
    }
    SUBCASE("duplicate or empty selections are usage errors") {
        QuantumState state(2);
        const std::vector<int> dup = {1, 1};
        CHECK_THROWS_AS((void)state.register_distribution(dup), std::invalid_argument);
        CHECK_THROWS_AS((void)state.register_distribution(std::vector<int>{}),
                        std::invalid_argument);
    }
}

TEST_CASE("unitarity: norm drift below 1e-9 over 1000 random pulses") {
    QuantumState state = random_state(6, 42);
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    std::uniform_int_distribution<int> ion(0, 5);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int i = 0; i < 1000; ++i) {
        switch (kind(eng)) {
        case 0: state.apply_resonant(ion(eng), angle(eng), angle(eng)); break;
        case 1: state.apply_sideband(ion(eng), angle(eng), angle(eng)); break;
        default: state.apply_aux_2pi(ion(eng)); break;
        }
    }
    CHECK(std::abs(state.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("inversion: apply(theta) then apply(-theta) restores the state") {
    for (unsigned seed : {1u, 2u, 3u}) {
        QuantumState state = random_state(4, seed);
        const auto before = testutil::amplitudes(state);
        state.apply_resonant(2, 0.813, 2.1);
        state.apply_resonant(2, -0.813, 2.1);
        CHECK(testutil::max_abs_diff(testutil::amplitudes(state), before) < 1e-12);

        state.apply_sideband(1, 1.37, 0.4);
        state.apply_sideband(1, -1.37, 0.4);
        CHECK(testutil::max_abs_diff(testutil::amplitudes(state), before) < 1e-12);
    }
}

TEST_CASE("locality: resonant pulse leaves distributions over other qubits unchanged") {
    QuantumState state = random_state(5, 99);
    const std::vector<int> others = {0, 2, 4};
    const auto before = state.register_distribution(others);
    state.apply_resonant(3, 1.1, 0.3);
    const auto after = state.register_distribution(others);
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(std::abs(after[i] - before[i]) < 1e-12);
}

TEST_CASE("sideband conserves ion_bit + cm_bit per component") {
    QuantumState state = random_state(3, 5);
    // (g,0) and (e,1) components must be untouched, not merely conserved in
    // probability.
    const auto before = testutil::amplitudes(state);
    state.apply_sideband(1, 0.9, 1.7);
    const auto after = testutil::amplitudes(state);
    const std::uint64_t mask = 1ull << 2;
    double moved_outside = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const bool g1 = (i & mask) == 0 && (i & 1) == 1;
        const bool e0 = (i & mask) != 0 && (i & 1) == 0;
        if (!g1 && !e0)
            moved_outside = std::max(moved_outside, std::abs(after[i] - before[i]));
    }
    CHECK(moved_outside < 1e-15);
}

TEST_CASE("pulse application matches the dense matrix oracle") {
    const int n = 3;
    QuantumState state = random_state(n, 11);
    const auto vec = testutil::amplitudes(state);

    const auto pulses = {Pulse::resonant(1, 0.6, 2.2), Pulse::sideband(2, 1.9, 5.0),
                         Pulse::aux_2pi(0), Pulse::aux_phase(2, 2.8)};
    for (const Pulse& p : pulses) {
        QuantumState applied = state;
        execute(applied, [&] {
            PulseSequence s;
            s.push(p);
            return s;
        }());
        const auto expected = testutil::pulse_matrix(p, n).apply(vec);
        CHECK(testutil::max_abs_diff(testutil::amplitudes(applied), expected) < 1e-12);
    }
}

TEST_CASE("state dump lists nonzero amplitudes with full precision") {
    QuantumState state(1);
    state.zero();
    state.set_amplitude(0b10, cplx{0.6, -0.8});
    std::ostringstream os;
    state.dump(os);
    CHECK(os.str() == "2,0.59999999999999998,-0.80000000000000004\n");
}

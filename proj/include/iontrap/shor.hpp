// Factoring circuit for small odd N (default 15): modular exponentiation via
// reversible controlled additions, a coherent QFT, analytic oracles for the
// ideal states, and classical order/factor extraction.
//
// Register layout on the ion chain:
//   qubits [0, exponent_bits)                      register 1 (exponent j)
//   qubits [exponent_bits, exponent_bits + L)      register 2 (y^j mod N)
//   remaining qubits                               work (adder carries etc.)
//
// The controlled multiplier by a = y^(2^k) mod N is a cascade of doubly
// controlled modular constant additions into a clean accumulator held in
// Fourier space (L+1 qubits including one overflow bit), followed by a
// controlled register swap and an uncomputation with a^-1 mod N. One extra
// work qubit serves as the comparison ancilla of the modular reduction.
// Every multiplier restores all work qubits to |0> and carries a checkpoint
// marker on its last gate.

#pragma once

#include "iontrap/circuit.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace iontrap {

struct FactoringInstance {
    int modulus = 15;      // N, odd, >= 3
    int base = 7;          // y, coprime with N
    int exponent_bits = 8; // register-1 width; q = 2^exponent_bits
    int work_count = 6;

    int q() const { return 1 << exponent_bits; }
    int value_bits() const; // L = bits of N
    int n_qubits() const { return exponent_bits + value_bits() + work_count; }
    RegisterLayout layout() const;
    void validate() const;
};

struct MeasurementRecord {
    int c = 0; // measured value of register 1
    double probability = 0.0;
};

enum class Stage { PreFT, PostFT };

struct ModexpOptions {
    bool include_prep = true; // register-1 uniform superposition rotations
    bool optimized = false;   // skip multipliers with a = 1
};

// Modular-exponentiation circuit: prep, register-2 |1> initialization, and
// n_multipliers controlled multipliers (default 2L, i.e. all exponent bits).
Circuit build_modexp_circuit(const FactoringInstance& inst, int n_multipliers = -1,
                             ModexpOptions opts = {});

// Coherent QFT on `bits` qubits [0, bits): Hadamard composites interleaved
// with controlled phases pi/2^k plus final bit-reversal swaps. Matches the
// DFT matrix with entries e^{2 pi i jk / 2^bits} / sqrt(2^bits) up to a
// global phase.
Circuit build_qft_circuit(int bits);

// Analytically constructed reference states (no circuit simulation).
QuantumState ideal_state(const FactoringInstance& inst, Stage stage);

// Closed-form P(c) for a register-1 measurement after the QFT.
std::vector<double> analytic_pc(const FactoringInstance& inst);

// Order r from measured peak locations: gcd of peak spacings when it divides
// q, otherwise continued fractions of c/q; verified by y^r = 1 mod N.
// Empty on inconclusive input (e.g. only c = 0).
std::optional<int> extract_order(std::span<const int> peaks, const FactoringInstance& inst);

// Continued-fraction convergents of c/q, first denominator that verifies.
std::optional<int> order_from_measurement(int c, const FactoringInstance& inst);

// (gcd(y^{r/2} - 1, N), gcd(y^{r/2} + 1, N)); empty when r is odd or the
// gcds are trivial (caller retries with a new base).
std::optional<std::pair<int, int>> factors_from_order(const FactoringInstance& inst, int r);

// Modular helpers (used by the oracles and tests).
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t inv_mod(std::int64_t a, std::int64_t mod);

} // namespace iontrap

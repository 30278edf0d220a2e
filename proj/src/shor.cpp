#include "iontrap/shor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace iontrap {

namespace {

constexpr double kPi = std::numbers::pi;

// Hadamard composite: net -i H (see pulse.hpp).
void emit_h(Circuit& circ, int q) {
    circ.push(Gate::rotation(q, kPi / 4, kPi / 2));
    circ.push(Gate::rotation(q, kPi / 2, 0.0));
}

// diag(1, e^{i alpha}) composite, up to a global phase.
void emit_phase(Circuit& circ, int q, double alpha) {
    circ.push(Gate::rotation(q, kPi / 2, 0.0));
    circ.push(Gate::rotation(q, kPi / 2, alpha / 2));
}

// QFT without the final bit reversal on qubits[0..m) (LSB first): afterwards
// qubit k carries the factor (|0> + e^{2 pi i v / 2^(k+1)} |1>)/sqrt(2).
// The inverse uses the same Hadamard composite (self-inverse up to a global
// phase) with reversed order and negated controlled-phase angles.
void emit_qft_ns(Circuit& circ, std::span<const int> qubits, bool inverse) {
    const int m = int(qubits.size());
    if (!inverse) {
        for (int i = m - 1; i >= 0; --i) {
            emit_h(circ, qubits[i]);
            for (int j = i - 1; j >= 0; --j)
                circ.push(Gate::controlled_phase(qubits[j], qubits[i], kPi / double(1ll << (i - j))));
        }
    } else {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j)
                circ.push(Gate::controlled_phase(qubits[j], qubits[i], -kPi / double(1ll << (i - j))));
            emit_h(circ, qubits[i]);
        }
    }
}

// Phase angle that adds constant c on Fourier-register qubit k; exactly zero
// (gate skipped) when 2^(k+1) divides c.
bool add_angle(std::int64_t c, int k, double* angle) {
    const std::int64_t span = 1ll << (k + 1);
    const std::int64_t rem = ((c % span) + span) % span;
    if (rem == 0)
        return false;
    *angle = 2.0 * kPi * double(rem) / double(span);
    return true;
}

// Add constant c to the Fourier-space register (uncontrolled).
void emit_phi_add(Circuit& circ, std::span<const int> acc, std::int64_t c) {
    for (int k = 0; k < int(acc.size()); ++k) {
        double angle;
        if (add_angle(c, k, &angle))
            emit_phase(circ, acc[k], angle);
    }
}

// Same, controlled on one qubit.
void emit_c_phi_add(Circuit& circ, int ctrl, std::span<const int> acc, std::int64_t c) {
    for (int k = 0; k < int(acc.size()); ++k) {
        double angle;
        if (add_angle(c, k, &angle))
            circ.push(Gate::controlled_phase(ctrl, acc[k], angle));
    }
}

// Doubly-controlled Fourier-space addition of c, controls (e, x). Merged
// form: half-angle phases controlled on x, a CNOT(e,x) conjugation flipping
// their sign on the e != x branch, and half-angle phases controlled on e.
// Net phase on |e,x,t> is t * angle * (x - (x xor e) + e)/2 = t * angle * (e and x).
void emit_cc_phi_add(Circuit& circ, int e, int x, std::span<const int> acc, std::int64_t c) {
    std::vector<std::pair<int, double>> terms;
    for (int k = 0; k < int(acc.size()); ++k) {
        double angle;
        if (add_angle(c, k, &angle))
            terms.emplace_back(acc[k], angle);
    }
    if (terms.empty())
        return;
    for (auto& [t, angle] : terms)
        circ.push(Gate::controlled_phase(x, t, angle / 2));
    circ.push(Gate::cnot(e, x));
    for (auto& [t, angle] : terms)
        circ.push(Gate::controlled_phase(x, t, -angle / 2));
    circ.push(Gate::cnot(e, x));
    for (auto& [t, angle] : terms)
        circ.push(Gate::controlled_phase(e, t, angle / 2));
}

// Doubly-controlled addition of c modulo N on the Fourier-space accumulator
// (value < N on entry; acc has one overflow bit above the value bits).
// h is a clean comparison ancilla, restored to |0>.
void emit_cc_modadd(Circuit& circ, int e, int x, std::span<const int> acc, int h,
                    std::int64_t c, std::int64_t n) {
    const std::int64_t size = 1ll << acc.size();
    const int msb = acc[acc.size() - 1];
    emit_cc_phi_add(circ, e, x, acc, c);
    emit_phi_add(circ, acc, size - n);
    emit_qft_ns(circ, acc, true);
    circ.push(Gate::cnot(msb, h));
    emit_qft_ns(circ, acc, false);
    emit_c_phi_add(circ, h, acc, n);
    emit_cc_phi_add(circ, e, x, acc, size - c);
    emit_qft_ns(circ, acc, true);
    circ.push(Gate::x(msb));
    circ.push(Gate::cnot(msb, h));
    circ.push(Gate::x(msb));
    emit_qft_ns(circ, acc, false);
    emit_cc_phi_add(circ, e, x, acc, c);
}

void emit_fredkin(Circuit& circ, int ctrl, int a, int b) {
    circ.push(Gate::cnot(b, a));
    circ.push(Gate::toffoli(ctrl, a, b));
    circ.push(Gate::cnot(b, a));
}

// Controlled multiplication of register 2 by a (mod N): accumulate a*x into
// the clean accumulator, controlled-swap it with register 2, then uncompute
// the old value with a^-1.
void emit_controlled_multiplier(Circuit& circ, const FactoringInstance& inst, int ctrl,
                                std::int64_t a) {
    const RegisterLayout& lay = inst.layout();
    const int L = inst.value_bits();
    const std::vector<int> acc(lay.work.begin(), lay.work.begin() + L + 1);
    const int h = lay.work[L + 1];
    const std::int64_t n = inst.modulus;
    const std::int64_t a_inv = inv_mod(a, n);

    emit_qft_ns(circ, acc, false);
    for (int i = 0; i < L; ++i)
        emit_cc_modadd(circ, ctrl, lay.register2[i], acc, h, (a << i) % n, n);
    emit_qft_ns(circ, acc, true);

    for (int i = 0; i < L; ++i)
        emit_fredkin(circ, ctrl, lay.register2[i], acc[i]);

    emit_qft_ns(circ, acc, false);
    for (int i = 0; i < L; ++i)
        emit_cc_modadd(circ, ctrl, lay.register2[i], acc, h, n - ((a_inv << i) % n), n);
    emit_qft_ns(circ, acc, true);
}

} // namespace

int FactoringInstance::value_bits() const {
    int bits = 0;
    while ((1 << bits) <= modulus)
        ++bits;
    return bits;
}

RegisterLayout FactoringInstance::layout() const {
    RegisterLayout lay;
    const int L = value_bits();
    for (int i = 0; i < exponent_bits; ++i)
        lay.register1.push_back(i);
    for (int i = 0; i < L; ++i)
        lay.register2.push_back(exponent_bits + i);
    for (int i = 0; i < work_count; ++i)
        lay.work.push_back(exponent_bits + L + i);
    return lay;
}

void FactoringInstance::validate() const {
    if (modulus < 3 || modulus % 2 == 0)
        throw std::invalid_argument("FactoringInstance: modulus must be odd and >= 3");
    if (base < 2 || base >= modulus || std::gcd(base, modulus) != 1)
        throw std::invalid_argument("FactoringInstance: base must be coprime with modulus");
    const std::int64_t qq = 1ll << exponent_bits;
    const std::int64_t n2 = std::int64_t(modulus) * modulus;
    if (qq < n2 || qq >= 2 * n2)
        throw std::invalid_argument("FactoringInstance: q must satisfy N^2 <= q < 2 N^2");
    if (work_count < value_bits() + 2)
        throw std::invalid_argument("FactoringInstance: work budget exceeded (need L+2)");
    if (n_qubits() > 24)
        throw std::invalid_argument("FactoringInstance: too many qubits to simulate");
}

Circuit build_modexp_circuit(const FactoringInstance& inst, int n_multipliers,
                             ModexpOptions opts) {
    inst.validate();
    const int max_mult = 2 * inst.value_bits();
    if (n_multipliers < 0)
        n_multipliers = max_mult;
    if (n_multipliers < 1 || n_multipliers > max_mult)
        throw std::invalid_argument("build_modexp_circuit: multiplier count out of range");
    if (n_multipliers > inst.exponent_bits)
        throw std::invalid_argument("build_modexp_circuit: more multipliers than exponent bits");

    const RegisterLayout lay = inst.layout();
    Circuit circ(inst.n_qubits(), lay);

    if (opts.include_prep)
        for (int q : lay.register1)
            circ.push(Gate::rotation(q, kPi / 4, kPi / 2)); // |0> -> (|0>+|1>)/sqrt(2)

    circ.push(Gate::x(lay.register2[0])); // register 2 := |1>

    for (int k = 0; k < n_multipliers; ++k) {
        const std::int64_t a = pow_mod(inst.base, 1ll << k, inst.modulus);
        if (opts.optimized && a == 1)
            continue;
        emit_controlled_multiplier(circ, inst, lay.register1[k], a);
        circ.mark_checkpoint();
    }
    return circ;
}

Circuit build_qft_circuit(int bits) {
    if (bits < 1)
        throw std::invalid_argument("build_qft_circuit: bits must be >= 1");
    Circuit circ(bits);
    std::vector<int> qubits(bits);
    for (int i = 0; i < bits; ++i)
        qubits[i] = i;
    emit_qft_ns(circ, qubits, false);
    for (int i = 0; i < bits / 2; ++i)
        circ.push(Gate::swap(i, bits - 1 - i));
    return circ;
}

QuantumState ideal_state(const FactoringInstance& inst, Stage stage) {
    inst.validate();
    QuantumState psi(inst.n_qubits());
    psi.zero();
    const int q = inst.q();
    const int eb = inst.exponent_bits;

    if (stage == Stage::PreFT) {
        const double amp = 1.0 / std::sqrt(double(q));
        for (int j = 0; j < q; ++j) {
            const std::uint64_t x = std::uint64_t(pow_mod(inst.base, j, inst.modulus));
            const std::uint64_t bits = std::uint64_t(j) | (x << eb);
            psi.set_amplitude(bits << 1, amp);
        }
        return psi;
    }

    // PostFT: apply the DFT to register 1 in closed form.
    const int xdim = 1 << inst.value_bits();
    std::vector<cplx> a(std::size_t(q) * xdim, cplx{0.0, 0.0});
    for (int j = 0; j < q; ++j) {
        const int x = int(pow_mod(inst.base, j, inst.modulus));
        for (int c = 0; c < q; ++c) {
            const double ang = 2.0 * kPi * double(std::int64_t(j) * c % q) / double(q);
            a[std::size_t(c) * xdim + x] += cplx{std::cos(ang), std::sin(ang)};
        }
    }
    const double scale = 1.0 / double(q);
    for (int c = 0; c < q; ++c)
        for (int x = 0; x < xdim; ++x) {
            const cplx amp = a[std::size_t(c) * xdim + x] * scale;
            if (std::norm(amp) > 0.0) {
                const std::uint64_t bits = std::uint64_t(c) | (std::uint64_t(x) << eb);
                psi.set_amplitude(bits << 1, amp);
            }
        }
    return psi;
}

std::vector<double> analytic_pc(const FactoringInstance& inst) {
    const QuantumState psi = ideal_state(inst, Stage::PostFT);
    const int q = inst.q();
    const int xdim = 1 << inst.value_bits();
    std::vector<double> pc(q, 0.0);
    for (int c = 0; c < q; ++c)
        for (int x = 0; x < xdim; ++x) {
            const std::uint64_t bits = std::uint64_t(c) | (std::uint64_t(x) << inst.exponent_bits);
            pc[c] += std::norm(psi.amplitude(bits << 1));
        }
    return pc;
}

std::optional<int> extract_order(std::span<const int> peaks, const FactoringInstance& inst) {
    std::vector<int> distinct(peaks.begin(), peaks.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int c : distinct)
        if (c < 0 || c >= inst.q())
            throw std::out_of_range("extract_order: peak location out of range");

    if (distinct.size() >= 2) {
        int spacing = 0;
        for (std::size_t i = 1; i < distinct.size(); ++i)
            spacing = std::gcd(spacing, distinct[i] - distinct[i - 1]);
        if (spacing > 0 && inst.q() % spacing == 0) {
            const int r = inst.q() / spacing;
            if (pow_mod(inst.base, r, inst.modulus) == 1)
                return r;
        }
    }
    for (int c : distinct) {
        if (auto r = order_from_measurement(c, inst))
            return r;
    }
    return std::nullopt;
}

std::optional<int> order_from_measurement(int c, const FactoringInstance& inst) {
    if (c <= 0 || c >= inst.q())
        return std::nullopt;
    // Continued-fraction convergents of c / q; denominators are candidate
    // orders (must be < N).
    std::int64_t num = c, den = inst.q();
    std::int64_t k_prev = 1, k_cur = 0; // k_{-2}, k_{-1}
    while (den != 0) {
        const std::int64_t a = num / den;
        const std::int64_t rem = num % den;
        const std::int64_t k_next = a * k_cur + k_prev;
        if (k_next > 1 && k_next < inst.modulus &&
            pow_mod(inst.base, k_next, inst.modulus) == 1)
            return int(k_next);
        k_prev = k_cur;
        k_cur = k_next;
        num = den;
        den = rem;
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> factors_from_order(const FactoringInstance& inst, int r) {
    if (r <= 0)
        throw std::invalid_argument("factors_from_order: order must be positive");
    if (r % 2 != 0)
        return std::nullopt;
    const std::int64_t half = pow_mod(inst.base, r / 2, inst.modulus);
    if (half == inst.modulus - 1) // y^{r/2} = -1 mod N
        return std::nullopt;
    const int p = int(std::gcd(half - 1, std::int64_t(inst.modulus)));
    const int qf = int(std::gcd(half + 1, std::int64_t(inst.modulus)));
    if (p <= 1 || p >= inst.modulus || qf <= 1 || qf >= inst.modulus)
        return std::nullopt;
    return std::make_pair(p, qf);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    if (mod <= 0)
        throw std::invalid_argument("pow_mod: modulus must be positive");
    std::int64_t result = 1 % mod;
    base %= mod;
    if (base < 0)
        base += mod;
    while (exp > 0) {
        if (exp & 1)
            result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t mod) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = mod, new_r = ((a % mod) + mod) % mod;
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
    }
    if (r != 1)
        throw std::invalid_argument("inv_mod: not invertible");
    return t < 0 ? t + mod : t;
}

} // namespace iontrap

#include "iontrap/statevec.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace iontrap {

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24)
        throw std::invalid_argument("QuantumState: qubit count out of range");
    const std::uint64_t dim = 1ull << (n_qubits + 1);
    re_.assign(dim, 0.0);
    im_.assign(dim, 0.0);
    re_[0] = 1.0;
}

void QuantumState::set_amplitude(std::uint64_t index, cplx value) {
    re_[index] = value.real();
    im_[index] = value.imag();
}

void QuantumState::set_basis(std::uint64_t qubit_bits, int cm) {
    if (qubit_bits >= (1ull << n_qubits_))
        throw std::out_of_range("set_basis: qubit bits out of range");
    zero();
    const std::uint64_t index = (qubit_bits << 1) | std::uint64_t(cm & 1);
    re_[index] = 1.0;
}

void QuantumState::zero() {
    std::fill(re_.begin(), re_.end(), 0.0);
    std::fill(im_.begin(), im_.end(), 0.0);
}

void QuantumState::check_ion(int ion) const {
    if (ion < 0 || ion >= n_qubits_)
        throw std::out_of_range("ion index out of range");
}

void QuantumState::apply_resonant(int ion, double theta, double phi) {
    check_ion(ion);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // m01 = -i e^{-i phi} s,  m10 = -i e^{i phi} s
    const double m01r = -s * std::sin(phi), m01i = -s * std::cos(phi);
    const double m10r = s * std::sin(phi), m10i = -s * std::cos(phi);

    const std::uint64_t dim = re_.size();
    const std::uint64_t mask = 1ull << (ion + 1);
    double* __restrict pr = re_.data();
    double* __restrict pi = im_.data();
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
        for (std::uint64_t i = base; i < base + mask; ++i) {
            const std::uint64_t j = i | mask;
            const double a0r = pr[i], a0i = pi[i];
            const double a1r = pr[j], a1i = pi[j];
            pr[i] = c * a0r + m01r * a1r - m01i * a1i;
            pi[i] = c * a0i + m01r * a1i + m01i * a1r;
            pr[j] = m10r * a0r - m10i * a0i + c * a1r;
            pi[j] = m10r * a0i + m10i * a0r + c * a1i;
        }
    }
}

void QuantumState::apply_sideband(int ion, double theta, double phi) {
    check_ion(ion);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double m01r = -s * std::sin(phi), m01i = -s * std::cos(phi);
    const double m10r = s * std::sin(phi), m10i = -s * std::cos(phi);

    const std::uint64_t dim = re_.size();
    const std::uint64_t mask = 1ull << (ion + 1);
    double* __restrict pr = re_.data();
    double* __restrict pi = im_.data();
    // Pairs (|g>|1>, |e>|0>): indices i with cm = 1 and ion bit 0 pair with
    // j = i - 1 + mask.
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
        for (std::uint64_t i = base + 1; i < base + mask; i += 2) {
            const std::uint64_t j = (i - 1) | mask;
            const double a0r = pr[i], a0i = pi[i];
            const double a1r = pr[j], a1i = pi[j];
            pr[i] = c * a0r + m01r * a1r - m01i * a1i;
            pi[i] = c * a0i + m01r * a1i + m01i * a1r;
            pr[j] = m10r * a0r - m10i * a0i + c * a1r;
            pi[j] = m10r * a0i + m10i * a0r + c * a1i;
        }
    }
}

void QuantumState::apply_aux_2pi(int ion) {
    check_ion(ion);
    const std::uint64_t dim = re_.size();
    const std::uint64_t mask = 1ull << (ion + 1);
    double* __restrict pr = re_.data();
    double* __restrict pi = im_.data();
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
        for (std::uint64_t i = base + 1; i < base + mask; i += 2) {
            pr[i] = -pr[i];
            pi[i] = -pi[i];
        }
    }
}

void QuantumState::apply_aux_phase(int ion, double alpha) {
    check_ion(ion);
    const double cr = std::cos(alpha), ci = std::sin(alpha);
    const std::uint64_t dim = re_.size();
    const std::uint64_t mask = 1ull << (ion + 1);
    double* __restrict pr = re_.data();
    double* __restrict pi = im_.data();
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
        for (std::uint64_t i = base + 1; i < base + mask; i += 2) {
            const double ar = pr[i], ai = pi[i];
            pr[i] = cr * ar - ci * ai;
            pi[i] = cr * ai + ci * ar;
        }
    }
}

double QuantumState::project_qubit(int ion, int outcome) {
    if (ion < -1 || ion >= n_qubits_)
        throw std::out_of_range("project_qubit: ion index out of range");
    if (outcome != 0 && outcome != 1)
        throw std::invalid_argument("project_qubit: outcome must be 0 or 1");
    const std::uint64_t mask = (ion == -1) ? 1ull : (1ull << (ion + 1));
    const std::uint64_t want = outcome ? mask : 0ull;

    const std::uint64_t dim = re_.size();
    double p = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & mask) == want)
            p += re_[i] * re_[i] + im_[i] * im_[i];

    if (p < 1e-30) {
        zero();
        return 0.0;
    }
    const double inv = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == want) {
            re_[i] *= inv;
            im_[i] *= inv;
        } else {
            re_[i] = 0.0;
            im_[i] = 0.0;
        }
    }
    return p;
}

std::vector<double> QuantumState::register_distribution(std::span<const int> bit_selection) const {
    if (bit_selection.empty())
        throw std::invalid_argument("register_distribution: empty selection");
    if (bit_selection.size() > 30)
        throw std::invalid_argument("register_distribution: selection too wide");
    std::uint64_t seen = 0;
    for (int q : bit_selection) {
        check_ion(q);
        if (seen & (1ull << q))
            throw std::invalid_argument("register_distribution: duplicate index");
        seen |= 1ull << q;
    }

    std::vector<double> out(1ull << bit_selection.size(), 0.0);
    const std::uint64_t dim = re_.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = re_[i] * re_[i] + im_[i] * im_[i];
        std::uint64_t v = 0;
        for (std::size_t m = 0; m < bit_selection.size(); ++m)
            v |= ((i >> (bit_selection[m] + 1)) & 1ull) << m;
        out[v] += p;
    }
    return out;
}

double QuantumState::norm_sq() const {
    double n = 0.0;
    for (std::size_t i = 0; i < re_.size(); ++i)
        n += re_[i] * re_[i] + im_[i] * im_[i];
    return n;
}

void QuantumState::dump(std::ostream& os) const {
    char buf[96];
    for (std::uint64_t i = 0; i < re_.size(); ++i) {
        const double p = re_[i] * re_[i] + im_[i] * im_[i];
        if (p > 1e-15) {
            std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                          static_cast<unsigned long long>(i), re_[i], im_[i]);
            os << buf;
        }
    }
}

cplx overlap(const QuantumState& a, const QuantumState& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("overlap: dimension mismatch");
    const auto ar = a.re(), ai = a.im(), br = b.re(), bi = b.im();
    double rr = 0.0, ri = 0.0;
    for (std::size_t i = 0; i < ar.size(); ++i) {
        rr += ar[i] * br[i] + ai[i] * bi[i];
        ri += ar[i] * bi[i] - ai[i] * br[i];
    }
    return {rr, ri};
}

} // namespace iontrap

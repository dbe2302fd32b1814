// chain.cpp — chain types, coupling profiles, and dark-state formulas.

#include "qdchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdchain {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::string to_string(SpinChannel channel) {
    return channel == SpinChannel::up ? "up" : "down";
}

ChainSpec::ChainSpec(int n, std::vector<double> energies, SpinChannel channel)
    : n_sites(n), site_energies(std::move(energies)), spin_channel(channel) {
    require(n_sites >= 2, "ChainSpec: n_sites must be >= 2");
    if (site_energies.empty()) site_energies.assign(static_cast<size_t>(n_sites), 0.0);
    require(static_cast<int>(site_energies.size()) == n_sites,
            "ChainSpec: site_energies length must equal n_sites");
    require(all_finite(site_energies), "ChainSpec: site_energies must be finite");
}

CouplingVector::CouplingVector(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), "CouplingVector: needs at least one link");
    for (double t : values_) {
        require(std::isfinite(t), "CouplingVector: values must be finite");
        require(t >= 0.0, "CouplingVector: values must be non-negative");
    }
}

TridiagonalHamiltonian::TridiagonalHamiltonian(std::vector<double> diag,
                                               std::vector<double> offdiag)
    : diagonal(std::move(diag)), offdiagonal(std::move(offdiag)) {
    require(diagonal.size() >= 2, "TridiagonalHamiltonian: dimension must be >= 2");
    require(offdiagonal.size() + 1 == diagonal.size(),
            "TridiagonalHamiltonian: offdiagonal length must be N-1");
    require(all_finite(diagonal) && all_finite(offdiagonal),
            "TridiagonalHamiltonian: entries must be finite");
}

template <typename Scalar>
static std::vector<Scalar> apply_tridiag(const std::vector<double>& d,
                                         const std::vector<double>& e,
                                         const std::vector<Scalar>& v) {
    const size_t n = d.size();
    if (v.size() != n)
        throw std::invalid_argument("TridiagonalHamiltonian::apply: dimension mismatch");
    std::vector<Scalar> out(n);
    for (size_t j = 0; j < n; ++j) {
        Scalar acc = d[j] * v[j];
        if (j > 0) acc += e[j - 1] * v[j - 1];
        if (j + 1 < n) acc += e[j] * v[j + 1];
        out[j] = acc;
    }
    return out;
}

std::vector<double> TridiagonalHamiltonian::apply(const std::vector<double>& v) const {
    return apply_tridiag(diagonal, offdiagonal, v);
}

std::vector<Complex> TridiagonalHamiltonian::apply(const std::vector<Complex>& v) const {
    return apply_tridiag(diagonal, offdiagonal, v);
}

std::vector<std::vector<double>> TridiagonalHamiltonian::to_dense() const {
    const size_t n = diagonal.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (size_t j = 0; j < n; ++j) {
        m[j][j] = diagonal[j];
        if (j + 1 < n) {
            m[j][j + 1] = offdiagonal[j];
            m[j + 1][j] = offdiagonal[j];
        }
    }
    return m;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    require(!amps_.empty(), "StateVector: empty amplitude vector");
    const double n2 = norm_sq();
    require(std::isfinite(n2), "StateVector: amplitudes must be finite");
    require(std::abs(n2 - 1.0) <= 1e-12,
            "StateVector: amplitudes must be unit-norm within 1e-12");
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    double n2 = 0.0;
    for (const Complex& a : amplitudes) n2 += std::norm(a);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::invalid_argument("StateVector::normalized: zero or non-finite input");
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& a : amplitudes) a *= inv;
    StateVector out;
    out.amps_ = std::move(amplitudes);
    return out;
}

StateVector StateVector::site_basis(int n_sites, int site) {
    require(n_sites >= 2, "StateVector::site_basis: n_sites must be >= 2");
    require(site >= 0 && site < n_sites, "StateVector::site_basis: site out of range");
    std::vector<Complex> amps(static_cast<size_t>(n_sites), Complex(0.0, 0.0));
    amps[static_cast<size_t>(site)] = Complex(1.0, 0.0);
    StateVector out;
    out.amps_ = std::move(amps);
    return out;
}

StateVector StateVector::unchecked(std::vector<Complex> amplitudes) {
    StateVector out;
    out.amps_ = std::move(amplitudes);
    return out;
}

double StateVector::norm_sq() const {
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    return n2;
}

double StateVector::population(int site) const {
    return std::norm(amps_.at(static_cast<size_t>(site)));
}

std::vector<double> StateVector::populations() const {
    std::vector<double> p(amps_.size());
    for (size_t j = 0; j < amps_.size(); ++j) p[j] = std::norm(amps_[j]);
    return p;
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    if (bra.size() != ket.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    Complex acc(0.0, 0.0);
    for (int j = 0; j < bra.size(); ++j) acc += std::conj(bra[j]) * ket[j];
    return acc;
}

TridiagonalHamiltonian build_hamiltonian(const ChainSpec& spec,
                                         const CouplingVector& couplings) {
    require(couplings.size() == spec.n_sites - 1,
            "build_hamiltonian: couplings length must be n_sites - 1");
    return TridiagonalHamiltonian(spec.site_energies, couplings.values());
}

CouplingVector uniform_couplings(int n, double t) {
    require(n >= 2, "uniform_couplings: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "uniform_couplings: t must be positive");
    return CouplingVector(std::vector<double>(static_cast<size_t>(n - 1), t));
}

CouplingVector spin_couplings(int n, double t) {
    require(n >= 2, "spin_couplings: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "spin_couplings: t must be positive");
    std::vector<double> values(static_cast<size_t>(n - 1));
    for (int j = 1; j <= n - 1; ++j) {
        // (n-j)*j is a symmetric integer product, so the mirror symmetry
        // values[j] == values[n-j] holds bit-exactly.
        values[static_cast<size_t>(j - 1)] =
            t * std::sqrt(static_cast<double>(n - j) * static_cast<double>(j));
    }
    return CouplingVector(std::move(values));
}

namespace detail {

void fix_global_sign(std::vector<double>& v) {
    double max_abs = 0.0;
    for (double x : v) max_abs = std::max(max_abs, std::abs(x));
    const double threshold = 1e-12 * max_abs;
    for (double x : v) {
        if (std::abs(x) > threshold) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace detail

StateVector cpt_state(const CouplingVector& couplings, int n) {
    require(n >= 3 && n % 2 == 1, "cpt_state: n must be odd and >= 3");
    require(couplings.size() == n - 1, "cpt_state: couplings length must be n - 1");
    const int j_max = (n - 1) / 2;

    // Prefix products of odd-indexed couplings t_1 t_3 ... t_{2m-1} and
    // suffix products of even-indexed couplings t_{2m+2} ... t_{N-1}
    // (1-based link labels as in the Hamiltonian).
    std::vector<double> odd_prefix(static_cast<size_t>(j_max + 1), 1.0);
    for (int m = 1; m <= j_max; ++m)
        odd_prefix[static_cast<size_t>(m)] =
            odd_prefix[static_cast<size_t>(m - 1)] * couplings[2 * m - 2];
    std::vector<double> even_suffix(static_cast<size_t>(j_max + 1), 1.0);
    for (int m = j_max - 1; m >= 0; --m)
        even_suffix[static_cast<size_t>(m)] =
            even_suffix[static_cast<size_t>(m + 1)] * couplings[2 * m + 1];

    std::vector<double> weights(static_cast<size_t>(j_max + 1));
    double norm_sq = 0.0;
    for (int m = 0; m <= j_max; ++m) {
        const double w = (m % 2 == 0 ? 1.0 : -1.0) *
                         odd_prefix[static_cast<size_t>(m)] *
                         even_suffix[static_cast<size_t>(m)];
        weights[static_cast<size_t>(m)] = w;
        norm_sq += w * w;
    }
    if (!(norm_sq > 0.0))
        throw std::invalid_argument(
            "cpt_state: every alternating coupling product vanishes");

    std::vector<double> real_amps(static_cast<size_t>(n), 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int m = 0; m <= j_max; ++m)
        real_amps[static_cast<size_t>(2 * m)] = weights[static_cast<size_t>(m)] * inv;
    detail::fix_global_sign(real_amps);

    std::vector<Complex> amps(real_amps.size());
    for (size_t j = 0; j < real_amps.size(); ++j) amps[j] = Complex(real_amps[j], 0.0);
    return StateVector::unchecked(std::move(amps));
}

StateVector cpt_state_two_family(double t_odd, double t_even, int n) {
    require(n >= 3 && n % 2 == 1, "cpt_state_two_family: n must be odd and >= 3");
    require(std::isfinite(t_odd) && std::isfinite(t_even) && t_odd >= 0.0 && t_even >= 0.0,
            "cpt_state_two_family: couplings must be finite and non-negative");
    if (t_odd == 0.0 && t_even == 0.0)
        throw std::invalid_argument("cpt_state_two_family: both families zero");
    const int j_max = (n - 1) / 2;

    std::vector<double> weights(static_cast<size_t>(j_max + 1));
    double norm_sq = 0.0;
    double odd_pow = 1.0;  // (-t_odd)^m by running product
    for (int m = 0; m <= j_max; ++m) {
        double even_pow = 1.0;  // t_even^(J-m)
        for (int i = 0; i < j_max - m; ++i) even_pow *= t_even;
        const double w = odd_pow * even_pow;
        weights[static_cast<size_t>(m)] = w;
        norm_sq += w * w;
        odd_pow *= -t_odd;
    }
    if (!(norm_sq > 0.0))
        throw std::invalid_argument("cpt_state_two_family: degenerate input");

    std::vector<double> real_amps(static_cast<size_t>(n), 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int m = 0; m <= j_max; ++m)
        real_amps[static_cast<size_t>(2 * m)] = weights[static_cast<size_t>(m)] * inv;
    detail::fix_global_sign(real_amps);

    std::vector<Complex> amps(real_amps.size());
    for (size_t j = 0; j < real_amps.size(); ++j) amps[j] = Complex(real_amps[j], 0.0);
    return StateVector::unchecked(std::move(amps));
}

}  // namespace qdchain

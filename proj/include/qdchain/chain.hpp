// chain.hpp — Domain types for a tunnel-coupled dot chain: chain geometry,
// coupling profiles, the tridiagonal single-electron Hamiltonian, and the
// odd-chain dark (coherent-population-trapping) states.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qdchain {

using Complex = std::complex<double>;

// Sites are indexed 0-based throughout the library; file formats and CLI
// output use 1-based site labels.

enum class SpinChannel { up, down };

std::string to_string(SpinChannel channel);

// Chain geometry and static site energies. All energies are in units of the
// coupling-rate scale; the all-zero default is the interaction picture.
struct ChainSpec {
    int n_sites{0};
    std::vector<double> site_energies;  // length n_sites, finite
    SpinChannel spin_channel{SpinChannel::up};

    // Empty energies mean "all zero". Throws std::invalid_argument on
    // n_sites < 2, wrong energy count, or non-finite entries.
    explicit ChainSpec(int n, std::vector<double> energies = {},
                       SpinChannel channel = SpinChannel::up);
};

// The N-1 instantaneous tunneling rates t_j between sites j and j+1
// (0-based link j connects sites j and j+1). Rates are real and >= 0;
// a zero entry means the link is switched off.
class CouplingVector {
public:
    explicit CouplingVector(std::vector<double> values);

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int link) const { return values_[static_cast<size_t>(link)]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// Real symmetric tridiagonal Hamiltonian: diagonal = site energies,
// offdiagonal = tunneling rates.
struct TridiagonalHamiltonian {
    std::vector<double> diagonal;     // length N
    std::vector<double> offdiagonal;  // length N-1

    TridiagonalHamiltonian(std::vector<double> diag, std::vector<double> offdiag);

    int size() const { return static_cast<int>(diagonal.size()); }

    std::vector<double> apply(const std::vector<double>& v) const;
    std::vector<Complex> apply(const std::vector<Complex>& v) const;

    // Dense realization, symmetric by construction.
    std::vector<std::vector<double>> to_dense() const;
};

// Single-excitation amplitudes A_j, unit norm.
class StateVector {
public:
    // Validates unit norm within 1e-12.
    explicit StateVector(std::vector<Complex> amplitudes);

    // Scales the input to unit norm; rejects (near-)zero vectors.
    static StateVector normalized(std::vector<Complex> amplitudes);

    // Basis state |site> of an n-site chain, site 0-based.
    static StateVector site_basis(int n_sites, int site);

    // Wraps amplitudes produced by norm-preserving evolution without the
    // construction-time norm check (trajectories enforce their own bound).
    static StateVector unchecked(std::vector<Complex> amplitudes);

    int size() const { return static_cast<int>(amps_.size()); }
    const Complex& operator[](int site) const { return amps_[static_cast<size_t>(site)]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    double norm_sq() const;
    double population(int site) const;
    std::vector<double> populations() const;

private:
    StateVector() = default;
    std::vector<Complex> amps_;
};

Complex inner_product(const StateVector& bra, const StateVector& ket);

namespace detail {
// Flip v globally so its first component above noise level is positive.
void fix_global_sign(std::vector<double>& v);
}  // namespace detail

// ----------------------------- constructors ---------------------------------

// Diagonal from the chain spec, offdiagonal from the couplings.
TridiagonalHamiltonian build_hamiltonian(const ChainSpec& spec,
                                         const CouplingVector& couplings);

// All N-1 rates equal to t.
CouplingVector uniform_couplings(int n, double t);

// Spin-model profile t_j = t*sqrt((N-j)*j), 1-based j; mirror-symmetric.
CouplingVector spin_couplings(int n, double t);

// ------------------------------ dark states ---------------------------------

// Zero-energy eigenstate of the odd-N chain with zero site energies. Support
// only on odd sites (1-based); the amplitude on site 2m+1 carries sign (-1)^m
// and the product of couplings t_1..t_{2m-1} (odd) and t_{2m+2}..t_{N-1}
// (even). Global sign fixed so the first nonzero component is positive.
StateVector cpt_state(const CouplingVector& couplings, int n);

// Dark state when all odd links share value t_odd and all even links share
// t_even: amplitude on site 2m+1 proportional to (-t_odd)^m * t_even^(J-m),
// J = (N-1)/2.
StateVector cpt_state_two_family(double t_odd, double t_even, int n);

}  // namespace qdchain

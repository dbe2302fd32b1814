// propagation.cpp — spectral propagator, closed-form amplitude solutions,
// and the midpoint-frozen exponential integrator for pulsed schedules.

#include "qdchain/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace

TimeGrid::TimeGrid(double start_, double end_, int n_steps_)
    : start(start_), end(end_), n_steps(n_steps_) {
    require(std::isfinite(start) && std::isfinite(end), "TimeGrid: bounds must be finite");
    require(end > start, "TimeGrid: end must exceed start");
    require(n_steps >= 1, "TimeGrid: n_steps must be >= 1");
}

double TimeGrid::node(int i) const {
    require(i >= 0 && i <= n_steps, "TimeGrid: node index out of range");
    return i == n_steps ? end : start + i * spacing();
}

Trajectory::Trajectory(TimeGrid grid, std::vector<StateVector> states)
    : grid_(grid), states_(std::move(states)) {
    require(static_cast<int>(states_.size()) == grid_.n_nodes(),
            "Trajectory: one state per grid node required");
    const int n = states_.front().size();
    for (const StateVector& s : states_) {
        require(s.size() == n, "Trajectory: inconsistent state dimensions");
        const double drift = std::abs(s.norm_sq() - 1.0);
        if (!(drift <= 1e-9))
            throw std::runtime_error("Trajectory: state norm drifted beyond 1e-9");
    }
}

double Trajectory::max_norm_drift() const {
    double drift = 0.0;
    for (const StateVector& s : states_)
        drift = std::max(drift, std::abs(s.norm_sq() - 1.0));
    return drift;
}

StateVector evolve_static(const SpectralDecomposition& decomp,
                          const StateVector& psi0, double tau) {
    const int n = decomp.size();
    require(psi0.size() == n, "evolve_static: dimension mismatch");
    require(std::isfinite(tau), "evolve_static: tau must be finite");

    std::vector<Complex> out(static_cast<size_t>(n), Complex(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
        const std::vector<double>& v = decomp.eigenvectors[static_cast<size_t>(k)];
        Complex overlap(0.0, 0.0);
        for (int j = 0; j < n; ++j) overlap += v[static_cast<size_t>(j)] * psi0[j];
        const double phase = -decomp.eigenvalues[static_cast<size_t>(k)] * tau;
        const Complex coeff = overlap * Complex(std::cos(phase), std::sin(phase));
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] += coeff * v[static_cast<size_t>(j)];
    }
    return StateVector::unchecked(std::move(out));
}

StateVector uniform_amplitudes(int n, double t, double tau) {
    require(n >= 2, "uniform_amplitudes: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "uniform_amplitudes: t must be positive");
    require(std::isfinite(tau), "uniform_amplitudes: tau must be finite");

    std::vector<Complex> amps(static_cast<size_t>(n), Complex(0.0, 0.0));
    const double scale = 2.0 / (n + 1);
    for (int k = 1; k <= n; ++k) {
        const double angle = k * kPi / (n + 1);
        const double phase = -2.0 * t * tau * std::cos(angle);
        const Complex factor =
            Complex(std::cos(phase), std::sin(phase)) * (scale * std::sin(angle));
        for (int j = 1; j <= n; ++j)
            amps[static_cast<size_t>(j - 1)] += factor * std::sin(j * angle);
    }
    return StateVector::unchecked(std::move(amps));
}

StateVector binomial_amplitudes(int n, double t, double tau) {
    require(n >= 2, "binomial_amplitudes: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "binomial_amplitudes: t must be positive");
    require(std::isfinite(tau), "binomial_amplitudes: tau must be finite");

    const double s = std::sin(t * tau);
    const double c = std::cos(t * tau);

    std::vector<Complex> amps(static_cast<size_t>(n));
    double binom = 1.0;                       // C(N-1, j-1)
    Complex rising(1.0, 0.0);                 // (-i s)^(j-1)
    std::vector<double> cos_pow(static_cast<size_t>(n), 1.0);
    for (int m = 1; m < n; ++m) cos_pow[static_cast<size_t>(m)] = cos_pow[static_cast<size_t>(m - 1)] * c;

    for (int j = 1; j <= n; ++j) {
        amps[static_cast<size_t>(j - 1)] =
            std::sqrt(binom) * rising * cos_pow[static_cast<size_t>(n - j)];
        binom *= static_cast<double>(n - j) / static_cast<double>(j);
        rising *= Complex(0.0, -s);
    }
    return StateVector::unchecked(std::move(amps));
}

Trajectory evolve_schedule(const ChainSpec& spec, const Schedule& schedule,
                           const StateVector& psi0, const TimeGrid& grid) {
    require(schedule.n_links() == spec.n_sites - 1,
            "evolve_schedule: schedule links must match chain size");
    require(psi0.size() == spec.n_sites, "evolve_schedule: state dimension mismatch");
    const double total = schedule.total_duration();
    const double slack = 1e-9 * std::max(1.0, total);
    require(grid.start >= -slack && grid.end <= total + slack,
            "evolve_schedule: schedule does not span the grid");

    // Pulse edges inside the grid; steps are split there so the midpoint
    // freeze never samples across a declared discontinuity.
    std::vector<double> edges;
    for (double b : schedule.breakpoints())
        if (b > grid.start && b < grid.end) edges.push_back(b);

    std::vector<StateVector> states;
    states.reserve(static_cast<size_t>(grid.n_nodes()));
    states.push_back(psi0);

    std::vector<double> cached_couplings;
    SpectralDecomposition cached_decomp;

    StateVector state = psi0;
    for (int i = 0; i < grid.n_steps; ++i) {
        const double a = grid.node(i);
        const double b = grid.node(i + 1);

        auto next_edge = std::upper_bound(edges.begin(), edges.end(), a);
        double left = a;
        while (left < b) {
            double right = b;
            if (next_edge != edges.end() && *next_edge < b) {
                right = *next_edge;
                ++next_edge;
            }
            const double mid = std::clamp(0.5 * (left + right), 0.0, total);
            const CouplingVector couplings = sample_couplings(schedule, mid);
            if (couplings.values() != cached_couplings) {
                cached_decomp = eigh_tridiagonal(build_hamiltonian(spec, couplings));
                cached_couplings = couplings.values();
            }
            state = evolve_static(cached_decomp, state, right - left);
            left = right;
        }

        for (int j = 0; j < state.size(); ++j)
            if (!std::isfinite(state[j].real()) || !std::isfinite(state[j].imag()))
                throw std::runtime_error("evolve_schedule: state became non-finite");
        states.push_back(state);
    }
    return Trajectory(grid, std::move(states));
}

}  // namespace qdchain

// propagation.hpp — State evolution: spectral propagator for static
// Hamiltonians, the two closed-form amplitude solutions (uniform and
// spin-model couplings), and a norm-preserving integrator for pulsed
// coupling schedules.

#pragma once

#include <vector>

#include "qdchain/chain.hpp"
#include "qdchain/protocols.hpp"
#include "qdchain/spectra.hpp"

namespace qdchain {

// Uniform time grid over [start, end] with n_steps steps (n_steps+1 nodes).
struct TimeGrid {
    double start{0.0};
    double end{0.0};
    int n_steps{0};

    TimeGrid(double start_, double end_, int n_steps_);

    int n_nodes() const { return n_steps + 1; }
    double spacing() const { return (end - start) / n_steps; }
    double node(int i) const;
};

// States sampled on a time grid, one per node, inclusive ends. Every stored
// state is unit-norm within 1e-9.
class Trajectory {
public:
    Trajectory(TimeGrid grid, std::vector<StateVector> states);

    const TimeGrid& grid() const { return grid_; }
    int n_nodes() const { return grid_.n_nodes(); }
    int n_sites() const { return states_.front().size(); }
    double time(int node) const { return grid_.node(node); }
    const StateVector& state(int node) const { return states_[static_cast<size_t>(node)]; }
    const StateVector& final_state() const { return states_.back(); }
    double population(int node, int site) const { return state(node).population(site); }

    // max over nodes of | ||A||^2 - 1 |
    double max_norm_drift() const;

private:
    TimeGrid grid_;
    std::vector<StateVector> states_;
};

// exp(-i H tau) |psi0> through the eigenstate expansion
// sum_k exp(-i lambda_k tau) |psi_k><psi_k|psi0>. Negative tau evolves
// backward.
StateVector evolve_static(const SpectralDecomposition& decomp,
                          const StateVector& psi0, double tau);

// Uniform-chain amplitudes from site 1 at time tau:
// A_j = 2/(N+1) * sum_k exp(-i 2 t tau cos(k pi/(N+1)))
//       * sin(j k pi/(N+1)) * sin(k pi/(N+1)).
StateVector uniform_amplitudes(int n, double t, double tau);

// Spin-model amplitudes from site 1 at time tau:
// A_j = binom(N-1, j-1)^(1/2) * (-i sin(t tau))^(j-1) * cos(t tau)^(N-j),
// so |A_1|^2 = cos^(2(N-1)) and |A_N|^2 = sin^(2(N-1)).
StateVector binomial_amplitudes(int n, double t, double tau);

// Time-ordered propagation of a pulsed-coupling schedule. Each grid step is
// advanced by the exact exponential of the Hamiltonian frozen at the step
// midpoint (second-order in the step for smooth schedules); steps containing
// declared pulse edges are split at the edge so rectangular schedules incur
// no midpoint-sampling error. Each exponential is realized by a tridiagonal
// eigendecomposition, so the stored states are never renormalized.
Trajectory evolve_schedule(const ChainSpec& spec, const Schedule& schedule,
                           const StateVector& psi0, const TimeGrid& grid);

}  // namespace qdchain

// analysis.hpp — Transfer metrics, adiabaticity diagnostics along a
// schedule, revival analysis, and robustness sweeps under frozen coupling
// disorder.

#pragma once

#include <cstdint>
#include <vector>

#include "qdchain/chain.hpp"
#include "qdchain/propagation.hpp"
#include "qdchain/protocols.hpp"

namespace qdchain {

// |A_N|^2 at the final node.
double transfer_fidelity(const Trajectory& traj);

// Largest |A_site|^2 over the grid nodes with time >= tau_min (site 0-based).
// The cutoff excludes the trivial neighborhood of the initial condition.
double revival_max(const Trajectory& traj, int site, double tau_min = 0.5);

// Per-node diagnostics of the instantaneous eigensystem along a schedule.
// The dark state is the eigenvalue nearest zero; a node is ambiguous when
// the next-nearest eigenvalue is within gap_tol of it, and no ratio is
// reported there. d(psi_0)/dtau is a central difference of the sign-aligned
// dark eigenvector, so ratios need both neighbors unambiguous.
struct AdiabaticityNode {
    double tau{0.0};
    int dark_index{-1};               // -1 when ambiguous
    bool ratio_valid{false};
    double worst_ratio{0.0};          // max_k coupling_k / gap_k
    std::vector<double> couplings;    // |<psi_k | d psi_0/dtau>|, k != dark
    std::vector<double> gaps;         // |lambda_k - lambda_0|, k != dark
};

struct AdiabaticityTrace {
    TimeGrid grid;
    std::vector<AdiabaticityNode> nodes;
    double max_ratio{0.0};        // over nodes with a valid ratio
    double min_dark_overlap{1.0}; // between adjacent unambiguous nodes
};

AdiabaticityTrace adiabaticity_trace(const ChainSpec& spec,
                                     const Schedule& schedule,
                                     const TimeGrid& grid,
                                     double gap_tol = 1e-9);

// Statistics of final transfer fidelity under multiplicative pulse-amplitude
// disorder: every pulse amplitude is scaled by (1 + delta) with delta drawn
// uniformly from [-sigma, sigma], frozen for the whole run. Sample s uses
// the SplitMix64 substream (seed, s), so the report is a pure function of
// (seed, sigma, n_samples).
struct RobustnessReport {
    int n_samples{0};
    double sigma{0.0};
    std::uint64_t seed{0};
    std::vector<double> fidelities;  // one per sample
    double mean{0.0};
    double min{0.0};
    double stddev{0.0};  // population standard deviation
};

RobustnessReport robustness_sweep(const ChainSpec& spec,
                                  const Schedule& schedule, double sigma,
                                  int n_samples, std::uint64_t seed,
                                  int n_steps = 2000);

}  // namespace qdchain

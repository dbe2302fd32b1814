// analysis.cpp — transfer metrics, adiabaticity diagnostics, revival
// analysis, and frozen-disorder robustness sweeps.

#include "qdchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qdchain/rng.hpp"
#include "qdchain/spectra.hpp"

namespace qdchain {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

double transfer_fidelity(const Trajectory& traj) {
    // Round-off can push |A_N|^2 a few ulp past 1; fidelity stays in [0, 1].
    return std::clamp(traj.population(traj.n_nodes() - 1, traj.n_sites() - 1), 0.0, 1.0);
}

double revival_max(const Trajectory& traj, int site, double tau_min) {
    require(site >= 0 && site < traj.n_sites(), "revival_max: site out of range");
    double best = 0.0;
    for (int i = 0; i < traj.n_nodes(); ++i)
        if (traj.time(i) >= tau_min) best = std::max(best, traj.population(i, site));
    return best;
}

AdiabaticityTrace adiabaticity_trace(const ChainSpec& spec, const Schedule& schedule,
                                     const TimeGrid& grid, double gap_tol) {
    require(spec.n_sites % 2 == 1,
            "adiabaticity_trace: dark state requires an odd chain");
    require(schedule.n_links() == spec.n_sites - 1,
            "adiabaticity_trace: schedule links must match chain size");
    require(gap_tol > 0.0, "adiabaticity_trace: gap_tol must be positive");
    const double total = schedule.total_duration();
    const double slack = 1e-9 * std::max(1.0, total);
    require(grid.start >= -slack && grid.end <= total + slack,
            "adiabaticity_trace: schedule does not span the grid");

    const int n_nodes = grid.n_nodes();
    const int n = spec.n_sites;

    // Pass 1: instantaneous eigensystems, dark identification, sign-aligned
    // dark vectors.
    std::vector<SpectralDecomposition> decomps(static_cast<size_t>(n_nodes));
    std::vector<int> dark_index(static_cast<size_t>(n_nodes), -1);
    std::vector<std::vector<double>> dark_vec(static_cast<size_t>(n_nodes));

    AdiabaticityTrace trace{grid, {}, 0.0, 1.0};
    trace.nodes.resize(static_cast<size_t>(n_nodes));

    const std::vector<double>* previous_dark = nullptr;
    bool previous_was_adjacent = false;
    for (int i = 0; i < n_nodes; ++i) {
        const double tau = std::clamp(grid.node(i), 0.0, total);
        decomps[static_cast<size_t>(i)] =
            eigh_tridiagonal(build_hamiltonian(spec, sample_couplings(schedule, tau)));
        const auto& lambda = decomps[static_cast<size_t>(i)].eigenvalues;

        int k_dark = 0;
        for (int k = 1; k < n; ++k)
            if (std::abs(lambda[static_cast<size_t>(k)]) <
                std::abs(lambda[static_cast<size_t>(k_dark)]))
                k_dark = k;
        double second = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k)
            if (k != k_dark)
                second = std::min(second, std::abs(lambda[static_cast<size_t>(k)]));
        const bool ambiguous =
            second - std::abs(lambda[static_cast<size_t>(k_dark)]) <= gap_tol;

        AdiabaticityNode& node = trace.nodes[static_cast<size_t>(i)];
        node.tau = grid.node(i);
        if (ambiguous) {
            previous_was_adjacent = false;
            continue;
        }
        dark_index[static_cast<size_t>(i)] = k_dark;
        node.dark_index = k_dark;

        std::vector<double> dark = decomps[static_cast<size_t>(i)].eigenvectors[static_cast<size_t>(k_dark)];
        if (previous_dark != nullptr) {
            const double overlap = dot(dark, *previous_dark);
            if (overlap < 0.0)
                for (double& x : dark) x = -x;
            if (previous_was_adjacent)
                trace.min_dark_overlap = std::min(trace.min_dark_overlap, std::abs(overlap));
        }
        dark_vec[static_cast<size_t>(i)] = std::move(dark);
        previous_dark = &dark_vec[static_cast<size_t>(i)];
        previous_was_adjacent = true;
    }

    // Pass 2: central differences of the dark vector where the stencil is
    // fully unambiguous, then coupling/gap ratios.
    const double h = grid.spacing();
    for (int i = 1; i + 1 < n_nodes; ++i) {
        if (dark_index[static_cast<size_t>(i)] < 0 ||
            dark_index[static_cast<size_t>(i - 1)] < 0 ||
            dark_index[static_cast<size_t>(i + 1)] < 0)
            continue;
        AdiabaticityNode& node = trace.nodes[static_cast<size_t>(i)];
        const auto& minus = dark_vec[static_cast<size_t>(i - 1)];
        const auto& plus = dark_vec[static_cast<size_t>(i + 1)];
        std::vector<double> derivative(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            derivative[static_cast<size_t>(j)] =
                (plus[static_cast<size_t>(j)] - minus[static_cast<size_t>(j)]) / (2.0 * h);

        const auto& decomp = decomps[static_cast<size_t>(i)];
        const int k_dark = dark_index[static_cast<size_t>(i)];
        const double lambda_dark = decomp.eigenvalues[static_cast<size_t>(k_dark)];
        node.couplings.reserve(static_cast<size_t>(n - 1));
        node.gaps.reserve(static_cast<size_t>(n - 1));
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == k_dark) continue;
            const double coupling =
                std::abs(dot(decomp.eigenvectors[static_cast<size_t>(k)], derivative));
            const double gap =
                std::abs(decomp.eigenvalues[static_cast<size_t>(k)] - lambda_dark);
            node.couplings.push_back(coupling);
            node.gaps.push_back(gap);
            worst = std::max(worst, coupling / gap);
        }
        node.worst_ratio = worst;
        node.ratio_valid = true;
        trace.max_ratio = std::max(trace.max_ratio, worst);
    }
    return trace;
}

RobustnessReport robustness_sweep(const ChainSpec& spec, const Schedule& schedule,
                                  double sigma, int n_samples, std::uint64_t seed,
                                  int n_steps) {
    require(sigma >= 0.0 && sigma <= 1.0,
            "robustness_sweep: sigma must lie in [0, 1] so rates stay non-negative");
    require(n_samples >= 1, "robustness_sweep: n_samples must be >= 1");
    require(n_steps >= 1, "robustness_sweep: n_steps must be >= 1");

    const TimeGrid grid(0.0, schedule.total_duration(), n_steps);
    const StateVector psi0 = StateVector::site_basis(spec.n_sites, 0);

    RobustnessReport report;
    report.n_samples = n_samples;
    report.sigma = sigma;
    report.seed = seed;
    report.fidelities.reserve(static_cast<size_t>(n_samples));

    const auto& pulses = schedule.link_pulses();
    for (int sample = 0; sample < n_samples; ++sample) {
        SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(sample));
        // Draw one factor per pulse, links ascending, pulses in insertion
        // order; the disorder stays frozen for the whole run.
        std::vector<std::vector<double>> factors(pulses.size());
        for (size_t link = 0; link < pulses.size(); ++link) {
            factors[link].resize(pulses[link].size());
            for (size_t idx = 0; idx < pulses[link].size(); ++idx)
                factors[link][idx] = 1.0 + rng.uniform(-sigma, sigma);
        }
        const Schedule perturbed =
            schedule.map_amplitudes([&factors](int link, int idx, double amplitude) {
                return amplitude * factors[static_cast<size_t>(link)][static_cast<size_t>(idx)];
            });
        const Trajectory traj = evolve_schedule(spec, perturbed, psi0, grid);
        report.fidelities.push_back(transfer_fidelity(traj));
    }

    double sum = 0.0;
    double minimum = 1.0;
    for (double f : report.fidelities) {
        sum += f;
        minimum = std::min(minimum, f);
    }
    report.mean = sum / n_samples;
    report.min = minimum;
    double var = 0.0;
    for (double f : report.fidelities) var += (f - report.mean) * (f - report.mean);
    report.stddev = std::sqrt(var / n_samples);
    return report;
}

}  // namespace qdchain

// spectra.cpp — analytic spectra and the symmetric tridiagonal eigensolver.

#include "qdchain/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

// Implicit-shift QL sweeps on (d, e); plane rotations are accumulated into
// the row-major n x n matrix q whose columns end up as eigenvectors of the
// corresponding d entries. Classic tqli scheme; at most 30 sweeps per
// eigenvalue, i.e. a 30*N cap overall.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& q, int n) {
    constexpr int kMaxSweeps = 30;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        int sweeps = 0;
        int m = 0;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (sweeps++ == kMaxSweeps)
                    throw std::runtime_error(
                        "eigh_tridiagonal: QL iteration exceeded the sweep cap");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // matrix split: recover and restart sweep
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = q[static_cast<size_t>(k) * n + i + 1];
                        q[static_cast<size_t>(k) * n + i + 1] =
                            s * q[static_cast<size_t>(k) * n + i] + c * f;
                        q[static_cast<size_t>(k) * n + i] =
                            c * q[static_cast<size_t>(k) * n + i] - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void normalize(std::vector<double>& v) {
    const double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
}

// Re-orthonormalize runs of near-degenerate eigenvectors by modified
// Gram-Schmidt so the orthonormality invariant survives clustering.
void orthonormalize_clusters(const std::vector<double>& eigenvalues,
                             std::vector<std::vector<double>>& vectors,
                             double cluster_gap) {
    const int n = static_cast<int>(eigenvalues.size());
    int begin = 0;
    while (begin < n) {
        int end = begin + 1;
        while (end < n && eigenvalues[end] - eigenvalues[end - 1] <= cluster_gap) ++end;
        for (int k = begin; k < end; ++k) {
            for (int p = begin; p < k; ++p) {
                const double proj = dot(vectors[k], vectors[p]);
                for (size_t j = 0; j < vectors[k].size(); ++j)
                    vectors[k][j] -= proj * vectors[p][j];
            }
            normalize(vectors[k]);
        }
        begin = end;
    }
}

void verify_decomposition(const TridiagonalHamiltonian& h,
                          const SpectralDecomposition& decomp, double tol) {
    const int n = decomp.size();
    for (int k = 0; k < n; ++k) {
        const std::vector<double> hv = h.apply(decomp.eigenvectors[k]);
        double residual = 0.0;
        for (int j = 0; j < n; ++j)
            residual = std::max(residual,
                                std::abs(hv[j] - decomp.eigenvalues[k] *
                                                     decomp.eigenvectors[k][j]));
        if (residual > tol)
            throw std::runtime_error("eigh_tridiagonal: residual above tolerance");
    }
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            const double g = dot(decomp.eigenvectors[k], decomp.eigenvectors[l]);
            const double target = (k == l) ? 1.0 : 0.0;
            if (std::abs(g - target) > tol)
                throw std::runtime_error(
                    "eigh_tridiagonal: orthonormality above tolerance");
        }
    }
}

}  // namespace

SpectralDecomposition eigh_tridiagonal(const TridiagonalHamiltonian& h, double tol) {
    require(tol > 0.0, "eigh_tridiagonal: tol must be > 0");
    const int n = h.size();

    std::vector<double> d = h.diagonal;
    std::vector<double> e = h.offdiagonal;
    e.push_back(0.0);
    std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) q[static_cast<size_t>(i) * n + i] = 1.0;

    ql_implicit_shift(d, e, q, n);

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](int a, int b) { return d[static_cast<size_t>(a)] <
                                                 d[static_cast<size_t>(b)]; });

    SpectralDecomposition decomp;
    decomp.eigenvalues.resize(static_cast<size_t>(n));
    decomp.eigenvectors.assign(static_cast<size_t>(n),
                               std::vector<double>(static_cast<size_t>(n)));
    for (int k = 0; k < n; ++k) {
        const int col = order[static_cast<size_t>(k)];
        decomp.eigenvalues[static_cast<size_t>(k)] = d[static_cast<size_t>(col)];
        for (int j = 0; j < n; ++j)
            decomp.eigenvectors[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                q[static_cast<size_t>(j) * n + col];
        normalize(decomp.eigenvectors[static_cast<size_t>(k)]);
    }

    const double scale =
        std::max(std::abs(decomp.eigenvalues.front()), std::abs(decomp.eigenvalues.back()));
    orthonormalize_clusters(decomp.eigenvalues, decomp.eigenvectors, 1e-12 * scale);

    for (auto& v : decomp.eigenvectors) detail::fix_global_sign(v);

    verify_decomposition(h, decomp, tol);
    return decomp;
}

SpectralDecomposition uniform_spectrum(int n, double t) {
    require(n >= 2, "uniform_spectrum: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "uniform_spectrum: t must be positive");

    SpectralDecomposition decomp;
    decomp.eigenvalues.reserve(static_cast<size_t>(n));
    decomp.eigenvectors.reserve(static_cast<size_t>(n));
    const double norm = std::sqrt(2.0 / (n + 1));
    // cos(k pi/(N+1)) decreases in k, so k = N..1 yields ascending order.
    for (int k = n; k >= 1; --k) {
        decomp.eigenvalues.push_back(2.0 * t * std::cos(k * kPi / (n + 1)));
        std::vector<double> v(static_cast<size_t>(n));
        for (int j = 1; j <= n; ++j)
            v[static_cast<size_t>(j - 1)] = norm * std::sin(j * k * kPi / (n + 1));
        decomp.eigenvectors.push_back(std::move(v));
    }
    return decomp;
}

SpectralDecomposition spin_spectrum(int n, double t) {
    require(n >= 2, "spin_spectrum: n must be >= 2");
    require(t > 0.0 && std::isfinite(t), "spin_spectrum: t must be positive");

    const TridiagonalHamiltonian h(std::vector<double>(static_cast<size_t>(n), 0.0),
                                   spin_couplings(n, t).values());
    SpectralDecomposition decomp = eigh_tridiagonal(h);

    // Equally spaced ladder t*(2k - N - 1); keep the exact values after
    // checking the solver agrees with them.
    for (int k = 1; k <= n; ++k) {
        const double exact = t * (2.0 * k - n - 1.0);
        if (std::abs(decomp.eigenvalues[static_cast<size_t>(k - 1)] - exact) >
            1e-8 * std::max(1.0, std::abs(exact)))
            throw std::runtime_error(
                "spin_spectrum: solver disagrees with the analytic ladder");
        decomp.eigenvalues[static_cast<size_t>(k - 1)] = exact;
    }
    return decomp;
}

SpectralDecomposition three_level_eigensystem(double t1, double t2) {
    require(std::isfinite(t1) && std::isfinite(t2),
            "three_level_eigensystem: couplings must be finite");
    if (t1 == 0.0 && t2 == 0.0)
        throw std::invalid_argument("three_level_eigensystem: both couplings zero");

    const double r = std::hypot(t1, t2);
    const double bright_norm = 1.0 / (r * std::sqrt(2.0));

    SpectralDecomposition decomp;
    decomp.eigenvalues = {-r, 0.0, r};
    decomp.eigenvectors = {
        {t1 * bright_norm, -r * bright_norm, t2 * bright_norm},
        {t2 / r, 0.0, -t1 / r},
        {t1 * bright_norm, r * bright_norm, t2 * bright_norm},
    };
    for (auto& v : decomp.eigenvectors) detail::fix_global_sign(v);
    return decomp;
}

}  // namespace qdchain

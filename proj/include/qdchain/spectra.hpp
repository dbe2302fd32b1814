// spectra.hpp — Eigenvalue/eigenvector decompositions of the chain
// Hamiltonian: closed-form spectra for the uniform and spin-model coupling
// profiles, the exactly solvable three-site system, and a general symmetric
// tridiagonal eigensolver.

#pragma once

#include <vector>

#include "qdchain/chain.hpp"

namespace qdchain {

// Full orthonormal decomposition of a real symmetric tridiagonal matrix.
// Eigenvalues ascending; eigenvectors[k] belongs to eigenvalues[k] and has
// its first component above noise level positive.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;  // [k][site]

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Uniform chain t_j = t: eigenvalues 2t*cos(k*pi/(N+1)) and sine-profile
// eigenvectors sqrt(2/(N+1))*sin(j*k*pi/(N+1)), both exact.
SpectralDecomposition uniform_spectrum(int n, double t);

// Spin-model chain t_j = t*sqrt((N-j)*j): equally spaced eigenvalues
// t*(2k-N-1) with uniform gap 2t. Eigenvectors are computed numerically and
// validated against the analytic eigenvalues.
SpectralDecomposition spin_spectrum(int n, double t);

// Three-site closed form: eigenvalues {-r, 0, +r} with r = hypot(t1, t2),
// dark vector (t2, 0, -t1)/r and bright vectors (t1, -lambda, t2)/(r*sqrt(2)).
SpectralDecomposition three_level_eigensystem(double t1, double t2);

// Implicit-shift QL iteration on the tridiagonal form, eigenvectors
// accumulated from the plane rotations. Deterministic; throws
// std::runtime_error if any eigenvalue fails to converge within the sweep
// cap or if the decomposition misses the residual/orthonormality tolerance.
SpectralDecomposition eigh_tridiagonal(const TridiagonalHamiltonian& h,
                                       double tol = 1e-10);

}  // namespace qdchain

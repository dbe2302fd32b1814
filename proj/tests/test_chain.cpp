#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qdchain/chain.hpp"
#include "test_util.hpp"

using namespace qdchain;

TEST_CASE("build_hamiltonian assembles diagonal and offdiagonal") {
    const ChainSpec spec(2);
    const auto h = build_hamiltonian(spec, CouplingVector({1.0}));
    CHECK(h.diagonal == std::vector<double>{0.0, 0.0});
    CHECK(h.offdiagonal == std::vector<double>{1.0});
}

TEST_CASE("build_hamiltonian three-site matrix") {
    const double t1 = 0.7, t2 = 1.3;
    const auto h = build_hamiltonian(ChainSpec(3), CouplingVector({t1, t2}));
    const auto dense = h.to_dense();
    CHECK(dense[0] == std::vector<double>{0.0, t1, 0.0});
    CHECK(dense[1] == std::vector<double>{t1, 0.0, t2});
    CHECK(dense[2] == std::vector<double>{0.0, t2, 0.0});
}

TEST_CASE("build_hamiltonian rejects mismatched coupling count") {
    CHECK_THROWS_AS(build_hamiltonian(ChainSpec(3), CouplingVector({1.0, 1.0, 1.0})),
                    std::invalid_argument);
}

TEST_CASE("materialized Hamiltonian is symmetric for random inputs") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 12);
        std::vector<double> energies(static_cast<size_t>(n));
        for (double& e : energies) e = rng.uniform(-2.0, 2.0);
        const auto h = build_hamiltonian(ChainSpec(n, energies),
                                         CouplingVector(qdtest::random_couplings(rng, n - 1)));
        const auto dense = h.to_dense();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(dense[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                      dense[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    }
}

TEST_CASE("uniform_couplings") {
    CHECK(uniform_couplings(2, 1.0).values() == std::vector<double>{1.0});
    CHECK(uniform_couplings(3, 2.0).values() == std::vector<double>{2.0, 2.0});
    CHECK(uniform_couplings(9, 1.0).size() == 8);
    for (int j = 0; j < 8; ++j) CHECK(uniform_couplings(9, 1.0)[j] == 1.0);
    CHECK_THROWS_AS(uniform_couplings(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_couplings(4, 0.0), std::invalid_argument);
}

TEST_CASE("spin_couplings evaluates t*sqrt((N-j)j)") {
    CHECK(spin_couplings(2, 1.0).values() == std::vector<double>{1.0});

    const auto three = spin_couplings(3, 1.0);
    CHECK(three[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(three[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // Nine sites: profile peaks at the middle links with value sqrt(20).
    const auto nine = spin_couplings(9, 1.0);
    CHECK(nine[3] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
    CHECK(nine[4] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
    for (int j = 0; j < 8; ++j) CHECK(nine[j] <= nine[3]);

    CHECK_THROWS_AS(spin_couplings(1, 1.0), std::invalid_argument);
}

TEST_CASE("spin_couplings mirror symmetry is bit-exact up to n = 64") {
    for (int n = 2; n <= 64; ++n) {
        const auto c = spin_couplings(n, 0.37);
        for (int j = 1; j <= n - 1; ++j) CHECK(c[j - 1] == c[n - j - 1]);
    }
}

TEST_CASE("cpt_state three sites matches the closed form") {
    const auto psi = cpt_state(CouplingVector({0.6, 0.8}), 3);
    CHECK(psi[0].real() == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(psi[1] == Complex(0.0, 0.0));
    CHECK(psi[2].real() == doctest::Approx(-0.6).epsilon(1e-14));

    const auto sym = cpt_state(CouplingVector({1.3, 1.3}), 3);
    CHECK(sym[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sym[2].real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("cpt_state input contract") {
    CHECK_THROWS_AS(cpt_state(CouplingVector({1.0, 1.0, 1.0}), 4), std::invalid_argument);
    // Both alternating products vanish when an odd and an even link are off.
    CHECK_THROWS_AS(cpt_state(CouplingVector({0.0, 0.0, 1.0, 1.0}), 5),
                    std::invalid_argument);
}

TEST_CASE("cpt_state is a null vector of the zero-energy chain") {
    SplitMix64 rng(11);
    for (int n = 3; n <= 15; n += 2) {
        for (int trial = 0; trial < 100; ++trial) {
            const CouplingVector couplings(qdtest::random_couplings(rng, n - 1));
            const auto psi = cpt_state(couplings, n);
            for (int site = 1; site < n; site += 2) CHECK(psi[site] == Complex(0.0, 0.0));
            const auto h = build_hamiltonian(ChainSpec(n), couplings);
            CHECK(qdtest::max_abs_residual(h, psi) <= 1e-12);
            CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("cpt_state_two_family limits and interior point") {
    const auto start = cpt_state_two_family(0.0, 1.0, 5);
    CHECK(start[0] == Complex(1.0, 0.0));
    for (int j = 1; j < 5; ++j) CHECK(start[j] == Complex(0.0, 0.0));

    const auto end = cpt_state_two_family(1.0, 0.0, 5);
    CHECK(std::abs(end[4]) == doctest::Approx(1.0).epsilon(1e-15));
    for (int j = 0; j < 4; ++j) CHECK(end[j] == Complex(0.0, 0.0));

    const auto mid = cpt_state_two_family(1.0, 1.0, 5);
    const double inv = 1.0 / std::sqrt(3.0);
    CHECK(mid[0].real() == doctest::Approx(inv).epsilon(1e-14));
    CHECK(mid[2].real() == doctest::Approx(-inv).epsilon(1e-14));
    CHECK(mid[4].real() == doctest::Approx(inv).epsilon(1e-14));

    CHECK_THROWS_AS(cpt_state_two_family(0.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("cpt_state_two_family agrees with the general formula") {
    SplitMix64 rng(23);
    for (int n = 3; n <= 15; n += 2) {
        for (int trial = 0; trial < 20; ++trial) {
            const double t_odd = rng.uniform(0.2, 2.0);
            const double t_even = rng.uniform(0.2, 2.0);
            std::vector<double> alternating(static_cast<size_t>(n - 1));
            for (int link = 0; link < n - 1; ++link)
                alternating[static_cast<size_t>(link)] = (link % 2 == 0) ? t_odd : t_even;
            const auto direct = cpt_state_two_family(t_odd, t_even, n);
            const auto general = cpt_state(CouplingVector(alternating), n);
            CHECK(qdtest::state_distance(direct, general) <= 1e-14);
        }
    }
}

TEST_CASE("three_level_eigensystem closed form") {
    const auto equal = three_level_eigensystem(1.0, 1.0);
    CHECK(equal.eigenvalues[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(equal.eigenvalues[1] == 0.0);
    CHECK(equal.eigenvalues[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const auto pyth = three_level_eigensystem(3.0, 4.0);
    CHECK(pyth.eigenvalues[0] == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK(pyth.eigenvalues[2] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(pyth.eigenvectors[1][0] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(pyth.eigenvectors[1][1] == 0.0);
    CHECK(pyth.eigenvectors[1][2] == doctest::Approx(-0.6).epsilon(1e-15));

    CHECK_THROWS_AS(three_level_eigensystem(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("three_level_eigensystem orthonormal with tiny residual") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const double t1 = rng.uniform(0.0, 3.0);
        const double t2 = rng.uniform(0.1, 3.0);
        const auto decomp = three_level_eigensystem(t1, t2);
        CHECK(qdtest::max_gram_deviation(decomp) <= 1e-12);
        const auto h = build_hamiltonian(ChainSpec(3), CouplingVector({t1, t2}));
        CHECK(qdtest::eigenpair_residual(h, decomp) <= 1e-12);
    }
}

TEST_CASE("StateVector norm contract") {
    CHECK_THROWS_AS(StateVector({Complex(1.0, 0.0), Complex(0.1, 0.0)}),
                    std::invalid_argument);
    const auto psi = StateVector::normalized({Complex(3.0, 0.0), Complex(4.0, 0.0)});
    CHECK(psi.population(0) == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(psi.population(1) == doctest::Approx(0.64).epsilon(1e-15));
    CHECK_THROWS_AS(StateVector::normalized({Complex(0.0, 0.0)}), std::invalid_argument);
}

// test_matcore.cpp — tensor ops, partial transpose/trace, eigensolvers,
// spectrum matching, Cartesian decomposition.

#include "ence/matcore.hpp"
#include "ence/states.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace ence;
using testutil::max_diff;

TEST_CASE("tensor: identity and diagonal cases") {
    CHECK(max_diff(tensor(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)),
                   CMatrix::Identity(4, 4)) == 0.0);

    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    CMatrix b = 0.5 * CMatrix::Identity(2, 2);
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = 0.5;
    CHECK(max_diff(tensor(a, b), expected) == 0.0);
}

TEST_CASE("tensor: sigma_x x sigma_x corner entry, zero diagonal") {
    const CMatrix sx = testutil::pauli_x();
    const CMatrix t = tensor(sx, sx);
    CHECK(t(0, 3) == Complex(1.0, 0.0));
    for (int i = 0; i < 4; ++i) CHECK(t(i, i) == Complex(0.0, 0.0));
}

TEST_CASE("tensor: mixed product and associativity on random inputs") {
    for (std::uint64_t k = 0; k < 8; ++k) {
        Rng rng(derive_seed(Seed{101}, k));
        const int da = 2 + static_cast<int>(k % 2);
        const CMatrix a = ginibre(da, da, rng), c = ginibre(da, da, rng);
        const CMatrix b = ginibre(3, 3, rng), d = ginibre(3, 3, rng);
        CHECK(max_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
        const CMatrix e = ginibre(2, 2, rng);
        CHECK(max_diff(tensor(tensor(a, b), e), tensor(a, tensor(b, e))) < 1e-12);
    }
}

TEST_CASE("partial_transpose: product state transposes one factor only") {
    const CMatrix sa = testutil::random_hermitian(2, Seed{7});
    const CMatrix sb = testutil::random_hermitian(3, Seed{8});
    const BipartiteDims dims{2, 3};
    CHECK(max_diff(partial_transpose(tensor(sa, sb), dims, Side::B),
                   tensor(sa, sb.transpose())) == 0.0);
    CHECK(max_diff(partial_transpose(tensor(sa, sb), dims, Side::A),
                   tensor(sa.transpose(), sb)) == 0.0);
    // Same spectrum for the product case.
    CHECK(spectra_equal(eig_herm(tensor(sa, sb)).spectrum,
                        eig_herm(partial_transpose(tensor(sa, sb), dims, Side::B)).spectrum,
                        1e-10));
}

TEST_CASE("partial_transpose: bell state spectrum via jacobi oracle") {
    const CMatrix bell = bell_state().mat;
    const CMatrix pt = partial_transpose(bell, BipartiteDims{2, 2}, Side::B);
    const auto oracle_values = oracle::jacobi_eigenvalues(testutil::to_oracle(pt));
    const std::vector<double> frozen{0.5, 0.5, 0.5, -0.5};
    for (int i = 0; i < 4; ++i) {
        CHECK(oracle_values[i] == doctest::Approx(frozen[i]).epsilon(1e-12));
    }
    const auto spectrum = eig_herm(pt).spectrum.real_parts();
    for (int i = 0; i < 4; ++i) {
        CHECK(spectrum[i] == doctest::Approx(frozen[i]).epsilon(1e-12));
    }
}

TEST_CASE("partial_transpose: diagonal states unchanged, involution, trace") {
    CMatrix diag = CMatrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) diag(i, i) = (i + 1) / 21.0;
    const BipartiteDims dims{2, 3};
    CHECK(max_diff(partial_transpose(diag, dims, Side::B), diag) == 0.0);

    for (std::uint64_t k = 0; k < 6; ++k) {
        const CMatrix rho = random_density(6, 6, derive_seed(Seed{55}, k)).mat;
        for (Side side : {Side::A, Side::B}) {
            const CMatrix pt = partial_transpose(rho, dims, side);
            CHECK(max_diff(partial_transpose(pt, dims, side), rho) == 0.0);
            CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
            CHECK(is_hermitian(pt));
        }
    }
}

TEST_CASE("partial_trace: product, maximally mixed, bell reduced states") {
    const CMatrix sa = random_density(2, 2, Seed{11}).mat;
    const CMatrix sb = testutil::random_hermitian(3, Seed{12});
    const BipartiteDims dims{2, 3};
    // tr_B(sa x sb) = tr(sb) sa
    CHECK(max_diff(partial_trace(tensor(sa, sb), dims, Side::B),
                   sb.trace() * sa) < 1e-13);
    // tr_A(I/4) = I/2
    CHECK(max_diff(partial_trace(0.25 * CMatrix::Identity(4, 4), BipartiteDims{2, 2}, Side::A),
                   0.5 * CMatrix::Identity(2, 2)) == 0.0);
    // tr_B(bell) = I/2, against the index-summation oracle
    const CMatrix bell = bell_state().mat;
    const CMatrix reduced = partial_trace(bell, BipartiteDims{2, 2}, Side::B);
    CHECK(max_diff(reduced, testutil::from_oracle(
                                oracle::partial_trace_b(testutil::to_oracle(bell), 2, 2))) == 0.0);
    CHECK(max_diff(reduced, 0.5 * CMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("partial_trace: agrees with the oracle on random states") {
    for (std::uint64_t k = 0; k < 6; ++k) {
        const BipartiteDims dims{3, 4};
        const CMatrix rho = random_density(12, 12, derive_seed(Seed{77}, k)).mat;
        CHECK(max_diff(partial_trace(rho, dims, Side::B),
                       testutil::from_oracle(oracle::partial_trace_b(
                           testutil::to_oracle(rho), 3, 4))) < 1e-14);
        CHECK(max_diff(partial_trace(rho, dims, Side::A),
                       testutil::from_oracle(oracle::partial_trace_a(
                           testutil::to_oracle(rho), 3, 4))) < 1e-14);
        CHECK(std::abs(partial_trace(rho, dims, Side::A).trace() - rho.trace()) < 1e-13);
    }
}

TEST_CASE("partial ops: dimension mismatch throws") {
    const CMatrix rho = CMatrix::Identity(6, 6) / 6.0;
    CHECK_THROWS_AS(partial_transpose(rho, BipartiteDims{2, 2}, Side::B),
                    std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(rho, BipartiteDims{4, 2}, Side::A),
                    std::invalid_argument);
}

TEST_CASE("eig_herm: identity, sigma_x, construct-decompose round trip") {
    const auto id = eig_herm(CMatrix::Identity(5, 5));
    for (const auto& v : id.spectrum.values) CHECK(v == Complex(1.0, 0.0));

    const auto sx = eig_herm(testutil::pauli_x());
    CHECK(sx.spectrum.values[0].real() == doctest::Approx(1.0));
    CHECK(sx.spectrum.values[1].real() == doctest::Approx(-1.0));

    const CMatrix u = random_unitary(3, Seed{21});
    Eigen::Vector3d w(0.5, 0.3, 0.2);
    const CMatrix h = u * w.cast<Complex>().asDiagonal() * u.adjoint();
    const auto sys = eig_herm(h);
    for (int i = 0; i < 3; ++i) {
        CHECK(sys.spectrum.values[i].real() == doctest::Approx(w(i)).epsilon(1e-12));
    }
    // Orthonormal vectors, faithful reconstruction.
    CHECK(is_unitary(sys.right_vectors, 1e-12));
    CMatrix d = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) d(i, i) = sys.spectrum.values[i];
    CHECK(max_diff(sys.right_vectors * d * sys.right_vectors.adjoint(), h) < 1e-12);
}

TEST_CASE("eig_herm: reconstruction residual on random inputs up to dim 16") {
    for (int d : {2, 5, 9, 16}) {
        const CMatrix h = testutil::random_hermitian(d, Seed{static_cast<std::uint64_t>(d)});
        const auto sys = eig_herm(h);
        CMatrix diag = CMatrix::Zero(d, d);
        for (int i = 0; i < d; ++i) diag(i, i) = sys.spectrum.values[i];
        const double residual =
            (sys.right_vectors * diag * sys.right_vectors.adjoint() - h).norm();
        CHECK(residual <= 1e-9 * h.norm());
        // Matches the Jacobi oracle.
        const auto oracle_values = oracle::jacobi_eigenvalues(testutil::to_oracle(h));
        for (int i = 0; i < d; ++i) {
            CHECK(sys.spectrum.values[i].real() ==
                  doctest::Approx(oracle_values[static_cast<std::size_t>(i)]).epsilon(1e-10));
        }
    }
}

TEST_CASE("eig system: left vectors, when present, are biorthogonal") {
    // A diagonalizable non-normal matrix: right vectors are the columns of S,
    // left vectors the rows of S^-1 (conjugated), so L^dag R = I.
    const CMatrix s = testutil::random_invertible(3, Seed{99});
    EigSystem sys;
    sys.right_vectors = s;
    sys.left_vectors = CMatrix(s.inverse().adjoint());
    CHECK(max_diff(sys.left_vectors->adjoint() * sys.right_vectors,
                   CMatrix::Identity(3, 3)) < 1e-10);
}

TEST_CASE("eig_herm: rejects non-Hermitian input") {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(eig_herm(m), std::invalid_argument);
}

TEST_CASE("eig_general: nilpotent, rotation generator, similarity round trip") {
    CMatrix nilpotent(2, 2);
    nilpotent << 0.0, 1.0, 0.0, 0.0;
    for (const auto& v : eig_general(nilpotent).values) {
        CHECK(std::abs(v) < 1e-12);
    }

    CMatrix rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    const auto spectrum = eig_general(rot);
    CHECK(std::abs(spectrum.values[0] - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(spectrum.values[1] - Complex(0.0, -1.0)) < 1e-12);

    const CMatrix s = testutil::random_invertible(2, Seed{31});
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.6;
    d(1, 1) = 0.4;
    const CMatrix m = s * d * s.inverse();
    const auto round_trip = eig_general(m);
    CHECK(round_trip.values[0].real() == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(round_trip.values[1].real() == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("eig_general agrees with eig_herm on Hermitian inputs") {
    for (int d : {2, 4, 8}) {
        const CMatrix h = testutil::random_hermitian(d, Seed{200 + static_cast<std::uint64_t>(d)});
        CHECK(spectra_equal(eig_general(h), eig_herm(h).spectrum, 1e-8));
    }
}

TEST_CASE("spectra_equal: permutations, separations, unitary invariance") {
    using testutil::spectrum_of;
    CHECK(spectra_equal(spectrum_of({1.0, 0.0, 0.0}), spectrum_of({0.0, 1.0, 0.0}), 1e-8));
    const double tolerance = 1e-8;
    CHECK_FALSE(spectra_equal(spectrum_of({0.0, 0.0}),
                              spectrum_of({0.0, 10.0 * tolerance}), tolerance));
    CHECK_THROWS_AS(spectra_equal(spectrum_of({1.0}), spectrum_of({1.0, 0.0})),
                    std::invalid_argument);

    for (std::uint64_t k = 0; k < 5; ++k) {
        const CMatrix rho = random_density(5, 5, derive_seed(Seed{41}, k)).mat;
        const CMatrix u = random_unitary(5, derive_seed(Seed{42}, k));
        CHECK(spectra_equal(eig_herm(rho).spectrum,
                            eig_herm(u * rho * u.adjoint()).spectrum));
    }
}

TEST_CASE("spectra_equal: symmetric, reflexive, sort-invariant") {
    using testutil::spectrum_of;
    const auto s1 = spectrum_of({Complex(0.3, 0.1), Complex(0.3, -0.1), 0.4});
    const auto s2 = spectrum_of({0.4 + 4e-9, Complex(0.3, -0.1), Complex(0.3, 0.1)});
    CHECK(spectra_equal(s1, s1));
    CHECK(spectra_equal(s1, s2) == spectra_equal(s2, s1));
    CHECK(spectra_equal(s1, s2));
}

TEST_CASE("spectra_equal: assignment fallback handles near-tie misordering") {
    using testutil::spectrum_of;
    // Canonical order pairs the distant values index-wise; only the optimal
    // assignment finds the crossing match.
    const auto s1 = spectrum_of({Complex(1.0, -0.5), Complex(1.0 - 1e-9, 0.5)});
    const auto s2 = spectrum_of({Complex(1.0, 0.5), Complex(1.0 - 1e-9, -0.5)});
    CHECK(spectra_equal(s1, s2, 1e-8));
    CHECK(match_distance(s1, s2) == doctest::Approx(1e-9).epsilon(1e-3));
}

TEST_CASE("spectrum of a tensor product is the product multiset") {
    const CMatrix a = testutil::random_hermitian(2, Seed{61});
    const CMatrix b = testutil::random_hermitian(3, Seed{62});
    const auto ea = eig_herm(a).spectrum;
    const auto eb = eig_herm(b).spectrum;
    std::vector<Complex> products;
    for (const auto& x : ea.values)
        for (const auto& y : eb.values) products.push_back(x * y);
    CHECK(spectra_equal(eig_herm(tensor(a, b)).spectrum,
                        make_spectrum(products), 1e-9));
}

TEST_CASE("match_distance: exact values on known pairs") {
    using testutil::spectrum_of;
    CHECK(match_distance(spectrum_of({1.0, 0.0}), spectrum_of({0.0, 1.0})) == 0.0);
    CHECK(match_distance(spectrum_of({0.0, 0.0}), spectrum_of({0.0, 0.1})) ==
          doctest::Approx(0.1));
    // Bottleneck pairing, not greedy-by-sort: {0, 1} vs {0.4, 0.6}.
    CHECK(match_distance(spectrum_of({1.0, 0.0}), spectrum_of({0.6, 0.4})) ==
          doctest::Approx(0.4));
}

TEST_CASE("cartesian_decompose: hermitian, anti-hermitian, reconstruction") {
    const CMatrix h = testutil::random_hermitian(3, Seed{71});
    const auto [h1, h2] = cartesian_decompose(h);
    CHECK(max_diff(h1, h) < 1e-15);
    CHECK(max_abs(h2) < 1e-15);

    const auto [g1, g2] = cartesian_decompose(Complex(0.0, 1.0) * h);
    CHECK(max_abs(g1) < 1e-15);
    CHECK(max_diff(g2, h) < 1e-15);

    Rng rng(Seed{72});
    const CMatrix m = ginibre(4, 4, rng);
    const auto [p1, p2] = cartesian_decompose(m);
    CHECK(is_hermitian(p1, 1e-14));
    CHECK(is_hermitian(p2, 1e-14));
    CHECK(max_diff(p1 + Complex(0.0, 1.0) * p2, m) < 1e-15);
}

TEST_CASE("density validation: rejects non-hermitian, bad trace, negative") {
    CMatrix ok = 0.5 * CMatrix::Identity(2, 2);
    CHECK_NOTHROW(DensityMatrix{ok});

    CMatrix non_herm = ok;
    non_herm(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix{non_herm}, std::invalid_argument);

    CHECK_THROWS_AS(DensityMatrix{CMatrix::Identity(2, 2)}, std::invalid_argument);

    CMatrix indefinite = CMatrix::Zero(2, 2);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{indefinite}, std::invalid_argument);
}

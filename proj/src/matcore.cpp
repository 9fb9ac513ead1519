// matcore.cpp — implementation of the dense complex linear algebra core.

#include "ence/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ence {

namespace {

// Canonical order: descending real part, ties by descending imaginary part.
bool canonical_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream os;
        os << what << ": matrix must be square with dim >= 1, got "
           << m.rows() << "x" << m.cols();
        throw std::invalid_argument(os.str());
    }
}

void require_bipartite(const CMatrix& rho, BipartiteDims dims, const char* what) {
    require_square(rho, what);
    if (dims.d_a < 1 || dims.d_b < 1) {
        throw std::invalid_argument(std::string(what) + ": subsystem dims must be >= 1");
    }
    if (rho.rows() != dims.dim()) {
        std::ostringstream os;
        os << what << ": matrix dim " << rho.rows() << " != d_a*d_b = " << dims.dim();
        throw std::invalid_argument(os.str());
    }
}

// Kuhn augmenting-path bipartite matching over edges allowed[i][j].
// Returns true iff a perfect matching exists.
bool has_perfect_matching(const std::vector<std::vector<bool>>& allowed) {
    const int n = static_cast<int>(allowed.size());
    std::vector<int> match_of(n, -1);  // right vertex -> left vertex

    std::vector<char> visited(n);
    auto try_augment = [&](auto&& self, int left) -> bool {
        for (int right = 0; right < n; ++right) {
            if (!allowed[left][right] || visited[right]) continue;
            visited[right] = 1;
            if (match_of[right] < 0 || self(self, match_of[right])) {
                match_of[right] = left;
                return true;
            }
        }
        return false;
    };

    for (int left = 0; left < n; ++left) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(try_augment, left)) return false;
    }
    return true;
}

bool matchable_within(const Spectrum& s1, const Spectrum& s2, double threshold) {
    const int n = s1.size();
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            allowed[i][j] = std::abs(s1.values[i] - s2.values[j]) <= threshold;
    return has_perfect_matching(allowed);
}

}  // namespace

std::vector<double> Spectrum::real_parts() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(),
                   [](const Complex& z) { return z.real(); });
    return out;
}

Spectrum make_spectrum(std::vector<Complex> values) {
    std::sort(values.begin(), values.end(), canonical_less);
    return Spectrum{std::move(values)};
}

DensityMatrix::DensityMatrix(CMatrix m) : mat(std::move(m)) {
    validate_density(mat);
}

// ------------------------------ Basic checks -------------------------------

double max_abs(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

bool is_hermitian(const CMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.adjoint()) <= tolerance * scale;
}

bool is_unitary(const CMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    const CMatrix gram = m.adjoint() * m;
    return max_abs(gram - CMatrix::Identity(m.rows(), m.cols())) <= tolerance;
}

void validate_density(const CMatrix& m) {
    require_square(m, "validate_density");
    if (!all_finite(m)) {
        throw std::invalid_argument("validate_density: non-finite entries");
    }
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.adjoint()) > tol::herm * scale) {
        throw std::invalid_argument("validate_density: matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol::trace * scale) {
        std::ostringstream os;
        os << "validate_density: trace " << m.trace() << " != 1";
        throw std::invalid_argument(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("validate_density: eigensolver failed");
    }
    if (solver.eigenvalues().minCoeff() < -tol::psd) {
        std::ostringstream os;
        os << "validate_density: not positive semidefinite, min eigenvalue "
           << solver.eigenvalues().minCoeff();
        throw std::invalid_argument(os.str());
    }
}

double condition_number(const CMatrix& m) {
    require_square(m, "condition_number");
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

// ------------------------------- Operations --------------------------------

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    require_square(a, "tensor");
    require_square(b, "tensor");
    const int da = static_cast<int>(a.rows());
    const int db = static_cast<int>(b.rows());
    CMatrix out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a(i, j) * b;
    return out;
}

CMatrix partial_transpose(const CMatrix& rho, BipartiteDims dims, Side side) {
    require_bipartite(rho, dims, "partial_transpose");
    const int da = dims.d_a;
    const int db = dims.d_b;
    CMatrix out(rho.rows(), rho.cols());
    if (side == Side::B) {
        // Each A-indexed block transposed in place.
        for (int i = 0; i < da; ++i)
            for (int ip = 0; ip < da; ++ip)
                out.block(i * db, ip * db, db, db) =
                    rho.block(i * db, ip * db, db, db).transpose();
    } else {
        // A indices swapped, blocks untouched.
        for (int i = 0; i < da; ++i)
            for (int ip = 0; ip < da; ++ip)
                out.block(i * db, ip * db, db, db) =
                    rho.block(ip * db, i * db, db, db);
    }
    return out;
}

CMatrix partial_trace(const CMatrix& rho, BipartiteDims dims, Side traced_out) {
    require_bipartite(rho, dims, "partial_trace");
    const int da = dims.d_a;
    const int db = dims.d_b;
    if (traced_out == Side::B) {
        CMatrix out = CMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int ip = 0; ip < da; ++ip)
                out(i, ip) = rho.block(i * db, ip * db, db, db).trace();
        return out;
    }
    CMatrix out = CMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i)
        out += rho.block(i * db, i * db, db, db);
    return out;
}

EigSystem eig_herm(const CMatrix& h) {
    require_square(h, "eig_herm");
    if (!is_hermitian(h)) {
        throw std::invalid_argument("eig_herm: input is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_herm: eigensolver failed to converge");
    }
    const int n = static_cast<int>(h.rows());
    // Eigen returns ascending order; flip to the canonical descending order.
    std::vector<Complex> values(n);
    CMatrix vectors(n, n);
    for (int k = 0; k < n; ++k) {
        values[k] = Complex(solver.eigenvalues()(n - 1 - k), 0.0);
        vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return EigSystem{Spectrum{std::move(values)}, std::move(vectors), std::nullopt};
}

Spectrum eig_general(const CMatrix& m) {
    require_square(m, "eig_general");
    Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_general: eigensolver failed to converge");
    }
    std::vector<Complex> values(solver.eigenvalues().data(),
                                solver.eigenvalues().data() + m.rows());
    return make_spectrum(std::move(values));
}

bool spectra_equal(const Spectrum& s1, const Spectrum& s2, double tolerance) {
    if (s1.size() != s2.size()) {
        throw std::invalid_argument("spectra_equal: spectra lengths differ");
    }
    // Greedy pass: the canonical orders usually line up.
    bool greedy_ok = true;
    for (int i = 0; i < s1.size(); ++i) {
        if (std::abs(s1.values[i] - s2.values[i]) > tolerance) {
            greedy_ok = false;
            break;
        }
    }
    if (greedy_ok) return true;
    // Optimal assignment fallback for near-tie misorderings.
    return matchable_within(s1, s2, tolerance);
}

double match_distance(const Spectrum& s1, const Spectrum& s2) {
    if (s1.size() != s2.size()) {
        throw std::invalid_argument("match_distance: spectra lengths differ");
    }
    const int n = s1.size();
    if (n == 0) return 0.0;
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            distances.push_back(std::abs(s1.values[i] - s2.values[j]));
    std::sort(distances.begin(), distances.end());
    distances.erase(std::unique(distances.begin(), distances.end()), distances.end());
    // Smallest threshold admitting a perfect matching.
    int lo = 0;
    int hi = static_cast<int>(distances.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (matchable_within(s1, s2, distances[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return distances[lo];
}

std::pair<CMatrix, CMatrix> cartesian_decompose(const CMatrix& m) {
    require_square(m, "cartesian_decompose");
    const CMatrix h1 = 0.5 * (m + m.adjoint());
    const CMatrix h2 = Complex(0.0, -0.5) * (m - m.adjoint());
    return {h1, h2};
}

}  // namespace ence

// states.cpp — state family constructors and seeded ensembles.

#include "ence/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ence {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Dirichlet(1): normalized i.i.d. exponentials.
std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform());
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

double max_commutator_norm(const std::vector<CMatrix>& mats) {
    double worst = 0.0;
    for (std::size_t p = 0; p < mats.size(); ++p)
        for (std::size_t q = p + 1; q < mats.size(); ++q)
            worst = std::max(worst, max_abs(mats[p] * mats[q] - mats[q] * mats[p]));
    return worst;
}

}  // namespace

Seed derive_seed(Seed base, std::uint64_t counter) {
    return Seed{splitmix64(base.value + counter * 0x9e3779b97f4a7c15ULL)};
}

CMatrix ginibre(int rows, int cols, Rng& rng) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("ginibre: dimensions must be >= 1");
    }
    CMatrix g(rows, cols);
    // Column-major fill keeps the draw order independent of expression use.
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            g(i, j) = rng.complex_gaussian();
    return g;
}

// ------------------------------ State families -----------------------------

DensityMatrix pcc_state(const PccSpec& spec) {
    const int da = static_cast<int>(spec.weights.rows());
    const int db = static_cast<int>(spec.weights.cols());
    if (da < 1 || db < 1) {
        throw std::invalid_argument("pcc_state: weights must be d_a x d_b with d >= 1");
    }
    if (spec.basis_a.rows() != da || spec.basis_b.rows() != db) {
        throw std::invalid_argument("pcc_state: basis dims do not match weights");
    }
    if (spec.weights.minCoeff() < -tol::psd) {
        throw std::invalid_argument("pcc_state: negative weight");
    }
    if (std::abs(spec.weights.sum() - 1.0) > tol::trace) {
        std::ostringstream os;
        os << "pcc_state: weights sum to " << spec.weights.sum() << ", expected 1";
        throw std::invalid_argument(os.str());
    }
    if (!is_unitary(spec.basis_a) || !is_unitary(spec.basis_b)) {
        throw std::invalid_argument("pcc_state: bases must be unitary");
    }
    CMatrix rho = CMatrix::Zero(da * db, da * db);
    for (int i = 0; i < da; ++i) {
        const CMatrix proj_a = spec.basis_a.col(i) * spec.basis_a.col(i).adjoint();
        for (int j = 0; j < db; ++j) {
            const CMatrix proj_b = spec.basis_b.col(j) * spec.basis_b.col(j).adjoint();
            rho += spec.weights(i, j) * tensor(proj_a, proj_b);
        }
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix onewcc_state(const OnewccSpec& spec) {
    const int db = static_cast<int>(spec.basis_b.rows());
    if (db < 1 || spec.basis_b.cols() != db) {
        throw std::invalid_argument("onewcc_state: basis_b must be square");
    }
    if (static_cast<int>(spec.sigmas.size()) != db) {
        throw std::invalid_argument("onewcc_state: need one sigma block per basis_b column");
    }
    if (!is_unitary(spec.basis_b)) {
        throw std::invalid_argument("onewcc_state: basis_b must be unitary");
    }
    const int da = static_cast<int>(spec.sigmas.front().rows());
    double trace_sum = 0.0;
    for (const auto& sigma : spec.sigmas) {
        if (sigma.rows() != da || sigma.cols() != da) {
            throw std::invalid_argument("onewcc_state: sigma blocks must share one square dim");
        }
        if (!is_hermitian(sigma)) {
            throw std::invalid_argument("onewcc_state: sigma block not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sigma, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -tol::psd) {
            throw std::invalid_argument("onewcc_state: sigma block not PSD");
        }
        trace_sum += sigma.trace().real();
    }
    if (std::abs(trace_sum - 1.0) > tol::trace) {
        std::ostringstream os;
        os << "onewcc_state: sigma traces sum to " << trace_sum << ", expected 1";
        throw std::invalid_argument(os.str());
    }
    CMatrix rho = CMatrix::Zero(da * db, da * db);
    for (int j = 0; j < db; ++j) {
        const CMatrix proj_b = spec.basis_b.col(j) * spec.basis_b.col(j).adjoint();
        rho += tensor(spec.sigmas[j], proj_b);
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix bell_state() {
    CMatrix rho = CMatrix::Zero(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return DensityMatrix(std::move(rho));
}

DensityMatrix rho_p(double p, const DensityMatrix& rho_npt) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "rho_p: p must lie in (0, 1], got " << p;
        throw std::invalid_argument(os.str());
    }
    const int d = rho_npt.dim();
    CMatrix mixed = (1.0 - p) / d * CMatrix::Identity(d, d) + p * rho_npt.mat;
    return DensityMatrix(std::move(mixed));
}

DensityMatrix random_density(int d, int rank, Seed seed) {
    if (d < 1 || rank < 1 || rank > d) {
        std::ostringstream os;
        os << "random_density: need 1 <= rank <= d, got rank=" << rank << " d=" << d;
        throw std::invalid_argument(os.str());
    }
    Rng rng(seed);
    const CMatrix g = ginibre(d, rank, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

CMatrix random_unitary(int d, Seed seed) {
    if (d < 1) {
        throw std::invalid_argument("random_unitary: d must be >= 1");
    }
    Rng rng(seed);
    const CMatrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix: without it the QR factorization is not Haar-distributed.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
}

// --------------------------- Random spec builders --------------------------

PccSpec random_pcc_spec(int d_a, int d_b, Seed seed) {
    if (d_a < 1 || d_b < 1) {
        throw std::invalid_argument("random_pcc_spec: dims must be >= 1");
    }
    Rng rng(derive_seed(seed, 0));
    const std::vector<double> w = random_simplex(d_a * d_b, rng);
    Eigen::MatrixXd weights(d_a, d_b);
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_b; ++j)
            weights(i, j) = w[static_cast<std::size_t>(i) * d_b + j];
    return PccSpec{std::move(weights),
                   random_unitary(d_a, derive_seed(seed, 1)),
                   random_unitary(d_b, derive_seed(seed, 2))};
}

OnewccSpec random_onewcc_spec(int d_a, int d_b, Seed seed, double min_noncommute) {
    if (d_a < 1 || d_b < 1) {
        throw std::invalid_argument("random_onewcc_spec: dims must be >= 1");
    }
    if (min_noncommute > 0.0 && (d_a < 2 || d_b < 2)) {
        throw std::invalid_argument(
            "random_onewcc_spec: non-commuting blocks need d_a >= 2 and d_b >= 2");
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        const Seed s = derive_seed(seed, attempt);
        Rng rng(derive_seed(s, 0));
        const std::vector<double> traces = random_simplex(d_b, rng);
        std::vector<CMatrix> sigmas;
        sigmas.reserve(d_b);
        for (int j = 0; j < d_b; ++j) {
            const CMatrix g = ginibre(d_a, d_a, rng);
            CMatrix sigma = g * g.adjoint();
            sigma *= traces[j] / sigma.trace().real();
            sigmas.push_back(std::move(sigma));
        }
        if (min_noncommute > 0.0 && max_commutator_norm(sigmas) < min_noncommute) {
            continue;
        }
        return OnewccSpec{std::move(sigmas), random_unitary(d_b, derive_seed(s, 1))};
    }
}

}  // namespace ence

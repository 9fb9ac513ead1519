// preserver.cpp — EP checks, Kronecker-rank-1 structure recovery, and the
// two-branch verification of partial application.

#include "ence/preserver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ence {

namespace {

// 50% full rank, 25% rank 1, 25% rank ceil(d/2); low-rank states stress
// degenerate-eigenvalue matching.
DensityMatrix sample_density_mix(int d, Seed seed, std::uint64_t index) {
    int rank = d;
    switch (index % 4) {
        case 2: rank = 1; break;
        case 3: rank = (d + 1) / 2; break;
        default: break;
    }
    return random_density(d, rank, derive_seed(seed, index));
}

struct BranchFit {
    bool accepted{false};
    CMatrix s;          // gauge-fixed when accepted
    double residual{0.0};
};

// Van Loan-Pitsianis rearrangement: R[(i*d + j), (k*d + l)] = M[(i*d + k),
// (j*d + l)], so M = X (x) Y becomes the rank-1 matrix vecrow(X) vecrow(Y)^T.
CMatrix rearrange(const CMatrix& m, int d) {
    CMatrix r(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    r(i * d + j, k * d + l) = m(i * d + k, j * d + l);
    return r;
}

CMatrix devec_rowmajor(const CVector& v, int d) {
    CMatrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i, j) = v(i * d + j);
    return out;
}

// Fix the scalar gauge: |det S| = 1, first nonzero entry real-positive.
CMatrix fix_gauge(CMatrix s) {
    const int d = static_cast<int>(s.rows());
    const double det_mod = std::abs(s.determinant());
    s /= std::pow(det_mod, 1.0 / d);
    const double threshold = 1e-12 * std::max(1.0, max_abs(s));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Complex entry = s(i, j);
            if (std::abs(entry) > threshold) {
                s *= std::conj(entry) / std::abs(entry);
                return s;
            }
        }
    }
    return s;
}

// Attempts to factor m as S^T (x) S^{-1}. The scale of the dominant singular
// triplet cancels in S^T (x) S^{-1}, so no scalar calibration of S is needed
// beyond the gauge fix.
BranchFit fit_conjugation_form(const CMatrix& m, int d, double tolerance) {
    BranchFit fit;
    if (d == 1) {
        fit.s = CMatrix::Identity(1, 1);
        fit.residual = std::abs(m(0, 0) - 1.0) / std::max(1e-300, std::abs(m(0, 0)));
        fit.accepted = fit.residual <= tolerance;
        return fit;
    }
    const CMatrix r = rearrange(m, d);
    Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0) {
        fit.residual = 1.0;
        return fit;
    }
    const double rank_gap = sv(1) / sv(0);
    fit.residual = rank_gap;
    if (rank_gap > tolerance) return fit;

    const double scale = std::sqrt(sv(0));
    const CMatrix x = scale * devec_rowmajor(svd.matrixU().col(0), d);
    const CMatrix y = scale * devec_rowmajor(svd.matrixV().col(0).conjugate(), d);

    CMatrix s_raw = x.transpose();
    const double cond = condition_number(s_raw);
    if (!(cond <= kMaxCondition)) return fit;

    const CMatrix s_inv = s_raw.partialPivLu().solve(CMatrix::Identity(d, d));
    // Guard: the second factor must be proportional to S^{-1}.
    const Complex alpha = (s_inv.conjugate().cwiseProduct(y)).sum() / s_inv.squaredNorm();
    const double inv_mismatch = (y - alpha * s_inv).norm() / y.norm();
    if (inv_mismatch > std::sqrt(tolerance)) return fit;

    const double residual = (m - tensor(x, s_inv)).norm() / m.norm();
    fit.residual = std::max(rank_gap, residual);
    if (residual > tolerance) return fit;

    fit.accepted = true;
    fit.s = fix_gauge(std::move(s_raw));
    return fit;
}

}  // namespace

bool check_unital(const Superoperator& l, double tolerance) {
    const CMatrix image = ence::apply(l, CMatrix::Identity(l.d, l.d));
    return max_abs(image - CMatrix::Identity(l.d, l.d)) <= tolerance;
}

bool check_det_trace(const Superoperator& l, int samples, Seed seed,
                     double tolerance) {
    if (samples < 1) throw std::invalid_argument("check_det_trace: samples >= 1");
    for (int i = 0; i < samples; ++i) {
        const DensityMatrix rho = sample_density_mix(l.d, seed, static_cast<std::uint64_t>(i));
        const CMatrix image = ence::apply(l, rho.mat);
        if (std::abs(image.determinant() - rho.mat.determinant()) > tolerance) return false;
        if (std::abs(image.trace() - rho.mat.trace()) > tolerance) return false;
    }
    return true;
}

EpReport check_ep_on_density(const Superoperator& l, int samples, Seed seed,
                             double tolerance) {
    if (samples < 1) throw std::invalid_argument("check_ep_on_density: samples >= 1");
    EpReport report;
    report.samples_tested = samples;
    report.unital = check_unital(l, tolerance);
    report.det_trace_preserving =
        check_det_trace(l, samples, derive_seed(seed, 0x8d74'1e0bULL));
    report.ep_on_samples = true;
    for (int i = 0; i < samples; ++i) {
        const DensityMatrix rho = sample_density_mix(l.d, seed, static_cast<std::uint64_t>(i));
        const Spectrum before = eig_general(rho.mat);
        const Spectrum after = eig_general(ence::apply(l, rho.mat));
        const double deviation = match_distance(before, after);
        report.worst_spectrum_deviation =
            std::max(report.worst_spectrum_deviation, deviation);
        if (deviation > tolerance) report.ep_on_samples = false;
    }
    return report;
}

MapForm classify_preserver(const Superoperator& l, double tolerance) {
    if (l.d < 1 || l.mat.rows() != l.d * l.d || l.mat.cols() != l.d * l.d) {
        throw std::invalid_argument("classify_preserver: malformed superoperator");
    }
    const BranchFit direct = fit_conjugation_form(l.mat, l.d, tolerance);
    if (direct.accepted) {
        return MapForm{MapKind::Similarity, direct.s, direct.residual};
    }
    // Peel off the transposition: if l = conj(S) o T then l.mat K = S^T (x) S^{-1}.
    const CMatrix peeled = l.mat * superop_transpose(l.d).mat;
    const BranchFit transposed = fit_conjugation_form(peeled, l.d, tolerance);
    if (transposed.accepted) {
        return MapForm{MapKind::TransposeSimilarity, transposed.s, transposed.residual};
    }
    return MapForm{MapKind::NotEP, std::nullopt,
                   std::min(direct.residual, transposed.residual)};
}

MainTheoremReport verify_main_theorem(const Superoperator& l, int d_a,
                                      int trials, Seed seed, double tolerance) {
    if (d_a < 1) throw std::invalid_argument("verify_main_theorem: d_a must be >= 1");
    if (trials < 1) throw std::invalid_argument("verify_main_theorem: trials >= 1");

    const EpReport ep = check_ep_on_density(l, 200, derive_seed(seed, 0xe9f1ULL), tolerance);
    if (!ep.ep_on_samples) {
        std::ostringstream os;
        os << "verify_main_theorem: map failed the EP precondition "
           << "(worst spectrum deviation " << ep.worst_spectrum_deviation
           << " over " << ep.samples_tested << " samples)";
        throw not_ep_error(os.str());
    }

    const BipartiteDims dims{d_a, l.d};
    double max_dev_identity = 0.0;
    double max_dev_transpose = 0.0;
    double max_dev_best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const DensityMatrix rho =
            sample_density_mix(dims.dim(), derive_seed(seed, 1), static_cast<std::uint64_t>(t));
        const Spectrum original = eig_herm(rho.mat).spectrum;
        const Spectrum transposed =
            eig_herm(partial_transpose(rho.mat, dims, Side::B)).spectrum;
        const Spectrum image = eig_general(apply_partial(l, rho.mat, dims, Side::B));
        const double dev_identity = match_distance(image, original);
        const double dev_transpose = match_distance(image, transposed);
        max_dev_identity = std::max(max_dev_identity, dev_identity);
        max_dev_transpose = std::max(max_dev_transpose, dev_transpose);
        max_dev_best = std::max(max_dev_best, std::min(dev_identity, dev_transpose));
    }

    MainTheoremReport report;
    report.trials = trials;
    if (max_dev_identity <= tolerance) {
        report.branch = TheoremBranch::IdentityBranch;
        report.max_deviation = max_dev_identity;
    } else if (max_dev_transpose <= tolerance) {
        report.branch = TheoremBranch::TransposeBranch;
        report.max_deviation = max_dev_transpose;
    } else {
        report.branch = TheoremBranch::Violated;
        report.max_deviation = max_dev_best;
    }
    return report;
}

}  // namespace ence

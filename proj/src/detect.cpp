// detect.cpp — detectors and the spectral-deviation measure.

#include "ence/detect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ence {

namespace {

void require_dims(const DensityMatrix& rho, BipartiteDims dims, const char* what) {
    if (dims.d_a < 1 || dims.d_b < 1 || rho.dim() != dims.dim()) {
        std::ostringstream os;
        os << what << ": state dim " << rho.dim() << " != d_a*d_b = " << dims.dim();
        throw std::invalid_argument(os.str());
    }
}

// Blocks of rho over the computational CONS of the probed (non-classical)
// side; each block is an operator on the classical side.
std::vector<CMatrix> cons_blocks(const CMatrix& rho, BipartiteDims dims,
                                 Side classical_side) {
    const int da = dims.d_a;
    const int db = dims.d_b;
    std::vector<CMatrix> blocks;
    if (classical_side == Side::B) {
        // Probe CONS on A; blocks <i| rho |i'> act on B.
        blocks.reserve(static_cast<std::size_t>(da) * da);
        for (int i = 0; i < da; ++i)
            for (int ip = 0; ip < da; ++ip)
                blocks.push_back(rho.block(i * db, ip * db, db, db));
    } else {
        // Probe CONS on B; blocks <k| rho |k'> act on A.
        blocks.reserve(static_cast<std::size_t>(db) * db);
        for (int k = 0; k < db; ++k) {
            for (int kp = 0; kp < db; ++kp) {
                CMatrix block(da, da);
                for (int i = 0; i < da; ++i)
                    for (int ip = 0; ip < da; ++ip)
                        block(i, ip) = rho(i * db + k, ip * db + kp);
                blocks.push_back(std::move(block));
            }
        }
    }
    return blocks;
}

}  // namespace

DetectionReport pt_detect(const DensityMatrix& rho, BipartiteDims dims,
                          Side side, double tolerance) {
    require_dims(rho, dims, "pt_detect");
    DetectionReport report;
    report.method = DetectMethod::PT;
    report.side = side == Side::A ? ReportSide::A : ReportSide::B;
    report.spectrum_before = eig_herm(rho.mat).spectrum;
    report.spectrum_after =
        eig_herm(partial_transpose(rho.mat, dims, side)).spectrum;
    report.deviation = match_distance(report.spectrum_before, report.spectrum_after);
    report.detected = report.deviation > tolerance;
    return report;
}

CommutationReport chen_test(const DensityMatrix& rho, BipartiteDims dims,
                            Side classical_side, double tolerance,
                            int max_side_dim) {
    require_dims(rho, dims, "chen_test");
    if (dims.d_a > max_side_dim || dims.d_b > max_side_dim) {
        std::ostringstream os;
        os << "chen_test: side dimension exceeds cap " << max_side_dim
           << " (raise max_side_dim to override)";
        throw std::invalid_argument(os.str());
    }
    const std::vector<CMatrix> blocks = cons_blocks(rho.mat, dims, classical_side);
    CommutationReport report;
    const double scale = std::max(1.0, max_abs(rho.mat) * max_abs(rho.mat));
    for (std::size_t p = 0; p < blocks.size(); ++p) {
        for (std::size_t q = p + 1; q < blocks.size(); ++q) {
            const double norm = max_abs(blocks[p] * blocks[q] - blocks[q] * blocks[p]);
            report.max_commutator_norm = std::max(report.max_commutator_norm, norm);
            ++report.pairs_tested;
        }
    }
    report.passes = report.max_commutator_norm <= tolerance * scale;
    return report;
}

bool pcc_test(const DensityMatrix& rho, BipartiteDims dims, double tolerance,
              int max_side_dim) {
    return chen_test(rho, dims, Side::A, tolerance, max_side_dim).passes &&
           chen_test(rho, dims, Side::B, tolerance, max_side_dim).passes;
}

double ncc_measure(const DensityMatrix& rho, BipartiteDims dims, Side side) {
    require_dims(rho, dims, "ncc_measure");
    const std::vector<double> before = eig_herm(rho.mat).spectrum.real_parts();
    const std::vector<double> after =
        eig_herm(partial_transpose(rho.mat, dims, side)).spectrum.real_parts();
    double total = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i)
        total += std::abs(before[i] - after[i]);
    return 0.5 * total;
}

}  // namespace ence

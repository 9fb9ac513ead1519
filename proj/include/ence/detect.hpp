// detect.hpp — nonclassical-correlation detectors: partial-transpose spectrum
// change, the Chen block-commutation test, the both-sides product-eigenbasis
// test, and a scalar spectral-deviation measure.

#pragma once

#include "ence/matcore.hpp"

#include <string>

namespace ence {

enum class DetectMethod { PT, Chen, Pcc };
enum class ReportSide { A, B, Both };

// A positive PT verdict implies nonclassical correlation (no product
// eigenbasis); a negative verdict is inconclusive.
struct DetectionReport {
    bool detected{false};
    Spectrum spectrum_before;
    Spectrum spectrum_after;
    double deviation{0.0};
    ReportSide side{ReportSide::B};
    DetectMethod method{DetectMethod::PT};
};

struct CommutationReport {
    bool passes{false};
    double max_commutator_norm{0.0};
    int pairs_tested{0};
    std::string cons{"computational"};  // CONS used on the probed side
};

// Block pairs grow as d^4 on the probed side; larger inputs need an explicit
// override of max_side_dim.
inline constexpr int kDefaultMaxChenDim = 8;

// Compares the spectrum of rho with that of its partial transpose on the
// chosen side; deviation is the minimal matching distance.
DetectionReport pt_detect(const DensityMatrix& rho, BipartiteDims dims,
                          Side side, double tolerance = tol::spectra);

// Chen criterion: rho is one-way classically correlated with the given
// classical side iff all blocks of rho over a CONS of the opposite side
// commute pairwise. Tolerance is scaled by max(1, ||rho||_max^2).
CommutationReport chen_test(const DensityMatrix& rho, BipartiteDims dims,
                            Side classical_side,
                            double tolerance = tol::commutator,
                            int max_side_dim = kDefaultMaxChenDim);

// True iff chen_test passes with classical side A and with classical side B,
// i.e. rho has a product eigenbasis.
bool pcc_test(const DensityMatrix& rho, BipartiteDims dims,
              double tolerance = tol::commutator,
              int max_side_dim = kDefaultMaxChenDim);

// Total-variation distance between the descending-sorted spectra of rho and
// its partial transpose: zero on every product-eigenbasis state, positive
// values witness nonclassical correlation.
double ncc_measure(const DensityMatrix& rho, BipartiteDims dims, Side side);

}  // namespace ence

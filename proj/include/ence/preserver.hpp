// preserver.hpp — eigenvalue-preservation checks for linear maps on density
// matrices, structure recovery of the similarity / transpose-similarity form,
// and the empirical two-branch verification of partial application.

#pragma once

#include "ence/maps.hpp"
#include "ence/states.hpp"

#include <optional>
#include <stdexcept>

namespace ence {

// Sampling verdicts below mean "no counterexample found among the tested
// samples", never a proof; reports carry the sample count.
struct EpReport {
    bool unital{false};
    bool det_trace_preserving{false};
    bool ep_on_samples{false};
    double worst_spectrum_deviation{0.0};
    int samples_tested{0};
};

enum class MapKind { Similarity, TransposeSimilarity, NotEP };

// Structure classifier result. For Similarity the map acts as S^{-1} (.) S,
// for TransposeSimilarity as S^{-1} (.)^T S; s is defined up to a complex
// scalar and returned in the fixed gauge |det S| = 1 with the first nonzero
// entry real-positive.
struct MapForm {
    MapKind kind{MapKind::NotEP};
    std::optional<CMatrix> s;
    double residual{0.0};
};

enum class TheoremBranch { IdentityBranch, TransposeBranch, Violated };

struct MainTheoremReport {
    TheoremBranch branch{TheoremBranch::Violated};
    int trials{0};
    double max_deviation{0.0};
};

// Thrown when an operation requires an eigenvalue-preserving map and the
// sampling precondition check fails.
class not_ep_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// || L(I) - I ||_max <= tolerance.
bool check_unital(const Superoperator& l, double tolerance = tol::spectra);

// Determinant and trace preserved on sampled density matrices (mixed ranks).
bool check_det_trace(const Superoperator& l, int samples, Seed seed,
                     double tolerance = tol::det_trace);

// Spectrum of L(rho) vs spectrum of rho on sampled density matrices
// (50% full rank, 25% rank 1, 25% rank ceil(d/2)); also fills the unital
// and det/trace flags.
EpReport check_ep_on_density(const Superoperator& l, int samples, Seed seed,
                             double tolerance = tol::spectra);

// Nearest-Kronecker-product recovery: decides whether l.mat factors (after
// optionally peeling off a transposition) as S^T (x) S^{-1}, and returns the
// recovered S with a residual certificate. Ambiguous cases are NotEP with
// the best residual seen.
MapForm classify_preserver(const Superoperator& l, double tolerance = tol::classify);

// For random bipartite rho with the given A-side dimension, compares the
// spectrum of (I (x) L) rho against rho and against its partial transpose.
// Requires l to pass check_ep_on_density; throws not_ep_error otherwise.
MainTheoremReport verify_main_theorem(const Superoperator& l, int d_a,
                                      int trials, Seed seed,
                                      double tolerance = tol::spectra);

}  // namespace ence

// states.hpp — constructors for the classically-correlated state families and
// seeded random ensembles (Ginibre densities, Haar unitaries).

#pragma once

#include "ence/matcore.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ence {

// Algorithm names recorded in reports so verdicts are reproducible.
inline constexpr const char* kPrngName = "splitmix64-derived mt19937_64";

// Same seed => bit-identical output on the same platform.
struct Seed {
    std::uint64_t value{0};
};

// Counter-derived sub-seed (splitmix64 step). Independent trials draw
// derive_seed(base, 0), derive_seed(base, 1), ... so results do not depend
// on evaluation order.
Seed derive_seed(Seed base, std::uint64_t counter);

// Gaussian/uniform streams over a seeded mt19937_64 engine.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed.value) {}

    double gaussian() { return normal_(engine_); }
    Complex complex_gaussian() { return {gaussian(), gaussian()}; }
    double uniform() { return uniform_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// rows x cols matrix of independent standard complex Gaussians.
CMatrix ginibre(int rows, int cols, Rng& rng);

// ------------------------------ State families -----------------------------

// Product-eigenbasis state: rho = sum_ij weights(i,j) |u_i><u_i| x |v_j><v_j|.
struct PccSpec {
    Eigen::MatrixXd weights;  // d_a x d_b, nonnegative, sums to 1
    CMatrix basis_a;          // unitary; columns are |u_i>
    CMatrix basis_b;          // unitary; columns are |v_j>
};

// One-way classically correlated state: rho = sum_j sigmas[j] x |v_j><v_j|,
// classical on subsystem B.
struct OnewccSpec {
    std::vector<CMatrix> sigmas;  // d_b blocks, each d_a x d_a PSD Hermitian
    CMatrix basis_b;              // d_b x d_b unitary; columns are |v_j>
};

DensityMatrix pcc_state(const PccSpec& spec);
DensityMatrix onewcc_state(const OnewccSpec& spec);

// |Phi+><Phi+| on 2x2, the canonical NPT witness.
DensityMatrix bell_state();

// Convex mixture (1-p) I/d + p rho_npt, 0 < p <= 1.
DensityMatrix rho_p(double p, const DensityMatrix& rho_npt);

// G G^dag / tr(G G^dag) with G a d x rank Ginibre matrix; rank <= d.
DensityMatrix random_density(int d, int rank, Seed seed);

// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
// phase fix (each Q column multiplied by the phase of the matching R entry).
CMatrix random_unitary(int d, Seed seed);

// --------------------------- Random spec builders --------------------------

// Dirichlet(1) weights and Haar bases.
PccSpec random_pcc_spec(int d_a, int d_b, Seed seed);

// Random PSD sigma blocks with Dirichlet traces and a Haar basis_b. When
// min_noncommute > 0, resamples until some pair of sigmas has commutator
// max-norm >= min_noncommute (requires d_a >= 2 and d_b >= 2).
OnewccSpec random_onewcc_spec(int d_a, int d_b, Seed seed,
                              double min_noncommute = 0.0);

}  // namespace ence

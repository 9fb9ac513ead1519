// matcore.hpp — dense complex linear algebra: tensor products, partial
// transpose/trace, Hermitian and general eigendecomposition, spectrum
// comparison, Cartesian decomposition.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ence {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Default tolerances. Absolute, scaled by max(1, max|entry|) where noted;
// comfortably above double-precision eigensolver error at dim <= 64.
namespace tol {
inline constexpr double herm = 1e-10;       // Hermiticity, scaled
inline constexpr double trace = 1e-10;      // unit trace, scaled
inline constexpr double psd = 1e-9;         // min eigenvalue >= -psd
inline constexpr double spectra = 1e-8;     // spectrum matching
inline constexpr double unitary = 1e-8;     // basis unitarity on input
inline constexpr double commutator = 1e-8;  // Chen block commutators
inline constexpr double classify = 1e-8;    // Kronecker-rank-1 acceptance
inline constexpr double det_trace = 1e-7;   // det/trace preservation
}  // namespace tol

// Subsystem label. Subsystem A is the major (slow) index everywhere:
// a bipartite entry is rho[(i*d_b + k), (i'*d_b + l)] with i,i' on A.
enum class Side { A, B };

// ----------------------------- Domain types --------------------------------

struct BipartiteDims {
    int d_a{1};
    int d_b{1};

    int dim() const { return d_a * d_b; }
    int side_dim(Side s) const { return s == Side::A ? d_a : d_b; }
};

// Multiset of eigenvalues with algebraic multiplicity, canonically ordered:
// descending real part, ties by descending imaginary part.
struct Spectrum {
    std::vector<Complex> values;

    int size() const { return static_cast<int>(values.size()); }
    // Real parts in canonical (descending) order.
    std::vector<double> real_parts() const;
};

Spectrum make_spectrum(std::vector<Complex> values);

struct EigSystem {
    Spectrum spectrum;
    CMatrix right_vectors;                  // columns
    std::optional<CMatrix> left_vectors;    // biorthogonal to right when present
};

// Positive semidefinite Hermitian matrix with unit trace. Validated at
// construction; throws std::invalid_argument on violation.
struct DensityMatrix {
    CMatrix mat;

    explicit DensityMatrix(CMatrix m);
    int dim() const { return static_cast<int>(mat.rows()); }
};

// ------------------------------ Basic checks -------------------------------

double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tolerance = tol::herm);
bool is_unitary(const CMatrix& m, double tolerance = tol::unitary);

// Throws std::invalid_argument describing the first violated invariant.
void validate_density(const CMatrix& m);

// 2-norm condition number (sigma_max / sigma_min; +inf when singular).
double condition_number(const CMatrix& m);

// ------------------------------- Operations --------------------------------

// Kronecker product with A as the major (slow) factor:
// out[(i*db + k), (j*db + l)] = a(i,j) * b(k,l).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

// Transposition of one tensor factor; involutive, trace/Hermiticity
// preserving.
CMatrix partial_transpose(const CMatrix& rho, BipartiteDims dims, Side side);

// Traces out the given subsystem, returns the reduced matrix on the other.
CMatrix partial_trace(const CMatrix& rho, BipartiteDims dims, Side traced_out);

// Hermitian eigendecomposition; real spectrum in descending order,
// orthonormal right eigenvectors. Throws on non-Hermitian input.
EigSystem eig_herm(const CMatrix& h);

// General complex spectrum with algebraic multiplicities (Schur iteration);
// no eigenvectors, so defective matrices are unproblematic.
Spectrum eig_general(const CMatrix& m);

// True iff a perfect matching pairs each value of s1 with one of s2 within
// distance tolerance. Greedy pass on the canonical order first, optimal
// assignment as fallback. Throws on length mismatch.
bool spectra_equal(const Spectrum& s1, const Spectrum& s2,
                   double tolerance = tol::spectra);

// Minimal over perfect matchings of the largest pair distance (bottleneck
// matching distance). Zero iff the spectra agree exactly as multisets.
double match_distance(const Spectrum& s1, const Spectrum& s2);

// m = h1 + i*h2 with h1 = (m + m^dag)/2 and h2 = (m - m^dag)/(2i), both
// Hermitian; reconstruction holds to machine precision.
std::pair<CMatrix, CMatrix> cartesian_decompose(const CMatrix& m);

}  // namespace ence

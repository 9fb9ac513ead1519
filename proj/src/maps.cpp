// maps.cpp — superoperator construction and application.

#include "ence/maps.hpp"

#include <sstream>

namespace ence {

namespace {

void require_superop(const Superoperator& l, const char* what) {
    if (l.d < 1 || l.mat.rows() != l.d * l.d || l.mat.cols() != l.d * l.d) {
        std::ostringstream os;
        os << what << ": superoperator matrix must be d^2 x d^2 with d >= 1";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

CVector vec(const CMatrix& a) {
    // Eigen stores column-major, so column stacking is a flat copy.
    return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, int d) {
    if (static_cast<int>(v.size()) != d * d) {
        throw std::invalid_argument("unvec: vector length must be d^2");
    }
    return Eigen::Map<const CMatrix>(v.data(), d, d);
}

Superoperator superop_identity(int d) {
    if (d < 1) throw std::invalid_argument("superop_identity: d must be >= 1");
    return Superoperator{d, CMatrix::Identity(d * d, d * d)};
}

Superoperator superop_conjugation(const CMatrix& s) {
    if (s.rows() != s.cols() || s.rows() < 1) {
        throw std::invalid_argument("superop_conjugation: S must be square");
    }
    const double cond = condition_number(s);
    if (!(cond <= kMaxCondition)) {
        std::ostringstream os;
        os << "superop_conjugation: S is singular or ill-conditioned (cond = "
           << cond << ", cap " << kMaxCondition << ")";
        throw std::invalid_argument(os.str());
    }
    const int d = static_cast<int>(s.rows());
    const CMatrix s_inv = s.partialPivLu().solve(CMatrix::Identity(d, d));
    return Superoperator{d, tensor(s.transpose(), s_inv)};
}

Superoperator superop_transpose(int d) {
    if (d < 1) throw std::invalid_argument("superop_transpose: d must be >= 1");
    CMatrix k = CMatrix::Zero(d * d, d * d);
    // Entry (i,j) sits at vec index j*d + i; transposition swaps the roles.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            k(i * d + j, j * d + i) = 1.0;
    return Superoperator{d, std::move(k)};
}

Superoperator compose(const Superoperator& f, const Superoperator& g) {
    require_superop(f, "compose");
    require_superop(g, "compose");
    if (f.d != g.d) {
        throw std::invalid_argument("compose: superoperator dims differ");
    }
    return Superoperator{f.d, f.mat * g.mat};
}

CMatrix apply(const Superoperator& l, const CMatrix& a) {
    require_superop(l, "apply");
    if (a.rows() != l.d || a.cols() != l.d) {
        std::ostringstream os;
        os << "apply: matrix dim " << a.rows() << "x" << a.cols()
           << " does not match superoperator d = " << l.d;
        throw std::invalid_argument(os.str());
    }
    return unvec(l.mat * vec(a), l.d);
}

CMatrix apply_partial(const Superoperator& l, const CMatrix& rho,
                      BipartiteDims dims, Side side) {
    require_superop(l, "apply_partial");
    if (rho.rows() != rho.cols() || rho.rows() != dims.dim()) {
        throw std::invalid_argument("apply_partial: rho dim != d_a * d_b");
    }
    if (l.d != dims.side_dim(side)) {
        std::ostringstream os;
        os << "apply_partial: superoperator d = " << l.d
           << " does not match chosen side dim " << dims.side_dim(side);
        throw std::invalid_argument(os.str());
    }
    const int da = dims.d_a;
    const int db = dims.d_b;
    CMatrix out(rho.rows(), rho.cols());
    if (side == Side::B) {
        for (int i = 0; i < da; ++i)
            for (int ip = 0; ip < da; ++ip)
                out.block(i * db, ip * db, db, db) =
                    ence::apply(l, rho.block(i * db, ip * db, db, db));
        return out;
    }
    // Side A: gather the A-indexed slice for each fixed (k, l) on B.
    CMatrix slice(da, da);
    for (int k = 0; k < db; ++k) {
        for (int lb = 0; lb < db; ++lb) {
            for (int i = 0; i < da; ++i)
                for (int ip = 0; ip < da; ++ip)
                    slice(i, ip) = rho(i * db + k, ip * db + lb);
            const CMatrix image = ence::apply(l, slice);
            for (int i = 0; i < da; ++i)
                for (int ip = 0; ip < da; ++ip)
                    out(i * db + k, ip * db + lb) = image(i, ip);
        }
    }
    return out;
}

}  // namespace ence

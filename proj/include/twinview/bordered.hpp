#ifndef TWINVIEW_BORDERED_HPP
#define TWINVIEW_BORDERED_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "twinview/errors.hpp"
#include "twinview/kernel.hpp"

namespace twinview {

/// Saddle-point system
///
///   [ core    border ] [ h ]   [ rhs_top    ]
///   [ border'   0    ] [ b ] = [ rhs_bottom ]
///
/// with a symmetric positive-definite core (a regularized Gram sum).
struct BorderedSystem {
    Matrix core;
    Vector border;
    Vector rhs_top;
    double rhs_bottom = 0.0;
};

struct BorderedSolution {
    Vector h;
    double b = 0.0;
};

namespace detail {

inline double bordered_residual(const BorderedSystem& sys, const Vector& h,
                                double b) {
    const Vector top = sys.core * h + sys.border * b - sys.rhs_top;
    const double bottom = sys.border.dot(h) - sys.rhs_bottom;
    const double res =
        std::sqrt(top.squaredNorm() + bottom * bottom);
    const double scale = std::max(
        1.0, std::sqrt(sys.rhs_top.squaredNorm() + sys.rhs_bottom * sys.rhs_bottom));
    return res / scale;
}

inline BorderedSolution solve_bordered_lu(const BorderedSystem& sys) {
    const Eigen::Index n = sys.core.rows();
    Matrix full(n + 1, n + 1);
    full.topLeftCorner(n, n) = sys.core;
    full.topRightCorner(n, 1) = sys.border;
    full.bottomLeftCorner(1, n) = sys.border.transpose();
    full(n, n) = 0.0;
    Vector rhs(n + 1);
    rhs.head(n) = sys.rhs_top;
    rhs[n] = sys.rhs_bottom;
    Eigen::PartialPivLU<Matrix> lu(full);
    const Vector sol = lu.solve(rhs);
    BorderedSolution out{sol.head(n), sol[n]};
    if (!sol.allFinite() || bordered_residual(sys, out.h, out.b) > 1e-8)
        throw SingularSystemError(
            "bordered system is singular or too ill-conditioned");
    return out;
}

}  // namespace detail

/// Cholesky on the core plus a scalar Schur-complement step for the border;
/// dense LU with partial pivoting on the full (n+1) matrix as fallback.
/// The returned (h, b) satisfies both block rows to 1e-8 relative residual.
inline BorderedSolution solve_bordered(const BorderedSystem& sys) {
    if (sys.core.rows() != sys.core.cols() ||
        sys.core.rows() != sys.border.size() ||
        sys.core.rows() != sys.rhs_top.size())
        throw DimensionError("solve_bordered: inconsistent block dimensions");
    Eigen::LLT<Matrix> llt(sys.core);
    if (llt.info() == Eigen::Success) {
        const Vector p = llt.solve(sys.rhs_top);
        const Vector q = llt.solve(sys.border);
        const double schur = sys.border.dot(q);
        if (std::abs(schur) < 1e-14)
            throw SingularSystemError(
                "bordered system: Schur complement magnitude " +
                std::to_string(std::abs(schur)) + " below 1e-14");
        const double b = (sys.border.dot(p) - sys.rhs_bottom) / schur;
        BorderedSolution out{p - q * b, b};
        if (out.h.allFinite() && std::isfinite(out.b) &&
            detail::bordered_residual(sys, out.h, out.b) <= 1e-8)
            return out;
    }
    return detail::solve_bordered_lu(sys);
}

}  // namespace twinview

#endif

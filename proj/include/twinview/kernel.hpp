#ifndef TWINVIEW_KERNEL_HPP
#define TWINVIEW_KERNEL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "twinview/errors.hpp"

namespace twinview {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class KernelKind { rbf, linear };

/// Kernel family plus its bandwidth. sigma is ignored for the linear kernel.
struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double sigma = 1.0;

    void validate() const {
        if (kind == KernelKind::rbf && !(sigma > 0.0))
            throw ConfigError("rbf kernel requires sigma > 0, got " +
                              std::to_string(sigma));
    }
};

inline std::string to_string(KernelKind k) {
    return k == KernelKind::rbf ? "rbf" : "linear";
}

inline KernelKind kernel_kind_from_string(const std::string& s) {
    if (s == "rbf") return KernelKind::rbf;
    if (s == "linear") return KernelKind::linear;
    throw ConfigError("unknown kernel kind: " + s);
}

/// K(x, y). RBF convention: exp(-||x-y||^2 / (2 sigma^2)).
inline double kernel_eval(const Eigen::Ref<const Vector>& x,
                          const Eigen::Ref<const Vector>& y,
                          const KernelSpec& spec) {
    spec.validate();
    if (x.size() != y.size())
        throw DimensionError("kernel_eval: dimension mismatch (" +
                             std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    if (spec.kind == KernelKind::linear) return x.dot(y);
    double sq = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sq += d * d;
    }
    return std::exp(-sq / (2.0 * spec.sigma * spec.sigma));
}

/// Pairwise kernel matrix: entry (i,j) = K(row i of X, row j of Y).
/// Rows are computed independently; identical left/right rows give an exact
/// exp(0) = 1 on the diagonal for the RBF kernel.
inline Matrix gram(const Eigen::Ref<const Matrix>& X,
                   const Eigen::Ref<const Matrix>& Y,
                   const KernelSpec& spec) {
    spec.validate();
    if (X.cols() != Y.cols())
        throw DimensionError("gram: column mismatch (" +
                             std::to_string(X.cols()) + " vs " +
                             std::to_string(Y.cols()) + ")");
    Matrix K(X.rows(), Y.rows());
    const double inv_two_sigma_sq =
        spec.kind == KernelKind::rbf ? 1.0 / (2.0 * spec.sigma * spec.sigma)
                                     : 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < Y.rows(); ++j) {
            if (spec.kind == KernelKind::linear) {
                K(i, j) = X.row(i).dot(Y.row(j));
            } else {
                double sq = 0.0;
                for (Eigen::Index c = 0; c < X.cols(); ++c) {
                    const double d = X(i, c) - Y(j, c);
                    sq += d * d;
                }
                K(i, j) = std::exp(-sq * inv_two_sigma_sq);
            }
        }
    }
    return K;
}

/// Sum of per-view Gram matrices with one shared kernel spec.
inline Matrix multiview_gram(const std::vector<Matrix>& Xs,
                             const std::vector<Matrix>& Ys,
                             const KernelSpec& spec) {
    if (Xs.empty() || Xs.size() != Ys.size())
        throw ViewMismatchError("multiview_gram: view count mismatch (" +
                                std::to_string(Xs.size()) + " vs " +
                                std::to_string(Ys.size()) + ")");
    for (std::size_t v = 1; v < Xs.size(); ++v) {
        if (Xs[v].rows() != Xs[0].rows() || Ys[v].rows() != Ys[0].rows())
            throw ViewMismatchError(
                "multiview_gram: inconsistent row counts across views");
    }
    Matrix K = gram(Xs[0], Ys[0], spec);
    for (std::size_t v = 1; v < Xs.size(); ++v) K += gram(Xs[v], Ys[v], spec);
    return K;
}

}  // namespace twinview

#endif

#ifndef TWINVIEW_MVRKM_HPP
#define TWINVIEW_MVRKM_HPP

#include <vector>

#include "twinview/bordered.hpp"
#include "twinview/dataio.hpp"
#include "twinview/errors.hpp"
#include "twinview/kernel.hpp"

namespace twinview {

/// Single-system multiview RKM baseline. z stores the sign-weighted hidden
/// vector y .* h solved jointly with the shared bias.
struct MvrkmModel {
    Vector z;
    double b = 0.0;
    std::vector<Matrix> train_views;
    Eigen::VectorXi labels;
    double eta = 1.0;
    double lambda = 1.0;
    KernelSpec kernel;
};

/// Solves core = (1/eta) sum_v Gram_v + lambda I, border = V*1, with
/// rhs (V*y, 0), for unknowns (z, b). The PD block leads so Cholesky applies;
/// this is a row/column permutation of the printed block ordering.
inline MvrkmModel fit_mvrkm(const MultiviewDataset& data, double eta,
                            double lambda, const KernelSpec& kernel) {
    data.validate();
    if (!(eta > 0.0) || !(lambda > 0.0))
        throw ConfigError("mvrkm: eta and lambda must be positive");
    const Eigen::Index n = data.sample_count();
    if (n < 2) throw DegenerateClassError("mvrkm: need at least 2 samples");
    bool has_pos = false, has_neg = false;
    for (Eigen::Index i = 0; i < n; ++i)
        (data.y[i] > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw DegenerateClassError("mvrkm: training data must contain both labels");

    const double views = static_cast<double>(data.views.size());
    BorderedSystem sys;
    sys.core = multiview_gram(data.views, data.views, kernel) / eta +
               lambda * Matrix::Identity(n, n);
    sys.border = Vector::Constant(n, views);
    sys.rhs_top = views * data.y.cast<double>();
    sys.rhs_bottom = 0.0;
    const BorderedSolution sol = solve_bordered(sys);

    MvrkmModel model;
    model.z = sol.h;
    model.b = sol.b;
    model.train_views = data.views;
    model.labels = data.y;
    model.eta = eta;
    model.lambda = lambda;
    model.kernel = kernel;
    return model;
}

/// score(x) = (1/(V eta)) sum_v K(x, X_v) z + b. The 1/V undoes the V factor
/// the solved system puts into z (its rhs is V*y), so the score matches the
/// eliminated per-view weights w_v = (1/(V eta)) X_v' z; without it the model
/// would not be invariant under duplicating every view while doubling eta.
inline Vector mvrkm_scores(const MvrkmModel& model,
                           const std::vector<Matrix>& X_views) {
    if (X_views.size() != model.train_views.size())
        throw ViewMismatchError("mvrkm predict: view count mismatch");
    for (std::size_t v = 0; v < X_views.size(); ++v) {
        if (X_views[v].cols() != model.train_views[v].cols())
            throw ViewMismatchError(
                "mvrkm predict: feature dimension mismatch in view " +
                std::to_string(v));
        if (X_views[v].rows() != X_views[0].rows())
            throw ViewMismatchError(
                "mvrkm predict: inconsistent sample counts across views");
    }
    const Matrix K = multiview_gram(X_views, model.train_views, model.kernel);
    const double views = static_cast<double>(model.train_views.size());
    return (K * model.z) / (views * model.eta) +
           Vector::Constant(K.rows(), model.b);
}

/// Labels in {-1, +1}; a score of exactly zero classifies as +1.
inline Eigen::VectorXi predict_mvrkm(const MvrkmModel& model,
                                     const std::vector<Matrix>& X_views) {
    const Vector scores = mvrkm_scores(model, X_views);
    Eigen::VectorXi labels(scores.size());
    for (Eigen::Index i = 0; i < scores.size(); ++i)
        labels[i] = scores[i] >= 0.0 ? 1 : -1;
    return labels;
}

}  // namespace twinview

#endif

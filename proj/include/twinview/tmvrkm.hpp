#ifndef TWINVIEW_TMVRKM_HPP
#define TWINVIEW_TMVRKM_HPP

#include <string>
#include <utility>
#include <vector>

#include "twinview/bordered.hpp"
#include "twinview/errors.hpp"
#include "twinview/kernel.hpp"

namespace twinview {

/// Which of the two printed linear-system layouts to assemble.
///
/// as_published keeps the displayed block matrices (with the bottom row read
/// as an all-ones row of matching length, the only dimensionally possible
/// reading). derivation_consistent follows the stationarity conditions and
/// the weight-variable substitution, and is the only variant whose solution
/// admits the explicit-weight residual checks. derivation_consistent is the
/// default everywhere.
enum class TmvrkmVariant { as_published, derivation_consistent };

inline std::string to_string(TmvrkmVariant v) {
    return v == TmvrkmVariant::as_published ? "as_published"
                                            : "derivation_consistent";
}

inline TmvrkmVariant variant_from_string(const std::string& s) {
    if (s == "as_published") return TmvrkmVariant::as_published;
    if (s == "derivation_consistent") return TmvrkmVariant::derivation_consistent;
    throw ConfigError("unknown variant: " + s);
}

struct TmvrkmHyperParams {
    double eta1 = 1.0;
    double eta2 = 1.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    KernelSpec kernel;
    TmvrkmVariant variant = TmvrkmVariant::derivation_consistent;

    void validate() const {
        if (!(eta1 > 0.0) || !(eta2 > 0.0) || !(lambda1 > 0.0) ||
            !(lambda2 > 0.0))
            throw ConfigError("tmvrkm: eta and lambda must be positive");
        kernel.validate();
    }
};

/// Per-view training matrices split by class: A holds the +1 samples
/// (m1 rows per view), B the -1 samples (m2 rows per view).
struct ClassSplit {
    std::vector<Matrix> A_views;
    std::vector<Matrix> B_views;

    Eigen::Index view_count() const {
        return static_cast<Eigen::Index>(A_views.size());
    }
    Eigen::Index m1() const { return A_views.empty() ? 0 : A_views[0].rows(); }
    Eigen::Index m2() const { return B_views.empty() ? 0 : B_views[0].rows(); }

    void validate() const {
        if (A_views.empty() || A_views.size() != B_views.size())
            throw ViewMismatchError("class split: view count mismatch");
        if (m1() < 1 || m2() < 1)
            throw DegenerateClassError(
                "class split: both classes must be non-empty");
        for (std::size_t v = 0; v < A_views.size(); ++v) {
            if (A_views[v].rows() != m1() || B_views[v].rows() != m2())
                throw ViewMismatchError(
                    "class split: inconsistent row counts in view " +
                    std::to_string(v));
            if (A_views[v].cols() != B_views[v].cols())
                throw ViewMismatchError(
                    "class split: A/B feature dimension mismatch in view " +
                    std::to_string(v));
        }
    }
};

struct TmvrkmModel {
    Vector h1;
    double b1 = 0.0;
    Vector h2;
    double b2 = 0.0;
    ClassSplit split;
    TmvrkmHyperParams params;
};

/// System for the +1-class hyperplane:
/// core = (1/eta1) sum_v K(A,A) + lambda1 I, border = V * 1.
/// The bottom row encodes the shared-bias constraint 1'h1 = m2; with the
/// border used symmetrically that row carries rhs V * m2.
/// The two variants differ only in the sign of the K(A,B) term on rhs_top.
inline BorderedSystem assemble_positive_system(const ClassSplit& split,
                                               const TmvrkmHyperParams& params) {
    split.validate();
    params.validate();
    const double views = static_cast<double>(split.view_count());
    const Eigen::Index m1 = split.m1();
    const Eigen::Index m2 = split.m2();
    BorderedSystem sys;
    sys.core = multiview_gram(split.A_views, split.A_views, params.kernel) /
                   params.eta1 +
               params.lambda1 * Matrix::Identity(m1, m1);
    sys.border = Vector::Constant(m1, views);
    const Vector cross =
        multiview_gram(split.A_views, split.B_views, params.kernel) *
        Vector::Ones(m2) / params.eta1;
    sys.rhs_top = Vector::Constant(m1, views);
    if (params.variant == TmvrkmVariant::as_published)
        sys.rhs_top -= cross;
    else
        sys.rhs_top += cross;
    sys.rhs_bottom = views * static_cast<double>(m2);
    return sys;
}

/// System for the -1-class hyperplane:
/// core = (1/eta2) sum_v K(B,B) + lambda2 I. The variants differ in the
/// border sign; the bottom row encodes 1'h2 = m1 either way, so its rhs
/// carries the border's sign and magnitude.
inline BorderedSystem assemble_negative_system(const ClassSplit& split,
                                               const TmvrkmHyperParams& params) {
    split.validate();
    params.validate();
    const double views = static_cast<double>(split.view_count());
    const Eigen::Index m1 = split.m1();
    const Eigen::Index m2 = split.m2();
    BorderedSystem sys;
    sys.core = multiview_gram(split.B_views, split.B_views, params.kernel) /
                   params.eta2 +
               params.lambda2 * Matrix::Identity(m2, m2);
    const double border_sign =
        params.variant == TmvrkmVariant::as_published ? 1.0 : -1.0;
    sys.border = Vector::Constant(m2, border_sign * views);
    sys.rhs_top = Vector::Constant(m2, views) -
                  multiview_gram(split.B_views, split.A_views, params.kernel) *
                      Vector::Ones(m1) / params.eta2;
    sys.rhs_bottom = border_sign * views * static_cast<double>(m1);
    return sys;
}

inline TmvrkmModel fit(ClassSplit split, const TmvrkmHyperParams& params) {
    const BorderedSolution pos =
        solve_bordered(assemble_positive_system(split, params));
    const BorderedSolution neg =
        solve_bordered(assemble_negative_system(split, params));
    TmvrkmModel model;
    model.h1 = pos.h;
    model.b1 = pos.b;
    model.h2 = neg.h;
    model.b2 = neg.b;
    model.split = std::move(split);
    model.params = params;
    return model;
}

namespace detail {

inline void check_views_against_split(const ClassSplit& split,
                                      const std::vector<Matrix>& X_views) {
    if (static_cast<Eigen::Index>(X_views.size()) != split.view_count())
        throw ViewMismatchError("predict: view count mismatch (" +
                                std::to_string(X_views.size()) + " vs " +
                                std::to_string(split.view_count()) + ")");
    for (std::size_t v = 0; v < X_views.size(); ++v) {
        if (X_views[v].cols() != split.A_views[v].cols())
            throw ViewMismatchError(
                "predict: feature dimension mismatch in view " +
                std::to_string(v));
        if (X_views[v].rows() != X_views[0].rows())
            throw ViewMismatchError(
                "predict: inconsistent sample counts across views");
    }
}

}  // namespace detail

/// Per-sample decision scores (f1, f2); the label is sign(f1 + f2).
/// The score formulas are fixed regardless of assembly variant.
inline std::pair<Vector, Vector> decision_score_matrix(
    const TmvrkmModel& model, const std::vector<Matrix>& X_views) {
    detail::check_views_against_split(model.split, X_views);
    const KernelSpec& kernel = model.params.kernel;
    const Matrix KxA = multiview_gram(X_views, model.split.A_views, kernel);
    const Matrix KxB = multiview_gram(X_views, model.split.B_views, kernel);
    const Vector f1 = (KxA * model.h1 - KxB * Vector::Ones(model.split.m2())) /
                      model.params.eta1;
    const Vector f2 = (KxB * model.h2 + KxA * Vector::Ones(model.split.m1())) /
                      model.params.eta2;
    return {f1, f2};
}

inline std::pair<double, double> decision_scores(
    const TmvrkmModel& model, const std::vector<Vector>& x_views) {
    std::vector<Matrix> rows;
    rows.reserve(x_views.size());
    for (const Vector& x : x_views) rows.push_back(x.transpose());
    const auto [f1, f2] = decision_score_matrix(model, rows);
    return {f1[0], f2[0]};
}

/// Labels in {-1, +1}; a score of exactly zero classifies as +1.
inline Eigen::VectorXi predict(const TmvrkmModel& model,
                               const std::vector<Matrix>& X_views) {
    const auto [f1, f2] = decision_score_matrix(model, X_views);
    Eigen::VectorXi labels(f1.size());
    for (Eigen::Index i = 0; i < f1.size(); ++i)
        labels[i] = (f1[i] + f2[i] >= 0.0) ? 1 : -1;
    return labels;
}

struct StationarityResiduals {
    double r_h1 = 0.0;
    double r_b1 = 0.0;
    double r_h2 = 0.0;
    double r_b2 = 0.0;
};

/// Reconstructs the eliminated explicit weights (linear kernel only) and
/// returns max-norm residuals of the four stationarity conditions. Only
/// meaningful for the derivation_consistent variant.
inline StationarityResiduals stationarity_check(const TmvrkmModel& model) {
    if (model.params.kernel.kind != KernelKind::linear)
        throw UnsupportedCheckError(
            "stationarity_check requires a linear kernel (explicit weights "
            "do not exist for rbf)");
    if (model.params.variant != TmvrkmVariant::derivation_consistent)
        throw UnsupportedCheckError(
            "stationarity_check requires the derivation_consistent variant");
    const ClassSplit& split = model.split;
    const Eigen::Index m1 = split.m1();
    const Eigen::Index m2 = split.m2();
    const Vector ones1 = Vector::Ones(m1);
    const Vector ones2 = Vector::Ones(m2);

    Vector grad_h1 = -model.params.lambda1 * model.h1;
    Vector grad_h2 = -model.params.lambda2 * model.h2;
    for (Eigen::Index v = 0; v < split.view_count(); ++v) {
        const Matrix& A = split.A_views[v];
        const Matrix& B = split.B_views[v];
        const Vector w =
            (A.transpose() * model.h1 - B.transpose() * ones2) /
            model.params.eta1;
        const Vector u =
            -(A.transpose() * ones1 + B.transpose() * model.h2) /
            model.params.eta2;
        grad_h1 += ones1 - A * w - ones1 * model.b1;
        grad_h2 += ones2 + B * u + ones2 * model.b2;
    }
    StationarityResiduals res;
    res.r_h1 = grad_h1.lpNorm<Eigen::Infinity>();
    res.r_b1 = std::abs(ones1.dot(model.h1) - static_cast<double>(m2));
    res.r_h2 = grad_h2.lpNorm<Eigen::Infinity>();
    res.r_b2 = std::abs(ones2.dot(model.h2) - static_cast<double>(m1));
    return res;
}

}  // namespace twinview

#endif

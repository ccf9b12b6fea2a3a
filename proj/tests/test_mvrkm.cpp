#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "twinview/evaluation.hpp"
#include "twinview/model_io.hpp"
#include "twinview/mvrkm.hpp"

using namespace twinview;

namespace {

MultiviewDataset random_multiview(Eigen::Index n, Eigen::Index d, Eigen::Index views,
                             Rng& rng) {
    MultiviewDataset data;
    data.name = "random";
    for (Eigen::Index v = 0; v < views; ++v) {
        Matrix m(n, d);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < d; ++c) m(r, c) = rng.next_normal();
        data.views.push_back(std::move(m));
    }
    data.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) data.y[i] = (i % 2 == 0) ? 1 : -1;
    return data;
}

double system_residual(const MvrkmModel& model, const MultiviewDataset& data) {
    const Eigen::Index n = data.sample_count();
    const double views = static_cast<double>(data.views.size());
    const Matrix core =
        multiview_gram(data.views, data.views, model.kernel) / model.eta +
        model.lambda * Matrix::Identity(n, n);
    const Vector top = core * model.z +
                       Vector::Constant(n, views * model.b) -
                       views * data.y.cast<double>();
    const double bottom = views * model.z.sum();
    const double rhs_norm = std::max(
        1.0, std::sqrt(views * views * static_cast<double>(n)));
    return std::sqrt(top.squaredNorm() + bottom * bottom) / rhs_norm;
}

}  // namespace

TEST_CASE("huge lambda shrinks z toward (V/lambda)(y - b)") {
    Rng rng(111);
    for (Eigen::Index views : {Eigen::Index{1}, Eigen::Index{3}}) {
        const MultiviewDataset data = random_multiview(12, 3, views, rng);
        const double lambda = 1e6;
        const MvrkmModel model =
            fit_mvrkm(data, 1.0, lambda, {KernelKind::rbf, 1.0});
        const double bound = 2.0 * static_cast<double>(views) *
                             std::sqrt(12.0) / lambda * (1.0 + 1e-3);
        CHECK(model.z.norm() <= bound);
    }
}

TEST_CASE("blob fixture: mvrkm training accuracy >= 0.95") {
    auto [train, test] = fixtures::blob_multiview(60, 42);
    const MvrkmModel model = fit_mvrkm(train, 1.0, 0.01, {KernelKind::rbf, 1.0});
    CHECK(accuracy(predict_mvrkm(model, train.views), train.y) >= 0.95);
    CHECK(accuracy(predict_mvrkm(model, test.views), test.y) >= 0.95);
}

TEST_CASE("fitted z satisfies the zero-sum row") {
    Rng rng(113);
    const MultiviewDataset data = random_multiview(15, 4, 2, rng);
    const MvrkmModel model = fit_mvrkm(data, 0.5, 0.1, {KernelKind::rbf, 2.0});
    CHECK(std::abs(2.0 * model.z.sum()) <= 1e-6 * 15.0);
}

TEST_CASE("both block rows hold to 1e-8 relative") {
    Rng rng(127);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Index views = 1 + static_cast<Eigen::Index>(rng.next_below(3));
        const MultiviewDataset data = random_multiview(10, 3, views, rng);
        const MvrkmModel model =
            fit_mvrkm(data, 0.7, 0.05, {KernelKind::rbf, 1.5});
        CHECK(system_residual(model, data) <= 1e-8);
    }
}

TEST_CASE("z = 0, b = 1 labels everything +1") {
    Rng rng(131);
    const MultiviewDataset data = random_multiview(6, 2, 1, rng);
    MvrkmModel model;
    model.z = Vector::Zero(6);
    model.b = 1.0;
    model.train_views = data.views;
    model.labels = data.y;
    model.kernel = {KernelKind::rbf, 1.0};
    const Eigen::VectorXi pred = predict_mvrkm(model, data.views);
    for (Eigen::Index i = 0; i < pred.size(); ++i) CHECK(pred[i] == 1);
}

TEST_CASE("duplicating every view while doubling eta leaves scores unchanged") {
    Rng rng(137);
    const MultiviewDataset data = random_multiview(14, 3, 2, rng);
    const MultiviewDataset probe = random_multiview(5, 3, 2, rng);
    MultiviewDataset doubled = data;
    doubled.views.insert(doubled.views.end(), data.views.begin(),
                         data.views.end());
    std::vector<Matrix> probe_doubled = probe.views;
    probe_doubled.insert(probe_doubled.end(), probe.views.begin(),
                         probe.views.end());

    const KernelSpec kernel{KernelKind::rbf, 1.2};
    const MvrkmModel base = fit_mvrkm(data, 0.8, 0.3, kernel);
    const MvrkmModel dup = fit_mvrkm(doubled, 1.6, 0.3, kernel);
    const Vector s1 = mvrkm_scores(base, probe.views);
    const Vector s2 = mvrkm_scores(dup, probe_doubled);
    CHECK((s1 - s2).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("score is linear in z and b") {
    Rng rng(139);
    const MultiviewDataset data = random_multiview(10, 3, 1, rng);
    const MultiviewDataset probe = random_multiview(4, 3, 1, rng);
    MvrkmModel a = fit_mvrkm(data, 1.0, 0.2, {KernelKind::rbf, 1.0});
    MvrkmModel b = a;
    for (Eigen::Index i = 0; i < b.z.size(); ++i) b.z[i] = rng.next_normal();
    b.b = -0.4;
    MvrkmModel sum = a;
    sum.z = a.z + b.z;
    sum.b = a.b + b.b;
    const Vector expected =
        mvrkm_scores(a, probe.views) + mvrkm_scores(b, probe.views);
    const Vector got = mvrkm_scores(sum, probe.views);
    CHECK((got - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("degenerate inputs rejected") {
    Rng rng(149);
    MultiviewDataset data = random_multiview(8, 2, 1, rng);
    data.y.setConstant(1);
    CHECK_THROWS_AS(fit_mvrkm(data, 1.0, 1.0, {KernelKind::rbf, 1.0}),
                    DegenerateClassError);
    data = random_multiview(8, 2, 1, rng);
    CHECK_THROWS_AS(fit_mvrkm(data, -1.0, 1.0, {KernelKind::rbf, 1.0}),
                    ConfigError);
    const MvrkmModel model = fit_mvrkm(data, 1.0, 1.0, {KernelKind::rbf, 1.0});
    const MultiviewDataset wrong = random_multiview(3, 5, 1, rng);
    CHECK_THROWS_AS(predict_mvrkm(model, wrong.views), ViewMismatchError);
    CHECK_THROWS_AS(predict_mvrkm(model, {}), ViewMismatchError);
}

TEST_CASE("mvrkm JSON round trip preserves scores") {
    auto [train, test] = fixtures::blob_multiview(40, 77);
    const MvrkmModel model = fit_mvrkm(train, 1.0, 0.1, {KernelKind::rbf, 1.0});
    const MvrkmModel restored =
        mvrkm_from_json(nlohmann::json::parse(mvrkm_to_json(model).dump()));
    CHECK(restored.z == model.z);
    CHECK(restored.b == model.b);
    CHECK(mvrkm_scores(restored, test.views) == mvrkm_scores(model, test.views));
}

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "support/fixtures.hpp"
#include "twinview/dataio.hpp"
#include "twinview/synthetic.hpp"

using namespace twinview;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("twinview_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("load_csv maps {0,1} labels onto {-1,+1}") {
    const fs::path dir = scratch_dir("labels01");
    write_file(dir / "d.csv", "a,b,label\n1,2,0\n3,4,1\n5,6,0\n");
    const Dataset ds = load_csv((dir / "d.csv").string());
    REQUIRE(ds.y.size() == 3);
    CHECK(ds.y[0] == -1);
    CHECK(ds.y[1] == 1);
    CHECK(ds.y[2] == -1);
}

TEST_CASE("load_csv honors a named label column") {
    const fs::path dir = scratch_dir("labelcol");
    write_file(dir / "d.csv", "label,a,b\n1,10,20\n-1,30,40\n");
    const Dataset ds = load_csv((dir / "d.csv").string(), "label");
    CHECK(ds.y[0] == 1);
    CHECK(ds.y[1] == -1);
    CHECK(ds.X(0, 0) == 10.0);
    CHECK(ds.X(1, 1) == 40.0);
}

TEST_CASE("load_csv reports ragged rows by number") {
    const fs::path dir = scratch_dir("ragged");
    write_file(dir / "d.csv", "a,b,label\n1,2,1\n3,4\n");
    try {
        load_csv((dir / "d.csv").string());
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("load_csv reports unmappable labels by number") {
    const fs::path dir = scratch_dir("badlabel");
    write_file(dir / "d.csv", "a,label\n1,1\n2,7\n");
    try {
        load_csv((dir / "d.csv").string());
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("load_csv skips rows with non-numeric feature cells") {
    const fs::path dir = scratch_dir("skipped");
    write_file(dir / "d.csv", "a,b,label\n1,2,1\n?,4,0\n5,6,0\n");
    const Dataset ds = load_csv((dir / "d.csv").string());
    REQUIRE(ds.X.rows() == 2);
    CHECK(ds.X(1, 0) == 5.0);
}

TEST_CASE("load_csv rejects a missing file") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv"), IngestError);
}

TEST_CASE("shipped 12x4 fixture parses to its documented values") {
    const Dataset ds = load_csv(fixtures::fixtures_dir() + "/fixture_12x4.csv");
    Matrix expected(12, 3);
    expected << 0.5, 1.25, -2.0,
                1.5, -0.75, 3.25,
                -2.25, 0.5, 1.0,
                3.0, 2.5, -1.5,
                0.0, -1.0, 2.75,
                -0.5, 3.25, 0.25,
                2.25, -2.5, -0.75,
                1.0, 0.0, 4.0,
                -3.5, 1.75, 2.5,
                0.75, -0.25, -3.0,
                4.25, 2.0, 0.5,
                -1.25, -3.75, 1.5;
    Eigen::VectorXi y(12);
    y << 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1;
    CHECK(ds.X == expected);
    CHECK(ds.y == y);
}

TEST_CASE("standardize: constant columns pass through as zeros") {
    Matrix train(3, 2);
    train << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0;
    Matrix test(1, 2);
    test << 5.0, 10.0;
    const Standardization s = standardize(train, test);
    CHECK(s.train.col(0).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(s.test(0, 0) == 0.0);
    CHECK(s.std[0] == 1.0);
}

TEST_CASE("standardize: train columns centered; stored stats reproduce test") {
    Rng rng(151);
    Matrix train(20, 3), test(7, 3);
    for (Eigen::Index r = 0; r < 20; ++r)
        for (Eigen::Index c = 0; c < 3; ++c)
            train(r, c) = 3.0 * rng.next_normal() + static_cast<double>(c);
    for (Eigen::Index r = 0; r < 7; ++r)
        for (Eigen::Index c = 0; c < 3; ++c) test(r, c) = rng.next_normal();
    const Standardization s = standardize(train, test);
    for (Eigen::Index c = 0; c < 3; ++c)
        CHECK(std::abs(s.train.col(c).mean()) <= 1e-10);
    Matrix replay = test;
    for (Eigen::Index c = 0; c < 3; ++c)
        replay.col(c) = (replay.col(c).array() - s.mean[c]) / s.std[c];
    CHECK(replay == s.test);
}

TEST_CASE("pca_fit on rank-1 data keeps one component") {
    Vector direction(3);
    direction << 1.0, -2.0, 0.5;
    Matrix X(5, 3);
    for (Eigen::Index r = 0; r < 5; ++r)
        X.row(r) = (static_cast<double>(r) - 2.0) * direction.transpose() +
                   Vector::Constant(3, 7.0).transpose();
    const PcaTransform t = pca_fit(X, 0.95);
    REQUIRE(t.components.rows() == 1);
    CHECK_THAT(t.explained_ratio[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("pca_fit keeps both directions of an isotropic 2-D sample") {
    Rng rng(157);
    Matrix X(200, 2);
    for (Eigen::Index r = 0; r < 200; ++r)
        for (Eigen::Index c = 0; c < 2; ++c) X(r, c) = rng.next_normal();
    const PcaTransform t = pca_fit(X, 0.95);
    CHECK(t.components.rows() == 2);
}

TEST_CASE("pca_fit threshold 1.0 keeps the full rank") {
    Rng rng(163);
    Matrix basis(2, 4);
    for (Eigen::Index r = 0; r < 2; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) basis(r, c) = rng.next_normal();
    Matrix coeff(10, 2);
    for (Eigen::Index r = 0; r < 10; ++r)
        for (Eigen::Index c = 0; c < 2; ++c) coeff(r, c) = rng.next_normal();
    const Matrix X = coeff * basis;  // rank 2 in R^4
    const PcaTransform t = pca_fit(X, 1.0);
    CHECK(t.components.rows() == 2);
}

TEST_CASE("pca transform invariants") {
    Rng rng(167);
    Matrix X(30, 5);
    for (Eigen::Index r = 0; r < 30; ++r)
        for (Eigen::Index c = 0; c < 5; ++c) X(r, c) = rng.next_normal();
    const PcaTransform t = pca_fit(X, 1.0);
    const Eigen::Index r = t.components.rows();
    const Matrix gram_c = t.components * t.components.transpose();
    CHECK((gram_c - Matrix::Identity(r, r)).lpNorm<Eigen::Infinity>() <= 1e-8);
    for (Eigen::Index i = 0; i < r; ++i) {
        CHECK(t.explained_ratio[i] >= 0.0);
        CHECK(t.explained_ratio[i] <= 1.0);
        if (i > 0) CHECK(t.explained_ratio[i] <= t.explained_ratio[i - 1]);
    }

    // scores have diagonal covariance
    const Matrix scores = pca_apply(t, X);
    const Matrix centered = scores.rowwise() - scores.colwise().mean();
    const Matrix cov = centered.transpose() * centered;
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            if (i != j) CHECK(std::abs(cov(i, j)) <= 1e-8 * cov.diagonal().maxCoeff());

    // full-rank basis: isometry on the centered data
    const Matrix c0 = X.rowwise() - X.colwise().mean();
    CHECK_THAT(scores.norm(), Catch::Matchers::WithinRel(c0.norm(), 1e-8));
}

TEST_CASE("pca_apply degenerate cases") {
    Vector mean(2);
    mean << 3.0, -1.0;
    PcaTransform t;
    t.mean = mean;
    t.components = Matrix::Identity(2, 2);
    Matrix X(4, 2);
    X << 3.0, -1.0, 3.0, -1.0, 3.0, -1.0, 3.0, -1.0;
    CHECK(pca_apply(t, X).lpNorm<Eigen::Infinity>() == 0.0);
    Matrix wrong(2, 3);
    wrong.setZero();
    CHECK_THROWS_AS(pca_apply(t, wrong), DimensionError);
}

TEST_CASE("make_second_view yields V=2 and fits on train only") {
    const Dataset raw = make_blobs(80, 314);
    const SplitPlan plan = split_70_30(80, 314);
    Dataset train{select_rows(raw.X, plan.train_indices),
                  select_rows(raw.y, plan.train_indices), "train"};
    Dataset test{select_rows(raw.X, plan.test_indices),
                 select_rows(raw.y, plan.test_indices), "test"};
    const auto [mtrain, mtest] = make_second_view(train, test, 1.0);
    REQUIRE(mtrain.views.size() == 2);
    REQUIRE(mtest.views.size() == 2);
    CHECK(mtrain.views[0] == train.X);

    // leakage guard: the test-side view B must come from the train-fitted
    // transform, not one refitted on test
    const PcaTransform leaky = pca_fit(test.X, 1.0);
    const Matrix leaked = pca_apply(leaky, test.X);
    CHECK((mtest.views[1] - leaked).norm() > 1e-12);

    // full-rank transform is an isometry of the centered train features
    const Matrix centered = train.X.rowwise() - train.X.colwise().mean();
    CHECK_THAT(mtrain.views[1].norm(),
               Catch::Matchers::WithinRel(centered.norm(), 1e-8));
}

TEST_CASE("split_70_30 basics") {
    const SplitPlan plan = split_70_30(10, 42);
    CHECK(plan.train_indices.size() == 7);
    CHECK(plan.test_indices.size() == 3);
    const SplitPlan again = split_70_30(10, 42);
    CHECK(plan.train_indices == again.train_indices);
    CHECK(plan.test_indices == again.test_indices);
    const SplitPlan other = split_70_30(10, 43);
    CHECK((plan.train_indices != other.train_indices ||
           plan.test_indices != other.test_indices));
}

TEST_CASE("split_70_30 partitions exactly and keeps the 700/300 ratio") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SplitPlan plan = split_70_30(1000, seed);
        REQUIRE(plan.train_indices.size() == 700);
        REQUIRE(plan.test_indices.size() == 300);
        std::set<Eigen::Index> all(plan.train_indices.begin(),
                                   plan.train_indices.end());
        all.insert(plan.test_indices.begin(), plan.test_indices.end());
        REQUIRE(all.size() == 1000);
        CHECK(*all.begin() == 0);
        CHECK(*all.rbegin() == 999);
    }
}

TEST_CASE("stratified split partitions and balances classes") {
    Eigen::VectorXi y(20);
    for (Eigen::Index i = 0; i < 20; ++i) y[i] = i < 5 ? 1 : -1;
    const SplitPlan plan = split_70_30_stratified(y, 7);
    CHECK(plan.train_indices.size() == 14);
    std::set<Eigen::Index> all(plan.train_indices.begin(), plan.train_indices.end());
    all.insert(plan.test_indices.begin(), plan.test_indices.end());
    CHECK(all.size() == 20);
    Eigen::Index train_pos = 0;
    for (Eigen::Index i : plan.train_indices)
        if (y[i] > 0) ++train_pos;
    CHECK(train_pos >= 3);
    CHECK(train_pos <= 4);
}

TEST_CASE("kfold partitions with near-equal sizes") {
    std::vector<Eigen::Index> idx(10);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    auto folds = kfold(idx, 5, 1);
    REQUIRE(folds.size() == 5);
    for (const auto& f : folds) CHECK(f.size() == 2);

    idx.resize(23);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    folds = kfold(idx, 5, 1);
    std::multiset<std::size_t> sizes;
    std::set<Eigen::Index> all;
    for (const auto& f : folds) {
        sizes.insert(f.size());
        all.insert(f.begin(), f.end());
    }
    CHECK(sizes == std::multiset<std::size_t>({5, 5, 5, 4, 4}));
    CHECK(all.size() == 23);

    CHECK_THROWS_AS(kfold(idx, 1, 1), ConfigError);
    CHECK_THROWS_AS(kfold(std::vector<Eigen::Index>{0, 1}, 3, 1), ConfigError);
}

TEST_CASE("large-N split and fold partitions stay exact") {
    const Eigen::Index n = 10000;
    const SplitPlan plan = split_70_30(n, 9);
    CHECK(plan.train_indices.size() + plan.test_indices.size() ==
          static_cast<std::size_t>(n));
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    const auto folds = kfold(idx, 10, 9);
    std::set<Eigen::Index> all;
    std::size_t total = 0;
    for (const auto& f : folds) {
        total += f.size();
        all.insert(f.begin(), f.end());
    }
    CHECK(total == static_cast<std::size_t>(n));
    CHECK(all.size() == static_cast<std::size_t>(n));
}

TEST_CASE("matrix CSV round trip is exact") {
    const fs::path dir = scratch_dir("roundtrip");
    Rng rng(173);
    Matrix m(6, 3);
    for (Eigen::Index r = 0; r < 6; ++r)
        for (Eigen::Index c = 0; c < 3; ++c) m(r, c) = rng.next_normal() * 1e3;
    const std::string path = (dir / "m.csv").string();
    write_matrix_csv(path, m);
    CHECK(read_matrix_csv(path) == m);

    Eigen::VectorXi y(4);
    y << 1, -1, -1, 1;
    const std::string ypath = (dir / "y.csv").string();
    write_labels_csv(ypath, y);
    CHECK(read_labels_csv(ypath) == y);
}

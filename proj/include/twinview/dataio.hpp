#ifndef TWINVIEW_DATAIO_HPP
#define TWINVIEW_DATAIO_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twinview/errors.hpp"
#include "twinview/kernel.hpp"
#include "twinview/rng.hpp"

namespace twinview {

/// Single-view dataset: features plus a +/-1 label vector.
struct Dataset {
    Matrix X;
    Eigen::VectorXi y;
    std::string name;

    void validate() const {
        if (X.rows() < 2) throw IngestError(name + ": need at least 2 rows");
        if (X.rows() != y.size())
            throw IngestError(name + ": feature/label row mismatch");
        if (!X.allFinite()) throw IngestError(name + ": non-finite entries");
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (y[i] != 1 && y[i] != -1)
                throw IngestError(name + ": labels must be +/-1");
    }
};

/// V aligned feature matrices over the same samples.
struct MultiviewDataset {
    std::vector<Matrix> views;
    Eigen::VectorXi y;
    std::string name;

    Eigen::Index sample_count() const {
        return views.empty() ? 0 : views[0].rows();
    }

    void validate() const {
        if (views.empty())
            throw ViewMismatchError(name + ": at least one view required");
        for (const Matrix& v : views)
            if (v.rows() != views[0].rows())
                throw ViewMismatchError(name + ": views disagree on row count");
        if (y.size() != views[0].rows())
            throw ViewMismatchError(name + ": label/view row mismatch");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (*begin == '+') ++begin;  // from_chars rejects a leading plus
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end && std::isfinite(out);
}

/// Shortest round-trip decimal rendering.
inline std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

}  // namespace detail

/// Parses a header-first CSV into a Dataset. The label column is the last
/// one unless a header name is given. Labels must be -1, +1, 0 or 1 (0 maps
/// to -1). Rows with a non-numeric feature cell are skipped; ragged rows and
/// unmappable labels are hard errors naming the row.
inline Dataset load_csv(const std::string& path,
                        const std::string& label_column = "") {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(path + ": empty file");
    const std::vector<std::string> header = detail::split_csv_line(line);
    if (header.size() < 2)
        throw IngestError(path + ": need at least one feature and a label column");

    std::size_t label_idx = header.size() - 1;
    if (!label_column.empty()) {
        const auto it = std::find(header.begin(), header.end(), label_column);
        if (it == header.end())
            throw IngestError(path + ": label column '" + label_column +
                              "' not in header");
        label_idx = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw IngestError(path + ": ragged row " + std::to_string(line_no) +
                              " (" + std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()) + ")");
        double label_value = 0.0;
        if (!detail::parse_double(cells[label_idx], label_value) ||
            (label_value != -1.0 && label_value != 0.0 && label_value != 1.0))
            throw IngestError(path + ": unmappable label '" + cells[label_idx] +
                              "' at row " + std::to_string(line_no));
        std::vector<double> features;
        features.reserve(header.size() - 1);
        bool ok = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_idx) continue;
            double v = 0.0;
            if (!detail::parse_double(cells[c], v)) {
                ok = false;
                break;
            }
            features.push_back(v);
        }
        if (!ok) continue;  // non-numeric feature cell: row rejected
        rows.push_back(std::move(features));
        labels.push_back(label_value == 1.0 ? 1 : -1);
    }
    if (rows.empty()) throw IngestError(path + ": no usable data rows");

    Dataset ds;
    ds.name = path;
    ds.X.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows[0].size()));
    ds.y.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
        ds.y[static_cast<Eigen::Index>(i)] = labels[i];
    }
    return ds;
}

struct Standardization {
    Matrix train;
    Matrix test;
    Vector mean;
    Vector std;
};

/// Per-column z-score with statistics taken from train only. Columns whose
/// std is below 1e-12 are centered and passed through with divisor 1.
inline Standardization standardize(const Matrix& train, const Matrix& test) {
    if (train.rows() == 0) throw IngestError("standardize: empty train matrix");
    if (test.rows() > 0 && test.cols() != train.cols())
        throw DimensionError("standardize: train/test column mismatch");
    Standardization out;
    out.mean = train.colwise().mean();
    out.std.resize(train.cols());
    for (Eigen::Index c = 0; c < train.cols(); ++c) {
        const double var =
            (train.col(c).array() - out.mean[c]).square().sum() /
            static_cast<double>(train.rows());
        const double sd = std::sqrt(var);
        out.std[c] = sd < 1e-12 ? 1.0 : sd;
    }
    const auto apply = [&](const Matrix& m) -> Matrix {
        Matrix r = m;
        for (Eigen::Index c = 0; c < r.cols(); ++c)
            r.col(c) = (r.col(c).array() - out.mean[c]) / out.std[c];
        return r;
    };
    out.train = apply(train);
    if (test.rows() > 0) out.test = apply(test);
    return out;
}

/// Centering vector plus the top principal directions (orthonormal rows).
struct PcaTransform {
    Vector mean;
    Matrix components;       // r x d
    Vector explained_ratio;  // length r, nonincreasing
};

/// Keeps the smallest component count whose cumulative explained-variance
/// ratio reaches the threshold (at least one component; a threshold of 1
/// retains the full rank of the centered data).
inline PcaTransform pca_fit(const Matrix& X, double variance_threshold = 0.95) {
    if (!X.allFinite()) throw IngestError("pca_fit: non-finite input");
    if (X.rows() < 2) throw IngestError("pca_fit: need at least 2 rows");
    if (!(variance_threshold > 0.0) || variance_threshold > 1.0)
        throw ConfigError("pca_fit: threshold must be in (0, 1]");

    PcaTransform t;
    t.mean = X.colwise().mean();
    Matrix centered = X.rowwise() - t.mean.transpose();
    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
    const Vector sv = svd.singularValues();
    const double total = sv.squaredNorm();
    const double rank_tol =
        std::max(X.rows(), X.cols()) * 1e-12 * (sv.size() > 0 ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rank_tol) ++rank;
    rank = std::max<Eigen::Index>(rank, 1);

    Eigen::Index r = rank;
    if (variance_threshold < 1.0 && total > 0.0) {
        double cum = 0.0;
        for (Eigen::Index i = 0; i < rank; ++i) {
            cum += sv[i] * sv[i] / total;
            if (cum >= variance_threshold) {
                r = i + 1;
                break;
            }
        }
    }
    t.components = svd.matrixV().leftCols(r).transpose();
    t.explained_ratio.resize(r);
    for (Eigen::Index i = 0; i < r; ++i)
        t.explained_ratio[i] = total > 0.0 ? sv[i] * sv[i] / total : 0.0;
    return t;
}

inline Matrix pca_apply(const PcaTransform& t, const Matrix& X) {
    if (X.cols() != t.mean.size())
        throw DimensionError("pca_apply: column count mismatch (" +
                             std::to_string(X.cols()) + " vs " +
                             std::to_string(t.mean.size()) + ")");
    return (X.rowwise() - t.mean.transpose()) * t.components.transpose();
}

/// Synthesizes the second view: view A is the original feature matrix, view
/// B the principal-component scores of a transform fitted on train features
/// only (test never influences the transform).
inline std::pair<MultiviewDataset, MultiviewDataset> make_second_view(
    const Dataset& train, const Dataset& test, double threshold = 0.95) {
    const PcaTransform t = pca_fit(train.X, threshold);
    MultiviewDataset mtrain{{train.X, pca_apply(t, train.X)}, train.y, train.name};
    MultiviewDataset mtest{{test.X, pca_apply(t, test.X)}, test.y, test.name};
    return {std::move(mtrain), std::move(mtest)};
}

struct SplitPlan {
    std::vector<Eigen::Index> train_indices;
    std::vector<Eigen::Index> test_indices;
    std::uint64_t seed = 0;
};

/// Uniform random 70:30 split from the documented seeded generator;
/// round(0.70 N) rows train.
inline SplitPlan split_70_30(Eigen::Index n, std::uint64_t seed) {
    if (n < 4) throw ConfigError("split_70_30: need at least 4 samples");
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    Rng rng(seed);
    rng.shuffle(perm);
    const auto n_train = static_cast<std::size_t>(
        std::llround(0.70 * static_cast<double>(n)));
    SplitPlan plan;
    plan.seed = seed;
    plan.train_indices.assign(perm.begin(), perm.begin() + n_train);
    plan.test_indices.assign(perm.begin() + n_train, perm.end());
    return plan;
}

/// Class-stratified 70:30 split (off by default in the pipeline, which
/// divides plain-randomly). Per-class 70% rounding is adjusted so the total
/// train size stays round(0.70 N).
inline SplitPlan split_70_30_stratified(const Eigen::VectorXi& y,
                                        std::uint64_t seed) {
    const Eigen::Index n = y.size();
    if (n < 4) throw ConfigError("split_70_30_stratified: need at least 4 samples");
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = 0; i < n; ++i) (y[i] > 0 ? pos : neg).push_back(i);
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    const auto total_train = static_cast<std::size_t>(
        std::llround(0.70 * static_cast<double>(n)));
    std::size_t pos_train = static_cast<std::size_t>(
        std::llround(0.70 * static_cast<double>(pos.size())));
    pos_train = std::min(pos_train, pos.size());
    std::size_t neg_train = std::min(total_train - std::min(total_train, pos_train),
                                     neg.size());
    // rounding drift: top up from whichever class still has spare samples
    while (pos_train + neg_train < total_train) {
        if (pos_train < pos.size())
            ++pos_train;
        else if (neg_train < neg.size())
            ++neg_train;
        else
            break;
    }
    SplitPlan plan;
    plan.seed = seed;
    plan.train_indices.assign(pos.begin(), pos.begin() + pos_train);
    plan.train_indices.insert(plan.train_indices.end(), neg.begin(),
                              neg.begin() + neg_train);
    plan.test_indices.assign(pos.begin() + pos_train, pos.end());
    plan.test_indices.insert(plan.test_indices.end(), neg.begin() + neg_train,
                             neg.end());
    return plan;
}

/// Shuffled partition into k folds with sizes differing by at most one.
inline std::vector<std::vector<Eigen::Index>> kfold(
    std::vector<Eigen::Index> indices, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("kfold: k must be >= 2");
    if (indices.size() < static_cast<std::size_t>(k))
        throw ConfigError("kfold: fewer indices than folds");
    Rng rng(seed);
    rng.shuffle(indices);
    std::vector<std::vector<Eigen::Index>> folds(static_cast<std::size_t>(k));
    const std::size_t base = indices.size() / static_cast<std::size_t>(k);
    const std::size_t extra = indices.size() % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        folds[f].assign(indices.begin() + pos, indices.begin() + pos + size);
        pos += size;
    }
    return folds;
}

inline Matrix select_rows(const Matrix& m, const std::vector<Eigen::Index>& idx) {
    Matrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
    return out;
}

inline Eigen::VectorXi select_rows(const Eigen::VectorXi& v,
                                   const std::vector<Eigen::Index>& idx) {
    Eigen::VectorXi out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = v[idx[i]];
    return out;
}

inline MultiviewDataset select_rows(const MultiviewDataset& data,
                                    const std::vector<Eigen::Index>& idx) {
    MultiviewDataset out;
    out.name = data.name;
    out.y = select_rows(data.y, idx);
    out.views.reserve(data.views.size());
    for (const Matrix& v : data.views) out.views.push_back(select_rows(v, idx));
    return out;
}

inline void write_matrix_csv(const std::string& path, const Matrix& m,
                             const std::string& col_prefix = "f") {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        out << (c ? "," : "") << col_prefix << c;
    out << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out << (c ? "," : "") << detail::format_double(m(r, c));
        out << "\n";
    }
}

inline void write_labels_csv(const std::string& path, const Eigen::VectorXi& y) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path);
    out << "label\n";
    for (Eigen::Index i = 0; i < y.size(); ++i) out << y[i] << "\n";
}

inline Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(path + ": empty file");
    const std::size_t cols = detail::split_csv_line(line).size();
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != cols)
            throw IngestError(path + ": ragged row " + std::to_string(line_no));
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!detail::parse_double(cells[c], row[c]))
                throw IngestError(path + ": non-numeric cell at row " +
                                  std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    return m;
}

inline Eigen::VectorXi read_labels_csv(const std::string& path) {
    const Matrix m = read_matrix_csv(path);
    if (m.cols() != 1) throw IngestError(path + ": expected a single label column");
    Eigen::VectorXi y(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double v = m(i, 0);
        if (v != 1.0 && v != -1.0 && v != 0.0)
            throw IngestError(path + ": unmappable label at row " +
                              std::to_string(i + 2));
        y[i] = v == 1.0 ? 1 : -1;
    }
    return y;
}

}  // namespace twinview

#endif

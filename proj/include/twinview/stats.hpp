#ifndef TWINVIEW_STATS_HPP
#define TWINVIEW_STATS_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "twinview/dataio.hpp"
#include "twinview/errors.hpp"
#include "twinview/kernel.hpp"

namespace twinview {

/// Accuracies per (dataset, model). Canonical form is fractions in [0, 1];
/// percent tables are declared explicitly and rescaled on construction.
struct AccuracyTable {
    Matrix values;  // K datasets x l models
    std::vector<std::string> model_names;
    std::vector<std::string> dataset_names;

    Eigen::Index dataset_count() const { return values.rows(); }
    Eigen::Index model_count() const { return values.cols(); }

    void validate() const {
        if (values.rows() < 2 || values.cols() < 2)
            throw StatsError("accuracy table needs at least 2 datasets and 2 models");
        if (!values.allFinite())
            throw StatsError("accuracy table has absent or non-finite cells");
        if ((values.array() < 0.0).any() || (values.array() > 1.0).any())
            throw StatsError("accuracies must lie in [0, 1] (use the percent flag?)");
    }
};

struct RankSummary {
    Matrix rank_matrix;  // K x l, fractional ranks for ties
    Vector avg_ranks;    // length l
    Eigen::Index K = 0;
    Eigen::Index l = 0;
};

/// Per dataset, rank 1 goes to the highest accuracy; ties share the average
/// of the tied positions.
inline RankSummary rank_models(const AccuracyTable& table) {
    table.validate();
    const Eigen::Index K = table.dataset_count();
    const Eigen::Index l = table.model_count();
    RankSummary out;
    out.K = K;
    out.l = l;
    out.rank_matrix.resize(K, l);
    for (Eigen::Index i = 0; i < K; ++i) {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(l));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) {
                             return table.values(i, a) > table.values(i, b);
                         });
        Eigen::Index pos = 0;
        while (pos < l) {
            Eigen::Index end = pos;
            while (end + 1 < l &&
                   table.values(i, order[end + 1]) == table.values(i, order[pos]))
                ++end;
            // Positions pos..end (0-based) tie; their ranks average to
            // (pos + end)/2 + 1 in 1-based terms.
            const double rank =
                static_cast<double>(pos + end) / 2.0 + 1.0;
            for (Eigen::Index k = pos; k <= end; ++k)
                out.rank_matrix(i, order[k]) = rank;
            pos = end + 1;
        }
    }
    out.avg_ranks = out.rank_matrix.colwise().mean();
    return out;
}

/// chi^2_F = 12K / (l(l+1)) [ sum_j R_j^2 - l(l+1)^2 / 4 ].
inline double friedman_chi2(const Vector& avg_ranks, Eigen::Index K) {
    const auto l = avg_ranks.size();
    if (l < 2 || K < 2)
        throw StatsError("friedman_chi2: need at least 2 models and 2 datasets");
    const double dl = static_cast<double>(l);
    const double dK = static_cast<double>(K);
    return 12.0 * dK / (dl * (dl + 1.0)) *
           (avg_ranks.squaredNorm() - dl * (dl + 1.0) * (dl + 1.0) / 4.0);
}

/// F_F = (K-1) chi^2_F / (K(l-1) - chi^2_F), with d.o.f.
/// (l-1, (K-1)(l-1)).
inline double friedman_F(double chi2, Eigen::Index K, Eigen::Index l) {
    const double denom = static_cast<double>(K) * static_cast<double>(l - 1) - chi2;
    if (denom <= 0.0)
        throw StatsError("friedman_F: chi-squared at or beyond its maximum");
    return static_cast<double>(K - 1) * chi2 / denom;
}

/// C.D. = q_alpha * sqrt(l(l+1) / (6K)).
inline double nemenyi_cd(double q_alpha, Eigen::Index l, Eigen::Index K) {
    if (!(q_alpha >= 0.0) || l < 2 || K < 1)
        throw StatsError("nemenyi_cd: invalid arguments");
    const double dl = static_cast<double>(l);
    return q_alpha * std::sqrt(dl * (dl + 1.0) / (6.0 * static_cast<double>(K)));
}

struct ComparisonReport {
    RankSummary ranks;
    double chi2 = 0.0;
    double F = 0.0;
    Eigen::Index df1 = 0;
    Eigen::Index df2 = 0;
    double cd = 0.0;
    double q_alpha = 0.0;
    Matrix rank_gaps;                 // |R_i - R_j|, l x l
    Eigen::MatrixX<bool> significant; // gap > cd
    std::string cd_note;              // set when inputs match the l=6, K=27 shape
};

inline ComparisonReport compare(const AccuracyTable& table,
                                double q_alpha = 2.850) {
    ComparisonReport report;
    report.ranks = rank_models(table);
    const Eigen::Index K = report.ranks.K;
    const Eigen::Index l = report.ranks.l;
    report.chi2 = friedman_chi2(report.ranks.avg_ranks, K);
    report.F = friedman_F(report.chi2, K, l);
    report.df1 = l - 1;
    report.df2 = (K - 1) * (l - 1);
    report.q_alpha = q_alpha;
    report.cd = nemenyi_cd(q_alpha, l, K);
    report.rank_gaps.resize(l, l);
    report.significant.resize(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        for (Eigen::Index j = 0; j < l; ++j) {
            report.rank_gaps(i, j) =
                std::abs(report.ranks.avg_ranks[i] - report.ranks.avg_ranks[j]);
            report.significant(i, j) = report.rank_gaps(i, j) > report.cd;
        }
    if (l == 6 && K == 27 && q_alpha == 2.850)
        report.cd_note =
            "note: the formula q*sqrt(l(l+1)/(6K)) with q=2.850, l=6, K=27 "
            "gives C.D. = " + std::to_string(report.cd) +
            "; a published table for this shape prints 1.4788 instead";
    return report;
}

/// Reads a datasets-x-models CSV: header row of model names (first cell is
/// the dataset-name column), one dataset per row. Set percent=true for
/// tables on the [0, 100] scale.
inline AccuracyTable load_accuracy_table(const std::string& path,
                                         bool percent = false) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(path + ": empty file");
    const auto header = detail::split_csv_line(line);
    if (header.size() < 2)
        throw IngestError(path + ": need at least one model column");
    AccuracyTable table;
    table.model_names.assign(header.begin() + 1, header.end());
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw IngestError(path + ": ragged row " + std::to_string(line_no));
        table.dataset_names.push_back(cells[0]);
        std::vector<double> row(cells.size() - 1);
        for (std::size_t c = 1; c < cells.size(); ++c)
            if (!detail::parse_double(cells[c], row[c - 1]))
                throw StatsError(path + ": non-numeric accuracy at row " +
                                 std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    table.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(table.model_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            table.values(static_cast<Eigen::Index>(i),
                         static_cast<Eigen::Index>(j)) = rows[i][j];
    if (percent) table.values /= 100.0;
    return table;
}

}  // namespace twinview

#endif

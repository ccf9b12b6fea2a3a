#ifndef TWINVIEW_EVALUATION_HPP
#define TWINVIEW_EVALUATION_HPP

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twinview/dataio.hpp"
#include "twinview/errors.hpp"
#include "twinview/model_io.hpp"
#include "twinview/mvrkm.hpp"
#include "twinview/stats.hpp"
#include "twinview/tmvrkm.hpp"

namespace twinview {

enum class ModelKind { tmvrkm, mvrkm };

inline std::string to_string(ModelKind k) {
    return k == ModelKind::tmvrkm ? "tmvrkm" : "mvrkm";
}

inline ModelKind model_kind_from_string(const std::string& s) {
    if (s == "tmvrkm") return ModelKind::tmvrkm;
    if (s == "mvrkm") return ModelKind::mvrkm;
    throw ConfigError("unknown model kind: " + s);
}

/// Hyperparameter search space. Defaults follow the usual powers-of-two
/// sigma grid and powers-of-ten penalty grids, with eta2/lambda2 tied to
/// eta1/lambda1.
struct GridSpec {
    std::vector<double> sigma_grid;
    std::vector<double> eta_grid;
    std::vector<double> lambda_grid;
    bool tie_eta = true;
    bool tie_lambda = true;

    static std::vector<double> geometric(double base, int lo, int hi) {
        std::vector<double> g;
        for (int e = lo; e <= hi; ++e) g.push_back(std::pow(base, e));
        return g;
    }

    static GridSpec defaults() {
        GridSpec g;
        g.sigma_grid = geometric(2.0, -5, 5);
        g.eta_grid = geometric(10.0, -5, 5);
        g.lambda_grid = geometric(10.0, -5, 5);
        return g;
    }

    void validate() const {
        if (sigma_grid.empty() || eta_grid.empty() || lambda_grid.empty())
            throw ConfigError("grid: all grids must be nonempty");
        for (const auto* grid : {&sigma_grid, &eta_grid, &lambda_grid})
            for (double v : *grid)
                if (!(v > 0.0)) throw ConfigError("grid: values must be positive");
    }
};

struct CvResult {
    TmvrkmHyperParams params;
    double mean_acc = 0.0;
    std::vector<double> fold_accs;
    int skipped_folds = 0;
};

inline double accuracy(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
    if (pred.size() != truth.size() || pred.size() == 0)
        throw DimensionError("accuracy: label vectors must have equal nonzero length");
    Eigen::Index hits = 0;
    for (Eigen::Index i = 0; i < pred.size(); ++i)
        if (pred[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

inline ClassSplit split_by_class(const MultiviewDataset& data) {
    data.validate();
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = 0; i < data.y.size(); ++i)
        (data.y[i] > 0 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty())
        throw DegenerateClassError(data.name + ": training data must contain both classes");
    ClassSplit split;
    for (const Matrix& v : data.views) {
        split.A_views.push_back(select_rows(v, pos));
        split.B_views.push_back(select_rows(v, neg));
    }
    return split;
}

using AnyModel = std::variant<TmvrkmModel, MvrkmModel>;

inline AnyModel fit_model(ModelKind kind, const MultiviewDataset& train,
                          const TmvrkmHyperParams& params) {
    if (kind == ModelKind::tmvrkm)
        return fit(split_by_class(train), params);
    return fit_mvrkm(train, params.eta1, params.lambda1, params.kernel);
}

inline Eigen::VectorXi predict_model(const AnyModel& model,
                                     const std::vector<Matrix>& X_views) {
    if (std::holds_alternative<TmvrkmModel>(model))
        return predict(std::get<TmvrkmModel>(model), X_views);
    return predict_mvrkm(std::get<MvrkmModel>(model), X_views);
}

namespace detail {

inline unsigned resolve_thread_count(std::size_t work_items) {
    unsigned n = 0;
    if (const char* env = std::getenv("TWINVIEW_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) n = static_cast<unsigned>(parsed);
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(
        std::min<std::size_t>(n, std::max<std::size_t>(work_items, 1)));
}

/// Index-based parallel for. Results keyed by index keep output canonical
/// regardless of completion order.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned threads = resolve_thread_count(n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

struct GridPoint {
    double sigma, eta1, eta2, lambda1, lambda2;
};

/// Lexicographic ascending enumeration (sigma slowest) so that the
/// first-strict-max selection breaks ties toward smaller sigma, then eta,
/// then lambda.
inline std::vector<GridPoint> enumerate_grid(const GridSpec& grid) {
    std::vector<GridPoint> points;
    for (double sigma : grid.sigma_grid)
        for (double eta1 : grid.eta_grid) {
            const std::vector<double> eta2s =
                grid.tie_eta ? std::vector<double>{eta1} : grid.eta_grid;
            for (double eta2 : eta2s)
                for (double lambda1 : grid.lambda_grid) {
                    const std::vector<double> lambda2s =
                        grid.tie_lambda ? std::vector<double>{lambda1}
                                        : grid.lambda_grid;
                    for (double lambda2 : lambda2s)
                        points.push_back({sigma, eta1, eta2, lambda1, lambda2});
                }
        }
    return points;
}

}  // namespace detail

/// k-fold cross-validated grid search. One fold plan, fixed before the grid
/// loop, is shared by every configuration; a fold whose training complement
/// lacks a class is skipped for that configuration. Returns the first
/// configuration (in ascending grid order) attaining the best mean accuracy.
inline CvResult grid_search(const MultiviewDataset& train, ModelKind kind,
                            const GridSpec& grid,
                            TmvrkmVariant variant = TmvrkmVariant::derivation_consistent,
                            int k = 5, std::uint64_t seed = 0,
                            KernelKind kernel_kind = KernelKind::rbf) {
    train.validate();
    grid.validate();
    std::vector<Eigen::Index> indices(static_cast<std::size_t>(train.sample_count()));
    std::iota(indices.begin(), indices.end(), Eigen::Index{0});
    const auto folds = kfold(indices, k, seed);

    struct FoldData {
        MultiviewDataset fit_part;
        MultiviewDataset val_part;
        bool usable = false;
    };
    std::vector<FoldData> fold_data(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<Eigen::Index> fit_idx;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f)
                fit_idx.insert(fit_idx.end(), folds[g].begin(), folds[g].end());
        fold_data[f].fit_part = select_rows(train, fit_idx);
        fold_data[f].val_part = select_rows(train, folds[f]);
        bool has_pos = false, has_neg = false;
        for (Eigen::Index i = 0; i < fold_data[f].fit_part.y.size(); ++i)
            (fold_data[f].fit_part.y[i] > 0 ? has_pos : has_neg) = true;
        fold_data[f].usable = has_pos && has_neg;
    }

    const std::vector<detail::GridPoint> points = detail::enumerate_grid(grid);
    struct PointResult {
        bool ok = false;
        double mean = 0.0;
        std::vector<double> fold_accs;
        int skipped = 0;
    };
    std::vector<PointResult> results(points.size());

    detail::parallel_for(points.size(), [&](std::size_t p) {
        const detail::GridPoint& gp = points[p];
        TmvrkmHyperParams params;
        params.eta1 = gp.eta1;
        params.eta2 = gp.eta2;
        params.lambda1 = gp.lambda1;
        params.lambda2 = gp.lambda2;
        params.kernel = KernelSpec{kernel_kind, gp.sigma};
        params.variant = variant;
        PointResult& res = results[p];
        for (const FoldData& fd : fold_data) {
            if (!fd.usable) {
                ++res.skipped;
                continue;
            }
            try {
                const AnyModel model = fit_model(kind, fd.fit_part, params);
                const Eigen::VectorXi pred = predict_model(model, fd.val_part.views);
                res.fold_accs.push_back(accuracy(pred, fd.val_part.y));
            } catch (const Error&) {
                ++res.skipped;
            }
        }
        if (!res.fold_accs.empty()) {
            res.ok = true;
            double sum = 0.0;
            for (double a : res.fold_accs) sum += a;
            res.mean = sum / static_cast<double>(res.fold_accs.size());
        }
    });

    std::size_t best = points.size();
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (!results[p].ok) continue;
        if (best == points.size() || results[p].mean > results[best].mean) best = p;
    }
    if (best == points.size())
        throw TuningError("grid_search: every configuration failed");

    CvResult out;
    out.params.eta1 = points[best].eta1;
    out.params.eta2 = points[best].eta2;
    out.params.lambda1 = points[best].lambda1;
    out.params.lambda2 = points[best].lambda2;
    out.params.kernel = KernelSpec{kernel_kind, points[best].sigma};
    out.params.variant = variant;
    out.mean_acc = results[best].mean;
    out.fold_accs = results[best].fold_accs;
    out.skipped_folds = results[best].skipped;
    return out;
}

struct DatasetSpec {
    std::string path;
    std::string name;
    std::string label_col;                 // empty: last column
    std::vector<std::string> native_views; // extra per-view CSVs; empty: PCA synthesis
};

struct BenchmarkConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<ModelKind> models;
    std::uint64_t seed = 0;
    GridSpec grids = GridSpec::defaults();
    TmvrkmVariant variant = TmvrkmVariant::derivation_consistent;
    double pca_threshold = 0.95;
    int cv_folds = 5;
    bool include_timings = false;
    std::string external_table;            // optional CSV of externally produced accuracies
    bool external_percent = false;
};

struct ModelCell {
    bool ok = false;
    std::string error;
    double test_accuracy = 0.0;
    double cv_mean = 0.0;
    std::vector<double> fold_accs;
    TmvrkmHyperParams params;
    double fit_seconds = 0.0;
    double predict_seconds = 0.0;
    bool has_timing = false;
};

struct BenchmarkReport {
    std::uint64_t seed = 0;
    std::string variant;
    std::vector<std::string> model_names;
    std::vector<std::string> dataset_names;
    // results[dataset][model]
    std::map<std::string, std::map<std::string, ModelCell>> results;
    // external[model][dataset]: imported accuracy columns, preserved verbatim
    std::map<std::string, std::map<std::string, double>> external;
    std::vector<std::string> notes;
};

inline constexpr int kReportSchemaVersion = 1;

inline void import_external_columns(BenchmarkReport& report,
                                    const std::string& csv_path,
                                    bool percent = false) {
    std::ifstream in(csv_path);
    if (!in) throw IngestError("cannot open " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw IngestError(csv_path + ": empty file");
    const auto header = detail::split_csv_line(line);
    if (header.size() < 2)
        throw IngestError(csv_path + ": need at least one model column");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw IngestError(csv_path + ": ragged row " + std::to_string(line_no));
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v = 0.0;
            if (!detail::parse_double(cells[c], v))
                throw IngestError(csv_path + ": non-numeric cell at row " +
                                  std::to_string(line_no));
            report.external[header[c]][cells[0]] = percent ? v / 100.0 : v;
        }
    }
}

/// Full protocol per dataset: ingest, 70:30 split, per-view standardization
/// from train statistics, PCA second-view synthesis (unless views are
/// native), grid search on train, refit, test accuracy. Per-dataset failures
/// are recorded in the report and the run continues.
inline BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    if (config.models.empty()) throw ConfigError("benchmark: no models listed");
    config.grids.validate();
    BenchmarkReport report;
    report.seed = config.seed;
    report.variant = to_string(config.variant);
    for (ModelKind m : config.models) report.model_names.push_back(to_string(m));

    for (const DatasetSpec& spec : config.datasets) {
        const std::string ds_name = spec.name.empty() ? spec.path : spec.name;
        report.dataset_names.push_back(ds_name);
        auto& row = report.results[ds_name];
        MultiviewDataset train_mv, test_mv;
        try {
            std::vector<Dataset> raw;
            raw.push_back(load_csv(spec.path, spec.label_col));
            for (const std::string& vp : spec.native_views) {
                raw.push_back(load_csv(vp, spec.label_col));
                if (raw.back().y.size() != raw.front().y.size() ||
                    raw.back().y != raw.front().y)
                    throw IngestError(ds_name + ": native view " + vp +
                                      " disagrees on labels");
            }
            for (Dataset& d : raw) d.validate();
            const Eigen::Index n = raw.front().X.rows();
            const SplitPlan plan = split_70_30(n, config.seed);

            train_mv.name = ds_name;
            test_mv.name = ds_name;
            train_mv.y = select_rows(raw.front().y, plan.train_indices);
            test_mv.y = select_rows(raw.front().y, plan.test_indices);
            for (const Dataset& d : raw) {
                const Standardization std_view =
                    standardize(select_rows(d.X, plan.train_indices),
                                select_rows(d.X, plan.test_indices));
                train_mv.views.push_back(std_view.train);
                test_mv.views.push_back(std_view.test);
            }
            if (spec.native_views.empty()) {
                const PcaTransform t =
                    pca_fit(train_mv.views[0], config.pca_threshold);
                train_mv.views.push_back(pca_apply(t, train_mv.views[0]));
                test_mv.views.push_back(pca_apply(t, test_mv.views[0]));
            }
        } catch (const Error& e) {
            for (ModelKind m : config.models) {
                ModelCell cell;
                cell.error = e.what();
                row[to_string(m)] = cell;
            }
            report.notes.push_back(ds_name + ": " + e.what());
            continue;
        }

        for (ModelKind kind : config.models) {
            ModelCell cell;
            try {
                const CvResult cv =
                    grid_search(train_mv, kind, config.grids, config.variant,
                                config.cv_folds, config.seed);
                const auto t0 = std::chrono::steady_clock::now();
                const AnyModel model = fit_model(kind, train_mv, cv.params);
                const auto t1 = std::chrono::steady_clock::now();
                const Eigen::VectorXi pred = predict_model(model, test_mv.views);
                const auto t2 = std::chrono::steady_clock::now();
                cell.ok = true;
                cell.test_accuracy = accuracy(pred, test_mv.y);
                cell.cv_mean = cv.mean_acc;
                cell.fold_accs = cv.fold_accs;
                cell.params = cv.params;
                cell.fit_seconds = std::chrono::duration<double>(t1 - t0).count();
                cell.predict_seconds = std::chrono::duration<double>(t2 - t1).count();
                cell.has_timing = config.include_timings;
            } catch (const Error& e) {
                cell.error = e.what();
                report.notes.push_back(ds_name + "/" + to_string(kind) + ": " +
                                       e.what());
            }
            row[to_string(kind)] = cell;
        }
    }

    if (!config.external_table.empty())
        import_external_columns(report, config.external_table,
                                config.external_percent);
    return report;
}

inline nlohmann::json report_to_json(const BenchmarkReport& report) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["seed"] = report.seed;
    j["variant"] = report.variant;
    j["models"] = report.model_names;
    j["datasets"] = report.dataset_names;
    nlohmann::json results = nlohmann::json::object();
    for (const auto& [ds, row] : report.results) {
        nlohmann::json jrow = nlohmann::json::object();
        for (const auto& [model, cell] : row) {
            nlohmann::json jc;
            jc["ok"] = cell.ok;
            if (cell.ok) {
                jc["accuracy"] = cell.test_accuracy;
                jc["cv_mean"] = cell.cv_mean;
                jc["fold_accs"] = cell.fold_accs;
                jc["params"] = {
                    {"sigma", cell.params.kernel.sigma},
                    {"kernel", to_string(cell.params.kernel.kind)},
                    {"eta1", cell.params.eta1},
                    {"eta2", cell.params.eta2},
                    {"lambda1", cell.params.lambda1},
                    {"lambda2", cell.params.lambda2},
                };
                if (cell.has_timing) {
                    jc["fit_seconds"] = cell.fit_seconds;
                    jc["predict_seconds"] = cell.predict_seconds;
                }
            } else {
                jc["error"] = cell.error;
            }
            jrow[model] = jc;
        }
        results[ds] = jrow;
    }
    j["results"] = results;
    j["external"] = report.external;
    j["notes"] = report.notes;
    return j;
}

inline BenchmarkReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema_version", -1) != kReportSchemaVersion)
        throw ReportFormatError("report: missing or unsupported schema_version");
    BenchmarkReport report;
    try {
        report.seed = j.at("seed").get<std::uint64_t>();
        report.variant = j.at("variant").get<std::string>();
        report.model_names = j.at("models").get<std::vector<std::string>>();
        report.dataset_names = j.at("datasets").get<std::vector<std::string>>();
        for (const auto& [ds, jrow] : j.at("results").items()) {
            for (const auto& [model, jc] : jrow.items()) {
                ModelCell cell;
                cell.ok = jc.at("ok").get<bool>();
                if (cell.ok) {
                    cell.test_accuracy = jc.at("accuracy").get<double>();
                    cell.cv_mean = jc.at("cv_mean").get<double>();
                    cell.fold_accs = jc.at("fold_accs").get<std::vector<double>>();
                    const auto& p = jc.at("params");
                    cell.params.kernel.sigma = p.at("sigma").get<double>();
                    cell.params.kernel.kind =
                        kernel_kind_from_string(p.at("kernel").get<std::string>());
                    cell.params.eta1 = p.at("eta1").get<double>();
                    cell.params.eta2 = p.at("eta2").get<double>();
                    cell.params.lambda1 = p.at("lambda1").get<double>();
                    cell.params.lambda2 = p.at("lambda2").get<double>();
                    cell.params.variant = variant_from_string(report.variant);
                    if (jc.contains("fit_seconds")) {
                        cell.fit_seconds = jc.at("fit_seconds").get<double>();
                        cell.predict_seconds = jc.at("predict_seconds").get<double>();
                        cell.has_timing = true;
                    }
                } else {
                    cell.error = jc.at("error").get<std::string>();
                }
                report.results[ds][model] = cell;
            }
        }
        if (j.contains("external"))
            report.external =
                j.at("external")
                    .get<std::map<std::string, std::map<std::string, double>>>();
        if (j.contains("notes"))
            report.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ReportFormatError(std::string("report: ") + e.what());
    }
    return report;
}

inline void save_report(const std::string& path, const BenchmarkReport& report) {
    save_json(path, report_to_json(report));
}

inline BenchmarkReport load_report(const std::string& path) {
    return report_from_json(load_json(path));
}

inline BenchmarkConfig parse_benchmark_config(const nlohmann::json& j) {
    BenchmarkConfig config;
    try {
        for (const auto& jd : j.at("datasets")) {
            DatasetSpec spec;
            spec.path = jd.at("path").get<std::string>();
            spec.name = jd.value("name", spec.path);
            spec.label_col = jd.value("label_col", std::string{});
            if (jd.contains("native_views"))
                spec.native_views =
                    jd.at("native_views").get<std::vector<std::string>>();
            config.datasets.push_back(std::move(spec));
        }
        for (const auto& jm : j.at("models"))
            config.models.push_back(model_kind_from_string(jm.get<std::string>()));
        config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("variant"))
            config.variant = variant_from_string(j.at("variant").get<std::string>());
        if (j.contains("grids")) {
            const auto& g = j.at("grids");
            if (g.contains("sigma"))
                config.grids.sigma_grid = g.at("sigma").get<std::vector<double>>();
            if (g.contains("eta"))
                config.grids.eta_grid = g.at("eta").get<std::vector<double>>();
            if (g.contains("lambda"))
                config.grids.lambda_grid = g.at("lambda").get<std::vector<double>>();
            config.grids.tie_eta = g.value("tie_eta", true);
            config.grids.tie_lambda = g.value("tie_lambda", true);
        }
        config.pca_threshold = j.value("pca_threshold", 0.95);
        config.cv_folds = j.value("cv_folds", 5);
        config.include_timings = j.value("include_timings", false);
        config.external_table = j.value("external_table", std::string{});
        config.external_percent = j.value("external_percent", false);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("benchmark config: ") + e.what());
    }
    return config;
}

/// |eta_grid| x |sigma_grid| test-accuracy grid with eta1 = eta2 tied and
/// both lambdas fixed; failed cells are NaN.
inline Matrix sensitivity_sweep(const MultiviewDataset& train,
                                const MultiviewDataset& test,
                                const std::vector<double>& eta_grid,
                                const std::vector<double>& sigma_grid,
                                double lambda_fixed,
                                TmvrkmVariant variant =
                                    TmvrkmVariant::derivation_consistent) {
    if (eta_grid.empty() || sigma_grid.empty())
        throw ConfigError("sensitivity_sweep: grids must be nonempty");
    train.validate();
    test.validate();
    Matrix grid(static_cast<Eigen::Index>(eta_grid.size()),
                static_cast<Eigen::Index>(sigma_grid.size()));
    const std::size_t cells = eta_grid.size() * sigma_grid.size();
    detail::parallel_for(cells, [&](std::size_t idx) {
        const std::size_t i = idx / sigma_grid.size();
        const std::size_t s = idx % sigma_grid.size();
        TmvrkmHyperParams params;
        params.eta1 = params.eta2 = eta_grid[i];
        params.lambda1 = params.lambda2 = lambda_fixed;
        params.kernel = KernelSpec{KernelKind::rbf, sigma_grid[s]};
        params.variant = variant;
        double value = std::numeric_limits<double>::quiet_NaN();
        try {
            const TmvrkmModel model = fit(split_by_class(train), params);
            value = accuracy(predict(model, test.views), test.y);
        } catch (const Error&) {
        }
        grid(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = value;
    });
    return grid;
}

/// Header row carries the sigma values, the first column the eta values;
/// NaN cells are written as "NA".
inline void write_sweep_csv(const std::string& path,
                            const std::vector<double>& eta_grid,
                            const std::vector<double>& sigma_grid,
                            const Matrix& grid) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path);
    out << "eta";
    for (double s : sigma_grid) out << "," << detail::format_double(s);
    out << "\n";
    for (std::size_t i = 0; i < eta_grid.size(); ++i) {
        out << detail::format_double(eta_grid[i]);
        for (std::size_t s = 0; s < sigma_grid.size(); ++s) {
            const double v =
                grid(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s));
            out << ",";
            if (std::isnan(v))
                out << "NA";
            else
                out << detail::format_double(v);
        }
        out << "\n";
    }
}

/// Builds an AccuracyTable from a report's own results plus any imported
/// external columns; datasets missing a value in some column are dropped
/// when strict=false, rejected when strict=true.
inline AccuracyTable report_accuracy_table(const BenchmarkReport& report,
                                           bool strict = false) {
    AccuracyTable table;
    table.model_names = report.model_names;
    for (const auto& [model, cols] : report.external) {
        (void)cols;
        table.model_names.push_back(model);
    }
    std::vector<std::vector<double>> rows;
    for (const std::string& ds : report.dataset_names) {
        std::vector<double> row;
        bool complete = true;
        const auto it = report.results.find(ds);
        for (const std::string& model : report.model_names) {
            if (it == report.results.end() || !it->second.count(model) ||
                !it->second.at(model).ok) {
                complete = false;
                break;
            }
            row.push_back(it->second.at(model).test_accuracy);
        }
        if (complete)
            for (const auto& [model, cols] : report.external) {
                (void)model;
                const auto cit = cols.find(ds);
                if (cit == cols.end()) {
                    complete = false;
                    break;
                }
                row.push_back(cit->second);
            }
        if (!complete) {
            if (strict)
                throw StatsError("report: dataset " + ds + " has absent cells");
            continue;
        }
        table.dataset_names.push_back(ds);
        rows.push_back(std::move(row));
    }
    table.values.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(table.model_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < rows[i].size(); ++c)
            table.values(static_cast<Eigen::Index>(i),
                         static_cast<Eigen::Index>(c)) = rows[i][c];
    return table;
}

}  // namespace twinview

#endif

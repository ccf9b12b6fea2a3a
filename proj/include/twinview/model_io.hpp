#ifndef TWINVIEW_MODEL_IO_HPP
#define TWINVIEW_MODEL_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinview/errors.hpp"
#include "twinview/mvrkm.hpp"
#include "twinview/tmvrkm.hpp"

namespace twinview {

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    j["data"] = data;  // row-major
    return j;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ReportFormatError("matrix payload size mismatch");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++];
    return m;
}

inline nlohmann::json vector_to_json(const Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

inline Vector vector_from_json(const nlohmann::json& j) {
    const auto data = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(data.data(),
                                    static_cast<Eigen::Index>(data.size()));
}

inline nlohmann::json kernel_to_json(const KernelSpec& k) {
    return {{"kind", to_string(k.kind)}, {"sigma", k.sigma}};
}

inline KernelSpec kernel_from_json(const nlohmann::json& j) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
    k.sigma = j.at("sigma").get<double>();
    return k;
}

}  // namespace detail

inline constexpr int kModelSchemaVersion = 1;

inline nlohmann::json tmvrkm_to_json(const TmvrkmModel& model) {
    nlohmann::json j;
    j["schema_version"] = kModelSchemaVersion;
    j["model_type"] = "tmvrkm";
    j["variant"] = to_string(model.params.variant);
    j["kernel"] = detail::kernel_to_json(model.params.kernel);
    j["eta1"] = model.params.eta1;
    j["eta2"] = model.params.eta2;
    j["lambda1"] = model.params.lambda1;
    j["lambda2"] = model.params.lambda2;
    j["h1"] = detail::vector_to_json(model.h1);
    j["b1"] = model.b1;
    j["h2"] = detail::vector_to_json(model.h2);
    j["b2"] = model.b2;
    nlohmann::json a = nlohmann::json::array();
    for (const Matrix& m : model.split.A_views)
        a.push_back(detail::matrix_to_json(m));
    nlohmann::json b = nlohmann::json::array();
    for (const Matrix& m : model.split.B_views)
        b.push_back(detail::matrix_to_json(m));
    j["A_views"] = a;
    j["B_views"] = b;
    return j;
}

inline TmvrkmModel tmvrkm_from_json(const nlohmann::json& j) {
    if (j.value("schema_version", -1) != kModelSchemaVersion)
        throw ReportFormatError("model file: unsupported schema version");
    if (j.value("model_type", "") != "tmvrkm")
        throw ReportFormatError("model file: expected model_type tmvrkm");
    TmvrkmModel model;
    model.params.variant = variant_from_string(j.at("variant").get<std::string>());
    model.params.kernel = detail::kernel_from_json(j.at("kernel"));
    model.params.eta1 = j.at("eta1").get<double>();
    model.params.eta2 = j.at("eta2").get<double>();
    model.params.lambda1 = j.at("lambda1").get<double>();
    model.params.lambda2 = j.at("lambda2").get<double>();
    model.h1 = detail::vector_from_json(j.at("h1"));
    model.b1 = j.at("b1").get<double>();
    model.h2 = detail::vector_from_json(j.at("h2"));
    model.b2 = j.at("b2").get<double>();
    for (const auto& m : j.at("A_views"))
        model.split.A_views.push_back(detail::matrix_from_json(m));
    for (const auto& m : j.at("B_views"))
        model.split.B_views.push_back(detail::matrix_from_json(m));
    model.split.validate();
    return model;
}

inline nlohmann::json mvrkm_to_json(const MvrkmModel& model) {
    nlohmann::json j;
    j["schema_version"] = kModelSchemaVersion;
    j["model_type"] = "mvrkm";
    j["kernel"] = detail::kernel_to_json(model.kernel);
    j["eta"] = model.eta;
    j["lambda"] = model.lambda;
    j["z"] = detail::vector_to_json(model.z);
    j["b"] = model.b;
    nlohmann::json views = nlohmann::json::array();
    for (const Matrix& m : model.train_views)
        views.push_back(detail::matrix_to_json(m));
    j["train_views"] = views;
    j["labels"] = std::vector<int>(model.labels.data(),
                                   model.labels.data() + model.labels.size());
    return j;
}

inline MvrkmModel mvrkm_from_json(const nlohmann::json& j) {
    if (j.value("schema_version", -1) != kModelSchemaVersion)
        throw ReportFormatError("model file: unsupported schema version");
    if (j.value("model_type", "") != "mvrkm")
        throw ReportFormatError("model file: expected model_type mvrkm");
    MvrkmModel model;
    model.kernel = detail::kernel_from_json(j.at("kernel"));
    model.eta = j.at("eta").get<double>();
    model.lambda = j.at("lambda").get<double>();
    model.z = detail::vector_from_json(j.at("z"));
    model.b = j.at("b").get<double>();
    for (const auto& m : j.at("train_views"))
        model.train_views.push_back(detail::matrix_from_json(m));
    const auto labels = j.at("labels").get<std::vector<int>>();
    model.labels = Eigen::Map<const Eigen::VectorXi>(
        labels.data(), static_cast<Eigen::Index>(labels.size()));
    return model;
}

inline void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ReportFormatError(path + ": " + e.what());
    }
    return j;
}

}  // namespace twinview

#endif

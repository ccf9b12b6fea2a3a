#ifndef TWINVIEW_BUNDLE_HPP
#define TWINVIEW_BUNDLE_HPP

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "twinview/dataio.hpp"
#include "twinview/model_io.hpp"

namespace twinview {

/// On-disk multiview bundle: a directory holding view_a.csv, view_b.csv
/// (more views sort lexicographically) and labels.csv.
inline void write_bundle_dir(const std::string& dir, const MultiviewDataset& data) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const char* names = "abcdefghijklmnopqrstuvwxyz";
    if (data.views.size() > 26)
        throw ConfigError("bundle: at most 26 views supported");
    for (std::size_t v = 0; v < data.views.size(); ++v)
        write_matrix_csv(dir + "/view_" + names[v] + ".csv", data.views[v]);
    write_labels_csv(dir + "/labels.csv", data.y);
}

inline MultiviewDataset read_bundle_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IngestError(dir + " is not a directory");
    std::vector<std::string> view_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("view_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".csv")
            view_files.push_back(entry.path().string());
    }
    if (view_files.empty()) throw IngestError(dir + ": no view_*.csv files");
    std::sort(view_files.begin(), view_files.end());
    MultiviewDataset data;
    data.name = dir;
    for (const std::string& f : view_files)
        data.views.push_back(read_matrix_csv(f));
    data.y = read_labels_csv(dir + "/labels.csv");
    data.validate();
    return data;
}

}  // namespace twinview

#endif

#ifndef TWINVIEW_TESTS_FIXTURES_HPP
#define TWINVIEW_TESTS_FIXTURES_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "twinview/dataio.hpp"
#include "twinview/synthetic.hpp"

namespace fixtures {

inline std::string env_or_fail(const char* name) {
    const char* value = std::getenv(name);
    if (!value) throw std::runtime_error(std::string(name) + " not set");
    return value;
}

inline std::string fixtures_dir() { return env_or_fail("TWINVIEW_FIXTURES"); }
inline std::string cli_path() { return env_or_fail("TWINVIEW_CLI"); }

/// Standard two-view blob fixture: seeded blobs, 70:30 split, per-column
/// standardization from train, PCA second view fitted on train.
inline std::pair<twinview::MultiviewDataset, twinview::MultiviewDataset>
blob_multiview(Eigen::Index n, std::uint64_t seed, double separation = 4.0) {
    using namespace twinview;
    const Dataset ds = make_blobs(n, seed, separation);
    const SplitPlan plan = split_70_30(n, seed);
    const Standardization std_view =
        standardize(select_rows(ds.X, plan.train_indices),
                    select_rows(ds.X, plan.test_indices));
    Dataset train{std_view.train, select_rows(ds.y, plan.train_indices), "train"};
    Dataset test{std_view.test, select_rows(ds.y, plan.test_indices), "test"};
    return make_second_view(train, test, 0.95);
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

/// Runs the built CLI with the given arguments, capturing stdout+stderr.
inline CliResult run_cli(const std::string& args, const std::string& tmp_dir) {
    const std::string out_file = tmp_dir + "/cli_output.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = raw == -1 ? -1 : WEXITSTATUS(raw);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures

#endif

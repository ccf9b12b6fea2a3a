#ifndef TWINVIEW_SYNTHETIC_HPP
#define TWINVIEW_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "twinview/dataio.hpp"
#include "twinview/rng.hpp"

namespace twinview {

/// Two well-separated 2-D Gaussian blobs (unit covariance, centers at
/// +/- (separation/2, separation/2)), n/2 samples per class, interleaved.
/// Deterministic for a fixed seed.
inline Dataset make_blobs(Eigen::Index n, std::uint64_t seed,
                          double separation = 4.0,
                          const std::string& name = "blobs") {
    Rng rng(seed);
    Dataset ds;
    ds.name = name;
    ds.X.resize(n, 2);
    ds.y.resize(n);
    const double offset = separation / 2.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = (i % 2 == 0) ? 1 : -1;
        const double cx = label > 0 ? offset : -offset;
        ds.X(i, 0) = cx + rng.next_normal();
        ds.X(i, 1) = cx + rng.next_normal();
        ds.y[i] = label;
    }
    return ds;
}

}  // namespace twinview

#endif

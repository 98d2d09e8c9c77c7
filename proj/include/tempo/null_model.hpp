#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/temporal_graph.hpp"

namespace tempo {

// Degree-preserving randomization by double-edge swaps: swap_factor * |edges|
// attempted swaps, rejecting any that would create a self-loop or a parallel
// edge. The node set, window, and degree sequence are unchanged.
Snapshot degree_preserving_rewire(const Snapshot& snapshot, std::uint64_t seed,
                                  int swap_factor = 10);

using Detector = std::function<Partition(const Snapshot&, double resolution, std::uint64_t seed)>;

struct ZScoreReport {
    double q_observed = 0.0;
    double null_mean = 0.0; // sample mean of the null modularities
    double null_std = 0.0;  // sample standard deviation, 1/(M-1) divisor
    double z = 0.0;         // NaN when z_defined is false
    bool z_defined = false;
    int sample_count = 0;
    std::vector<double> sample_modularities;
};

// Detects communities on the snapshot, then on sample_count rewired copies
// (sample k uses seed ^ k for both the rewiring and the detector), and
// scores the observed modularity against the null distribution. Samples may
// be evaluated on several workers; the report does not depend on the worker
// count. An empty detector defaults to louvain.
ZScoreReport modularity_zscore(const Snapshot& snapshot, int sample_count, double resolution,
                               std::uint64_t seed, const Detector& detector = {},
                               int swap_factor = 10, int workers = 1);

} // namespace tempo

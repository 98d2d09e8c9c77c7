#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/types.hpp"

namespace tempo {

// Node-pool model with membership churn and label flips. A pool of N nodes
// carries community labels at all times (members keep their label while out
// of the network); n of them are active per iteration.
struct SynthConfig {
    std::int64_t pool_size = 500;   // N
    std::int64_t network_size = 400; // n, 0 < n < N
    int community_count = 4;        // k >= 2
    double churn = 0.0;             // probability an active node leaves per iteration
    double flip = 0.0;              // probability an active node changes label per iteration
    int iterations = 50;            // T >= 1
    std::uint64_t seed = 0;

    void validate() const; // throws InvalidConfigError
};

struct SynthState {
    std::vector<Label> labels;  // one per pool node, kept while inactive
    std::vector<NodeId> active; // sorted, always network_size entries
    int iteration = 0;
};

// All pool nodes get a uniform label in 0..k-1 (drawn in pool order), then
// n distinct active nodes are sampled. Draws come from the supplied
// generator; synth_run seeds one generator with cfg.seed and uses it for
// the whole run.
SynthState synth_init(const SynthConfig& cfg, std::mt19937_64& rng);

// One iteration. Churn phase: every active node leaves independently with
// probability cfg.churn (one uniform draw per active node, ascending id);
// departures are replaced by nodes sampled without replacement from the set
// that was inactive when the step began. Flip phase: every node active
// after the churn, ascending id, changes its label with probability
// cfg.flip to one of the other k-1 labels uniformly. Inactive labels are
// untouched.
void synth_step(SynthState& state, const SynthConfig& cfg, std::mt19937_64& rng);

struct SynthRun {
    std::vector<Partition> partitions;            // one per iteration over its active set
    std::vector<std::vector<Label>> label_trace;  // iterations x pool_size
    std::vector<std::vector<std::uint8_t>> active_trace; // iterations x pool_size
};

// T partitions: the initial state is iteration 0, followed by T-1 steps.
// Partition t uses the iteration index as its window interval [t, t+1).
SynthRun synth_run(const SynthConfig& cfg);

} // namespace tempo

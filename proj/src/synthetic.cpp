#include "tempo/synthetic.hpp"

#include <algorithm>
#include <numeric>

#include "tempo/errors.hpp"
#include "tempo/random.hpp"

namespace tempo {

void SynthConfig::validate() const {
    if (pool_size <= 0) throw InvalidConfigError("pool_size must be positive");
    if (network_size <= 0 || network_size >= pool_size)
        throw InvalidConfigError("network_size must satisfy 0 < n < N");
    if (community_count < 2) throw InvalidConfigError("community_count must be >= 2");
    if (churn < 0.0 || churn > 1.0) throw InvalidConfigError("churn must be in [0, 1]");
    if (flip < 0.0 || flip > 1.0) throw InvalidConfigError("flip must be in [0, 1]");
    if (iterations < 1) throw InvalidConfigError("iterations must be >= 1");
}

SynthState synth_init(const SynthConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    const std::size_t pool = static_cast<std::size_t>(cfg.pool_size);
    const std::size_t n = static_cast<std::size_t>(cfg.network_size);

    SynthState state;
    state.labels.resize(pool);
    for (std::size_t i = 0; i < pool; ++i)
        state.labels[i] = static_cast<Label>(uniform_index(rng, cfg.community_count));

    // partial Fisher-Yates: the first n slots become the active sample
    std::vector<NodeId> ids(pool);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pool - i));
        std::swap(ids[i], ids[j]);
    }
    state.active.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(state.active.begin(), state.active.end());
    state.iteration = 0;
    return state;
}

void synth_step(SynthState& state, const SynthConfig& cfg, std::mt19937_64& rng) {
    const std::size_t pool = static_cast<std::size_t>(cfg.pool_size);

    // churn: decide departures, ascending active id
    std::vector<std::uint8_t> is_active(pool, 0);
    for (NodeId node : state.active) is_active[node] = 1;
    std::vector<NodeId> leavers;
    for (NodeId node : state.active) {
        if (uniform_real01(rng) < cfg.churn) leavers.push_back(node);
    }

    std::vector<NodeId> inactive;
    inactive.reserve(pool - state.active.size());
    for (NodeId node = 0; node < pool; ++node) {
        if (!is_active[node]) inactive.push_back(node);
    }

    // replacements are sampled without replacement from the nodes that were
    // inactive at the start of the step; a leaver cannot re-enter in the
    // same step
    std::size_t replace_count = std::min(leavers.size(), inactive.size());
    for (std::size_t i = 0; i < replace_count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, inactive.size() - i));
        std::swap(inactive[i], inactive[j]);
    }
    for (std::size_t i = 0; i < replace_count; ++i) {
        is_active[leavers[i]] = 0;
        is_active[inactive[i]] = 1;
    }

    state.active.clear();
    for (NodeId node = 0; node < pool; ++node) {
        if (is_active[node]) state.active.push_back(node);
    }

    // flip: every node active after the churn, ascending id
    if (cfg.community_count > 1) {
        for (NodeId node : state.active) {
            if (uniform_real01(rng) < cfg.flip) {
                const Label offset =
                    static_cast<Label>(uniform_index(rng, cfg.community_count - 1)) + 1;
                state.labels[node] =
                    static_cast<Label>((state.labels[node] + offset) % cfg.community_count);
            }
        }
    }
    ++state.iteration;
}

SynthRun synth_run(const SynthConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    SynthState state = synth_init(cfg, rng);

    SynthRun run;
    run.partitions.reserve(static_cast<std::size_t>(cfg.iterations));
    run.label_trace.reserve(static_cast<std::size_t>(cfg.iterations));
    run.active_trace.reserve(static_cast<std::size_t>(cfg.iterations));

    auto record = [&](int iteration) {
        std::vector<std::pair<NodeId, Label>> entries;
        entries.reserve(state.active.size());
        for (NodeId node : state.active) entries.emplace_back(node, state.labels[node]);
        run.partitions.emplace_back(std::move(entries), iteration, iteration + 1);
        run.label_trace.push_back(state.labels);
        std::vector<std::uint8_t> active(static_cast<std::size_t>(cfg.pool_size), 0);
        for (NodeId node : state.active) active[node] = 1;
        run.active_trace.push_back(std::move(active));
    };

    record(0);
    for (int t = 1; t < cfg.iterations; ++t) {
        synth_step(state, cfg, rng);
        record(t);
    }
    return run;
}

} // namespace tempo

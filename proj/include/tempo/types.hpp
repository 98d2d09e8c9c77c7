#pragma once

#include <cstdint>

namespace tempo {

// Dense node index into a graph's name table (or a synthetic pool).
using NodeId = std::uint32_t;

// Community label. Arbitrary integers are allowed; canonicalized
// partitions use 0..C-1.
using Label = std::int32_t;

// Event timestamp / duration in integer ticks (seconds for epoch data).
using Time = std::int64_t;

} // namespace tempo

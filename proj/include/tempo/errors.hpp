#pragma once

#include <stdexcept>
#include <string>

namespace tempo {

// Edge-list parsing failure. line is 1-based; 0 means not line-specific.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct InvalidIntervalError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidWindowError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UndefinedModularityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IncompletePartitionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptySnapshotError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CannotRewireError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised by nmi() when node sets differ; unmi/inmi handle that case.
struct NodeSetMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyIntersectionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace tempo

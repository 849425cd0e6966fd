#pragma once

#include <stdexcept>
#include <string>

namespace srslab {

// Invalid configuration or incompatible shapes detected at construction time.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// API misuse at runtime (stepping a terminal state, out-of-range action, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values encountered; aborts the current run.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace srslab

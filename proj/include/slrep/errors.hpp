#pragma once

#include <stdexcept>
#include <string>

namespace slrep {

struct InvalidIndex : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct RejectionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a decomposition lands outside the open cell: some elimination
// block determinant (equivalently, a closed-form denominator) is below
// 1e-8 relative to the local scale.
struct DecompositionSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDiagonal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartExit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KernelSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalyticityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace slrep

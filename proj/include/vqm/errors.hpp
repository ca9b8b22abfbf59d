#pragma once

#include <stdexcept>
#include <string>

namespace vqm {

/// A strict evaluation needed components above the truncation.
class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A normalization exceeded its step budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rewrite step failed to decrease the declared termination metric.
class MetricViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mode with index >= T did not kill the generating vector.
class AnnihilationViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vqm

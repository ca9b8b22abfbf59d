#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vqm/exact.hpp"

namespace vqm::linalg {

using Column = std::vector<Rational>;

/// Incremental row-echelon basis of a subspace of Q^dim, supporting exact
/// membership tests. Vectors are dense with fixed dimension.
class Echelon {
public:
    explicit Echelon(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    /// Adds v to the span; returns true when the rank grew.
    bool insert(const Column& v);
    bool contains(const Column& v) const;

private:
    /// Reduces v against the stored rows in place; returns the first
    /// non-zero position or dim() when v reduced to zero.
    std::size_t reduce(Column& v) const;

    std::size_t dim_;
    std::vector<Column> rows_;          // each row has a leading 1 at pivots_[i]
    std::vector<std::size_t> pivots_;
};

/// Solves sum_k c_k columns[k] = target exactly. Pivot columns are taken in
/// the given order and free variables are set to zero, so the result is
/// deterministic. Returns nullopt when target is outside the span.
std::optional<std::vector<Rational>> solve(const std::vector<Column>& columns, const Column& target);

} // namespace vqm::linalg

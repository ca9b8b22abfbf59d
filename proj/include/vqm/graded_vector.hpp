#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "vqm/exact.hpp"

namespace vqm {

using BasisId = std::uint32_t;

/// Sparse vector over a basis indexed by BasisId. Zero coordinates are never stored.
class GradedVector {
public:
    using Storage = std::map<BasisId, Rational>;

    GradedVector() = default;
    static GradedVector unit(BasisId id, Rational c = Rational(1)) {
        GradedVector v;
        v.add(id, c);
        return v;
    }

    void add(BasisId id, const Rational& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = coords_.try_emplace(id, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                coords_.erase(it);
        }
    }
    void add_scaled(const GradedVector& other, const Rational& c) {
        if (c.is_zero())
            return;
        for (const auto& [id, x] : other.coords_)
            add(id, x * c);
    }
    GradedVector scaled(const Rational& c) const {
        GradedVector out;
        out.add_scaled(*this, c);
        return out;
    }
    Rational operator[](BasisId id) const {
        auto it = coords_.find(id);
        return it == coords_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return coords_.empty(); }
    std::size_t size() const { return coords_.size(); }
    const Storage& coords() const { return coords_; }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    friend bool operator==(const GradedVector& a, const GradedVector& b) { return a.coords_ == b.coords_; }
    friend GradedVector operator+(GradedVector a, const GradedVector& b) { a.add_scaled(b, Rational(1)); return a; }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) { a.add_scaled(b, Rational(-1)); return a; }

private:
    Storage coords_;
};

} // namespace vqm

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "vqm/algebra.hpp"
#include "vqm/linalg.hpp"

namespace vqm {

/// How a spanning vector of a subspace was produced.
struct SpanLabel {
    enum class Kind { Product, LMinus1, Other };
    Kind kind = Kind::Other;
    BasisId u = 0;     // left factor, or w for L(-1)w
    int index = 0;     // mode index of the product u_index v
    BasisId v = 0;
};

struct SpanEntry {
    GradedVector vec;
    SpanLabel label;
};

/// Subspace of a graded space organized per level (weight or depth).
/// Only spanning vectors that raise the rank are kept, so the stored family is
/// a basis of the subspace at every level.
class SubspaceBasis {
public:
    SubspaceBasis() = default;
    /// ambient[k] lists the basis ids of level k, k = 0..cap.
    explicit SubspaceBasis(std::vector<std::vector<BasisId>> ambient);

    int cap() const { return static_cast<int>(ambient_.size()) - 1; }
    const std::vector<BasisId>& ambient(int level) const { return ambient_.at(static_cast<std::size_t>(level)); }

    /// Adds v (homogeneous of the given level); returns true when the rank grew.
    bool add(int level, const GradedVector& v, SpanLabel label = {});
    bool contains(int level, const GradedVector& v) const;
    std::size_t dim(int level) const { return echelon_.at(static_cast<std::size_t>(level)).rank(); }
    std::size_t ambient_dim(int level) const { return ambient(level).size(); }
    std::size_t codim(int level) const { return ambient_dim(level) - dim(level); }
    const std::vector<SpanEntry>& spanning(int level) const { return span_.at(static_cast<std::size_t>(level)); }
    const linalg::Echelon& echelon(int level) const { return echelon_.at(static_cast<std::size_t>(level)); }

    /// Dense coordinates of v in the level's ambient basis.
    /// Throws std::invalid_argument for components outside that level.
    linalg::Column column(int level, const GradedVector& v) const;

private:
    std::vector<std::vector<BasisId>> ambient_;
    std::vector<std::unordered_map<BasisId, std::size_t>> position_;
    std::vector<linalg::Echelon> echelon_;
    std::vector<std::vector<SpanEntry>> span_;
};

/// Span of u_{-n} v (u, v basis vectors) with weight at most weightCap.
/// Throws std::invalid_argument for n < 2 (use c1_subspace) or weightCap above the cutoff.
SubspaceBasis c_n_subspace(const AlgebraInstance& alg, int n, int weightCap);

/// Span of u_{-1} v for u, v of positive weight together with L(-1) w for all w.
SubspaceBasis c1_subspace(const AlgebraInstance& alg, int weightCap);

/// Decomposition g = sum_x c_x x + sum c (u_p v) + sum c L(-1) w.
struct Decomposition {
    GradedVector x_part;
    struct Product {
        BasisId u;
        int index;
        BasisId v;
        Rational coeff;
    };
    std::vector<Product> products;
    std::vector<std::pair<BasisId, Rational>> lminus1;
};

/// Homogeneous basis-aligned representatives of V / sub, one per quotient
/// dimension and weight.
class QuotientBasis {
public:
    QuotientBasis() = default;
    QuotientBasis(std::string kind, const AlgebraInstance& alg, SubspaceBasis sub, int weightCap);

    const std::string& kind() const { return kind_; }
    int cap() const { return cap_; }
    const std::vector<BasisId>& reps() const { return reps_; }
    const std::vector<BasisId>& reps_of_weight(int k) const;
    bool is_rep(BasisId id) const;
    const SubspaceBasis& subspace() const { return sub_; }

    /// Exact decomposition of a homogeneous vector of weight <= cap.
    /// Deterministic: pivots are taken with representatives first.
    Decomposition decompose(const GradedVector& g) const;

private:
    std::string kind_;
    const AlgebraInstance* alg_ = nullptr;
    SubspaceBasis sub_;
    int cap_ = -1;
    std::vector<BasisId> reps_;
    std::vector<std::vector<BasisId>> by_weight_;
};

/// First basis elements (in storage order, per weight) completing the echelon of sub.
QuotientBasis quotient_representatives(const AlgebraInstance& alg, const SubspaceBasis& sub, int weightCap,
                                       const std::string& kind = "");

} // namespace vqm

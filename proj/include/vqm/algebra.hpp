#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "vqm/graded_vector.hpp"

namespace vqm {

struct BasisElement {
    std::string id;
    int weight = 0;
};

/// Result of a truncated mode action. `overflow` is set when components above
/// the cutoff were dropped.
struct ModeResult {
    GradedVector value;
    bool overflow = false;
};

/// Truncated N-graded Mobius vertex algebra given by structure constants.
///
/// The table stores u_n v for basis u, v whenever wt(u_n v) = wt u + wt v - n - 1
/// lies in [0, cutoff]; absent entries inside that range are zero. Entries with
/// n >= wt u + wt v are zero by lower truncation. The sl(2) tables hold
/// L(-1), L(0), L(1) on each basis vector; L(-1) of a top-weight vector is
/// unknown (nullopt).
class AlgebraInstance {
public:
    using YKey = std::tuple<BasisId, int, BasisId>;
    using YTable = std::map<YKey, GradedVector>;
    struct Sl2Tables {
        std::vector<std::optional<GradedVector>> lm1, l0, l1;
    };

    AlgebraInstance() = default;
    AlgebraInstance(std::string kind, int cutoff, std::vector<BasisElement> basis, BasisId vacuum, YTable y,
                    Sl2Tables sl2);

    const std::string& kind() const { return kind_; }
    int cutoff() const { return cutoff_; }
    BasisId vacuum() const { return vacuum_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    int weight(BasisId id) const { return basis_.at(id).weight; }
    const std::string& name(BasisId id) const { return basis_.at(id).id; }
    BasisId index_of(const std::string& id) const;
    bool has(const std::string& id) const { return by_name_.count(id) != 0; }
    /// Basis ids of weight k in storage order (empty above the cutoff).
    const std::vector<BasisId>& of_weight(int k) const;

    const YTable& y_table() const { return y_; }
    const Sl2Tables& sl2() const { return sl2_; }

    /// u_n v for basis vectors.
    ModeResult mode(BasisId u, int n, BasisId v) const;
    /// L(j) for j in {-1, 0, 1} on a basis vector.
    ModeResult sl2_action(int j, BasisId v) const;
    /// Maximal weight of a homogeneous vector, or nullopt for zero/inhomogeneous vectors.
    std::optional<int> weight_of(const GradedVector& v) const;

private:
    std::string kind_;
    int cutoff_ = 0;
    std::vector<BasisElement> basis_;
    BasisId vacuum_ = 0;
    YTable y_;
    Sl2Tables sl2_;
    std::unordered_map<std::string, BasisId> by_name_;
    std::vector<std::vector<BasisId>> by_weight_;
};

/// Bilinear extension of the structure constants.
/// Throws std::out_of_range for unknown basis ids.
ModeResult mode_action(const AlgebraInstance& alg, const GradedVector& u, int n, const GradedVector& v);
ModeResult sl2_action(const AlgebraInstance& alg, int j, const GradedVector& v);

/// Bounds for the axiom checker. Pairs and triples are drawn from basis
/// vectors whose weights do not exceed the given caps; mode indices are
/// restricted so every intermediate vector stays within the cutoff.
struct AxiomWindow {
    int max_weight_u = -1;   // -1: cutoff
    int max_weight_v = -1;
    int max_weight_w = -1;
    bool borcherds = true;

    static AxiomWindow full() { return {}; }
};

struct AxiomReport {
    bool passed = true;
    std::string failed_check;
    std::string counterexample;
    std::map<std::string, std::size_t> checks;   // per axiom, number of instances verified
};

/// Exact verification of lower truncation, weight bookkeeping, vacuum and
/// creation properties, the L(-1)-derivative property, the sl(2) brackets and
/// the component Borcherds identity on the window.
AxiomReport check_axioms(const AlgebraInstance& alg, const AxiomWindow& window = AxiomWindow::full());

} // namespace vqm

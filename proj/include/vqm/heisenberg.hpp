#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vqm/algebra.hpp"
#include "vqm/quasimodule.hpp"

namespace vqm {

/// Weakly decreasing list of positive parts; names the Fock vector
/// alpha_{-p1} ... alpha_{-pk} |lambda>.
using Partition = std::vector<int>;

std::string partition_id(const Partition& p);       // "[2,1]", "[]" for the vacuum
Partition parse_partition_id(const std::string& id);
int partition_weight(const Partition& p);
/// All partitions of k, parts in decreasing lexicographic order.
std::vector<Partition> partitions_of(int k);

namespace fock {

/// Sparse vector of the rank-one Fock space M(1, lambda) in the partition basis.
using State = std::map<Partition, Rational>;

/// The free-boson mode alpha_m on M(1, lambda): creation for m < 0,
/// multiplication by lambda for m = 0, and m * multiplicity(m) times removal
/// of a part m for m > 0.
State apply_alpha(int m, const State& s, const Rational& lambda);

/// Component n of Y(alpha_{-q1} ... alpha_{-qk} 1, x) on a partition state, by
/// expanding the normal-ordered product of the derivatives of alpha(x).
/// Components whose depth exceeds maxDepth are dropped; overflow reports it.
State vertex_mode(const Partition& gen, int n, const Partition& target, const Rational& lambda, int maxDepth,
                  bool* overflow = nullptr);

/// L(j) = (1/2) sum_m :alpha_{j-m} alpha_m: for j in {-1, 0, 1}.
State virasoro(int j, const State& s, const Rational& lambda);

} // namespace fock

/// Rank-one Heisenberg vertex algebra truncated at the given weight.
/// Throws std::invalid_argument for cutoff < 2.
std::shared_ptr<const AlgebraInstance> build_heisenberg(int cutoff);

/// The one-dimensional algebra spanned by the vacuum.
std::shared_ptr<const AlgebraInstance> build_trivial_algebra();

/// Fock module M(1, lambda) truncated at depth cutoffDepth, with the given
/// quasi-locality polynomial recorded for every pair of generators.
/// Throws std::invalid_argument unless alg is a Heisenberg instance.
QuasimoduleInstance build_fock_quasimodule(std::shared_ptr<const AlgebraInstance> alg, const Rational& lambda,
                                           const QuasiPolynomial& f, int cutoffDepth);

} // namespace vqm

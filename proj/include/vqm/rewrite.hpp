#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vqm/identities.hpp"
#include "vqm/modes.hpp"
#include "vqm/quasimodule.hpp"
#include "vqm/subspace.hpp"

namespace vqm {

/// Where words act: a quasimodule with a generating basis vector, or the
/// algebra acting on its vacuum (with f = 1).
class RewriteContext {
public:
    RewriteContext(const QuasimoduleInstance& qm, BasisId w);
    explicit RewriteContext(const AlgebraInstance& alg);

    const AlgebraInstance& algebra() const { return *alg_; }
    const QuasimoduleInstance* module() const { return qm_; }
    BasisId generating_vector() const { return w_; }
    int base_depth() const { return base_depth_; }
    const QuasiPolynomial& f(BasisId u, BasisId v) const;
    GenInfo gen(BasisId id) const { return {id, alg_->weight(id)}; }

    /// Depth of the vector that the mode at position pos acts on, i.e. after
    /// applying the modes strictly to its right.
    int depth_below(const Word& w, std::size_t pos) const;
    /// x_n applied to the generating vector; nullopt when it cannot be computed
    /// inside the truncation.
    std::optional<GradedVector> act_on_generator(BasisId x, int n) const;

private:
    const AlgebraInstance* alg_ = nullptr;
    const QuasimoduleInstance* qm_ = nullptr;
    BasisId w_ = 0;
    int base_depth_ = 0;
    QuasiPolynomial one_;
};

enum class Ordering { ByIndex, ByDegree };

/// Metric snapshot of a word. Compared lexicographically in one of two
/// layouts: (s, raw, r, D, -sum n^2, inv) for generator resolution and the
/// difference-zero normalizer, (s, r, raw, D, -sum n^2, inv) for the
/// difference-one normalizer.
struct WordMetric {
    int s = 0;                 // filtration level
    int r = 0;                 // length
    std::vector<int> raw;      // weights of non-X generators, descending
    int degree = 0;
    long neg_square_sum = 0;
    int inversions = 0;
    int leading_index = 0;     // informational
    bool length_first = false;

    bool operator<(const WordMetric& o) const;
    std::string str() const;
};

struct TraceStep {
    std::string rule;
    std::size_t position = 0;
    WordMetric before;
    std::optional<WordMetric> worst_child;     // largest metric among the produced words
};

struct NormalizationTrace {
    std::vector<TraceStep> steps;
    std::string input_hash, output_hash;

    /// Every step produced only words of strictly smaller metric.
    bool valid() const;
};

struct NormalizationResult {
    Expression value;
    NormalizationTrace trace;
};

struct NormalizeOptions {
    long budget = 100000;
    Ordering ordering = Ordering::ByIndex;
    /// Replay every dropped x_n w (n >= T) in the oracle.
    bool check_annihilation = true;
};

/// v as a combination of words over X applied to the vacuum, X a set of
/// representatives of V / C_1(V). Throws std::domain_error when X does not
/// cover the weights involved and std::logic_error when the result does not
/// evaluate back to v.
Expression express_algebra_element(const AlgebraInstance& alg, const GradedVector& v, const QuotientBasis& X);

/// Replaces every mode of a generator outside X by modes of X, through the
/// decomposition of the generator modulo the subspace of X and the
/// associativity expansion of the resulting product modes.
NormalizationResult express_module_element(const Expression& e, const QuotientBasis& X, const RewriteContext& ctx,
                                           long budget = 100000);

/// The word with modes i and i+1 (0-based) swapped plus the commutator
/// remainder, which lies in strictly lower filtration.
Expression transpose_adjacent(const Monomial& m, std::size_t i, const RewriteContext& ctx);

/// The word with generator i replaced by the X-part of d, plus the
/// replacement-identity expansion of the u_{-2}v parts. d must be an exact
/// decomposition of that generator modulo C_2.
Expression replace_generator_c2(const Monomial& m, std::size_t i, const Decomposition& d, const RewriteContext& ctx);

/// Words over X (representatives of V / C_1(V)) with n_1 <= ... <= n_r < T
/// (ByIndex) or deg non-increasing (ByDegree). T must be an order of uniform
/// annihilation of the generating vector by X.
NormalizationResult normalize_diff0(const Expression& e, const QuotientBasis& X, int T, const RewriteContext& ctx,
                                    const NormalizeOptions& opt = {});

/// Words over X (representatives of V / C_2(V)) with n_1 < ... < n_r < T.
NormalizationResult normalize_diff1(const Expression& e, const QuotientBasis& X, int T, const RewriteContext& ctx,
                                    const NormalizeOptions& opt = {});

bool weakly_ordered(const Word& w, int T, Ordering ordering);
bool strictly_ordered(const Word& w, int T);

} // namespace vqm

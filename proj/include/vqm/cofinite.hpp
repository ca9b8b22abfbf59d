#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vqm/modes.hpp"
#include "vqm/quasimodule.hpp"
#include "vqm/subspace.hpp"

namespace vqm {

/// Smallest T with x_n w = 0 for every x in X and n >= T, with the
/// largest non-annihilating index per generator as witness.
struct AnnihilationCertificate {
    std::vector<BasisId> X;
    BasisId w = 0;
    int T = 0;
    std::vector<std::optional<int>> witnesses;     // per generator; nullopt when x_n w = 0 for all n >= 0

    /// Re-evaluates every x_n w with T <= n <= wt x + depth(w) and the witness at T - 1.
    bool replay(const QuasimoduleInstance& qm) const;
};

/// Throws std::domain_error when some x_n w with n >= 0 leaves the truncation.
AnnihilationCertificate uniform_annihilation_order(const QuasimoduleInstance& qm, BasisId w,
                                                   const std::vector<BasisId>& X);

/// Words x_{m1} ... x_{mr} over X with lo < m1 < ... < mr < T, every partial
/// product of depth in [0, depth cap of qm] when applied to w and final depth
/// at most maxDepth. maxLength < 0 means unbounded.
std::vector<Word> difference_one_words(const QuasimoduleInstance& qm, BasisId w, const std::vector<BasisId>& X,
                                       int T, int lo, int maxLength, int maxDepth);

/// Span of u_{-n} w' over algebra basis vectors u and module basis vectors w',
/// per depth 0..depthCap. n = 1 gives the c_1 variant; positiveWeightOnly then
/// restricts u to weight >= 1.
SubspaceBasis module_cn_subspace(const QuasimoduleInstance& qm, int n, int depthCap, bool positiveWeightOnly = false);

struct CnQuotientRow {
    int depth = 0;
    std::size_t dim_w = 0, dim_cn = 0, dim_quotient = 0;
    std::size_t words = 0;          // spanning words of this depth
    bool spanned = false;           // words + C_n(W) = W at this depth
};

struct CnQuotientReport {
    std::string subspace;           // "C2", "C3", ..., or "c1"
    int n = 0;
    int T = 0;
    int depth_cap = 0;
    int length_bound = 0;           // T + n - 1
    std::size_t max_word_length = 0;
    std::vector<CnQuotientRow> rows;
    bool spanned = false;           // every row spanned
    bool stabilized = false;        // quotient vanishes at the last two depths
};

struct CnOptions {
    bool positive_weight_only = false;     // c_1 variant only
};

/// Dimensions of W / C_n(W) per depth together with the check that the
/// difference-one words of length <= T + n - 1 with indices in (-n, T)
/// span the quotient.
CnQuotientReport module_cn_quotient(const QuasimoduleInstance& qm, BasisId w, const std::vector<BasisId>& X, int T,
                                    int n, int depthCap, const CnOptions& opt = {});

struct ContainmentRow {
    int n = 0, m = 0;
    bool n_in_m = false;            // C_n(W) inside C_m(W) at every depth
    bool m_in_n = false;
};

struct CofiniteEquivalenceReport {
    std::vector<CnQuotientReport> quotients;     // n = 2..nMax
    std::vector<ContainmentRow> containment;
    std::string direction;                       // the containment that holds for every pair, or "none"
    bool verdicts_agree = false;
};

CofiniteEquivalenceReport cofinite_equivalence_check(const QuasimoduleInstance& qm, BasisId w,
                                                     const std::vector<BasisId>& X, int T, int nMax, int depthCap);

} // namespace vqm

#include "vqm/cofinite.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace vqm {

namespace {

ModeResult act(const QuasimoduleInstance& qm, BasisId x, int n, BasisId w) {
    // modes of negative result depth vanish without consulting the oracle
    if (qm.algebra().weight(x) - n - 1 + qm.depth(w) < 0)
        return {};
    return qm.mode(x, n, w);
}

} // namespace

AnnihilationCertificate uniform_annihilation_order(const QuasimoduleInstance& qm, BasisId w,
                                                   const std::vector<BasisId>& X) {
    AnnihilationCertificate c;
    c.X = X;
    c.w = w;
    for (BasisId x : X) {
        std::optional<int> top;
        for (int n = qm.algebra().weight(x) - 1 + qm.depth(w); n >= 0; --n) {
            ModeResult r = act(qm, x, n, w);
            if (r.overflow)
                throw std::domain_error("uniform_annihilation_order: x_n w leaves the truncation");
            if (!r.value.is_zero()) {
                top = n;
                break;
            }
        }
        c.witnesses.push_back(top);
        if (top)
            c.T = std::max(c.T, *top + 1);
    }
    return c;
}

bool AnnihilationCertificate::replay(const QuasimoduleInstance& qm) const {
    bool witnessed = T == 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (int n = T; n <= qm.algebra().weight(X[i]) + qm.depth(w); ++n) {
            ModeResult r = act(qm, X[i], n, w);
            if (r.overflow || !r.value.is_zero())
                return false;
        }
        if (T > 0 && witnesses[i] == T - 1 && !act(qm, X[i], T - 1, w).value.is_zero())
            witnessed = true;
    }
    return witnessed;
}

std::vector<Word> difference_one_words(const QuasimoduleInstance& qm, BasisId w, const std::vector<BasisId>& X,
                                       int T, int lo, int maxLength, int maxDepth) {
    const AlgebraInstance& alg = qm.algebra();
    const int cap = qm.depth_cap();
    std::vector<BasisId> gens;
    for (BasisId x : X)
        if (x != alg.vacuum())
            gens.push_back(x);
    std::vector<Word> out;
    Word rev;     // rightmost mode first
    // extend to the left with indices below the current leftmost one
    std::function<void(int, int)> grow = [&](int below, int depth) {
        if (depth <= maxDepth)
            out.emplace_back(rev.rbegin(), rev.rend());
        if (maxLength >= 0 && static_cast<int>(rev.size()) >= maxLength)
            return;
        for (BasisId x : gens) {
            const int wt = alg.weight(x);
            // result depth depth + wt - m - 1 must lie in [0, cap]
            const int mmin = std::max(lo + 1, depth + wt - 1 - cap);
            const int mmax = std::min(below - 1, depth + wt - 1);
            for (int m = mmin; m <= mmax; ++m) {
                rev.push_back(mode_symbol(alg, x, m));
                grow(m, depth + wt - m - 1);
                rev.pop_back();
            }
        }
    };
    grow(T, qm.depth(w));
    std::sort(out.begin(), out.end(), WordOrder{});
    return out;
}

SubspaceBasis module_cn_subspace(const QuasimoduleInstance& qm, int n, int depthCap, bool positiveWeightOnly) {
    if (n < 1)
        throw std::invalid_argument("module_cn_subspace: n must be positive");
    if (depthCap > qm.depth_cap())
        throw std::invalid_argument("module_cn_subspace: depth cap above the module truncation");
    const AlgebraInstance& alg = qm.algebra();
    std::vector<std::vector<BasisId>> ambient;
    for (int d = 0; d <= depthCap; ++d)
        ambient.push_back(qm.of_depth(d));
    SubspaceBasis sub(ambient);
    for (int d = 0; d <= depthCap; ++d)
        for (int k = positiveWeightOnly ? 1 : 0; k <= d - n + 1; ++k) {
            if (k > alg.cutoff())
                throw std::domain_error("module_cn_subspace: algebra cutoff below the requested depth");
            for (BasisId u : alg.of_weight(k))
                for (BasisId wp : qm.of_depth(d - k - n + 1)) {
                    ModeResult r = qm.mode(u, -n, wp);
                    if (!r.value.is_zero())
                        sub.add(d, r.value, {SpanLabel::Kind::Product, u, -n, wp});
                }
        }
    return sub;
}

CnQuotientReport module_cn_quotient(const QuasimoduleInstance& qm, BasisId w, const std::vector<BasisId>& X, int T,
                                    int n, int depthCap, const CnOptions& opt) {
    CnQuotientReport rep;
    rep.subspace = n == 1 ? "c1" : "C" + std::to_string(n);
    rep.n = n;
    rep.T = T;
    rep.depth_cap = depthCap;
    rep.length_bound = T + n - 1;
    const SubspaceBasis cn = module_cn_subspace(qm, n, depthCap, opt.positive_weight_only);
    const auto words = difference_one_words(qm, w, X, T, -n, rep.length_bound, depthCap);
    std::vector<std::vector<Word>> by_depth(static_cast<std::size_t>(depthCap) + 1);
    for (const auto& word : words) {
        rep.max_word_length = std::max(rep.max_word_length, word.size());
        by_depth[static_cast<std::size_t>(qm.depth(w) + word_degree(word))].push_back(word);
    }
    rep.spanned = true;
    for (int d = 0; d <= depthCap; ++d) {
        CnQuotientRow row;
        row.depth = d;
        row.dim_w = cn.ambient_dim(d);
        row.dim_cn = cn.dim(d);
        row.dim_quotient = cn.codim(d);
        SubspaceBasis both = cn;
        for (const auto& word : by_depth[static_cast<std::size_t>(d)]) {
            ++row.words;
            GradedVector v = evaluate_word(word, qm, GradedVector::unit(w), true).value;
            both.add(d, v);
        }
        row.spanned = both.dim(d) == row.dim_w;
        rep.spanned = rep.spanned && row.spanned;
        rep.rows.push_back(row);
    }
    rep.stabilized = depthCap >= 1 && rep.rows[static_cast<std::size_t>(depthCap)].dim_quotient == 0 &&
                     rep.rows[static_cast<std::size_t>(depthCap) - 1].dim_quotient == 0;
    return rep;
}

CofiniteEquivalenceReport cofinite_equivalence_check(const QuasimoduleInstance& qm, BasisId w,
                                                     const std::vector<BasisId>& X, int T, int nMax, int depthCap) {
    CofiniteEquivalenceReport rep;
    std::vector<SubspaceBasis> subs;
    for (int n = 2; n <= nMax; ++n) {
        rep.quotients.push_back(module_cn_quotient(qm, w, X, T, n, depthCap));
        subs.push_back(module_cn_subspace(qm, n, depthCap));
    }
    auto inside = [&](const SubspaceBasis& a, const SubspaceBasis& b) {
        for (int d = 0; d <= depthCap; ++d)
            for (const auto& e : a.spanning(d))
                if (!b.contains(d, e.vec))
                    return false;
        return true;
    };
    bool larger_in_smaller = true, smaller_in_larger = true;
    for (int n = 2; n <= nMax; ++n)
        for (int m = 2; m < n; ++m) {
            ContainmentRow row{n, m, inside(subs[static_cast<std::size_t>(n - 2)], subs[static_cast<std::size_t>(m - 2)]),
                               inside(subs[static_cast<std::size_t>(m - 2)], subs[static_cast<std::size_t>(n - 2)])};
            larger_in_smaller = larger_in_smaller && row.n_in_m;
            smaller_in_larger = smaller_in_larger && row.m_in_n;
            rep.containment.push_back(row);
        }
    if (larger_in_smaller && smaller_in_larger)
        rep.direction = "equal";
    else if (larger_in_smaller)
        rep.direction = "C_n in C_m for n >= m";
    else if (smaller_in_larger)
        rep.direction = "C_m in C_n for n >= m";
    else
        rep.direction = "none";
    rep.verdicts_agree = std::all_of(rep.quotients.begin(), rep.quotients.end(), [&](const CnQuotientReport& q) {
        return q.stabilized == rep.quotients.front().stabilized;
    });
    return rep;
}

} // namespace vqm

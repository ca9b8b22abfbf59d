#include "vqm/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace vqm {

SubspaceBasis::SubspaceBasis(std::vector<std::vector<BasisId>> ambient) : ambient_(std::move(ambient)) {
    for (const auto& level : ambient_) {
        std::unordered_map<BasisId, std::size_t> pos;
        for (std::size_t i = 0; i < level.size(); ++i)
            pos.emplace(level[i], i);
        position_.push_back(std::move(pos));
        echelon_.emplace_back(level.size());
        span_.emplace_back();
    }
}

linalg::Column SubspaceBasis::column(int level, const GradedVector& v) const {
    if (level < 0 || level > cap())
        throw std::invalid_argument("SubspaceBasis: level out of range");
    const auto& pos = position_[static_cast<std::size_t>(level)];
    linalg::Column col(pos.size());
    for (const auto& [id, c] : v) {
        auto it = pos.find(id);
        if (it == pos.end())
            throw std::invalid_argument("SubspaceBasis: vector has a component outside level " +
                                        std::to_string(level));
        col[it->second] = c;
    }
    return col;
}

bool SubspaceBasis::add(int level, const GradedVector& v, SpanLabel label) {
    if (v.is_zero())
        return false;
    auto col = column(level, v);
    auto& ech = echelon_[static_cast<std::size_t>(level)];
    if (!ech.insert(col))
        return false;
    span_[static_cast<std::size_t>(level)].push_back({v, label});
    return true;
}

bool SubspaceBasis::contains(int level, const GradedVector& v) const {
    if (v.is_zero())
        return true;
    return echelon_.at(static_cast<std::size_t>(level)).contains(column(level, v));
}

namespace {

std::vector<std::vector<BasisId>> weight_levels(const AlgebraInstance& alg, int cap) {
    std::vector<std::vector<BasisId>> out;
    for (int k = 0; k <= cap; ++k)
        out.push_back(alg.of_weight(k));
    return out;
}

void check_cap(const AlgebraInstance& alg, int weightCap) {
    if (weightCap < 0 || weightCap > alg.cutoff())
        throw std::invalid_argument("weight cap must lie in [0, cutoff]");
}

} // namespace

SubspaceBasis c_n_subspace(const AlgebraInstance& alg, int n, int weightCap) {
    if (n < 2)
        throw std::invalid_argument("c_n_subspace: n must be at least 2 (use c1_subspace for n = 1)");
    check_cap(alg, weightCap);
    SubspaceBasis sub(weight_levels(alg, weightCap));
    for (int k = 0; k <= weightCap; ++k)
        for (int a = 0; a <= k; ++a) {
            const int b = k - a - n + 1;     // wt(u_{-n} v) = a + b + n - 1
            if (b < 0)
                continue;
            for (BasisId u : alg.of_weight(a))
                for (BasisId v : alg.of_weight(b)) {
                    auto r = alg.mode(u, -n, v);
                    if (r.overflow)
                        throw std::logic_error("c_n_subspace: unexpected overflow");
                    sub.add(k, r.value, {SpanLabel::Kind::Product, u, -n, v});
                }
        }
    return sub;
}

SubspaceBasis c1_subspace(const AlgebraInstance& alg, int weightCap) {
    check_cap(alg, weightCap);
    SubspaceBasis sub(weight_levels(alg, weightCap));
    for (int k = 0; k <= weightCap; ++k) {
        for (int a = 1; a < k; ++a)
            for (BasisId u : alg.of_weight(a))
                for (BasisId v : alg.of_weight(k - a)) {
                    auto r = alg.mode(u, -1, v);
                    if (r.overflow)
                        throw std::logic_error("c1_subspace: unexpected overflow");
                    sub.add(k, r.value, {SpanLabel::Kind::Product, u, -1, v});
                }
        if (k >= 1)
            for (BasisId w : alg.of_weight(k - 1)) {
                auto r = alg.sl2_action(-1, w);
                if (r.overflow)
                    throw std::logic_error("c1_subspace: L(-1) unavailable below the cutoff");
                sub.add(k, r.value, {SpanLabel::Kind::LMinus1, w, 0, 0});
            }
    }
    return sub;
}

QuotientBasis::QuotientBasis(std::string kind, const AlgebraInstance& alg, SubspaceBasis sub, int weightCap)
    : kind_(std::move(kind)), alg_(&alg), sub_(std::move(sub)), cap_(weightCap) {
    if (weightCap > sub_.cap())
        throw std::invalid_argument("QuotientBasis: subspace computed below the requested cap");
    by_weight_.assign(static_cast<std::size_t>(weightCap) + 1, {});
    for (int k = 0; k <= weightCap; ++k) {
        linalg::Echelon ech = sub_.echelon(k);
        for (BasisId id : alg.of_weight(k))
            if (ech.insert(sub_.column(k, GradedVector::unit(id)))) {
                reps_.push_back(id);
                by_weight_[static_cast<std::size_t>(k)].push_back(id);
            }
    }
}

const std::vector<BasisId>& QuotientBasis::reps_of_weight(int k) const {
    static const std::vector<BasisId> empty;
    if (k < 0 || k > cap_)
        return empty;
    return by_weight_[static_cast<std::size_t>(k)];
}

bool QuotientBasis::is_rep(BasisId id) const { return std::find(reps_.begin(), reps_.end(), id) != reps_.end(); }

Decomposition QuotientBasis::decompose(const GradedVector& g) const {
    Decomposition out;
    if (g.is_zero())
        return out;
    auto w = alg_->weight_of(g);
    if (!w)
        throw std::invalid_argument("decompose: vector is not homogeneous");
    if (*w > cap_)
        throw std::invalid_argument("decompose: weight above the quotient cap");
    const auto& xs = reps_of_weight(*w);
    const auto& span = sub_.spanning(*w);
    std::vector<linalg::Column> cols;
    for (BasisId x : xs)
        cols.push_back(sub_.column(*w, GradedVector::unit(x)));
    for (const auto& e : span)
        cols.push_back(sub_.column(*w, e.vec));
    auto sol = linalg::solve(cols, sub_.column(*w, g));
    if (!sol)
        throw std::logic_error("decompose: quotient representatives do not complete the subspace");
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.x_part.add(xs[i], (*sol)[i]);
    for (std::size_t i = 0; i < span.size(); ++i) {
        const Rational& c = (*sol)[xs.size() + i];
        if (c.is_zero())
            continue;
        const auto& lab = span[i].label;
        if (lab.kind == SpanLabel::Kind::Product)
            out.products.push_back({lab.u, lab.index, lab.v, c});
        else if (lab.kind == SpanLabel::Kind::LMinus1)
            out.lminus1.emplace_back(lab.u, c);
        else
            throw std::logic_error("decompose: unlabeled spanning vector");
    }
    return out;
}

QuotientBasis quotient_representatives(const AlgebraInstance& alg, const SubspaceBasis& sub, int weightCap,
                                       const std::string& kind) {
    return QuotientBasis(kind, alg, sub, weightCap);
}

} // namespace vqm

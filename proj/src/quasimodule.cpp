#include "vqm/quasimodule.hpp"

#include <stdexcept>

namespace vqm {

QuasimoduleInstance::QuasimoduleInstance(std::shared_ptr<const AlgebraInstance> alg, std::string kind,
                                         Rational lowestWeight, int depthCap, std::vector<ModuleBasisElement> basis,
                                         ActionFn action, AlgebraInstance::Sl2Tables sl2, QuasiPolynomial f)
    : alg_(std::move(alg)), kind_(std::move(kind)), lowest_(std::move(lowestWeight)), depth_cap_(depthCap),
      basis_(std::move(basis)), action_(std::move(action)), sl2_(std::move(sl2)), f_(std::move(f)),
      shared_(std::make_shared<Shared>()) {
    if (!alg_)
        throw std::invalid_argument("QuasimoduleInstance: missing algebra");
    if (depth_cap_ < 0)
        throw std::invalid_argument("QuasimoduleInstance: negative depth cap");
    by_depth_.assign(static_cast<std::size_t>(depth_cap_) + 1, {});
    for (BasisId i = 0; i < basis_.size(); ++i) {
        const auto& b = basis_[i];
        if (b.depth < 0 || b.depth > depth_cap_)
            throw std::invalid_argument("QuasimoduleInstance: basis depth outside [0, cap]: " + b.id);
        if (!by_name_.emplace(b.id, i).second)
            throw std::invalid_argument("QuasimoduleInstance: duplicate basis id " + b.id);
        by_depth_[static_cast<std::size_t>(b.depth)].push_back(i);
    }
    sl2_.lm1.resize(basis_.size());
    sl2_.l0.resize(basis_.size());
    sl2_.l1.resize(basis_.size());
}

BasisId QuasimoduleInstance::index_of(const std::string& id) const {
    auto it = by_name_.find(id);
    if (it == by_name_.end())
        throw std::out_of_range("unknown module basis id '" + id + "'");
    return it->second;
}

const std::vector<BasisId>& QuasimoduleInstance::of_depth(int d) const {
    static const std::vector<BasisId> empty;
    if (d < 0 || d > depth_cap_)
        return empty;
    return by_depth_[static_cast<std::size_t>(d)];
}

BasisId QuasimoduleInstance::lowest_vector() const {
    if (by_depth_.empty() || by_depth_[0].empty())
        throw std::logic_error("module has no depth-0 vector");
    return by_depth_[0].front();
}

const QuasiPolynomial& QuasimoduleInstance::f_for(BasisId u, BasisId v) const {
    auto it = f_override_.find({u, v});
    return it == f_override_.end() ? f_ : it->second;
}

void QuasimoduleInstance::set_f(BasisId u, BasisId v, QuasiPolynomial f) { f_override_[{u, v}] = std::move(f); }

QuasimoduleInstance QuasimoduleInstance::with_f(QuasiPolynomial f) const {
    QuasimoduleInstance out = *this;
    out.f_ = std::move(f);
    out.f_override_.clear();
    return out;
}

ModeResult QuasimoduleInstance::mode(BasisId u, int n, BasisId w) const {
    if (u >= alg_->dim() || w >= basis_.size())
        throw std::out_of_range("QuasimoduleInstance::mode: unknown basis id");
    const int d = alg_->weight(u) - n - 1 + depth(w);
    if (d < 0)
        return {};
    if (d > depth_cap_)
        return {{}, true};
    AlgebraInstance::YKey key{u, n, w};
    {
        std::lock_guard<std::mutex> lock(shared_->mu);
        auto it = shared_->memo.find(key);
        if (it != shared_->memo.end())
            return {it->second, false};
    }
    GradedVector r = action_(u, n, w);
    std::lock_guard<std::mutex> lock(shared_->mu);
    auto [it, inserted] = shared_->memo.emplace(key, std::move(r));
    return {it->second, false};
}

ModeResult QuasimoduleInstance::sl2_action(int j, BasisId w) const {
    if (w >= basis_.size())
        throw std::out_of_range("QuasimoduleInstance::sl2_action: unknown basis id");
    const std::vector<std::optional<GradedVector>>* table = nullptr;
    switch (j) {
    case -1: table = &sl2_.lm1; break;
    case 0: table = &sl2_.l0; break;
    case 1: table = &sl2_.l1; break;
    default: throw std::invalid_argument("sl2_action: j must be -1, 0 or 1");
    }
    const auto& e = (*table)[w];
    if (!e)
        return {{}, true};
    return {*e, false};
}

std::optional<int> QuasimoduleInstance::depth_of(const GradedVector& v) const {
    std::optional<int> d;
    for (const auto& [id, c] : v) {
        int k = depth(id);
        if (d && *d != k)
            return std::nullopt;
        d = k;
    }
    return d;
}

ModeResult module_action(const QuasimoduleInstance& qm, const GradedVector& u, int n, const GradedVector& w) {
    ModeResult out;
    for (const auto& [ui, uc] : u)
        for (const auto& [wi, wc] : w) {
            auto r = qm.mode(ui, n, wi);
            out.overflow |= r.overflow;
            out.value.add_scaled(r.value, uc * wc);
        }
    return out;
}

ModeResult module_sl2_action(const QuasimoduleInstance& qm, int j, const GradedVector& w) {
    ModeResult out;
    for (const auto& [id, c] : w) {
        auto r = qm.sl2_action(j, id);
        out.overflow |= r.overflow;
        out.value.add_scaled(r.value, c);
    }
    return out;
}

QuasimoduleInstance adjoint_module(std::shared_ptr<const AlgebraInstance> alg, QuasiPolynomial f) {
    std::vector<ModuleBasisElement> basis;
    for (const auto& b : alg->basis())
        basis.push_back({b.id, b.weight});
    const AlgebraInstance* raw = alg.get();
    auto action = [raw](BasisId u, int n, BasisId w) { return raw->mode(u, n, w).value; };
    auto sl2 = alg->sl2();
    int cap = alg->cutoff();
    return QuasimoduleInstance(std::move(alg), "adjoint", Rational(0), cap, std::move(basis), action, std::move(sl2),
                               std::move(f));
}

} // namespace vqm

#include "vqm/rewrite.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "vqm/errors.hpp"
#include "vqm/hash.hpp"

namespace vqm {

RewriteContext::RewriteContext(const QuasimoduleInstance& qm, BasisId w)
    : alg_(&qm.algebra()), qm_(&qm), w_(w), base_depth_(qm.depth(w)) {}

RewriteContext::RewriteContext(const AlgebraInstance& alg) : alg_(&alg), w_(alg.vacuum()) {}

const QuasiPolynomial& RewriteContext::f(BasisId u, BasisId v) const { return qm_ ? qm_->f_for(u, v) : one_; }

int RewriteContext::depth_below(const Word& w, std::size_t pos) const {
    int d = base_depth_;
    for (std::size_t k = pos + 1; k < w.size(); ++k)
        d += degree(w[k]);
    return d;
}

std::optional<GradedVector> RewriteContext::act_on_generator(BasisId x, int n) const {
    ModeResult r = qm_ ? qm_->mode(x, n, w_) : alg_->mode(x, n, w_);
    if (r.overflow)
        return std::nullopt;
    return r.value;
}

bool WordMetric::operator<(const WordMetric& o) const {
    if (length_first)
        return std::tie(s, r, raw, degree, neg_square_sum, inversions) <
               std::tie(o.s, o.r, o.raw, o.degree, o.neg_square_sum, o.inversions);
    return std::tie(s, raw, r, degree, neg_square_sum, inversions) <
           std::tie(o.s, o.raw, o.r, o.degree, o.neg_square_sum, o.inversions);
}

std::string WordMetric::str() const {
    std::ostringstream os;
    os << "(s=" << s << ", r=" << r << ", raw=[";
    for (std::size_t i = 0; i < raw.size(); ++i)
        os << (i ? "," : "") << raw[i];
    os << "], deg=" << degree << ", -sq=" << neg_square_sum << ", inv=" << inversions << ", lead=" << leading_index
       << ")";
    return os.str();
}

bool NormalizationTrace::valid() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const TraceStep& s) { return !s.worst_child || *s.worst_child < s.before; });
}

bool weakly_ordered(const Word& w, int T, Ordering ordering) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (ordering == Ordering::ByIndex && w[i].index > w[i + 1].index)
            return false;
        if (ordering == Ordering::ByDegree && degree(w[i]) < degree(w[i + 1]))
            return false;
    }
    if (ordering == Ordering::ByDegree)
        return w.empty() || degree(w.back()) >= -T - 1;
    return w.empty() || w.back().index < T;
}

bool strictly_ordered(const Word& w, int T) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].index >= w[i + 1].index)
            return false;
    return w.empty() || w.back().index < T;
}

Expression transpose_adjacent(const Monomial& m, std::size_t i, const RewriteContext& ctx) {
    const Word& w = m.word;
    if (i + 1 >= w.size())
        throw std::out_of_range("transpose_adjacent: position out of range");
    const ModeSymbol a = w[i], b = w[i + 1];
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Expression out = Expression::word(swapped, m.coeff);
    SymExpr r = commutator_expand(ctx.gen(a.gen), a.index, ctx.gen(b.gen), b.index, ctx.f(a.gen, b.gen),
                                  AnnihilationBound{ctx.depth_below(w, i + 1)});
    Word prefix(w.begin(), w.begin() + static_cast<long>(i));
    Word suffix(w.begin() + static_cast<long>(i) + 2, w.end());
    out.add(sandwich(prefix, realize(ctx.algebra(), r), suffix), m.coeff);
    return out;
}

Expression replace_generator_c2(const Monomial& m, std::size_t i, const Decomposition& d, const RewriteContext& ctx) {
    const Word& w = m.word;
    if (i >= w.size())
        throw std::out_of_range("replace_generator_c2: position out of range");
    const AlgebraInstance& alg = ctx.algebra();
    const ModeSymbol g = w[i];
    if (!d.lminus1.empty())
        throw std::invalid_argument("replace_generator_c2: decomposition has L(-1) parts");
    GradedVector recon = d.x_part;
    for (const auto& p : d.products) {
        if (p.index != -2)
            throw std::invalid_argument("replace_generator_c2: decomposition has a product other than u_{-2}v");
        recon.add_scaled(alg.mode(p.u, p.index, p.v).value, p.coeff);
    }
    if (!(recon == GradedVector::unit(g.gen)))
        throw std::invalid_argument("replace_generator_c2: decomposition is not exact");

    Word prefix(w.begin(), w.begin() + static_cast<long>(i));
    Word suffix(w.begin() + static_cast<long>(i) + 1, w.end());
    Expression out;
    for (const auto& [x, c] : d.x_part) {
        Word r = w;
        r[i] = mode_symbol(alg, x, g.index);
        out.add(r, c * m.coeff);
    }
    const AnnihilationBound bound{ctx.depth_below(w, i)};
    for (const auto& p : d.products) {
        SymExpr s = replacement_rhs(ctx.gen(p.u), ctx.gen(p.v), g.index, ctx.f(p.u, p.v), bound);
        out.add(sandwich(prefix, realize(alg, s), suffix), p.coeff * m.coeff);
    }
    return out;
}

namespace {

enum class Mode { Resolve, Diff0, Diff1 };

class Engine {
public:
    Engine(const QuotientBasis& X, const RewriteContext& ctx, Mode mode, std::optional<int> T, NormalizeOptions opt)
        : X_(X), ctx_(ctx), mode_(mode), T_(T), opt_(opt) {}

    NormalizationResult run(const Expression& e);

private:
    struct KeyLess {
        bool operator()(const std::pair<WordMetric, Word>& a, const std::pair<WordMetric, Word>& b) const {
            if (a.first < b.first)
                return true;
            if (b.first < a.first)
                return false;
            return WordOrder{}(a.second, b.second);
        }
    };

    bool in_x(BasisId g) const { return X_.is_rep(g); }
    bool inverted(const ModeSymbol& a, const ModeSymbol& b) const;
    WordMetric metric(const Word& w) const;
    const Expression& resolve_mode(BasisId g, int n, int depth);
    void push(const Word& w, const Rational& c);

    const QuotientBasis& X_;
    const RewriteContext& ctx_;
    Mode mode_;
    std::optional<int> T_;     // no annihilation rule when unset
    NormalizeOptions opt_;
    std::map<std::pair<WordMetric, Word>, Rational, KeyLess> pending_;
    std::map<std::tuple<BasisId, int, int>, Expression> resolved_;
};

bool Engine::inverted(const ModeSymbol& a, const ModeSymbol& b) const {
    switch (mode_) {
    case Mode::Resolve:
        return false;
    case Mode::Diff1:
        return a.index > b.index;
    case Mode::Diff0:
        break;
    }
    if (opt_.ordering == Ordering::ByIndex)
        return std::make_pair(a.index, a.gen) > std::make_pair(b.index, b.gen);
    return std::make_pair(a.index - a.weight, a.gen) > std::make_pair(b.index - b.weight, b.gen);
}

WordMetric Engine::metric(const Word& w) const {
    WordMetric m;
    m.s = filtration_level(w);
    m.r = static_cast<int>(w.size());
    for (const auto& x : w) {
        if (!in_x(x.gen))
            m.raw.push_back(x.weight);
        m.neg_square_sum -= static_cast<long>(x.index) * x.index;
    }
    std::sort(m.raw.rbegin(), m.raw.rend());
    m.degree = word_degree(w);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (inverted(w[i], w[j]))
                ++m.inversions;
    m.leading_index = w.empty() ? 0 : w.front().index;
    m.length_first = mode_ == Mode::Diff1;
    return m;
}

const Expression& Engine::resolve_mode(BasisId g, int n, int depth) {
    auto key = std::make_tuple(g, n, depth);
    if (auto it = resolved_.find(key); it != resolved_.end())
        return it->second;
    const AlgebraInstance& alg = ctx_.algebra();
    if (alg.weight(g) > X_.cap())
        throw std::domain_error("X does not cover weight " + std::to_string(alg.weight(g)));
    const Decomposition d = X_.decompose(GradedVector::unit(g));
    Expression e;
    for (const auto& [x, c] : d.x_part)
        e.add(Word{mode_symbol(alg, x, n)}, c);
    const AnnihilationBound bound{depth};
    for (const auto& p : d.products) {
        SymExpr s = assoc_expand(ctx_.gen(p.u), p.index, ctx_.gen(p.v), n, ctx_.f(p.u, p.v), bound);
        e.add(realize(alg, s), p.coeff);
    }
    // (L(-1)a)_n = -n a_{n-1}
    for (const auto& [a, c] : d.lminus1)
        e.add(Word{mode_symbol(alg, a, n - 1)}, c * Rational(-n));
    return resolved_.emplace(key, std::move(e)).first->second;
}

void Engine::push(const Word& w, const Rational& c) {
    auto key = std::make_pair(metric(w), w);
    auto [it, inserted] = pending_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            pending_.erase(it);
    }
}

NormalizationResult Engine::run(const Expression& e) {
    const AlgebraInstance& alg = ctx_.algebra();
    NormalizationResult res;
    res.trace.input_hash = sha256_hex(expression_str(alg, e));
    for (const auto& [w, c] : e.terms())
        push(w, c);
    long steps = 0;
    while (!pending_.empty()) {
        auto node = std::prev(pending_.end());
        const WordMetric before = node->first.first;
        const Word w = node->first.second;
        const Rational c = node->second;
        pending_.erase(node);
        if (++steps > opt_.budget)
            throw BudgetExceeded("normalization exceeded " + std::to_string(opt_.budget) + " steps");

        std::optional<Expression> children;
        TraceStep step;
        step.before = before;
        const std::size_t len = w.size();

        // vacuum modes: 1_n = delta_{n,-1}
        for (std::size_t i = len; i-- > 0;)
            if (w[i].gen == alg.vacuum()) {
                step.rule = "vacuum";
                step.position = i;
                children.emplace();
                if (w[i].index == -1) {
                    Word r = w;
                    r.erase(r.begin() + static_cast<long>(i));
                    children->add(r, Rational(1));
                }
                break;
            }

        // grading: a vector of negative depth is zero
        if (step.rule.empty()) {
            int d = ctx_.base_depth();
            for (std::size_t i = len; i-- > 0;) {
                d += degree(w[i]);
                if (d < 0) {
                    step.rule = "grading";
                    step.position = i;
                    children.emplace();
                    break;
                }
            }
        }

        // uniform annihilation of the generating vector
        if (step.rule.empty() && T_ && len > 0 && in_x(w.back().gen) && w.back().index >= *T_) {
            step.rule = "annihilate";
            step.position = len - 1;
            children.emplace();
            if (opt_.check_annihilation) {
                auto v = ctx_.act_on_generator(w.back().gen, w.back().index);
                if (v && !v->is_zero())
                    throw AnnihilationViolation("generator " + alg.name(w.back().gen) + " mode " +
                                                std::to_string(w.back().index) + " does not kill the generating vector");
            }
        }

        if (step.rule.empty())
            for (std::size_t i = len; i-- > 0;)
                if (!in_x(w[i].gen)) {
                    step.rule = "resolve";
                    step.position = i;
                    Word prefix(w.begin(), w.begin() + static_cast<long>(i));
                    Word suffix(w.begin() + static_cast<long>(i) + 1, w.end());
                    children = sandwich(prefix, resolve_mode(w[i].gen, w[i].index, ctx_.depth_below(w, i)), suffix);
                    break;
                }

        if (step.rule.empty() && mode_ == Mode::Diff1)
            for (std::size_t i = len; i-- > 1;)
                if (w[i - 1].index == w[i].index) {
                    step.rule = "straighten";
                    step.position = i - 1;
                    const ModeSymbol a = w[i - 1], b = w[i];
                    SymExpr s = straighten_word(ctx_.gen(a.gen), ctx_.gen(b.gen), a.index, ctx_.f(a.gen, b.gen),
                                                ctx_.f(b.gen, a.gen), AnnihilationBound{ctx_.depth_below(w, i)});
                    Word prefix(w.begin(), w.begin() + static_cast<long>(i) - 1);
                    Word suffix(w.begin() + static_cast<long>(i) + 1, w.end());
                    children = sandwich(prefix, realize(alg, s), suffix);
                    break;
                }

        if (step.rule.empty())
            for (std::size_t i = len; i-- > 1;)
                if (inverted(w[i - 1], w[i])) {
                    step.rule = "swap";
                    step.position = i - 1;
                    children = transpose_adjacent(Monomial{Rational(1), w}, i - 1, ctx_);
                    break;
                }

        if (step.rule.empty()) {
            res.value.add(w, c);
            continue;
        }
        for (const auto& [cw, x] : children->terms()) {
            WordMetric m = metric(cw);
            if (!step.worst_child || *step.worst_child < m)
                step.worst_child = m;
        }
        if (step.worst_child && !(*step.worst_child < before))
            throw MetricViolation("rule " + step.rule + " on " + word_str(alg, w) + " did not decrease the metric: " +
                                  before.str() + " -> " + step.worst_child->str());
        for (const auto& [cw, x] : children->terms())
            push(cw, c * x);
        res.trace.steps.push_back(std::move(step));
    }
    res.trace.output_hash = sha256_hex(expression_str(alg, res.value));
    return res;
}

GradedVector evaluate_on_algebra(const AlgebraInstance& alg, const Expression& e, bool& overflow) {
    GradedVector out;
    for (const auto& [w, c] : e.terms()) {
        GradedVector cur = GradedVector::unit(alg.vacuum());
        for (auto it = w.rbegin(); it != w.rend() && !cur.is_zero(); ++it) {
            ModeResult r = mode_action(alg, GradedVector::unit(it->gen), it->index, cur);
            overflow = overflow || r.overflow;
            cur = std::move(r.value);
        }
        out.add_scaled(cur, c);
    }
    return out;
}

} // namespace

Expression express_algebra_element(const AlgebraInstance& alg, const GradedVector& v, const QuotientBasis& X) {
    Expression e;
    for (const auto& [g, c] : v)
        e.add(g == alg.vacuum() ? Word{} : Word{mode_symbol(alg, g, -1)}, c);
    RewriteContext ctx(alg);
    // u_n 1 = 0 for n >= 0
    Expression out = Engine(X, ctx, Mode::Resolve, 0, {}).run(e).value;
    bool overflow = false;
    GradedVector back = evaluate_on_algebra(alg, out, overflow);
    if (!overflow && !(back == v))
        throw std::logic_error("express_algebra_element: result does not evaluate back to the input");
    return out;
}

NormalizationResult express_module_element(const Expression& e, const QuotientBasis& X, const RewriteContext& ctx,
                                           long budget) {
    NormalizeOptions opt;
    opt.budget = budget;
    return Engine(X, ctx, Mode::Resolve, std::nullopt, opt).run(e);
}

NormalizationResult normalize_diff0(const Expression& e, const QuotientBasis& X, int T, const RewriteContext& ctx,
                                    const NormalizeOptions& opt) {
    return Engine(X, ctx, Mode::Diff0, T, opt).run(e);
}

NormalizationResult normalize_diff1(const Expression& e, const QuotientBasis& X, int T, const RewriteContext& ctx,
                                    const NormalizeOptions& opt) {
    return Engine(X, ctx, Mode::Diff1, T, opt).run(e);
}

} // namespace vqm

#include "vqm/modes.hpp"

#include <sstream>

#include "vqm/errors.hpp"

namespace vqm {

ModeSymbol mode_symbol(const AlgebraInstance& alg, BasisId gen, int index) {
    return {gen, alg.weight(gen), index};
}

int degree(const ModeSymbol& m) { return m.weight - m.index - 1; }

int word_degree(const Word& w) {
    int d = 0;
    for (const auto& m : w)
        d += degree(m);
    return d;
}

int filtration_level(const Word& w) {
    int s = 0;
    for (const auto& m : w)
        s += m.weight;
    return s;
}

bool WordOrder::operator()(const Word& a, const Word& b) const {
    const int sa = filtration_level(a), sb = filtration_level(b);
    if (sa != sb)
        return sa < sb;
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].gen != b[i].gen)
            return a[i].gen < b[i].gen;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].index != b[i].index)
            return a[i].index < b[i].index;
    return false;
}

Expression Expression::word(Word w, Rational c) {
    Expression e;
    e.add(w, c);
    return e;
}

void Expression::add(const Word& w, const Rational& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Expression::add(const Expression& e, const Rational& c) {
    if (c.is_zero())
        return;
    for (const auto& [w, x] : e.terms_)
        add(w, x * c);
}

Expression Expression::scaled(const Rational& c) const {
    Expression out;
    out.add(*this, c);
    return out;
}

std::vector<Monomial> Expression::monomials() const {
    std::vector<Monomial> out;
    for (const auto& [w, c] : terms_)
        out.push_back({c, w});
    return out;
}

Rational Expression::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

Expression sandwich(const Word& prefix, const Expression& e, const Word& suffix) {
    Expression out;
    for (const auto& [w, c] : e.terms()) {
        Word full = prefix;
        full.insert(full.end(), w.begin(), w.end());
        full.insert(full.end(), suffix.begin(), suffix.end());
        out.add(full, c);
    }
    return out;
}

ModeResult evaluate_word(const Word& word, const QuasimoduleInstance& qm, const GradedVector& w, bool strict) {
    ModeResult cur{w, false};
    for (auto it = word.rbegin(); it != word.rend() && !cur.value.is_zero(); ++it) {
        if (it->gen >= qm.algebra().dim())
            throw std::out_of_range("evaluate: unresolvable generator");
        auto r = module_action(qm, GradedVector::unit(it->gen), it->index, cur.value);
        if (r.overflow && strict)
            throw OverflowError("evaluate: truncation overflow at mode " + qm.algebra().name(it->gen) + "_" +
                                std::to_string(it->index));
        r.overflow |= cur.overflow;
        cur = std::move(r);
    }
    return cur;
}

ModeResult evaluate(const Expression& e, const QuasimoduleInstance& qm, const GradedVector& w, bool strict) {
    ModeResult out;
    for (const auto& [word, c] : e.terms()) {
        auto r = evaluate_word(word, qm, w, strict);
        out.overflow |= r.overflow;
        out.value.add_scaled(r.value, c);
    }
    return out;
}

std::string word_str(const AlgebraInstance& alg, const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i)
        os << (i ? " " : "") << alg.name(w[i].gen) << "_" << w[i].index;
    return w.empty() ? "w" : os.str() + " w";
}

std::string expression_str(const AlgebraInstance& alg, const Expression& e) {
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        os << (first ? "" : " + ") << "(" << c << ") " << word_str(alg, w);
        first = false;
    }
    return os.str();
}

} // namespace vqm

#include "vqm/formal_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace vqm {

Rational FormalSeries::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool FormalSeries::in_box(const Exponent& e) const {
    return std::all_of(e.begin(), e.end(), [&](int x) { return x >= -bound_ && x <= bound_; });
}

void FormalSeries::add(const Exponent& e, const Rational& c) {
    if (c.is_zero() || !in_box(e))
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

FormalSeries FormalSeries::monomial(int bound, const Exponent& e, const Rational& c) {
    FormalSeries s(bound);
    s.add(e, c);
    return s;
}

FormalSeries FormalSeries::from_quasi_poly(int bound, const QuasiPolynomial& f) {
    FormalSeries s(bound);
    for (const auto& [ij, a] : f.terms())
        s.add({0, ij.first, ij.second}, a);
    return s;
}

FormalSeries FormalSeries::delta(int bound, int den, int p, const Rational& cp, int q, const Rational& cq,
                                 int sign) {
    if (den == p || den == q || p == q || den < 0 || den > 2 || p < 0 || p > 2 || q < 0 || q > 2)
        throw std::invalid_argument("FormalSeries::delta: variables must be distinct");
    if (cp.is_zero())
        throw std::invalid_argument("FormalSeries::delta: leading coefficient must be non-zero");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("FormalSeries::delta: sign must be +1 or -1");
    FormalSeries s(bound);
    // (cp x_p + cq x_q)^r = sum_{k>=0} binom(r,k) cp^{r-k} cq^k x_p^{r-k} x_q^k
    for (int r = -bound - 1; r <= bound + 1; ++r) {
        const int e_den = -r - 1;
        if (e_den < -bound || e_den > bound)
            continue;
        const Rational sr = (r % 2 == 0 || sign == 1) ? Rational(1) : Rational(-1);
        for (int k = 0; k <= 2 * bound + 2; ++k) {
            const int e_p = r - k;
            if (e_p < -bound || k > bound)
                break;
            if (e_p > bound)
                continue;
            Rational c = binom(r, k) * sr;
            if (c.is_zero())
                continue;
            // cp^{r-k} with possibly negative exponent
            Rational pw(1);
            const Rational base = e_p >= 0 ? cp : Rational(1) / cp;
            for (int t = 0; t < std::abs(e_p); ++t)
                pw *= base;
            for (int t = 0; t < k; ++t)
                pw *= cq;
            Exponent e{};
            e[static_cast<std::size_t>(den)] = e_den;
            e[static_cast<std::size_t>(p)] = e_p;
            e[static_cast<std::size_t>(q)] = k;
            s.add(e, c * pw);
        }
    }
    return s;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries out(std::min(a.bound_, b.bound_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
}

} // namespace vqm

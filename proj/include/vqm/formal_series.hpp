#pragma once

#include <array>
#include <map>

#include "vqm/exact.hpp"

namespace vqm {

/// Sparse formal Laurent series in (x0, x1, x2), truncated to a box
/// |exponent| <= bound in every variable.
class FormalSeries {
public:
    using Exponent = std::array<int, 3>;
    using Terms = std::map<Exponent, Rational>;

    explicit FormalSeries(int bound) : bound_(bound) {}

    int bound() const { return bound_; }
    const Terms& terms() const { return terms_; }
    Rational coeff(const Exponent& e) const;
    bool in_box(const Exponent& e) const;

    /// Adds c * x^e when e lies in the box.
    void add(const Exponent& e, const Rational& c);

    static FormalSeries monomial(int bound, const Exponent& e, const Rational& c = Rational(1));
    /// f(x1, x2) as a series.
    static FormalSeries from_quasi_poly(int bound, const QuasiPolynomial& f);

    /// x_den^{-1} delta(num / (sign * x_den)) = sum_r num^r sign^{-r} x_den^{-r-1},
    /// num = cp x_p + cq x_q, with every power of num (including negative ones)
    /// expanded in non-negative powers of x_q. Terms outside the box are dropped.
    static FormalSeries delta(int bound, int den, int p, const Rational& cp, int q, const Rational& cq, int sign);

    /// Product truncated to the box. Exact for every coefficient whose
    /// contributing terms all lie inside the boxes of both factors.
    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);

private:
    int bound_;
    Terms terms_;
};

} // namespace vqm

#include "vqm/exact.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vqm {

Rational::Rational(long num, long den) {
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto valid = [](const std::string& s, bool allow_sign) {
        if (s.empty())
            return false;
        std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size())
            return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!valid(num, true) || !valid(den, false))
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0)
        throw std::domain_error("Rational: zero denominator in '" + text + "'");
    return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational binom(long m, long k) {
    if (k < 0)
        throw std::invalid_argument("binom: negative lower index");
    mpz_class num = 1, den = 1;
    for (long t = 0; t < k; ++t) {
        num *= (m - t);
        den *= (t + 1);
    }
    return Rational(mpq_class(num, den));
}

QuasiPolynomial::QuasiPolynomial() { terms_[{0, 0}] = Rational(1); }

QuasiPolynomial::QuasiPolynomial(Terms terms) : terms_(std::move(terms)) {
    auto it = terms_.find({0, 0});
    if (it == terms_.end() || it->second != Rational(1))
        throw std::invalid_argument("QuasiPolynomial: coefficient of x1^0 x2^0 must be 1");
    for (const auto& [key, c] : terms_) {
        if (key.first < 0 || key.second < 0)
            throw std::invalid_argument("QuasiPolynomial: negative exponent");
        if (c.is_zero())
            throw std::invalid_argument("QuasiPolynomial: explicit zero coefficient");
        bound_ = std::max({bound_, key.first, key.second});
    }
}

Rational QuasiPolynomial::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

QuasiPolynomial QuasiPolynomial::swapped() const {
    Terms t;
    for (const auto& [key, c] : terms_)
        t[{key.second, key.first}] = c;
    return QuasiPolynomial(std::move(t));
}

std::string QuasiPolynomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c << ")";
        if (key.first)
            os << "*x1^" << key.first;
        if (key.second)
            os << "*x2^" << key.second;
    }
    return os.str();
}

QuasiPolynomial normalize_quasi_poly(const std::map<std::pair<int, int>, Rational>& raw) {
    int min_i = std::numeric_limits<int>::max(), min_j = std::numeric_limits<int>::max();
    bool any = false;
    for (const auto& [key, c] : raw) {
        if (c.is_zero())
            continue;
        any = true;
        min_i = std::min(min_i, key.first);
        min_j = std::min(min_j, key.second);
    }
    if (!any)
        throw std::invalid_argument("normalize_quasi_poly: zero polynomial");
    auto lead = raw.find({min_i, min_j});
    if (lead == raw.end() || lead->second.is_zero())
        throw std::invalid_argument(
            "normalize_quasi_poly: no monomial rescaling gives a_00 = 1; supply a different representative");
    QuasiPolynomial::Terms out;
    for (const auto& [key, c] : raw)
        if (!c.is_zero())
            out[{key.first - min_i, key.second - min_j}] = c / lead->second;
    return QuasiPolynomial(std::move(out));
}

} // namespace vqm

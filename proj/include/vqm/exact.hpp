#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace vqm {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {}     // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "n", "-n" or "n/d".
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return q_; }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    /// Always "num/den", also for integers.
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_.get_str(); }

private:
    mpq_class q_{0};
};

/// Generalized binomial coefficient m(m-1)...(m-k+1)/k! for any integer m.
/// Throws std::invalid_argument for k < 0.
Rational binom(long m, long k);

/// (-1)^e for any integer e.
inline int neg_one_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

/// Quasi-locality polynomial f(x1,x2) = sum a_ij x1^i x2^j, normalized so that
/// a_00 = 1 and all exponents are non-negative.
class QuasiPolynomial {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, Rational>;

    /// f = 1.
    QuasiPolynomial();

    /// Validates normalization; throws std::invalid_argument when a_00 != 1,
    /// an exponent is negative, or a stored coefficient is zero.
    explicit QuasiPolynomial(Terms terms);

    const Terms& terms() const { return terms_; }
    /// The bound L: every stored (i,j) has i <= L and j <= L.
    int degree_bound() const { return bound_; }
    Rational coeff(int i, int j) const;
    bool is_one() const { return terms_.size() == 1; }

    /// f(x2, x1).
    QuasiPolynomial swapped() const;

    std::string str() const;

    friend bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
    int bound_ = 0;
};

/// Shifts a non-zero Laurent polynomial so that its componentwise minimal
/// exponent pair becomes (0,0) and rescales to a_00 = 1.
/// Throws std::invalid_argument for the zero polynomial, or when the shifted
/// polynomial has no constant term.
QuasiPolynomial normalize_quasi_poly(const std::map<std::pair<int, int>, Rational>& raw);

} // namespace vqm

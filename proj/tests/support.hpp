#pragma once

// Shared fixtures for the unit tests and the acceptance runner.

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "vqm/heisenberg.hpp"
#include "vqm/modes.hpp"
#include "vqm/subspace.hpp"

namespace vqm::testing {

inline QuasiPolynomial poly(std::map<std::pair<int, int>, long> t) {
    QuasiPolynomial::Terms terms;
    for (auto [k, c] : t)
        terms[k] = Rational(c);
    return QuasiPolynomial(terms);
}

/// {1, 1+x1, 1+x2, 1+x1x2, 1+x1+x2+x1x2}
inline std::vector<QuasiPolynomial> battery() {
    return {QuasiPolynomial(), poly({{{0, 0}, 1}, {{1, 0}, 1}}), poly({{{0, 0}, 1}, {{0, 1}, 1}}),
            poly({{{0, 0}, 1}, {{1, 1}, 1}}), poly({{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}})};
}

/// Twelve polynomials with support in {0,1,2}^2 and constant term 1.
inline std::vector<QuasiPolynomial> wide_battery() {
    auto b = battery();
    QuasiPolynomial::Terms t;
    t[{0, 0}] = Rational(1);
    t[{2, 0}] = Rational(-1);
    b.emplace_back(t);
    t = {};
    t[{0, 0}] = Rational(1);
    t[{0, 2}] = Rational(3, 2);
    b.emplace_back(t);
    t = {};
    t[{0, 0}] = Rational(1);
    t[{2, 2}] = Rational(-2, 3);
    b.emplace_back(t);
    t = {};
    t[{0, 0}] = Rational(1);
    t[{1, 2}] = Rational(5);
    t[{2, 1}] = Rational(-1, 7);
    b.emplace_back(t);
    t = {};
    t[{0, 0}] = Rational(1);
    t[{1, 0}] = Rational(-2);
    t[{2, 0}] = Rational(1);
    b.emplace_back(t);
    t = {};
    t[{0, 0}] = Rational(1);
    t[{0, 1}] = Rational(2);
    t[{1, 1}] = Rational(1, 2);
    t[{2, 2}] = Rational(1, 3);
    b.emplace_back(t);
    t = {};
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j)
            t[{i, j}] = Rational(i + j + 1, 1 + i);
    b.emplace_back(t);
    return b;
}

/// mt19937_64 with the modulo mapping, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    int range(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    template <class T> const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))]; }

private:
    std::mt19937_64 gen_;
};

/// Depth of every partial product of w applied to a vector of depth d0 stays in [0, cap].
inline bool depths_within(const Word& w, int d0, int cap) {
    int d = d0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        d += degree(*it);
        if (d < 0 || d > cap)
            return false;
    }
    return true;
}

/// Random word over gens with indices in [lo, hi] whose partial depths stay in [0, cap].
inline Word random_word(Rng& rng, const AlgebraInstance& alg, const std::vector<BasisId>& gens, int minLen, int maxLen,
                        int lo, int hi, int d0, int cap) {
    for (;;) {
        Word w;
        const int len = rng.range(minLen, maxLen);
        for (int i = 0; i < len; ++i)
            w.push_back(mode_symbol(alg, rng.pick(gens), rng.range(lo, hi)));
        if (depths_within(w, d0, cap))
            return w;
    }
}

inline QuotientBasis c1_reps(const AlgebraInstance& alg, int cap) {
    return quotient_representatives(alg, c1_subspace(alg, cap), cap, "c1");
}

inline QuotientBasis c2_reps(const AlgebraInstance& alg, int cap) {
    return quotient_representatives(alg, c_n_subspace(alg, 2, cap), cap, "c2");
}

} // namespace vqm::testing

#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "vqm/algebra.hpp"
#include "vqm/quasimodule.hpp"

namespace vqm {

/// The mode u_n of a homogeneous algebra basis vector u.
struct ModeSymbol {
    BasisId gen = 0;
    int weight = 0;     // wt(gen), cached so words are self-describing
    int index = 0;

    friend bool operator==(const ModeSymbol&, const ModeSymbol&) = default;
};

ModeSymbol mode_symbol(const AlgebraInstance& alg, BasisId gen, int index);

/// Leftmost mode first; a word acts on the generating vector right to left.
using Word = std::vector<ModeSymbol>;

/// wt(u) - n - 1.
int degree(const ModeSymbol& m);
int word_degree(const Word& w);
/// Sum of the generator weights.
int filtration_level(const Word& w);

/// Canonical total order: (filtration level, length, generator ids, indices).
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const;
};

struct Monomial {
    Rational coeff;
    Word word;
};

/// Exact linear combination of words applied to a fixed generating vector,
/// with like terms merged and no zero coefficients.
class Expression {
public:
    using Terms = std::map<Word, Rational, WordOrder>;

    Expression() = default;
    static Expression word(Word w, Rational c = Rational(1));
    /// The generating vector itself.
    static Expression identity() { return word({}); }

    void add(const Word& w, const Rational& c);
    void add(const Expression& e, const Rational& c = Rational(1));
    Expression scaled(const Rational& c) const;

    const Terms& terms() const { return terms_; }
    std::vector<Monomial> monomials() const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coeff(const Word& w) const;

    friend bool operator==(const Expression& a, const Expression& b) { return a.terms_ == b.terms_; }
    friend Expression operator+(Expression a, const Expression& b) { a.add(b); return a; }
    friend Expression operator-(Expression a, const Expression& b) { a.add(b, Rational(-1)); return a; }

private:
    Terms terms_;
};

/// prefix * e * suffix, word by word.
Expression sandwich(const Word& prefix, const Expression& e, const Word& suffix);

/// Applies the modes of every word right to left to w. When strict is set an
/// OverflowError is thrown as soon as a truncated component is needed.
ModeResult evaluate(const Expression& e, const QuasimoduleInstance& qm, const GradedVector& w, bool strict = false);
ModeResult evaluate_word(const Word& word, const QuasimoduleInstance& qm, const GradedVector& w, bool strict = false);

std::string word_str(const AlgebraInstance& alg, const Word& w);
std::string expression_str(const AlgebraInstance& alg, const Expression& e);

} // namespace vqm

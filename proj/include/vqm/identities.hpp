#pragma once

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "vqm/algebra.hpp"
#include "vqm/modes.hpp"

namespace vqm {

enum class IdentityKind { Assoc, Comm };
std::string identity_name(IdentityKind k);

/// Coefficients of an identity
///     sum uv[(a,b)] u_a v_b + sum vu[(b,a)] v_b u_a = sum prod[(k,c)] (u_k v)_c
/// restricted to entries whose two indices lie in [-window, window].
struct CoefficientTable {
    using Table = std::map<std::pair<int, int>, Rational>;
    int window = 0;
    Table uv, vu, prod;

    friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

/// Left and right sides of the quasi-associativity identity with weight
/// x0^m x2^n: the left side fills prod, the right side fills uv and vu.
std::pair<CoefficientTable, CoefficientTable> quasi_assoc_sides(const QuasiPolynomial& f, int m, int n, int window);
/// Left and right sides of the quasi-commutativity identity with weight
/// x1^m x2^n: the left side fills uv and vu, the right side fills prod.
std::pair<CoefficientTable, CoefficientTable> quasi_comm_sides(const QuasiPolynomial& f, int m, int n, int window);
/// Both sides merged into one table.
CoefficientTable closed_form_table(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind);

/// The same table obtained independently by expanding the three
/// delta-function terms of the quasi-Jacobi identity as formal series and
/// extracting residues.
CoefficientTable residue_table(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind);

struct ResidueReport {
    std::string identity;
    QuasiPolynomial f;
    int m = 0, n = 0, window = 0;
    bool passed = false;
    std::size_t entries = 0;
    std::string mismatch;     // first differing entry, empty when passed
};

ResidueReport compare_tables(const CoefficientTable& expected, const CoefficientTable& actual);
ResidueReport verify_residue_derivation(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind);

// ---------------------------------------------------------------------------
// Symbolic constructors

struct GenInfo {
    BasisId id = 0;
    int weight = 0;
};

/// Two-mode word a_i b_j, or product mode (a_i b)_j.
struct SymTerm {
    enum class Kind { Modes2 = 0, Product = 1 };
    Kind kind = Kind::Modes2;
    GenInfo a;
    int i = 0;
    GenInfo b;
    int j = 0;

    friend bool operator<(const SymTerm& x, const SymTerm& y) {
        return std::tie(x.kind, x.a.id, x.i, x.b.id, x.j) < std::tie(y.kind, y.a.id, y.i, y.b.id, y.j);
    }
    friend bool operator==(const SymTerm& x, const SymTerm& y) { return !(x < y) && !(y < x); }
};

using SymExpr = std::map<SymTerm, Rational>;

SymTerm modes2(GenInfo a, int i, GenInfo b, int j);
SymTerm product(GenInfo a, int i, GenInfo b, int j);
void sym_add(SymExpr& e, const SymTerm& t, const Rational& c);

/// Operator degree of a term: sum of mode degrees, or deg of the product mode.
int sym_degree(const SymTerm& t);

/// Grading-based annihilation: every term is applied to a vector of the given
/// depth above the lowest weight of the module. A mode of degree g on a
/// vector of depth d is zero when g + d < 0.
struct AnnihilationBound {
    int depth = 0;

    bool kills_mode(int weight, int index, int atDepth) const { return weight - index - 1 + atDepth < 0; }
    bool kills(const SymTerm& t) const;
    /// Throws std::domain_error for a negative depth (the recursion would not terminate).
    void validate() const;
};

/// (u_m v)_n expanded by the quasi-associativity identity until every
/// recursive (u_m v)_K is killed by the bound. The output holds two-mode words
/// in u, v and product modes (u_k v)_c with k > m.
SymExpr assoc_expand(GenInfo u, int m, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound);

/// (u_{-2} v)_n by the replacement identity, iterated.
SymExpr replacement_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound);

/// u_n v_n for n < 0 and v_n u_n for n >= 0, with repeated-index words
/// re-straightened at strictly larger indices. fuv governs the pair (u, v),
/// fvu the pair (v, u).
SymExpr straighten_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& fuv, const QuasiPolynomial& fvu,
                       const AnnihilationBound& bound);
SymExpr straighten_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound);

/// The repeated word a_p b_p itself, straightened (orientation chosen by the sign of p).
SymExpr straighten_word(GenInfo a, GenInfo b, int p, const QuasiPolynomial& fab, const QuasiPolynomial& fba,
                        const AnnihilationBound& bound);

/// [u_m, v_n] as a combination of product modes (u_k v)_c with k >= 0 only.
SymExpr commutator_expand(GenInfo u, int m, GenInfo v, int n, const QuasiPolynomial& f,
                          const AnnihilationBound& bound);

/// Symbolic form to a concrete Expression: two-mode words become words,
/// product modes are expanded in the algebra basis and vacuum modes
/// 1_c = delta_{c,-1} are removed. Throws when a product leaves the cutoff.
Expression realize(const AlgebraInstance& alg, const SymExpr& e);

/// Table view of a symbolic form for the ordered pair (u, v), u != v.
CoefficientTable to_table(const SymExpr& e, BasisId u, BasisId v, int window);

/// Largest output degree minus the degree of the eliminated operator. Never
/// positive for the rule constructors.
int degree_excess(const SymExpr& e, int eliminatedDegree);

} // namespace vqm

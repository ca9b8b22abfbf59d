#include "vqm/identities.hpp"

#include <climits>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "vqm/errors.hpp"
#include "vqm/formal_series.hpp"

namespace vqm {

std::string identity_name(IdentityKind k) { return k == IdentityKind::Assoc ? "quasi-assoc" : "quasi-comm"; }

namespace {

bool in_window(int a, int b, int w) { return a >= -w && a <= w && b >= -w && b <= w; }

void put(CoefficientTable::Table& t, int a, int b, const Rational& c, int window) {
    if (c.is_zero() || !in_window(a, b, window))
        return;
    auto [it, inserted] = t.try_emplace({a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            t.erase(it);
    }
}

int sum_span(const QuasiPolynomial& f, int m, int n, int window) {
    return 2 * window + 2 * f.degree_bound() + std::abs(m) + std::abs(n) + 4;
}

} // namespace

std::pair<CoefficientTable, CoefficientTable> quasi_assoc_sides(const QuasiPolynomial& f, int m, int n, int window) {
    CoefficientTable lhs, rhs;
    lhs.window = rhs.window = window;
    const int span = sum_span(f, m, n, window);
    for (const auto& [ij, a] : f.terms()) {
        const auto [i, j] = ij;
        for (int k = 0; k <= i; ++k)
            put(lhs.prod, m + k, n + i + j - k, a * binom(i, k), window);
        for (int k = 0; k <= span; ++k) {
            const Rational b = binom(m, k) * Rational(neg_one_pow(k)) * a;
            put(rhs.uv, m + i - k, n + j + k, b, window);
            put(rhs.vu, m + n + j - k, i + k, -(binom(m, k) * Rational(neg_one_pow(k + m)) * a), window);
        }
    }
    return {lhs, rhs};
}

std::pair<CoefficientTable, CoefficientTable> quasi_comm_sides(const QuasiPolynomial& f, int m, int n, int window) {
    CoefficientTable lhs, rhs;
    lhs.window = rhs.window = window;
    const int span = sum_span(f, m, n, window);
    for (const auto& [ij, a] : f.terms()) {
        const auto [i, j] = ij;
        put(lhs.uv, m + i, n + j, a, window);
        put(lhs.vu, n + j, m + i, -a, window);
        for (int k = 0; k <= span; ++k)
            put(rhs.prod, k, m + n + i + j - k, a * binom(m + i, k), window);
    }
    return {lhs, rhs};
}

CoefficientTable closed_form_table(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind) {
    auto [l, r] = kind == IdentityKind::Assoc ? quasi_assoc_sides(f, m, n, window) : quasi_comm_sides(f, m, n, window);
    CoefficientTable out;
    out.window = window;
    for (const auto* t : {&l, &r}) {
        for (const auto& [k, c] : t->uv)
            put(out.uv, k.first, k.second, c, window);
        for (const auto& [k, c] : t->vu)
            put(out.vu, k.first, k.second, c, window);
        for (const auto& [k, c] : t->prod)
            put(out.prod, k.first, k.second, c, window);
    }
    return out;
}

CoefficientTable residue_table(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind) {
    const int R = sum_span(f, m, n, window);
    // weight monomial times f(x1, x2)
    FormalSeries::Exponent e{0, 0, n};
    if (kind == IdentityKind::Assoc)
        e[0] = m;
    else
        e[1] = m;
    FormalSeries P = FormalSeries::monomial(R, e) * FormalSeries::from_quasi_poly(R, f);
    const Rational one(1), minus(-1);
    // x0^{-1} delta((x1 - x2)/x0), x0^{-1} delta((x2 - x1)/(-x0)), x2^{-1} delta((x1 - x0)/x2)
    FormalSeries S1 = P * FormalSeries::delta(R, 0, 1, one, 2, minus, 1);
    FormalSeries S2 = P * FormalSeries::delta(R, 0, 2, one, 1, minus, -1);
    FormalSeries S3 = P * FormalSeries::delta(R, 2, 1, one, 0, minus, 1);
    CoefficientTable t;
    t.window = window;
    for (int a = -window; a <= window; ++a)
        for (int b = -window; b <= window; ++b) {
            put(t.uv, a, b, S1.coeff({-1, a, b}), window);
            put(t.vu, b, a, -S2.coeff({-1, a, b}), window);
            put(t.prod, a, b, S3.coeff({a, -1, b}), window);
        }
    return t;
}

ResidueReport compare_tables(const CoefficientTable& expected, const CoefficientTable& actual) {
    ResidueReport rep;
    rep.window = expected.window;
    rep.passed = true;
    auto cmp = [&](const char* name, const CoefficientTable::Table& x, const CoefficientTable::Table& y) {
        std::map<std::pair<int, int>, std::pair<Rational, Rational>> all;
        for (const auto& [k, c] : x)
            all[k].first = c;
        for (const auto& [k, c] : y)
            all[k].second = c;
        rep.entries += all.size();
        for (const auto& [k, pr] : all)
            if (!(pr.first == pr.second) && rep.passed) {
                std::ostringstream os;
                os << name << "(" << k.first << "," << k.second << "): closed form " << pr.first << ", residue "
                   << pr.second;
                rep.passed = false;
                rep.mismatch = os.str();
            }
    };
    cmp("uv", expected.uv, actual.uv);
    cmp("vu", expected.vu, actual.vu);
    cmp("prod", expected.prod, actual.prod);
    return rep;
}

ResidueReport verify_residue_derivation(const QuasiPolynomial& f, int m, int n, int window, IdentityKind kind) {
    ResidueReport rep = compare_tables(closed_form_table(f, m, n, window, kind), residue_table(f, m, n, window, kind));
    rep.identity = identity_name(kind);
    rep.f = f;
    rep.m = m;
    rep.n = n;
    return rep;
}

// ---------------------------------------------------------------------------

SymTerm modes2(GenInfo a, int i, GenInfo b, int j) { return {SymTerm::Kind::Modes2, a, i, b, j}; }
SymTerm product(GenInfo a, int i, GenInfo b, int j) { return {SymTerm::Kind::Product, a, i, b, j}; }

void sym_add(SymExpr& e, const SymTerm& t, const Rational& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = e.try_emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            e.erase(it);
    }
}

int sym_degree(const SymTerm& t) {
    if (t.kind == SymTerm::Kind::Modes2)
        return (t.a.weight - t.i - 1) + (t.b.weight - t.j - 1);
    return (t.a.weight + t.b.weight - t.i - 1) - t.j - 1;
}

bool AnnihilationBound::kills(const SymTerm& t) const {
    if (t.kind == SymTerm::Kind::Modes2) {
        if (kills_mode(t.b.weight, t.j, depth))
            return true;
        return sym_degree(t) + depth < 0;
    }
    if (t.i >= t.a.weight + t.b.weight)     // lower truncation in the algebra
        return true;
    return sym_degree(t) + depth < 0;
}

void AnnihilationBound::validate() const {
    if (depth < 0)
        throw std::domain_error("annihilation bound: negative context depth gives a non-terminating expansion");
}

namespace {

// LHS - RHS of the quasi-associativity identity for (u, v, m, n), restricted
// to terms that survive on a vector of the bound's depth.
SymExpr assoc_relation(GenInfo u, int m, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bd) {
    SymExpr r;
    auto push = [&](const SymTerm& t, const Rational& c) {
        if (!bd.kills(t))
            sym_add(r, t, c);
    };
    for (const auto& [ij, a] : f.terms()) {
        const auto [i, j] = ij;
        for (int k = 0; k <= i; ++k)
            push(product(u, m + k, v, n + i + j - k), a * binom(i, k));
        for (int k = 0;; ++k) {
            if (bd.kills_mode(v.weight, n + j + k, bd.depth))
                break;
            const Rational b = binom(m, k);
            if (m >= 0 && k > m)
                break;
            push(modes2(u, m + i - k, v, n + j + k), -(b * Rational(neg_one_pow(k)) * a));
        }
        for (int k = 0;; ++k) {
            if (bd.kills_mode(u.weight, i + k, bd.depth))
                break;
            const Rational b = binom(m, k);
            if (m >= 0 && k > m)
                break;
            push(modes2(v, m + n + j - k, u, i + k), b * Rational(neg_one_pow(k + m)) * a);
        }
    }
    return r;
}

bool same_gen(const GenInfo& x, const GenInfo& y) { return x.id == y.id; }

} // namespace

SymExpr assoc_expand(GenInfo u, int m, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound) {
    bound.validate();
    SymExpr out;
    std::map<int, Rational> pending{{n, Rational(1)}};
    while (!pending.empty()) {
        auto [K, c] = *pending.begin();
        pending.erase(pending.begin());
        const SymTerm target = product(u, m, v, K);
        if (bound.kills(target))
            continue;
        SymExpr rel = assoc_relation(u, m, v, K, f, bound);
        auto it = rel.find(target);
        if (it == rel.end() || !(it->second == Rational(1)))
            throw std::logic_error("assoc_expand: isolated term has unexpected coefficient");
        rel.erase(it);
        for (const auto& [t, x] : rel) {
            const Rational coef = -(c * x);
            if (t.kind == SymTerm::Kind::Product && same_gen(t.a, u) && same_gen(t.b, v) && t.i == m) {
                if (t.j <= K)
                    throw MetricViolation("assoc_expand: recursive index did not increase");
                pending[t.j] += coef;
                if (pending[t.j].is_zero())
                    pending.erase(t.j);
            } else {
                sym_add(out, t, coef);
            }
        }
    }
    return out;
}

SymExpr replacement_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound) {
    return assoc_expand(u, -2, v, n, f, bound);
}

SymExpr straighten_word(GenInfo a, GenInfo b, int p, const QuasiPolynomial& fab, const QuasiPolynomial& fba,
                        const AnnihilationBound& bound) {
    bound.validate();
    SymExpr out;
    // pending repeated words X_q Y_q keyed by (q, X, Y)
    std::map<std::tuple<int, BasisId, BasisId>, std::pair<SymTerm, Rational>> pending;
    auto enqueue = [&](const SymTerm& t, const Rational& c) {
        auto key = std::make_tuple(t.i, t.a.id, t.b.id);
        auto [it, inserted] = pending.try_emplace(key, t, c);
        if (!inserted) {
            it->second.second += c;
            if (it->second.second.is_zero())
                pending.erase(it);
        }
    };
    enqueue(modes2(a, p, b, p), Rational(1));
    while (!pending.empty()) {
        auto [term, c] = pending.begin()->second;
        pending.erase(pending.begin());
        if (bound.kills(term))
            continue;
        const int q = term.i;
        const GenInfo X = term.a, Y = term.b;
        const bool xIsA = same_gen(X, a) && same_gen(Y, b);
        const QuasiPolynomial& fxy = xIsA ? fab : fba;
        const QuasiPolynomial& fyx = xIsA ? fba : fab;
        // q < 0: X_q Y_q is the uv term of the (X, Y) identity; q >= 0: the vu term of the (Y, X) identity
        SymExpr rel = q < 0 ? assoc_relation(X, -1, Y, 2 * q + 1, fxy, bound)
                            : assoc_relation(Y, -1, X, 2 * q + 1, fyx, bound);
        auto it = rel.find(term);
        if (it == rel.end())
            throw std::logic_error("straighten: repeated word missing from its identity");
        const Rational lead = it->second;
        rel.erase(it);
        for (const auto& [t, x] : rel) {
            const Rational coef = -(c * x) / lead;
            if (t.kind == SymTerm::Kind::Modes2 && t.i == t.j) {
                if (t.i <= q)
                    throw MetricViolation("straighten: repeated index did not increase");
                enqueue(t, coef);
            } else {
                sym_add(out, t, coef);
            }
        }
    }
    return out;
}

SymExpr straighten_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& fuv, const QuasiPolynomial& fvu,
                       const AnnihilationBound& bound) {
    if (n < 0)
        return straighten_word(u, v, n, fuv, fvu, bound);
    return straighten_word(v, u, n, fvu, fuv, bound);
}

SymExpr straighten_rhs(GenInfo u, GenInfo v, int n, const QuasiPolynomial& f, const AnnihilationBound& bound) {
    return straighten_rhs(u, v, n, f, f, bound);
}

SymExpr commutator_expand(GenInfo u, int m, GenInfo v, int n, const QuasiPolynomial& f,
                          const AnnihilationBound& bound) {
    bound.validate();
    SymExpr out;
    // pending commutators [u_a, v_b] keyed by (a + b, a)
    std::map<std::pair<int, int>, Rational> pending{{{m + n, m}, Rational(1)}};
    const int d = bound.depth;
    while (!pending.empty()) {
        auto [key, c] = *pending.begin();
        pending.erase(pending.begin());
        const int a = key.second, b = key.first - key.second;
        const int deg = (u.weight - a - 1) + (v.weight - b - 1);
        if (deg + d < 0)
            continue;
        if (bound.kills_mode(u.weight, a, d) && bound.kills_mode(v.weight, b, d))
            continue;
        for (const auto& [ij, x] : f.terms()) {
            const auto [i, j] = ij;
            for (int k = 0; k < u.weight + v.weight; ++k) {
                SymTerm t = product(u, k, v, a + b + i + j - k);
                if (!bound.kills(t))
                    sym_add(out, t, c * x * binom(a + i, k));
            }
            if (i + j == 0)
                continue;
            auto nk = std::make_pair(a + b + i + j, a + i);
            if (nk.first <= key.first)
                throw MetricViolation("commutator_expand: index total did not increase");
            pending[nk] -= c * x;
            if (pending[nk].is_zero())
                pending.erase(nk);
        }
    }
    return out;
}

Expression realize(const AlgebraInstance& alg, const SymExpr& e) {
    Expression out;
    const BasisId vac = alg.vacuum();
    auto emit = [&](std::vector<std::pair<BasisId, int>> modes, const Rational& c) {
        Word w;
        for (auto [g, idx] : modes) {
            if (g == vac) {
                if (idx != -1)
                    return;
                continue;
            }
            w.push_back(mode_symbol(alg, g, idx));
        }
        out.add(w, c);
    };
    for (const auto& [t, c] : e) {
        if (t.kind == SymTerm::Kind::Modes2) {
            emit({{t.a.id, t.i}, {t.b.id, t.j}}, c);
            continue;
        }
        auto y = alg.mode(t.a.id, t.i, t.b.id);
        if (y.overflow)
            throw std::domain_error("realize: product " + alg.name(t.a.id) + "_" + std::to_string(t.i) + " " +
                                    alg.name(t.b.id) + " lies above the cutoff");
        for (const auto& [id, x] : y.value)
            emit({{id, t.j}}, c * x);
    }
    return out;
}

CoefficientTable to_table(const SymExpr& e, BasisId u, BasisId v, int window) {
    if (u == v)
        throw std::invalid_argument("to_table: u and v must differ");
    CoefficientTable t;
    t.window = window;
    for (const auto& [s, c] : e) {
        if (s.kind == SymTerm::Kind::Product && s.a.id == u && s.b.id == v)
            put(t.prod, s.i, s.j, c, window);
        else if (s.kind == SymTerm::Kind::Modes2 && s.a.id == u && s.b.id == v)
            put(t.uv, s.i, s.j, c, window);
        else if (s.kind == SymTerm::Kind::Modes2 && s.a.id == v && s.b.id == u)
            put(t.vu, s.i, s.j, c, window);
        else
            throw std::invalid_argument("to_table: term outside the (u, v) pair");
    }
    return t;
}

int degree_excess(const SymExpr& e, int eliminatedDegree) {
    int worst = INT_MIN;
    for (const auto& [t, c] : e)
        worst = std::max(worst, sym_degree(t) - eliminatedDegree);
    return worst;
}

} // namespace vqm

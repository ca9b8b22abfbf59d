#include "doctest.h"

#include "support.hpp"
#include "vqm/cofinite.hpp"
#include "vqm/rewrite.hpp"

using namespace vqm;
using namespace vqm::testing;

namespace {

std::shared_ptr<const AlgebraInstance> heis() {
    static auto alg = build_heisenberg(8);
    return alg;
}

// number of partitions of n, by the coin recurrence
std::size_t partitions(int n) {
    std::vector<std::size_t> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int k = part; k <= n; ++k)
            p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
    return p[static_cast<std::size_t>(n)];
}

} // namespace

TEST_CASE("uniform annihilation certificates") {
    auto alg = heis();
    std::vector<BasisId> x{alg->vacuum(), alg->index_of("[1]")};
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    auto c0 = uniform_annihilation_order(vac, vac.lowest_vector(), x);
    CHECK(c0.T == 0);
    CHECK(c0.replay(vac));
    auto one = build_fock_quasimodule(alg, Rational(1), QuasiPolynomial(), 8);
    auto c1 = uniform_annihilation_order(one, one.lowest_vector(), x);
    CHECK(c1.T == 1);
    CHECK(c1.witnesses[1] == 0);
    CHECK_FALSE(c1.witnesses[0].has_value());
    CHECK(c1.replay(one));
    auto forged = c1;
    forged.T = 0;
    CHECK_FALSE(forged.replay(one));
    CHECK(uniform_annihilation_order(one, one.lowest_vector(), {alg->vacuum()}).T == 0);
    // [1,1] = alpha_{-1}^2 1 has a non-zero zero-mode on the lambda = 1 vector at index 1
    auto c2 = uniform_annihilation_order(one, one.lowest_vector(), {alg->index_of("[1,1]")});
    CHECK(c2.T == 2);
    CHECK(c2.replay(one));
}

TEST_CASE("difference-one words") {
    auto alg = heis();
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    auto X = c2_reps(*alg, 4).reps();
    auto w = vac.lowest_vector();
    auto short_words = difference_one_words(vac, w, X, 0, -2, 1, 4);
    // the empty word and x_{-1} for x = [1^k], k = 1..4
    CHECK(short_words.size() == 5);
    for (const auto& word : difference_one_words(vac, w, X, 0, -100, -1, 6)) {
        CHECK(strictly_ordered(word, 0));
        CHECK(word_degree(word) <= 6);
    }
}

TEST_CASE("C2 quotient of the vacuum Fock module") {
    auto alg = heis();
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    auto X = c2_reps(*alg, 4).reps();
    auto rep = module_cn_quotient(vac, vac.lowest_vector(), X, 0, 2, 6);
    CHECK(rep.length_bound == 1);
    CHECK(rep.max_word_length <= 1);
    for (const auto& row : rep.rows) {
        CHECK(row.dim_w == partitions(row.depth));
        CHECK(row.dim_quotient == 1);
        CHECK(row.spanned == (row.depth <= 4));
    }
    CHECK_FALSE(rep.stabilized);
}

TEST_CASE("full difference-one spanning") {
    auto alg = heis();
    auto X = c2_reps(*alg, 4).reps();
    for (int lam = 0; lam <= 1; ++lam) {
        auto qm = build_fock_quasimodule(alg, Rational(lam), battery()[3], 8);
        auto w = qm.lowest_vector();
        const int T = uniform_annihilation_order(qm, w, X).T;
        auto words = difference_one_words(qm, w, X, T, -100, -1, 4);
        for (int d = 0; d <= 4; ++d) {
            SubspaceBasis span({qm.of_depth(d)});
            for (const auto& word : words)
                if (word_degree(word) == d)
                    span.add(0, evaluate_word(word, qm, GradedVector::unit(w), true).value);
            CHECK(span.dim(0) == partitions(d));
        }
    }
}

TEST_CASE("trivial algebra and the c1 variant") {
    auto triv = build_trivial_algebra();
    auto adj = adjoint_module(triv);
    for (int n = 2; n <= 4; ++n) {
        auto rep = module_cn_quotient(adj, adj.lowest_vector(), {triv->vacuum()}, 0, n, 0);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].dim_quotient == 1);
        CHECK(rep.rows[0].spanned);
    }
    auto eq = cofinite_equivalence_check(adj, adj.lowest_vector(), {triv->vacuum()}, 0, 4, 0);
    CHECK(eq.verdicts_agree);

    auto alg = heis();
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    auto X = c1_reps(*alg, 8).reps();
    CnOptions positive;
    positive.positive_weight_only = true;
    auto pos = module_cn_quotient(vac, vac.lowest_vector(), X, 0, 1, 6, positive);
    for (const auto& row : pos.rows)
        CHECK(row.dim_quotient == (row.depth == 0 ? 1u : 0u));
    CHECK(pos.spanned);
    CHECK(pos.stabilized);
    auto any = module_cn_quotient(vac, vac.lowest_vector(), X, 0, 1, 6);
    for (const auto& row : any.rows)
        CHECK(row.dim_quotient == 0);
}

TEST_CASE("containment between the C_n subspaces") {
    auto alg = heis();
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    auto X = c2_reps(*alg, 4).reps();
    auto eq = cofinite_equivalence_check(vac, vac.lowest_vector(), X, 0, 4, 6);
    CHECK(eq.verdicts_agree);
    CHECK(eq.direction == "C_n in C_m for n >= m");
    for (const auto& row : eq.containment) {
        CHECK(row.n_in_m);
        CHECK_FALSE(row.m_in_n);
    }
    auto adj = adjoint_module(alg);
    auto c2 = module_cn_subspace(adj, 2, 5), c3 = module_cn_subspace(adj, 3, 5);
    for (int d = 0; d <= 5; ++d)
        for (const auto& e : c3.spanning(d))
            CHECK(c2.contains(d, e.vec));
}

// Acceptance driver: one PASS/FAIL line per criterion, details indented below it.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "vqm/cofinite.hpp"
#include "vqm/errors.hpp"
#include "vqm/rewrite.hpp"

using namespace vqm;
using namespace vqm::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> details;
};

int failures = 0;

void report(int k, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.summary = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("CRITERION %d %s: %s (%s) [%.1fs]\n", k, o.pass ? "PASS" : "FAIL", title.c_str(), o.summary.c_str(),
                seconds_since(t0));
    for (const auto& d : o.details)
        std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
}

std::shared_ptr<const AlgebraInstance> heis8() {
    static auto alg = build_heisenberg(8);
    return alg;
}

GradedVector eval(const Expression& e, const QuasimoduleInstance& qm, BasisId w) {
    return evaluate(e, qm, GradedVector::unit(w), true).value;
}

bool over(const Expression& e, const QuotientBasis& X) {
    for (const auto& [w, c] : e.terms())
        for (const auto& s : w)
            if (!X.is_rep(s.gen))
                return false;
    return true;
}

// Collected by every suite that calls an identity constructor.
struct DegreeScan {
    std::size_t outputs = 0, words = 0, violations = 0;
    std::string first;

    void add(const SymExpr& e, int eliminated, const std::string& what) {
        ++outputs;
        words += e.size();
        if (!e.empty() && degree_excess(e, eliminated) > 0) {
            if (!violations)
                first = what;
            ++violations;
        }
    }
} scan;

int mode_degree(GenInfo g, int n) { return g.weight - n - 1; }

// ---------------------------------------------------------------------------

Outcome axioms() {
    Outcome o;
    for (int cutoff = 2; cutoff <= 8; ++cutoff) {
        const auto t0 = Clock::now();
        auto alg = build_heisenberg(cutoff);
        AxiomReport r = check_axioms(*alg);
        std::ostringstream s;
        std::size_t checks = 0;
        for (const auto& [k, n] : r.checks)
            checks += n;
        s << "cutoff " << cutoff << ": " << (r.passed ? "pass" : "FAIL " + r.failed_check) << ", " << checks
          << " checks, " << seconds_since(t0) << "s";
        o.details.push_back(s.str());
        o.pass = o.pass && r.passed;
    }
    o.summary = o.pass ? "all cutoffs 2..8 exact" : "axiom failure";
    return o;
}

Outcome residues() {
    Outcome o;
    std::size_t total = 0, passed = 0;
    const auto polys = wide_battery();
    for (const auto& f : polys)
        for (auto kind : {IdentityKind::Assoc, IdentityKind::Comm})
            for (int m = -3; m <= 3; ++m)
                for (int n = -3; n <= 3; ++n) {
                    ResidueReport r = verify_residue_derivation(f, m, n, 8, kind);
                    ++total;
                    passed += r.passed;
                    if (!r.passed && o.details.size() < 5)
                        o.details.push_back(r.identity + " m=" + std::to_string(m) + " n=" + std::to_string(n) + ": " +
                                            r.mismatch);
                }
    o.pass = polys.size() >= 10 && passed == total;
    o.summary = std::to_string(passed) + "/" + std::to_string(total) + " instances over " +
                std::to_string(polys.size()) + " polynomials";
    return o;
}

CoefficientTable surviving(const CoefficientTable& t, GenInfo u, GenInfo v, const AnnihilationBound& bd) {
    CoefficientTable out;
    out.window = t.window;
    for (const auto& [k, c] : t.uv)
        if (!bd.kills(modes2(u, k.first, v, k.second)))
            out.uv[k] = c;
    for (const auto& [k, c] : t.vu)
        if (!bd.kills(modes2(v, k.first, u, k.second)))
            out.vu[k] = c;
    for (const auto& [k, c] : t.prod)
        if (!bd.kills(product(u, k.first, v, k.second)))
            out.prod[k] = c;
    return out;
}

CoefficientTable::Table scaled(const CoefficientTable::Table& t, const Rational& c) {
    CoefficientTable::Table out;
    for (const auto& [k, x] : t)
        out[k] = x * c;
    return out;
}

Outcome golden() {
    Outcome o;
    const int W = 8;
    const QuasiPolynomial one;
    std::size_t rep = 0, str = 0, com = 0, bad = 0;
    for (GenInfo u : {GenInfo{1, 1}, GenInfo{2, 2}})
        for (GenInfo v : {GenInfo{3, 1}, GenInfo{4, 3}})
            for (int d = 0; d <= 3; ++d) {
                const AnnihilationBound bd{d};
                for (int n = -3; n <= 3; ++n) {
                    auto gold = surviving(residue_table(one, -2, n, W, IdentityKind::Assoc), u, v, bd);
                    auto sym = replacement_rhs(u, v, n, one, bd);
                    scan.add(sym, u.weight + v.weight - n, "replacement");
                    auto got = to_table(sym, u.id, v.id, W);
                    bad += !(got.uv == gold.uv && got.vu == gold.vu && got.prod.empty());
                    ++rep;
                    for (int m = -3; m <= 3; ++m) {
                        auto cg = surviving(residue_table(one, m, n, W, IdentityKind::Comm), u, v, bd);
                        auto cs = commutator_expand(u, m, v, n, one, bd);
                        scan.add(cs, mode_degree(u, m) + mode_degree(v, n), "commutator");
                        auto cgot = to_table(cs, u.id, v.id, W);
                        bad += !(cgot.prod == cg.prod && cgot.uv.empty() && cgot.vu.empty());
                        ++com;
                    }
                }
                for (int q = -3; q <= 3; ++q) {
                    GenInfo x = q < 0 ? u : v, y = q < 0 ? v : u;
                    auto raw = residue_table(one, -1, 2 * q + 1, W, IdentityKind::Assoc);
                    auto& side = q < 0 ? raw.uv : raw.vu;
                    const Rational lead = side.at({q, q});
                    side.erase({q, q});
                    auto gold = surviving(raw, x, y, bd);
                    auto sym = straighten_word(u, v, q, one, one, bd);
                    scan.add(sym, mode_degree(u, q) + mode_degree(v, q), "straightening");
                    auto got = to_table(sym, x.id, y.id, W);
                    bad += !(got.prod == scaled(gold.prod, Rational(1) / lead) &&
                             got.uv == scaled(gold.uv, Rational(-1) / lead) &&
                             got.vu == scaled(gold.vu, Rational(-1) / lead));
                    ++str;
                }
            }
    o.pass = bad == 0;
    o.summary = std::to_string(rep) + " replacement, " + std::to_string(str) + " straightening, " +
                std::to_string(com) + " commutator tables; " + std::to_string(bad) + " differ";
    return o;
}

// Randomized suite shared by criteria 4, 5, 6 and 9.
struct OpStats {
    std::size_t cases = 0, equal = 0, overflow = 0;
};

struct Suite {
    std::map<std::string, OpStats> ops;
    std::size_t diff0_outputs = 0, diff0_ordered = 0, degree_outputs = 0, degree_ordered = 0;
    std::size_t diff1_outputs = 0, diff1_ordered = 0;
    std::size_t traces = 0, valid_traces = 0, budget = 0, metric = 0, annihilation = 0, max_steps = 0;
    std::vector<std::string> notes;
};

const Suite& randomized() {
    static const Suite s = [] {
        Suite s;
        auto alg = heis8();
        const QuotientBasis x1 = c1_reps(*alg, 8), x2 = c2_reps(*alg, 4);
        const BasisId a = alg->index_of("[1]");
        std::vector<BasisId> gens2;
        for (int k = 1; k <= 3; ++k)
            gens2.push_back(x2.reps_of_weight(k)[0]);
        std::vector<BasisId> raw{alg->index_of("[2]"), alg->index_of("[1,1]"), alg->index_of("[2,1]"),
                                 alg->index_of("[3]")};
        std::vector<BasisId> nonrep2;
        for (int k = 2; k <= 4; ++k)
            for (BasisId b : alg->of_weight(k))
                if (!x2.is_rep(b))
                    nonrep2.push_back(b);
        std::vector<BasisId> mixed0{a, a, alg->index_of("[2]"), alg->index_of("[1,1]")};
        std::vector<BasisId> mixed1 = gens2;
        mixed1.push_back(alg->index_of("[2]"));

        const int perCombo = 50;
        Rng rng(20261016);
        auto check = [&](const std::string& op, const Expression& in, const Expression& out,
                         const QuasimoduleInstance& qm, BasisId w) {
            OpStats& st = s.ops[op];
            ++st.cases;
            try {
                st.equal += eval(in, qm, w) == eval(out, qm, w);
            } catch (const OverflowError&) {
                ++st.overflow;
            }
        };
        auto trace = [&](const NormalizationTrace& t) {
            ++s.traces;
            s.valid_traces += t.valid();
            s.max_steps = std::max(s.max_steps, t.steps.size());
        };
        auto guarded = [&](const std::string& op, const std::function<void()>& fn) {
            try {
                fn();
            } catch (const BudgetExceeded& e) {
                ++s.budget;
                ++s.ops[op].cases;
                s.notes.push_back(op + ": " + e.what());
            } catch (const MetricViolation& e) {
                ++s.metric;
                ++s.ops[op].cases;
                s.notes.push_back(op + ": " + e.what());
            } catch (const AnnihilationViolation& e) {
                ++s.annihilation;
                ++s.ops[op].cases;
                s.notes.push_back(op + ": " + e.what());
            }
        };

        for (int lam = 0; lam <= 1; ++lam)
            for (const auto& f : battery()) {
                auto qm = build_fock_quasimodule(alg, Rational(lam), f, 14);
                const BasisId w = qm.lowest_vector();
                RewriteContext ctx(qm, w);
                const int t1 = uniform_annihilation_order(qm, w, x1.reps()).T;
                const int t2 = uniform_annihilation_order(qm, w, x2.reps()).T;
                for (int rep = 0; rep < perCombo; ++rep) {
                    {
                        Word tw = random_word(rng, *alg, mixed1, 2, 4, -4, 2, 0, 6);
                        auto i = static_cast<std::size_t>(rng.range(0, static_cast<int>(tw.size()) - 2));
                        check("transpose_adjacent", Expression::word(tw), transpose_adjacent({Rational(1), tw}, i, ctx),
                              qm, w);
                    }
                    {
                        Word pre = random_word(rng, *alg, gens2, 0, 2, -3, 1, 0, 6);
                        const BasisId g = rng.pick(nonrep2);
                        Word word;
                        int n = 0, tries = 0;
                        do {
                            n = rng.range(-4, 2);
                            word = pre;
                            word.insert(word.begin() + rng.range(0, static_cast<int>(pre.size())),
                                        mode_symbol(*alg, g, n));
                        } while (!depths_within(word, 0, 6) && ++tries < 50);
                        std::size_t pos = 0;
                        while (word[pos].gen != g || word[pos].index != n)
                            ++pos;
                        Monomial m{Rational(rng.range(1, 3)), word};
                        auto out = replace_generator_c2(m, pos, x2.decompose(GradedVector::unit(g)), ctx);
                        check("replace_generator_c2", Expression::word(word).scaled(m.coeff), out, qm, w);
                    }
                    guarded("express_module_element", [&] {
                        auto e = Expression::word(random_word(rng, *alg, raw, 1, 2, -3, 1, 0, 6));
                        auto r = express_module_element(e, x1, ctx);
                        check("express_module_element", e, r.value, qm, w);
                        if (!over(r.value, x1))
                            s.notes.push_back("express_module_element left a generator outside X");
                        trace(r.trace);
                    });
                    guarded("normalize_diff0", [&] {
                        auto e = Expression::word(random_word(rng, *alg, mixed0, 1, 4, -4, 2, 0, 6));
                        if (rng.range(0, 2) == 0)
                            e.add(random_word(rng, *alg, mixed0, 0, 3, -4, 2, 0, 6), Rational(-2));
                        const Ordering ord = rep % 2 ? Ordering::ByDegree : Ordering::ByIndex;
                        NormalizeOptions opt;
                        opt.ordering = ord;
                        auto r = normalize_diff0(e, x1, t1, ctx, opt);
                        check("normalize_diff0", e, r.value, qm, w);
                        trace(r.trace);
                        for (const auto& [word, c] : r.value.terms()) {
                            // by index: n_1 <= ... <= n_r < T; by degree: degrees non-increasing, last >= -T-1
                            if (ord == Ordering::ByIndex) {
                                ++s.diff0_outputs;
                                s.diff0_ordered += weakly_ordered(word, t1, ord);
                            } else {
                                ++s.degree_outputs;
                                s.degree_ordered += weakly_ordered(word, t1, ord);
                            }
                        }
                    });
                    guarded("normalize_diff1", [&] {
                        Word w2;
                        do
                            w2 = random_word(rng, *alg, mixed1, 1, 3, -3, 2, 0, 6);
                        while (filtration_level(w2) > 4);
                        auto e = Expression::word(w2);
                        auto r = normalize_diff1(e, x2, t2, ctx);
                        check("normalize_diff1", e, r.value, qm, w);
                        trace(r.trace);
                        for (const auto& [word, c] : r.value.terms()) {
                            ++s.diff1_outputs;
                            s.diff1_ordered += strictly_ordered(word, t2);
                        }
                    });
                }

                // identity constructors on this module, for the degree scan
                for (GenInfo u : {GenInfo{a, 1}, GenInfo{alg->index_of("[2]"), 2}})
                    for (GenInfo v : {GenInfo{a, 1}, GenInfo{alg->index_of("[1,1]"), 2}})
                        for (int d = 0; d <= 4; ++d)
                            for (int n = -4; n <= 3; ++n) {
                                const AnnihilationBound bd{d};
                                scan.add(replacement_rhs(u, v, n, f, bd),
                                         u.weight + v.weight - n,
                                         "replacement");
                                scan.add(straighten_rhs(u, v, n, f, bd), mode_degree(u, n) + mode_degree(v, n),
                                         "straightening");
                                for (int m = -3; m <= 3; ++m)
                                    scan.add(commutator_expand(u, m, v, n, f, bd),
                                             mode_degree(u, m) + mode_degree(v, n), "commutator");
                            }
            }
        return s;
    }();
    return s;
}

Outcome value_preservation() {
    const Suite& s = randomized();
    Outcome o;
    std::ostringstream sum;
    for (const auto& [op, st] : s.ops) {
        const bool ok = st.cases >= 500 && st.equal == st.cases;
        o.pass = o.pass && ok;
        std::ostringstream d;
        d << op << ": " << st.equal << "/" << st.cases << " equal";
        if (st.overflow)
            d << ", " << st.overflow << " overflowed";
        o.details.push_back(d.str());
    }
    o.pass = o.pass && s.ops.size() == 5;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, s.notes.size()); ++i)
        o.details.push_back(s.notes[i]);
    o.summary = "5 operations, lambda in {0,1}, 5 quasi-polynomials, depth <= 6";
    return o;
}

Outcome ordering() {
    const Suite& s = randomized();
    Outcome o;
    o.pass = s.diff0_ordered == s.diff0_outputs && s.degree_ordered == s.degree_outputs &&
             s.diff1_ordered == s.diff1_outputs && s.diff0_outputs && s.degree_outputs && s.diff1_outputs;
    o.details.push_back("weak by index: " + std::to_string(s.diff0_ordered) + "/" + std::to_string(s.diff0_outputs));
    o.details.push_back("weak by degree, last degree >= -T-1: " + std::to_string(s.degree_ordered) + "/" +
                        std::to_string(s.degree_outputs));
    o.details.push_back("strict: " + std::to_string(s.diff1_ordered) + "/" + std::to_string(s.diff1_outputs));
    o.summary = "output words of the randomized suite";
    return o;
}

Outcome termination() {
    const Suite& s = randomized();
    Outcome o;
    o.pass = s.valid_traces == s.traces && s.budget == 0 && s.metric == 0 && s.annihilation == 0 && s.traces > 0;
    o.summary = std::to_string(s.valid_traces) + "/" + std::to_string(s.traces) + " traces valid, " +
                std::to_string(s.budget) + " budget violations at 1e5";
    o.details.push_back("metric violations " + std::to_string(s.metric) + ", annihilation violations " +
                        std::to_string(s.annihilation) + ", longest trace " + std::to_string(s.max_steps) + " steps");
    return o;
}

Outcome quotients() {
    Outcome o;
    auto alg = heis8();
    const QuotientBasis x1 = c1_reps(*alg, 8), x2 = c2_reps(*alg, 6);
    std::ostringstream d1, d2;
    d1 << "V/C1 by weight:";
    d2 << "V/C2 by weight:";
    for (int k = 0; k <= 8; ++k) {
        const std::size_t n = x1.reps_of_weight(k).size();
        d1 << " " << n;
        o.pass = o.pass && n == (k <= 1 ? 1u : 0u);
    }
    for (int k = 0; k <= 6; ++k) {
        const std::size_t n = x2.reps_of_weight(k).size();
        d2 << " " << n;
        o.pass = o.pass && n == 1;
    }
    o.details = {d1.str(), d2.str()};
    o.summary = "C1 complement stabilizes, C2 complement grows with the cap";
    return o;
}

Outcome spanning() {
    Outcome o;
    auto alg = heis8();
    auto vac = build_fock_quasimodule(alg, Rational(0), QuasiPolynomial(), 8);
    const BasisId w = vac.lowest_vector();
    const auto X = c2_reps(*alg, 4).reps();
    const int T = uniform_annihilation_order(vac, w, X).T;
    auto rank = [&](const std::vector<Word>& words, int d) {
        SubspaceBasis span({vac.of_depth(d)});
        for (const auto& word : words)
            if (word_degree(word) == d)
                span.add(0, evaluate_word(word, vac, GradedVector::unit(w), true).value);
        return span.dim(0);
    };
    const auto bounded = difference_one_words(vac, w, X, T, -100, T + 1, 4);
    const auto all = difference_one_words(vac, w, X, T, -100, -1, 4);
    std::ostringstream lit, full;
    lit << "length <= T+1 = " << T + 1 << ", rank/dim by depth:";
    full << "any length, rank/dim by depth:";
    bool fullOk = true;
    for (int d = 0; d <= 4; ++d) {
        const std::size_t dim = vac.of_depth(d).size(), r = rank(bounded, d), rf = rank(all, d);
        lit << " " << r << "/" << dim;
        full << " " << rf << "/" << dim;
        o.pass = o.pass && r == dim;
        fullOk = fullOk && rf == dim;
    }
    auto mod = module_cn_quotient(vac, w, X, T, 2, 4);
    o.details = {lit.str(), "info: " + full.str() + (fullOk ? " (spans)" : " (does not span)"),
                 std::string("info: words of length <= T+1 span W modulo C2(W) at every depth <= 4: ") +
                     (mod.spanned ? "yes" : "no")};
    o.summary = "vacuum Fock module, X = V/C2 representatives of weight <= 4, T = " + std::to_string(T);
    return o;
}

Outcome degree_scan() {
    randomized();
    Outcome o;
    o.pass = scan.violations == 0 && scan.outputs > 0;
    o.summary = std::to_string(scan.outputs) + " constructor outputs, " + std::to_string(scan.words) + " words, " +
                std::to_string(scan.violations) + " above the eliminated degree";
    if (scan.violations)
        o.details.push_back("first: " + scan.first);
    return o;
}

} // namespace

int main() {
    report(1, "Heisenberg axiom suite", axioms);
    report(2, "residue derivations", residues);
    report(3, "f = 1 golden tables", golden);
    report(4, "oracle value preservation", value_preservation);
    report(5, "ordering postconditions", ordering);
    report(6, "termination metrics", termination);
    report(7, "quotient structure", quotients);
    report(8, "spanning soundness", spanning);
    report(9, "degree scan", degree_scan);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures ? 1 : 0;
}

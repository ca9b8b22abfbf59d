#include "vqm/job.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "vqm/errors.hpp"
#include "vqm/heisenberg.hpp"

namespace vqm {

namespace {

const std::set<std::string> kTopKeys{"algebra", "module", "x", "task", "seed", "cases", "n", "n_max",
                                     "normalize", "io", "strict_overflow"};

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k))
            throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T> T get(const json& obj, const std::string& key, T def, const std::string& where) {
    if (!obj.contains(key))
        return def;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

std::vector<QuasiPolynomial> f_battery(const QuasiPolynomial& extra) {
    auto p = [](std::initializer_list<std::pair<int, int>> keys) {
        QuasiPolynomial::Terms t;
        for (auto k : keys)
            t[k] = Rational(1);
        return QuasiPolynomial(t);
    };
    std::vector<QuasiPolynomial> b{QuasiPolynomial(), p({{0, 0}, {1, 0}}), p({{0, 0}, {0, 1}}), p({{0, 0}, {1, 1}}),
                                   p({{0, 0}, {1, 0}, {0, 1}, {1, 1}})};
    if (std::find(b.begin(), b.end(), extra) == b.end())
        b.push_back(extra);
    return b;
}

struct Instances {
    std::shared_ptr<const AlgebraInstance> alg;
    std::optional<CachedAlgebra> cached;
};

Instances load_algebra(const JobConfig& c) {
    Instances in;
    if (!c.cache.empty()) {
        in.cached = cached_algebra(c.cache, c.algebra_kind, c.cutoff);
        in.alg = in.cached->alg;
    } else {
        in.alg = c.algebra_kind == "trivial" ? build_trivial_algebra() : build_heisenberg(c.cutoff);
    }
    return in;
}

QuasimoduleInstance make_module(const JobConfig& c, std::shared_ptr<const AlgebraInstance> alg,
                                const QuasiPolynomial& f, int depthCap) {
    if (c.module_kind == "adjoint" || alg->kind() == "trivial")
        return adjoint_module(std::move(alg), f);
    return build_fock_quasimodule(std::move(alg), c.lambda, f, depthCap);
}

QuotientBasis make_x(const JobConfig& c, const AlgebraInstance& alg) {
    const int cap = std::min(c.x_weight, alg.cutoff());
    SubspaceBasis sub = c.x_kind == "c1" ? c1_subspace(alg, cap) : c_n_subspace(alg, 2, cap);
    return quotient_representatives(alg, sub, cap, c.x_kind);
}

std::string status_word(bool ok) { return ok ? "match" : "mismatch"; }

// ---------------------------------------------------------------------------

JobResult run_verify(const JobConfig& c, const Instances& in) {
    JobResult res;
    const AlgebraInstance& alg = *in.alg;
    std::ostringstream sum;
    bool ok = true;

    AxiomReport ax = check_axioms(alg);
    ok = ok && ax.passed;
    res.report["axioms"] = to_json(ax);
    sum << "axioms (" << alg.kind() << ", cutoff " << alg.cutoff() << "): " << (ax.passed ? "pass" : "FAIL") << "\n";

    const auto battery = f_battery(c.f);
    json residue = json::array();
    std::size_t rpass = 0;
    for (const auto& f : battery)
        for (auto kind : {IdentityKind::Assoc, IdentityKind::Comm})
            for (int m = -3; m <= 3; ++m)
                for (int n = -3; n <= 3; ++n) {
                    ResidueReport r = verify_residue_derivation(f, m, n, 8, kind);
                    rpass += r.passed;
                    ok = ok && r.passed;
                    residue.push_back(to_json(r));
                }
    res.report["residue"] = residue;
    sum << "residue derivations: " << rpass << "/" << residue.size() << " match\n";

    json oracle = json::array();
    std::size_t opass = 0, skipped = 0;
    std::vector<BasisId> gens;
    for (int k = 1; k <= std::min(2, (alg.cutoff() - 1) / 2); ++k)
        for (BasisId g : alg.of_weight(k))
            gens.push_back(g);
    std::mt19937_64 rng(c.seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    if (!gens.empty())
        for (const auto& f : battery)
            for (int lam = 0; lam <= 1; ++lam) {
                auto qm = build_fock_quasimodule(in.alg, Rational(lam), f, c.depth + 6);
                for (int i = 0; i < c.cases; ++i) {
                    const int which = i % 3;
                    const BasisId u = gens[static_cast<std::size_t>(pick(0, static_cast<int>(gens.size()) - 1))];
                    const BasisId v = gens[static_cast<std::size_t>(pick(0, static_cast<int>(gens.size()) - 1))];
                    const int d = pick(0, std::min(3, c.depth));
                    const auto& ws = qm.of_depth(d);
                    const BasisId w = ws[static_cast<std::size_t>(pick(0, static_cast<int>(ws.size()) - 1))];
                    const int m = pick(-3, 2), n = pick(-3, 2);
                    const GenInfo gu{u, alg.weight(u)}, gv{v, alg.weight(v)};
                    const AnnihilationBound bound{d};
                    const GradedVector uw = GradedVector::unit(w);
                    json item{{"f", to_json(f)}, {"window", {{"lambda", lam}, {"depth", d}}}};
                    try {
                        GradedVector lhs, rhs;
                        SymExpr sym;
                        int eliminated = 0;
                        auto word = [&](std::vector<std::pair<BasisId, int>> modes) {
                            Word x;
                            for (auto [g, k] : modes)
                                x.push_back(mode_symbol(alg, g, k));
                            return evaluate_word(x, qm, uw, true).value;
                        };
                        if (which == 0) {
                            item["identity"] = "replacement";
                            item["parameters"] = {{"u", alg.name(u)}, {"v", alg.name(v)}, {"n", n}};
                            sym = replacement_rhs(gu, gv, n, f, bound);
                            ModeResult y = alg.mode(u, -2, v);
                            lhs = module_action(qm, y.value, n, uw).value;
                            eliminated = gu.weight + gv.weight + 1 - n - 1;
                        } else if (which == 1) {
                            item["identity"] = "straightening";
                            item["parameters"] = {{"u", alg.name(u)}, {"v", alg.name(v)}, {"n", n}};
                            sym = straighten_rhs(gu, gv, n, f, bound);
                            lhs = n < 0 ? word({{u, n}, {v, n}}) : word({{v, n}, {u, n}});
                            eliminated = gu.weight + gv.weight - 2 * n - 2;
                        } else {
                            item["identity"] = "commutator";
                            item["parameters"] = {{"u", alg.name(u)}, {"v", alg.name(v)}, {"m", m}, {"n", n}};
                            sym = commutator_expand(gu, m, gv, n, f, bound);
                            lhs = word({{u, m}, {v, n}}) - word({{v, n}, {u, m}});
                            eliminated = (gu.weight - m - 1) + (gv.weight - n - 1);
                        }
                        rhs = evaluate(realize(alg, sym), qm, uw, true).value;
                        const bool good = lhs == rhs && (sym.empty() || degree_excess(sym, eliminated) <= 0);
                        item["status"] = status_word(good);
                        if (!good)
                            item["mismatch"] = "oracle or degree check failed";
                        opass += good;
                        ok = ok && good;
                    } catch (const OverflowError& e) {
                        item["status"] = "overflow";
                        ++skipped;
                        if (c.strict_overflow) {
                            ok = false;
                            item["mismatch"] = e.what();
                        }
                    }
                    oracle.push_back(item);
                }
            }
    res.report["oracle"] = oracle;
    sum << "identity oracle checks: " << opass << "/" << oracle.size() << " match";
    if (skipped)
        sum << ", " << skipped << " overflowed the truncation";
    sum << "\n";
    res.exit_code = ok ? 0 : 1;
    res.summary = sum.str();
    return res;
}

JobResult run_normalize(const JobConfig& c, const Instances& in) {
    JobResult res;
    const AlgebraInstance& alg = *in.alg;
    auto qm = make_module(c, in.alg, c.f, c.depth + 6);
    const BasisId w = qm.lowest_vector();
    const QuotientBasis X = make_x(c, alg);
    const auto cert = uniform_annihilation_order(qm, w, X.reps());
    Expression e;
    if (!c.input.empty()) {
        std::ifstream f(c.input);
        if (!f)
            throw ConfigError("cannot read input " + c.input);
        try {
            e = expression_from_json(alg, json::parse(f));
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("input expression: ") + ex.what());
        }
    } else if (c.expression) {
        try {
            e = expression_from_json(alg, *c.expression);
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("normalize.expression: ") + ex.what());
        }
    } else {
        e = Expression::identity();
    }
    const std::string form = c.form.empty() ? (c.x_kind == "c1" ? "diff0" : "diff1") : c.form;
    RewriteContext ctx(qm, w);
    NormalizeOptions opt;
    opt.ordering = c.ordering == "degree" ? Ordering::ByDegree : Ordering::ByIndex;
    NormalizationResult r = form == "diff0" ? normalize_diff0(e, X, cert.T, ctx, opt) : normalize_diff1(e, X, cert.T, ctx);

    bool ordered = true;
    for (const auto& [word, coef] : r.value.terms())
        ordered = ordered && (form == "diff0" ? weakly_ordered(word, cert.T, opt.ordering) : strictly_ordered(word, cert.T));
    std::string oracle = "match";
    try {
        if (!(evaluate(r.value, qm, GradedVector::unit(w), true).value ==
              evaluate(e, qm, GradedVector::unit(w), true).value))
            oracle = "mismatch";
    } catch (const OverflowError&) {
        oracle = "overflow";
    }
    const bool ok = ordered && r.trace.valid() && (oracle == "match" || (oracle == "overflow" && !c.strict_overflow));
    res.report = {{"form", form},
                  {"X", c.x_kind},
                  {"annihilation", to_json(cert, qm)},
                  {"input", to_json(alg, e)},
                  {"output", to_json(alg, r.value)},
                  {"trace", to_json(r.trace)},
                  {"ordered", ordered},
                  {"oracle", oracle}};
    std::ostringstream sum;
    sum << form << " normalization with T = " << cert.T << ": " << e.size() << " -> " << r.value.size() << " terms, "
        << r.trace.steps.size() << " steps, oracle " << oracle << (ordered ? "" : ", ORDERING VIOLATED") << "\n"
        << expression_str(alg, r.value) << "\n";
    res.summary = sum.str();
    res.exit_code = ok ? 0 : 1;
    return res;
}

JobResult run_spanning(const JobConfig& c, const Instances& in) {
    JobResult res;
    const AlgebraInstance& alg = *in.alg;
    auto qm = make_module(c, in.alg, c.f, c.depth);
    const BasisId w = qm.lowest_vector();
    const QuotientBasis X = make_x(c, alg);
    const auto cert = uniform_annihilation_order(qm, w, X.reps());
    const int depth = std::min(c.depth, qm.depth_cap());
    CnQuotientReport rep = module_cn_quotient(qm, w, X.reps(), cert.T, c.n, depth);
    json words = json::array();
    for (const auto& word : difference_one_words(qm, w, X.reps(), cert.T, -c.n, rep.length_bound, depth))
        words.push_back(to_json(alg, Expression::word(word)).at(0).at("word"));
    res.report = to_json(rep);
    res.report["annihilation"] = to_json(cert, qm);
    res.report["words"] = words;
    std::ostringstream sum;
    sum << rep.subspace << " quotient, T = " << rep.T << ", length bound " << rep.length_bound << "\n";
    sum << "depth  dim W  dim Cn  quotient  words  spanned\n";
    for (const auto& row : rep.rows)
        sum << row.depth << "  " << row.dim_w << "  " << row.dim_cn << "  " << row.dim_quotient << "  " << row.words
            << "  " << (row.spanned ? "yes" : "no") << "\n";
    res.summary = sum.str();
    res.exit_code = 0;
    return res;
}

JobResult run_cofiniteness(const JobConfig& c, const Instances& in) {
    JobResult res;
    const AlgebraInstance& alg = *in.alg;
    auto qm = make_module(c, in.alg, c.f, c.depth);
    const BasisId w = qm.lowest_vector();
    const QuotientBasis X = make_x(c, alg);
    const auto cert = uniform_annihilation_order(qm, w, X.reps());
    const int depth = std::min(c.depth, qm.depth_cap());
    CofiniteEquivalenceReport rep = cofinite_equivalence_check(qm, w, X.reps(), cert.T, c.n_max, depth);
    res.report = to_json(rep);
    res.report["annihilation"] = to_json(cert, qm);
    std::ostringstream sum;
    for (const auto& q : rep.quotients)
        sum << q.subspace << ": quotient " << (q.stabilized ? "vanishes" : "does not vanish") << " at the cap\n";
    sum << "containment: " << rep.direction << "\nverdicts agree: " << (rep.verdicts_agree ? "yes" : "no") << "\n";
    res.summary = sum.str();
    res.exit_code = rep.verdicts_agree && rep.direction != "none" ? 0 : 1;
    return res;
}

} // namespace

JobConfig parse_config(const json& j) {
    only_keys(j, kTopKeys, "config");
    JobConfig c;
    if (j.contains("algebra")) {
        const json& a = j.at("algebra");
        only_keys(a, {"kind", "cutoff"}, "algebra");
        c.algebra_kind = get<std::string>(a, "kind", c.algebra_kind, "algebra");
        c.cutoff = get<int>(a, "cutoff", c.cutoff, "algebra");
    }
    if (j.contains("module")) {
        const json& m = j.at("module");
        only_keys(m, {"kind", "lambda", "depth", "f"}, "module");
        c.module_kind = get<std::string>(m, "kind", c.module_kind, "module");
        c.depth = get<int>(m, "depth", c.depth, "module");
        try {
            if (m.contains("lambda"))
                c.lambda = m.at("lambda").is_number_integer() ? Rational(m.at("lambda").get<long>())
                                                              : Rational::parse(m.at("lambda").get<std::string>());
            if (m.contains("f"))
                c.f = quasi_poly_from_json(m.at("f"));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("module: ") + e.what());
        }
    }
    if (j.contains("x")) {
        const json& x = j.at("x");
        only_keys(x, {"kind", "weight"}, "x");
        c.x_kind = get<std::string>(x, "kind", c.x_kind, "x");
        c.x_weight = get<int>(x, "weight", c.x_weight, "x");
    }
    c.task = get<std::string>(j, "task", c.task, "config");
    c.seed = get<std::uint64_t>(j, "seed", c.seed, "config");
    c.cases = get<int>(j, "cases", c.cases, "config");
    c.n = get<int>(j, "n", c.n, "config");
    c.n_max = get<int>(j, "n_max", c.n_max, "config");
    c.strict_overflow = get<bool>(j, "strict_overflow", c.strict_overflow, "config");
    if (j.contains("normalize")) {
        const json& n = j.at("normalize");
        only_keys(n, {"form", "ordering", "expression", "input"}, "normalize");
        c.form = get<std::string>(n, "form", c.form, "normalize");
        c.ordering = get<std::string>(n, "ordering", c.ordering, "normalize");
        c.input = get<std::string>(n, "input", c.input, "normalize");
        if (n.contains("expression"))
            c.expression = n.at("expression");
    }
    if (j.contains("io")) {
        const json& io = j.at("io");
        only_keys(io, {"out", "cache"}, "io");
        c.out = get<std::string>(io, "out", c.out, "io");
        c.cache = get<std::string>(io, "cache", c.cache, "io");
    }
    validate(c);
    return c;
}

void validate(const JobConfig& c) {
    auto one_of = [](const std::string& v, std::initializer_list<const char*> opts, const std::string& what) {
        for (const char* o : opts)
            if (v == o)
                return;
        throw ConfigError(what + ": invalid value '" + v + "'");
    };
    one_of(c.algebra_kind, {"heisenberg", "trivial"}, "algebra.kind");
    one_of(c.module_kind, {"fock", "adjoint"}, "module.kind");
    one_of(c.x_kind, {"c1", "c2"}, "x.kind");
    one_of(c.task, {"verify", "normalize", "spanning", "cofiniteness"}, "task");
    one_of(c.ordering, {"index", "degree"}, "normalize.ordering");
    if (!c.form.empty())
        one_of(c.form, {"diff0", "diff1"}, "normalize.form");
    if (c.form == "diff0" && c.x_kind != "c1")
        throw ConfigError("normalize.form diff0 needs x.kind c1");
    if (c.form == "diff1" && c.x_kind != "c2")
        throw ConfigError("normalize.form diff1 needs x.kind c2");
    if (c.algebra_kind == "heisenberg" && (c.cutoff < 2 || c.cutoff > 12))
        throw ConfigError("algebra.cutoff must lie in [2, 12]");
    if (c.depth < 0 || c.depth > 12)
        throw ConfigError("module.depth must lie in [0, 12]");
    if (c.x_weight < 0)
        throw ConfigError("x.weight must be non-negative");
    if (c.cases < 0)
        throw ConfigError("cases must be non-negative");
    if (c.n < 1 || c.n_max < 2)
        throw ConfigError("n must be >= 1 and n_max >= 2");
    if (c.out.empty())
        throw ConfigError("io.out must not be empty");
}

JobResult run(const JobConfig& c) {
    validate(c);
    Instances in = load_algebra(c);
    JobResult res;
    if (c.task == "verify")
        res = run_verify(c, in);
    else if (c.task == "normalize")
        res = run_normalize(c, in);
    else if (c.task == "spanning")
        res = run_spanning(c, in);
    else
        res = run_cofiniteness(c, in);
    res.report["task"] = c.task;
    res.report["seed"] = c.seed;
    res.report["algebra"] = {{"kind", in.alg->kind()}, {"cutoff", in.alg->cutoff()}};
    res.report["module"] = {{"kind", c.module_kind}, {"lambda", c.lambda.str()}, {"depth", c.depth}, {"f", to_json(c.f)}};
    res.report["x"] = {{"kind", c.x_kind}, {"weight", c.x_weight}};
    res.report["exit_code"] = res.exit_code;

    std::filesystem::create_directories(c.out);
    std::ofstream(std::filesystem::path(c.out) / (c.task + ".json"), std::ios::binary) << canonical_dump(res.report);
    std::ofstream(std::filesystem::path(c.out) / (c.task + ".txt"), std::ios::binary) << res.summary;
    return res;
}

} // namespace vqm
